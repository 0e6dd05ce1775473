"""
 @copyright Copyright (C) 2024 Dennis Greguhn <dev@greguhn.de>
 
 @author Dennis Greguhn <dev@greguhn.de>
 
 @license AGPL-3.0-or-later
 
 This program is free software: you can redistribute it and/or modify
 it under the terms of the GNU Affero General Public License as
 published by the Free Software Foundation, either version 3 of the
 License, or (at your option) any later version.
 
 This program is distributed in the hope that it will be useful,
 but WITHOUT ANY WARRANTY; without even the implied warranty of
 MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
 GNU Affero General Public License for more details.
 
 You should have received a copy of the GNU Affero General Public License
 along with this program.  If not, see <http://www.gnu.org/licenses/>.
"""

import re
import aiofiles
import simplejson as json
from decimal import Decimal, ROUND_HALF_UP
from dataclasses import dataclass
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..errors import MissingMetric, MetricOutOfRange, SchemaVersionMismatch, MalformedLine

METRICS = ('Accuracy', 'Helpfulness', 'Detail', 'Conciseness', 'Consistency')
METRIC_FIELDS = tuple(m.lower() for m in METRICS)
METRIC_ALIASES = {'level of detail': 'Detail'}
MIN_SCORE = 1
MAX_SCORE = 10
CENTS = Decimal('0.01')
SCORES_SCHEMA_VERSION = 1

SCORE_LINE_RE = re.compile(
	r'^[\s*#>-]*(?P<name>Accuracy|Helpfulness|Level of Detail|Detail|Conciseness|Consistency)[\s*]*:[\s*]*(?P<value>-?\d+(?:\.\d+)?)',
	re.IGNORECASE | re.MULTILINE
)


def roundCents(value:Decimal) -> Decimal:
	"""Round half up to 2 decimals
	"""
	return Decimal(value).quantize(CENTS, rounding=ROUND_HALF_UP)


def meanOf(values) -> Decimal:
	values = [Decimal(v) if not isinstance(v, float) else Decimal(repr(v)) for v in values]
	return sum(values, Decimal(0)) / Decimal(len(values))


@dataclass(frozen=True)
class JudgeScore:
	"""Five 1-10 ratings of one response
	"""
	accuracy:int
	helpfulness:int
	detail:int
	conciseness:int
	consistency:int

	def __post_init__(self):
		for name, value in zip(METRICS, self.values()):
			if isinstance(value, bool) or not isinstance(value, int) or not (MIN_SCORE <= value <= MAX_SCORE):
				raise MetricOutOfRange(name, value)

	def values(self) -> tuple[int, ...]:
		return (self.accuracy, self.helpfulness, self.detail, self.conciseness, self.consistency)

	@property
	def mean(self) -> Decimal:
		return roundCents(meanOf(self.values()))


def renderScores(score:JudgeScore) -> str:
	"""Score layout the judge is asked for, one 'Metric: <integer>' line per metric
	"""
	return '\n'.join(f'{name}: {value}' for name, value in zip(METRICS, score.values()))


def parseScores(judgeText:str) -> JudgeScore:
	"""Extract the five metric lines of a judge response, the first line per metric wins

	Args:
		judgeText (str): Judge response content

	Raises:
		MissingMetric: A metric line is absent
		MetricOutOfRange: A value is no integer within [1,10]

	Returns:
		JudgeScore: Parsed scores
	"""
	found = {}
	for m in SCORE_LINE_RE.finditer(judgeText):
		name = m.group('name').strip().lower()
		name = METRIC_ALIASES.get(name, name.capitalize())
		if name not in found:
			found[name] = m.group('value')

	values = []
	for name in METRICS:
		if name not in found:
			raise MissingMetric(name)
		raw = found[name]
		value = Decimal(raw)
		if value != value.to_integral_value() or not (MIN_SCORE <= value <= MAX_SCORE):
			raise MetricOutOfRange(name, raw)
		values.append(int(value))
	return JudgeScore(*values)


class ScoreRecord(BaseModel):
	"""One line of a scores file
	"""
	model_config = ConfigDict(frozen=True)

	sample_id:str = Field(min_length=1)
	model:str = Field(min_length=1)
	accuracy:int = Field(ge=MIN_SCORE, le=MAX_SCORE)
	helpfulness:int = Field(ge=MIN_SCORE, le=MAX_SCORE)
	detail:int = Field(ge=MIN_SCORE, le=MAX_SCORE)
	conciseness:int = Field(ge=MIN_SCORE, le=MAX_SCORE)
	consistency:int = Field(ge=MIN_SCORE, le=MAX_SCORE)
	mean:Decimal

	@staticmethod
	def fromScore(sampleId:str, model:str, score:JudgeScore) -> 'ScoreRecord':
		return ScoreRecord(sample_id=sampleId, model=model, **dict(zip(METRIC_FIELDS, score.values())), mean=score.mean)

	def score(self) -> JudgeScore:
		return JudgeScore(*(getattr(self, f) for f in METRIC_FIELDS))


def dumpScores(records:list[ScoreRecord]) -> str:
	lines = []
	for r in records:
		record = r.model_dump()
		record['schema_version'] = SCORES_SCHEMA_VERSION
		lines.append(json.dumps(record, sort_keys=True, ensure_ascii=False) + '\n')
	return ''.join(lines)


def loadScores(text:str) -> list[ScoreRecord]:
	records = []
	for lineNo, line in enumerate(text.splitlines(), start=1):
		if len(line.strip()) == 0:
			continue
		try:
			record = json.loads(line, parse_float=Decimal)
		except json.JSONDecodeError as e:
			raise MalformedLine(lineNo, str(e)) from e
		if not isinstance(record, dict):
			raise MalformedLine(lineNo, 'record is not an object')
		version = record.pop('schema_version', None)
		if version != SCORES_SCHEMA_VERSION:
			raise SchemaVersionMismatch(version, SCORES_SCHEMA_VERSION, lineNo)
		try:
			records.append(ScoreRecord.model_validate(record))
		except ValidationError as e:
			raise MalformedLine(lineNo, f'{e.error_count()} invalid field(s)') from e
	return records


async def writeScores(path:str, records:list[ScoreRecord]):
	async with aiofiles.open(path, 'w', encoding='utf-8') as f:
		await f.write(dumpScores(records))
		await f.flush()


async def readScores(path:str) -> list[ScoreRecord]:
	async with aiofiles.open(path, 'r', encoding='utf-8') as f:
		return loadScores(await f.read())


class ResponseRecord(BaseModel):
	"""Answer of an evaluated model to the instruction of one sample
	"""
	model_config = ConfigDict(frozen=True)

	sample_id:str = Field(min_length=1)
	model:str = Field(min_length=1)
	response:str


def loadResponses(text:str) -> list[ResponseRecord]:
	records = []
	for lineNo, line in enumerate(text.splitlines(), start=1):
		if len(line.strip()) == 0:
			continue
		try:
			records.append(ResponseRecord.model_validate(json.loads(line)))
		except (json.JSONDecodeError, ValidationError) as e:
			raise MalformedLine(lineNo, str(e).splitlines()[0]) from e
	return records
