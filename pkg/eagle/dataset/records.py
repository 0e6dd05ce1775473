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

import aiofiles
import simplejson as json
from pydantic import ValidationError

from ..errors import SchemaVersionMismatch, MalformedLine
from .sample import InstructionSample

DATASET_SCHEMA_VERSION = 1


def dumpSample(sample:InstructionSample) -> str:
	record = sample.model_dump(mode='json')
	record['schema_version'] = DATASET_SCHEMA_VERSION
	return json.dumps(record, sort_keys=True, ensure_ascii=False)


def dumpSamples(samples:list[InstructionSample]) -> str:
	return ''.join(dumpSample(s) + '\n' for s in samples)


def loadSamples(text:str) -> list[InstructionSample]:
	"""Parse line delimited sample records, blank lines are skipped

	Args:
		text (str): File content

	Raises:
		SchemaVersionMismatch: Record of another schema version
		MalformedLine: Line that is no valid sample record, numbered from 1

	Returns:
		list[InstructionSample]: Samples in file order
	"""
	samples = []
	for lineNo, line in enumerate(text.splitlines(), start=1):
		if len(line.strip()) == 0:
			continue
		try:
			record = json.loads(line)
		except json.JSONDecodeError as e:
			raise MalformedLine(lineNo, str(e)) from e
		if not isinstance(record, dict):
			raise MalformedLine(lineNo, 'record is not an object')
		version = record.pop('schema_version', None)
		if version != DATASET_SCHEMA_VERSION:
			raise SchemaVersionMismatch(version, DATASET_SCHEMA_VERSION, lineNo)
		try:
			samples.append(InstructionSample.model_validate(record))
		except ValidationError as e:
			raise MalformedLine(lineNo, f'{e.error_count()} invalid field(s)') from e
	return samples


async def writeDataset(path:str, samples:list[InstructionSample]):
	async with aiofiles.open(path, 'w', encoding='utf-8') as f:
		await f.write(dumpSamples(samples))
		await f.flush()


async def readDataset(path:str) -> list[InstructionSample]:
	async with aiofiles.open(path, 'r', encoding='utf-8') as f:
		return loadSamples(await f.read())
