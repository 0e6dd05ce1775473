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
import simplejson as json
from decimal import Decimal

from .manifest import ActionAnnotation, ActionKind, ObjectTrajectory, Source
from ..errors import MalformedRow, IntervalError, NonMonotonicTime

NUMBER_RE = re.compile(r'^-?\d+(?:\.\d+)?$')
QUOTED_TRAJECTORY_RE = re.compile(r"^'(?P<label>.*)':\s*(?P<body>\[.*\])\s*$")
QUOTED_LABEL_ONLY_RE = re.compile(r"^'(?P<label>.*)':\s*$")
CAPTION_TRAJECTORY_RE = re.compile(r'^(?P<label>[^\[\]]+?):\s*(?P<body>\[.*\])\s*$')
NESTED_BODY_RE = re.compile(r'^\[\s*(\[|\])')

# Number of comma separated fields per source and the split limit (free text may contain commas)
ROW_GRAMMAR = {
	Source.EPIC_KITCHENS: (5, 4),
	Source.EGO4D: (4, 3),
	Source.PTA: (5, 4),
}


def _parseSeconds(value:str, lineNo:int) -> float:
	value = value.strip()
	if not NUMBER_RE.match(value):
		raise MalformedRow(lineNo, f'not a number: {value!r}')
	return float(value)


def parseActionRows(sourceFormat:Source, raw:str) -> list[tuple[str, ActionAnnotation]]:
	"""Parse action rows and keep the video id of every row

	Args:
		sourceFormat (Source): Row grammar, EpicKitchens 'video_id,start_s,end_s,verb,noun',
			Ego4D 'video_id,start_s,end_s,narration', PTA 'video_id,start_s,end_s,step_index,step_text'
		raw (str): UTF-8 text, one row per line, an optional header line starting with 'video_id'

	Raises:
		MalformedRow: Unparseable row (line numbers start at 1)
		IntervalError: start >= end

	Returns:
		list[tuple[str, ActionAnnotation]]: (video_id, annotation) in input order
	"""
	sourceFormat = Source(sourceFormat)
	nFields, maxSplit = ROW_GRAMMAR[sourceFormat]
	rows = []
	for lineNo, line in enumerate(raw.splitlines(), 1):
		if len(line.strip()) == 0:
			continue
		if lineNo == 1 and line.lower().startswith('video_id'):
			continue

		fields = line.split(',', maxSplit)
		if len(fields) != nFields or any(len(f.strip()) == 0 for f in fields):
			raise MalformedRow(lineNo, f'expected {nFields} fields for {sourceFormat.value}')

		videoId = fields[0].strip()
		start = _parseSeconds(fields[1], lineNo)
		end = _parseSeconds(fields[2], lineNo)
		try:
			if sourceFormat == Source.EPIC_KITCHENS:
				annotation = ActionAnnotation(start, end, f'{fields[3].strip()} {fields[4].strip()}', ActionKind.VERB_NOUN)
			elif sourceFormat == Source.EGO4D:
				annotation = ActionAnnotation(start, end, fields[3].strip(), ActionKind.NARRATION)
			else:
				if not fields[3].strip().isdigit():
					raise MalformedRow(lineNo, f'step index must be a positive integer')
				annotation = ActionAnnotation(start, end, fields[4].strip(), ActionKind.RECIPE_STEP, int(fields[3]))
		except IntervalError as e:
			raise IntervalError(f'line {lineNo}: {e}')
		rows.append((videoId, annotation))
	return rows


def parseActions(sourceFormat:Source, raw:str) -> list[ActionAnnotation]:
	"""Parse action rows of one source grammar into annotations, order preserved

	Args:
		sourceFormat (Source): Row grammar of the input
		raw (str): Comma separated rows

	Returns:
		list[ActionAnnotation]: One annotation per row
	"""
	return [a for _, a in parseActionRows(sourceFormat, raw)]


def _parsePoints(body:str, lineNo:int) -> tuple[list, bool]:
	try:
		data = json.loads(body, parse_float=Decimal)
	except json.JSONDecodeError:
		raise MalformedRow(lineNo, 'point list is not valid')

	if not isinstance(data, list):
		raise MalformedRow(lineNo, 'point list expected')
	for p in data:
		if not isinstance(p, list) or len(p) != 3 or not all(isinstance(v, (int, Decimal)) and not isinstance(v, bool) for v in p):
			raise MalformedRow(lineNo, f'point must be [t, x, y], got {p}')

	integerTimes = len(data) > 0 and all(isinstance(p[0], int) for p in data)
	points = sorted(((float(p[0]), float(p[1]), float(p[2])) for p in data), key=lambda p: p[0])
	for a, b in zip(points, points[1:]):
		if a[0] == b[0]:
			raise NonMonotonicTime(f'line {lineNo}: duplicate timestamp {a[0]}')
	return points, integerTimes


def parseTrajectories(raw:str) -> list[ObjectTrajectory]:
	"""Parse trajectory lines like "'right hand': [[5.0, 0.295, 0.401], [6.0, 0.317, 0.419]]"

	Caption lines of procedure videos ("A bowl of peanut butter ...: [11, 0.765, 0.68],[0, 0.71, 0.795]")
	are accepted as well. A quoted label may stand alone on its line with the point list on the next one.

	Args:
		raw (str): Line delimited text

	Raises:
		MalformedRow: Line matches neither layout
		CoordinateRange: x or y outside [0,1]
		NonMonotonicTime: Duplicate timestamps

	Returns:
		list[ObjectTrajectory]: Trajectories in input order, points ascending in t
	"""
	trajectories = []
	lines = raw.splitlines()
	idx = 0
	while idx < len(lines):
		lineNo = idx + 1
		line = lines[idx].strip()
		idx += 1
		if len(line) == 0:
			continue

		labelOnly = QUOTED_LABEL_ONLY_RE.match(line)
		if labelOnly and idx < len(lines) and lines[idx].strip().startswith('['):
			line = f'{line} {lines[idx].strip()}'
			idx += 1

		m = QUOTED_TRAJECTORY_RE.match(line)
		if m:
			label = m.group('label')
			points, integerTimes = _parsePoints(m.group('body'), lineNo)
		else:
			m = CAPTION_TRAJECTORY_RE.match(line)
			if not m:
				raise MalformedRow(lineNo, 'expected \'LABEL\': [[t, x, y], ...]')
			label = m.group('label').strip()
			body = m.group('body')
			# caption layout lists bare triples without the outer brackets
			if not NESTED_BODY_RE.match(body):
				body = f'[{body}]'
			points, integerTimes = _parsePoints(body, lineNo)

		trajectories.append(ObjectTrajectory(label, tuple(points), integerTimes))
	return trajectories
