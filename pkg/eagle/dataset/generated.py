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
from typing import Optional
from dataclasses import dataclass, field

from ..promptgen import ResponseType
from ..errors import LayoutError

FIELD_RE = re.compile(r'^\s*(?:\d+[.)]\s*)?\**(?P<key>Type|Question|Answer)\**\s*:\s*\**\s*(?P<value>.*?)\s*$', re.IGNORECASE)
TYPE_PREFIX_RE = re.compile(r'^response type\s*\d*\s*:\s*', re.IGNORECASE)

TYPE_ALIASES = {
	'objectverification': ResponseType.OBJECTS_VERIFICATION,
	'objectsverifications': ResponseType.OBJECTS_VERIFICATION,
	'crossreferencing': ResponseType.CROSS_REFERENCING_EVENTS,
	'crossreferencingevent': ResponseType.CROSS_REFERENCING_EVENTS,
	'anticipation': ResponseType.ACTION_ANTICIPATION,
	'actionprediction': ResponseType.ACTION_ANTICIPATION,
	'localization': ResponseType.EVENT_LOCALIZATION
}


def _normalizedName(name:str) -> str:
	return re.sub(r'[^a-z]', '', name.lower())


_TYPES_BY_NAME = {_normalizedName(rt.value): rt for rt in ResponseType}
_TYPES_BY_NAME.update(TYPE_ALIASES)


def responseTypeFromHeader(header:str) -> Optional[ResponseType]:
	"""Map an emitted 'Type:' value to a response type, None when unknown
	"""
	return _TYPES_BY_NAME.get(_normalizedName(TYPE_PREFIX_RE.sub('', header.strip())))


@dataclass(frozen=True)
class GeneratedPair:
	question:str
	answer:str
	taskType:ResponseType


@dataclass
class ParseResult:
	pairs:list = field(default_factory=list)
	errors:list = field(default_factory=list)
	warnings:list = field(default_factory=list)


@dataclass
class _Block:
	offset:int
	typeHeader:Optional[str] = None
	question:Optional[list] = None
	answer:Optional[list] = None
	target:Optional[str] = None


def _joined(lines:Optional[list]) -> str:
	if lines == None:
		return ''
	return '\n'.join(lines).strip()


def _flush(block:Optional[_Block], result:ParseResult):
	if block == None:
		return
	question = _joined(block.question)
	answer = _joined(block.answer)
	if len(question) == 0:
		result.errors.append(LayoutError(block.offset, 'block without Question:'))
		return
	if len(answer) == 0:
		result.errors.append(LayoutError(block.offset, 'block without Answer:'))
		return

	taskType = None
	if block.typeHeader == None:
		result.warnings.append(f'byte {block.offset}: missing Type:, using {ResponseType.DESCRIPTION.value}')
	else:
		taskType = responseTypeFromHeader(block.typeHeader)
		if taskType == None:
			result.warnings.append(f'byte {block.offset}: unknown type {block.typeHeader!r}, using {ResponseType.DESCRIPTION.value}')
	result.pairs.append(GeneratedPair(question, answer, taskType or ResponseType.DESCRIPTION))


def parseGenerated(text:str) -> ParseResult:
	"""Read 'Type: / Question: / Answer:' blocks from a generator response

	A block starts at a Type: line, or at a Question: line once the current block has a question.
	Lines without a field prefix continue the last field. Broken blocks are reported as LayoutError
	with the byte offset of their first line and skipped, the others are kept.

	Args:
		text (str): Response content

	Returns:
		ParseResult: pairs in order of appearance, layout errors and warnings
	"""
	result = ParseResult()
	block = None
	offset = 0
	for line in text.splitlines(keepends=True):
		lineOffset = offset
		offset += len(line.encode('utf-8'))
		content = line.rstrip('\r\n')
		m = FIELD_RE.match(content)
		if m == None:
			if block != None and block.target != None:
				getattr(block, block.target).append(content)
			elif len(content.strip()) > 0:
				result.warnings.append(f'byte {lineOffset}: text outside of a block ignored')
			continue

		key = m.group('key').lower()
		value = m.group('value')
		startsBlock = block == None \
			or key == 'type' \
			or (key == 'question' and block.question != None) \
			or (key == 'answer' and block.answer != None)
		if startsBlock:
			_flush(block, result)
			block = _Block(lineOffset)

		if key == 'type':
			block.typeHeader = value
			block.target = None
		else:
			setattr(block, key, [value])
			block.target = key
	_flush(block, result)
	return result
