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

from .sample import InstructionSample, Ablation, TIME_TOKEN_RE, TRIPLE_RE, TRIPLE_LIST

REMOVED_MARKER = '(removed)'

OBJECT_LIST_RE = re.compile(rf"(?:'[^'\n]*'\s*:\s*)?{TRIPLE_LIST}")
SPACE_RUN_RE = re.compile(r'[ \t]{2,}')
SPACE_BEFORE_PUNCT_RE = re.compile(r'[ \t]+(?=[.,;:!?)])')
LINE_EDGE_RE = re.compile(r'^[ \t]+|[ \t]+$', re.MULTILINE)


def _fixedPoint(text:str, patterns:list[re.Pattern]) -> str:
	while True:
		stripped = text
		for pattern in patterns:
			stripped = pattern.sub('', stripped)
		if stripped == text:
			return text
		text = stripped


def normalizeSpaces(text:str) -> str:
	"""Collapse the horizontal whitespace left behind by token removal

	The result only depends on where whitespace gaps are, not on their width, so strips applied
	in any order end in the same text.
	"""
	text = SPACE_RUN_RE.sub(' ', text)
	text = SPACE_BEFORE_PUNCT_RE.sub('', text)
	return LINE_EDGE_RE.sub('', text)


def stripTimes(text:str) -> str:
	"""Remove every <a,b> token
	"""
	return normalizeSpaces(_fixedPoint(text, [TIME_TOKEN_RE]))


def stripObjects(text:str) -> str:
	"""Remove labeled coordinate lists, bare coordinate lists and lone [t, x, y] triples
	"""
	return normalizeSpaces(_fixedPoint(text, [OBJECT_LIST_RE, TRIPLE_RE]))


def _ablate(text:str, withoutTimes:bool, withoutObjects:bool) -> str:
	patterns = []
	if withoutObjects:
		patterns += [OBJECT_LIST_RE, TRIPLE_RE]
	if withoutTimes:
		patterns.append(TIME_TOKEN_RE)
	text = normalizeSpaces(_fixedPoint(text, patterns))
	if len(text.strip()) == 0:
		return REMOVED_MARKER
	return text


def applyAblation(sample:InstructionSample, variant:Ablation) -> InstructionSample:
	"""Derive the ablation variant of a sample by token stripping

	Variants accumulate: NoTime on a NoObj sample gives DescOnly, applying a variant twice changes nothing.
	A text stripped to nothing becomes '(removed)'.

	Args:
		sample (InstructionSample): Sample to ablate
		variant (Ablation): Full, NoTime, NoObj or DescOnly

	Returns:
		InstructionSample: The ablated copy
	"""
	variant = Ablation(variant)
	if variant == Ablation.FULL:
		return sample
	withoutTimes = variant.withoutTimes or sample.ablation.withoutTimes
	withoutObjects = variant.withoutObjects or sample.ablation.withoutObjects

	return InstructionSample(
		sample_id=sample.sample_id,
		source=sample.source,
		video_id=sample.video_id,
		clip=sample.clip,
		task_type=sample.task_type,
		instruction=_ablate(sample.instruction, withoutTimes, withoutObjects),
		response=_ablate(sample.response, withoutTimes, withoutObjects),
		ablation=Ablation.fromFlags(withoutTimes, withoutObjects)
	)
