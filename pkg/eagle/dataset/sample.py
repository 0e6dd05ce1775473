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
from enum import Enum
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..ingest import Source
from ..clipper import Clip
from ..promptgen import ResponseType, formatNumber

NUMBER = r'-?\d+(?:\.\d+)?'
TIME_TOKEN_RE = re.compile(rf'<\s*{NUMBER}\s*,\s*{NUMBER}\s*>')
TRIPLE = rf'\[\s*{NUMBER}\s*,\s*{NUMBER}\s*,\s*{NUMBER}\s*\]'
TRIPLE_RE = re.compile(TRIPLE)
TRIPLE_GROUPS_RE = re.compile(rf'\[\s*(?P<t>{NUMBER})\s*,\s*(?P<x>{NUMBER})\s*,\s*(?P<y>{NUMBER})\s*\]')
TRIPLE_LIST = rf'\[\s*{TRIPLE}(?:\s*,\s*{TRIPLE})*\s*\]'
LABELED_LIST_RE = re.compile(rf"'(?P<label>[^'\n]+)'\s*:\s*(?P<body>{TRIPLE_LIST})")
TRIPLE_LIST_RE = re.compile(TRIPLE_LIST)


class Ablation(str, Enum):
	FULL = 'Full'
	NO_TIME = 'NoTime'
	NO_OBJ = 'NoObj'
	DESC_ONLY = 'DescOnly'

	@property
	def withoutTimes(self) -> bool:
		return self in (Ablation.NO_TIME, Ablation.DESC_ONLY)

	@property
	def withoutObjects(self) -> bool:
		return self in (Ablation.NO_OBJ, Ablation.DESC_ONLY)

	@staticmethod
	def fromFlags(withoutTimes:bool, withoutObjects:bool) -> 'Ablation':
		if withoutTimes and withoutObjects:
			return Ablation.DESC_ONLY
		if withoutTimes:
			return Ablation.NO_TIME
		if withoutObjects:
			return Ablation.NO_OBJ
		return Ablation.FULL


class InstructionSample(BaseModel):
	"""One (video clip, instruction, response) record of the dataset
	"""
	model_config = ConfigDict(frozen=True)

	sample_id:str = Field(min_length=1)
	source:Source
	video_id:str = Field(min_length=1)
	clip:tuple[float, float]
	task_type:ResponseType
	instruction:str
	response:str
	ablation:Ablation = Ablation.FULL

	@field_validator('instruction', 'response')
	@classmethod
	def notBlank(cls, value:str) -> str:
		if len(value.strip()) == 0:
			raise ValueError('must not be empty')
		return value

	@field_validator('clip')
	@classmethod
	def clipInterval(cls, value:tuple[float, float]) -> tuple[float, float]:
		if not (0.0 <= value[0] < value[1]):
			raise ValueError(f'invalid clip interval {value}')
		return value

	@model_validator(mode='after')
	def ablationStripped(self) -> 'InstructionSample':
		for text in (self.instruction, self.response):
			if self.ablation.withoutTimes and TIME_TOKEN_RE.search(text):
				raise ValueError(f'{self.ablation.value} sample {self.sample_id} still contains time boundaries')
			if self.ablation.withoutObjects and TRIPLE_RE.search(text):
				raise ValueError(f'{self.ablation.value} sample {self.sample_id} still contains coordinates')
		return self


def sampleId(videoId:str, clip:Clip, index:int) -> str:
	return f'{videoId}@{formatNumber(clip.start)}#{index:02d}'


def samplesFromPairs(source:Source, clip:Clip, pairs:list) -> list[InstructionSample]:
	"""Turn parsed generator pairs of one clip into samples, numbered in order of appearance
	"""
	return [InstructionSample(
		sample_id=sampleId(clip.videoId, clip, i),
		source=source,
		video_id=clip.videoId,
		clip=(clip.start, clip.end),
		task_type=p.taskType,
		instruction=p.question,
		response=p.answer
	) for i, p in enumerate(pairs)]
