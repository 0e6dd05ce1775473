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

import math
import aiofiles
import numpy as np
import simplejson as json
from enum import Enum
from typing import NamedTuple, Optional
from dataclasses import dataclass, field, replace

from ..errors import ArgumentRange, IntervalError, CoordinateRange, NonMonotonicTime, DuplicateVideo, RecipeMismatch, UnknownStep, SchemaVersionMismatch

MANIFEST_SCHEMA_VERSION = 1


class Source(str, Enum):
	EPIC_KITCHENS = 'EpicKitchens'
	EGO4D = 'Ego4D'
	PTA = 'PTA'


class Split(str, Enum):
	TRAIN = 'Train'
	VAL = 'Val'


class ActionKind(str, Enum):
	VERB_NOUN = 'VerbNoun'
	NARRATION = 'Narration'
	RECIPE_STEP = 'RecipeStep'


@dataclass(frozen=True)
class ActionAnnotation:
	"""Labeled interval in video-global seconds like <35.66, 37.0> 'open drawer'
	"""
	start:float
	end:float
	label:str
	kind:ActionKind = ActionKind.VERB_NOUN
	stepIndex:Optional[int] = None

	def __post_init__(self):
		if not (math.isfinite(self.start) and math.isfinite(self.end)):
			raise IntervalError(f'non-finite interval <{self.start},{self.end}> for {self.label!r}')
		if self.start < 0 or self.start >= self.end:
			raise IntervalError(f'invalid interval <{self.start},{self.end}> for {self.label!r}')
		object.__setattr__(self, 'kind', ActionKind(self.kind))

	def toDict(self) -> dict:
		d = {'start_s': self.start, 'end_s': self.end, 'label': self.label, 'kind': self.kind.value}
		if self.stepIndex != None:
			d['step_index'] = self.stepIndex
		return d

	@staticmethod
	def fromDict(d:dict) -> 'ActionAnnotation':
		return ActionAnnotation(float(d['start_s']), float(d['end_s']), d['label'], ActionKind(d['kind']), d.get('step_index'))


class TrajectoryPoint(NamedTuple):
	t:float
	x:float
	y:float


@dataclass(frozen=True)
class ObjectTrajectory:
	"""Time stamped normalized center points of one tracked object

	integerTimes remembers whether the source rendered seconds as integers ('12') instead of '12.0'.
	"""
	label:str
	points:tuple = ()
	integerTimes:bool = False

	def __post_init__(self):
		points = tuple(TrajectoryPoint(float(p[0]), float(p[1]), float(p[2])) for p in self.points)
		for p in points:
			if not (0.0 <= p.x <= 1.0) or not (0.0 <= p.y <= 1.0):
				raise CoordinateRange(f'{self.label!r}: point {tuple(p)} outside [0,1]')
		for a, b in zip(points, points[1:]):
			if not b.t > a.t:
				raise NonMonotonicTime(f'{self.label!r}: time {b.t} does not follow {a.t}')
		object.__setattr__(self, 'points', points)
		# integer rendering only holds while every time is whole
		if self.integerTimes and not all(p.t.is_integer() for p in points):
			object.__setattr__(self, 'integerTimes', False)

	def __len__(self) -> int:
		return len(self.points)

	@property
	def times(self) -> np.ndarray:
		return np.array([p.t for p in self.points], dtype=float)

	@property
	def xs(self) -> np.ndarray:
		return np.array([p.x for p in self.points], dtype=float)

	@property
	def ys(self) -> np.ndarray:
		return np.array([p.y for p in self.points], dtype=float)

	def toDict(self) -> dict:
		return {'label': self.label, 'points': [list(p) for p in self.points], 'integer_times': self.integerTimes}

	@staticmethod
	def fromDict(d:dict) -> 'ObjectTrajectory':
		return ObjectTrajectory(d['label'], tuple(tuple(p) for p in d['points']), bool(d.get('integer_times', False)))


class RecipeStep(NamedTuple):
	index:int
	text:str


class StepInterval(NamedTuple):
	index:int
	start:float
	end:float


@dataclass(frozen=True)
class RecipeAnnotation:
	recipeName:str
	steps:tuple = ()
	stepIntervals:tuple = ()

	def __post_init__(self):
		steps = tuple(RecipeStep(int(s[0]), s[1]) for s in self.steps)
		intervals = tuple(StepInterval(int(i[0]), float(i[1]), float(i[2])) for i in self.stepIntervals)
		if [s.index for s in steps] != list(range(1, len(steps) + 1)):
			raise RecipeMismatch(f'{self.recipeName}: step indices must be contiguous from 1')
		for i in intervals:
			if i.index < 1 or i.index > len(steps):
				raise RecipeMismatch(f'{self.recipeName}: interval references unknown step {i.index}')
			if i.start < 0 or i.start >= i.end:
				raise IntervalError(f'{self.recipeName}: invalid step interval <{i.start},{i.end}>')
		object.__setattr__(self, 'steps', steps)
		object.__setattr__(self, 'stepIntervals', intervals)

	def stepText(self, index:int) -> str:
		if index < 1 or index > len(self.steps):
			raise UnknownStep(f'{self.recipeName} has no step {index}')
		return self.steps[index - 1].text

	def toDict(self) -> dict:
		return {
			'recipe_name': self.recipeName,
			'steps': [{'index': s.index, 'text': s.text} for s in self.steps],
			'step_intervals': [{'step_index': i.index, 'start_s': i.start, 'end_s': i.end} for i in self.stepIntervals]
		}

	@staticmethod
	def fromDict(d:dict) -> 'RecipeAnnotation':
		return RecipeAnnotation(
			d['recipe_name'],
			tuple((s['index'], s['text']) for s in d['steps']),
			tuple((i['step_index'], i['start_s'], i['end_s']) for i in d.get('step_intervals', []))
		)


@dataclass(frozen=True)
class VideoManifest:
	"""Metadata and annotations of one source video
	"""
	videoId:str
	source:Source
	split:Split
	duration:float
	frameWidth:int
	frameHeight:int
	actions:tuple = ()
	trajectories:tuple = ()
	recipe:Optional[RecipeAnnotation] = None
	labId:Optional[str] = None

	def __post_init__(self):
		object.__setattr__(self, 'source', Source(self.source))
		object.__setattr__(self, 'split', Split(self.split))
		object.__setattr__(self, 'actions', tuple(self.actions))
		object.__setattr__(self, 'trajectories', tuple(self.trajectories))
		if not self.duration > 0:
			raise ArgumentRange(f'{self.videoId}: duration must be positive, got {self.duration}')
		if self.frameWidth <= 0 or self.frameHeight <= 0:
			raise ArgumentRange(f'{self.videoId}: frame size must be positive')
		for a in self.actions:
			if a.end > self.duration:
				raise IntervalError(f'{self.videoId}: action <{a.start},{a.end}> exceeds duration {self.duration}')
		if (self.recipe != None) != (self.source == Source.PTA):
			raise RecipeMismatch(f'{self.videoId}: recipe must be present exactly for PTA videos')
		if self.recipe != None:
			for i in self.recipe.stepIntervals:
				if i.end > self.duration:
					raise IntervalError(f'{self.videoId}: step interval <{i.start},{i.end}> exceeds duration')

	def toDict(self) -> dict:
		return {
			'video_id': self.videoId,
			'source': self.source.value,
			'split': self.split.value,
			'duration_s': self.duration,
			'frame_width': self.frameWidth,
			'frame_height': self.frameHeight,
			'actions': [a.toDict() for a in self.actions],
			'trajectories': [t.toDict() for t in self.trajectories],
			'recipe': self.recipe.toDict() if self.recipe != None else None,
			'lab_id': self.labId
		}

	@staticmethod
	def fromDict(d:dict) -> 'VideoManifest':
		recipe = d.get('recipe')
		return VideoManifest(
			videoId=d['video_id'],
			source=Source(d['source']),
			split=Split(d['split']),
			duration=float(d['duration_s']),
			frameWidth=int(d['frame_width']),
			frameHeight=int(d['frame_height']),
			actions=tuple(ActionAnnotation.fromDict(a) for a in d.get('actions', [])),
			trajectories=tuple(ObjectTrajectory.fromDict(t) for t in d.get('trajectories', [])),
			recipe=RecipeAnnotation.fromDict(recipe) if recipe != None else None,
			labId=d.get('lab_id')
		)


@dataclass(frozen=True)
class ManifestCollection:
	videos:tuple = field(default_factory=tuple)

	def __post_init__(self):
		videos = tuple(self.videos)
		seen = set()
		for v in videos:
			if v.videoId in seen:
				raise DuplicateVideo(f'video_id {v.videoId} appears twice')
			seen.add(v.videoId)
		object.__setattr__(self, 'videos', videos)

	def __len__(self) -> int:
		return len(self.videos)

	def __iter__(self):
		return iter(self.videos)

	def byId(self) -> dict:
		return {v.videoId: v for v in self.videos}


def dumpManifest(collection:ManifestCollection) -> str:
	"""Serialize a collection into its JSON document

	Args:
		collection (ManifestCollection): Videos to write

	Returns:
		str: JSON text with schema_version and videos
	"""
	doc = {'schema_version': MANIFEST_SCHEMA_VERSION, 'videos': [v.toDict() for v in collection.videos]}
	return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1) + '\n'


def loadManifest(text:str) -> ManifestCollection:
	doc = json.loads(text)
	version = doc.get('schema_version')
	if version != MANIFEST_SCHEMA_VERSION:
		raise SchemaVersionMismatch(version, MANIFEST_SCHEMA_VERSION)
	return ManifestCollection(tuple(VideoManifest.fromDict(v) for v in doc.get('videos', [])))


async def writeManifest(path:str, collection:ManifestCollection):
	async with aiofiles.open(path, 'w', encoding='utf-8') as f:
		await f.write(dumpManifest(collection))
		await f.flush()


async def readManifest(path:str) -> ManifestCollection:
	async with aiofiles.open(path, 'r', encoding='utf-8') as f:
		return loadManifest(await f.read())


def assignPtaSplits(collection:ManifestCollection, heldOutLab:str, trainRatio:float=0.7, seed:int=0) -> ManifestCollection:
	"""Split PTA videos: every video of the held out lab goes to Val, the rest is split trainRatio/(1-trainRatio)

	Args:
		collection (ManifestCollection): Input collection, non PTA videos keep their split
		heldOutLab (str): Lab id reserved for the novel environment
		trainRatio (float, optional): Train share of the remaining PTA videos. Defaults to 0.7.
		seed (int, optional): Shuffle seed. Defaults to 0.

	Returns:
		ManifestCollection: New collection with updated PTA splits
	"""
	if not (0.0 <= trainRatio <= 1.0):
		raise ArgumentRange(f'trainRatio must be within [0,1], got {trainRatio}')

	remaining = sorted(v.videoId for v in collection if v.source == Source.PTA and v.labId != heldOutLab)
	order = np.random.default_rng(seed).permutation(len(remaining))
	nTrain = int(round(trainRatio * len(remaining)))
	trainIds = {remaining[i] for i in order[:nTrain]}

	videos = []
	for v in collection:
		if v.source != Source.PTA:
			videos.append(v)
		elif v.labId == heldOutLab:
			videos.append(replace(v, split=Split.VAL))
		else:
			videos.append(replace(v, split=Split.TRAIN if v.videoId in trainIds else Split.VAL))
	return ManifestCollection(tuple(videos))
