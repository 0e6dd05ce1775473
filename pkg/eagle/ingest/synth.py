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

import numpy as np

from .manifest import ActionAnnotation, ActionKind, ObjectTrajectory, RecipeAnnotation, VideoManifest, ManifestCollection, Source, Split, assignPtaSplits
from .recipes import RECIPES, KITCHEN_VERBS, KITCHEN_NOUNS, NARRATION_TEMPLATES, HAND_LABELS
from ..errors import ArgumentRange

# Share of videos per source, taken from the consolidated corpus totals
DEFAULT_PROPORTIONS = {
	Source.EPIC_KITCHENS: 0.53,
	Source.EGO4D: 0.35,
	Source.PTA: 0.12,
}

FRAME_SIZES = {
	Source.EPIC_KITCHENS: (1920, 1080),
	Source.EGO4D: (1920, 1440),
	Source.PTA: (1280, 720),
}

ID_PREFIXES = {
	Source.EPIC_KITCHENS: 'ek',
	Source.EGO4D: 'ego4d',
	Source.PTA: 'pta',
}

PTA_LABS = ['lab-1', 'lab-2', 'lab-3']
HELD_OUT_LAB = 'lab-3'


def _randomWalk(rng:np.random.Generator, n:int) -> tuple[np.ndarray, np.ndarray]:
	start = rng.uniform(0.1, 0.9, size=2)
	steps = rng.normal(0.0, 0.03, size=(n, 2))
	steps[0] = 0.0
	walk = np.clip(start + np.cumsum(steps, axis=0), 0.0, 1.0)
	walk = np.round(walk, 3)
	return walk[:, 0], walk[:, 1]


def _trajectories(rng:np.random.Generator, labels:list[str], duration:float, integerTimes:bool) -> tuple:
	trajectories = []
	lastSecond = int(np.floor(duration))
	for label in labels:
		if lastSecond < 2:
			break
		tStart = int(rng.integers(0, max(1, lastSecond - 4)))
		nPoints = int(rng.integers(2, max(3, min(20, lastSecond - tStart) + 1)))
		nPoints = min(nPoints, lastSecond - tStart + 1)
		xs, ys = _randomWalk(rng, nPoints)
		points = tuple((float(tStart + i), float(xs[i]), float(ys[i])) for i in range(nPoints))
		trajectories.append(ObjectTrajectory(label, points, integerTimes))
	return tuple(trajectories)


def _kitchenActions(rng:np.random.Generator, source:Source, nActions:int, duration:float) -> tuple:
	actions = []
	for _ in range(nActions):
		start = round(float(rng.uniform(0.0, duration - 0.5)), 2)
		end = round(min(start + float(rng.uniform(0.5, 6.0)), duration), 2)
		noun = KITCHEN_NOUNS[int(rng.integers(0, len(KITCHEN_NOUNS)))]
		if source == Source.EPIC_KITCHENS:
			verb = KITCHEN_VERBS[int(rng.integers(0, len(KITCHEN_VERBS)))]
			actions.append(ActionAnnotation(start, end, f'{verb} {noun}', ActionKind.VERB_NOUN))
		else:
			template = NARRATION_TEMPLATES[int(rng.integers(0, len(NARRATION_TEMPLATES)))]
			actions.append(ActionAnnotation(start, end, template.format(noun=noun), ActionKind.NARRATION))
	return tuple(sorted(actions, key=lambda a: (a.start, a.end, a.label)))


def _recipeActions(rng:np.random.Generator, nActions:int, duration:float) -> tuple[tuple, RecipeAnnotation]:
	recipeName = sorted(RECIPES.keys())[int(rng.integers(0, len(RECIPES)))]
	steps = RECIPES[recipeName]
	lastSecond = int(np.floor(duration))
	nActions = max(1, min(nActions, len(steps), lastSecond))
	firstStep = int(rng.integers(1, len(steps) - nActions + 2))
	cuts = sorted(int(c) for c in rng.choice(np.arange(1, lastSecond), size=nActions - 1, replace=False)) if nActions > 1 else []
	bounds = [0] + cuts + [lastSecond]

	actions = []
	intervals = []
	for i in range(nActions):
		index = firstStep + i
		actions.append(ActionAnnotation(float(bounds[i]), float(bounds[i + 1]), steps[index - 1], ActionKind.RECIPE_STEP, index))
		intervals.append((index, float(bounds[i]), float(bounds[i + 1])))
	recipe = RecipeAnnotation(recipeName, tuple(enumerate(steps, 1)), tuple(intervals))
	return tuple(actions), recipe


def synthesizeManifest(seed:int, nVideos:int, actionsPerVideo:tuple[int, int]=(2, 4), proportions:dict=None, durationRange:tuple[float, float]=(30.0, 120.0), trainShare:float=0.79) -> ManifestCollection:
	"""Generate a deterministic synthetic manifest collection for desk scale runs

	Args:
		seed (int): Random seed, identical seeds give identical collections
		nVideos (int): Number of videos, at least 1
		actionsPerVideo (tuple[int, int], optional): Inclusive range of actions per video. Defaults to (2, 4).
		proportions (dict, optional): Source -> share, normalised internally. Defaults to DEFAULT_PROPORTIONS.
		durationRange (tuple[float, float], optional): Video duration range in seconds. Defaults to (30.0, 120.0).
		trainShare (float, optional): Train probability of kitchen videos. Defaults to 0.79.

	Raises:
		ArgumentRange: Invalid counts or ranges

	Returns:
		ManifestCollection: Valid manifests, PTA splits assigned by the held out lab rule
	"""
	if nVideos < 1:
		raise ArgumentRange(f'nVideos must be >= 1, got {nVideos}')
	lo, hi = actionsPerVideo
	if lo < 1 or hi < lo:
		raise ArgumentRange(f'invalid actions per video range {actionsPerVideo}')
	if durationRange[0] < 2.0 or durationRange[1] < durationRange[0]:
		raise ArgumentRange(f'invalid duration range {durationRange}')

	proportions = proportions or DEFAULT_PROPORTIONS
	sources = [Source(s) for s in proportions.keys()]
	weights = np.array([float(proportions[s]) for s in proportions.keys()], dtype=float)
	if weights.sum() <= 0 or (weights < 0).any():
		raise ArgumentRange(f'invalid source proportions {proportions}')
	weights = weights / weights.sum()

	rng = np.random.default_rng(seed)
	videos = []
	for i in range(nVideos):
		source = sources[int(rng.choice(len(sources), p=weights))]
		duration = round(float(rng.uniform(durationRange[0], durationRange[1])), 2)
		nActions = int(rng.integers(lo, hi + 1))
		width, height = FRAME_SIZES[source]
		videoId = f'{ID_PREFIXES[source]}-{i:04d}'

		if source == Source.PTA:
			actions, recipe = _recipeActions(rng, nActions, duration)
			labId = PTA_LABS[int(rng.integers(0, len(PTA_LABS)))]
			objects = ['knife', 'jar', 'tortilla', 'mug', 'kettle']
			labels = HAND_LABELS[:1] + [objects[int(rng.integers(0, len(objects)))]]
			trajectories = _trajectories(rng, labels, duration, True)
			videos.append(VideoManifest(videoId, source, Split.TRAIN, duration, width, height, actions, trajectories, recipe, labId))
		else:
			actions = _kitchenActions(rng, source, nActions, duration)
			split = Split.TRAIN if rng.random() < trainShare else Split.VAL
			nouns = [n for n in KITCHEN_NOUNS if any(n in a.label for a in actions)][:2]
			trajectories = _trajectories(rng, HAND_LABELS + nouns, duration, False)
			videos.append(VideoManifest(videoId, source, split, duration, width, height, actions, trajectories))

	return assignPtaSplits(ManifestCollection(tuple(videos)), HELD_OUT_LAB, 0.7, seed)
