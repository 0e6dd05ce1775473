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

import os
import pandas as pd
from io import StringIO

from ..ingest import (
	Source, Split, ActionKind, VideoManifest, ManifestCollection, RecipeAnnotation,
	parseActionRows, parseTrajectories, assignPtaSplits, readManifest, RECIPES
)
from ..errors import EagleError, RecipeMismatch, ArgumentRange
from .stage_base import StageBase

VIDEO_COLUMNS = ['video_id', 'duration_s', 'frame_width', 'frame_height']


class IngestStage(StageBase):
	"""Build video manifests from a videos table, action rows of one source and optional trajectory files

	The videos table is CSV with video_id, duration_s, frame_width, frame_height and optional split,
	lab_id and recipe columns. Trajectories are read from <trajectories>/<video_id>.txt when present.
	An existing --manifest is extended.
	"""

	def __init__(self, config, transport=None):
		super().__init__('ingest', config, transport)


	def _recipe(self, videoId:str, recipeName:str, actions:list) -> RecipeAnnotation:
		steps = [a for a in actions if a.kind == ActionKind.RECIPE_STEP]
		if recipeName in RECIPES:
			texts = RECIPES[recipeName]
		else:
			byIndex = {a.stepIndex: a.label for a in steps}
			texts = [byIndex.get(i) for i in range(1, max(byIndex.keys(), default=0) + 1)]
			if len(texts) == 0 or None in texts:
				raise RecipeMismatch(f'{videoId}: unknown recipe {recipeName!r} and incomplete step rows')
		return RecipeAnnotation(
			recipeName or 'Recipe',
			tuple((i, t) for i, t in enumerate(texts, start=1)),
			tuple((a.stepIndex, a.start, a.end) for a in steps)
		)


	async def _trajectories(self, videoId:str) -> tuple:
		folder = self.config.trajectories
		if folder == None:
			return ()
		path = os.path.join(folder, f'{videoId}.txt')
		if not os.path.exists(path):
			return ()
		return tuple(parseTrajectories(await self.readText(path)))


	async def execute(self):
		source = Source(self.config.sourceFormat or Source.EPIC_KITCHENS)
		videosPath = self.requirePath('videos')
		actionsPath = self.requirePath('actions')
		out = self.requirePath('out')

		table = pd.read_csv(StringIO(await self.readText(videosPath)), dtype=str).fillna('')
		missing = [c for c in VIDEO_COLUMNS if c not in table.columns]
		if len(missing) > 0:
			raise ArgumentRange(f'{videosPath} lacks column(s) {", ".join(missing)}')

		rows = parseActionRows(source, await self.readText(actionsPath))
		actionsById = {}
		for videoId, action in rows:
			actionsById.setdefault(videoId, []).append(action)
		unknown = sorted(set(actionsById.keys()) - set(table['video_id']))
		for videoId in unknown:
			self.logger.warning(f'Action rows for unknown video {videoId} ignored')
			self.results.add('ingest', videoId, False, 'not in videos table')

		existing = await readManifest(self.config.manifest) if self.config.manifest and os.path.exists(self.config.manifest) else ManifestCollection()
		videos = list(existing)
		for _, row in table.iterrows():
			videoId = row['video_id'].strip()
			try:
				actions = sorted(actionsById.get(videoId, []), key=lambda a: (a.start, a.end, a.label))
				manifest = VideoManifest(
					videoId=videoId,
					source=source,
					split=Split(row['split']) if row.get('split', '') else Split.TRAIN,
					duration=float(row['duration_s']),
					frameWidth=int(row['frame_width']),
					frameHeight=int(row['frame_height']),
					actions=tuple(actions),
					trajectories=await self._trajectories(videoId),
					recipe=self._recipe(videoId, row.get('recipe', ''), actions) if source == Source.PTA else None,
					labId=row.get('lab_id', '') or None
				)
				videos.append(manifest)
				self.results.add('ingest', videoId, True)
			except (EagleError, ValueError) as e:
				self.logger.error(f'Ingest of {videoId} failed: {e}')
				self.results.add('ingest', videoId, False, str(e))

		collection = ManifestCollection(tuple(videos))
		if source == Source.PTA and 'split' not in table.columns:
			collection = assignPtaSplits(collection, self.config.heldOutLab, seed=self.config.seed)
		await self.saveManifests(out, collection)
