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

from ..clipper import buildClipContexts
from ..trajectory import clipTrajectories
from ..promptgen import symbolicContexts, responseTypesFor, buildGenerationRequest
from ..dataset import Ablation, parseGenerated, samplesFromPairs, applyAblation, selectClipsForGeneration, dumpSamples
from ..errors import EagleError
from .stage_base import StageBase


class GenerateStage(StageBase):
	"""Prompt the external model per clip and collect the parsed question/answer samples

	With an ablation other than Full the omitted context blocks are left out of the prompt and the
	samples are stripped afterwards.
	"""

	def __init__(self, config, transport=None):
		super().__init__('generate', config, transport)


	async def execute(self):
		out = self.requirePath('out')
		collection = await self.loadManifests()
		videos = collection.byId()
		if self.config.clips != None and os.path.exists(self.config.clips):
			contexts = await self.readClips(self.config.clips)
		else:
			contexts = buildClipContexts(collection, self.config.clipLen, self.config.ctxS, self.config.fps)

		sources = {v.videoId: v.source for v in collection}
		contexts = selectClipsForGeneration(contexts, sources, self.config.clipBudget, tuple(self.config.activityRatio), self.config.seed)
		ablation = Ablation(self.config.ablation)

		jobs = []
		for ctx in contexts:
			video = videos[ctx.clip.videoId]
			symbolic = symbolicContexts(
				ctx, video.source, video.recipe,
				clipTrajectories(list(video.trajectories), ctx.clip),
				self.config.ctxS,
				withTimes=not ablation.withoutTimes,
				withObjects=not ablation.withoutObjects
			)
			if len(symbolic) == 0:
				self.logger.warning(f'Nothing known about clip {ctx.clip.videoId}@{ctx.clip.start}, skipped')
				self.results.add('generate', f'{ctx.clip.videoId}@{ctx.clip.start}', False, 'no context')
				continue
			req = buildGenerationRequest(symbolic, list(responseTypesFor(video.source)), self.config.nPairs, self.config.model, self.config.generationTemperature)
			jobs.append((ctx, video, req))
		self.logger.info(f'Generate samples for {len(jobs)} clips')

		async with self.chatClient() as client:
			items = await client.batchComplete([req for _, _, req in jobs], self.config.jobs)
			self.logger.info(f'{client.networkCalls} network calls, {client.cacheHits} cache hits')

		samples = []
		for (ctx, video, _), item in zip(jobs, items):
			clipName = f'{ctx.clip.videoId}@{ctx.clip.start}'
			if not item.ok:
				self.results.add('generate', clipName, False, str(item.error))
				continue
			self.results.add('generate', clipName, True)

			parsed = parseGenerated(item.response.content)
			for warning in parsed.warnings:
				self.logger.warning(f'{clipName}: {warning}')
			for error in parsed.errors:
				self.logger.warning(f'{clipName}: {error}')
				self.results.add('parse', clipName, False, str(error))
			try:
				clipSamples = [applyAblation(s, ablation) for s in samplesFromPairs(video.source, ctx.clip, parsed.pairs)]
			except (EagleError, ValueError) as e:
				self.logger.error(f'{clipName}: {e}')
				self.results.add('parse', clipName, False, str(e))
				continue
			if len(parsed.pairs) != self.config.nPairs:
				self.logger.warning(f'{clipName}: {len(parsed.pairs)} pairs instead of {self.config.nPairs}')
			self.results.add('parse', clipName, True)
			samples += clipSamples

		self.logger.info(f'{len(samples)} samples from {len(jobs)} clips')
		await self.writeText(out, dumpSamples(samples))
