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

from ..clipper import makeClip, contextWindow
from ..promptgen import renderClipGroundTruth
from ..dataset import readDataset
from ..judge import (
	ScoreRecord, sampleSize, selectSamples, buildJudgeRequest, parseScores,
	dumpScores, readScores, loadResponses, aggregateRecords, renderReport, renderReportCsv, SECOND_ROUND_SUFFIX
)
from ..errors import EagleError, ArgumentRange
from .stage_base import StageBase

REFERENCE_MODEL = 'reference'


class EvaluateStage(StageBase):
	"""Judge model responses against template ground truth, or aggregate an existing scores file

	With --dataset a square root sized subset is judged and its scores are written to --scores;
	without it --scores is read. Both end in the report table.
	"""

	def __init__(self, config, transport=None):
		super().__init__('evaluate', config, transport)
		self.reportText = None


	async def _excludedIds(self) -> set:
		if self.config.round != 2:
			return set()
		path = self.config.firstRoundScores
		if path == None or not os.path.exists(path):
			raise ArgumentRange('round 2 needs --first-round-scores of round 1')
		return {r.sample_id for r in await readScores(path)}


	async def _judge(self) -> list[ScoreRecord]:
		collection = await self.loadManifests()
		videos = collection.byId()
		samples = await readDataset(self.config.dataset)
		k = sampleSize(len(samples), self.config.sampleSize)
		selected = selectSamples(samples, k, self.config.seed, self.config.stratify, await self._excludedIds())
		self.logger.info(f'Judge {len(selected)} of {len(samples)} samples (round {self.config.round})')

		if self.config.responses != None:
			answers = {}
			for r in loadResponses(await self.readText(self.config.responses)):
				answers.setdefault(r.sample_id, []).append((r.model, r.response))
		else:
			answers = {s.sample_id: [(REFERENCE_MODEL, s.response)] for s in samples}

		suffix = SECOND_ROUND_SUFFIX if self.config.round == 2 else ''
		jobs = []
		for sample in selected:
			video = videos.get(sample.video_id)
			if video == None:
				self.results.add('judge', sample.sample_id, False, 'unknown video')
				continue
			ctx = contextWindow(makeClip(sample.video_id, sample.clip[0], sample.clip[1], self.config.fps), list(video.actions), self.config.ctxS)
			groundTruth = renderClipGroundTruth(ctx, video.recipe)
			for model, response in sorted(answers.get(sample.sample_id, [])):
				try:
					req = buildJudgeRequest(sample.instruction, groundTruth, response, self.config.judgeModel, self.config.judgeTemperature)
				except EagleError as e:
					self.results.add('judge', f'{sample.sample_id}/{model}', False, str(e))
					continue
				jobs.append((sample.sample_id, f'{model}{suffix}', req))

		async with self.chatClient() as client:
			items = await client.batchComplete([req for _, _, req in jobs], self.config.jobs)
			self.logger.info(f'{client.networkCalls} network calls, {client.cacheHits} cache hits')

		records = []
		for (sampleId, model, _), item in zip(jobs, items):
			name = f'{sampleId}/{model}'
			if not item.ok:
				self.results.add('judge', name, False, str(item.error))
				continue
			try:
				records.append(ScoreRecord.fromScore(sampleId, model, parseScores(item.response.content)))
				self.results.add('judge', name, True)
			except EagleError as e:
				self.logger.warning(f'{name}: {e}')
				self.results.add('judge', name, False, str(e))

		await self.writeText(self.requirePath('scores'), dumpScores(records))
		return records


	async def execute(self):
		if self.config.dataset != None:
			records = await self._judge()
		else:
			records = await readScores(self.requirePath('scores'))
			for r in records:
				self.results.add('aggregate', f'{r.sample_id}/{r.model}', True)

		aggregates = aggregateRecords(records)
		self.reportText = renderReport(aggregates)
		if self.config.report != None:
			await self.writeText(self.config.report, self.reportText)
		if self.config.csv != None:
			await self.writeText(self.config.csv, renderReportCsv(aggregates))
		self.logger.info('\n' + self.reportText)
