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

import simplejson as json

from ..clipper import makeClip
from ..trajectory import clipTrajectories
from ..dataset import repairSample, readDataset, dumpSamples
from .stage_base import StageBase


class RepairStage(StageBase):
	"""Repair generated coordinates against the ground truth trajectories of each sample's clip"""

	def __init__(self, config, transport=None):
		super().__init__('repair', config, transport)


	async def execute(self):
		out = self.requirePath('out')
		collection = await self.loadManifests()
		videos = collection.byId()
		samples = await readDataset(self.requirePath('dataset'))

		repaired = []
		totals = {'n_samples': len(samples), 'n_changed': 0, 'n_lists': 0, 'n_points': 0, 'n_replaced': 0, 'n_unattributed': 0}
		truthByClip = {}
		for sample in samples:
			key = (sample.video_id, sample.clip[0], sample.clip[1])
			if key not in truthByClip:
				video = videos.get(sample.video_id)
				if video == None:
					self.logger.error(f'Sample {sample.sample_id} references unknown video {sample.video_id}')
					self.results.add('repair', sample.sample_id, False, 'unknown video')
					repaired.append(sample)
					continue
				clip = makeClip(sample.video_id, sample.clip[0], sample.clip[1], self.config.fps)
				truthByClip[key] = clipTrajectories(list(video.trajectories), clip)

			fixed, report = repairSample(sample, truthByClip[key], self.config.tau)
			if report.nReplaced > 0:
				self.logger.debug(f'{sample.sample_id}: replaced {report.nReplaced} of {report.nPoints} points')
			totals['n_changed'] += int(fixed is not sample)
			totals['n_lists'] += report.nLists
			totals['n_points'] += report.nPoints
			totals['n_replaced'] += report.nReplaced
			totals['n_unattributed'] += report.nUnattributed
			self.results.add('repair', sample.sample_id, True)
			repaired.append(fixed)

		self.logger.info(f'Replaced {totals["n_replaced"]} of {totals["n_points"]} points in {totals["n_changed"]} samples')
		await self.writeText(out, dumpSamples(repaired))
		if self.config.report != None:
			await self.writeText(self.config.report, json.dumps(totals, sort_keys=True, indent=1) + '\n')
