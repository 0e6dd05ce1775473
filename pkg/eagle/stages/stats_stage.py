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
import simplejson as json

from ..dataset import computeStats, readDataset
from .stage_base import StageBase


class StatsStage(StageBase):
	"""Dataset statistics per source and split as JSON, aligned text and CSV"""

	def __init__(self, config, transport=None):
		super().__init__('stats', config, transport)


	async def execute(self):
		out = self.requirePath('out')
		collection = await self.loadManifests()
		samples = await readDataset(self.requirePath('dataset'))
		clips = await self.readClips(self.config.clips) if self.config.clips != None and os.path.exists(self.config.clips) else None

		stats = computeStats(collection, samples, clips)
		if stats.empty:
			self.logger.warning('Dataset is empty')
		self.results.add('stats', os.path.basename(self.config.dataset), True)
		await self.writeText(out, json.dumps(stats.toDict(), sort_keys=True, indent=1) + '\n')
		if self.config.report != None:
			await self.writeText(self.config.report, stats.toText() + '\n')
		if self.config.csv != None:
			await self.writeText(self.config.csv, stats.table.to_csv(index=False, lineterminator='\n', float_format='%.4f'))
		self.logger.info('\n' + stats.toText())
