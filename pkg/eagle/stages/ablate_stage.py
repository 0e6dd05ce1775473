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

from ..dataset import Ablation, applyAblation, readDataset, dumpSamples
from .stage_base import StageBase


class AblateStage(StageBase):
	"""Derive an ablation variant of a dataset by stripping time boundaries and/or coordinates"""

	def __init__(self, config, transport=None):
		super().__init__('ablate', config, transport)


	async def execute(self):
		out = self.requirePath('out')
		variant = Ablation(self.config.ablation)
		samples = await readDataset(self.requirePath('dataset'))
		ablated = [applyAblation(s, variant) for s in samples]
		for s in ablated:
			self.results.add('ablate', s.sample_id, True)
		self.logger.info(f'{len(ablated)} samples as {variant.value}')
		await self.writeText(out, dumpSamples(ablated))
