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

from ..clipper import buildClipContexts
from .stage_base import StageBase


class SegmentStage(StageBase):
	"""Cut every video into clips and attach their temporal context"""

	def __init__(self, config, transport=None):
		super().__init__('segment', config, transport)


	async def execute(self):
		out = self.requirePath('out')
		collection = await self.loadManifests()
		contexts = buildClipContexts(collection, self.config.clipLen, self.config.ctxS, self.config.fps)
		for ctx in contexts:
			self.results.add('segment', f'{ctx.clip.videoId}@{ctx.clip.start}', True)
		self.logger.info(f'{len(contexts)} clips from {len(collection)} videos')
		await self.writeClips(out, contexts)
