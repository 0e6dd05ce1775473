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

from ..judge import loadMeansTable, readScores, aggregateRecords, renderReport, renderReportCsv
from .stage_base import StageBase


class ReportStage(StageBase):
	"""Render the report table from a per model means CSV (--means) or a scores file (--scores)"""

	def __init__(self, config, transport=None):
		super().__init__('report', config, transport)
		self.reportText = None


	async def execute(self):
		if self.config.means != None:
			aggregates = loadMeansTable(await self.readText(self.config.means))
		else:
			aggregates = aggregateRecords(await readScores(self.requirePath('scores')))
		for a in aggregates:
			self.results.add('report', a.model, True)

		self.reportText = renderReport(aggregates)
		if self.config.report != None:
			await self.writeText(self.config.report, self.reportText)
		if self.config.csv != None:
			await self.writeText(self.config.csv, renderReportCsv(aggregates))
