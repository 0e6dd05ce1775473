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

from log_config import getNewLogger


class StageResults:
	"""StageResults collects the per item outcomes of a pipeline stage.
	"""

	def __init__(self, name:str):
		self.name = name
		self.results = {}
		self.logger = getNewLogger(f'{name}-results')


	def add(self, method:str, item:str, success:bool, detail:str=None):
		"""Adds the result of one item operation to the list.

		Args:
			method (str): Operation e.g.: 'generate', 'parse', 'repair', 'judge',...
			item (str): Clip or sample the operation worked on
			success (bool): Result of the operation
			detail (str, optional): Error message or note.
		"""
		if method != None and len(method) > 0:
			if method not in self.results.keys():
				self.results[method] = []

			self.results[method].append({
				'item': item,
				'success': success,
				'detail': detail
			})
		else:
			self.logger.warning(f'Invalid method name for StageResults')


	def count(self, method:str, success:bool=None) -> int:
		entries = self.results.get(method, [])
		if success == None:
			return len(entries)
		return sum(1 for e in entries if e['success'] == success)


	def failures(self) -> int:
		return sum(self.count(m, False) for m in self.results.keys())


	def summary(self) -> dict:
		return {m: {'ok': self.count(m, True), 'failed': self.count(m, False)} for m in sorted(self.results.keys())}


	def logSummary(self):
		for method, counts in self.summary().items():
			log = self.logger.warning if counts['failed'] > 0 else self.logger.info
			log(f'{method}: {counts["ok"]} ok, {counts["failed"]} failed')
