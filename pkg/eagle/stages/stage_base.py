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
import httpx
import aiofiles
import simplejson as json

from log_config import getNewLogger

from ..ingest import ManifestCollection, readManifest, writeManifest
from ..clipper import ClipContext, contextToDict, contextFromDict
from ..gateway import ChatClient
from ..errors import ArgumentRange, SchemaVersionMismatch, MalformedLine
from .run_config import RunConfig
from .stage_results import StageResults

CLIPS_SCHEMA_VERSION = 1


class StageBase():
	"""Common plumbing of the pipeline stages: config, logger, results and file helpers
	"""

	def __init__(self, name:str, config:RunConfig, transport:httpx.AsyncBaseTransport=None):
		self.name = name
		self.config = config
		self.transport = transport
		self.logger = getNewLogger(name)
		self.results = StageResults(name)


	async def run(self) -> StageResults:
		"""Execute the stage and log its summary

		Returns:
			StageResults: Per item outcomes
		"""
		self.logger.info(f'{self.name} started')
		await self.execute()
		self.results.logSummary()
		self.logger.info(f'{self.name} finished')
		return self.results


	async def execute(self):
		raise NotImplementedError(f'{type(self).__name__} does not implement execute()')


	def requirePath(self, name:str) -> str:
		path = getattr(self.config, name)
		if path == None or len(path) == 0:
			raise ArgumentRange(f'{self.name} needs --{name.replace("_", "-")}')
		return path


	async def readText(self, path:str) -> str:
		async with aiofiles.open(path, 'r', encoding='utf-8') as f:
			return await f.read()


	async def writeText(self, path:str, text:str):
		"""Write a UTF-8 text file, parent folders are created on demand

		Args:
			path (str): Output file
			text (str): Content
		"""
		folder = os.path.dirname(path)
		if len(folder) > 0 and not os.path.exists(folder):
			self.logger.info(f'Create folder {folder}')
			os.makedirs(folder, exist_ok=True)
		async with aiofiles.open(path, 'w', encoding='utf-8') as f:
			await f.write(text)
			await f.flush()
		self.logger.debug(f'Wrote {path}')


	async def loadManifests(self) -> ManifestCollection:
		path = self.requirePath('manifest')
		collection = await readManifest(path)
		self.logger.info(f'Loaded {len(collection)} videos from {path}')
		return collection


	async def saveManifests(self, path:str, collection:ManifestCollection):
		folder = os.path.dirname(path)
		if len(folder) > 0:
			os.makedirs(folder, exist_ok=True)
		await writeManifest(path, collection)
		self.logger.info(f'Wrote {len(collection)} videos to {path}')


	async def writeClips(self, path:str, contexts:list[ClipContext]):
		lines = []
		for ctx in contexts:
			record = contextToDict(ctx)
			record['schema_version'] = CLIPS_SCHEMA_VERSION
			lines.append(json.dumps(record, sort_keys=True, ensure_ascii=False) + '\n')
		await self.writeText(path, ''.join(lines))


	async def readClips(self, path:str) -> list[ClipContext]:
		contexts = []
		for lineNo, line in enumerate((await self.readText(path)).splitlines(), start=1):
			if len(line.strip()) == 0:
				continue
			try:
				record = json.loads(line)
			except json.JSONDecodeError as e:
				raise MalformedLine(lineNo, str(e)) from e
			version = record.pop('schema_version', None)
			if version != CLIPS_SCHEMA_VERSION:
				raise SchemaVersionMismatch(version, CLIPS_SCHEMA_VERSION, lineNo)
			try:
				contexts.append(contextFromDict(record))
			except (KeyError, TypeError, ValueError) as e:
				raise MalformedLine(lineNo, str(e)) from e
		return contexts


	def chatClient(self) -> ChatClient:
		client = ChatClient(
			apiBase=self.config.apiBase,
			cacheDir=self.config.cacheDir,
			replay=self.config.replay,
			retries=self.config.retries,
			retryBaseSeconds=self.config.retryBaseSeconds,
			transport=self.transport
		)
		self.logger.info(f'Chat client {client.describe()}')
		return client
