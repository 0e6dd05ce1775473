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
import uuid
import httpx
import asyncio
import aiofiles
import simplejson as json
from typing import Optional
from dataclasses import dataclass

from log_config import getNewLogger
from pause import pauseBackoff
from utils import getJsonPathData, maskSecret

from ..errors import AuthMissing, RateLimited, ReplayMiss, TransportError, GenerationError, ArgumentRange
from .chat_types import ChatRequest, ChatResponse

DEFAULT_API_BASE = 'https://api.openai.com/v1'
DEFAULT_CACHE_DIR = '.eagle-cache'
DEFAULT_RETRIES = 4
DEFAULT_RETRY_BASE_S = 1.0
DEFAULT_MAX_IN_FLIGHT = 4
API_KEY_ENV = 'EAGLE_API_KEY'
COMPLETIONS_PATH = 'chat/completions'


@dataclass(frozen=True)
class BatchItem:
	"""Outcome of one request of a batch, exactly one of response / error is set
	"""
	response:Optional[ChatResponse] = None
	error:Optional[Exception] = None

	@property
	def ok(self) -> bool:
		return self.error == None


class ChatClient():
	"""Chat completion client with a content addressed response cache

	Responses are cached as <cacheDir>/<sha256 of the canonical request>.json. In replay mode
	only the cache is consulted and a miss raises ReplayMiss.
	"""

	def __init__(
		self,
		apiBase:str=None,
		apiKey:str=None,
		cacheDir:str=None,
		replay:bool=False,
		retries:int=DEFAULT_RETRIES,
		retryBaseSeconds:float=DEFAULT_RETRY_BASE_S,
		transport:httpx.AsyncBaseTransport=None,
		timeout:float=120.0
	):
		self.apiBase = (apiBase or os.environ.get('eagle_api_base') or DEFAULT_API_BASE).rstrip('/')
		self._apiKey = apiKey if apiKey != None else os.environ.get(API_KEY_ENV)
		self.cacheDir = cacheDir or os.environ.get('eagle_cache') or DEFAULT_CACHE_DIR
		self.replay = replay
		self.retries = retries
		self.retryBaseSeconds = retryBaseSeconds
		self._httpClient = httpx.AsyncClient(timeout=timeout, transport=transport)
		self.logger = getNewLogger('chat-client')
		self.networkCalls = 0
		self.cacheHits = 0


	async def close(self):
		await self._httpClient.aclose()


	async def __aenter__(self):
		return self


	async def __aexit__(self, *args):
		await self.close()


	def cachePath(self, req:ChatRequest) -> str:
		return os.path.join(self.cacheDir, f'{req.cacheKey()}.json')


	async def _readCache(self, path:str) -> Optional[ChatResponse]:
		if not os.path.exists(path):
			return None
		try:
			async with aiofiles.open(path, 'r', encoding='utf-8') as f:
				data = json.loads(await f.read())
			return ChatResponse.model_validate(data['response'])
		except Exception as e:
			self.logger.warning(f'Ignore unreadable cache file {path}')
			self.logger.warning(e)
			return None


	async def _writeCache(self, path:str, req:ChatRequest, response:ChatResponse):
		os.makedirs(self.cacheDir, exist_ok=True)
		record = {
			'request': req.model_dump(mode='json'),
			'response': response.model_dump(mode='json')
		}
		tmpPath = f'{path}.{uuid.uuid4().hex}.tmp'
		try:
			async with aiofiles.open(tmpPath, 'w', encoding='utf-8') as f:
				await f.write(json.dumps(record, sort_keys=True, indent=1, ensure_ascii=False))
			os.replace(tmpPath, path)
		finally:
			if os.path.exists(tmpPath):
				os.remove(tmpPath)


	async def _post(self, req:ChatRequest) -> ChatResponse:
		headers = {'Authorization': f'Bearer {self._apiKey}'}
		url = f'{self.apiBase}/{COMPLETIONS_PATH}'
		try:
			self.networkCalls += 1
			response = await self._httpClient.post(url, json=req.toWire(), headers=headers)
		except httpx.HTTPError as e:
			raise TransportError(f'{type(e).__name__}: {e}') from e

		if response.status_code == 429:
			raise RateLimited(f'rate limited by {self.apiBase}')
		if response.status_code >= 500:
			raise TransportError(f'server error {response.status_code} from {self.apiBase}')
		if response.status_code != 200:
			raise GenerationError(f'request rejected with status {response.status_code}: {response.text[:200]}')

		try:
			data = json.loads(response.content)
		except json.JSONDecodeError as e:
			raise TransportError(f'invalid response body: {e}') from e
		content = getJsonPathData(data, '$.choices[0].message.content')
		if not isinstance(content, str):
			raise GenerationError('response without message content')
		return ChatResponse(
			content=content,
			finish_reason=getJsonPathData(data, '$.choices[0].finish_reason'),
			usage=getJsonPathData(data, '$.usage', {}) or {}
		)


	async def complete(self, req:ChatRequest) -> ChatResponse:
		"""Cached chat completion

		Args:
			req (ChatRequest): Request

		Raises:
			ReplayMiss: Replay mode and no cached response
			AuthMissing: No API key for a network call
			RateLimited: Still rate limited after all retries
			TransportError: Connection or server errors after all retries
			GenerationError: Request rejected by the provider, never retried

		Returns:
			ChatResponse: Cached or fresh response
		"""
		path = self.cachePath(req)
		cached = await self._readCache(path)
		if cached != None:
			self.cacheHits += 1
			return cached
		if self.replay:
			raise ReplayMiss(f'no cached response for {req.cacheKey()}')
		if not self._apiKey:
			raise AuthMissing(f'{API_KEY_ENV} is not set')

		attempt = 0
		while True:
			try:
				response = await self._post(req)
				break
			except (RateLimited, TransportError) as e:
				if attempt >= self.retries:
					raise
				self.logger.warning(f'{e}, retry {attempt + 1}/{self.retries}')
				if not await pauseBackoff(attempt, self.retryBaseSeconds):
					raise
				attempt += 1

		await self._writeCache(path, req, response)
		return response


	async def batchComplete(self, reqs:list[ChatRequest], maxInFlight:int=DEFAULT_MAX_IN_FLIGHT) -> list[BatchItem]:
		"""Complete many requests with at most maxInFlight outstanding

		Args:
			reqs (list[ChatRequest]): Requests
			maxInFlight (int, optional): Concurrency bound. Defaults to 4.

		Raises:
			ArgumentRange: maxInFlight < 1

		Returns:
			list[BatchItem]: One item per request in input order, failures are recorded not raised
		"""
		if maxInFlight < 1:
			raise ArgumentRange(f'maxInFlight must be at least 1, got {maxInFlight}')
		semaphore = asyncio.Semaphore(maxInFlight)

		async def one(req:ChatRequest) -> BatchItem:
			async with semaphore:
				try:
					return BatchItem(response=await self.complete(req))
				except Exception as e:
					self.logger.error(f'Request {req.cacheKey()[:12]} failed: {e}')
					return BatchItem(error=e)

		items = await asyncio.gather(*[asyncio.create_task(one(r)) for r in reqs])
		failed = sum(1 for i in items if not i.ok)
		if failed > 0:
			self.logger.warning(f'{failed} of {len(items)} requests failed')
		return list(items)


	def describe(self) -> str:
		mode = 'replay' if self.replay else 'live'
		return f'{self.apiBase} ({mode}, key {maskSecret(self._apiKey)}, cache {self.cacheDir})'
