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

# https://docs.python.org/3/library/unittest.html

import os
import httpx
import asyncio
import unittest
import tempfile
from unittest import mock
import simplejson as json
from pydantic import ValidationError

from eagle.gateway import *
from eagle.errors import ReplayMiss, AuthMissing, RateLimited, TransportError, GenerationError, ArgumentRange


def request(text:str, temperature:float=0.0) -> ChatRequest:
	return systemUserRequest('gpt-4', 'You answer briefly.', text, temperature, 64)


def completion(content:str) -> httpx.Response:
	return httpx.Response(200, json={
		'choices': [{'index': 0, 'message': {'role': 'assistant', 'content': content}, 'finish_reason': 'stop'}],
		'usage': {'prompt_tokens': 10, 'completion_tokens': 3, 'total_tokens': 13}
	})


def echo(req:httpx.Request) -> httpx.Response:
	body = json.loads(req.content)
	return completion('echo: ' + body['messages'][-1]['content'])


class TestChatTypes(unittest.TestCase):

	def test_noMessages(self):
		self.assertRaises(ValidationError, ChatRequest, model_name='gpt-4', messages=())

	def test_negativeTemperature(self):
		self.assertRaises(ValidationError, request, 'hi', -0.5)

	def test_cacheKeyStable(self):
		a = request('hello')
		b = ChatRequest.model_validate({'temperature': 0.0, 'max_tokens': 64, 'messages': [
			{'content': 'You answer briefly.', 'role': 'system'},
			{'content': 'hello', 'role': 'user'}
		], 'model_name': 'gpt-4'})
		self.assertEqual(a.cacheKey(), b.cacheKey())
		self.assertNotEqual(a.cacheKey(), request('hello', 0.7).cacheKey())

	def test_unknownFinishReason(self):
		self.assertEqual(ChatResponse(content='x', finish_reason='something').finish_reason, FinishReason.UNKNOWN)
		self.assertEqual(ChatResponse(content='x', finish_reason=None).finish_reason, FinishReason.UNKNOWN)


class TestChatClient(unittest.IsolatedAsyncioTestCase):

	def setUp(self):
		self.folder = tempfile.TemporaryDirectory()
		self.cacheDir = os.path.join(self.folder.name, 'cache')

	def tearDown(self):
		self.folder.cleanup()

	def client(self, handler, replay:bool=False, apiKey:str='sk-test-key-0000', retries:int=4) -> ChatClient:
		return ChatClient(
			apiBase='https://llm.test/v1',
			apiKey=apiKey,
			cacheDir=self.cacheDir,
			replay=replay,
			retries=retries,
			retryBaseSeconds=0,
			transport=httpx.MockTransport(handler)
		)

	async def test_cacheHit(self):
		async with self.client(echo) as client:
			first = await client.complete(request('hello'))
			second = await client.complete(request('hello'))
			self.assertEqual(first, second)
			self.assertEqual(first.content, 'echo: hello')
			self.assertEqual(first.usage.total_tokens, 13)
			self.assertEqual(client.networkCalls, 1)
			self.assertEqual(client.cacheHits, 1)
			self.assertTrue(os.path.exists(client.cachePath(request('hello'))))
		self.assertEqual([f for f in os.listdir(self.cacheDir) if f.endswith('.tmp')], [])

	async def test_replay(self):
		async with self.client(echo) as client:
			await client.complete(request('seen'))
		async with self.client(echo, replay=True, apiKey='') as client:
			self.assertEqual((await client.complete(request('seen'))).content, 'echo: seen')
			with self.assertRaises(ReplayMiss):
				await client.complete(request('unseen'))
			self.assertEqual(client.networkCalls, 0)

	async def test_failedCacheWriteLeavesNoTmp(self):
		async with self.client(echo) as client:
			with mock.patch('os.replace', side_effect=OSError('disk full')):
				with self.assertRaises(OSError):
					await client.complete(request('hello'))
			self.assertFalse(os.path.exists(client.cachePath(request('hello'))))
		self.assertEqual([f for f in os.listdir(self.cacheDir) if f.endswith('.tmp')], [])

	async def test_cancelDuringBackoff(self):
		client = ChatClient(
			apiBase='https://llm.test/v1',
			apiKey='sk-test-key-0000',
			cacheDir=self.cacheDir,
			retryBaseSeconds=30,
			transport=httpx.MockTransport(lambda req: httpx.Response(429, json={'error': 'slow down'}))
		)
		async with client:
			task = asyncio.create_task(client.complete(request('hello')))
			while client.networkCalls == 0:
				await asyncio.sleep(0)
			await asyncio.sleep(0.01)
			task.cancel()
			with self.assertRaises(asyncio.CancelledError):
				await task
			self.assertEqual(client.networkCalls, 1)

	async def test_authMissing(self):
		async with self.client(echo, apiKey='') as client:
			with self.assertRaises(AuthMissing):
				await client.complete(request('hello'))

	async def test_rateLimitRetried(self):
		calls = []

		def handler(req:httpx.Request) -> httpx.Response:
			calls.append(req)
			if len(calls) <= 2:
				return httpx.Response(429, json={'error': 'slow down'})
			return completion('finally')

		async with self.client(handler) as client:
			self.assertEqual((await client.complete(request('hello'))).content, 'finally')
			self.assertEqual(client.networkCalls, 3)
		self.assertEqual(calls[0].headers['authorization'], 'Bearer sk-test-key-0000')
		self.assertEqual(str(calls[0].url), 'https://llm.test/v1/chat/completions')

	async def test_rateLimitSurfaced(self):
		async with self.client(lambda req: httpx.Response(429), retries=2) as client:
			with self.assertRaises(RateLimited):
				await client.complete(request('hello'))
			self.assertEqual(client.networkCalls, 3)

	async def test_serverErrorIsTransport(self):
		async with self.client(lambda req: httpx.Response(503), retries=1) as client:
			with self.assertRaises(TransportError):
				await client.complete(request('hello'))

	async def test_connectErrorIsTransport(self):
		def handler(req:httpx.Request):
			raise httpx.ConnectError('refused', request=req)

		async with self.client(handler, retries=0) as client:
			with self.assertRaises(TransportError):
				await client.complete(request('hello'))

	async def test_rejectedNotRetried(self):
		async with self.client(lambda req: httpx.Response(400, json={'error': 'bad'})) as client:
			with self.assertRaises(GenerationError):
				await client.complete(request('hello'))
			self.assertEqual(client.networkCalls, 1)

	async def test_batchOrder(self):
		inFlight = []
		peak = []

		async def handler(req:httpx.Request) -> httpx.Response:
			inFlight.append(req)
			peak.append(len(inFlight))
			await asyncio.sleep(0.01 * (len(peak) % 3))
			inFlight.remove(req)
			return echo(req)

		reqs = [request(f'q{i}') for i in range(10)]
		async with self.client(handler) as client:
			items = await client.batchComplete(reqs, 3)
			self.assertEqual([i.response.content for i in items], [f'echo: q{i}' for i in range(10)])
			self.assertLessEqual(max(peak), 3)
			cached = await client.batchComplete(reqs, 3)
			self.assertEqual([i.response for i in cached], [i.response for i in items])
			self.assertEqual(client.networkCalls, 10)

	async def test_batchErrors(self):
		def handler(req:httpx.Request) -> httpx.Response:
			if 'q4' in json.loads(req.content)['messages'][-1]['content']:
				return httpx.Response(400)
			return echo(req)

		async with self.client(handler) as client:
			items = await client.batchComplete([request(f'q{i}') for i in range(10)], 4)
		self.assertEqual(sum(1 for i in items if i.ok), 9)
		self.assertIsInstance(items[4].error, GenerationError)
		self.assertIsNone(items[4].response)

	async def test_batchEdgeCases(self):
		async with self.client(echo) as client:
			self.assertEqual(await client.batchComplete([], 2), [])
			with self.assertRaises(ArgumentRange):
				await client.batchComplete([request('a')], 0)

	async def test_describeMasksKey(self):
		async with self.client(echo, replay=True) as client:
			self.assertNotIn('sk-test-key-0000', client.describe())
			self.assertIn('replay', client.describe())


if __name__ == '__main__':
	# run from the repository root: python -m eagle.gateway.test
	unittest.main(verbosity=2)
