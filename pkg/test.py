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

import asyncio
import logging
import unittest

from utils import *
from pause import backoffDelay, pauseBackoff
from log_config import getNewLogger, resolveLogLevel


class TestParse(unittest.TestCase):

	def test_boolean(self):
		for value in ['1', 'true', 'True', 'yes', 'y', 't', True]:
			self.assertTrue(parseBoolean(value), value)
		for value in ['', '0', 'no', 'false', None, 1, False]:
			self.assertFalse(parseBoolean(value), value)

	def test_int(self):
		self.assertEqual(parseInt('42', 0), 42)
		self.assertEqual(parseInt(7, 0), 7)
		self.assertEqual(parseInt('4.2', 3), 3)
		self.assertEqual(parseInt(None, 5), 5)
		self.assertEqual(parseInt(True, 5), 5)

	def test_float(self):
		self.assertEqual(parseFloat('0.5', 1.0), 0.5)
		self.assertEqual(parseFloat(2, 1.0), 2.0)
		self.assertEqual(parseFloat('abc', 1.0), 1.0)
		self.assertEqual(parseFloat(None, 1.5), 1.5)


class TestJsonPath(unittest.TestCase):

	def setUp(self):
		self.body = {'choices': [{'message': {'content': 'first'}}, {'message': {'content': 'second'}}], 'usage': {'total_tokens': 13}}

	def test_single(self):
		self.assertEqual(getJsonPathData(self.body, '$.choices[0].message.content'), 'first')
		self.assertEqual(getJsonPathData(self.body, '$.usage.total_tokens'), 13)

	def test_multiple(self):
		self.assertEqual(getJsonPathData(self.body, '$.choices[*].message.content'), ['first', 'second'])

	def test_default(self):
		self.assertEqual(getJsonPathData(self.body, '$.missing', 'none'), 'none')
		self.assertEqual(getJsonPathData(self.body, '$[[invalid', 'none'), 'none')


class TestMaskSecret(unittest.TestCase):

	def test_masked(self):
		self.assertEqual(maskSecret('sk-test-key-0000'), 'sk-t...0000')
		self.assertEqual(maskSecret('short'), '****')
		self.assertEqual(maskSecret(''), '<unset>')
		self.assertEqual(maskSecret(None), '<unset>')


class TestPause(unittest.TestCase):

	def test_doubling(self):
		self.assertEqual([backoffDelay(i, 0.5) for i in range(4)], [0.5, 1.0, 2.0, 4.0])
		self.assertEqual(backoffDelay(-1, 2.0), 2.0)

	def test_noDelay(self):
		self.assertTrue(asyncio.run(pauseBackoff(5, 0)))

	def test_cancelPropagates(self):
		async def cancelled():
			task = asyncio.create_task(pauseBackoff(0, 10))
			await asyncio.sleep(0.01)
			task.cancel()
			await task

		self.assertRaises(asyncio.CancelledError, asyncio.run, cancelled())


class TestLogConfig(unittest.TestCase):

	def test_sameLogger(self):
		a = getNewLogger('test-logger')
		b = getNewLogger('test-logger')
		self.assertIs(a, b)
		self.assertEqual(len(a.handlers), 1)

	def test_levels(self):
		self.assertEqual(resolveLogLevel('debug'), logging.DEBUG)
		self.assertEqual(resolveLogLevel('WARNING'), logging.WARNING)
		self.assertEqual(resolveLogLevel('chatty'), logging.INFO)


if __name__ == '__main__':
	# run from the repository root: python test.py
	unittest.main(verbosity=2)
