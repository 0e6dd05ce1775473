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

import math
import unittest
import numpy as np

from eagle.clipper import *
from eagle.ingest import ActionAnnotation, synthesizeManifest
from eagle.errors import ArgumentRange, NoOverlap


class TestSegment(unittest.TestCase):

	def test_exactTiling(self):
		self.assertEqual(segment(48), [(0, 16), (16, 32), (32, 48)])

	def test_halfTailKept(self):
		self.assertEqual(segment(40), [(0, 16), (16, 32), (32, 40)])

	def test_shortTailDropped(self):
		self.assertEqual(segment(35), [(0, 16), (16, 32)])

	def test_shortVideo(self):
		self.assertEqual(segment(8), [(0, 8)])
		self.assertEqual(segment(7.9), [])

	def test_endNeverPastDuration(self):
		windows = segment(47.9999999999)
		self.assertEqual(len(windows), 3)
		self.assertEqual(windows[-1], (32, 47.9999999999))
		self.assertTrue(all(end <= 47.9999999999 for _, end in windows))

	def test_invalid(self):
		self.assertRaises(ArgumentRange, segment, 0)
		self.assertRaises(ArgumentRange, segment, 30, 0)
		self.assertRaises(ArgumentRange, segment, -5)

	def test_randomDurations(self):
		rng = np.random.default_rng(0)
		for duration in rng.uniform(0.1, 600.0, size=1000):
			duration = float(duration)
			windows = segment(duration)
			for a, b in zip(windows, windows[1:]):
				self.assertEqual(a[1], b[0])
			for start, end in windows:
				self.assertLess(start, end)
				self.assertLessEqual(end - start, 16)
				self.assertEqual(len(frameTimes(makeClip('v', start, end))), math.ceil(end - start - 1e-9))
			covered = windows[-1][1] if len(windows) > 0 else 0.0
			self.assertEqual(windows[0][0] if len(windows) > 0 else 0.0, 0.0)
			self.assertLess(duration - covered, 8.0)
			self.assertGreaterEqual(duration - covered, -1e-6)
			self.assertLessEqual(covered, duration)


class TestFrameTimes(unittest.TestCase):

	def test_fullClip(self):
		times = frameTimes(Clip('v', 32, 48))
		self.assertEqual(times, [float(t) for t in range(32, 48)])
		self.assertEqual(len(times), 16)

	def test_oneSecond(self):
		self.assertEqual(frameTimes(Clip('v', 0, 1)), [0])

	def test_tailClip(self):
		self.assertEqual(len(frameTimes(Clip('v', 16, 24))), 8)

	def test_fractionalEnd(self):
		self.assertEqual(frameTimes(Clip('v', 32, 40.5)), [float(t) for t in range(32, 41)])

	def test_fps(self):
		self.assertEqual(frameTimes(Clip('v', 0, 2), fps=2), [0, 0.5, 1.0, 1.5])
		self.assertRaises(ArgumentRange, frameTimes, Clip('v', 0, 2), 0)


class TestRebase(unittest.TestCase):

	def setUp(self):
		self.clip = makeClip('P01_01', 32, 48)

	def test_inside(self):
		start, end = rebase((35.66, 37.0), self.clip)
		self.assertAlmostEqual(start, 3.66)
		self.assertAlmostEqual(end, 5.0)

	def test_leftClamp(self):
		self.assertEqual(rebase((30, 40), self.clip), (0, 8.0))

	def test_rightClamp(self):
		self.assertEqual(rebase((40, 60), self.clip), (8.0, 16.0))

	def test_noOverlap(self):
		self.assertRaises(NoOverlap, rebase, (50, 60), self.clip)
		self.assertRaises(NoOverlap, rebase, (20, 32), self.clip)

	def test_unrebase(self):
		rng = np.random.default_rng(1)
		for _ in range(500):
			start = float(rng.uniform(0, 80))
			end = start + float(rng.uniform(0.1, 30))
			if not (start < 48 and end > 32):
				continue
			a, b = rebase((start, end), self.clip)
			self.assertTrue(0 <= a < b <= 16)
			self.assertAlmostEqual(a + 32, max(start, 32))
			self.assertAlmostEqual(b + 32, min(end, 48))


class TestContextWindow(unittest.TestCase):

	def setUp(self):
		self.clip = makeClip('P01_01', 32, 48)

	def test_current(self):
		ctx = contextWindow(self.clip, [ActionAnnotation(35.66, 37.0, 'open drawer')])
		self.assertEqual(len(ctx.current), 1)
		self.assertAlmostEqual(ctx.current[0].start, 3.66)
		self.assertAlmostEqual(ctx.current[0].end, 5.0)
		self.assertEqual(ctx.current[0].label, 'open drawer')

	def test_past(self):
		ctx = contextWindow(self.clip, [ActionAnnotation(10, 20, 'take knife')])
		self.assertEqual([a.label for a in ctx.past], ['take knife'])
		self.assertEqual(ctx.past[0].end, 20)

	def test_excluded(self):
		ctx = contextWindow(self.clip, [ActionAnnotation(80, 85, 'wash plate')], 30)
		self.assertEqual((ctx.past, ctx.current, ctx.future), ((), (), ()))

	def test_ties(self):
		ctx = contextWindow(self.clip, [ActionAnnotation(28, 32, 'before'), ActionAnnotation(48, 50, 'after')])
		self.assertEqual([a.label for a in ctx.past], ['before'])
		self.assertEqual([a.label for a in ctx.future], ['after'])

	def test_partition(self):
		rng = np.random.default_rng(2)
		actions = []
		for i in range(200):
			start = float(rng.uniform(0, 100))
			actions.append(ActionAnnotation(start, start + float(rng.uniform(0.1, 10)), f'a{i}'))
		ctx = contextWindow(self.clip, actions)
		labels = [a.label for a in ctx.past + ctx.current + ctx.future]
		self.assertEqual(len(labels), len(set(labels)))
		for a in ctx.past:
			self.assertTrue(2 <= a.end <= 32)
		for a in ctx.future:
			self.assertTrue(48 <= a.start <= 78)
		for a in ctx.current:
			self.assertTrue(0 <= a.start < a.end <= 16)
		self.assertEqual(list(ctx.current), sorted(ctx.current, key=lambda a: (a.start, a.end, a.label)))


class TestClipContexts(unittest.TestCase):

	def test_sortedAndSerializable(self):
		collection = synthesizeManifest(0, 6)
		contexts = buildClipContexts(collection)
		keys = [(c.clip.videoId, c.clip.start) for c in contexts]
		self.assertEqual(keys, sorted(keys))
		self.assertEqual(len(contexts), sum(len(segment(v.duration)) for v in collection))
		for ctx in contexts:
			self.assertEqual(contextFromDict(contextToDict(ctx)), ctx)


if __name__ == '__main__':
	# run from the repository root: python -m eagle.clipper.test
	unittest.main(verbosity=2)
