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

from eagle.trajectory import *
from eagle.ingest import ObjectTrajectory
from eagle.clipper import makeClip
from eagle.errors import ArgumentRange, OutOfRange, EmptyTrajectory

RIGHT_HAND = ObjectTrajectory('right hand', (
	(5.0, 0.295, 0.401), (6.0, 0.317, 0.419), (7.0, 0.294, 0.365), (8.0, 0.324, 0.406),
	(10.0, 0.303, 0.377), (12.0, 0.344, 0.366), (13.0, 0.336, 0.284)
))


def denseOracle(points:list, t:float) -> tuple[float, float]:
	# independent piecewise linear evaluation, no numpy
	for (t0, x0, y0), (t1, x1, y1) in zip(points, points[1:]):
		if t0 <= t <= t1:
			w = (t - t0) / (t1 - t0)
			return (x0 + w * (x1 - x0), y0 + w * (y1 - y0))
	t0, x0, y0 = points[-1]
	return (x0, y0)


def randomTrajectory(rng:np.random.Generator, label:str='obj') -> ObjectTrajectory:
	n = int(rng.integers(1, 30))
	times = np.cumsum(rng.uniform(0.2, 3.0, size=n)) + float(rng.uniform(0, 20))
	points = tuple((float(t), float(rng.uniform(0, 1)), float(rng.uniform(0, 1))) for t in times)
	return ObjectTrajectory(label, points)


class TestCenterPoint(unittest.TestCase):

	def test_normalized(self):
		x, y = centerPoint(BoundingBox(0.1, 0.2, 0.5, 0.4))
		self.assertAlmostEqual(x, 0.3)
		self.assertAlmostEqual(y, 0.3)

	def test_pixel(self):
		self.assertEqual(centerPoint(BoundingBox(200, 300, 400, 500, BoxSpace.PIXEL, 1000, 1000)), (0.3, 0.4))

	def test_clamped(self):
		x, y = centerPoint(BoundingBox(900, -400, 1400, 100, BoxSpace.PIXEL, 1000, 1000))
		self.assertEqual((x, y), (1.0, 0.0))

	def test_degenerate(self):
		self.assertRaises(ArgumentRange, BoundingBox, 0.5, 0.2, 0.5, 0.4)
		self.assertRaises(ArgumentRange, BoundingBox, 0.1, 0.2, 1.5, 0.4)
		self.assertRaises(ArgumentRange, BoundingBox, 1, 2, 3, 4, BoxSpace.PIXEL)

	def test_alwaysInUnitSquare(self):
		rng = np.random.default_rng(0)
		for _ in range(200):
			x1, y1 = rng.uniform(-500, 2000, size=2)
			box = BoundingBox(float(x1), float(y1), float(x1 + rng.uniform(1, 800)), float(y1 + rng.uniform(1, 800)), BoxSpace.PIXEL, 1920, 1080)
			x, y = centerPoint(box)
			self.assertTrue(0.0 <= x <= 1.0 and 0.0 <= y <= 1.0)


class TestLerp(unittest.TestCase):

	def test_midpoint(self):
		x, y = lerp(RIGHT_HAND, 6.5)
		self.assertAlmostEqual(x, 0.3055)
		self.assertAlmostEqual(y, 0.392)
		knots = ObjectTrajectory('right hand', ((5.0, 0.295, 0.401), (7.0, 0.294, 0.365)))
		x, y = lerp(knots, 6)
		self.assertAlmostEqual(x, 0.2945)
		self.assertAlmostEqual(y, 0.383)

	def test_knot(self):
		self.assertEqual(lerp(RIGHT_HAND, 5), (0.295, 0.401))

	def test_outOfRange(self):
		self.assertRaises(OutOfRange, lerp, RIGHT_HAND, 14)
		self.assertRaises(OutOfRange, lerp, RIGHT_HAND, 4.9)

	def test_empty(self):
		self.assertRaises(EmptyTrajectory, lerp, ObjectTrajectory('cup'), 1.0)

	def test_denseOracle(self):
		rng = np.random.default_rng(42)
		for i in range(100):
			traj = randomTrajectory(rng)
			first, last = traj.points[0].t, traj.points[-1].t
			for t in rng.uniform(first, last, size=10):
				x, y = lerp(traj, float(t))
				ox, oy = denseOracle(list(traj.points), float(t))
				self.assertLess(abs(x - ox), 1e-9)
				self.assertLess(abs(y - oy), 1e-9)


class TestSubsample(unittest.TestCase):

	def setUp(self):
		self.knots = ObjectTrajectory('cup', ((5.0, 0.2, 0.4), (7.0, 0.4, 0.2)))

	def test_interpolated(self):
		points = subsample(self.knots, [5, 6, 7])
		self.assertEqual(len(points), 3)
		self.assertAlmostEqual(points[1].x, 0.3)
		self.assertAlmostEqual(points[1].y, 0.3)

	def test_outsideSpan(self):
		self.assertEqual(subsample(self.knots, [0, 1]), [])

	def test_knotTimes(self):
		self.assertEqual(tuple(subsample(self.knots, [5.0, 7.0])), self.knots.points)

	def test_countBound(self):
		rng = np.random.default_rng(3)
		for _ in range(50):
			traj = randomTrajectory(rng)
			times = sorted(float(t) for t in rng.uniform(0, 80, size=40))
			points = subsample(traj, times)
			self.assertLessEqual(len(points), len(times))
			self.assertEqual([p.t for p in points], sorted(p.t for p in points))


class TestRepair(unittest.TestCase):

	def test_faultyPoint(self):
		predicted = ObjectTrajectory('right hand', ((5.0, 0.9, 0.9),))
		repaired, report = repair(predicted, RIGHT_HAND, 0.1)
		self.assertEqual(repaired.points[0], (5.0, 0.295, 0.401))
		self.assertEqual(report.nReplaced, 1)
		self.assertEqual(report.replacedSegments, ((0, 0),))
		self.assertAlmostEqual(report.maxDeviation, math.hypot(0.9 - 0.295, 0.9 - 0.401))
		self.assertAlmostEqual(report.maxDeviation, 0.78, places=2)

	def test_identity(self):
		repaired, report = repair(RIGHT_HAND, RIGHT_HAND)
		self.assertEqual(repaired, RIGHT_HAND)
		self.assertEqual(report.nReplaced, 0)
		self.assertEqual(report.replacedSegments, ())

	def test_allFaulty(self):
		predicted = ObjectTrajectory('right hand', tuple((t, 0.95, 0.95) for t in (5.0, 6.5, 9.0, 13.0)))
		repaired, report = repair(predicted, RIGHT_HAND)
		self.assertEqual(report.nReplaced, 4)
		self.assertEqual(report.replacedSegments, ((0, 3),))
		for p in repaired.points:
			x, y = lerp(RIGHT_HAND, p.t)
			self.assertAlmostEqual(p.x, x)
			self.assertAlmostEqual(p.y, y)

	def test_outsideSpanIsFaulty(self):
		predicted = ObjectTrajectory('right hand', ((2.0, 0.295, 0.401), (5.0, 0.295, 0.401), (20.0, 0.336, 0.284)))
		repaired, report = repair(predicted, RIGHT_HAND)
		self.assertEqual(report.replacedSegments, ((0, 0), (2, 2)))
		self.assertEqual(repaired.points[2], (20.0, 0.336, 0.284))

	def test_emptyTruth(self):
		self.assertRaises(EmptyTrajectory, repair, RIGHT_HAND, ObjectTrajectory('right hand'))

	def test_corruptedCopies(self):
		rng = np.random.default_rng(11)
		tau = 0.1
		for _ in range(100):
			truth = randomTrajectory(rng)
			corrupted = []
			for p in truth.points:
				if rng.random() < 0.3:
					corrupted.append((p.t, float(rng.uniform(0, 1)), float(rng.uniform(0, 1))))
				else:
					corrupted.append(tuple(p))
			predicted = ObjectTrajectory(truth.label, tuple(corrupted))
			repaired, report = repair(predicted, truth, tau)
			self.assertLessEqual(report.nReplaced, report.nPoints)
			for p in repaired.points:
				x, y = lerp(truth, p.t)
				self.assertLessEqual(math.hypot(p.x - x, p.y - y), tau + 1e-12)
			again, _ = repair(repaired, truth, tau)
			self.assertEqual(again, repaired)
			self.assertEqual(repair(truth, truth, tau)[0], truth)
			flat = [i for first, last in report.replacedSegments for i in range(first, last + 1)]
			self.assertEqual(flat, sorted(set(flat)))
			self.assertEqual(len(flat), report.nReplaced)


class TestClipTrajectories(unittest.TestCase):

	def test_rebasedToClip(self):
		traj = ObjectTrajectory('knife', ((30.0, 0.1, 0.1), (40.0, 0.2, 0.3)), True)
		clipped = clipTrajectories([traj, ObjectTrajectory('cup', ((80.0, 0.5, 0.5),))], makeClip('v', 32, 48))
		self.assertEqual(len(clipped), 1)
		self.assertEqual([p.t for p in clipped[0].points], [float(t) for t in range(0, 9)])
		self.assertTrue(clipped[0].integerTimes)
		self.assertAlmostEqual(clipped[0].points[0].x, 0.12)


if __name__ == '__main__':
	# run from the repository root: python -m eagle.trajectory.test
	unittest.main(verbosity=2)
