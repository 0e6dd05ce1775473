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

import numpy as np
from enum import Enum
from dataclasses import dataclass

from ..ingest import ObjectTrajectory, TrajectoryPoint
from ..clipper import Clip
from ..errors import ArgumentRange, OutOfRange, EmptyTrajectory

DEFAULT_TAU = 0.1


class BoxSpace(str, Enum):
	PIXEL = 'Pixel'
	NORMALIZED = 'Normalized'


@dataclass(frozen=True)
class BoundingBox:
	"""Box corners, either in pixels of a (width x height) frame or normalized to 0-1
	"""
	x1:float
	y1:float
	x2:float
	y2:float
	space:BoxSpace = BoxSpace.NORMALIZED
	width:int = None
	height:int = None

	def __post_init__(self):
		if not (self.x1 < self.x2 and self.y1 < self.y2):
			raise ArgumentRange(f'degenerate box ({self.x1}, {self.y1}, {self.x2}, {self.y2})')
		if self.space == BoxSpace.PIXEL:
			if self.width == None or self.height == None or self.width <= 0 or self.height <= 0:
				raise ArgumentRange('pixel boxes need a positive frame width and height')
		elif not all(0.0 <= v <= 1.0 for v in (self.x1, self.y1, self.x2, self.y2)):
			raise ArgumentRange(f'normalized box outside [0,1]: ({self.x1}, {self.y1}, {self.x2}, {self.y2})')


@dataclass(frozen=True)
class RepairReport:
	nPoints:int = 0
	nReplaced:int = 0
	replacedSegments:tuple = ()
	maxDeviation:float = 0.0
	nUnattributed:int = 0

	def toDict(self) -> dict:
		return {
			'n_points': self.nPoints,
			'n_replaced': self.nReplaced,
			'replaced_segments': [list(s) for s in self.replacedSegments],
			'max_deviation': self.maxDeviation,
			'n_unattributed': self.nUnattributed
		}


def centerPoint(box:BoundingBox) -> tuple[float, float]:
	"""Normalized center of a box, pixel boxes partly outside the frame are clamped to [0,1]

	Args:
		box (BoundingBox): Box in pixel or normalized space

	Returns:
		tuple[float, float]: (x, y) in [0,1]
	"""
	cx = (box.x1 + box.x2) / 2.0
	cy = (box.y1 + box.y2) / 2.0
	if box.space == BoxSpace.PIXEL:
		cx = cx / box.width
		cy = cy / box.height
	return (float(np.clip(cx, 0.0, 1.0)), float(np.clip(cy, 0.0, 1.0)))


def _checkSpan(traj:ObjectTrajectory):
	if len(traj.points) == 0:
		raise EmptyTrajectory(f'{traj.label!r} has no points')


def lerp(traj:ObjectTrajectory, t:float) -> tuple[float, float]:
	"""Linear interpolation of a trajectory at time t

	Args:
		traj (ObjectTrajectory): Knots
		t (float): Query time within [first.t, last.t]

	Raises:
		EmptyTrajectory: No knots
		OutOfRange: t outside the knot span

	Returns:
		tuple[float, float]: (x, y)
	"""
	_checkSpan(traj)
	first = traj.points[0].t
	last = traj.points[-1].t
	if t < first or t > last:
		raise OutOfRange(f'{traj.label!r}: t={t} outside [{first}, {last}]')
	times = traj.times
	return (float(np.interp(t, times, traj.xs)), float(np.interp(t, times, traj.ys)))


def subsample(traj:ObjectTrajectory, times:list[float]) -> list[TrajectoryPoint]:
	"""Sample a trajectory at the requested times, times outside the knot span are skipped

	Args:
		traj (ObjectTrajectory): Knots
		times (list[float]): Ascending query times

	Returns:
		list[TrajectoryPoint]: One point per in-span time
	"""
	if len(traj.points) == 0:
		return []
	query = np.asarray(times, dtype=float)
	knots = traj.times
	query = query[(query >= knots[0]) & (query <= knots[-1])]
	xs = np.interp(query, knots, traj.xs)
	ys = np.interp(query, knots, traj.ys)
	return [TrajectoryPoint(float(t), float(x), float(y)) for t, x, y in zip(query, xs, ys)]


def _faultySegments(faulty:np.ndarray) -> tuple:
	segments = []
	start = None
	for i, isFaulty in enumerate(faulty):
		if isFaulty and start == None:
			start = i
		elif not isFaulty and start != None:
			segments.append((start, i - 1))
			start = None
	if start != None:
		segments.append((start, len(faulty) - 1))
	return tuple(segments)


def repair(predicted:ObjectTrajectory, truth:ObjectTrajectory, tau:float=DEFAULT_TAU) -> tuple[ObjectTrajectory, RepairReport]:
	"""Replace runs of predicted points that deviate from the ground truth by more than tau

	Points outside the truth time span are always faulty and take the nearest truth end point.

	Args:
		predicted (ObjectTrajectory): Generated coordinates
		truth (ObjectTrajectory): Ground truth knots of the same object
		tau (float, optional): Euclidean distance threshold in normalized units. Defaults to 0.1.

	Raises:
		EmptyTrajectory: Truth without points

	Returns:
		tuple[ObjectTrajectory, RepairReport]: Repaired trajectory and what was replaced
	"""
	_checkSpan(truth)
	if len(predicted.points) == 0:
		return predicted, RepairReport()

	times = predicted.times
	knots = truth.times
	gx = np.interp(times, knots, truth.xs)
	gy = np.interp(times, knots, truth.ys)
	deviation = np.hypot(predicted.xs - gx, predicted.ys - gy)
	outside = (times < knots[0]) | (times > knots[-1])
	faulty = outside | (deviation > tau)

	xs = np.where(faulty, gx, predicted.xs)
	ys = np.where(faulty, gy, predicted.ys)
	points = tuple(TrajectoryPoint(float(t), float(x), float(y)) for t, x, y in zip(times, xs, ys))
	report = RepairReport(
		nPoints=len(points),
		nReplaced=int(faulty.sum()),
		replacedSegments=_faultySegments(faulty),
		maxDeviation=float(deviation.max())
	)
	return ObjectTrajectory(predicted.label, points, predicted.integerTimes), report


def clipTrajectories(trajectories:list[ObjectTrajectory], clip:Clip) -> list[ObjectTrajectory]:
	"""Sample video trajectories at a clip's frame times and shift them to clip relative seconds

	Args:
		trajectories (list[ObjectTrajectory]): Video level trajectories
		clip (Clip): Clip with frame times

	Returns:
		list[ObjectTrajectory]: Non empty clip trajectories in input order
	"""
	result = []
	for traj in trajectories:
		points = subsample(traj, list(clip.frameTimes))
		if len(points) == 0:
			continue
		shifted = tuple(TrajectoryPoint(round(p.t - clip.start, 6), p.x, p.y) for p in points)
		result.append(ObjectTrajectory(traj.label, shifted, traj.integerTimes))
	return result
