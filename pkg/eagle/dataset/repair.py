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
from dataclasses import dataclass

from ..ingest import ObjectTrajectory, TrajectoryPoint
from ..trajectory import repair, DEFAULT_TAU
from ..promptgen import renderTrajectory
from ..errors import EagleError
from .sample import InstructionSample, LABELED_LIST_RE, TRIPLE_LIST_RE, TRIPLE_GROUPS_RE


@dataclass(frozen=True)
class SampleRepairReport:
	"""Repair outcome of one sample, replacedSegments holds (label, first index, last index)
	"""
	nLists:int = 0
	nPoints:int = 0
	nReplaced:int = 0
	replacedSegments:tuple = ()
	maxDeviation:float = 0.0
	nUnattributed:int = 0

	def toDict(self) -> dict:
		return {
			'n_lists': self.nLists,
			'n_points': self.nPoints,
			'n_replaced': self.nReplaced,
			'replaced_segments': [list(s) for s in self.replacedSegments],
			'max_deviation': self.maxDeviation,
			'n_unattributed': self.nUnattributed
		}


def _findTruth(label:str, truthTrajs:list[ObjectTrajectory]) -> ObjectTrajectory:
	for traj in truthTrajs:
		if traj.label == label:
			return traj
	lowered = label.strip().lower()
	for traj in truthTrajs:
		if traj.label.strip().lower() == lowered:
			return traj
	return None


def _predicted(label:str, body:str) -> ObjectTrajectory:
	triples = list(TRIPLE_GROUPS_RE.finditer(body))
	integerTimes = all('.' not in m.group('t') for m in triples)
	points = tuple(TrajectoryPoint(
		float(m.group('t')),
		float(np.clip(float(m.group('x')), 0.0, 1.0)),
		float(np.clip(float(m.group('y')), 0.0, 1.0))
	) for m in triples)
	return ObjectTrajectory(label, points, integerTimes)


def repairSample(sample:InstructionSample, truthTrajs:list[ObjectTrajectory], tau:float=DEFAULT_TAU) -> tuple[InstructionSample, SampleRepairReport]:
	"""Repair the labeled coordinate lists embedded in a sample response

	Every "'LABEL': [[t, x, y], ...]" list whose label matches a ground truth trajectory is repaired
	and rendered again in canonical number format. Lists without a matching trajectory, with unordered
	times or without a label are left as they are and counted as unattributed.

	Args:
		sample (InstructionSample): Generated sample, coordinates clip relative
		truthTrajs (list[ObjectTrajectory]): Ground truth trajectories of the clip
		tau (float, optional): Distance threshold. Defaults to 0.1.

	Returns:
		tuple[InstructionSample, SampleRepairReport]: Repaired sample (same object if nothing changed) and report
	"""
	text = sample.response
	pieces = []
	cursor = 0
	nLists = nPoints = nReplaced = nUnattributed = 0
	maxDeviation = 0.0
	segments = []
	labeledSpans = []

	for m in LABELED_LIST_RE.finditer(text):
		labeledSpans.append(m.span('body'))
		nLists += 1
		label = m.group('label')
		truth = _findTruth(label, truthTrajs)
		if truth == None or len(truth.points) == 0:
			nUnattributed += 1
			continue
		try:
			predicted = _predicted(label, m.group('body'))
			repaired, report = repair(predicted, truth, tau)
		except EagleError:
			nUnattributed += 1
			continue

		nPoints += report.nPoints
		nReplaced += report.nReplaced
		maxDeviation = max(maxDeviation, report.maxDeviation)
		segments.extend((label, first, last) for first, last in report.replacedSegments)
		pieces.append(text[cursor:m.start()])
		pieces.append(renderTrajectory(repaired))
		cursor = m.end()

	for m in TRIPLE_LIST_RE.finditer(text):
		if not any(start <= m.start() and m.end() <= end for start, end in labeledSpans):
			nLists += 1
			nUnattributed += 1

	pieces.append(text[cursor:])
	report = SampleRepairReport(nLists, nPoints, nReplaced, tuple(segments), maxDeviation, nUnattributed)
	response = ''.join(pieces)
	if response == sample.response:
		return sample, report
	return sample.model_copy(update={'response': response}), report
