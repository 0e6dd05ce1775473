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

from ..ingest import Source
from ..clipper import ClipContext
from ..errors import ArgumentRange

DEFAULT_ACTIVITY_RATIO = (7, 1)


def selectClipsForGeneration(contexts:list[ClipContext], sources:dict, budget:int=None, ratio:tuple[int, int]=DEFAULT_ACTIVITY_RATIO, seed:int=0) -> list[ClipContext]:
	"""Pick the clips to generate samples for, activity and procedure clips in the given ratio

	Args:
		contexts (list[ClipContext]): All clips
		sources (dict): video_id -> Source
		budget (int, optional): Number of clips, None keeps every clip. Defaults to None.
		ratio (tuple[int, int], optional): activity:procedure share of the budget. Defaults to (7, 1).
		seed (int, optional): Selection seed. Defaults to 0.

	Raises:
		ArgumentRange: Negative budget or invalid ratio

	Returns:
		list[ClipContext]: Selected clips sorted by (video_id, clip start)
	"""
	order = lambda c: (c.clip.videoId, c.clip.start)
	if budget == None or budget >= len(contexts):
		return sorted(contexts, key=order)
	if budget < 0:
		raise ArgumentRange(f'budget must not be negative, got {budget}')
	if len(ratio) != 2 or min(ratio) < 0 or sum(ratio) == 0:
		raise ArgumentRange(f'invalid activity:procedure ratio {ratio}')

	ordered = sorted(contexts, key=order)
	procedure = [c for c in ordered if sources[c.clip.videoId] == Source.PTA]
	activity = [c for c in ordered if sources[c.clip.videoId] != Source.PTA]

	nActivity = int(round(budget * ratio[0] / sum(ratio)))
	nActivity = min(max(nActivity, budget - len(procedure)), len(activity))
	nProcedure = min(budget - nActivity, len(procedure))

	rng = np.random.default_rng(seed)
	picked = [activity[i] for i in rng.permutation(len(activity))[:nActivity]]
	picked += [procedure[i] for i in rng.permutation(len(procedure))[:nProcedure]]
	return sorted(picked, key=order)
