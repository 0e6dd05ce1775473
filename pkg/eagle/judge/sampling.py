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

import math
import numpy as np

from ..ingest import Source
from ..dataset import InstructionSample
from ..errors import ArgumentRange

SECOND_ROUND_SUFFIX = '_2'


def sampleSize(n:int, override:int=None) -> int:
	"""Square root sampling, ceil(sqrt(n)) items out of n

	Args:
		n (int): Pool size
		override (int, optional): Fixed size replacing the square root, e.g. 100 for a pool of 7700. Defaults to None.

	Raises:
		ArgumentRange: Negative n or override

	Returns:
		int: Sample size
	"""
	if n < 0:
		raise ArgumentRange(f'pool size must not be negative, got {n}')
	if override != None:
		if override < 0:
			raise ArgumentRange(f'sample size must not be negative, got {override}')
		return override
	root = math.isqrt(n)
	return root if root * root == n else root + 1


def _allocate(k:int, sizes:list[int]) -> list[int]:
	# largest remainder, ties go to the earlier group
	total = sum(sizes)
	quotas = [k * s / total for s in sizes]
	counts = [int(math.floor(q)) for q in quotas]
	order = sorted(range(len(sizes)), key=lambda i: (-(quotas[i] - counts[i]), i))
	for i in order[:k - sum(counts)]:
		counts[i] += 1
	return [min(c, s) for c, s in zip(counts, sizes)]


def selectSamples(samples:list[InstructionSample], k:int, seed:int=0, stratify:bool=False, exclude=()) -> list[InstructionSample]:
	"""Uniform selection without replacement, reproducible for a seed

	Args:
		samples (list[InstructionSample]): Pool in dataset order
		k (int): Requested size, capped at the pool size
		seed (int, optional): Selection seed. Defaults to 0.
		stratify (bool, optional): Allocate k over sources proportionally. Defaults to False.
		exclude (optional): sample ids to leave out, e.g. those of the first round. Defaults to ().

	Raises:
		ArgumentRange: Negative k

	Returns:
		list[InstructionSample]: Selected samples in selection order
	"""
	if k < 0:
		raise ArgumentRange(f'k must not be negative, got {k}')
	excluded = set(exclude)
	pool = [s for s in samples if s.sample_id not in excluded]
	k = min(k, len(pool))
	rng = np.random.default_rng(seed)
	if not stratify or k == 0:
		return [pool[i] for i in rng.permutation(len(pool))[:k]]

	groups = [[s for s in pool if s.source == source] for source in Source]
	counts = _allocate(k, [len(g) for g in groups])
	selected = []
	for group, count in zip(groups, counts):
		selected += [group[i] for i in rng.permutation(len(group))[:count]]
	return [selected[i] for i in rng.permutation(len(selected))]
