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
from typing import Optional
from dataclasses import dataclass, fields

from utils import parseInt, parseFloat, parseBoolean

from ..ingest import HELD_OUT_LAB
from ..clipper import DEFAULT_CLIP_LEN, DEFAULT_CTX_S, DEFAULT_FPS
from ..trajectory import DEFAULT_TAU
from ..promptgen import DEFAULT_N_PAIRS, DEFAULT_GENERATION_TEMPERATURE, DEFAULT_GENERATION_MODEL
from ..gateway import DEFAULT_API_BASE, DEFAULT_CACHE_DIR, DEFAULT_RETRIES, DEFAULT_RETRY_BASE_S, DEFAULT_MAX_IN_FLIGHT
from ..dataset import DEFAULT_ACTIVITY_RATIO
from ..judge import DEFAULT_JUDGE_TEMPERATURE, DEFAULT_JUDGE_MODEL
from ..errors import ArgumentRange


@dataclass
class RunConfig:
	"""Every pipeline constant and path of one run, flags override environment, environment overrides defaults
	"""
	command:str = None

	# paths
	manifest:Optional[str] = None
	clips:Optional[str] = None
	dataset:Optional[str] = None
	out:Optional[str] = None
	scores:Optional[str] = None
	responses:Optional[str] = None
	report:Optional[str] = None
	csv:Optional[str] = None
	means:Optional[str] = None
	actions:Optional[str] = None
	sourceFormat:Optional[str] = None
	trajectories:Optional[str] = None
	videos:Optional[str] = None
	firstRoundScores:Optional[str] = None

	# pipeline constants
	clipLen:float = DEFAULT_CLIP_LEN
	ctxS:float = DEFAULT_CTX_S
	fps:float = DEFAULT_FPS
	tau:float = DEFAULT_TAU
	nPairs:int = DEFAULT_N_PAIRS
	seed:int = 0
	nVideos:int = 20
	sampleSize:Optional[int] = None
	stratify:bool = False
	round:int = 1
	clipBudget:Optional[int] = None
	activityRatio:tuple = DEFAULT_ACTIVITY_RATIO
	ablation:str = 'Full'
	heldOutLab:str = HELD_OUT_LAB

	# external model
	replay:bool = False
	apiBase:str = DEFAULT_API_BASE
	model:str = DEFAULT_GENERATION_MODEL
	judgeModel:str = DEFAULT_JUDGE_MODEL
	generationTemperature:float = DEFAULT_GENERATION_TEMPERATURE
	judgeTemperature:float = DEFAULT_JUDGE_TEMPERATURE
	cacheDir:str = DEFAULT_CACHE_DIR
	retries:int = DEFAULT_RETRIES
	retryBaseSeconds:float = DEFAULT_RETRY_BASE_S
	jobs:int = DEFAULT_MAX_IN_FLIGHT

	logLevel:Optional[str] = None

	def __post_init__(self):
		for name in ('clipLen', 'fps'):
			if not getattr(self, name) > 0:
				raise ArgumentRange(f'{name} must be positive, got {getattr(self, name)}')
		for name in ('ctxS', 'tau', 'generationTemperature', 'judgeTemperature', 'retryBaseSeconds'):
			if getattr(self, name) < 0:
				raise ArgumentRange(f'{name} must not be negative, got {getattr(self, name)}')
		if self.nPairs < 1 or self.jobs < 1 or self.nVideos < 1:
			raise ArgumentRange('nPairs, jobs and nVideos must be at least 1')
		if self.round not in (1, 2):
			raise ArgumentRange(f'round must be 1 or 2, got {self.round}')
		if self.retries < 0:
			raise ArgumentRange(f'retries must not be negative, got {self.retries}')


	@staticmethod
	def fromEnvironment(**overrides) -> 'RunConfig':
		"""Defaults from eagle_* environment variables, then explicit overrides (flags); None overrides are ignored
		"""
		env = os.environ
		values = {
			'apiBase': env.get('eagle_api_base') or DEFAULT_API_BASE,
			'model': env.get('eagle_model') or DEFAULT_GENERATION_MODEL,
			'judgeModel': env.get('eagle_judge_model') or env.get('eagle_model') or DEFAULT_JUDGE_MODEL,
			'cacheDir': env.get('eagle_cache') or DEFAULT_CACHE_DIR,
			'replay': parseBoolean(env.get('eagle_replay')),
			'jobs': parseInt(env.get('eagle_jobs'), DEFAULT_MAX_IN_FLIGHT),
			'retries': parseInt(env.get('eagle_retries'), DEFAULT_RETRIES),
			'retryBaseSeconds': parseFloat(env.get('eagle_retry_base'), DEFAULT_RETRY_BASE_S),
			'logLevel': env.get('eagle_log_level')
		}
		known = {f.name for f in fields(RunConfig)}
		for key, value in overrides.items():
			if key in known and value != None:
				values[key] = value
		return RunConfig(**values)
