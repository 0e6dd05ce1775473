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

import pandas as pd
from dataclasses import dataclass

from ..ingest import ManifestCollection, Source, Split
from ..clipper import ClipContext
from ..errors import DanglingReference
from .sample import InstructionSample

TOTAL = 'All'
COUNT_COLUMNS = ['n_videos', 'n_clips', 'n_samples', 'n_actions']
STATS_COLUMNS = ['source', 'split', 'n_videos', 'n_clips', 'n_samples', 'avg_actions_per_clip', 'avg_samples_per_clip']


@dataclass(frozen=True)
class DatasetStats:
	"""Counts and means per source x split, plus per source and overall total rows
	"""
	table:pd.DataFrame
	empty:bool

	def row(self, source:str, split:str) -> dict:
		source = source.value if isinstance(source, Source) else source
		split = split.value if isinstance(split, Split) else split
		match = self.table[(self.table['source'] == source) & (self.table['split'] == split)]
		if len(match) == 0:
			raise KeyError(f'no stats row for {source}/{split}')
		return match.iloc[0].to_dict()

	def toDict(self) -> dict:
		rows = []
		for r in self.table.to_dict(orient='records'):
			rows.append({
				'source': r['source'],
				'split': r['split'],
				'n_videos': int(r['n_videos']),
				'n_clips': int(r['n_clips']),
				'n_samples': int(r['n_samples']),
				'avg_actions_per_clip': round(float(r['avg_actions_per_clip']), 4),
				'avg_samples_per_clip': round(float(r['avg_samples_per_clip']), 4)
			})
		return {'empty': self.empty, 'rows': rows}

	def toText(self) -> str:
		return self.table.to_string(index=False, float_format=lambda v: f'{v:.2f}')


def _overlaps(start:float, end:float, clipStart:float, clipEnd:float) -> bool:
	return start < clipEnd and end > clipStart


def _withAverages(counts:pd.DataFrame) -> pd.DataFrame:
	counts = counts.copy()
	clips = counts['n_clips'].where(counts['n_clips'] > 0)
	counts['avg_actions_per_clip'] = (counts['n_actions'] / clips).fillna(0.0)
	counts['avg_samples_per_clip'] = (counts['n_samples'] / clips).fillna(0.0)
	return counts


def computeStats(manifests:ManifestCollection, samples:list[InstructionSample], clips:list[ClipContext]=None) -> DatasetStats:
	"""Per source x split statistics of a dataset

	Clips are the given clip contexts plus every clip referenced by a sample. Actions per clip count the
	manifest actions overlapping the clip. Total rows sum counts and pool the means.

	Args:
		manifests (ManifestCollection): Videos the samples belong to
		samples (list[InstructionSample]): Samples of the dataset
		clips (list[ClipContext], optional): Segmented clips including those without samples. Defaults to None.

	Raises:
		DanglingReference: A sample or clip references an unknown video

	Returns:
		DatasetStats: Stats table with emptiness flag
	"""
	videos = manifests.byId()
	clipKeys = {}
	for ctx in clips or []:
		if ctx.clip.videoId not in videos:
			raise DanglingReference(f'clip references unknown video {ctx.clip.videoId}')
		clipKeys.setdefault((ctx.clip.videoId, ctx.clip.start, ctx.clip.end), 0)
	for s in samples:
		if s.video_id not in videos:
			raise DanglingReference(f'sample {s.sample_id} references unknown video {s.video_id}')
		key = (s.video_id, s.clip[0], s.clip[1])
		clipKeys[key] = clipKeys.get(key, 0) + 1

	records = []
	for (videoId, start, end), nSamples in clipKeys.items():
		video = videos[videoId]
		nActions = sum(1 for a in video.actions if _overlaps(a.start, a.end, start, end))
		records.append({'source': video.source.value, 'split': video.split.value, 'n_videos': 0, 'n_clips': 1, 'n_samples': nSamples, 'n_actions': nActions})
	for video in manifests:
		records.append({'source': video.source.value, 'split': video.split.value, 'n_videos': 1, 'n_clips': 0, 'n_samples': 0, 'n_actions': 0})

	grid = pd.DataFrame([{'source': so.value, 'split': sp.value} for so in Source for sp in Split])
	if len(records) > 0:
		grouped = pd.DataFrame(records).groupby(['source', 'split'], as_index=False)[COUNT_COLUMNS].sum()
		counts = grid.merge(grouped, on=['source', 'split'], how='left')
	else:
		counts = grid.assign(**{c: 0 for c in COUNT_COLUMNS})
	counts[COUNT_COLUMNS] = counts[COUNT_COLUMNS].fillna(0).astype(int)

	rows = []
	for source in Source:
		part = counts[counts['source'] == source.value]
		rows.append(part)
		rows.append(pd.DataFrame([{'source': source.value, 'split': TOTAL, **part[COUNT_COLUMNS].sum().to_dict()}]))
	rows.append(pd.DataFrame([{'source': TOTAL, 'split': TOTAL, **counts[COUNT_COLUMNS].sum().to_dict()}]))
	table = _withAverages(pd.concat(rows, ignore_index=True))
	table[COUNT_COLUMNS] = table[COUNT_COLUMNS].astype(int)
	return DatasetStats(table[STATS_COLUMNS].reset_index(drop=True), len(samples) == 0)
