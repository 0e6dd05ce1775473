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
from dataclasses import dataclass

from ..ingest import ActionAnnotation, ManifestCollection, VideoManifest
from ..errors import ArgumentRange, NoOverlap

DEFAULT_CLIP_LEN = 16.0
DEFAULT_CTX_S = 30.0
DEFAULT_FPS = 1.0

# Float tolerance for window boundaries
EPS = 1e-9


@dataclass(frozen=True)
class Clip:
	videoId:str
	start:float
	end:float
	frameTimes:tuple = ()

	@property
	def length(self) -> float:
		return self.end - self.start


@dataclass(frozen=True)
class ClipContext:
	"""Actions around one clip, past/future keep global times, current is clip relative
	"""
	clip:Clip
	past:tuple = ()
	current:tuple = ()
	future:tuple = ()


def segment(duration:float, clipLen:float=DEFAULT_CLIP_LEN) -> list[tuple[float, float]]:
	"""Cut [0, duration) into consecutive windows of clipLen seconds

	The last partial window is kept when it is at least clipLen/2 long.

	Args:
		duration (float): Video duration in seconds
		clipLen (float, optional): Window length. Defaults to 16.

	Raises:
		ArgumentRange: Non positive duration or clipLen

	Returns:
		list[tuple[float, float]]: (start, end) windows sorted by start
	"""
	if not duration > 0 or not clipLen > 0:
		raise ArgumentRange(f'duration and clipLen must be positive, got {duration} and {clipLen}')

	nFull = int(math.floor(duration / clipLen + EPS))
	windows = [(k * clipLen, min((k + 1) * clipLen, duration)) for k in range(nFull)]
	tailStart = nFull * clipLen
	tail = duration - tailStart
	if tail > EPS and tail + EPS >= clipLen / 2:
		windows.append((tailStart, duration))
	return windows


def frameTimes(clip:Clip, fps:float=DEFAULT_FPS) -> list[float]:
	"""Frame sample times of a clip, start_s, start_s+1/fps, ... strictly before end_s

	Args:
		clip (Clip): Clip to sample
		fps (float, optional): Frames per second. Defaults to 1.

	Returns:
		list[float]: ceil((end - start) * fps) times
	"""
	if not fps > 0:
		raise ArgumentRange(f'fps must be positive, got {fps}')
	count = int(math.ceil((clip.end - clip.start) * fps - EPS))
	return [clip.start + i / fps for i in range(count)]


def makeClip(videoId:str, start:float, end:float, fps:float=DEFAULT_FPS) -> Clip:
	clip = Clip(videoId, start, end)
	return Clip(videoId, start, end, tuple(frameTimes(clip, fps)))


def rebase(interval:tuple[float, float], clip:Clip) -> tuple[float, float]:
	"""Convert a global interval to clip relative seconds, clamped to the clip

	Args:
		interval (tuple[float, float]): (start, end) in video seconds
		clip (Clip): Target clip

	Raises:
		NoOverlap: The interval does not intersect the clip

	Returns:
		tuple[float, float]: (start, end) within [0, clip length]
	"""
	start, end = interval
	if not (start < clip.end and end > clip.start):
		raise NoOverlap(f'<{start},{end}> misses clip <{clip.start},{clip.end}>')
	return (max(start - clip.start, 0.0), min(end - clip.start, clip.length))


def contextWindow(clip:Clip, actions:list[ActionAnnotation], ctxS:float=DEFAULT_CTX_S) -> ClipContext:
	"""Sort actions into past, current and future of a clip

	Ties go outwards: an action ending exactly at clip start is past, one starting exactly at clip end is future.

	Args:
		clip (Clip): The clip
		actions (list[ActionAnnotation]): Actions of the clip's video
		ctxS (float, optional): Context length before and after the clip. Defaults to 30.

	Returns:
		ClipContext: current intervals are rebased to the clip
	"""
	past = []
	current = []
	future = []
	for a in actions:
		if a.start < clip.end and a.end > clip.start:
			start, end = rebase((a.start, a.end), clip)
			current.append(ActionAnnotation(start, end, a.label, a.kind, a.stepIndex))
		elif clip.start - ctxS <= a.end <= clip.start:
			past.append(a)
		elif clip.end <= a.start <= clip.end + ctxS:
			future.append(a)

	order = lambda a: (a.start, a.end, a.label)
	return ClipContext(clip, tuple(sorted(past, key=order)), tuple(sorted(current, key=order)), tuple(sorted(future, key=order)))


def segmentVideo(manifest:VideoManifest, clipLen:float=DEFAULT_CLIP_LEN, fps:float=DEFAULT_FPS) -> list[Clip]:
	return [makeClip(manifest.videoId, s, e, fps) for s, e in segment(manifest.duration, clipLen)]


def buildClipContexts(collection:ManifestCollection, clipLen:float=DEFAULT_CLIP_LEN, ctxS:float=DEFAULT_CTX_S, fps:float=DEFAULT_FPS) -> list[ClipContext]:
	"""Segment every video and attach temporal context

	Args:
		collection (ManifestCollection): Videos to segment
		clipLen (float, optional): Clip length. Defaults to 16.
		ctxS (float, optional): Context seconds. Defaults to 30.
		fps (float, optional): Frame rate of the frame times. Defaults to 1.

	Returns:
		list[ClipContext]: Sorted by (video_id, clip start)
	"""
	contexts = []
	for manifest in collection:
		for clip in segmentVideo(manifest, clipLen, fps):
			contexts.append(contextWindow(clip, list(manifest.actions), ctxS))
	return sorted(contexts, key=lambda c: (c.clip.videoId, c.clip.start))


def contextToDict(ctx:ClipContext) -> dict:
	return {
		'video_id': ctx.clip.videoId,
		'start_s': ctx.clip.start,
		'end_s': ctx.clip.end,
		'frame_times': list(ctx.clip.frameTimes),
		'past': [a.toDict() for a in ctx.past],
		'current': [a.toDict() for a in ctx.current],
		'future': [a.toDict() for a in ctx.future]
	}


def contextFromDict(d:dict) -> ClipContext:
	clip = Clip(d['video_id'], float(d['start_s']), float(d['end_s']), tuple(float(t) for t in d.get('frame_times', [])))
	return ClipContext(
		clip,
		tuple(ActionAnnotation.fromDict(a) for a in d.get('past', [])),
		tuple(ActionAnnotation.fromDict(a) for a in d.get('current', [])),
		tuple(ActionAnnotation.fromDict(a) for a in d.get('future', []))
	)
