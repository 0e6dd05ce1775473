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

import re
from enum import Enum
from typing import Optional, Union
from dataclasses import dataclass

from ..ingest import ObjectTrajectory, RecipeAnnotation, StepInterval, ActionKind, Source
from ..clipper import Clip, ClipContext, rebase, DEFAULT_CTX_S
from ..errors import LayoutError
from .numbers import formatNumber, formatTime, formatBoundary

NONE_MARKER = '(none)'
NO_ACTIONS_SENTENCE = 'No annotated actions in this clip.'

HISTORY_PAST_RE = re.compile(r'^Past (?P<ctx>\S+) second: (?P<body>.*)$')
HISTORY_CURRENT_RE = re.compile(r'^Current: (?P<body>.*)$')
HISTORY_FUTURE_RE = re.compile(r'^Future (?P<ctx>\S+) second: (?P<body>.*)$')
TIMED_ITEM_RE = re.compile(r'^<(?P<start>[^,<>]+),(?P<end>[^,<>]+)> (?P<label>.*)$')
# separator outside double quotes, quotes inside a quoted label are doubled
ITEM_SPLIT_RE = re.compile(r', (?=(?:[^"]*"[^"]*")*[^"]*$)')
TASK_HEADER_RE = re.compile(r'^(?P<name>.*?) with steps (?P<steps>.*)$')
TASK_STEP_SPLIT_RE = re.compile(r', (?=\d+: )')
TASK_STEP_RE = re.compile(r'^(?P<index>\d+): (?P<text>.*)$')
TASK_CURRENT_RE = re.compile(r"^The current step, as ground truth, is: (?:<(?P<start>[^,<>]+),(?P<end>[^,<>]+)> )?(?P<index>\d+): (?P<text>.*)$")


class ContextKind(str, Enum):
	TASK_DESCRIPTION = 'Task Description'
	TEMPORAL_HISTORY = 'Temporal History'
	OBJECT_TRAJECTORIES = 'Object Trajectory'


@dataclass(frozen=True)
class SymbolicContext:
	kind:ContextKind
	body:str


@dataclass(frozen=True)
class HistoryBlocks:
	past:tuple = ()
	current:tuple = ()
	future:tuple = ()


@dataclass(frozen=True)
class StepReference:
	"""Ground truth target of a procedure clip: one recipe step
	"""
	recipe:RecipeAnnotation
	index:int


def quoteLabel(label:str) -> str:
	"""Quote a label that would clash with the item separator, leave any other label as is
	"""
	if ',' in label or '"' in label or label.startswith('<') or label == NONE_MARKER:
		return '"' + label.replace('"', '""') + '"'
	return label


def unquoteLabel(text:str) -> str:
	if len(text) >= 2 and text.startswith('"') and text.endswith('"'):
		return text[1:-1].replace('""', '"')
	return text


def _labels(actions) -> str:
	if len(actions) == 0:
		return NONE_MARKER
	return ', '.join(quoteLabel(a.label) for a in actions)


def renderTemporalHistory(ctx:ClipContext, ctxS:float=DEFAULT_CTX_S, withTimes:bool=True) -> str:
	"""Render past labels, timed current actions and future labels of a clip

	Args:
		ctx (ClipContext): Clip context, current actions clip relative
		ctxS (float, optional): Context seconds shown in the block titles. Defaults to 30.
		withTimes (bool, optional): False drops the <start,end> boundaries. Defaults to True.

	Returns:
		str: Three lines 'Past 30 second: ...', 'Current: ...', 'Future 30 second: ...'
	"""
	length = ctx.clip.length
	current = sorted(ctx.current, key=lambda a: (a.start, a.end, a.label))
	if len(current) == 0:
		currentBody = NONE_MARKER
	elif withTimes:
		currentBody = ', '.join(f'<{formatBoundary(a.start, length)},{formatBoundary(a.end, length)}> {quoteLabel(a.label)}' for a in current)
	else:
		currentBody = ', '.join(quoteLabel(a.label) for a in current)

	ctxLabel = formatNumber(ctxS)
	return '\n'.join([
		f'Past {ctxLabel} second: {_labels(ctx.past)}',
		f'Current: {currentBody}',
		f'Future {ctxLabel} second: {_labels(ctx.future)}'
	])


def _splitLabels(body:str) -> tuple:
	if body == NONE_MARKER:
		return ()
	return tuple(unquoteLabel(item) for item in ITEM_SPLIT_RE.split(body))


def _currentItem(item:str) -> tuple:
	timed = TIMED_ITEM_RE.match(item)
	if not timed:
		return (None, None, unquoteLabel(item))
	try:
		return (float(timed.group('start')), float(timed.group('end')), unquoteLabel(timed.group('label')))
	except ValueError:
		raise LayoutError(0, f'bad boundary in current item {item!r}')


def parseTemporalHistory(body:str) -> HistoryBlocks:
	"""Inverse of renderTemporalHistory, timed current items come back as (start, end, label)
	"""
	lines = body.split('\n')
	if len(lines) != 3:
		raise LayoutError(0, 'temporal history needs exactly three lines')
	past = HISTORY_PAST_RE.match(lines[0])
	current = HISTORY_CURRENT_RE.match(lines[1])
	future = HISTORY_FUTURE_RE.match(lines[2])
	if not past or not current or not future:
		raise LayoutError(0, 'unexpected temporal history block titles')

	currentBody = current.group('body')
	if currentBody == NONE_MARKER:
		items = ()
	else:
		items = tuple(_currentItem(item) for item in ITEM_SPLIT_RE.split(currentBody))
	return HistoryBlocks(_splitLabels(past.group('body')), items, _splitLabels(future.group('body')))


def _stepText(text:str) -> str:
	return text.rstrip().rstrip('.')


def renderTaskDescription(recipe:RecipeAnnotation, currentStep:StepInterval, withTimes:bool=True) -> str:
	"""Recipe name with enumerated steps, then the ground truth step of the clip

	Args:
		recipe (RecipeAnnotation): Recipe script
		currentStep (StepInterval): (index, start, end) clip relative
		withTimes (bool, optional): False drops the <start,end> boundary. Defaults to True.

	Raises:
		UnknownStep: Step index not in the recipe

	Returns:
		str: Two lines, e.g. '... The current step, as ground truth, is: <0,16> 4: ...'
	"""
	index, start, end = currentStep
	stepText = _stepText(recipe.stepText(index))
	steps = ', '.join(f'{s.index}: {_stepText(s.text)}' for s in recipe.steps)
	boundary = f'<{formatTime(start, True)},{formatTime(end, True)}> ' if withTimes else ''
	return f'{recipe.recipeName} with steps {steps}\nThe current step, as ground truth, is: {boundary}{index}: {stepText}'


def parseTaskDescription(body:str) -> tuple[str, tuple, tuple]:
	"""Inverse of renderTaskDescription

	Returns:
		tuple[str, tuple, tuple]: (recipe name, ((index, text), ...), (index, start, end, text))
	"""
	lines = body.split('\n')
	header = TASK_HEADER_RE.match(lines[0]) if len(lines) == 2 else None
	current = TASK_CURRENT_RE.match(lines[1]) if header else None
	if not header or not current:
		raise LayoutError(0, 'unexpected task description layout')

	steps = []
	for chunk in TASK_STEP_SPLIT_RE.split(header.group('steps')):
		m = TASK_STEP_RE.match(chunk)
		if not m:
			raise LayoutError(0, f'unexpected step {chunk!r}')
		steps.append((int(m.group('index')), m.group('text')))
	start = float(current.group('start')) if current.group('start') != None else None
	end = float(current.group('end')) if current.group('end') != None else None
	currentStep = (int(current.group('index')), start, end, current.group('text'))
	return header.group('name'), tuple(steps), currentStep


def renderTrajectory(traj:ObjectTrajectory) -> str:
	points = ', '.join(f'[{formatTime(p.t, traj.integerTimes)}, {formatNumber(p.x)}, {formatNumber(p.y)}]' for p in traj.points)
	return f"'{traj.label}': [{points}]"


def renderTrajectories(trajs:list[ObjectTrajectory]) -> str:
	"""One canonical line per trajectory, "'LABEL': [[t, x, y], ...]"

	Args:
		trajs (list[ObjectTrajectory]): Trajectories to render

	Returns:
		str: Lines joined by newlines, empty text for an empty list
	"""
	return '\n'.join(renderTrajectory(t) for t in trajs)


def currentStepOf(recipe:RecipeAnnotation, clip:Clip) -> Optional[StepInterval]:
	"""Recipe step with the largest overlap with the clip, rebased to the clip

	Returns:
		Optional[StepInterval]: None if no step interval touches the clip
	"""
	best = None
	bestOverlap = 0.0
	for interval in recipe.stepIntervals:
		overlap = min(interval.end, clip.end) - max(interval.start, clip.start)
		if overlap > bestOverlap:
			best = interval
			bestOverlap = overlap
	if best == None:
		return None
	start, end = rebase((best.start, best.end), clip)
	return StepInterval(best.index, start, end)


def renderGtSentences(target:Union[ClipContext, StepReference]) -> str:
	"""Template ground truth, labels are inserted verbatim

	Args:
		target (Union[ClipContext, StepReference]): Clip context of an activity clip or the step of a procedure clip

	Returns:
		str: 'Between 3.66 and 5.0 seconds, the person open drawer.' sentences or
			'The person is performing step 4: ...'
	"""
	if isinstance(target, StepReference):
		text = _stepText(target.recipe.stepText(target.index))
		return f'The person is performing step {target.index}: {text}.'

	if len(target.current) == 0:
		return NO_ACTIONS_SENTENCE
	length = target.clip.length
	current = sorted(target.current, key=lambda a: (a.start, a.end, a.label))
	return ' '.join(f'Between {formatBoundary(a.start, length)} and {formatBoundary(a.end, length)} seconds, the person {a.label}.' for a in current)


def renderClipGroundTruth(ctx:ClipContext, recipe:Optional[RecipeAnnotation]=None) -> str:
	"""Ground truth of a clip, recipe steps for procedure videos and action sentences otherwise
	"""
	if recipe == None:
		return renderGtSentences(ctx)
	steps = []
	for a in ctx.current:
		if a.kind == ActionKind.RECIPE_STEP and a.stepIndex != None and a.stepIndex not in steps:
			steps.append(a.stepIndex)
	if len(steps) == 0:
		step = currentStepOf(recipe, ctx.clip)
		if step == None:
			return NO_ACTIONS_SENTENCE
		steps.append(step.index)
	return ' '.join(renderGtSentences(StepReference(recipe, i)) for i in steps)


def symbolicContexts(ctx:ClipContext, source:Source, recipe:Optional[RecipeAnnotation], clipTrajs:list[ObjectTrajectory], ctxS:float=DEFAULT_CTX_S, withTimes:bool=True, withObjects:bool=True) -> list[SymbolicContext]:
	"""Symbolic contexts prompting the generator for one clip

	Procedure clips get the task description, activity clips the temporal history; both get the object
	trajectories. withTimes / withObjects implement generation time ablation.

	Returns:
		list[SymbolicContext]: May be empty when nothing is known about the clip
	"""
	contexts = []
	if source == Source.PTA:
		step = currentStepOf(recipe, ctx.clip) if recipe != None else None
		if step != None:
			contexts.append(SymbolicContext(ContextKind.TASK_DESCRIPTION, renderTaskDescription(recipe, step, withTimes)))
	else:
		contexts.append(SymbolicContext(ContextKind.TEMPORAL_HISTORY, renderTemporalHistory(ctx, ctxS, withTimes)))
	if withObjects and len(clipTrajs) > 0:
		contexts.append(SymbolicContext(ContextKind.OBJECT_TRAJECTORIES, renderTrajectories(clipTrajs)))
	return contexts
