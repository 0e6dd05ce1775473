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

import os
import unittest
import numpy as np

from eagle.promptgen import *
from eagle.ingest import ActionAnnotation, ObjectTrajectory, RecipeAnnotation, StepInterval, ActionKind, Source, RECIPES, parseTrajectories
from eagle.clipper import Clip, ClipContext, makeClip, contextWindow
from eagle.trajectory import clipTrajectories
from eagle.errors import ArgumentRange, UnknownStep, LayoutError

GOLDEN = os.path.join(os.path.dirname(__file__), 'golden')


def golden(name:str) -> str:
	with open(os.path.join(GOLDEN, name), 'r', encoding='utf-8') as f:
		return f.read()


def pinwheels() -> RecipeAnnotation:
	return RecipeAnnotation('Pinwheels', tuple(enumerate(RECIPES['Pinwheels'], 1)), ((3, 0.0, 20.0), (4, 20.0, 60.0)))


def kitchenContext() -> ClipContext:
	return ClipContext(
		makeClip('P01_01', 32, 48),
		past=(ActionAnnotation(2.0, 8.0, 'take knife'), ActionAnnotation(10.0, 20.0, 'open cupboard')),
		current=(ActionAnnotation(3.66, 5.0, 'open drawer'), ActionAnnotation(13.86, 16.0, 'close drawer'), ActionAnnotation(0.0, 0.76, 'take plate')),
		future=(ActionAnnotation(50.0, 53.0, 'wash plate'),)
	)


def rightHand() -> ObjectTrajectory:
	return parseTrajectories(golden('trajectories.txt'))[0]


class TestNumbers(unittest.TestCase):

	def test_canonical(self):
		self.assertEqual(formatNumber(0.57), '0.57')
		self.assertEqual(formatNumber(0.570), '0.57')
		self.assertEqual(formatNumber(3.6599999999999966), '3.66')
		self.assertEqual(formatNumber(0.0005), '0.001')
		self.assertEqual(formatNumber(12.0), '12')
		self.assertEqual(formatNumber(-0.0001), '0')

	def test_pointZero(self):
		self.assertEqual(formatTime(5.0, False), '5.0')
		self.assertEqual(formatTime(5.0, True), '5')
		self.assertEqual(formatTime(5.25, False), '5.25')

	def test_boundary(self):
		self.assertEqual(formatBoundary(0.0, 16.0), '0')
		self.assertEqual(formatBoundary(16.0, 16.0), '16')
		self.assertEqual(formatBoundary(5.0, 16.0), '5.0')


class TestTemporalHistory(unittest.TestCase):

	def test_golden(self):
		self.assertEqual(renderTemporalHistory(kitchenContext()), golden('temporal_history.txt'))

	def test_rebasedCurrent(self):
		ctx = contextWindow(makeClip('P01_01', 32, 48), [ActionAnnotation(35.66, 37.0, 'open drawer')])
		self.assertIn('<3.66,5.0> open drawer', renderTemporalHistory(ctx))

	def test_emptyPast(self):
		ctx = ClipContext(makeClip('v', 0, 16))
		self.assertEqual(renderTemporalHistory(ctx).split('\n')[0], 'Past 30 second: (none)')

	def test_oneTokenPerCurrentAction(self):
		text = renderTemporalHistory(kitchenContext())
		self.assertEqual(text.count('<'), 3)
		self.assertEqual(text.split('\n')[0].count('<'), 0)
		self.assertEqual(text.split('\n')[2].count('<'), 0)

	def test_roundTrip(self):
		blocks = parseTemporalHistory(golden('temporal_history.txt'))
		self.assertEqual(blocks.past, ('take knife', 'open cupboard'))
		self.assertEqual(blocks.current, ((0.0, 0.76, 'take plate'), (3.66, 5.0, 'open drawer'), (13.86, 16.0, 'close drawer')))
		self.assertEqual(blocks.future, ('wash plate',))

	def test_withoutTimes(self):
		text = renderTemporalHistory(kitchenContext(), withTimes=False)
		self.assertNotIn('<', text)
		self.assertEqual(parseTemporalHistory(text).current[1], (None, None, 'open drawer'))

	def test_commaInNarration(self):
		narration = '#C C picks up a knife, then a fork'
		ctx = ClipContext(
			makeClip('ego4d-v1', 32, 48),
			past=(ActionAnnotation(2.0, 8.0, narration), ActionAnnotation(10.0, 20.0, 'say "ok", then leave')),
			current=(ActionAnnotation(0.0, 3.0, narration), ActionAnnotation(4.0, 6.5, 'open drawer')),
			future=(ActionAnnotation(50.0, 53.0, 'wash plate'), ActionAnnotation(55.0, 58.0, narration))
		)
		text = renderTemporalHistory(ctx)
		self.assertEqual(text.split('\n')[0], 'Past 30 second: "#C C picks up a knife, then a fork", "say ""ok"", then leave"')
		blocks = parseTemporalHistory(text)
		self.assertEqual(blocks.past, (narration, 'say "ok", then leave'))
		self.assertEqual(blocks.current, ((0.0, 3.0, narration), (4.0, 6.5, 'open drawer')))
		self.assertEqual(blocks.future, ('wash plate', narration))

		untimed = parseTemporalHistory(renderTemporalHistory(ctx, withTimes=False))
		self.assertEqual(untimed.current, ((None, None, narration), (None, None, 'open drawer')))

	def test_plainLabelsUnquoted(self):
		self.assertEqual(quoteLabel('open drawer'), 'open drawer')
		self.assertEqual(quoteLabel('(none)'), '"(none)"')
		self.assertEqual(unquoteLabel(quoteLabel('<odd> label')), '<odd> label')

	def test_badLayout(self):
		self.assertRaises(LayoutError, parseTemporalHistory, 'Past 30 second: a\nFuture 30 second: b')


class TestTaskDescription(unittest.TestCase):

	def test_golden(self):
		self.assertEqual(renderTaskDescription(pinwheels(), StepInterval(4, 0.0, 16.0)), golden('task_description.txt'))

	def test_currentStepLine(self):
		text = renderTaskDescription(pinwheels(), StepInterval(4, 0.0, 16.0))
		self.assertIn('The current step, as ground truth, is: <0,16> 4:', text)

	def test_unknownStep(self):
		self.assertRaises(UnknownStep, renderTaskDescription, pinwheels(), StepInterval(99, 0.0, 16.0))

	def test_singleStep(self):
		recipe = RecipeAnnotation('Toast', ((1, 'Toast the bread.'),))
		text = renderTaskDescription(recipe, StepInterval(1, 2.0, 9.5))
		self.assertEqual(text, 'Toast with steps 1: Toast the bread\nThe current step, as ground truth, is: <2,9.5> 1: Toast the bread')

	def test_roundTrip(self):
		name, steps, current = parseTaskDescription(golden('task_description.txt'))
		self.assertEqual(name, 'Pinwheels')
		self.assertEqual(len(steps), 12)
		self.assertEqual(steps[7], (8, 'Trim tortilla roll ends, leaving a 1/2 inch margin near the last toothpick; discard the ends'))
		self.assertEqual(current, (4, 0.0, 16.0, 'Using the knife, scoop jelly from the jar and spread it over the nut butter'))

	def test_withoutTimes(self):
		text = renderTaskDescription(pinwheels(), StepInterval(4, 0.0, 16.0), withTimes=False)
		self.assertEqual(parseTaskDescription(text)[2][:3], (4, None, None))

	def test_currentStepOf(self):
		self.assertEqual(currentStepOf(pinwheels(), makeClip('pta', 16, 32)), StepInterval(4, 4.0, 16.0))
		self.assertEqual(currentStepOf(pinwheels(), makeClip('pta', 0, 16)), StepInterval(3, 0.0, 16.0))
		self.assertIsNone(currentStepOf(pinwheels(), makeClip('pta', 64, 80)))


class TestTrajectories(unittest.TestCase):

	def test_golden(self):
		self.assertEqual(renderTrajectories([rightHand()]), golden('trajectories.txt'))

	def test_empty(self):
		self.assertEqual(renderTrajectories([]), '')

	def test_integerTimes(self):
		traj = ObjectTrajectory('A bowl of peanut butter', ((0.0, 0.71, 0.795), (11.0, 0.765, 0.68)), True)
		self.assertEqual(renderTrajectory(traj), "'A bowl of peanut butter': [[0, 0.71, 0.795], [11, 0.765, 0.68]]")

	def test_fractionalTimesDropIntegerFlag(self):
		traj = ObjectTrajectory('knife', ((0.0, 0.1, 0.1), (0.5, 0.2, 0.2)), True)
		self.assertFalse(traj.integerTimes)
		text = renderTrajectory(traj)
		self.assertEqual(text, "'knife': [[0.0, 0.1, 0.1], [0.5, 0.2, 0.2]]")
		self.assertEqual(parseTrajectories(text), [traj])

	def test_halfSecondFramesRoundTrip(self):
		traj = ObjectTrajectory('knife', tuple((float(t), 0.5, 0.5) for t in range(40)), True)
		clipped = clipTrajectories([traj], makeClip('v', 10.5, 18.5, fps=2.0))
		self.assertEqual(len(clipped), 1)
		self.assertFalse(clipped[0].integerTimes)
		text = renderTrajectories(clipped)
		self.assertEqual(parseTrajectories(text), clipped)

	def test_roundTrip(self):
		rng = np.random.default_rng(5)
		for i in range(1000):
			integerTimes = bool(rng.random() < 0.3)
			n = int(rng.integers(0, 12))
			if integerTimes:
				times = np.cumsum(rng.integers(1, 4, size=n)).astype(float)
			else:
				times = np.round(np.cumsum(rng.uniform(0.05, 3.0, size=n)), 3)
			points = tuple((float(t), float(np.round(rng.uniform(0, 1), 3)), float(np.round(rng.uniform(0, 1), 3))) for t in times)
			traj = ObjectTrajectory(f'object {i}', points, integerTimes and n > 0)
			text = renderTrajectories([traj])
			parsed = parseTrajectories(text)
			self.assertEqual(parsed, [traj])
			self.assertEqual(renderTrajectories(parsed), text)


class TestGroundTruth(unittest.TestCase):

	def test_sentence(self):
		ctx = ClipContext(makeClip('v', 32, 48), current=(ActionAnnotation(3.66, 5.0, 'open drawer'),))
		self.assertEqual(renderGtSentences(ctx), 'Between 3.66 and 5.0 seconds, the person open drawer.')

	def test_ordered(self):
		text = renderGtSentences(kitchenContext())
		self.assertTrue(text.startswith('Between 0 and 0.76 seconds, the person take plate. Between 3.66'))

	def test_empty(self):
		self.assertEqual(renderGtSentences(ClipContext(makeClip('v', 0, 16))), 'No annotated actions in this clip.')

	def test_step(self):
		self.assertEqual(
			renderGtSentences(StepReference(pinwheels(), 4)),
			'The person is performing step 4: Using the knife, scoop jelly from the jar and spread it over the nut butter.'
		)

	def test_clipGroundTruth(self):
		recipe = pinwheels()
		actions = [ActionAnnotation(0.0, 20.0, 'Clean the knife', ActionKind.RECIPE_STEP, 3), ActionAnnotation(20.0, 60.0, 'Spread jelly', ActionKind.RECIPE_STEP, 4)]
		ctx = contextWindow(makeClip('pta', 16, 32), actions)
		self.assertEqual(renderClipGroundTruth(ctx, recipe), 'The person is performing step 3: Clean the knife with a paper towel. The person is performing step 4: Using the knife, scoop jelly from the jar and spread it over the nut butter.')
		self.assertEqual(renderClipGroundTruth(ClipContext(makeClip('pta', 32, 48)), recipe), renderGtSentences(StepReference(recipe, 4)))


class TestSymbolicContexts(unittest.TestCase):

	def test_activity(self):
		contexts = symbolicContexts(kitchenContext(), Source.EPIC_KITCHENS, None, [rightHand()])
		self.assertEqual([c.kind for c in contexts], [ContextKind.TEMPORAL_HISTORY, ContextKind.OBJECT_TRAJECTORIES])

	def test_procedure(self):
		contexts = symbolicContexts(ClipContext(makeClip('pta', 16, 32)), Source.PTA, pinwheels(), [])
		self.assertEqual([c.kind for c in contexts], [ContextKind.TASK_DESCRIPTION])
		self.assertIn('<4,16> 4:', contexts[0].body)

	def test_generationAblation(self):
		contexts = symbolicContexts(kitchenContext(), Source.EGO4D, None, [rightHand()], withTimes=False, withObjects=False)
		self.assertEqual(len(contexts), 1)
		self.assertNotIn('<', contexts[0].body)


class TestGenerationRequest(unittest.TestCase):

	def setUp(self):
		self.contexts = [
			SymbolicContext(ContextKind.TEMPORAL_HISTORY, golden('temporal_history.txt')),
			SymbolicContext(ContextKind.OBJECT_TRAJECTORIES, golden('trajectories.txt'))
		]

	def test_golden(self):
		req = buildGenerationRequest(self.contexts, list(ACTIVITY_RESPONSE_TYPES))
		self.assertEqual(req.messages[1].content, golden('generation_user_prompt.txt'))
		self.assertTrue(req.messages[0].content.startswith(f'[{PROMPT_VERSION}]'))
		self.assertEqual(req.temperature, 0.7)

	def test_procedureContexts(self):
		task = SymbolicContext(ContextKind.TASK_DESCRIPTION, golden('task_description.txt'))
		req = buildGenerationRequest([task, self.contexts[1]], list(PROCEDURE_RESPONSE_TYPES), 11)
		self.assertIn(golden('task_description.txt'), req.messages[1].content)
		self.assertIn(golden('trajectories.txt'), req.messages[1].content)
		self.assertIn('Response type 3: Objects Verification', req.messages[1].content)

	def test_pairCount(self):
		req = buildGenerationRequest(self.contexts, list(ACTIVITY_RESPONSE_TYPES))
		self.assertIn('Write exactly 11 question and answer pairs', req.messages[1].content)

	def test_pure(self):
		first = buildGenerationRequest(self.contexts, list(ACTIVITY_RESPONSE_TYPES))
		second = buildGenerationRequest(list(self.contexts), list(ACTIVITY_RESPONSE_TYPES))
		self.assertEqual(first.canonical(), second.canonical())
		self.assertEqual(first.cacheKey(), second.cacheKey())

	def test_invalid(self):
		self.assertRaises(ArgumentRange, buildGenerationRequest, [], list(ACTIVITY_RESPONSE_TYPES))
		self.assertRaises(ArgumentRange, buildGenerationRequest, self.contexts, [])
		self.assertRaises(ArgumentRange, buildGenerationRequest, self.contexts, list(ACTIVITY_RESPONSE_TYPES), 0)

	def test_responseTypes(self):
		self.assertEqual(responseTypesFor(Source.PTA), PROCEDURE_RESPONSE_TYPES)
		self.assertEqual(len(responseTypesFor(Source.EGO4D)), 6)


if __name__ == '__main__':
	# run from the repository root: python -m eagle.promptgen.test
	unittest.main(verbosity=2)
