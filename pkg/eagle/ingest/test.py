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
import asyncio
import unittest
import tempfile
import numpy as np

from eagle.ingest import *
from eagle.errors import MalformedRow, IntervalError, CoordinateRange, NonMonotonicTime, ArgumentRange, DuplicateVideo, RecipeMismatch, UnknownStep, SchemaVersionMismatch

RIGHT_HAND_LINE = "'right hand': [[5.0, 0.295, 0.401], [6.0, 0.317, 0.419], [7.0, 0.294, 0.365], [8.0, 0.324, 0.406], [10.0, 0.303, 0.377], [12.0, 0.344, 0.366], [13.0, 0.336, 0.284]]"


class TestParseActions(unittest.TestCase):

	def test_epicKitchensRow(self):
		actions = parseActions(Source.EPIC_KITCHENS, 'P01_01,35.66,37.00,open,drawer')
		self.assertEqual(actions, [ActionAnnotation(35.66, 37.0, 'open drawer', ActionKind.VERB_NOUN)])

	def test_empty(self):
		self.assertEqual(parseActions(Source.EPIC_KITCHENS, ''), [])

	def test_startEqualsEnd(self):
		self.assertRaises(IntervalError, parseActions, Source.EPIC_KITCHENS, 'P01_01,12.0,12.0,open,drawer')

	def test_headerAndOrder(self):
		raw = 'video_id,start_s,end_s,verb,noun\nP01_01,3,4,take,plate\nP01_01,1,2,open,drawer\n'
		self.assertEqual([a.label for a in parseActions(Source.EPIC_KITCHENS, raw)], ['take plate', 'open drawer'])

	def test_ego4dNarrationWithComma(self):
		rows = parseActionRows(Source.EGO4D, 'v1,0.5,2.25,#C C picks up the knife, then the fork')
		self.assertEqual(rows[0][0], 'v1')
		self.assertEqual(rows[0][1].label, '#C C picks up the knife, then the fork')
		self.assertEqual(rows[0][1].kind, ActionKind.NARRATION)

	def test_ptaRow(self):
		action = parseActions(Source.PTA, 'pta-1,0,16,4,Spread jelly over the nut butter')[0]
		self.assertEqual(action.kind, ActionKind.RECIPE_STEP)
		self.assertEqual(action.stepIndex, 4)

	def test_malformedRowLineNumber(self):
		raw = 'P01_01,1,2,open,drawer\n\nP01_01,x,3,open,drawer'
		with self.assertRaises(MalformedRow) as ctx:
			parseActions(Source.EPIC_KITCHENS, raw)
		self.assertEqual(ctx.exception.lineNo, 3)

	def test_missingField(self):
		self.assertRaises(MalformedRow, parseActions, Source.EPIC_KITCHENS, 'P01_01,1,2,open')

	def test_generatedRowsAlwaysParse(self):
		rng = np.random.default_rng(7)
		lines = []
		for i in range(300):
			start = round(float(rng.uniform(0, 500)), 2)
			end = round(start + float(rng.uniform(0.01, 20)), 2)
			lines.append(f'video{i % 5},{start},{end},verb{i},noun {i}')
		actions = parseActions(Source.EPIC_KITCHENS, '\n'.join(lines))
		self.assertEqual(len(actions), 300)
		self.assertTrue(all(0 <= a.start < a.end for a in actions))


class TestParseTrajectories(unittest.TestCase):

	def test_rightHand(self):
		trajs = parseTrajectories("'right hand': [[5.0, 0.295, 0.401], [6.0, 0.317, 0.419]]")
		self.assertEqual(len(trajs), 1)
		self.assertEqual(trajs[0].label, 'right hand')
		self.assertEqual(len(trajs[0]), 2)
		self.assertFalse(trajs[0].integerTimes)

	def test_emptyPoints(self):
		self.assertEqual(len(parseTrajectories("'cup': []")[0]), 0)

	def test_coordinateRange(self):
		self.assertRaises(CoordinateRange, parseTrajectories, "'cup': [[3.0, 1.2, 0.5]]")

	def test_duplicateTimestamp(self):
		self.assertRaises(NonMonotonicTime, parseTrajectories, "'cup': [[3.0, 0.2, 0.5], [3.0, 0.3, 0.5]]")

	def test_sortsPoints(self):
		traj = parseTrajectories("'cup': [[7.0, 0.2, 0.5], [3.0, 0.3, 0.5]]")[0]
		self.assertEqual([p.t for p in traj.points], [3.0, 7.0])

	def test_captionLayout(self):
		line = 'A bowl of peanut butter with a knife in it: [11, 0.765, 0.68],[0, 0.71, 0.795]'
		traj = parseTrajectories(line)[0]
		self.assertEqual(traj.label, 'A bowl of peanut butter with a knife in it')
		self.assertTrue(traj.integerTimes)
		self.assertEqual(traj.points[0], (0.0, 0.71, 0.795))

	def test_labelOnOwnLine(self):
		trajs = parseTrajectories("'left hand':\n[[1.0, 0.5, 0.5]]\n" + RIGHT_HAND_LINE)
		self.assertEqual([t.label for t in trajs], ['left hand', 'right hand'])

	def test_malformed(self):
		with self.assertRaises(MalformedRow) as ctx:
			parseTrajectories(RIGHT_HAND_LINE + '\nnot a trajectory')
		self.assertEqual(ctx.exception.lineNo, 2)


def _pinwheels() -> RecipeAnnotation:
	return RecipeAnnotation('Pinwheels', tuple(enumerate(RECIPES['Pinwheels'], 1)), ((4, 0.0, 16.0),))


class TestManifest(unittest.TestCase):

	def test_recipeOnlyForPta(self):
		self.assertRaises(RecipeMismatch, VideoManifest, 'ek-1', Source.EPIC_KITCHENS, Split.TRAIN, 30.0, 1920, 1080, recipe=_pinwheels())
		self.assertRaises(RecipeMismatch, VideoManifest, 'pta-1', Source.PTA, Split.TRAIN, 30.0, 1280, 720)

	def test_actionBeyondDuration(self):
		action = ActionAnnotation(20.0, 31.0, 'open drawer')
		self.assertRaises(IntervalError, VideoManifest, 'ek-1', Source.EPIC_KITCHENS, Split.TRAIN, 30.0, 1920, 1080, (action,))

	def test_duplicateVideo(self):
		video = VideoManifest('ek-1', Source.EPIC_KITCHENS, Split.TRAIN, 30.0, 1920, 1080)
		self.assertRaises(DuplicateVideo, ManifestCollection, (video, video))

	def test_recipeSteps(self):
		recipe = _pinwheels()
		self.assertEqual(recipe.stepText(1), 'Place the tortilla on the cutting board.')
		self.assertRaises(UnknownStep, recipe.stepText, 99)
		self.assertRaises(RecipeMismatch, RecipeAnnotation, 'Broken', ((1, 'a'), (3, 'c')))
		self.assertRaises(RecipeMismatch, RecipeAnnotation, 'Broken', ((1, 'a'),), ((2, 0.0, 1.0),))

	def test_documentRoundTrip(self):
		collection = synthesizeManifest(3, 12)
		self.assertEqual(loadManifest(dumpManifest(collection)), collection)

	def test_schemaVersion(self):
		self.assertRaises(SchemaVersionMismatch, loadManifest, '{"schema_version": 99, "videos": []}')

	def test_fileRoundTrip(self):
		collection = synthesizeManifest(0, 4)
		with tempfile.TemporaryDirectory() as folder:
			path = os.path.join(folder, 'manifest.json')
			asyncio.run(writeManifest(path, collection))
			self.assertEqual(asyncio.run(readManifest(path)), collection)


class TestSynthesize(unittest.TestCase):

	def test_deterministic(self):
		first = synthesizeManifest(0, 3)
		self.assertEqual(len(first), 3)
		self.assertEqual(first, synthesizeManifest(0, 3))
		self.assertEqual(dumpManifest(first), dumpManifest(synthesizeManifest(0, 3)))

	def test_seedsDiffer(self):
		self.assertNotEqual(dumpManifest(synthesizeManifest(0, 3)), dumpManifest(synthesizeManifest(1, 3)))

	def test_noVideos(self):
		self.assertRaises(ArgumentRange, synthesizeManifest, 0, 0)

	def test_actionsPerVideo(self):
		collection = synthesizeManifest(5, 40, actionsPerVideo=(2, 4))
		for video in collection:
			self.assertGreaterEqual(len(video.actions), 1)
			self.assertLessEqual(len(video.actions), 4)
			if video.source != Source.PTA:
				self.assertGreaterEqual(len(video.actions), 2)

	def test_proportions(self):
		collection = synthesizeManifest(1, 10, proportions={Source.PTA: 1.0})
		self.assertTrue(all(v.source == Source.PTA and v.recipe != None for v in collection))
		collection = synthesizeManifest(1, 10, proportions={Source.EGO4D: 1.0})
		self.assertTrue(all(a.kind == ActionKind.NARRATION for v in collection for a in v.actions))

	def test_heldOutLabIsVal(self):
		collection = synthesizeManifest(2, 60, proportions={Source.PTA: 1.0})
		for video in collection:
			if video.labId == HELD_OUT_LAB:
				self.assertEqual(video.split, Split.VAL)


class TestPtaSplits(unittest.TestCase):

	def test_sevenToThree(self):
		videos = [VideoManifest(f'pta-{i:02d}', Source.PTA, Split.TRAIN, 30.0, 1280, 720, recipe=_pinwheels(), labId='lab-1') for i in range(10)]
		videos.append(VideoManifest('pta-held', Source.PTA, Split.TRAIN, 30.0, 1280, 720, recipe=_pinwheels(), labId='lab-3'))
		videos.append(VideoManifest('ek-1', Source.EPIC_KITCHENS, Split.VAL, 30.0, 1920, 1080))
		split = assignPtaSplits(ManifestCollection(tuple(videos)), 'lab-3', 0.7, seed=0).byId()
		self.assertEqual(split['pta-held'].split, Split.VAL)
		self.assertEqual(split['ek-1'].split, Split.VAL)
		self.assertEqual(sum(1 for i in range(10) if split[f'pta-{i:02d}'].split == Split.TRAIN), 7)

	def test_ratioRange(self):
		self.assertRaises(ArgumentRange, assignPtaSplits, ManifestCollection(), 'lab-3', 1.5)


if __name__ == '__main__':
	# run from the repository root: python -m eagle.ingest.test
	unittest.main(verbosity=2)
