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
from pydantic import ValidationError

from eagle.dataset import *
from eagle.ingest import ActionAnnotation, ObjectTrajectory, VideoManifest, ManifestCollection, Source, Split
from eagle.clipper import Clip, ClipContext, makeClip
from eagle.promptgen import ResponseType, renderTrajectory
from eagle.errors import LayoutError, DanglingReference, MalformedLine, SchemaVersionMismatch, ArgumentRange

RIGHT_HAND = ObjectTrajectory('right hand', (
	(5.0, 0.295, 0.401), (6.0, 0.317, 0.419), (7.0, 0.294, 0.365), (8.0, 0.324, 0.406),
	(10.0, 0.303, 0.377), (12.0, 0.344, 0.366), (13.0, 0.336, 0.284)
))

WELL_FORMED = (
	'Type: Description\n'
	'Question: What is the person doing?\n'
	'Answer: The person opens a drawer and takes a plate.\n'
	'\n'
	'Type: Event Localization\n'
	'Question: When does the person open the drawer?\n'
	'Answer: <3.66,5.0>\n'
)


def sample(response:str, instruction:str='What happens in the clip?', index:int=0, videoId:str='P01_01', clip:tuple=(32.0, 48.0), source:Source=Source.EPIC_KITCHENS) -> InstructionSample:
	return InstructionSample(
		sample_id=f'{videoId}@{clip[0]:g}#{index:02d}',
		source=source,
		video_id=videoId,
		clip=clip,
		task_type=ResponseType.DESCRIPTION,
		instruction=instruction,
		response=response
	)


def randomText(rng:np.random.Generator) -> str:
	parts = []
	for _ in range(int(rng.integers(1, 10))):
		kind = int(rng.integers(0, 5))
		if kind == 0:
			a = round(float(rng.uniform(0, 15)), 2)
			parts.append(f'<{a},{round(a + float(rng.uniform(0.1, 5)), 2)}>')
		elif kind == 1:
			points = ', '.join(f'[{t}.0, {round(float(rng.uniform(0, 1)), 3)}, {round(float(rng.uniform(0, 1)), 3)}]' for t in range(int(rng.integers(1, 5))))
			label = ['right hand', 'left hand', 'knife'][int(rng.integers(0, 3))]
			parts.append(f"'{label}': [{points}]")
		elif kind == 2:
			parts.append(f'[{int(rng.integers(0, 16))}, {round(float(rng.uniform(0, 1)), 2)}, {round(float(rng.uniform(0, 1)), 2)}]')
		else:
			parts.append(['the person', 'opens the drawer', 'takes a plate.', 'then', 'washes the knife,'][int(rng.integers(0, 5))])
	# tokens sometimes directly follow each other
	text = parts[0]
	for part in parts[1:]:
		text += ['', ' ', '  '][int(rng.integers(0, 3))] + part
	return text


class TestInstructionSample(unittest.TestCase):

	def test_blankText(self):
		self.assertRaises(ValidationError, sample, '   ')
		self.assertRaises(ValidationError, sample, 'ok', instruction='')

	def test_clipInterval(self):
		self.assertRaises(ValidationError, sample, 'ok', clip=(16.0, 16.0))

	def test_ablationInvariant(self):
		with self.assertRaises(ValidationError):
			InstructionSample(
				sample_id='x', source=Source.EGO4D, video_id='v', clip=(0.0, 16.0), task_type=ResponseType.DESCRIPTION,
				instruction='When?', response='<1.0,2.0> open drawer', ablation=Ablation.NO_TIME
			)

	def test_samplesFromPairs(self):
		pairs = parseGenerated(WELL_FORMED).pairs
		samples = samplesFromPairs(Source.EPIC_KITCHENS, makeClip('P01_01', 32, 48), pairs)
		self.assertEqual([s.sample_id for s in samples], ['P01_01@32#00', 'P01_01@32#01'])
		self.assertEqual(samples[1].task_type, ResponseType.EVENT_LOCALIZATION)
		self.assertEqual(samples[1].clip, (32.0, 48.0))


class TestParseGenerated(unittest.TestCase):

	def test_wellFormed(self):
		result = parseGenerated(WELL_FORMED)
		self.assertEqual(len(result.pairs), 2)
		self.assertEqual(result.pairs[0], GeneratedPair('What is the person doing?', 'The person opens a drawer and takes a plate.', ResponseType.DESCRIPTION))
		self.assertEqual(result.pairs[1].answer, '<3.66,5.0>')
		self.assertEqual(result.errors, [])
		self.assertEqual(result.warnings, [])

	def test_missingAnswer(self):
		text = 'Type: Description\nQuestion: What happens?\n\nType: Temporal Reasoning\nQuestion: What came first?\nAnswer: The knife.'
		result = parseGenerated(text)
		self.assertEqual(len(result.pairs), 1)
		self.assertEqual(result.pairs[0].taskType, ResponseType.TEMPORAL_REASONING)
		self.assertEqual(len(result.errors), 1)
		self.assertIsInstance(result.errors[0], LayoutError)
		self.assertEqual(result.errors[0].offset, 0)

	def test_unknownType(self):
		result = parseGenerated('Type: Mind Reading\nQuestion: What does the person think?\nAnswer: Lunch.')
		self.assertEqual(result.pairs[0].taskType, ResponseType.DESCRIPTION)
		self.assertEqual(len(result.warnings), 1)

	def test_byteOffset(self):
		result = parseGenerated('Question: Wo ist die Tür?\nAnswer: Links.\nType: Description\nAnswer: lonely')
		self.assertEqual(len(result.pairs), 1)
		self.assertEqual(result.errors[0].offset, len('Question: Wo ist die Tür?\n'.encode('utf-8')) + len('Answer: Links.\n'))

	def test_decoratedFields(self):
		text = '1. **Type:** Cross-Referencing Events\n**Question:** Where is the right hand?\n**Answer:** It moves\nto the left.'
		result = parseGenerated(text)
		self.assertEqual(result.pairs[0].taskType, ResponseType.CROSS_REFERENCING_EVENTS)
		self.assertEqual(result.pairs[0].question, 'Where is the right hand?')
		self.assertEqual(result.pairs[0].answer, 'It moves\nto the left.')

	def test_aliases(self):
		self.assertEqual(responseTypeFromHeader('Response type 6: Event Localization'), ResponseType.EVENT_LOCALIZATION)
		self.assertEqual(responseTypeFromHeader('objects verification'), ResponseType.OBJECTS_VERIFICATION)
		self.assertIsNone(responseTypeFromHeader('Poetry'))


class TestRepairSample(unittest.TestCase):

	def test_unchanged(self):
		original = sample(f'The hand moves: {renderTrajectory(RIGHT_HAND)}.')
		repaired, report = repairSample(original, [RIGHT_HAND])
		self.assertIs(repaired, original)
		self.assertEqual(report.nReplaced, 0)
		self.assertEqual(report.nPoints, 7)

	def test_displacedTriple(self):
		text = "It goes 'right hand': [[5.0, 0.295, 0.401], [6.0, 0.317, 0.919], [7.0, 0.294, 0.365]] and stops."
		repaired, report = repairSample(sample(text), [RIGHT_HAND])
		self.assertEqual(repaired.response, "It goes 'right hand': [[5.0, 0.295, 0.401], [6.0, 0.317, 0.419], [7.0, 0.294, 0.365]] and stops.")
		self.assertEqual(report.nReplaced, 1)
		self.assertEqual(report.replacedSegments, (('right hand', 1, 1),))

	def test_noCoordinates(self):
		original = sample('The person opens the drawer.')
		repaired, report = repairSample(original, [RIGHT_HAND])
		self.assertIs(repaired, original)
		self.assertEqual(report.nLists, 0)

	def test_unattributed(self):
		text = "'spoon': [[5.0, 0.9, 0.9]] and [[6.0, 0.1, 0.1]]"
		repaired, report = repairSample(sample(text), [RIGHT_HAND])
		self.assertEqual(repaired.response, text)
		self.assertEqual(report.nLists, 2)
		self.assertEqual(report.nUnattributed, 2)

	def test_caseInsensitiveLabel(self):
		repaired, report = repairSample(sample("'Right Hand': [[5.0, 0.9, 0.9]]"), [RIGHT_HAND])
		self.assertEqual(repaired.response, "'Right Hand': [[5.0, 0.295, 0.401]]")


class TestAblation(unittest.TestCase):

	def test_noTime(self):
		ablated = applyAblation(sample('<3.66,5.0> open drawer'), Ablation.NO_TIME)
		self.assertEqual(ablated.response, 'open drawer')
		self.assertEqual(ablated.ablation, Ablation.NO_TIME)

	def test_noObjWithoutTrajectories(self):
		original = sample('The person opens the drawer.')
		self.assertEqual(applyAblation(original, Ablation.NO_OBJ).response, original.response)

	def test_noObj(self):
		ablated = applyAblation(sample(f'Moves {renderTrajectory(RIGHT_HAND)} then [3, 0.5, 0.5] stops.'), Ablation.NO_OBJ)
		self.assertEqual(ablated.response, 'Moves then stops.')

	def test_timeTokenBeforeTriple(self):
		original = sample('The drawer opens at <3.66,5.0>[5.0, 0.295, 0.401] and closes.')
		timeThenObj = applyAblation(applyAblation(original, Ablation.NO_TIME), Ablation.NO_OBJ)
		objThenTime = applyAblation(applyAblation(original, Ablation.NO_OBJ), Ablation.NO_TIME)
		self.assertEqual(timeThenObj.response, 'The drawer opens at and closes.')
		self.assertEqual(objThenTime, timeThenObj)
		self.assertEqual(applyAblation(original, Ablation.DESC_ONLY), timeThenObj)

	def test_spacesLeftBehind(self):
		self.assertEqual(stripTimes('Open it <1,2> .'), 'Open it.')
		self.assertEqual(stripObjects('  [3, 0.5, 0.5] moves\nthen [4, 0.1, 0.1]'), 'moves\nthen')

	def test_removedMarker(self):
		self.assertEqual(applyAblation(sample('<1,2>'), Ablation.DESC_ONLY).response, REMOVED_MARKER)

	def test_full(self):
		original = sample('<1,2> x')
		self.assertIs(applyAblation(original, Ablation.FULL), original)

	def test_generatedSamples(self):
		rng = np.random.default_rng(9)
		for i in range(1000):
			original = sample(randomText(rng), instruction='Where is it? ' + randomText(rng), index=i % 100)
			noTime = applyAblation(original, Ablation.NO_TIME)
			noObj = applyAblation(original, Ablation.NO_OBJ)
			for text in (noTime.instruction, noTime.response):
				self.assertIsNone(TIME_TOKEN_RE.search(text))
			for text in (noObj.instruction, noObj.response):
				self.assertIsNone(TRIPLE_RE.search(text))
			timeThenObj = applyAblation(noTime, Ablation.NO_OBJ)
			objThenTime = applyAblation(noObj, Ablation.NO_TIME)
			self.assertEqual(timeThenObj, objThenTime)
			self.assertEqual(timeThenObj, applyAblation(original, Ablation.DESC_ONLY))
			self.assertEqual(timeThenObj.ablation, Ablation.DESC_ONLY)
			self.assertEqual(applyAblation(noTime, Ablation.NO_TIME), noTime)
			self.assertEqual(applyAblation(noObj, Ablation.NO_OBJ), noObj)


def statsManifests() -> ManifestCollection:
	actions = [ActionAnnotation(s, s + 1.0, f'act {s}') for s in (1.0, 5.0, 17.0, 20.0, 25.0, 33.0, 36.0, 40.0, 44.0)]
	return ManifestCollection((
		VideoManifest('ek-0', Source.EPIC_KITCHENS, Split.TRAIN, 48.0, 1920, 1080, tuple(actions)),
		VideoManifest('ego-0', Source.EGO4D, Split.VAL, 20.0, 1920, 1440, (ActionAnnotation(2.0, 3.0, '#C C opens the tap'),))
	))


class TestStats(unittest.TestCase):

	def test_averageActions(self):
		samples = [sample('ok', videoId='ek-0', clip=(s, s + 16.0), index=0) for s in (0.0, 16.0, 32.0)]
		stats = computeStats(statsManifests(), samples)
		row = stats.row(Source.EPIC_KITCHENS, Split.TRAIN)
		self.assertEqual(row['n_clips'], 3)
		self.assertEqual(row['avg_actions_per_clip'], 3.0)
		self.assertEqual(row['avg_samples_per_clip'], 1.0)
		self.assertFalse(stats.empty)

	def test_elevenPerClip(self):
		samples = [sample('ok', videoId='ego-0', clip=(0.0, 16.0), index=i, source=Source.EGO4D) for i in range(11)]
		stats = computeStats(statsManifests(), samples)
		self.assertEqual(stats.row(Source.EGO4D, Split.VAL)['avg_samples_per_clip'], 11.0)
		self.assertEqual(stats.row('All', 'All')['avg_samples_per_clip'], 11.0)

	def test_empty(self):
		stats = computeStats(statsManifests(), [])
		self.assertTrue(stats.empty)
		total = stats.row('All', 'All')
		self.assertEqual((total['n_clips'], total['n_samples'], total['n_videos']), (0, 0, 2))
		self.assertEqual(total['avg_actions_per_clip'], 0.0)
		self.assertTrue(stats.toDict()['empty'])

	def test_dangling(self):
		self.assertRaises(DanglingReference, computeStats, statsManifests(), [sample('ok', videoId='missing')])

	def test_totalsAreSums(self):
		samples = [sample('ok', videoId='ek-0', clip=(0.0, 16.0), index=i) for i in range(4)]
		samples += [sample('ok', videoId='ego-0', clip=(0.0, 16.0), index=i, source=Source.EGO4D) for i in range(3)]
		clips = [ClipContext(makeClip('ek-0', 16.0, 32.0))]
		table = computeStats(statsManifests(), samples, clips).table
		detail = table[(table['source'] != 'All') & (table['split'] != 'All')]
		total = table[(table['source'] == 'All') & (table['split'] == 'All')].iloc[0]
		for column in ('n_videos', 'n_clips', 'n_samples'):
			self.assertEqual(int(detail[column].sum()), int(total[column]))
		self.assertEqual(int(total['n_clips']), 3)
		self.assertAlmostEqual(float(total['avg_samples_per_clip']), 7 / 3)


class TestRecords(unittest.TestCase):

	def setUp(self):
		self.samples = [sample(f'answer {i} <1.5,2.0> café', index=i) for i in range(5)]

	def test_roundTrip(self):
		text = dumpSamples(self.samples)
		self.assertEqual(len(text.splitlines()), 5)
		self.assertEqual(loadSamples(text), self.samples)

	def test_corruptedLine(self):
		lines = dumpSamples(self.samples).splitlines()
		lines[2] = lines[2][:20]
		with self.assertRaises(MalformedLine) as ctx:
			loadSamples('\n'.join(lines))
		self.assertEqual(ctx.exception.lineNo, 3)

	def test_invalidRecord(self):
		with self.assertRaises(MalformedLine) as ctx:
			loadSamples(dumpSamples(self.samples[:1]) + '{"schema_version": 1, "sample_id": "x"}\n')
		self.assertEqual(ctx.exception.lineNo, 2)

	def test_empty(self):
		self.assertEqual(loadSamples(''), [])

	def test_schemaVersion(self):
		line = dumpSample(self.samples[0]).replace('"schema_version": 1', '"schema_version": 2')
		with self.assertRaises(SchemaVersionMismatch) as ctx:
			loadSamples(line)
		self.assertEqual(ctx.exception.lineNo, 1)

	def test_file(self):
		with tempfile.TemporaryDirectory() as folder:
			path = os.path.join(folder, 'dataset.jsonl')
			asyncio.run(writeDataset(path, self.samples))
			self.assertEqual(asyncio.run(readDataset(path)), self.samples)


class TestClipSelection(unittest.TestCase):

	def setUp(self):
		self.contexts = [ClipContext(Clip(f'ek-{i:02d}', 0.0, 16.0)) for i in range(20)]
		self.contexts += [ClipContext(Clip(f'pta-{i}', 16.0, 32.0)) for i in range(5)]
		self.sources = {c.clip.videoId: Source.PTA if c.clip.videoId.startswith('pta') else Source.EPIC_KITCHENS for c in self.contexts}

	def test_ratio(self):
		picked = selectClipsForGeneration(self.contexts, self.sources, 8, (7, 1), seed=0)
		self.assertEqual(len(picked), 8)
		self.assertEqual(sum(1 for c in picked if self.sources[c.clip.videoId] == Source.PTA), 1)
		self.assertEqual(picked, sorted(picked, key=lambda c: (c.clip.videoId, c.clip.start)))
		self.assertEqual(picked, selectClipsForGeneration(self.contexts, self.sources, 8, (7, 1), seed=0))

	def test_noBudget(self):
		self.assertEqual(len(selectClipsForGeneration(list(reversed(self.contexts)), self.sources)), 25)

	def test_invalid(self):
		self.assertRaises(ArgumentRange, selectClipsForGeneration, self.contexts, self.sources, -1)
		self.assertRaises(ArgumentRange, selectClipsForGeneration, self.contexts, self.sources, 5, (0, 0))


if __name__ == '__main__':
	# run from the repository root: python -m eagle.dataset.test
	unittest.main(verbosity=2)
