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
from decimal import Decimal

from eagle.judge import *
from eagle.dataset import InstructionSample
from eagle.promptgen import ResponseType
from eagle.ingest import Source
from eagle.errors import MissingMetric, MetricOutOfRange, OutOfRange, EmptyInput, ArgumentRange, MalformedLine

# per metric means (Accuracy, Helpfulness, Detail, Conciseness, Consistency) and published average
TABLE_ROWS = {
	'Video-LLaMA': ((1.00, 1.00, 1.60, 1.85, 1.43), '1.38'),
	'LaViLa': ((1.17, 1.15, 1.95, 4.63, 2.73), '2.33'),
	'BLIP-1': ((1.56, 1.48, 1.85, 4.50, 3.75), '2.63'),
	'LLaVA': ((2.81, 2.90, 4.56, 4.12, 3.38), '3.55'),
	'ImageBind': ((2.96, 2.97, 5.45, 4.64, 3.71), '3.95'),
	'InstructBLIP': ((3.81, 3.68, 5.29, 5.46, 4.81), '4.61'),
	'Shikra': ((4.21, 4.52, 6.80, 4.78, 5.15), '5.09'),
	'Shikra_2': ((4.31, 4.55, 6.85, 4.20, 5.20), '5.02'),
	'BLIP-2': ((4.62, 4.78, 6.14, 5.51, 5.53), '5.32'),
	'BLIP-2_2': ((4.43, 4.80, 6.20, 5.45, 5.38), '5.25'),
	'EAGLE-pool': ((7.13, 7.32, 6.52, 6.45, 6.10), '6.70'),
	'EAGLE-pool_2': ((7.21, 7.40, 6.72, 6.42, 6.30), '6.81'),
	'EAGLE': ((7.32, 7.51, 6.90, 6.75, 6.65), '7.03'),
	'EAGLE_2': ((7.28, 7.48, 6.83, 6.67, 6.77), '7.01'),
}


def scoreText(values:tuple) -> str:
	return renderScores(JudgeScore(*values))


def samples(counts:dict) -> list[InstructionSample]:
	result = []
	for source, n in counts.items():
		for i in range(n):
			result.append(InstructionSample(
				sample_id=f'{source.value}-{i:03d}', source=source, video_id=f'{source.value}-v', clip=(0.0, 16.0),
				task_type=ResponseType.DESCRIPTION, instruction='What happens?', response='Something.'
			))
	return result


class TestTableAverages(unittest.TestCase):

	def test_publishedRows(self):
		for model, (means, average) in TABLE_ROWS.items():
			self.assertEqual(overallAverage([Decimal(str(m)) for m in means]), Decimal(average), model)
			self.assertEqual(ModelAggregate.fromMeans(model, means).average, Decimal(average), model)

	def test_allFives(self):
		means, average = aggregate([JudgeScore(5, 5, 5, 5, 5)] * 3)
		self.assertEqual(average, Decimal('5.00'))
		self.assertEqual(means, tuple(Decimal('5.00') for _ in range(5)))

	def test_empty(self):
		self.assertRaises(EmptyInput, aggregate, [])
		self.assertRaises(EmptyInput, aggregateRecords, [])

	def test_permutationAndBounds(self):
		rng = np.random.default_rng(4)
		scores = [JudgeScore(*(int(v) for v in rng.integers(1, 11, size=5))) for _ in range(40)]
		means, average = aggregate(scores)
		shuffled = [scores[i] for i in rng.permutation(len(scores))]
		self.assertEqual(aggregate(shuffled), (means, average))
		for i, mean in enumerate(means):
			values = [s.values()[i] for s in scores]
			self.assertTrue(min(values) <= mean <= max(values))

	def test_halfUp(self):
		self.assertEqual(roundCents(Decimal('2.325')), Decimal('2.33'))
		self.assertEqual(JudgeScore(1, 1, 1, 1, 2).mean, Decimal('1.20'))
		self.assertEqual(JudgeScore(7, 8, 6, 7, 7).mean, Decimal('7.00'))


class TestParseScores(unittest.TestCase):

	def test_allMetrics(self):
		score = parseScores('Accuracy: 7\nHelpfulness: 8\nDetail: 6\nConciseness: 9\nConsistency: 6')
		self.assertEqual(score, JudgeScore(7, 8, 6, 9, 6))
		self.assertEqual(score.mean, Decimal('7.20'))

	def test_decorated(self):
		text = 'Here are my ratings:\n- **Accuracy**: 3\n- Helpfulness: 4\n- Level of Detail: 5\n- Conciseness: 6\n- Consistency: 7\nAccuracy: 9'
		self.assertEqual(parseScores(text), JudgeScore(3, 4, 5, 6, 7))

	def test_outOfRange(self):
		with self.assertRaises(OutOfRange) as ctx:
			parseScores('Accuracy: 11\nHelpfulness: 8\nDetail: 6\nConciseness: 9\nConsistency: 6')
		self.assertEqual(ctx.exception.name, 'Accuracy')
		self.assertRaises(MetricOutOfRange, parseScores, 'Accuracy: 7.5\nHelpfulness: 8\nDetail: 6\nConciseness: 9\nConsistency: 6')
		self.assertRaises(MetricOutOfRange, JudgeScore, 0, 5, 5, 5, 5)

	def test_missing(self):
		with self.assertRaises(MissingMetric) as ctx:
			parseScores('Accuracy: 7\nHelpfulness: 8\nDetail: 6\nConciseness: 9')
		self.assertEqual(ctx.exception.name, 'Consistency')

	def test_renderParseIdentity(self):
		rng = np.random.default_rng(8)
		for _ in range(200):
			values = tuple(int(v) for v in rng.integers(1, 11, size=5))
			self.assertEqual(parseScores(scoreText(values)).values(), values)


class TestScoreFiles(unittest.TestCase):

	def setUp(self):
		self.records = [ScoreRecord.fromScore(f's{i}', 'EAGLE', JudgeScore(7, 8, 6, 9, (i % 10) + 1)) for i in range(5)]

	def test_roundTrip(self):
		loaded = loadScores(dumpScores(self.records))
		self.assertEqual(loaded, self.records)
		self.assertIsInstance(loaded[0].mean, Decimal)

	def test_file(self):
		with tempfile.TemporaryDirectory() as folder:
			path = os.path.join(folder, 'scores.jsonl')
			asyncio.run(writeScores(path, self.records))
			self.assertEqual(asyncio.run(readScores(path)), self.records)

	def test_malformed(self):
		text = dumpScores(self.records[:1]) + '{"schema_version": 1, "sample_id": "s", "model": "m", "accuracy": 12}\n'
		with self.assertRaises(MalformedLine) as ctx:
			loadScores(text)
		self.assertEqual(ctx.exception.lineNo, 2)

	def test_responses(self):
		records = loadResponses('{"sample_id": "s1", "model": "LLaVA", "response": "A drawer."}\n\n')
		self.assertEqual(records, [ResponseRecord(sample_id='s1', model='LLaVA', response='A drawer.')])
		self.assertRaises(MalformedLine, loadResponses, '{"sample_id": "s1"}')


class TestSampling(unittest.TestCase):

	def test_sqrt(self):
		self.assertEqual(sampleSize(7700), 88)
		self.assertEqual(sampleSize(100), 10)
		self.assertEqual(sampleSize(0), 0)
		self.assertEqual(sampleSize(7700, 100), 100)
		self.assertRaises(ArgumentRange, sampleSize, -1)

	def test_bounds(self):
		rng = np.random.default_rng(12)
		for n in rng.integers(1, 10 ** 6 + 1, size=2000):
			k = sampleSize(int(n))
			self.assertTrue((k - 1) ** 2 < n <= k ** 2)

	def test_permutation(self):
		pool = samples({Source.EPIC_KITCHENS: 20})
		picked = selectSamples(pool, len(pool), seed=1)
		self.assertEqual(sorted(s.sample_id for s in picked), sorted(s.sample_id for s in pool))

	def test_reproducible(self):
		pool = samples({Source.EPIC_KITCHENS: 30, Source.EGO4D: 30})
		self.assertEqual(selectSamples(pool, 10, seed=3), selectSamples(pool, 10, seed=3))
		self.assertEqual(len(selectSamples(pool, 100, seed=3)), 60)

	def test_stratified(self):
		pool = samples({Source.EPIC_KITCHENS: 50, Source.EGO4D: 30, Source.PTA: 20})
		picked = selectSamples(pool, 10, seed=0, stratify=True)
		counts = {source: sum(1 for s in picked if s.source == source) for source in Source}
		self.assertEqual(counts, {Source.EPIC_KITCHENS: 5, Source.EGO4D: 3, Source.PTA: 2})

	def test_exclude(self):
		pool = samples({Source.EGO4D: 10})
		first = selectSamples(pool, 4, seed=0)
		second = selectSamples(pool, 4, seed=0, exclude=[s.sample_id for s in first])
		self.assertEqual(set(s.sample_id for s in first) & set(s.sample_id for s in second), set())


class TestJudgeRequest(unittest.TestCase):

	def test_rubrics(self):
		req = buildJudgeRequest('What happens?', 'Between 3.66 and 5.0 seconds, the person open drawer.', 'The person opens a drawer.')
		text = req.messages[0].content + req.messages[1].content
		for name in ('Accuracy', 'Helpfulness', 'Level of Detail', 'Conciseness', 'Consistency'):
			self.assertIn(name, text)
		self.assertIn('Accuracy: <integer 1-10>', text)
		self.assertEqual(req.temperature, 0.0)

	def test_rubricWording(self):
		system = buildJudgeRequest('q', 'gt', 'answer').messages[0].content
		self.assertIn("Accuracy: This metric involves assessing if the response reflects the video's content, focusing on "
			'activity recognition for EPIC-KITCHENS and Ego4D samples, and the match between predicted and ground truth '
			'procedure steps for PTA samples.', system)
		self.assertIn("Helpfulness: evaluating how much the response aids in comprehending the video's content and its "
			"broader context. It involves assessing whether the model's output provides actionable insights or clarifies "
			'complex elements within the video.', system)
		self.assertIn('Level of Detail: This involves assessing the comprehensiveness and specificity with which the video '
			'is described. A high score in this area indicates that the model captures essential objects and events of the video.', system)
		self.assertIn('Conciseness: This metric measures the succinctness and clarity of the response, focusing on '
			'delivering essential information without superfluous content. Effective conciseness involves distilling complex '
			'information into a clear and brief explanation, which is critical for providing essential information of the video.', system)
		self.assertIn('Consistency: This assesses the uniformity and reliability of the narrative or description provided '
			'by the model across multiple instances or parts of the video.', system)
		self.assertTrue(system.startswith(f'[{JUDGE_PROMPT_VERSION}]'))

	def test_pure(self):
		a = buildJudgeRequest('q', 'gt', 'answer')
		b = buildJudgeRequest('q', 'gt', 'answer')
		self.assertEqual(a.canonical(), b.canonical())

	def test_emptyResponse(self):
		self.assertRaises(ArgumentRange, buildJudgeRequest, 'q', 'gt', '')
		self.assertRaises(ArgumentRange, buildJudgeRequest, 'q', ' ', 'answer')


class TestReport(unittest.TestCase):

	def test_shikra(self):
		report = renderReport([ModelAggregate.fromMeans('Shikra', TABLE_ROWS['Shikra'][0])])
		self.assertEqual(len(report.strip().split('\n')), 2)
		self.assertIn('5.09', report)

	def test_ascendingOrder(self):
		aggregates = [ModelAggregate.fromMeans(m, means) for m, (means, _) in TABLE_ROWS.items()]
		frame = reportFrame(aggregates)
		self.assertEqual(list(frame['Model'])[0], 'Video-LLaMA')
		self.assertEqual(list(frame['Model'])[-1], 'EAGLE')
		self.assertEqual([float(v) for v in frame['Average']], sorted(float(v) for v in frame['Average']))

	def test_tieBreak(self):
		a = ModelAggregate.fromMeans('b-model', (5, 5, 5, 5, 5))
		b = ModelAggregate.fromMeans('a-model', (5, 5, 5, 5, 5))
		c = ModelAggregate.fromMeans('z-model', (4, 6, 5, 5, 5))
		self.assertEqual(list(reportFrame([a, b, c])['Model']), ['z-model', 'a-model', 'b-model'])

	def test_csv(self):
		csv = renderReportCsv([ModelAggregate.fromMeans('LaViLa', TABLE_ROWS['LaViLa'][0])])
		self.assertEqual(csv, 'Model,Accuracy,Helpfulness,Detail,Conciseness,Consistency,Average\nLaViLa,1.17,1.15,1.95,4.63,2.73,2.33\n')

	def test_meansTable(self):
		aggregates = loadMeansTable('model,accuracy,helpfulness,level of detail,conciseness,consistency\nVideo-LLaMA,1.00,1.00,1.60,1.85,1.43\n')
		self.assertEqual(aggregates[0].average, Decimal('1.38'))
		self.assertEqual(aggregates[0].mean('Detail'), Decimal('1.60'))
		self.assertRaises(ArgumentRange, loadMeansTable, 'model,accuracy\nx,1\n')

	def test_records(self):
		records = [ScoreRecord.fromScore(f's{i}', 'A', JudgeScore(i + 1, 5, 5, 5, 5)) for i in range(4)]
		records += [ScoreRecord.fromScore('s0', 'B', JudgeScore(9, 9, 9, 9, 9))]
		aggregates = aggregateRecords(records)
		self.assertEqual([a.model for a in aggregates], ['A', 'B'])
		self.assertEqual(aggregates[0].mean('Accuracy'), Decimal('2.50'))
		self.assertEqual(aggregates[0].nScores, 4)


if __name__ == '__main__':
	# run from the repository root: python -m eagle.judge.test
	unittest.main(verbosity=2)
