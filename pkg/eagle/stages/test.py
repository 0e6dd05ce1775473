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
import math
import httpx
import unittest
import tempfile
import simplejson as json
from unittest import mock

import main
from eagle.stages import *
from eagle.ingest import Source, Split, ActionAnnotation, VideoManifest, ManifestCollection, dumpManifest
from eagle.judge import JudgeScore, ScoreRecord, dumpScores, METRICS
from eagle.gateway import API_KEY_ENV
from eagle.errors import ArgumentRange

GENERATED_TYPES = ['Description', 'Detailed Description', 'Temporal Reasoning', 'Action Anticipation', 'Event Localization']
JUDGE_REPLY = 'Accuracy: 7\nHelpfulness: 8\nDetail: 6\nConciseness: 9\nConsistency: 6'

# per metric means (Accuracy, Helpfulness, Detail, Conciseness, Consistency)
PUBLISHED_MEANS = {
	'Video-LLaMA': (1.00, 1.00, 1.60, 1.85, 1.43),
	'LLaVA': (2.81, 2.90, 4.56, 4.12, 3.38),
	'BLIP-2': (4.62, 4.78, 6.14, 5.51, 5.53),
	'EAGLE': (7.32, 7.51, 6.90, 6.75, 6.65)
}


def completion(content:str) -> httpx.Response:
	return httpx.Response(200, json={
		'choices': [{'index': 0, 'message': {'role': 'assistant', 'content': content}, 'finish_reason': 'stop'}],
		'usage': {'prompt_tokens': 100, 'completion_tokens': 50, 'total_tokens': 150}
	})


def generatedPairs(n:int=11) -> str:
	blocks = []
	for i in range(n):
		blocks.append(
			f'Type: {GENERATED_TYPES[i % len(GENERATED_TYPES)]}\n'
			f'Question: What does the person do in moment {i + 1}?\n'
			f'Answer: The person keeps working at the counter, step {i + 1}.'
		)
	return '\n\n'.join(blocks)


def modelHandler(req:httpx.Request) -> httpx.Response:
	system = json.loads(req.content)['messages'][0]['content']
	if system.startswith('[eagle-gen-v1]'):
		return completion(generatedPairs())
	if system.startswith('[eagle-judge-v2]'):
		return completion(JUDGE_REPLY)
	return httpx.Response(400, json={'error': 'unexpected prompt'})


def scoresWithMeans(model:str, means:tuple, n:int=100) -> list[ScoreRecord]:
	# n integer scores per metric whose mean is exactly the given two decimal value
	columns = []
	for mean in means:
		total = round(mean * n)
		base, extra = divmod(total, n)
		columns.append([base + 1] * extra + [base] * (n - extra))
	return [ScoreRecord.fromScore(f's{i:03d}', model, JudgeScore(*(c[i] for c in columns))) for i in range(n)]


def readFile(path:str) -> str:
	with open(path, 'r', encoding='utf-8') as f:
		return f.read()


def writeFile(path:str, text:str):
	with open(path, 'w', encoding='utf-8') as f:
		f.write(text)


class TestRunConfig(unittest.TestCase):

	def test_defaults(self):
		with mock.patch.dict(os.environ, {}, clear=True):
			config = RunConfig.fromEnvironment()
		self.assertEqual(config.clipLen, 16.0)
		self.assertEqual(config.ctxS, 30.0)
		self.assertEqual(config.tau, 0.1)
		self.assertEqual(config.nPairs, 11)
		self.assertEqual(config.activityRatio, (7, 1))
		self.assertEqual(config.generationTemperature, 0.7)
		self.assertEqual(config.judgeTemperature, 0.0)
		self.assertFalse(config.replay)

	def test_environment(self):
		with mock.patch.dict(os.environ, {'eagle_jobs': '3', 'eagle_model': 'gpt-x', 'eagle_replay': 'true'}, clear=True):
			config = RunConfig.fromEnvironment()
			self.assertEqual((config.jobs, config.model, config.judgeModel, config.replay), (3, 'gpt-x', 'gpt-x', True))
			config = RunConfig.fromEnvironment(jobs=5, model=None, unknown='x')
			self.assertEqual((config.jobs, config.model), (5, 'gpt-x'))

	def test_invalid(self):
		self.assertRaises(ArgumentRange, RunConfig, clipLen=0)
		self.assertRaises(ArgumentRange, RunConfig, tau=-0.1)
		self.assertRaises(ArgumentRange, RunConfig, round=3)
		self.assertRaises(ArgumentRange, RunConfig, jobs=0)


class TestStageResults(unittest.TestCase):

	def test_counts(self):
		results = StageResults('test')
		results.add('generate', 'a@0', True)
		results.add('generate', 'a@16', False, 'rate limited')
		results.add('parse', 'a@0', True)
		results.add('', 'ignored', True)
		self.assertEqual(results.count('generate'), 2)
		self.assertEqual(results.count('generate', True), 1)
		self.assertEqual(results.failures(), 1)
		self.assertEqual(results.summary(), {'generate': {'ok': 1, 'failed': 1}, 'parse': {'ok': 1, 'failed': 0}})


class TestCommandLine(unittest.TestCase):

	def setUp(self):
		self.folder = tempfile.TemporaryDirectory()

	def tearDown(self):
		self.folder.cleanup()

	def path(self, name:str) -> str:
		return os.path.join(self.folder.name, name)

	def test_usage(self):
		self.assertEqual(main.run([]), main.EXIT_USAGE)
		self.assertEqual(main.run(['segment', '--no-such-flag']), main.EXIT_USAGE)
		self.assertEqual(main.run(['explode']), main.EXIT_USAGE)
		self.assertEqual(main.run(['segment', '--clip-len', '0']), main.EXIT_USAGE)
		self.assertEqual(main.run(['generate', '--ratio', '7-1']), main.EXIT_USAGE)

	def test_missingInput(self):
		self.assertEqual(main.run(['segment', '--manifest', self.path('missing.json'), '--out', self.path('clips.jsonl')]), main.EXIT_FAILURE)
		self.assertEqual(main.run(['segment', '--out', self.path('clips.jsonl')]), main.EXIT_FAILURE)

	def test_segment(self):
		actions = (ActionAnnotation(1.0, 2.0, 'open drawer'), ActionAnnotation(35.66, 37.0, 'take knife'))
		writeFile(self.path('manifest.json'), dumpManifest(ManifestCollection((
			VideoManifest('P01_01', Source.EPIC_KITCHENS, Split.TRAIN, 48.0, 1920, 1080, actions),
		))))
		code = main.run(['segment', '--manifest', self.path('manifest.json'), '--out', self.path('out/clips.jsonl')])
		self.assertEqual(code, main.EXIT_OK)
		lines = readFile(self.path('out/clips.jsonl')).splitlines()
		self.assertEqual(len(lines), 3)
		self.assertEqual(json.loads(lines[0])['schema_version'], CLIPS_SCHEMA_VERSION)

	def test_evaluateScores(self):
		records = []
		for model, means in PUBLISHED_MEANS.items():
			records += scoresWithMeans(model, means)
		writeFile(self.path('scores.jsonl'), dumpScores(records))
		code = main.run(['evaluate', '--scores', self.path('scores.jsonl'), '--report', self.path('report.txt'), '--csv', self.path('report.csv')])
		self.assertEqual(code, main.EXIT_OK)

		csv = readFile(self.path('report.csv')).splitlines()
		self.assertEqual(csv[0], ','.join(['Model', *METRICS, 'Average']))
		self.assertEqual(csv[1], 'Video-LLaMA,1.00,1.00,1.60,1.85,1.43,1.38')
		self.assertEqual(csv[-1], 'EAGLE,7.32,7.51,6.90,6.75,6.65,7.03')
		self.assertEqual([line.split(',')[0] for line in csv[1:]], ['Video-LLaMA', 'LLaVA', 'BLIP-2', 'EAGLE'])
		report = readFile(self.path('report.txt'))
		self.assertIn('1.38', report)
		self.assertIn('5.32', report)

	def test_reportFromMeans(self):
		writeFile(self.path('means.csv'), 'Model,Accuracy,Helpfulness,Level of Detail,Conciseness,Consistency\nLaViLa,1.17,1.15,1.95,4.63,2.73\n')
		code = main.run(['report', '--means', self.path('means.csv'), '--csv', self.path('report.csv'), '--report', self.path('report.txt')])
		self.assertEqual(code, main.EXIT_OK)
		self.assertEqual(readFile(self.path('report.csv')).splitlines()[1], 'LaViLa,1.17,1.15,1.95,4.63,2.73,2.33')


class TestPipeline(unittest.TestCase):

	def setUp(self):
		self.folder = tempfile.TemporaryDirectory()
		self.cacheDir = os.path.join(self.folder.name, 'cache')
		self.requests = []

	def tearDown(self):
		self.folder.cleanup()

	def handler(self, req:httpx.Request) -> httpx.Response:
		self.requests.append(req)
		return modelHandler(req)

	def pipeline(self, name:str, replay:bool) -> dict:
		"""Run synth to evaluate into folder `name`, returns the produced files"""
		folder = os.path.join(self.folder.name, name)
		os.makedirs(folder)
		p = lambda f: os.path.join(folder, f)
		model = ['--cache', self.cacheDir, '--retry-base', '0'] + (['--replay'] if replay else [])
		transport = httpx.MockTransport(self.handler)

		steps = [
			['synth', '--seed', '3', '--n-videos', '4', '--out', p('manifest.json')],
			['segment', '--manifest', p('manifest.json'), '--out', p('clips.jsonl')],
			['generate', '--manifest', p('manifest.json'), '--clips', p('clips.jsonl'), '--out', p('dataset.jsonl')] + model,
			['repair', '--manifest', p('manifest.json'), '--dataset', p('dataset.jsonl'), '--out', p('repaired.jsonl'), '--report', p('repair.json')],
			['stats', '--manifest', p('manifest.json'), '--dataset', p('repaired.jsonl'), '--out', p('stats.json')],
			['evaluate', '--manifest', p('manifest.json'), '--dataset', p('repaired.jsonl'), '--scores', p('scores.jsonl'), '--report', p('report.txt')] + model
		]
		for argv in steps:
			self.assertEqual(main.run(argv, transport), main.EXIT_OK, argv[0])
		return {f: readFile(p(f)) for f in sorted(os.listdir(folder))}

	def test_replayIsIdentical(self):
		with mock.patch.dict(os.environ, {API_KEY_ENV: 'sk-test-key-0000'}):
			first = self.pipeline('first', replay=False)
		calls = len(self.requests)
		self.assertGreater(calls, 0)

		with mock.patch.dict(os.environ):
			os.environ.pop(API_KEY_ENV, None)
			second = self.pipeline('second', replay=True)
		self.assertEqual(len(self.requests), calls)
		self.assertEqual(first, second)

		samples = [json.loads(line) for line in first['dataset.jsonl'].splitlines()]
		self.assertGreater(len(samples), 0)
		self.assertEqual(len(samples) % 11, 0)
		self.assertEqual(first['dataset.jsonl'], first['repaired.jsonl'])

		stats = json.loads(first['stats.json'])
		total = [r for r in stats['rows'] if r['source'] == 'All' and r['split'] == 'All'][0]
		self.assertEqual(total['n_samples'], len(samples))
		self.assertEqual(total['avg_samples_per_clip'], 11.0)

		scores = first['scores.jsonl'].splitlines()
		self.assertEqual(len(scores), math.isqrt(len(samples) - 1) + 1)
		self.assertIn('reference', first['report.txt'])
		self.assertIn('7.20', first['report.txt'])

	def test_replayMissFails(self):
		with mock.patch.dict(os.environ):
			os.environ.pop(API_KEY_ENV, None)
			folder = self.folder.name
			self.assertEqual(main.run(['synth', '--n-videos', '2', '--out', os.path.join(folder, 'manifest.json')]), main.EXIT_OK)
			code = main.run([
				'generate', '--manifest', os.path.join(folder, 'manifest.json'), '--out', os.path.join(folder, 'dataset.jsonl'),
				'--cache', self.cacheDir, '--replay'
			], httpx.MockTransport(self.handler))
		self.assertEqual(code, main.EXIT_FAILURE)
		self.assertEqual(len(self.requests), 0)


if __name__ == '__main__':
	# run from the repository root: python -m eagle.stages.test
	unittest.main(verbosity=2)
