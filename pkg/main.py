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

import sys
import httpx
import asyncio
import argparse

# For .env file
from dotenv import load_dotenv
load_dotenv()

from log_config import getNewLogger, setLogLevel

from eagle.ingest import Source
from eagle.dataset import Ablation
from eagle.stages import STAGES, RunConfig
from eagle.errors import EagleError, UsageError, ArgumentRange

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class EagleArgumentParser(argparse.ArgumentParser):
	"""ArgumentParser raising UsageError instead of printing usage and exiting"""

	def error(self, message:str):
		raise UsageError(message)


def parseRatio(value:str) -> tuple[int, int]:
	try:
		activity, procedure = (int(v) for v in value.split(':'))
	except ValueError:
		raise argparse.ArgumentTypeError(f'ratio must look like 7:1, got {value!r}')
	return (activity, procedure)


def buildParser() -> argparse.ArgumentParser:
	common = EagleArgumentParser(add_help=False)
	paths = common.add_argument_group('paths')
	paths.add_argument('--manifest', dest='manifest', help='manifest collection (JSON)')
	paths.add_argument('--clips', dest='clips', help='clip contexts (JSONL)')
	paths.add_argument('--dataset', dest='dataset', help='instruction samples (JSONL)')
	paths.add_argument('--out', dest='out', help='output file')
	paths.add_argument('--scores', dest='scores', help='judge scores (JSONL)')
	paths.add_argument('--responses', dest='responses', help='model responses to judge (JSONL)')
	paths.add_argument('--report', dest='report', help='text report output')
	paths.add_argument('--csv', dest='csv', help='CSV report output')
	paths.add_argument('--means', dest='means', help='per model metric means (CSV)')
	paths.add_argument('--videos', dest='videos', help='videos table (CSV) for ingest')
	paths.add_argument('--actions', dest='actions', help='action rows for ingest')
	paths.add_argument('--source-format', dest='sourceFormat', choices=[s.value for s in Source])
	paths.add_argument('--trajectories', dest='trajectories', help='folder with <video_id>.txt trajectory files')
	paths.add_argument('--first-round-scores', dest='firstRoundScores', help='scores of round 1, excluded in round 2')

	pipeline = common.add_argument_group('pipeline')
	pipeline.add_argument('--clip-len', dest='clipLen', type=float)
	pipeline.add_argument('--ctx-s', dest='ctxS', type=float)
	pipeline.add_argument('--fps', dest='fps', type=float)
	pipeline.add_argument('--tau', dest='tau', type=float)
	pipeline.add_argument('--n-pairs', dest='nPairs', type=int)
	pipeline.add_argument('--seed', dest='seed', type=int)
	pipeline.add_argument('--n-videos', dest='nVideos', type=int)
	pipeline.add_argument('--sample-size', dest='sampleSize', type=int)
	pipeline.add_argument('--stratify', dest='stratify', action='store_true', default=None)
	pipeline.add_argument('--round', dest='round', type=int, choices=[1, 2])
	pipeline.add_argument('--clip-budget', dest='clipBudget', type=int)
	pipeline.add_argument('--ratio', dest='activityRatio', type=parseRatio, help='activity:procedure clips, e.g. 7:1')
	pipeline.add_argument('--ablation', dest='ablation', choices=[a.value for a in Ablation])
	pipeline.add_argument('--held-out-lab', dest='heldOutLab')

	model = common.add_argument_group('external model')
	model.add_argument('--replay', dest='replay', action='store_true', default=None, help='serve from cache only')
	model.add_argument('--api-base', dest='apiBase')
	model.add_argument('--model', dest='model')
	model.add_argument('--judge-model', dest='judgeModel')
	model.add_argument('--gen-temperature', dest='generationTemperature', type=float)
	model.add_argument('--judge-temperature', dest='judgeTemperature', type=float)
	model.add_argument('--cache', dest='cacheDir')
	model.add_argument('--retries', dest='retries', type=int)
	model.add_argument('--retry-base', dest='retryBaseSeconds', type=float)
	model.add_argument('--jobs', dest='jobs', type=int)

	common.add_argument('--log-level', dest='logLevel')

	parser = EagleArgumentParser(prog='eagle', description='Egocentric instruction data pipeline and judge toolkit')
	subparsers = parser.add_subparsers(dest='command', metavar='command')
	for name, stage in STAGES.items():
		subparsers.add_parser(name, parents=[common], help=(stage.__doc__ or '').splitlines()[0])
	return parser


def run(argv:list[str]=None, transport:httpx.AsyncBaseTransport=None) -> int:
	"""Run one pipeline stage

	Args:
		argv (list[str], optional): Arguments without the program name. Defaults to sys.argv[1:].
		transport (httpx.AsyncBaseTransport, optional): HTTP transport of the chat client. Defaults to None.

	Returns:
		int: 0 on success, 1 on pipeline errors, 2 on usage errors
	"""
	logger = getNewLogger('main')
	try:
		args = buildParser().parse_args(argv)
		if args.command == None:
			raise UsageError('missing command, one of ' + ', '.join(STAGES.keys()))
		if args.logLevel:
			setLogLevel(args.logLevel)
		config = RunConfig.fromEnvironment(**vars(args))
	except SystemExit as e:
		# --help
		return e.code if isinstance(e.code, int) else EXIT_OK
	except (UsageError, ArgumentRange) as e:
		print(f'usage error: {e}', file=sys.stderr)
		return EXIT_USAGE

	stage = STAGES[config.command](config, transport)
	try:
		results = asyncio.run(stage.run())
	except Exception as e:
		logger.debug(f'{config.command} failed', exc_info=e)
		print(f'error: {e}', file=sys.stderr)
		return EXIT_FAILURE

	failed = results.failures()
	total = sum(results.count(m) for m in results.results.keys())
	if failed > 0 and failed == total:
		print(f'error: all {total} items of {config.command} failed', file=sys.stderr)
		return EXIT_FAILURE
	reportText = getattr(stage, 'reportText', None)
	if reportText != None and config.report == None:
		print(reportText, end='')
	return EXIT_OK


if __name__ == '__main__':
	sys.exit(run(sys.argv[1:]))
