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

from ..gateway.chat_types import ChatRequest, systemUserRequest
from ..errors import ArgumentRange
from .scores import METRICS

JUDGE_PROMPT_VERSION = 'eagle-judge-v2'
DEFAULT_JUDGE_MODEL = 'gpt-4'
DEFAULT_JUDGE_TEMPERATURE = 0.0

# rubric wording is part of the cache key, change it together with JUDGE_PROMPT_VERSION
RUBRICS = {
	'Accuracy': "This metric involves assessing if the response reflects the video's content, focusing on activity "
		'recognition for EPIC-KITCHENS and Ego4D samples, and the match between predicted and ground truth procedure '
		'steps for PTA samples.',
	'Helpfulness': "evaluating how much the response aids in comprehending the video's content and its broader context. "
		"It involves assessing whether the model's output provides actionable insights or clarifies complex elements "
		'within the video.',
	'Detail': 'This involves assessing the comprehensiveness and specificity with which the video is described. A high '
		'score in this area indicates that the model captures essential objects and events of the video.',
	'Conciseness': 'This metric measures the succinctness and clarity of the response, focusing on delivering essential '
		'information without superfluous content. Effective conciseness involves distilling complex information into a '
		'clear and brief explanation, which is critical for providing essential information of the video.',
	'Consistency': 'This assesses the uniformity and reliability of the narrative or description provided by the model '
		'across multiple instances or parts of the video.'
}

RUBRIC_TITLES = {'Detail': 'Level of Detail'}

JUDGE_SYSTEM_PROMPT = (
	'You are a strict reviewer of answers about first person videos. You do not see the video. You get a question, '
	'a ground truth written from the annotations of the clip, and the answer of a model. Rate the answer against the '
	'ground truth on each metric below with an integer from 1 (worst) to 10 (best).'
)


def renderRubrics() -> str:
	return '\n'.join(f'{RUBRIC_TITLES.get(name, name)}: {RUBRICS[name]}' for name in METRICS)


def buildJudgeRequest(
	question:str,
	groundTruth:str,
	modelResponse:str,
	modelName:str=DEFAULT_JUDGE_MODEL,
	temperature:float=DEFAULT_JUDGE_TEMPERATURE
) -> ChatRequest:
	"""Judge prompt rating one model response, a pure function of its arguments

	Args:
		question (str): Instruction given to the model
		groundTruth (str): Template ground truth of the clip
		modelResponse (str): Answer to rate
		modelName (str, optional): Judge model. Defaults to 'gpt-4'.
		temperature (float, optional): Decoding temperature. Defaults to 0.

	Raises:
		ArgumentRange: Any of the texts is empty

	Returns:
		ChatRequest: System and user message pair asking for 'Metric: <integer>' lines
	"""
	for name, text in (('question', question), ('ground truth', groundTruth), ('model response', modelResponse)):
		if text == None or len(text.strip()) == 0:
			raise ArgumentRange(f'{name} must not be empty')

	layout = '\n'.join(f'{name}: <integer 1-10>' for name in METRICS)
	system = f'[{JUDGE_PROMPT_VERSION}]\n{JUDGE_SYSTEM_PROMPT}\n\n{renderRubrics()}\n\nReply with exactly these five lines and nothing else:\n{layout}'
	user = f'Question:\n{question.strip()}\n\nGround truth:\n{groundTruth.strip()}\n\nModel response:\n{modelResponse.strip()}'
	return systemUserRequest(modelName, system, user, temperature, maxTokens=64)
