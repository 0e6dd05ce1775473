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

from enum import Enum

from ..ingest import Source
from ..gateway.chat_types import ChatRequest, systemUserRequest
from ..errors import ArgumentRange
from .render import SymbolicContext

PROMPT_VERSION = 'eagle-gen-v1'
DEFAULT_N_PAIRS = 11
DEFAULT_GENERATION_TEMPERATURE = 0.7
DEFAULT_GENERATION_MODEL = 'gpt-4'
DEFAULT_MAX_TOKENS = 2048


class ResponseType(str, Enum):
	TASK_VERIFICATION = 'Task Verification'
	STEP_VERIFICATION = 'Step Verification'
	OBJECTS_VERIFICATION = 'Objects Verification'
	DESCRIPTION = 'Description'
	DETAILED_DESCRIPTION = 'Detailed Description'
	EVENT_LOCALIZATION = 'Event Localization'
	TEMPORAL_REASONING = 'Temporal Reasoning'
	ACTION_ANTICIPATION = 'Action Anticipation'
	CROSS_REFERENCING_EVENTS = 'Cross-Referencing Events'


PROCEDURE_RESPONSE_TYPES = (
	ResponseType.TASK_VERIFICATION,
	ResponseType.STEP_VERIFICATION,
	ResponseType.OBJECTS_VERIFICATION
)

ACTIVITY_RESPONSE_TYPES = (
	ResponseType.DESCRIPTION,
	ResponseType.DETAILED_DESCRIPTION,
	ResponseType.EVENT_LOCALIZATION,
	ResponseType.TEMPORAL_REASONING,
	ResponseType.ACTION_ANTICIPATION,
	ResponseType.CROSS_REFERENCING_EVENTS
)

RESPONSE_TYPE_GUIDE = {
	ResponseType.TASK_VERIFICATION: 'ask which task the person is performing and whether the observed actions belong to it',
	ResponseType.STEP_VERIFICATION: 'ask which step of the task is being performed right now and whether it was done correctly',
	ResponseType.OBJECTS_VERIFICATION: 'ask which objects the current step needs and where they are in the frame',
	ResponseType.DESCRIPTION: 'ask for a short description of what the person does in the clip',
	ResponseType.DETAILED_DESCRIPTION: 'ask for a thorough description of the clip including objects and their motion',
	ResponseType.EVENT_LOCALIZATION: 'ask when a given action happens, answer with a time span',
	ResponseType.TEMPORAL_REASONING: 'ask about the order of actions and what happened before or after one of them',
	ResponseType.ACTION_ANTICIPATION: 'ask what the person is likely to do next given the past actions',
	ResponseType.CROSS_REFERENCING_EVENTS: 'ask how an object moves while a given action takes place, citing its positions'
}

SYSTEM_PROMPT = (
	'You are an AI visual assistant watching a first person video through symbolic annotations only. '
	'You do not see any frames. What you know about the video is given as text contexts: a task description '
	'with its recipe steps, a temporal history of action labels, and object trajectories of normalized center '
	'points. All times are seconds relative to the start of the clip.\n'
	'Write question and answer pairs as if you were looking at the video yourself. Never mention the contexts, '
	'the annotations or that you cannot see the video. Only state what the contexts support.\n'
	'When an answer gives a time span write it as <start,end>. When an answer cites object positions copy them '
	"as 'LABEL': [[t, x, y], ...] with x and y between 0 and 1."
)

LAYOUT_INSTRUCTION = (
	'Use exactly this layout for every pair and separate pairs with one empty line:\n'
	'Type: <response type name>\n'
	'Question: <question>\n'
	'Answer: <answer>'
)


def responseTypesFor(source:Source) -> tuple[ResponseType, ...]:
	"""Response types a clip of the given source draws from, procedure videos verify tasks and steps
	"""
	if source == Source.PTA:
		return PROCEDURE_RESPONSE_TYPES
	return ACTIVITY_RESPONSE_TYPES


def renderUserPrompt(contexts:list[SymbolicContext], responseTypes:list[ResponseType], nPairs:int) -> str:
	blocks = [f'Context type {i}: {ctx.kind.value}\n{ctx.body}' for i, ctx in enumerate(contexts, start=1)]
	guide = '\n'.join(f'Response type {i}: {rt.value} - {RESPONSE_TYPE_GUIDE[rt]}' for i, rt in enumerate(responseTypes, start=1))
	return '\n\n'.join(blocks + [
		guide,
		f'Write exactly {nPairs} question and answer pairs, covering the response types above as evenly as possible.',
		LAYOUT_INSTRUCTION
	])


def buildGenerationRequest(
	contexts:list[SymbolicContext],
	responseTypes:list[ResponseType],
	nPairs:int=DEFAULT_N_PAIRS,
	modelName:str=DEFAULT_GENERATION_MODEL,
	temperature:float=DEFAULT_GENERATION_TEMPERATURE,
	maxTokens:int=DEFAULT_MAX_TOKENS
) -> ChatRequest:
	"""Generation prompt for one clip, a pure function of its arguments

	Args:
		contexts (list[SymbolicContext]): Rendered symbolic contexts of the clip
		responseTypes (list[ResponseType]): Types the pairs are drawn from
		nPairs (int, optional): Number of question and answer pairs. Defaults to 11.
		modelName (str, optional): Generator model. Defaults to 'gpt-4'.
		temperature (float, optional): Decoding temperature. Defaults to 0.7.
		maxTokens (int, optional): Completion budget. Defaults to 2048.

	Raises:
		ArgumentRange: No context, no response type or nPairs < 1

	Returns:
		ChatRequest: System and user message pair
	"""
	if len(contexts) == 0:
		raise ArgumentRange('a generation request needs at least one context')
	if len(responseTypes) == 0:
		raise ArgumentRange('a generation request needs at least one response type')
	if nPairs < 1:
		raise ArgumentRange(f'nPairs must be positive, got {nPairs}')

	system = f'[{PROMPT_VERSION}]\n{SYSTEM_PROMPT}'
	return systemUserRequest(modelName, system, renderUserPrompt(contexts, responseTypes, nPairs), temperature, maxTokens)
