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

import hashlib
import simplejson as json
from enum import Enum
from typing import Literal
from pydantic import BaseModel, ConfigDict, Field, field_validator


class FinishReason(str, Enum):
	STOP = 'stop'
	LENGTH = 'length'
	CONTENT_FILTER = 'content_filter'
	TOOL_CALLS = 'tool_calls'
	UNKNOWN = 'unknown'


class ChatMessage(BaseModel):
	model_config = ConfigDict(frozen=True)

	role:Literal['system', 'user', 'assistant']
	content:str


class ChatRequest(BaseModel):
	"""Provider independent chat completion request, the content hash of its canonical form is the cache key
	"""
	model_config = ConfigDict(frozen=True)

	model_name:str
	messages:tuple[ChatMessage, ...] = Field(min_length=1)
	temperature:float = Field(default=0.0, ge=0.0)
	max_tokens:int = Field(default=2048, gt=0)

	def canonical(self) -> str:
		return json.dumps(self.model_dump(mode='json'), sort_keys=True, separators=(',', ':'), ensure_ascii=False)

	def cacheKey(self) -> str:
		return hashlib.sha256(self.canonical().encode('utf-8')).hexdigest()

	def toWire(self) -> dict:
		return {
			'model': self.model_name,
			'messages': [{'role': m.role, 'content': m.content} for m in self.messages],
			'temperature': self.temperature,
			'max_tokens': self.max_tokens
		}


class TokenUsage(BaseModel):
	model_config = ConfigDict(frozen=True)

	prompt_tokens:int = 0
	completion_tokens:int = 0
	total_tokens:int = 0


class ChatResponse(BaseModel):
	model_config = ConfigDict(frozen=True)

	content:str
	finish_reason:FinishReason = FinishReason.STOP
	usage:TokenUsage = TokenUsage()

	@field_validator('finish_reason', mode='before')
	@classmethod
	def unknownFinishReason(cls, value):
		if value == None:
			return FinishReason.UNKNOWN
		try:
			return FinishReason(value)
		except ValueError:
			return FinishReason.UNKNOWN


def systemUserRequest(modelName:str, system:str, user:str, temperature:float, maxTokens:int=2048) -> ChatRequest:
	return ChatRequest(
		model_name=modelName,
		messages=(ChatMessage(role='system', content=system), ChatMessage(role='user', content=user)),
		temperature=temperature,
		max_tokens=maxTokens
	)
