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

class EagleError(Exception):
	"""Base class of every error raised by the toolkit
	"""


class ArgumentRange(EagleError):
	pass


class UsageError(EagleError):
	pass


# ingest

class MalformedRow(EagleError):
	def __init__(self, lineNo:int, reason:str=''):
		self.lineNo = lineNo
		super().__init__(f'malformed row at line {lineNo}{": " + reason if reason else ""}')


class IntervalError(EagleError):
	pass


class CoordinateRange(EagleError):
	pass


class NonMonotonicTime(EagleError):
	pass


class DuplicateVideo(EagleError):
	pass


class RecipeMismatch(EagleError):
	pass


# clipper / trajectory

class NoOverlap(EagleError):
	pass


class OutOfRange(EagleError):
	pass


class EmptyTrajectory(EagleError):
	pass


# promptgen

class UnknownStep(EagleError):
	pass


# gateway

class AuthMissing(EagleError):
	pass


class RateLimited(EagleError):
	pass


class ReplayMiss(EagleError):
	pass


class TransportError(EagleError):
	pass


class GenerationError(EagleError):
	pass


# dataset

class LayoutError(EagleError):
	def __init__(self, offset:int, reason:str):
		self.offset = offset
		self.reason = reason
		super().__init__(f'layout error at byte {offset}: {reason}')


class DanglingReference(EagleError):
	pass


class SchemaVersionMismatch(EagleError):
	def __init__(self, found, expected, lineNo:int=None):
		self.found = found
		self.expected = expected
		self.lineNo = lineNo
		where = f' at line {lineNo}' if lineNo != None else ''
		super().__init__(f'schema version {found} does not match {expected}{where}')


class MalformedLine(EagleError):
	def __init__(self, lineNo:int, reason:str=''):
		self.lineNo = lineNo
		super().__init__(f'malformed line {lineNo}{": " + reason if reason else ""}')


# judge

class MissingMetric(EagleError):
	def __init__(self, name:str):
		self.name = name
		super().__init__(f'missing metric {name}')


class MetricOutOfRange(OutOfRange):
	def __init__(self, name:str, value):
		self.name = name
		self.value = value
		super().__init__(f'metric {name} out of range: {value}')


class EmptyInput(EagleError):
	pass
