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

from decimal import Decimal, ROUND_HALF_UP

MAX_FRACTION_DIGITS = 3
_QUANTUM = Decimal(1).scaleb(-MAX_FRACTION_DIGITS)


def formatNumber(value:float, keepPointZero:bool=False) -> str:
	"""Canonical decimal rendering: at most 3 fractional digits, half up, trailing zeros trimmed

	Args:
		value (float): Number to render
		keepPointZero (bool, optional): Render integral values as '5.0' instead of '5'. Defaults to False.

	Returns:
		str: e.g. '0.57', '3.66', '12' or '5.0'
	"""
	d = Decimal(repr(float(value))).quantize(_QUANTUM, rounding=ROUND_HALF_UP)
	if d == 0:
		d = Decimal(0)
	s = format(d, 'f')
	if '.' in s:
		s = s.rstrip('0').rstrip('.')
	if keepPointZero and '.' not in s:
		s += '.0'
	return s


def formatTime(value:float, integerTimes:bool) -> str:
	return formatNumber(value, keepPointZero=not integerTimes)


def formatBoundary(value:float, clipLength:float) -> str:
	"""Clip relative boundary, clip edges render bare ('<0,0.76>', '<13.86,16>'), inner times keep '.0'
	"""
	if abs(value) < 1e-9 or abs(value - clipLength) < 1e-9:
		return formatNumber(value)
	return formatNumber(value, keepPointZero=True)
