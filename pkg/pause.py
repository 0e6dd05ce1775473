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

from asyncio import sleep


def backoffDelay(attempt:int, baseSeconds:float=1.0) -> float:
	"""Delay before retry number `attempt` (0 based), doubling from baseSeconds

	Args:
		attempt (int): Retry counter starting at 0
		baseSeconds (float, optional): First delay. Defaults to 1.0.

	Returns:
		float: Seconds to wait
	"""
	return baseSeconds * (2 ** max(attempt, 0))


async def pauseBackoff(attempt:int, baseSeconds:float=1.0) -> bool:
	"""Pause program execution in an async way before the next retry

	Args:
		attempt (int): Retry counter starting at 0
		baseSeconds (float, optional): First delay. Defaults to 1.0.

	Raises:
		asyncio.CancelledError: The waiting task was cancelled

	Returns:
		bool: True if sleep finished, otherwise False
	"""
	try:
		delay = backoffDelay(attempt, baseSeconds)
		if delay > 0:
			await sleep(delay)
		return True
	except Exception:
		pass
	return False
