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

import pandas as pd
from io import StringIO
from decimal import Decimal
from dataclasses import dataclass

from ..errors import EmptyInput, ArgumentRange
from .scores import JudgeScore, ScoreRecord, METRICS, METRIC_FIELDS, roundCents, meanOf

REPORT_COLUMNS = ['Model', *METRICS, 'Average']


@dataclass(frozen=True)
class ModelAggregate:
	"""Per metric means of one model and their overall average, all rounded to 2 decimals
	"""
	model:str
	means:tuple
	average:Decimal
	nScores:int = 0

	@staticmethod
	def fromMeans(model:str, means, nScores:int=0) -> 'ModelAggregate':
		means = tuple(roundCents(Decimal(str(m))) for m in means)
		if len(means) != len(METRICS):
			raise ArgumentRange(f'{model}: expected {len(METRICS)} metric means, got {len(means)}')
		return ModelAggregate(model, means, overallAverage(means), nScores)

	def mean(self, metric:str) -> Decimal:
		return self.means[METRICS.index(metric)]


def overallAverage(means) -> Decimal:
	"""Mean of the five per metric means, rounded half up to 2 decimals
	"""
	if len(means) == 0:
		raise EmptyInput('no metric means to average')
	return roundCents(meanOf(means))


def aggregate(scores:list[JudgeScore]) -> tuple[tuple, Decimal]:
	"""Per metric means and overall average of a score list

	Args:
		scores (list[JudgeScore]): Scores of one model

	Raises:
		EmptyInput: No scores

	Returns:
		tuple[tuple, Decimal]: (five means rounded to 2 decimals, overall average of the rounded means)
	"""
	if len(scores) == 0:
		raise EmptyInput('no scores to aggregate')
	means = tuple(roundCents(meanOf([s.values()[i] for s in scores])) for i in range(len(METRICS)))
	return means, overallAverage(means)


def aggregateRecords(records:list[ScoreRecord]) -> list[ModelAggregate]:
	"""Group score records by model and aggregate each group
	"""
	if len(records) == 0:
		raise EmptyInput('no score records')
	byModel = {}
	for r in records:
		byModel.setdefault(r.model, []).append(r.score())
	result = []
	for model in sorted(byModel.keys()):
		means, average = aggregate(byModel[model])
		result.append(ModelAggregate(model, means, average, len(byModel[model])))
	return result


def reportFrame(aggregates:list[ModelAggregate]) -> pd.DataFrame:
	"""Report rows ascending by average, ties broken by accuracy, then model name
	"""
	if len(aggregates) == 0:
		raise EmptyInput('no models to report')
	ordered = sorted(aggregates, key=lambda a: (a.average, a.mean('Accuracy'), a.model))
	rows = [[a.model, *(f'{m:.2f}' for m in a.means), f'{a.average:.2f}'] for a in ordered]
	return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def renderReport(aggregates:list[ModelAggregate]) -> str:
	return reportFrame(aggregates).to_string(index=False) + '\n'


def renderReportCsv(aggregates:list[ModelAggregate]) -> str:
	return reportFrame(aggregates).to_csv(index=False, lineterminator='\n')


def loadMeansTable(text:str) -> list[ModelAggregate]:
	"""Read per model metric means from CSV text with a model column and one column per metric

	Column names are matched case insensitively, 'Level of Detail' is accepted for Detail.
	"""
	frame = pd.read_csv(StringIO(text), dtype=str)
	columns = {c.strip().lower(): c for c in frame.columns}
	columns.setdefault('detail', columns.get('level of detail'))
	missing = [m for m in ['model', *METRIC_FIELDS] if columns.get(m) == None]
	if len(missing) > 0:
		raise ArgumentRange(f'means table lacks column(s) {", ".join(missing)}')
	return [
		ModelAggregate.fromMeans(row[columns['model']].strip(), [row[columns[f]].strip() for f in METRIC_FIELDS])
		for _, row in frame.iterrows()
	]
