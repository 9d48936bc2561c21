"""
Output processors: rows collected from records and rendered as CSV or JSON.
"""

import csv
import dataclasses
import io
import json
import typing

import secbif.data.critical
import secbif.data.processor.base
import secbif.data.schema.output
import secbif.logic.flow
import secbif.logic.oracle

OUTPUT_FORMATS = ('csv', 'json')


def _cell(value: typing.Any) -> typing.Any:
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return ';'.join(str(_cell(item)) for item in value)
    return value


@dataclasses.dataclass
class OutputProcessor(secbif.data.processor.base.Processor):
    """
    OutputProcessor Class

    Provides a common interface for report sections. Each accepted record is exploded into items,
    every item is transformed by the schema into a row, and valid rows are kept in order.

    Attributes:
        rows (list[dict]): The rows sent so far.
    """

    schema: typing.ClassVar[type[secbif.data.schema.output.OutputSchema]]
    rows: list[dict] = dataclasses.field(default_factory=list)

    @staticmethod
    def filter(record: typing.Any) -> bool:
        """
        Check if a record belongs in this section.
        Must be implemented by every concrete output processor.

        Args:
            record (typing.Any): The record to check.

        Returns:
            bool: True if the record qualifies, False otherwise.

        Raises:
            NotImplementedError: If not implemented.
        """

        raise NotImplementedError(f'{__name__}.filter() must be implemented!')

    @staticmethod
    def explode(record: typing.Any) -> typing.Iterable[typing.Any]:
        return (record,)

    def send(self, record: typing.Any) -> None:
        """
        Transform a record into rows and keep the valid ones.

        Args:
            record (typing.Any): A record accepted by filter().
        """

        for item in self.explode(record):
            transformed_message = self.schema.transform(item)
            self.logger.debug(f'Sending row: {transformed_message} to {self.name}')
            if self.schema.validate(message=transformed_message):
                self.rows.append(transformed_message)
            else:
                self.logger.warning(f'Invalid message: {item}')

    def render(self, output_format: str) -> str:
        """
        The collected rows as a document.

        Args:
            output_format (str): 'csv' or 'json'.

        Returns:
            str: The document. CSV starts with the header row even when there are no rows.

        Raises:
            ValueError: If the format is unknown.
        """

        if output_format == 'json':
            return json.dumps(self.rows, indent=2) + '\n'
        if output_format != 'csv':
            raise ValueError(f'Unsupported output format: {output_format} (expected one of {", ".join(OUTPUT_FORMATS)})')
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        header = [*self.schema.schema_fields()]
        writer.writerow(header)
        for row in self.rows:
            writer.writerow([_cell(row[field]) for field in header])
        return buffer.getvalue()


@dataclasses.dataclass
class CensusOutput(OutputProcessor):
    name = 'census'
    schema = secbif.data.schema.output.CensusRowSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, secbif.data.critical.Census)

    @staticmethod
    def explode(record: secbif.data.critical.Census) -> typing.Iterable[secbif.data.critical.CriticalPoint]:
        return record.points


@dataclasses.dataclass
class ThresholdOutput(OutputProcessor):
    name = 'thresholds'
    schema = secbif.data.schema.output.ThresholdRowSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, secbif.data.critical.Threshold)


@dataclasses.dataclass
class EventOutput(OutputProcessor):
    name = 'events'
    schema = secbif.data.schema.output.EventSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, secbif.data.critical.BifurcationEvent)


@dataclasses.dataclass
class ReducedTrajectoryOutput(OutputProcessor):
    name = 'trajectory'
    schema = secbif.data.schema.output.ReducedRowSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, secbif.logic.flow.ReducedTrajectory)

    @staticmethod
    def explode(record: secbif.logic.flow.ReducedTrajectory) -> typing.Iterable[tuple[float, ...]]:
        return record.rows()


@dataclasses.dataclass
class PoincareTrajectoryOutput(OutputProcessor):
    name = 'trajectory'
    schema = secbif.data.schema.output.PoincareRowSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, secbif.logic.flow.PoincareTrajectory)

    @staticmethod
    def explode(record: secbif.logic.flow.PoincareTrajectory) -> typing.Iterable[tuple[float, ...]]:
        return record.rows()


@dataclasses.dataclass
class SectionOutput(OutputProcessor):
    """
    SectionOutput Class

    Surface-of-section crossings. Records are (orbit index, list of SectionPoint) pairs.
    """

    name = 'section'
    schema = secbif.data.schema.output.SectionRowSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return (
            isinstance(record, tuple)
            and len(record) == 2
            and all(isinstance(point, secbif.logic.flow.SectionPoint) for point in record[1])
        )

    @staticmethod
    def explode(record: tuple[int, list[secbif.logic.flow.SectionPoint]]) -> typing.Iterable[tuple]:
        orbit, points = record
        return ((orbit, point) for point in points)


@dataclasses.dataclass
class VertexOutput(OutputProcessor):
    name = 'vertices'
    schema = secbif.data.schema.output.VertexRowSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, secbif.logic.flow.Portrait)

    @staticmethod
    def explode(record: secbif.logic.flow.Portrait) -> typing.Iterable[tuple]:
        return (
            (index, curve, vertex)
            for index, curve in enumerate(record.curves)
            for vertex in curve.points
        )


@dataclasses.dataclass
class DomainOutput(OutputProcessor):
    name = 'domain'
    schema = secbif.data.schema.output.DomainRowSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, secbif.data.critical.DomainLimits)

    @staticmethod
    def explode(record: secbif.data.critical.DomainLimits) -> typing.Iterable[tuple[float, float, float]]:
        return zip(record.sigma0_grid, record.E_L, record.E_R)


@dataclasses.dataclass
class OracleOutput(OutputProcessor):
    name = 'oracle'
    schema = secbif.data.schema.output.OracleRowSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, secbif.logic.oracle.OracleComparison)


@dataclasses.dataclass
class DiscrepancyOutput(OracleOutput):
    name = 'discrepancies'

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, secbif.logic.oracle.OracleComparison) and not record.agree


@dataclasses.dataclass
class FlagOutput(OutputProcessor):
    name = 'flags'
    schema = secbif.data.schema.output.FlagRowSchema

    @staticmethod
    def filter(record: typing.Any) -> bool:
        return isinstance(record, str)
