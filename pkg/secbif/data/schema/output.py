"""
Output schemas for secbif.

Each schema turns one record into a flat row and checks the row against its declared fields.
"""

import dataclasses
import typing

import secbif.data.critical
import secbif.data.schema.base
import secbif.logic.flow
import secbif.logic.oracle


@dataclasses.dataclass
class OutputSchema(secbif.data.schema.base.Schema):
    """
    OutputSchema Class

    The schema that is used to construct and validate output rows.
    """

    @staticmethod
    def transform(record: typing.Any) -> dict:
        """
        Transform the record into a row of this schema.

        Must be implemented by every concrete row schema.

        Args:
            record (typing.Any): The record to be transformed.

        Raises:
            NotImplementedError: If the method is not implemented.
        """

        raise NotImplementedError(f'{__name__}.transform() must be implemented!')

    @classmethod
    def validate(cls, message: dict) -> bool:
        """
        Validate the outgoing row using the fields declared on the schema.

        Args:
            message (dict): The row to be validated.

        Returns:
            bool: True if the row is valid, False otherwise.
        """

        for field_name, field_type in cls.schema_fields().items():
            if field_name not in message:
                cls.logger.warning(f'Missing field: {field_name}')
                return False
            if not isinstance(message[field_name], field_type):
                cls.logger.warning(f'Invalid field type: {field_name} ({field_type})')
                return False
        return True


class CensusRowSchema(OutputSchema):
    _sigma0_: float
    _label_: str
    _kind_: str
    _tangency_: str | None
    _stability_: str
    _sigma1_: float
    _sigma2_: float
    _sigma3_: float
    _energy_: float

    @staticmethod
    def transform(record: secbif.data.critical.CriticalPoint) -> dict:
        location = record.location
        return {
            'sigma0': float(location.sigma0),
            'label': record.label,
            'kind': record.kind.value,
            'tangency': record.tangency.value if record.tangency else None,
            'stability': record.stability.value,
            'sigma1': float(location.sigma1),
            'sigma2': float(location.sigma2),
            'sigma3': float(location.sigma3),
            'energy': float(record.energy),
        }


class ThresholdRowSchema(OutputSchema):
    _kind_: str
    _sigma0_: float
    _residual_: float
    _method_: str

    @staticmethod
    def transform(record: secbif.data.critical.Threshold) -> dict:
        return {
            'kind': record.kind.value,
            'sigma0': float(record.sigma0),
            'residual': float(record.residual),
            'method': record.method,
        }


class EventSchema(OutputSchema):
    """
    EventSchema Class

    A bifurcation event. Stability changes are written as [label, before, after] triples.
    """

    _type_: str
    _sigma0_: float
    _sigma0_low_: float
    _sigma0_high_: float
    _participants_: list
    _stability_changes_: list
    _energies_: list

    @staticmethod
    def transform(record: secbif.data.critical.BifurcationEvent) -> dict:
        low, high = record.sigma0_bracket
        return {
            'type': record.type.value,
            'sigma0': float(record.sigma0),
            'sigma0_low': float(low),
            'sigma0_high': float(high),
            'participants': list(record.participants),
            'stability_changes': [list(change) for change in record.stability_changes],
            'energies': [float(energy) for energy in record.energies],
        }


class ReducedRowSchema(OutputSchema):
    _t_: float
    _sigma0_: float
    _sigma1_: float
    _sigma2_: float
    _sigma3_: float
    _Z_: float

    @staticmethod
    def transform(record: tuple[float, ...]) -> dict:
        return dict(zip(('t', 'sigma0', 'sigma1', 'sigma2', 'sigma3', 'Z'), record))


class PoincareRowSchema(OutputSchema):
    _t_: float
    _X2_: float
    _Y2_: float
    _X3_: float
    _Y3_: float
    _H_: float

    @staticmethod
    def transform(record: tuple[float, ...]) -> dict:
        return dict(zip(('t', 'X2', 'Y2', 'X3', 'Y3', 'H'), record))


class SectionRowSchema(OutputSchema):
    _orbit_: int
    _t_: float
    _X2_: float
    _Y2_: float
    _X3_: float
    _energy_residual_: float

    @staticmethod
    def transform(record: tuple[int, secbif.logic.flow.SectionPoint]) -> dict:
        orbit, point = record
        return {
            'orbit': orbit,
            't': float(point.t),
            'X2': float(point.X2),
            'Y2': float(point.Y2),
            'X3': float(point.X3),
            'energy_residual': float(point.energy_residual),
        }


class VertexRowSchema(OutputSchema):
    _level_: float
    _curve_: int
    _closed_: bool
    _X2_: float
    _Y2_: float

    @staticmethod
    def transform(record: tuple[int, secbif.logic.flow.PortraitCurve, typing.Any]) -> dict:
        index, curve, (x2, y2) = record
        return {
            'level': float(curve.level),
            'curve': index,
            'closed': bool(curve.closed),
            'X2': float(x2),
            'Y2': float(y2),
        }


class DomainRowSchema(OutputSchema):
    _sigma0_: float
    _E_L_: float
    _E_R_: float

    @staticmethod
    def transform(record: tuple[float, float, float]) -> dict:
        sigma0, lower, upper = record
        return {'sigma0': float(sigma0), 'E_L': float(lower), 'E_R': float(upper)}


class OracleRowSchema(OutputSchema):
    _sigma0_: float
    _numeric_count_: int
    _oracle_count_: int
    _quartic_count_: int | None
    _bruteforce_count_: int | None
    _max_angle_error_: float
    _agree_: bool

    @staticmethod
    def transform(record: secbif.logic.oracle.OracleComparison) -> dict:
        return {
            'sigma0': float(record.sigma0),
            'numeric_count': record.numeric_count,
            'oracle_count': record.oracle_count,
            'quartic_count': record.quartic_count,
            'bruteforce_count': record.bruteforce_count,
            'max_angle_error': float(record.max_angle_error),
            'agree': bool(record.agree),
        }


class FlagRowSchema(OutputSchema):
    _flag_: str

    @staticmethod
    def transform(record: str) -> dict:
        return {'flag': record}
