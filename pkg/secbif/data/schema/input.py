"""
Input schemas for secbif.

These are the schemas used to validate JSON documents before they become domain objects.
"""

import dataclasses
import math
import types
import typing

import secbif.data.schema.base
import secbif.errors

TERM_POWERS = {
    'hopf': ('p0', 'p1', 'p3'),
    'poincare': ('e2', 'e2y', 'e3', 'e3y'),
}


def _require_finite(name: str, value: typing.Any, positive: bool = False) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f'{name} must be a number, got {value!r}')
    if not math.isfinite(value):
        raise ValueError(f'{name} must be finite, got {value!r}')
    if positive and not value > 0:
        raise ValueError(f'{name} must be positive, got {value!r}')


def _require_optional_finite(name: str, value: typing.Any) -> None:
    if value is not None:
        _require_finite(name, value)


def _require_terms(value: typing.Any, powers: tuple[str, ...]) -> None:
    if not isinstance(value, list) or not value:
        raise ValueError('terms must be a non-empty list')
    for index, term in enumerate(value):
        if not isinstance(term, dict):
            raise ValueError(f'terms[{index}] must be an object')
        if missing := [key for key in (*powers, 'coef') if key not in term]:
            raise ValueError(f'terms[{index}] is missing {", ".join(missing)}')
        for power in powers:
            if isinstance(term[power], bool) or not isinstance(term[power], int) or term[power] < 0:
                raise ValueError(f'terms[{index}].{power} must be a non-negative integer, got {term[power]!r}')
        _require_finite(f'terms[{index}].coef', term['coef'])


@dataclasses.dataclass
class InputSchema(secbif.data.schema.base.Schema):
    """
    InputSchema Class

    The schema that is used to validate incoming documents.
    """

    @classmethod
    def validate_document(cls, document: typing.Any) -> None:
        """
        Validate the document using validators defined on the schema.
        These validators follow the following naming pattern: "_<field_name>_validator"

        Args:
            document (typing.Any): The parsed JSON document.

        Raises:
            ValueError: If a validator is not a valid callable.
            secbif.errors.SchemaViolationError: If the document is not an object or a validator rejects a field.
        """

        if not isinstance(document, dict):
            raise secbif.errors.SchemaViolationError(
                f'{cls.__name__}: expected a JSON object, got {type(document).__name__}'
            )
        for field in cls.schema_fields():
            validator_name = f'_{field}_validator'
            validator = getattr(cls, validator_name, None)
            if not isinstance(validator, types.FunctionType):
                raise ValueError(f'Validator: {validator_name} is not callable')
            try:
                validator(document.get(field))
            except ValueError as invalid_field:
                raise secbif.errors.SchemaViolationError(f'{cls.__name__}: {invalid_field}') from invalid_field

    @classmethod
    def to_dict(cls, document: dict) -> dict:
        """
        Restrict the document to the schema fields.

        Returns:
            dict: The known fields, None where absent.
        """

        return {
            field: document.get(field)
            for field in cls.schema_fields()
        }


class ParamsSchema(InputSchema):
    _m0_: float
    _m2_: float
    _m3_: float
    _a2_: float
    _a3_: float
    _G_: float
    _AMD_: float

    @staticmethod
    def _m0_validator(value: typing.Any) -> None:
        _require_finite('m0', value, positive=True)

    @staticmethod
    def _m2_validator(value: typing.Any) -> None:
        _require_finite('m2', value, positive=True)

    @staticmethod
    def _m3_validator(value: typing.Any) -> None:
        _require_finite('m3', value, positive=True)

    @staticmethod
    def _a2_validator(value: typing.Any) -> None:
        _require_finite('a2', value, positive=True)

    @staticmethod
    def _a3_validator(value: typing.Any) -> None:
        _require_finite('a3', value, positive=True)

    @staticmethod
    def _G_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('G', value, positive=True)

    @staticmethod
    def _AMD_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('AMD', value)
        if value < 0:
            raise ValueError(f'AMD must be non-negative, got {value!r}')


class QuadModelSchema(InputSchema):
    """
    QuadModelSchema Class

    A quadratic Hopf model. The F terms are optional and default to zero, sigma0_max is the AMD bound
    used by the portrait feasibility check.
    """

    _A_: float
    _B_: float
    _C_: float
    _D1_: float
    _Delta1_: float
    _D3_: float
    _Delta3_: float
    _F0_: float | None
    _F1_: float | None
    _F2_: float | None
    _sigma0_max_: float | None

    @staticmethod
    def _A_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('A', value)

    @staticmethod
    def _B_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('B', value)

    @staticmethod
    def _C_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('C', value)

    @staticmethod
    def _D1_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('D1', value)

    @staticmethod
    def _Delta1_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('Delta1', value)

    @staticmethod
    def _D3_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('D3', value)

    @staticmethod
    def _Delta3_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('Delta3', value)

    @staticmethod
    def _F0_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_optional_finite('F0', value)

    @staticmethod
    def _F1_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_optional_finite('F1', value)

    @staticmethod
    def _F2_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_optional_finite('F2', value)

    @staticmethod
    def _sigma0_max_validator(value: typing.Any) -> None:
        if value is not None:
            _require_finite('sigma0_max', value, positive=True)


class PolyModelSchema(InputSchema):
    _terms_: list
    _sigma0_max_: float | None

    @staticmethod
    def _terms_validator(value: typing.Any) -> None:
        _require_terms(value, TERM_POWERS['hopf'])

    @staticmethod
    def _sigma0_max_validator(value: typing.Any) -> None:
        if value is not None:
            _require_finite('sigma0_max', value, positive=True)


class PoincareModelSchema(InputSchema):
    _terms_: list

    @staticmethod
    def _terms_validator(value: typing.Any) -> None:
        _require_terms(value, TERM_POWERS['poincare'])


class CoefficientsSchema(InputSchema):
    """
    CoefficientsSchema Class

    Octupole normal-form coefficients before rotation. Atil defaults to zero, a and b are informative.
    """

    _Atil_: float | None
    _Btil_: float
    _Ctil_: float
    _D1til_: float
    _Delta1til_: float
    _D3til_: float
    _Delta3til_: float
    _a_: float | None
    _b_: float | None

    @staticmethod
    def _Atil_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_optional_finite('Atil', value)

    @staticmethod
    def _Btil_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('Btil', value)

    @staticmethod
    def _Ctil_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('Ctil', value)

    @staticmethod
    def _D1til_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('D1til', value)

    @staticmethod
    def _Delta1til_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('Delta1til', value)

    @staticmethod
    def _D3til_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('D3til', value)

    @staticmethod
    def _Delta3til_validator(value: typing.Any) -> None:  # pylint: disable=invalid-name
        _require_finite('Delta3til', value)

    @staticmethod
    def _a_validator(value: typing.Any) -> None:
        _require_optional_finite('a', value)

    @staticmethod
    def _b_validator(value: typing.Any) -> None:
        _require_optional_finite('b', value)
