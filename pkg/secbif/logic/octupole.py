"""
Quadratic normal form of the octupole secular Hamiltonian, truncated at fourth order in the eccentricities.

The coefficients are closed-form functions of the masses, semi-major axes and AMD of the system.
Additive constants and terms depending only on sigma0 are dropped.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import typing

import secbif.data.hamiltonian
import secbif.data.state
import secbif.errors

FREQUENCY_TOLERANCE = 1e-14

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, kw_only=True)
class OctupoleCoefficients:
    """
    OctupoleCoefficients Class

    Coefficients of Atil s1^2 + Btil s1 s3 + Ctil s3^2 + (D1til s0 + Delta1til) s1 + (D3til s0 + Delta3til) s3.

    Attributes:
        Atil (float): Always zero for this normal form.
        Btil (float): Mixed quadratic coefficient.
        Ctil (float): sigma3^2 coefficient.
        D1til (float): Slope in sigma0 of the sigma1 coefficient.
        Delta1til (float): Offset of the sigma1 coefficient.
        D3til (float): Slope in sigma0 of the sigma3 coefficient.
        Delta3til (float): Offset of the sigma3 coefficient.
        a (float | None): First secular frequency, None when the coefficients were read from a document without it.
        b (float | None): Second secular frequency.
    """

    Atil: float = 0.0  # pylint: disable=invalid-name
    Btil: float  # pylint: disable=invalid-name
    Ctil: float  # pylint: disable=invalid-name
    D1til: float  # pylint: disable=invalid-name
    Delta1til: float  # pylint: disable=invalid-name
    D3til: float  # pylint: disable=invalid-name
    Delta3til: float  # pylint: disable=invalid-name
    a: float | None = None
    b: float | None = None

    def __post_init__(self) -> None:
        for field in dataclasses.fields(self):
            if (value := getattr(self, field.name)) is not None and not math.isfinite(value):
                raise ValueError(f'Non-finite octupole coefficient {field.name}: {value}')

    @classmethod
    def from_mapping(cls, document: typing.Mapping[str, typing.Any]) -> OctupoleCoefficients:
        return cls(**{
            field.name: None if document.get(field.name) is None else float(document[field.name])
            for field in dataclasses.fields(cls)
            if field.name in document
        })

    def to_mapping(self) -> dict[str, float]:
        return {
            field.name: value
            for field in dataclasses.fields(self)
            if (value := getattr(self, field.name)) is not None
        }


def secular_frequencies(params: secbif.data.state.SystemParams) -> tuple[float, float]:
    m0, m2, m3, a2, a3, G, amd = (  # pylint: disable=invalid-name
        params.m0, params.m2, params.m3, params.a2, params.a3, params.G, params.AMD,
    )
    prefactor = -3 * math.sqrt(G) / (4 * a3 ** (7 / 2) * math.sqrt(m0))
    amd_prefactor = 3 * a2 * amd / (4 * a3 ** 4 * m0 * m2 * m3)
    mixed = 6 * math.sqrt(a2 * a3) * m2 * m3
    a = (
        prefactor * (2 * a2 ** (3 / 2) * math.sqrt(a3) * m3 + a2 ** 2 * m2)
        + amd_prefactor * (mixed + a2 * m2 ** 2 + 5 * a3 * m3 ** 2)
    )
    b = (
        prefactor * (a2 ** (3 / 2) * math.sqrt(a3) * m3 + 2 * a2 ** 2 * m2)
        + amd_prefactor * (mixed + 5 * a2 * m2 ** 2 + a3 * m3 ** 2)
    )
    return a, b


def octupole_coefficients(params: secbif.data.state.SystemParams) -> OctupoleCoefficients:
    """
    Evaluate the normal-form coefficients of the octupole model.

    Args:
        params (secbif.data.state.SystemParams): The planetary system.

    Returns:
        OctupoleCoefficients: The coefficients and the secular frequencies a and b.

    Raises:
        secbif.errors.SecularFrequencyDegenerateError: If a = 0 or a + b = 0.
    """

    m0, m2, m3, a2, a3, G, amd = (  # pylint: disable=invalid-name
        params.m0, params.m2, params.m3, params.a2, params.a3, params.G, params.AMD,
    )
    a, b = secular_frequencies(params)
    frequency_scale = abs(a) + abs(b)
    if a == 0 or abs(a) <= FREQUENCY_TOLERANCE * frequency_scale:
        raise secbif.errors.SecularFrequencyDegenerateError(f'Secular frequency a vanishes (a={a}, b={b})')
    if abs(a + b) <= FREQUENCY_TOLERANCE * frequency_scale:
        raise secbif.errors.SecularFrequencyDegenerateError(f'Secular frequencies cancel (a={a}, b={b})')

    weighted = math.sqrt(a2) * m2 + math.sqrt(a3) * m3
    ratio = a2 / a3
    mass_ratio = m3 / m2
    polynomial = math.sqrt(ratio) * mass_ratio + ratio / 2 + mass_ratio ** 2 / 2
    cross_ratio = math.sqrt(a2 * m2 / (a3 * m3))
    frequency_ratio = b / a + 3
    # common factor of the (a + b) terms in Btil, D1til and Delta1til
    skew = a2 ** (13 / 4) * weighted ** 2 / (256 * a3 ** (33 / 4) * m0 ** 2 * m2 ** (3 / 2) * math.sqrt(m3) * (a + b))

    coefficients = OctupoleCoefficients(
        Atil=0.0,
        Ctil=(
            -2025 * a2 ** (9 / 2) * amd * weighted ** 2 / (256 * a3 ** (19 / 2) * m2 * m3 * m0 ** 2 * (a + b))
            + 225 * a2 ** 2 * amd / (64 * a3 ** 6 * m0 ** 2 * a) * polynomial
            + 3 * a2 / (8 * a3 ** 3 * m0) * (1.5 * math.sqrt(ratio) - a2 * m2 / (a3 * m3) + m3 / (4 * m2))
        ),
        Btil=(
            675 * amd * skew * frequency_ratio
            + 5 * a2 ** (9 / 4) / (128 * a3 ** (17 / 4) * m0) * (57 * cross_ratio - 15 * math.sqrt(mass_ratio))
        ),
        D1til=(
            2025 * amd * skew * frequency_ratio
            - 105 * a2 ** (9 / 4) / (128 * a3 ** (17 / 4) * m0) * (9 * cross_ratio + 7 * math.sqrt(mass_ratio))
        ),
        Delta1til=(
            -675 * amd ** 2 * skew * frequency_ratio
            + 165 * a2 ** (9 / 4) * amd * weighted / (32 * a3 ** (19 / 4) * m0 * math.sqrt(m2) * math.sqrt(m3))
            - 15 * a2 ** (11 / 4) * math.sqrt(G) * math.sqrt(m2) * math.sqrt(m3) / (16 * a3 ** (17 / 4) * math.sqrt(m0))
        ),
        D3til=(
            675 * a2 ** 2 * amd / (32 * a3 ** 6 * m0 ** 2 * a) * polynomial
            + 3 * a2 / (4 * a3 ** 3 * m0) * (3 * a2 * m2 / (a3 * m3) - 7 * m3 / (4 * m2))
        ),
        Delta3til=(
            3 * a2 ** (3 / 2) * math.sqrt(G) / (8 * a3 ** (7 / 2) * math.sqrt(m0)) * (math.sqrt(a2) * m2 - math.sqrt(a3) * m3)
            - 225 * a2 ** 2 * amd ** 2 / (32 * a3 ** 6 * m0 ** 2 * a) * polynomial
            + 3 * a2 * amd / (2 * a3 ** 3 * m0) * (m3 / m2 - a2 * m2 / (a3 * m3))
        ),
        a=a,
        b=b,
    )
    LOGGER.info(f'Octupole coefficients: {coefficients.to_mapping()}')
    return coefficients


def octupole_to_quad(coefficients: OctupoleCoefficients) -> secbif.data.hamiltonian.QuadHopfHamiltonian:
    return secbif.data.hamiltonian.QuadHopfHamiltonian(
        A=coefficients.Atil,
        B=coefficients.Btil,
        C=coefficients.Ctil,
        D1=coefficients.D1til,
        Delta1=coefficients.Delta1til,
        D3=coefficients.D3til,
        Delta3=coefficients.Delta3til,
    )
