"""
State types of the reduced secular problem.

Poincare canonical variables, reduced action-angle variables, Hopf variables
and the physical parameters of the planetary system.
"""

from __future__ import annotations

import dataclasses
import math
import typing

import numpy as np

import secbif.errors

TOLERANCE_FLOOR = 1e-300


@dataclasses.dataclass(frozen=True, kw_only=True)
class PoincareState:
    """
    PoincareState Class

    A point in the canonical Poincare variables of the two planets.

    Attributes:
        X2 (float): Coordinate of the inner planet.
        Y2 (float): Momentum of the inner planet.
        X3 (float): Coordinate of the outer planet.
        Y3 (float): Momentum of the outer planet.
    """

    X2: float
    Y2: float
    X3: float
    Y3: float

    def __post_init__(self) -> None:
        if not all(map(math.isfinite, self.as_tuple())):
            raise ValueError(f'Non-finite Poincare state: {self.as_tuple()}')

    @property
    def W2(self) -> float:
        return (self.X2 ** 2 + self.Y2 ** 2) / 2

    @property
    def W3(self) -> float:
        return (self.X3 ** 2 + self.Y3 ** 2) / 2

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.X2, self.Y2, self.X3, self.Y3)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    @classmethod
    def from_sequence(cls, values: typing.Sequence[float]) -> PoincareState:
        X2, Y2, X3, Y3 = (float(value) for value in values)  # pylint: disable=invalid-name
        return cls(X2=X2, Y2=Y2, X3=X3, Y3=Y3)


@dataclasses.dataclass(frozen=True, kw_only=True)
class ReducedActionAngle:
    """
    ReducedActionAngle Class

    Reduced action-angle variables of the 1:1 secular resonance.

    Attributes:
        psi (float): Difference of the planets' angles, w2 - w3.
        phi (float): Sum of the planets' angles, w2 + w3.
        Gamma (float): Half-difference of the actions, (W2 - W3) / 2.
        J (float): Half-sum of the actions, (W2 + W3) / 2.
    """

    psi: float
    phi: float
    Gamma: float
    J: float

    def __post_init__(self) -> None:
        if self.J < 0:
            raise ValueError(f'Negative action J: {self.J}')
        if abs(self.Gamma) > self.J * (1 + 1e-12) + TOLERANCE_FLOOR:
            raise ValueError(f'|Gamma| exceeds J: Gamma={self.Gamma}, J={self.J}')


@dataclasses.dataclass(frozen=True, kw_only=True)
class HopfState:
    """
    HopfState Class

    A point of the reduced phase space, the sphere of radius sigma0.

    Attributes:
        sigma0 (float): Casimir invariant, radius of the sphere.
        sigma1 (float): First Hopf variable.
        sigma2 (float): Second Hopf variable, the one the Hamiltonian does not depend on.
        sigma3 (float): Third Hopf variable.
    """

    sigma0: float
    sigma1: float
    sigma2: float
    sigma3: float

    def __post_init__(self) -> None:
        if self.sigma0 < 0:
            raise ValueError(f'Negative sigma0: {self.sigma0}')

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.sigma1, self.sigma2, self.sigma3], dtype=float)

    def sphere_residual(self) -> float:
        return self.sigma1 ** 2 + self.sigma2 ** 2 + self.sigma3 ** 2 - self.sigma0 ** 2

    def on_sphere(self, tol: float = 1e-12) -> bool:
        return abs(self.sphere_residual()) <= max(tol * self.sigma0 ** 2, TOLERANCE_FLOOR)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.sigma0, self.sigma1, self.sigma2, self.sigma3)

    @classmethod
    def from_vector(cls, sigma0: float, vector: typing.Sequence[float]) -> HopfState:
        return cls(
            sigma0=float(sigma0),
            sigma1=float(vector[0]),
            sigma2=float(vector[1]),
            sigma3=float(vector[2]),
        )


@dataclasses.dataclass(frozen=True, kw_only=True)
class SystemParams:
    """
    SystemParams Class

    Physical parameters of the hierarchical planetary system.

    Attributes:
        m0 (float): Mass of the star.
        m2 (float): Mass of the inner planet.
        m3 (float): Mass of the outer planet.
        a2 (float): Semi-major axis of the inner planet.
        a3 (float): Semi-major axis of the outer planet.
        G (float): Gravitational constant in the units of the other fields.
        AMD (float): Angular momentum deficit.
    """

    m0: float
    m2: float
    m3: float
    a2: float
    a3: float
    G: float
    AMD: float

    def __post_init__(self) -> None:
        for field in ('m0', 'm2', 'm3', 'a2', 'a3', 'G'):
            if not (value := getattr(self, field)) > 0 or not math.isfinite(value):
                raise secbif.errors.SchemaViolationError(f'Invalid {field}: {value} (must be finite and positive)')
        if not self.a2 < self.a3:
            raise secbif.errors.SchemaViolationError(f'Inner orbit must be inside the outer one: a2={self.a2}, a3={self.a3}')
        if not 0 <= self.AMD < self.Lambda2 + self.Lambda3:
            raise secbif.errors.SchemaViolationError(
                f'Invalid AMD: {self.AMD} (must lie in [0, {self.Lambda2 + self.Lambda3}))'
            )

    @property
    def Lambda2(self) -> float:  # pylint: disable=invalid-name
        return self.m2 * math.sqrt(self.G * self.m0 * self.a2)

    @property
    def Lambda3(self) -> float:  # pylint: disable=invalid-name
        return self.m3 * math.sqrt(self.G * self.m0 * self.a3)

    @property
    def Lz(self) -> float:  # pylint: disable=invalid-name
        return self.Lambda2 + self.Lambda3 - self.AMD

    @classmethod
    def from_mapping(cls, document: typing.Mapping[str, typing.Any]) -> SystemParams:
        return cls(**{
            field.name: float(document[field.name])
            for field in dataclasses.fields(cls)
        })

    def scaled(self, **changes: float) -> SystemParams:
        return dataclasses.replace(self, **changes)
