"""
Hamiltonian models.

A Hamiltonian in Hopf variables is a polynomial in (sigma0, sigma1, sigma3), never in sigma2.
The quadratic model keeps its named control parameters so that closed-form analysis can use them.
A full two-degree-of-freedom model is a polynomial in the Poincare variables (X2, Y2, X3, Y3).
"""

from __future__ import annotations

import collections
import dataclasses
import enum
import functools
import math
import typing

import numpy as np
import sympy

ArrayOrFloat = typing.Union[float, np.ndarray]

HOPF_AXES = {0: 0, 1: 1, 3: 2}


class ConicClass(str, enum.Enum):
    ELLIPSE = 'ellipse'
    HYPERBOLA = 'hyperbola'
    PARABOLIC_DEGENERATE = 'parabolic-degenerate'


def _as_result(value: np.ndarray) -> ArrayOrFloat:
    return float(value) if np.ndim(value) == 0 else value


def _merge_terms(terms: typing.Iterable[typing.Sequence], width: int) -> tuple[tuple, ...]:
    merged: dict[tuple[int, ...], float] = collections.defaultdict(float)
    for term in terms:
        *powers, coefficient = term
        if len(powers) != width:
            raise ValueError(f'Monomial term must have {width} exponents: {term}')
        for power in powers:
            if int(power) != power or power < 0:
                raise ValueError(f'Exponents must be non-negative integers: {term}')
        if not math.isfinite(coefficient):
            raise ValueError(f'Non-finite coefficient: {term}')
        merged[tuple(int(power) for power in powers)] += float(coefficient)
    return tuple(
        (*powers, coefficient)
        for powers, coefficient in sorted(merged.items())
        if coefficient != 0.0
    )


@dataclasses.dataclass(frozen=True)
class PolyHopfHamiltonian:
    """
    PolyHopfHamiltonian Class

    Polynomial Z(sigma0, sigma1, sigma3) stored as monomials.

    Attributes:
        terms (tuple[tuple[int, int, int, float], ...]): (p0, p1, p3, coefficient) meaning
            coefficient * sigma0^p0 * sigma1^p1 * sigma3^p3. Duplicate monomials are merged on construction.
    """

    terms: tuple[tuple[int, int, int, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'terms', _merge_terms(self.terms, width=3))

    @property
    def degree(self) -> int:
        return max((p0 + p1 + p3 for p0, p1, p3, _ in self.terms), default=0)

    @property
    def planar_degree(self) -> int:
        return max((p1 + p3 for _, p1, p3, _ in self.terms), default=0)

    @property
    def is_quadratic(self) -> bool:
        """
        Whether the model has the structure of the quadratic model, with
        sigma0-affine linear coefficients and a sigma0-quadratic additive part.
        """

        for p0, p1, p3, _ in self.terms:
            planar = p1 + p3
            if planar > 2 or (planar == 2 and p0 > 0) or (planar == 1 and p0 > 1) or (planar == 0 and p0 > 2):
                return False
        return True

    def __call__(self, sigma0: ArrayOrFloat, sigma1: ArrayOrFloat, sigma3: ArrayOrFloat) -> ArrayOrFloat:
        return self.value(sigma0, sigma1, sigma3)

    def value(self, sigma0: ArrayOrFloat, sigma1: ArrayOrFloat, sigma3: ArrayOrFloat) -> ArrayOrFloat:
        sigma0, sigma1, sigma3 = np.broadcast_arrays(
            np.asarray(sigma0, dtype=float),
            np.asarray(sigma1, dtype=float),
            np.asarray(sigma3, dtype=float),
        )
        total = np.zeros_like(sigma0)
        for p0, p1, p3, coefficient in self.terms:
            total = total + coefficient * sigma0 ** p0 * sigma1 ** p1 * sigma3 ** p3
        return _as_result(total)

    def derivative(self, axis: int) -> PolyHopfHamiltonian:
        """
        Partial derivative with respect to sigma0, sigma1 or sigma3.

        Args:
            axis (int): 0, 1 or 3.

        Returns:
            PolyHopfHamiltonian: The derivative, itself a polynomial.
        """

        if axis not in HOPF_AXES:
            raise ValueError(f'Invalid Hopf axis: {axis} (the Hamiltonian does not depend on sigma2)')
        position = HOPF_AXES[axis]
        derived = []
        for term in self.terms:
            powers = list(term[:3])
            if (power := powers[position]) == 0:
                continue
            powers[position] -= 1
            derived.append((*powers, term[3] * power))
        return PolyHopfHamiltonian(tuple(derived))

    @functools.cached_property
    def _first(self) -> tuple[PolyHopfHamiltonian, PolyHopfHamiltonian, PolyHopfHamiltonian]:
        return self.derivative(0), self.derivative(1), self.derivative(3)

    @functools.cached_property
    def _second(self) -> tuple[PolyHopfHamiltonian, PolyHopfHamiltonian, PolyHopfHamiltonian]:
        _, d1, d3 = self._first
        return d1.derivative(1), d1.derivative(3), d3.derivative(3)

    def gradient(self, sigma0: ArrayOrFloat, sigma1: ArrayOrFloat, sigma3: ArrayOrFloat) -> tuple[ArrayOrFloat, ...]:
        """
        Returns:
            tuple: (dZ/dsigma0, dZ/dsigma1, dZ/dsigma3).
        """

        return tuple(partial.value(sigma0, sigma1, sigma3) for partial in self._first)

    def hessian(self, sigma0: ArrayOrFloat, sigma1: ArrayOrFloat, sigma3: ArrayOrFloat) -> tuple[ArrayOrFloat, ...]:
        """
        Returns:
            tuple: (Z_11, Z_13, Z_33), the (sigma1, sigma3) block of the Hessian.
        """

        return tuple(partial.value(sigma0, sigma1, sigma3) for partial in self._second)

    def section_value(self, X2: ArrayOrFloat, Y2: ArrayOrFloat, sigma0: float) -> ArrayOrFloat:  # pylint: disable=invalid-name
        """
        Reduced section Hamiltonian on the disk X2^2 + Y2^2 <= 2 sigma0, embedding Y3 = 0 and X3 >= 0.
        Points outside the disk are evaluated with X3 = 0.
        """

        radius_squared = np.asarray(X2, dtype=float) ** 2 + np.asarray(Y2, dtype=float) ** 2
        X3 = np.sqrt(np.maximum(2 * sigma0 - radius_squared, 0.0))  # pylint: disable=invalid-name
        return self.value(sigma0, np.asarray(X2, dtype=float) * X3, radius_squared - sigma0)

    def to_quad(self) -> QuadHopfHamiltonian:
        if not self.is_quadratic:
            raise ValueError(f'Model of degree {self.degree} is not quadratic in (sigma1, sigma3)')
        coefficients: dict[tuple[int, int, int], float] = {
            (p0, p1, p3): coefficient
            for p0, p1, p3, coefficient in self.terms
        }
        return QuadHopfHamiltonian(
            A=coefficients.get((0, 2, 0), 0.0),
            B=coefficients.get((0, 1, 1), 0.0),
            C=coefficients.get((0, 0, 2), 0.0),
            D1=coefficients.get((1, 1, 0), 0.0),
            Delta1=coefficients.get((0, 1, 0), 0.0),
            D3=coefficients.get((1, 0, 1), 0.0),
            Delta3=coefficients.get((0, 0, 1), 0.0),
            F0=coefficients.get((0, 0, 0), 0.0),
            F1=coefficients.get((1, 0, 0), 0.0),
            F2=coefficients.get((2, 0, 0), 0.0),
        )

    @classmethod
    def from_quad(cls, model: QuadHopfHamiltonian) -> PolyHopfHamiltonian:
        return cls((
            (0, 2, 0, model.A),
            (0, 1, 1, model.B),
            (0, 0, 2, model.C),
            (1, 1, 0, model.D1),
            (0, 1, 0, model.Delta1),
            (1, 0, 1, model.D3),
            (0, 0, 1, model.Delta3),
            (0, 0, 0, model.F0),
            (1, 0, 0, model.F1),
            (2, 0, 0, model.F2),
        ))

    @classmethod
    def from_mapping(cls, document: typing.Mapping[str, typing.Any]) -> PolyHopfHamiltonian:
        return cls(tuple(
            (term['p0'], term['p1'], term['p3'], float(term['coef']))
            for term in document['terms']
        ))

    def to_mapping(self) -> dict[str, list[dict[str, typing.Any]]]:
        return {
            'terms': [
                {'p0': p0, 'p1': p1, 'p3': p3, 'coef': coefficient}
                for p0, p1, p3, coefficient in self.terms
            ]
        }


@dataclasses.dataclass(frozen=True, kw_only=True)
class QuadHopfHamiltonian:
    """
    QuadHopfHamiltonian Class

    The generic quadratic Hopf Hamiltonian

        A s1^2 + B s1 s3 + C s3^2 + (D1 s0 + Delta1) s1 + (D3 s0 + Delta3) s3 + F0 + F1 s0 + F2 s0^2.

    Attributes:
        A, B, C (float): Quadratic coefficients.
        D1, Delta1 (float): sigma0-dependence of the sigma1 coefficient.
        D3, Delta3 (float): sigma0-dependence of the sigma3 coefficient.
        F0, F1, F2 (float): sigma0-only part, irrelevant to the geometry of the level sets.
    """

    A: float
    B: float
    C: float
    D1: float
    Delta1: float
    D3: float
    Delta3: float
    F0: float = 0.0
    F1: float = 0.0
    F2: float = 0.0

    def __post_init__(self) -> None:
        for field in dataclasses.fields(self):
            if not math.isfinite(value := getattr(self, field.name)):
                raise ValueError(f'Non-finite coefficient {field.name}: {value}')

    @property
    def discriminant(self) -> float:
        return self.B ** 2 - 4 * self.A * self.C

    @property
    def scale(self) -> float:
        return max(abs(self.A), abs(self.B), abs(self.C))

    def linear(self, sigma0: ArrayOrFloat) -> tuple[ArrayOrFloat, ArrayOrFloat]:
        """
        Returns:
            tuple: (D(sigma0), E(sigma0)), the coefficients of sigma1 and sigma3.
        """

        return self.D1 * sigma0 + self.Delta1, self.D3 * sigma0 + self.Delta3

    def additive(self, sigma0: ArrayOrFloat) -> ArrayOrFloat:
        return self.F0 + self.F1 * sigma0 + self.F2 * sigma0 ** 2

    def to_poly(self) -> PolyHopfHamiltonian:
        return PolyHopfHamiltonian.from_quad(self)

    @classmethod
    def from_mapping(cls, document: typing.Mapping[str, typing.Any]) -> QuadHopfHamiltonian:
        return cls(**{
            field.name: float(document.get(field.name, 0.0))
            for field in dataclasses.fields(cls)
        })

    def to_mapping(self) -> dict[str, float]:
        return dataclasses.asdict(self)


@functools.lru_cache(maxsize=None)
def _hopf_monomial_in_poincare(p0: int, p1: int, p3: int) -> tuple[tuple[int, int, int, int, float], ...]:
    X2, Y2, X3, Y3 = sympy.symbols('X2 Y2 X3 Y3', real=True)  # pylint: disable=invalid-name
    sigma0 = sympy.Rational(1, 2) * (X2 ** 2 + Y2 ** 2 + X3 ** 2 + Y3 ** 2)
    sigma1 = X2 * X3 + Y2 * Y3
    sigma3 = sympy.Rational(1, 2) * (X2 ** 2 + Y2 ** 2 - X3 ** 2 - Y3 ** 2)
    expanded = sympy.Poly(sympy.expand(sigma0 ** p0 * sigma1 ** p1 * sigma3 ** p3), X2, Y2, X3, Y3)
    return tuple(
        (*powers, float(coefficient))
        for powers, coefficient in expanded.terms()
    )


@dataclasses.dataclass(frozen=True)
class PoincarePolyHamiltonian:
    """
    PoincarePolyHamiltonian Class

    Polynomial H(X2, Y2, X3, Y3) of a two-degree-of-freedom secular model.

    Attributes:
        terms (tuple[tuple[int, int, int, int, float], ...]): (e2, e2y, e3, e3y, coefficient) meaning
            coefficient * X2^e2 * Y2^e2y * X3^e3 * Y3^e3y.
    """

    terms: tuple[tuple[int, int, int, int, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'terms', _merge_terms(self.terms, width=4))

    @property
    def degree(self) -> int:
        return max((sum(term[:4]) for term in self.terms), default=0)

    def value(self, X2: ArrayOrFloat, Y2: ArrayOrFloat, X3: ArrayOrFloat, Y3: ArrayOrFloat) -> ArrayOrFloat:  # pylint: disable=invalid-name
        variables = np.broadcast_arrays(*(np.asarray(variable, dtype=float) for variable in (X2, Y2, X3, Y3)))
        total = np.zeros_like(variables[0])
        for e2, e2y, e3, e3y, coefficient in self.terms:
            total = total + coefficient * variables[0] ** e2 * variables[1] ** e2y * variables[2] ** e3 * variables[3] ** e3y
        return _as_result(total)

    def derivative(self, position: int) -> PoincarePolyHamiltonian:
        derived = []
        for term in self.terms:
            powers = list(term[:4])
            if (power := powers[position]) == 0:
                continue
            powers[position] -= 1
            derived.append((*powers, term[4] * power))
        return PoincarePolyHamiltonian(tuple(derived))

    @functools.cached_property
    def _partials(self) -> tuple[PoincarePolyHamiltonian, ...]:
        return tuple(self.derivative(position) for position in range(4))

    def gradient(self, X2: ArrayOrFloat, Y2: ArrayOrFloat, X3: ArrayOrFloat, Y3: ArrayOrFloat) -> tuple[ArrayOrFloat, ...]:  # pylint: disable=invalid-name
        """
        Returns:
            tuple: (dH/dX2, dH/dY2, dH/dX3, dH/dY3).
        """

        return tuple(partial.value(X2, Y2, X3, Y3) for partial in self._partials)

    @classmethod
    def from_hopf(cls, model: PolyHopfHamiltonian) -> PoincarePolyHamiltonian:
        """
        Expand a Hopf polynomial into Poincare variables.

        Args:
            model (PolyHopfHamiltonian): The model to expand.

        Returns:
            PoincarePolyHamiltonian: The same Hamiltonian as a polynomial in (X2, Y2, X3, Y3).
        """

        return cls(tuple(
            (*powers, coefficient * expansion_coefficient)
            for p0, p1, p3, coefficient in model.terms
            for *powers, expansion_coefficient in _hopf_monomial_in_poincare(p0, p1, p3)
        ))

    @classmethod
    def from_mapping(cls, document: typing.Mapping[str, typing.Any]) -> PoincarePolyHamiltonian:
        return cls(tuple(
            (term['e2'], term['e2y'], term['e3'], term['e3y'], float(term['coef']))
            for term in document['terms']
        ))
