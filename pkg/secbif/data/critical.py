"""
Result types of the critical-point analysis.

Closed-form roots of the quadratic model, classified critical points of general models,
the permissible energy domain and the bifurcation sequence assembled along sigma0.
"""

from __future__ import annotations

import dataclasses
import enum
import typing

import secbif.data.state


class CriticalKind(str, enum.Enum):
    CPI = 'CPI'
    CPII = 'CPII'


class Tangency(str, enum.Enum):
    INNER = 'inner'
    OUTER = 'outer'
    DEGENERATE = 'degenerate'


class Stability(str, enum.Enum):
    STABLE = 'stable'
    UNSTABLE = 'unstable'
    MARGINAL = 'marginal'


class EventType(str, enum.Enum):
    SADDLE_NODE = 'saddle-node'
    INVERSE_SADDLE_NODE = 'inverse-saddle-node'
    PITCHFORK = 'pitchfork'
    INVERSE_PITCHFORK = 'inverse-pitchfork'
    UNRESOLVED = 'unresolved-event'


@dataclasses.dataclass(frozen=True, kw_only=True)
class CpiRoot:
    """
    CpiRoot Class

    A real root of the tangency quartic of the diagonal quadratic model.

    Attributes:
        mu (float): Lagrange multiplier of the tangency, grad Z = 2 mu sigma.
        sigma1 (float): sigma1 coordinate of the tangency point.
        sigma3 (float): sigma3 coordinate of the tangency point.
        residual (float): |sigma1^2 + sigma3^2 - sigma0^2| / sigma0^2 after polishing.
    """

    mu: float
    sigma1: float
    sigma3: float
    residual: float


@dataclasses.dataclass(frozen=True, kw_only=True)
class BifurcationValues:
    """
    BifurcationValues Class

    Critical sigma0 values of a quadratic model.

    Attributes:
        cpi_sigma0 (tuple[float, ...]): Sorted positive roots of f1, where the CPI count changes.
        cpii_sigma0 (tuple[float, ...]): Sorted positive roots of f2, where the CPII pair appears or dies.
        flags (tuple[str, ...]): Special branches met during the analysis.
        diagnostics (dict[str, typing.Any]): Discarded candidates and residuals.
    """

    cpi_sigma0: tuple[float, ...] = ()
    cpii_sigma0: tuple[float, ...] = ()
    flags: tuple[str, ...] = ()
    diagnostics: dict[str, typing.Any] = dataclasses.field(default_factory=dict)

    @property
    def thresholds(self) -> tuple[float, ...]:
        return tuple(sorted((*self.cpi_sigma0, *self.cpii_sigma0)))


@dataclasses.dataclass(frozen=True, kw_only=True)
class CpiiCenter:
    """
    CpiiCenter Class

    The line of second-kind critical points of the quadratic model and its intersection with the sphere.

    Attributes:
        sigma0 (float): Radius of the sphere.
        sigma1 (float): sigma1 of the line.
        sigma3 (float): sigma3 of the line.
        exists (bool): Whether the line pierces the sphere.
        stability (Stability): Stability of the pair, from the sign-definiteness of the quadratic form.
        sigma2 (float): The non-negative sigma2 of the pair, zero when it does not exist.
    """

    sigma0: float
    sigma1: float
    sigma3: float
    exists: bool
    stability: Stability
    sigma2: float = 0.0


@dataclasses.dataclass(frozen=True, kw_only=True)
class CriticalPoint:
    """
    CriticalPoint Class

    An equilibrium of the reduced flow on the sphere.

    Attributes:
        location (secbif.data.state.HopfState): Position on the sphere.
        kind (CriticalKind): CPI (tangency on the sigma2 = 0 meridian) or CPII (degenerate intersection).
        tangency (Tangency | None): Inner or outer tangency, CPI only.
        stability (Stability): Linear stability of the equilibrium.
        energy (float): Value of the Hamiltonian at the point.
        lambda_squared (float): Squared eigenvalue of the tangent-plane linearization, positive when hyperbolic.
        angle (float | None): Meridian angle theta, sigma1 = sigma0 cos(theta), sigma3 = sigma0 sin(theta). CPI only.
        label (str): Name assigned by continuity tracking along sigma0.
    """

    location: secbif.data.state.HopfState
    kind: CriticalKind
    tangency: Tangency | None
    stability: Stability
    energy: float
    lambda_squared: float = 0.0
    angle: float | None = None
    label: str = ''

    @property
    def sigma0(self) -> float:
        return self.location.sigma0

    @property
    def hyperbolic(self) -> bool:
        return self.lambda_squared > 0

    def with_label(self, label: str) -> CriticalPoint:
        return dataclasses.replace(self, label=label)


@dataclasses.dataclass(frozen=True, kw_only=True)
class Census:
    """
    Census Class

    All critical points at one sigma0.

    Attributes:
        sigma0 (float): Radius of the sphere.
        points (tuple[CriticalPoint, ...]): CPI points by increasing meridian angle, then CPII points.
    """

    sigma0: float
    points: tuple[CriticalPoint, ...]

    @property
    def cpi(self) -> tuple[CriticalPoint, ...]:
        return tuple(point for point in self.points if point.kind is CriticalKind.CPI)

    @property
    def cpii(self) -> tuple[CriticalPoint, ...]:
        return tuple(point for point in self.points if point.kind is CriticalKind.CPII)

    @property
    def signature(self) -> tuple[int, int, int, int]:
        """
        (CPI count, hyperbolic CPI count, CPII count, hyperbolic CPII count).
        """

        return (
            len(self.cpi),
            sum(point.hyperbolic for point in self.cpi),
            len(self.cpii),
            sum(point.hyperbolic for point in self.cpii),
        )


@dataclasses.dataclass(frozen=True, kw_only=True)
class DomainLimits:
    """
    DomainLimits Class

    Permissible domain in (energy, sigma0).

    Attributes:
        sigma0_grid (tuple[float, ...]): Sampled sigma0 values, ascending.
        E_L (tuple[float, ...]): Minimum of the Hamiltonian on each sampled sphere.
        E_R (tuple[float, ...]): Maximum of the Hamiltonian on each sampled sphere.
        E_min (float): Lowest admissible energy.
        E_23 (float): Highest energy admitted by the largest sphere.
        sigma0_AMD (float): Largest sphere, sigma0 = AMD.
    """

    sigma0_grid: tuple[float, ...]
    E_L: tuple[float, ...]
    E_R: tuple[float, ...]
    E_min: float
    E_23: float
    sigma0_AMD: float


@dataclasses.dataclass(frozen=True, kw_only=True)
class BifurcationEvent:
    """
    BifurcationEvent Class

    A change of the critical-point census between two neighbouring sigma0 values.

    Attributes:
        type (EventType): Kind of bifurcation, read in the direction of decreasing sigma0.
        sigma0_bracket (tuple[float, float]): (low, high) bracket of the critical sigma0.
        participants (tuple[str, ...]): Labels of the points created, destroyed or flipped.
        stability_changes (tuple[tuple[str, str, str], ...]): (label, before, after) for flipped points.
        energies (tuple[float, ...]): Energies of the participants next to the bracket.
    """

    type: EventType
    sigma0_bracket: tuple[float, float]
    participants: tuple[str, ...] = ()
    stability_changes: tuple[tuple[str, str, str], ...] = ()
    energies: tuple[float, ...] = ()

    @property
    def sigma0(self) -> float:
        return (self.sigma0_bracket[0] + self.sigma0_bracket[1]) / 2

    def contains(self, sigma0: float, margin: float = 0.0) -> bool:
        return self.sigma0_bracket[0] - margin <= sigma0 <= self.sigma0_bracket[1] + margin


@dataclasses.dataclass(frozen=True, kw_only=True)
class BifurcationSequence:
    """
    BifurcationSequence Class

    Ordered bifurcation events along decreasing sigma0 with the census they were read from.

    Attributes:
        events (tuple[BifurcationEvent, ...]): Typed events, by decreasing sigma0.
        censuses (tuple[Census, ...]): Labelled census on the sweep grid, by decreasing sigma0.
        unresolved (tuple[BifurcationEvent, ...]): Brackets holding more than one event at maximum refinement.
    """

    events: tuple[BifurcationEvent, ...]
    censuses: tuple[Census, ...]
    unresolved: tuple[BifurcationEvent, ...] = ()

    @property
    def types(self) -> tuple[EventType, ...]:
        return tuple(event.type for event in self.events)


@dataclasses.dataclass(frozen=True, kw_only=True)
class Threshold:
    """
    Threshold Class

    One critical sigma0 value as reported by the critical command.

    Attributes:
        kind (CriticalKind): Which kind of critical point is born or dies there.
        sigma0 (float): The threshold.
        residual (float): |f1| or |f2| at the threshold for analytic values, the bracket width for numeric ones.
        method (str): 'analytic' or 'numeric'.
    """

    kind: CriticalKind
    sigma0: float
    residual: float
    method: str
