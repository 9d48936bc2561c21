"""
Brute-force cross-checks of the critical-point machinery.

The scans here only evaluate the Hamiltonian on grids. They share no root finding with the
analytic and numeric modules they verify.
"""

from __future__ import annotations

import dataclasses
import logging
import math

import numpy as np

import secbif.data.hamiltonian
import secbif.errors
import secbif.logic.geometry
import secbif.logic.quadratic

DEFAULT_ORACLE_SAMPLES = 10 ** 5
DEFAULT_DISK_SAMPLES = 512
QUARTIC_CLUSTER_DECADES = 12

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, kw_only=True)
class ApproximatePoint:
    """
    ApproximatePoint Class

    A critical point located on a sampling grid.

    Attributes:
        X (float): Meridian angle theta, or X2 for disk scans.
        Y (float): Zero for meridian scans, Y2 for disk scans.
        energy (float): Sampled value of Z.
        nature (str): 'minimum', 'maximum' or 'saddle'.
    """

    X: float  # pylint: disable=invalid-name
    Y: float  # pylint: disable=invalid-name
    energy: float
    nature: str


@dataclasses.dataclass(frozen=True, kw_only=True)
class DiskCensus:
    points: tuple[ApproximatePoint, ...]
    degenerate: bool = False

    @property
    def extrema(self) -> tuple[ApproximatePoint, ...]:
        return tuple(point for point in self.points if point.nature != 'saddle')

    @property
    def saddles(self) -> tuple[ApproximatePoint, ...]:
        return tuple(point for point in self.points if point.nature == 'saddle')


@dataclasses.dataclass(frozen=True, kw_only=True)
class OracleComparison:
    """
    OracleComparison Class

    Agreement between find_cpi and the oracles at one sigma0.

    Attributes:
        sigma0 (float): Radius of the sphere.
        numeric_count (int): Number of points from find_cpi.
        oracle_count (int): Number of extrema from grid_tangency_scan.
        max_angle_error (float): Largest angle between a find_cpi point and its nearest oracle point.
        quartic_count (int | None): Roots from cpi_quartic_roots, quadratic models only.
        bruteforce_count (int | None): Sign changes from quartic_bruteforce, quadratic models only.
        agree (bool): Whether every count matches and every position lies within the grid resolution.
    """

    sigma0: float
    numeric_count: int
    oracle_count: int
    max_angle_error: float
    quartic_count: int | None = None
    bruteforce_count: int | None = None
    agree: bool = True


def grid_tangency_scan(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    sigma0: float,
    n: int = DEFAULT_ORACLE_SAMPLES,
) -> list[ApproximatePoint]:
    """
    Local extrema of Z on the meridian circle by a three-point comparison, refined by a parabola.
    """

    if n < 64:
        raise ValueError(f'Meridian oracle needs at least 64 samples, got {n}')
    step = 2 * math.pi / n
    theta = -math.pi + np.arange(n) * step
    values = np.asarray(model.value(sigma0, sigma0 * np.cos(theta), sigma0 * np.sin(theta)))
    previous, following = np.roll(values, 1), np.roll(values, -1)
    points = []
    for index in np.nonzero(
        ((values > previous) & (values >= following)) | ((values < previous) & (values <= following))
    )[0]:
        curvature = previous[index] - 2 * values[index] + following[index]
        offset = 0.0 if curvature == 0 else 0.5 * (previous[index] - following[index]) / curvature
        angle = math.remainder(theta[index] + offset * step, 2 * math.pi)
        points.append(ApproximatePoint(
            X=angle,
            Y=0.0,
            energy=float(model.value(sigma0, sigma0 * math.cos(angle), sigma0 * math.sin(angle))),
            nature='maximum' if values[index] > previous[index] else 'minimum',
        ))
    return sorted(points, key=lambda point: point.X)


def disk_critical_scan(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    sigma0: float,
    n: int = DEFAULT_DISK_SAMPLES,
) -> DiskCensus:
    """
    Critical points of the section Hamiltonian on an n x n grid over the disk.

    A sample is an extremum when it beats all eight neighbours. It is a saddle when the differences
    to its neighbours change sign at least four times around the ring. Detections closer than two
    cells are merged.
    """

    if n < 128:
        raise ValueError(f'Disk oracle needs at least 128 samples per axis, got {n}')
    rim = math.sqrt(2 * sigma0)
    axis = np.linspace(-rim, rim, n)
    X2, Y2 = np.meshgrid(axis, axis)  # pylint: disable=invalid-name
    values = np.asarray(model.section_value(X2, Y2, sigma0))
    inside = X2 ** 2 + Y2 ** 2 < 2 * sigma0
    spread = float(np.ptp(values[inside]))
    if spread <= 1e-14 * max(float(np.max(np.abs(values[inside]))), 1e-300):
        LOGGER.warning(f'Section Hamiltonian is constant at sigma0={sigma0}')
        return DiskCensus(points=(), degenerate=True)

    ring = ((-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1))
    core = values[1:-1, 1:-1]
    differences = np.stack([values[1 + dy:n - 1 + dy, 1 + dx:n - 1 + dx] - core for dy, dx in ring])
    usable = inside[1:-1, 1:-1].copy()
    for dy, dx in ring:
        usable &= inside[1 + dy:n - 1 + dy, 1 + dx:n - 1 + dx]
    maxima = usable & np.all(differences < 0, axis=0)
    minima = usable & np.all(differences > 0, axis=0)
    signs = np.sign(differences)
    changes = np.sum(signs != np.roll(signs, 1, axis=0), axis=0)
    saddles = usable & (changes >= 4) & ~maxima & ~minima

    step = float(axis[1] - axis[0])
    slope = np.hypot(*np.gradient(values, step))[1:-1, 1:-1]
    points: list[ApproximatePoint] = []
    for nature, mask in (('maximum', maxima), ('minimum', minima), ('saddle', saddles)):
        rows, columns = np.nonzero(mask)
        chosen: list[tuple[int, int]] = []
        for row, column in sorted(zip(rows, columns), key=lambda cell: slope[cell]):
            if all(abs(row - other[0]) > 2 or abs(column - other[1]) > 2 for other in chosen):
                chosen.append((row, column))
        for row, column in sorted(chosen):
            points.append(ApproximatePoint(
                X=float(axis[column + 1]),
                Y=float(axis[row + 1]),
                energy=float(core[row, column]),
                nature=nature,
            ))
    return DiskCensus(points=tuple(points))


def quartic_bruteforce(
    model: secbif.data.hamiltonian.QuadHopfHamiltonian,
    sigma0: float,
    n: int = DEFAULT_ORACLE_SAMPLES,
) -> int:
    """
    Number of sign changes of the tangency quartic on a dense mu grid.

    The grid spans the region where roots can lie, with extra logarithmic clusters around A and C.
    """

    if n < 10 ** 3:
        raise ValueError(f'Quartic oracle needs at least 1000 samples, got {n}')
    t1, t3 = secbif.logic.quadratic.T1(model, sigma0), secbif.logic.quadratic.T3(model, sigma0)
    span = abs(model.A - model.C) + math.sqrt(max(t1, t3) / 2)
    uniform = np.linspace(min(model.A, model.C) - 10 * span, max(model.A, model.C) + 10 * span, n)
    offsets = span * np.logspace(-QUARTIC_CLUSTER_DECADES, 0, n // 10)
    grid = np.unique(np.concatenate([
        uniform,
        *(anchor + side * offsets for anchor in (model.A, model.C) for side in (1.0, -1.0)),
    ]))
    values = 4 * (model.A - grid) ** 2 * (model.C - grid) ** 2 - (model.A - grid) ** 2 * t3 - (model.C - grid) ** 2 * t1
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def self_check(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    sigma0_grid: list[float],
    n: int = DEFAULT_ORACLE_SAMPLES,
) -> list[OracleComparison]:
    """
    Compare find_cpi with the meridian oracle and, for quadratic models, the quartic with its brute-force count.

    Args:
        model (secbif.data.hamiltonian.PolyHopfHamiltonian): The Hamiltonian.
        sigma0_grid (list[float]): Spheres to check.
        n (int): Oracle resolution.

    Returns:
        list[OracleComparison]: One row per sigma0, in input order.
    """

    diagonal = None
    if model.is_quadratic:
        try:
            diagonal, _ = secbif.logic.quadratic.rotate_to_diagonal(model.to_quad())
        except secbif.errors.IsotropicDegenerateError:
            LOGGER.warning('Isotropic quadratic model: skipping the quartic comparison')

    comparisons = []
    for sigma0 in sigma0_grid:
        numeric = secbif.logic.geometry.find_cpi(model, sigma0)
        oracle = grid_tangency_scan(model, sigma0, n)
        angle_error = max(
            (min(abs(math.remainder(point.angle - found.X, 2 * math.pi)) for found in oracle) for point in numeric),
            default=0.0,
        ) if oracle else math.inf
        quartic_count = bruteforce_count = None
        if diagonal is not None:
            quartic_count = len(secbif.logic.quadratic.cpi_quartic_roots(diagonal, sigma0, allow_symmetric=True))
            bruteforce_count = quartic_bruteforce(diagonal, sigma0, n)
        agree = (
            len(numeric) == len(oracle)
            and angle_error <= 4 * math.pi / n
            and quartic_count in (None, len(numeric))
            and bruteforce_count in (None, len(numeric))
        )
        if not agree:
            LOGGER.warning(
                f'Oracle disagreement at sigma0={sigma0}: find_cpi {len(numeric)}, meridian {len(oracle)}, '
                f'quartic {quartic_count}, brute force {bruteforce_count}, angle error {angle_error}'
            )
        comparisons.append(OracleComparison(
            sigma0=sigma0,
            numeric_count=len(numeric),
            oracle_count=len(oracle),
            max_angle_error=angle_error,
            quartic_count=quartic_count,
            bruteforce_count=bruteforce_count,
            agree=agree,
        ))
    return comparisons
