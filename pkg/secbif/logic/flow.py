"""
Time integration of the reduced flow and of full Poincare-variable Hamiltonians,
surfaces of section, contour phase portraits on the section disk and linear stability checks.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import typing

import numpy as np
import scipy.integrate
import scipy.optimize

import secbif.data.critical
import secbif.data.hamiltonian
import secbif.data.state
import secbif.errors
import secbif.logic.contours
import secbif.logic.geometry
import secbif.logic.hopf

DEFAULT_TOLERANCE = 1e-10
DEFAULT_PORTRAIT_GRID = 1024
DEFAULT_LADDER_GRID = 256
POLISH_ITERATIONS = 3
HENON_TOLERANCE = 1e-13
RAY_SAMPLES = 256

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, kw_only=True)
class ReducedTrajectory:
    """
    ReducedTrajectory Class

    Solution of the reduced flow on one sphere.

    Attributes:
        t (np.ndarray): Accepted step times.
        states (np.ndarray): (n, 3) rows of (sigma1, sigma2, sigma3).
        sigma0 (float): Radius of the sphere.
        energies (np.ndarray): Z along the trajectory.
    """

    t: np.ndarray
    states: np.ndarray
    sigma0: float
    energies: np.ndarray

    @property
    def casimir_drift(self) -> float:
        """
        Largest relative departure from the sphere, |sigma.sigma - sigma0^2| / sigma0^2.
        """

        return float(np.max(np.abs(np.sum(self.states ** 2, axis=1) - self.sigma0 ** 2)) / self.sigma0 ** 2)

    @property
    def energy_drift(self) -> float:
        """
        Largest departure of Z from its initial value, relative to max(|Z|) along the trajectory.
        """

        scale = max(float(np.max(np.abs(self.energies))), secbif.data.state.TOLERANCE_FLOOR)
        return float(np.max(np.abs(self.energies - self.energies[0]))) / scale

    def rows(self) -> typing.Iterator[tuple[float, ...]]:
        for time, (sigma1, sigma2, sigma3), energy in zip(self.t, self.states, self.energies):
            yield float(time), self.sigma0, float(sigma1), float(sigma2), float(sigma3), float(energy)


@dataclasses.dataclass(frozen=True, kw_only=True)
class PoincareTrajectory:
    """
    PoincareTrajectory Class

    Solution of Hamilton's equations in the Poincare variables.

    Attributes:
        t (np.ndarray): Accepted step times.
        states (np.ndarray): (n, 4) rows of (X2, Y2, X3, Y3).
        energies (np.ndarray): H along the trajectory.
    """

    t: np.ndarray
    states: np.ndarray
    energies: np.ndarray

    @property
    def energy_drift(self) -> float:
        scale = max(abs(float(self.energies[0])), secbif.data.state.TOLERANCE_FLOOR)
        return float(np.max(np.abs(self.energies - self.energies[0]))) / scale

    def rows(self) -> typing.Iterator[tuple[float, ...]]:
        for time, state, energy in zip(self.t, self.states, self.energies):
            yield (float(time), *(float(value) for value in state), float(energy))


@dataclasses.dataclass(frozen=True, kw_only=True)
class SectionPoint:
    """
    SectionPoint Class

    A crossing of the surface Y3 = 0 with dY3/dt >= 0.

    Attributes:
        X2 (float): Section coordinate.
        Y2 (float): Section coordinate.
        X3 (float): Value of X3 at the crossing.
        t (float): Crossing time.
        energy_residual (float): H at the crossing minus H at the start.
    """

    X2: float  # pylint: disable=invalid-name
    Y2: float  # pylint: disable=invalid-name
    X3: float  # pylint: disable=invalid-name
    t: float
    energy_residual: float


@dataclasses.dataclass(frozen=True, kw_only=True)
class PortraitCurve:
    """
    PortraitCurve Class

    One connected piece of a level curve on the section disk.

    Attributes:
        points (np.ndarray): (n, 2) vertices (X2, Y2). Closed curves repeat their first vertex at the end.
        level (float): The energy of the curve.
        sigma0 (float): Radius of the sphere.
        closed (bool): Whether the curve is a loop.
    """

    points: np.ndarray
    level: float
    sigma0: float
    closed: bool


@dataclasses.dataclass(frozen=True, kw_only=True)
class Marker:
    label: str
    kind: secbif.data.critical.CriticalKind
    stability: secbif.data.critical.Stability
    X2: float  # pylint: disable=invalid-name
    Y2: float  # pylint: disable=invalid-name
    energy: float


@dataclasses.dataclass(frozen=True, kw_only=True)
class Portrait:
    """
    Portrait Class

    Level curves of the reduced Hamiltonian on the section disk of one sphere.

    Attributes:
        sigma0 (float): Radius of the sphere.
        levels (tuple[float, ...]): Requested energies, ascending.
        curves (tuple[PortraitCurve, ...]): Curves by level, then by position along the scan.
        markers (tuple[Marker, ...]): Section images of the critical points off the north pole.
    """

    sigma0: float
    levels: tuple[float, ...]
    curves: tuple[PortraitCurve, ...]
    markers: tuple[Marker, ...] = ()


@dataclasses.dataclass(frozen=True, kw_only=True)
class FloquetResult:
    eigenvalues: tuple[complex, complex]
    stability: secbif.data.critical.Stability
    consistent: bool


def _reduced_rhs(model: secbif.data.hamiltonian.PolyHopfHamiltonian, sigma0: float) -> typing.Callable:
    def _rhs(_: float, state: np.ndarray) -> np.ndarray:
        sigma1, sigma2, sigma3 = state
        _, z1, z3 = model.gradient(sigma0, sigma1, sigma3)
        return np.array([2 * sigma2 * z3, 2 * (sigma3 * z1 - sigma1 * z3), -2 * sigma2 * z1])
    return _rhs


def _step_through(solver: typing.Any, on_step: typing.Callable[[], None] | None = None) -> tuple[list[float], list[np.ndarray]]:
    times, states = [solver.t], [np.array(solver.y)]
    while solver.status == 'running':
        if (message := solver.step()) is not None and solver.status == 'failed':
            raise secbif.errors.StepFailureError(f'Integration failed at t={solver.t}: {message}')
        if on_step is not None:
            on_step()
        times.append(solver.t)
        states.append(np.array(solver.y))
    return times, states


def integrate_reduced(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    start: secbif.data.state.HopfState,
    T: float,  # pylint: disable=invalid-name
    tol: float = DEFAULT_TOLERANCE,
    renormalize: bool = False,
) -> ReducedTrajectory:
    """
    Integrate the reduced flow with the DOP853 embedded Runge-Kutta pair.

    Args:
        model (secbif.data.hamiltonian.PolyHopfHamiltonian): The Hamiltonian.
        start (secbif.data.state.HopfState): Initial point on the sphere.
        T (float): Integration time.
        tol (float): Relative per-step tolerance.
        renormalize (bool): Project back onto the sphere after every step.

    Returns:
        ReducedTrajectory: Every accepted step with the energy along it.

    Raises:
        ValueError: If the initial point is off the sphere.
        secbif.errors.StepFailureError: If the step size underflows.
    """

    if not start.on_sphere(1e-9):
        raise ValueError(f'Initial state is off the sphere (residual {start.sphere_residual()})')
    sigma0 = start.sigma0
    rhs = _reduced_rhs(model, sigma0)
    solver = scipy.integrate.DOP853(rhs, 0.0, start.vector, T, rtol=tol, atol=tol * sigma0)

    def _project() -> None:
        solver.y = solver.y * (sigma0 / np.linalg.norm(solver.y))
        solver.f = rhs(solver.t, solver.y)

    times, states = _step_through(solver, _project if renormalize else None)
    trajectory = np.array(states)
    result = ReducedTrajectory(
        t=np.array(times),
        states=trajectory,
        sigma0=sigma0,
        energies=np.asarray(model.value(sigma0, trajectory[:, 0], trajectory[:, 2]), dtype=float),
    )
    LOGGER.info(
        f'Reduced flow over T={T} in {len(times) - 1} steps: '
        f'Casimir drift {result.casimir_drift:.3e}, energy drift {result.energy_drift:.3e}'
    )
    return result


def _hamilton_rhs(model: secbif.data.hamiltonian.PoincarePolyHamiltonian) -> typing.Callable:
    def _rhs(_: float, state: np.ndarray) -> np.ndarray:
        h_x2, h_y2, h_x3, h_y3 = model.gradient(*state)
        return np.array([h_y2, -h_x2, h_y3, -h_x3])
    return _rhs


def integrate_poincare(
    model: secbif.data.hamiltonian.PoincarePolyHamiltonian,
    start: secbif.data.state.PoincareState,
    T: float,  # pylint: disable=invalid-name
    tol: float = DEFAULT_TOLERANCE,
) -> PoincareTrajectory:
    rhs = _hamilton_rhs(model)
    scale = max(float(np.linalg.norm(start.as_array())), secbif.data.state.TOLERANCE_FLOOR)
    solver = scipy.integrate.DOP853(rhs, 0.0, start.as_array(), T, rtol=tol, atol=tol * scale)
    times, states = _step_through(solver)
    trajectory = np.array(states)
    result = PoincareTrajectory(
        t=np.array(times),
        states=trajectory,
        energies=np.asarray(model.value(*trajectory.T), dtype=float),
    )
    LOGGER.info(f'Poincare flow over T={T} in {len(times) - 1} steps: energy drift {result.energy_drift:.3e}')
    return result


def _henon_step(rhs: typing.Callable, state: np.ndarray) -> tuple[np.ndarray, float]:
    """
    Carry a state onto Y3 = 0 by integrating with Y3 as the independent variable.
    """

    def _by_y3(_: float, extended: np.ndarray) -> np.ndarray:
        derivative = rhs(0.0, extended[:4])
        return np.append(derivative / derivative[3], 1.0 / derivative[3])

    if state[3] == 0:
        return np.array(state), 0.0
    scale = max(float(np.linalg.norm(state)), secbif.data.state.TOLERANCE_FLOOR)
    solution = scipy.integrate.solve_ivp(
        _by_y3, (state[3], 0.0), np.append(state, 0.0),
        method='DOP853', rtol=HENON_TOLERANCE, atol=HENON_TOLERANCE * scale,
    )
    landed = solution.y[:, -1]
    return np.array([landed[0], landed[1], landed[2], 0.0]), float(landed[4])


def poincare_section(
    model: secbif.data.hamiltonian.PoincarePolyHamiltonian,
    start: secbif.data.state.PoincareState,
    T: float,  # pylint: disable=invalid-name
    tol: float = DEFAULT_TOLERANCE,
    params: secbif.data.state.SystemParams | None = None,
) -> list[SectionPoint]:
    """
    Crossings of the surface Y3 = 0 with dY3/dt >= 0.

    Each crossing located by the integrator is moved exactly onto the surface by a final step in Y3.

    Args:
        model (secbif.data.hamiltonian.PoincarePolyHamiltonian): The Hamiltonian.
        start (secbif.data.state.PoincareState): Initial condition.
        T (float): Integration time.
        tol (float): Relative per-step tolerance.
        params (secbif.data.state.SystemParams | None): When given, the trajectory must keep a feasible mutual inclination.

    Returns:
        list[SectionPoint]: Crossings in time order.

    Raises:
        secbif.errors.LeftDomainError: If the trajectory reaches a geometrically impossible configuration.
        secbif.errors.StepFailureError: If the integrator fails.
    """

    rhs = _hamilton_rhs(model)
    initial_energy = float(model.value(*start.as_tuple()))

    def _crossing(_: float, state: np.ndarray) -> float:
        return state[3]
    _crossing.direction = 1  # type: ignore

    scale = max(float(np.linalg.norm(start.as_array())), secbif.data.state.TOLERANCE_FLOOR)
    solution = scipy.integrate.solve_ivp(
        rhs, (0.0, T), start.as_array(), method='DOP853', events=_crossing, rtol=tol, atol=tol * scale,
    )
    if solution.status < 0:
        raise secbif.errors.StepFailureError(f'Integration failed: {solution.message}')

    if params is not None:
        for time, state in zip(solution.t, solution.y.T):
            check = secbif.logic.hopf.mutual_inclination_from_actions(
                (state[0] ** 2 + state[1] ** 2) / 2, (state[2] ** 2 + state[3] ** 2) / 2, params,
            )
            if not check.feasible:
                raise secbif.errors.LeftDomainError(f'Trajectory left the feasible domain at t={time} (cos i_mut={check.cos_i_mut})')

    points = []
    for time, state in zip(solution.t_events[0], solution.y_events[0]):
        landed, shift = _henon_step(rhs, state)
        points.append(SectionPoint(
            X2=float(landed[0]),
            Y2=float(landed[1]),
            X3=float(landed[2]),
            t=float(time + shift),
            energy_residual=float(model.value(*landed)) - initial_energy,
        ))
    LOGGER.info(f'Collected {len(points)} section crossings over T={T}')
    return points


def initial_conditions(
    model: secbif.data.hamiltonian.PoincarePolyHamiltonian,
    energy: float,
    count: int,
    sigma0: float | None = None,
    radius: float = 1.0,
) -> list[secbif.data.state.PoincareState]:
    """
    Points with Y3 = 0 and X3 >= 0 on the energy level.

    Rays are cast from the origin and H - energy is bracketed along each. With sigma0 given the rays
    run across the section disk of that sphere, otherwise through the half-ball of the given radius.

    Raises:
        secbif.errors.NoFeasibleInitialConditionsError: If no ray meets the level.
    """

    if count < 1:
        raise ValueError(f'Invalid number of initial conditions: {count}')

    if sigma0 is not None:
        rim = math.sqrt(2 * sigma0)

        def _embed(direction: np.ndarray, distance: float) -> np.ndarray:
            planar = direction[:2] * distance
            return np.array([planar[0], planar[1], math.sqrt(max(2 * sigma0 - distance ** 2, 0.0)), 0.0])

        angles = 2 * math.pi * (np.arange(count) + 0.5) / count
        directions = [np.array([math.cos(angle), math.sin(angle)]) for angle in angles]
        reach = rim
    else:
        def _embed(direction: np.ndarray, distance: float) -> np.ndarray:
            return np.append(direction * distance, 0.0)

        # Fibonacci points on the X3 >= 0 half-sphere
        golden = math.pi * (3 - math.sqrt(5))
        directions = []
        for index in range(count):
            height = 1 - (index + 0.5) / count
            ring = math.sqrt(1 - height ** 2)
            directions.append(np.array([ring * math.cos(golden * index), ring * math.sin(golden * index), height]))
        reach = radius

    def _excess(direction: np.ndarray, distance: float) -> float:
        return float(model.value(*_embed(direction, distance))) - energy

    found = []
    for direction in directions:
        distances = np.linspace(0.0, reach, RAY_SAMPLES)
        values = [_excess(direction, distance) for distance in distances]
        for index in range(RAY_SAMPLES - 1):
            if values[index] == 0 or values[index] * values[index + 1] < 0:
                distance = distances[index] if values[index] == 0 else scipy.optimize.brentq(
                    lambda step: _excess(direction, step), distances[index], distances[index + 1], xtol=1e-15,
                )
                found.append(secbif.data.state.PoincareState.from_sequence(_embed(direction, distance)))
                break
    if not found:
        raise secbif.errors.NoFeasibleInitialConditionsError(f'No point with Y3 = 0 reaches energy {energy}')
    LOGGER.info(f'Found {len(found)} initial conditions on energy {energy}')
    return found


def _disk_grid(sigma0: float, grid: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rim = math.sqrt(2 * sigma0)
    axis = np.linspace(-rim, rim, grid)
    X2, Y2 = np.meshgrid(axis, axis)  # pylint: disable=invalid-name
    return axis, X2, Y2


def level_ladder(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    sigma0: float,
    count: int,
    grid: int = DEFAULT_LADDER_GRID,
) -> list[float]:
    """
    Energies splitting the section disk into bands of equal area.

    Returns:
        list[float]: Ascending energies strictly between E_L and E_R.
    """

    _, X2, Y2 = _disk_grid(sigma0, grid)  # pylint: disable=invalid-name
    inside = X2 ** 2 + Y2 ** 2 < 2 * sigma0
    values = np.asarray(model.section_value(X2[inside], Y2[inside], sigma0))
    lower, upper = secbif.logic.geometry.energy_limits(model, sigma0)
    levels = np.quantile(values, (np.arange(count) + 0.5) / count)
    return sorted({float(level) for level in levels if lower < level < upper})


def _section_gradient(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    X2: float,  # pylint: disable=invalid-name
    Y2: float,  # pylint: disable=invalid-name
    sigma0: float,
) -> np.ndarray | None:
    if (height_squared := 2 * sigma0 - X2 ** 2 - Y2 ** 2) <= 0:
        return None
    X3 = math.sqrt(height_squared)  # pylint: disable=invalid-name
    _, z1, z3 = model.gradient(sigma0, X2 * X3, X2 ** 2 + Y2 ** 2 - sigma0)
    return np.array([
        z1 * (X3 - X2 ** 2 / X3) + 2 * z3 * X2,
        z1 * (-X2 * Y2 / X3) + 2 * z3 * Y2,
    ])


def _polish(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    point: np.ndarray,
    level: float,
    sigma0: float,
    step_limit: float,
) -> np.ndarray:
    best, best_residual = point, abs(float(model.section_value(point[0], point[1], sigma0)) - level)
    for _ in range(POLISH_ITERATIONS):
        gradient = _section_gradient(model, best[0], best[1], sigma0)
        if gradient is None or not (norm_squared := float(gradient @ gradient)) > 0:
            break
        residual = float(model.section_value(best[0], best[1], sigma0)) - level
        step = -residual * gradient / norm_squared
        if (length := float(np.linalg.norm(step))) > step_limit:
            step *= step_limit / length
        candidate = best + step
        if candidate @ candidate >= 2 * sigma0:
            break
        if (candidate_residual := abs(float(model.section_value(candidate[0], candidate[1], sigma0)) - level)) >= best_residual:
            break
        best, best_residual = candidate, candidate_residual
    return best


def _clip_to_disk(points: np.ndarray, closed: bool, sigma0: float) -> list[tuple[np.ndarray, bool]]:
    inside = np.sum(points ** 2, axis=1) < 2 * sigma0
    if inside.all():
        return [(points, closed)]
    pieces, current = [], []
    for point, keep in zip(points, inside):
        if keep:
            current.append(point)
        elif current:
            pieces.append(current)
            current = []
    if current:
        if closed and inside[0] and pieces:
            pieces[0] = current + pieces[0]
        else:
            pieces.append(current)
    return [(np.array(piece), False) for piece in pieces if len(piece) > 1]


def _markers(census: secbif.data.critical.Census) -> list[Marker]:
    markers = []
    counters = {secbif.data.critical.CriticalKind.CPI: 0, secbif.data.critical.CriticalKind.CPII: 0}
    for point in census.points:
        counters[point.kind] += 1
        label = point.label or f'{point.kind.value}{counters[point.kind]}'
        try:
            X2, Y2 = secbif.logic.hopf.hopf_to_section_plane(point.location)  # pylint: disable=invalid-name
        except secbif.errors.PoleDegenerateError as pole:
            if pole.circle_radius_squared > point.sigma0:
                LOGGER.info(f'{label} sits on the north pole, which maps onto the whole rim: no marker')
                continue
            X2, Y2 = 0.0, 0.0  # pylint: disable=invalid-name
        markers.append(Marker(label=label, kind=point.kind, stability=point.stability, X2=X2, Y2=Y2, energy=point.energy))
    return markers


def contour_portrait(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    sigma0: float,
    levels: typing.Sequence[float],
    grid: int = DEFAULT_PORTRAIT_GRID,
    markers: bool = True,
    sigma0_max: float | None = None,
) -> Portrait:
    """
    Level curves of the reduced Hamiltonian on the section disk X2^2 + Y2^2 <= 2 sigma0.

    Points of the disk are embedded with X3 = sqrt(2 sigma0 - X2^2 - Y2^2) and Y3 = 0. Vertices are
    interpolated on the cell edges, then corrected by a few Newton steps along the gradient.
    Levels at an extremum become a single-vertex curve at the critical point's image.

    Args:
        model (secbif.data.hamiltonian.PolyHopfHamiltonian): The Hamiltonian.
        sigma0 (float): Radius of the sphere.
        levels (typing.Sequence[float]): Energies to draw.
        grid (int): Number of samples per axis.
        markers (bool): Attach the critical points' section images.
        sigma0_max (float | None): Largest feasible sigma0, usually the AMD.

    Returns:
        Portrait: Curves by ascending level.

    Raises:
        secbif.errors.InfeasibleSigma0Error: If sigma0 is not in (0, sigma0_max].
        secbif.errors.EmptyLevelError: If a level lies outside [E_L, E_R].
    """

    if not sigma0 > 0 or (sigma0_max is not None and sigma0 > sigma0_max):
        raise secbif.errors.InfeasibleSigma0Error(f'sigma0={sigma0} outside the feasible range (0, {sigma0_max}]')
    census = secbif.logic.geometry.census(model, sigma0)
    energies = [point.energy for point in census.points]
    lower, upper = min(energies), max(energies)
    spread = max(upper - lower, secbif.data.state.TOLERANCE_FLOOR)
    extremum_tolerance = 1e-12 * spread
    for level in levels:
        if not lower - extremum_tolerance <= level <= upper + extremum_tolerance:
            raise secbif.errors.EmptyLevelError(f'Level {level} outside [{lower}, {upper}] at sigma0={sigma0}')

    axis, X2, Y2 = _disk_grid(sigma0, grid)  # pylint: disable=invalid-name
    values = np.asarray(model.section_value(X2, Y2, sigma0))
    step_limit = float(axis[1] - axis[0])
    image_markers = _markers(census)

    def _center(x: float, y: float) -> float:
        return float(model.section_value(x, y, sigma0))

    curves: list[PortraitCurve] = []
    for level in sorted(levels):
        if abs(level - lower) <= extremum_tolerance or abs(level - upper) <= extremum_tolerance:
            for marker in image_markers:
                if abs(marker.energy - level) <= extremum_tolerance:
                    curves.append(PortraitCurve(points=np.array([[marker.X2, marker.Y2]]), level=level, sigma0=sigma0, closed=True))
            continue
        for points, closed in secbif.logic.contours.marching_squares(axis, axis, values, level, center=_center):
            for piece, piece_closed in _clip_to_disk(points, closed, sigma0):
                polished = np.array([_polish(model, point, level, sigma0, step_limit) for point in piece])
                if piece_closed:
                    polished = np.vstack([polished, polished[:1]])
                curves.append(PortraitCurve(points=polished, level=level, sigma0=sigma0, closed=piece_closed))
    LOGGER.info(f'Portrait at sigma0={sigma0}: {len(curves)} curves over {len(levels)} levels')
    return Portrait(
        sigma0=sigma0,
        levels=tuple(sorted(levels)),
        curves=tuple(curves),
        markers=tuple(image_markers) if markers else (),
    )


def floquet_confirm(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    point: secbif.data.critical.CriticalPoint,
) -> FloquetResult:
    """
    Eigenvalues of the tangent-plane linearization at an equilibrium and their agreement with the point's stability.
    """

    linearization = secbif.logic.hopf.tangent_linearization(model, point.location)
    eigenvalues = np.linalg.eigvals(linearization)
    scale = float(np.linalg.norm(secbif.logic.hopf.reduced_flow_jacobian(model, point.location)))
    growth = float(np.max(np.abs(eigenvalues.real)))
    if float(np.max(np.abs(eigenvalues))) <= secbif.logic.geometry.MARGINAL_TOLERANCE * scale:
        stability = secbif.data.critical.Stability.MARGINAL
    elif growth > secbif.logic.geometry.MARGINAL_TOLERANCE * scale:
        stability = secbif.data.critical.Stability.UNSTABLE
    else:
        stability = secbif.data.critical.Stability.STABLE
    consistent = point.stability is stability or secbif.data.critical.Stability.MARGINAL in (point.stability, stability)
    if not consistent:
        LOGGER.warning(f'Floquet verdict {stability.value} disagrees with {point.stability.value} at {point.location}')
    first, second = sorted(eigenvalues, key=lambda value: (value.real, value.imag))
    return FloquetResult(eigenvalues=(complex(first), complex(second)), stability=stability, consistent=consistent)
