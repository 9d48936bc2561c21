"""
Critical points of a general Hopf Hamiltonian on the sphere of radius sigma0.

First-kind points are tangencies of a level set of Z with the meridian circle sigma2 = 0. Second-kind
points are where the planar gradient of Z vanishes inside the disk, giving a mirror pair in sigma2.
The census of both kinds along decreasing sigma0 gives the bifurcation sequence.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import itertools
import logging
import math
import os
import string
import typing

import numpy as np
import scipy.optimize

import secbif.data.critical
import secbif.data.hamiltonian
import secbif.data.state
import secbif.errors
import secbif.logic.hopf

DEFAULT_MERIDIAN_SAMPLES = 4096
MAX_MERIDIAN_SAMPLES = 2 ** 16
ANGLE_MERGE_DISTANCE = 1e-10
MARGINAL_TOLERANCE = 1e-8
CPII_SEEDS = 5
CPII_TOLERANCE = 1e-12
DEFAULT_COARSE_STEPS = 512
DEFAULT_DOMAIN_SAMPLES = 200

LOGGER = logging.getLogger(__name__)

Hamiltonian = secbif.data.hamiltonian.PolyHopfHamiltonian
CriticalPoint = secbif.data.critical.CriticalPoint
Census = secbif.data.critical.Census


def _meridian_function(model: Hamiltonian, sigma0: float) -> typing.Callable[[typing.Any], typing.Any]:
    def _g(theta):
        sigma1, sigma3 = sigma0 * np.cos(theta), sigma0 * np.sin(theta)
        _, z1, z3 = model.gradient(sigma0, sigma1, sigma3)
        return sigma3 * z1 - sigma1 * z3
    return _g


def _meridian_roots(model: Hamiltonian, sigma0: float, samples: int, max_samples: int) -> list[float]:
    g = _meridian_function(model, sigma0)
    while True:
        # half-offset grid, no sample ever sits on a pole or on theta = 0
        theta = -math.pi + (np.arange(samples) + 0.5) * 2 * math.pi / samples
        values = np.asarray(g(theta))
        _, z1, z3 = model.gradient(sigma0, sigma0 * np.cos(theta), sigma0 * np.sin(theta))
        scale = sigma0 * float(np.max(np.hypot(z1, z3)))
        if float(np.max(np.abs(values))) <= 1e-13 * scale + secbif.data.state.TOLERANCE_FLOOR:
            raise secbif.errors.DegenerateConstantError(f'Z is constant on the meridian circle of sigma0={sigma0}')

        roots: list[float] = []
        near_miss = False
        for index in range(samples):
            following = (index + 1) % samples
            left, right = theta[index], theta[following] + (2 * math.pi if following == 0 else 0.0)
            if values[index] == 0:
                roots.append(float(left))
            elif values[index] * values[following] < 0:
                roots.append(scipy.optimize.brentq(g, left, right, xtol=1e-15))
            previous = values[index - 1]
            if (
                abs(values[index]) < abs(previous)
                and abs(values[index]) < abs(values[following])
                and np.sign(previous) == np.sign(values[index]) == np.sign(values[following])
            ):
                # parabola through the three samples dipping across zero hides a root pair
                curvature = (previous - 2 * values[index] + values[following]) / 2
                slope = (values[following] - previous) / 2
                if curvature != 0 and (values[index] - slope ** 2 / (4 * curvature)) * values[index] <= 0:
                    near_miss = True
        if not near_miss or samples >= max_samples:
            if near_miss:
                LOGGER.warning(f'Meridian roots nearly merge at sigma0={sigma0} even with {samples} samples')
            break
        samples *= 2
        LOGGER.debug(f'Refining meridian scan at sigma0={sigma0} to {samples} samples')

    merged: list[float] = []
    for root in sorted(math.remainder(root, 2 * math.pi) for root in roots):
        if merged and root - merged[-1] < ANGLE_MERGE_DISTANCE:
            continue
        merged.append(root)
    if len(merged) > 1 and merged[0] + 2 * math.pi - merged[-1] < ANGLE_MERGE_DISTANCE:
        merged.pop()
    return merged


def _spectral_scale(model: Hamiltonian, state: secbif.data.state.HopfState) -> float:
    return float(np.linalg.norm(secbif.logic.hopf.reduced_flow_jacobian(model, state)))


def curvature_tangency(model: Hamiltonian, point: CriticalPoint) -> secbif.data.critical.Tangency:
    """
    Inner or outer tangency read from the geometry of the level curve.

    The tangency is outer when the normal derivative of Z and its second derivative along the circle
    have opposite signs, so the level curve stays outside the circle.
    """

    sigma0, sigma1, _, sigma3 = point.location.as_tuple()
    _, z1, z3 = model.gradient(sigma0, sigma1, sigma3)
    z11, z13, z33 = model.hessian(sigma0, sigma1, sigma3)
    cos_theta, sin_theta = sigma1 / sigma0, sigma3 / sigma0
    normal = z1 * cos_theta + z3 * sin_theta
    along = sigma0 ** 2 * (z11 * sin_theta ** 2 - 2 * z13 * sin_theta * cos_theta + z33 * cos_theta ** 2) - sigma0 * normal
    product = normal * along
    scale = abs(normal) * (sigma0 ** 2 * (abs(z11) + 2 * abs(z13) + abs(z33)) + sigma0 * abs(normal))
    if abs(product) <= MARGINAL_TOLERANCE * scale:
        return secbif.data.critical.Tangency.DEGENERATE
    return secbif.data.critical.Tangency.OUTER if product < 0 else secbif.data.critical.Tangency.INNER


def classify_cpi(model: Hamiltonian, point: CriticalPoint) -> CriticalPoint:
    """
    Classify a first-kind critical point from the linearized flow in the tangent plane.

    A conjugate imaginary eigenvalue pair means an outer tangency and a stable point. A real pair
    means an inner tangency and an unstable point. Eigenvalues below MARGINAL_TOLERANCE times the
    spectral scale are marginal.

    Args:
        model (Hamiltonian): The Hamiltonian.
        point (CriticalPoint): A first-kind critical point.

    Returns:
        CriticalPoint: The point with tangency, stability and lambda_squared filled in.
    """

    if point.kind is not secbif.data.critical.CriticalKind.CPI:
        raise ValueError(f'Only first-kind points can be classified by tangency, got {point.kind}')
    linearization = secbif.logic.hopf.tangent_linearization(model, point.location)
    lambda_squared = -float(np.linalg.det(linearization))
    if math.sqrt(abs(lambda_squared)) <= MARGINAL_TOLERANCE * _spectral_scale(model, point.location):
        tangency, stability = secbif.data.critical.Tangency.DEGENERATE, secbif.data.critical.Stability.MARGINAL
    elif lambda_squared < 0:
        tangency, stability = secbif.data.critical.Tangency.OUTER, secbif.data.critical.Stability.STABLE
    else:
        tangency, stability = secbif.data.critical.Tangency.INNER, secbif.data.critical.Stability.UNSTABLE
    if (
        tangency is not secbif.data.critical.Tangency.DEGENERATE
        and (geometric := curvature_tangency(model, point)) is not secbif.data.critical.Tangency.DEGENERATE
        and geometric is not tangency
    ):
        LOGGER.warning(f'Eigenvalue and curvature tests disagree at theta={point.angle}: {tangency.value} vs {geometric.value}')
    return dataclasses.replace(point, tangency=tangency, stability=stability, lambda_squared=lambda_squared)


def find_cpi(
    model: Hamiltonian,
    sigma0: float,
    samples: int = DEFAULT_MERIDIAN_SAMPLES,
    max_samples: int = MAX_MERIDIAN_SAMPLES,
) -> list[CriticalPoint]:
    """
    First-kind critical points: zeros of g(theta) = sigma3 dZ/dsigma1 - sigma1 dZ/dsigma3 on the meridian circle.

    Args:
        model (Hamiltonian): The Hamiltonian.
        sigma0 (float): Radius of the sphere.
        samples (int): Initial size of the sign-scan grid.
        max_samples (int): Largest grid used when neighbouring roots nearly merge.

    Returns:
        list[CriticalPoint]: Classified points, by increasing meridian angle.

    Raises:
        ValueError: If sigma0 is not positive.
        secbif.errors.DegenerateConstantError: If Z is constant on the circle.
    """

    if not sigma0 > 0:
        raise ValueError(f'Critical points need sigma0 > 0, got {sigma0}')
    points = []
    for theta in _meridian_roots(model, sigma0, samples, max_samples):
        sigma1, sigma3 = sigma0 * math.cos(theta), sigma0 * math.sin(theta)
        points.append(classify_cpi(model, CriticalPoint(
            location=secbif.data.state.HopfState(sigma0=sigma0, sigma1=sigma1, sigma2=0.0, sigma3=sigma3),
            kind=secbif.data.critical.CriticalKind.CPI,
            tangency=None,
            stability=secbif.data.critical.Stability.MARGINAL,
            energy=float(model.value(sigma0, sigma1, sigma3)),
            angle=theta,
        )))
    LOGGER.debug(f'Found {len(points)} CPI points at sigma0={sigma0}')
    return points


def _planar_critical_points(model: Hamiltonian, sigma0: float) -> list[tuple[float, float]]:
    if model.is_quadratic:
        quad = model.to_quad()
        if (determinant := 4 * quad.A * quad.C - quad.B ** 2) == 0:
            LOGGER.debug(f'Singular quadratic form: no isolated CPII at sigma0={sigma0}')
            return []
        linear_sigma1, linear_sigma3 = quad.linear(sigma0)
        return [(
            (-2 * quad.C * linear_sigma1 + quad.B * linear_sigma3) / determinant,
            (quad.B * linear_sigma1 - 2 * quad.A * linear_sigma3) / determinant,
        )]

    def _planar_gradient(point: np.ndarray) -> np.ndarray:
        _, z1, z3 = model.gradient(sigma0, point[0], point[1])
        return np.array([z1, z3])

    def _planar_hessian(point: np.ndarray) -> np.ndarray:
        z11, z13, z33 = model.hessian(sigma0, point[0], point[1])
        return np.array([[z11, z13], [z13, z33]])

    found: list[tuple[float, float]] = []
    seeds = np.linspace(-sigma0, sigma0, CPII_SEEDS)
    for seed in itertools.product(seeds, seeds):
        solution = scipy.optimize.root(_planar_gradient, np.array(seed), jac=_planar_hessian, method='hybr')
        if not solution.success:
            continue
        gradient_scale = float(np.linalg.norm(_planar_hessian(solution.x))) * sigma0
        if np.linalg.norm(_planar_gradient(solution.x)) > CPII_TOLERANCE * max(gradient_scale, 1e-300):
            continue
        if any(math.hypot(solution.x[0] - other[0], solution.x[1] - other[1]) <= 1e-9 * sigma0 for other in found):
            continue
        found.append((float(solution.x[0]), float(solution.x[1])))
    return found


def find_cpii(model: Hamiltonian, sigma0: float) -> list[CriticalPoint]:
    """
    Second-kind critical points: the mirror pairs above and below the zeros of the planar gradient inside the disk.

    Stability is read from the sign-definiteness of the (sigma1, sigma3) Hessian of Z.

    Args:
        model (Hamiltonian): The Hamiltonian.
        sigma0 (float): Radius of the sphere.

    Returns:
        list[CriticalPoint]: The pairs, the sigma2 > 0 member first. Possibly empty.
    """

    if not sigma0 > 0:
        raise ValueError(f'Critical points need sigma0 > 0, got {sigma0}')
    points: list[CriticalPoint] = []
    for sigma1, sigma3 in _planar_critical_points(model, sigma0):
        if (height_squared := sigma0 ** 2 - sigma1 ** 2 - sigma3 ** 2) <= 0:
            continue
        z11, z13, z33 = model.hessian(sigma0, sigma1, sigma3)
        determinant = z11 * z33 - z13 ** 2
        if abs(determinant) <= MARGINAL_TOLERANCE * (z11 ** 2 + z33 ** 2 + 2 * z13 ** 2):
            stability = secbif.data.critical.Stability.MARGINAL
        else:
            stability = secbif.data.critical.Stability.STABLE if determinant > 0 else secbif.data.critical.Stability.UNSTABLE
        for side in (1.0, -1.0):
            location = secbif.data.state.HopfState(
                sigma0=sigma0, sigma1=sigma1, sigma2=side * math.sqrt(height_squared), sigma3=sigma3,
            )
            points.append(CriticalPoint(
                location=location,
                kind=secbif.data.critical.CriticalKind.CPII,
                tangency=None,
                stability=stability,
                energy=float(model.value(sigma0, sigma1, sigma3)),
                lambda_squared=-float(np.linalg.det(secbif.logic.hopf.tangent_linearization(model, location))),
            ))
    LOGGER.debug(f'Found {len(points)} CPII points at sigma0={sigma0}')
    return points


def census(model: Hamiltonian, sigma0: float) -> Census:
    return Census(sigma0=sigma0, points=(*find_cpi(model, sigma0), *find_cpii(model, sigma0)))


def energy_limits(model: Hamiltonian, sigma0: float) -> tuple[float, float]:
    """
    Lowest and highest value of Z on the sphere.

    Z restricted to the sphere takes every value it takes on the disk sigma1^2 + sigma3^2 <= sigma0^2,
    so the extrema sit either on the rim (first kind) or inside (second kind).

    Returns:
        tuple[float, float]: (E_L, E_R).
    """

    energies = [point.energy for point in (*find_cpi(model, sigma0), *find_cpii(model, sigma0))]
    return min(energies), max(energies)


def _worker_count(threads: int) -> int:
    return threads if threads > 0 else (os.cpu_count() or 1)


def domain_limits(
    model: Hamiltonian,
    sigma0_amd: float,
    samples: int = DEFAULT_DOMAIN_SAMPLES,
    threads: int = 0,
) -> secbif.data.critical.DomainLimits:
    """
    Energy envelope of the permissible domain over sigma0 in (0, sigma0_amd].

    Args:
        model (Hamiltonian): The Hamiltonian.
        sigma0_amd (float): Largest sphere, the AMD of the system.
        samples (int): Number of sampled sigma0 values.
        threads (int): Worker threads, 0 for one per CPU.

    Returns:
        secbif.data.critical.DomainLimits: The sampled envelope and its global bounds.
    """

    if not sigma0_amd > 0:
        raise ValueError(f'Invalid sigma0 range: (0, {sigma0_amd}]')
    grid = np.linspace(sigma0_amd / samples, sigma0_amd, samples)
    with concurrent.futures.ThreadPoolExecutor(max_workers=_worker_count(threads)) as executor:
        limits = list(executor.map(lambda sigma0: energy_limits(model, float(sigma0)), grid))
    lower = tuple(limit[0] for limit in limits)
    upper = tuple(limit[1] for limit in limits)
    return secbif.data.critical.DomainLimits(
        sigma0_grid=tuple(float(sigma0) for sigma0 in grid),
        E_L=lower,
        E_R=upper,
        E_min=min(lower),
        E_23=upper[-1],
        sigma0_AMD=sigma0_amd,
    )


def sigma0_limits(
    model: Hamiltonian,
    energy: float,
    sigma0_max: float,
    samples: int = DEFAULT_DOMAIN_SAMPLES,
) -> tuple[float, float]:
    """
    Range of spheres on which the energy level is not empty.

    Args:
        model (Hamiltonian): The Hamiltonian.
        energy (float): The energy level.
        sigma0_max (float): Largest admissible sigma0.
        samples (int): Size of the bracketing grid.

    Returns:
        tuple[float, float]: (sigma0_min, sigma0_max_at_E).

    Raises:
        secbif.errors.EmptyDomainError: If no sigma0 in (0, sigma0_max] admits the energy.
    """

    grid = np.linspace(sigma0_max / samples, sigma0_max, samples)
    limits = [energy_limits(model, float(sigma0)) for sigma0 in grid]
    admissible = [lower <= energy <= upper for lower, upper in limits]
    if not any(admissible):
        raise secbif.errors.EmptyDomainError(f'No sphere with sigma0 in (0, {sigma0_max}] reaches energy {energy}')
    first = admissible.index(True)
    last = len(admissible) - 1 - admissible[::-1].index(True)
    if not all(admissible[first:last + 1]):
        LOGGER.warning(f'Energy {energy} is admissible on several disjoint sigma0 intervals; reporting the hull')

    def _boundary(inside: int, outside: int) -> float:
        lower, upper = limits[outside]
        bound = 0 if energy < lower else 1

        def _excess(sigma0: float) -> float:
            return energy_limits(model, sigma0)[bound] - energy

        try:
            return scipy.optimize.brentq(_excess, grid[min(inside, outside)], grid[max(inside, outside)], xtol=1e-15)
        except ValueError as bracket_error:
            LOGGER.warning(f'Could not refine sigma0 boundary of energy {energy}: {bracket_error}')
            return float(grid[inside])

    sigma0_min = float(grid[first]) if first == 0 else _boundary(first, first - 1)
    sigma0_top = float(grid[last]) if last == len(grid) - 1 else _boundary(last, last + 1)
    return sigma0_min, sigma0_top


def _angle_distance(first: float, second: float) -> float:
    return abs(math.remainder(first - second, 2 * math.pi))


def _initial_labels() -> typing.Iterator[str]:
    for length in itertools.count(1):
        for letters in itertools.product(string.ascii_uppercase, repeat=length):
            yield ''.join(letters)


@dataclasses.dataclass(kw_only=True)
class _LabelTracker:
    """
    Names critical points by continuity along decreasing sigma0.
    """

    born_pairs: int = 0
    cpii_pairs: int = 0

    def start(self, first: Census) -> Census:
        names = _initial_labels()
        labels = {
            id(point): next(names)
            for point in sorted(first.cpi, key=lambda point: point.energy)
        }
        cpi = tuple(point.with_label(labels[id(point)]) for point in first.cpi)
        return Census(sigma0=first.sigma0, points=(*cpi, *self._new_cpii(first.cpii)))

    def _new_cpii(self, points: typing.Sequence[CriticalPoint]) -> list[CriticalPoint]:
        labelled = []
        for upper, lower in zip(points[0::2], points[1::2]):
            self.cpii_pairs += 1
            labelled.append(upper.with_label(f'F{2 * self.cpii_pairs - 1}'))
            labelled.append(lower.with_label(f'F{2 * self.cpii_pairs}'))
        return labelled

    def follow(self, previous: Census, current: Census) -> Census:
        cpi = list(current.cpi)
        labels: dict[int, str] = {}
        if previous.cpi and cpi:
            cost = np.array([[_angle_distance(old.angle, new.angle) for new in cpi] for old in previous.cpi])
            for old_index, new_index in zip(*scipy.optimize.linear_sum_assignment(cost)):
                labels[new_index] = previous.cpi[old_index].label
        unmatched = sorted(
            (index for index in range(len(cpi)) if index not in labels),
            key=lambda index: (not cpi[index].hyperbolic, cpi[index].angle),
        )
        for first, second in zip(unmatched[0::2], unmatched[1::2]):
            self.born_pairs += 1
            labels[first] = f'P{2 * self.born_pairs - 1}'
            labels[second] = f'P{2 * self.born_pairs}'
        if len(unmatched) % 2:
            self.born_pairs += 1
            labels[unmatched[-1]] = f'P{2 * self.born_pairs - 1}'
        cpi_labelled = [point.with_label(labels[index]) for index, point in enumerate(cpi)]

        cpii = list(current.cpii)
        cpii_labelled: list[CriticalPoint] = []
        if previous.cpii and cpii:
            cost = np.array([[np.linalg.norm(old.location.vector - new.location.vector) for new in cpii] for old in previous.cpii])
            matched = dict(
                (new_index, previous.cpii[old_index].label)
                for old_index, new_index in zip(*scipy.optimize.linear_sum_assignment(cost))
            )
            cpii_labelled = [point.with_label(matched[index]) for index, point in enumerate(cpii) if index in matched]
            cpii = [point for index, point in enumerate(cpii) if index not in matched]
        return Census(sigma0=current.sigma0, points=(*cpi_labelled, *cpii_labelled, *self._new_cpii(cpii)))


def _type_event(high: Census, low: Census) -> secbif.data.critical.BifurcationEvent:
    cpi_high, cpi_low = {point.label: point for point in high.cpi}, {point.label: point for point in low.cpi}
    cpii_high, cpii_low = {point.label: point for point in high.cpii}, {point.label: point for point in low.cpii}
    cpi_delta = len(cpi_low) - len(cpi_high)
    cpii_delta = len(cpii_low) - len(cpii_high)
    flips = tuple(
        (label, cpi_high[label].stability.value, cpi_low[label].stability.value)
        for label in sorted(cpi_high.keys() & cpi_low.keys())
        if cpi_high[label].stability is not cpi_low[label].stability
    )
    event_type = secbif.data.critical.EventType.UNRESOLVED
    participants: list[str] = []
    if cpi_delta == 2 and cpii_delta == 0:
        event_type = secbif.data.critical.EventType.SADDLE_NODE
        participants = sorted(cpi_low.keys() - cpi_high.keys())
    elif cpi_delta == -2 and cpii_delta == 0:
        event_type = secbif.data.critical.EventType.INVERSE_SADDLE_NODE
        participants = sorted(cpi_high.keys() - cpi_low.keys())
    elif cpi_delta == 0 and cpii_delta == 2:
        event_type = secbif.data.critical.EventType.PITCHFORK
        participants = [*(flip[0] for flip in flips), *sorted(cpii_low.keys() - cpii_high.keys())]
    elif cpi_delta == 0 and cpii_delta == -2:
        event_type = secbif.data.critical.EventType.INVERSE_PITCHFORK
        participants = [*(flip[0] for flip in flips), *sorted(cpii_high.keys() - cpii_low.keys())]
    if event_type in (secbif.data.critical.EventType.PITCHFORK, secbif.data.critical.EventType.INVERSE_PITCHFORK) and not flips:
        LOGGER.warning(f'{event_type.value} near sigma0={high.sigma0} without an on-plane stability flip')
    if event_type is secbif.data.critical.EventType.UNRESOLVED:
        participants = sorted((cpi_high.keys() ^ cpi_low.keys()) | (cpii_high.keys() ^ cpii_low.keys()) | {flip[0] for flip in flips})
    everyone = {**cpi_high, **cpii_high, **cpi_low, **cpii_low}
    return secbif.data.critical.BifurcationEvent(
        type=event_type,
        sigma0_bracket=(low.sigma0, high.sigma0),
        participants=tuple(participants),
        stability_changes=flips,
        energies=tuple(everyone[label].energy for label in participants),
    )


def bifurcation_sequence(
    model: Hamiltonian,
    sigma0_range: tuple[float, float],
    resolution: float,
    coarse_steps: int = DEFAULT_COARSE_STEPS,
    threads: int = 0,
) -> secbif.data.critical.BifurcationSequence:
    """
    Sweep sigma0 downwards and type every change of the critical-point census.

    A change between neighbouring grid values is bracketed by bisection until the bracket is narrower
    than the resolution. Event types follow the change of counts read towards lower sigma0:
    two new first-kind points is a saddle-node, two fewer an inverse saddle-node, a new second-kind
    pair a pitchfork and a lost pair an inverse pitchfork.

    Args:
        model (Hamiltonian): The Hamiltonian.
        sigma0_range (tuple[float, float]): (low, high) ends of the sweep.
        resolution (float): Largest width of an event bracket.
        coarse_steps (int): Number of steps of the initial sweep.
        threads (int): Worker threads for the sweep, 0 for one per CPU.

    Returns:
        secbif.data.critical.BifurcationSequence: Events by decreasing sigma0, with the labelled censuses.
    """

    low, high = sigma0_range
    if not 0 < low < high:
        raise ValueError(f'Invalid sigma0 range: {sigma0_range}')
    if not resolution > 0:
        raise ValueError(f'Invalid resolution: {resolution}')

    grid = np.linspace(high, low, coarse_steps + 1)
    with concurrent.futures.ThreadPoolExecutor(max_workers=_worker_count(threads)) as executor:
        sweep = list(executor.map(lambda sigma0: census(model, float(sigma0)), grid))

    brackets: list[tuple[Census, Census]] = []

    def _refine(upper: Census, lower: Census) -> None:
        if upper.sigma0 - lower.sigma0 <= resolution:
            brackets.append((upper, lower))
            return
        middle = census(model, (upper.sigma0 + lower.sigma0) / 2)
        if middle.signature != upper.signature:
            _refine(upper, middle)
        if middle.signature != lower.signature:
            _refine(middle, lower)

    for upper, lower in zip(sweep, sweep[1:]):
        if upper.signature != lower.signature:
            _refine(upper, lower)

    ordered = sorted({item.sigma0: item for item in (*sweep, *itertools.chain.from_iterable(brackets))}.values(),
                     key=lambda item: -item.sigma0)
    tracker = _LabelTracker()
    labelled = [tracker.start(ordered[0])]
    for current in ordered[1:]:
        labelled.append(tracker.follow(labelled[-1], current))
    by_sigma0 = {item.sigma0: item for item in labelled}

    events: list[secbif.data.critical.BifurcationEvent] = []
    unresolved: list[secbif.data.critical.BifurcationEvent] = []
    for upper, lower in brackets:
        event = _type_event(by_sigma0[upper.sigma0], by_sigma0[lower.sigma0])
        if event.type is secbif.data.critical.EventType.UNRESOLVED:
            LOGGER.warning(f'Unresolved event in sigma0 bracket {event.sigma0_bracket}: {upper.signature} -> {lower.signature}')
            unresolved.append(event)
        else:
            LOGGER.info(f'{event.type.value} at sigma0 in {event.sigma0_bracket}: {", ".join(event.participants)}')
            events.append(event)
    return secbif.data.critical.BifurcationSequence(
        events=tuple(sorted(events, key=lambda event: -event.sigma0)),
        censuses=tuple(by_sigma0[float(sigma0)] for sigma0 in grid),
        unresolved=tuple(sorted(unresolved, key=lambda event: -event.sigma0)),
    )
