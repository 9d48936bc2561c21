import functools
import math

import numpy as np

import secbif.data.hamiltonian
import secbif.data.state
import secbif.logic.hopf
import secbif.logic.quadratic

RANDOM_QUADRATICS = 100
SAMPLED_SPHERES = (0.05, 0.2, 0.6)
# relative distance to a threshold inside which counts are not compared
THRESHOLD_MARGIN = 0.02


@functools.lru_cache
def random_quadratic(seed: int) -> secbif.data.hamiltonian.QuadHopfHamiltonian:
    generator = np.random.default_rng(seed)
    A, C = generator.uniform(0.2, 1.0), generator.uniform(-1.0, 0.1)  # pylint: disable=invalid-name
    return secbif.data.hamiltonian.QuadHopfHamiltonian(
        A=float(A),
        B=0.0,
        C=float(C),
        D1=float(generator.uniform(-1.0, 1.0)),
        Delta1=float(generator.uniform(-0.1, 0.1)),
        D3=float(generator.uniform(-1.0, 1.0)),
        Delta3=float(generator.uniform(-0.1, 0.1)),
    )


@functools.lru_cache
def comparable_spheres(seed: int) -> tuple[float, ...]:
    model = random_quadratic(seed)
    thresholds = secbif.logic.quadratic.f1_roots(model, 1.0)
    thresholds += secbif.logic.quadratic.discriminant_artifacts(model)
    return tuple(
        sigma0
        for sigma0 in SAMPLED_SPHERES
        if all(abs(sigma0 - threshold) > THRESHOLD_MARGIN * sigma0 for threshold in thresholds)
    )


@functools.lru_cache
def random_sphere_points(seed: int, sigma0: float, count: int) -> tuple[secbif.data.state.HopfState, ...]:
    generator = np.random.default_rng(seed)
    points = []
    for direction in generator.normal(size=(count, 3)):
        direction = direction / np.linalg.norm(direction)
        points.append(secbif.data.state.HopfState.from_vector(sigma0, sigma0 * direction))
    return tuple(points)


def directed_distance(points: np.ndarray, polylines: list[np.ndarray]) -> float:
    """
    Largest distance from a point to the nearest segment of any polyline.
    """

    worst = 0.0
    for point in points:
        best = math.inf
        for line in polylines:
            if len(line) == 1:
                best = min(best, float(np.linalg.norm(point - line[0])))
                continue
            starts, ends = line[:-1], line[1:]
            segments = ends - starts
            lengths = np.maximum(np.sum(segments ** 2, axis=1), 1e-300)
            fractions = np.clip(np.sum((point - starts) * segments, axis=1) / lengths, 0.0, 1.0)
            nearest = starts + fractions[:, None] * segments
            best = min(best, float(np.min(np.linalg.norm(nearest - point, axis=1))))
        worst = max(worst, best)
    return worst


def section_image(state: secbif.data.state.HopfState) -> tuple[float, float]:
    return secbif.logic.hopf.hopf_to_section_plane(state)
