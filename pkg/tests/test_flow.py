import functools
import logging
import math

import numpy as np
import pytest

import secbif.data.hamiltonian
import secbif.data.processor.input
import secbif.data.state
import secbif.errors
import secbif.logic.contours
import secbif.logic.flow
import secbif.logic.geometry
import secbif.logic.hopf

from conftest import fixture_path
from helpers import directed_distance, random_sphere_points, section_image

CONSERVATION_SEEDS = (3, 5, 8)
CONSERVATION_SPHERE = 0.02
DRIFT_LIMIT = 1e-8
PORTRAIT_GRID = 2048
PORTRAIT_SIGMA0 = 0.05
SECTION_START = (0.1, 0.05)
# fast rotation of the outer angle keeps every crossing on the X3 > 0 sheet
SECTION_MODEL = secbif.data.hamiltonian.QuadHopfHamiltonian(
    A=0.2, B=0.0, C=-0.1, D1=0.3, Delta1=0.002, D3=-0.2, Delta3=0.001, F1=-1.0,
)


@functools.lru_cache
def section_level() -> float:
    return float(SECTION_MODEL.to_poly().section_value(*SECTION_START, PORTRAIT_SIGMA0))


@functools.lru_cache
def section_portrait() -> secbif.logic.flow.Portrait:
    return secbif.logic.flow.contour_portrait(
        SECTION_MODEL.to_poly(), PORTRAIT_SIGMA0, [section_level()], grid=PORTRAIT_GRID, markers=False,
    )


def portrait_tolerance() -> float:
    return math.sqrt(2 * PORTRAIT_SIGMA0) / PORTRAIT_GRID


@pytest.mark.parametrize('seed', CONSERVATION_SEEDS)
def test_reduced_flow_keeps_sphere_and_energy(
    tests_logger: logging.Logger,
    hyperbola_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
    seed: int,
) -> None:
    start, = random_sphere_points(seed, CONSERVATION_SPHERE, 1)
    trajectory = secbif.logic.flow.integrate_reduced(hyperbola_model.to_poly(), start, 500.0, tol=1e-12)
    assert trajectory.t[-1] == pytest.approx(500.0)
    assert trajectory.casimir_drift < DRIFT_LIMIT
    assert trajectory.energy_drift < DRIFT_LIMIT
    tests_logger.info(f'Seed {seed}: Casimir drift {trajectory.casimir_drift:.2e}, energy drift {trajectory.energy_drift:.2e}')


def test_renormalized_flow_stays_on_the_sphere(
    tests_logger: logging.Logger,
    hyperbola_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    start, = random_sphere_points(CONSERVATION_SEEDS[0], CONSERVATION_SPHERE, 1)
    trajectory = secbif.logic.flow.integrate_reduced(hyperbola_model.to_poly(), start, 200.0, renormalize=True)
    assert trajectory.casimir_drift < 1e-13
    tests_logger.info(f'Renormalized Casimir drift {trajectory.casimir_drift:.2e}')


def test_reduced_flow_rejects_points_off_the_sphere(
    tests_logger: logging.Logger,
    hyperbola_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    start = secbif.data.state.HopfState(sigma0=0.02, sigma1=0.02, sigma2=0.01, sigma3=0.0)
    with pytest.raises(ValueError):
        secbif.logic.flow.integrate_reduced(hyperbola_model.to_poly(), start, 1.0)
    tests_logger.info('Off-sphere start is rejected')


def test_decoupled_oscillators_draw_circles(tests_logger: logging.Logger) -> None:
    model = secbif.data.processor.input.PoincareModelInput.read(fixture_path('oscillators.json'))
    start = secbif.data.state.PoincareState(X2=0.3, Y2=0.0, X3=0.2, Y3=0.0)
    points = secbif.logic.flow.poincare_section(model, start, 20.0)
    assert len(points) >= 5
    for point in points:
        assert math.hypot(point.X2, point.Y2) == pytest.approx(0.3, rel=1e-8)
        assert abs(point.energy_residual) < 1e-9
    assert [point.t for point in points] == sorted(point.t for point in points)
    tests_logger.info(f'{len(points)} crossings on the circle of radius 0.3')


def test_reduced_orbit_runs_along_its_level_curve(tests_logger: logging.Logger) -> None:
    model = SECTION_MODEL.to_poly()
    start = secbif.logic.hopf.section_plane_to_hopf(*SECTION_START, PORTRAIT_SIGMA0)
    trajectory = secbif.logic.flow.integrate_reduced(model, start, 150.0, tol=1e-12)
    images = np.array([
        section_image(secbif.data.state.HopfState.from_vector(PORTRAIT_SIGMA0, state))
        for state in trajectory.states
    ])
    distance = directed_distance(images, [curve.points for curve in section_portrait().curves])
    assert distance < 0.5 * portrait_tolerance()
    tests_logger.info(f'Reduced orbit stays within {distance:.2e} of the level curve')


def test_section_crossings_lie_on_the_portrait(tests_logger: logging.Logger) -> None:
    model = secbif.data.hamiltonian.PoincarePolyHamiltonian.from_hopf(SECTION_MODEL.to_poly())
    X2, Y2 = SECTION_START  # pylint: disable=invalid-name
    start = secbif.data.state.PoincareState(X2=X2, Y2=Y2, X3=math.sqrt(2 * PORTRAIT_SIGMA0 - X2 ** 2 - Y2 ** 2), Y3=0.0)
    points = secbif.logic.flow.poincare_section(model, start, 80.0, tol=1e-12)
    assert len(points) >= 10
    assert all(point.X3 > 0 for point in points)
    crossings = np.array([[point.X2, point.Y2] for point in points])
    distance = directed_distance(crossings, [curve.points for curve in section_portrait().curves])
    assert distance < 0.5 * portrait_tolerance()
    tests_logger.info(f'{len(points)} crossings within {distance:.2e} of the portrait')


def test_portrait_rejects_infeasible_requests(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    model = octupole_model.to_poly()
    with pytest.raises(secbif.errors.InfeasibleSigma0Error):
        secbif.logic.flow.contour_portrait(model, 0.03, [0.0], sigma0_max=0.02)
    with pytest.raises(secbif.errors.InfeasibleSigma0Error):
        secbif.logic.flow.contour_portrait(model, -0.01, [0.0])
    with pytest.raises(secbif.errors.EmptyLevelError):
        secbif.logic.flow.contour_portrait(model, 0.0055, [1.0], grid=64)
    tests_logger.info('Infeasible portraits are reported')


def test_extremal_level_collapses_onto_a_critical_point(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    model = octupole_model.to_poly()
    lower, _ = secbif.logic.geometry.energy_limits(model, 0.0055)
    portrait = secbif.logic.flow.contour_portrait(model, 0.0055, [lower], grid=128)
    assert portrait.curves
    markers = {(marker.X2, marker.Y2) for marker in portrait.markers if marker.energy == pytest.approx(lower)}
    for curve in portrait.curves:
        assert curve.points.shape == (1, 2)
        assert tuple(curve.points[0]) in markers
    tests_logger.info(f'Minimum level {lower} drawn as {len(portrait.curves)} point(s)')


def test_level_ladder_lies_inside_the_energy_range(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    model = octupole_model.to_poly()
    lower, upper = secbif.logic.geometry.energy_limits(model, 0.0055)
    levels = secbif.logic.flow.level_ladder(model, 0.0055, 8)
    assert 1 <= len(levels) <= 8
    assert levels == sorted(levels)
    assert all(lower < level < upper for level in levels)
    portrait = secbif.logic.flow.contour_portrait(model, 0.0055, levels, grid=256)
    assert {curve.level for curve in portrait.curves} <= set(levels)
    assert all(np.all(np.sum(curve.points ** 2, axis=1) < 2 * 0.0055) for curve in portrait.curves)
    tests_logger.info(f'Level ladder: {levels}')


def test_marching_squares_traces_a_circle(tests_logger: logging.Logger) -> None:
    axis = np.linspace(-1.0, 1.0, 101)
    xs, ys = np.meshgrid(axis, axis)
    curves = secbif.logic.contours.marching_squares(axis, axis, xs ** 2 + ys ** 2, 0.25)
    assert len(curves) == 1
    points, closed = curves[0]
    assert closed
    assert np.allclose(np.hypot(points[:, 0], points[:, 1]), 0.5, atol=1e-3)
    tests_logger.info(f'Circle traced with {len(points)} vertices')


def test_floquet_verdicts_match_the_census(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    model = octupole_model.to_poly()
    for point in secbif.logic.geometry.census(model, 0.0055).points:
        result = secbif.logic.flow.floquet_confirm(model, point)
        assert result.consistent
        assert result.eigenvalues[0].real == pytest.approx(-result.eigenvalues[1].real, abs=1e-12)
    tests_logger.info('Linear stability agrees with the census classification')
