import logging
import math

import pytest

import secbif.data.hamiltonian
import secbif.logic.geometry
import secbif.logic.hopf
import secbif.logic.oracle

from helpers import RANDOM_QUADRATICS, comparable_spheres, random_quadratic

ORACLE_SAMPLES = 20000
DISK_SAMPLES = 513
TILTED_MODEL = secbif.data.hamiltonian.PolyHopfHamiltonian(((0, 0, 1, 1.0), (0, 1, 0, 0.3)))
CONSTANT_MODEL = secbif.data.hamiltonian.PolyHopfHamiltonian(((1, 0, 0, 2.0),))


@pytest.mark.parametrize('seed', range(RANDOM_QUADRATICS))
def test_random_quadratics_agree_with_the_oracles(tests_logger: logging.Logger, seed: int) -> None:
    model = random_quadratic(seed)
    spheres = list(comparable_spheres(seed))
    comparisons = secbif.logic.oracle.self_check(model.to_poly(), spheres, ORACLE_SAMPLES)
    assert [comparison.sigma0 for comparison in comparisons] == spheres
    for comparison in comparisons:
        assert comparison.agree, comparison
        assert comparison.numeric_count in (2, 4)
        assert comparison.quartic_count == comparison.bruteforce_count == comparison.numeric_count
    tests_logger.info(f'Model {seed}: {[comparison.numeric_count for comparison in comparisons]} on {spheres}')


@pytest.mark.parametrize('sigma0, expected', [(0.0055, 4), (0.008, 2)])
def test_quartic_bruteforce_counts_the_octupole_tangencies(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
    sigma0: float,
    expected: int,
) -> None:
    assert secbif.logic.oracle.quartic_bruteforce(octupole_model, sigma0) == expected
    tests_logger.info(f'{expected} sign changes at sigma0={sigma0}')


def test_meridian_scan_matches_the_census(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    model = octupole_model.to_poly()
    oracle = secbif.logic.oracle.grid_tangency_scan(model, 0.0055, ORACLE_SAMPLES)
    cpi = secbif.logic.geometry.find_cpi(model, 0.0055)
    assert len(oracle) == len(cpi)
    assert sorted(point.nature for point in oracle).count('minimum') == 2
    for point in cpi:
        assert min(abs(math.remainder(point.angle - found.X, 2 * math.pi)) for found in oracle) < 4 * math.pi / ORACLE_SAMPLES
    tests_logger.info(f'Meridian oracle finds {len(oracle)} extrema')


def test_disk_scan_locates_the_minimum(tests_logger: logging.Logger) -> None:
    sigma0 = 0.5
    disk = secbif.logic.oracle.disk_critical_scan(TILTED_MODEL, sigma0, DISK_SAMPLES)
    minima = [point for point in disk.extrema if point.nature == 'minimum']
    assert len(minima) == 1
    lowest = min(secbif.logic.geometry.find_cpi(TILTED_MODEL, sigma0), key=lambda point: point.energy)
    X2, Y2 = secbif.logic.hopf.hopf_to_section_plane(lowest.location)  # pylint: disable=invalid-name
    cell = 2 * math.sqrt(2 * sigma0) / (DISK_SAMPLES - 1)
    assert math.hypot(minima[0].X - X2, minima[0].Y - Y2) < 2 * cell
    assert minima[0].energy == pytest.approx(lowest.energy, abs=1e-3)
    tests_logger.info(f'Disk minimum at ({minima[0].X}, {minima[0].Y})')


def test_disk_scan_flags_constant_models(tests_logger: logging.Logger) -> None:
    disk = secbif.logic.oracle.disk_critical_scan(CONSTANT_MODEL, 0.3, 128)
    assert disk.degenerate
    assert disk.points == ()
    with pytest.raises(ValueError):
        secbif.logic.oracle.disk_critical_scan(TILTED_MODEL, 0.3, 64)
    with pytest.raises(ValueError):
        secbif.logic.oracle.grid_tangency_scan(TILTED_MODEL, 0.3, 16)
    tests_logger.info('Constant section Hamiltonian is reported as degenerate')
