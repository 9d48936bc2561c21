import functools
import logging

import numpy as np
import pytest

import secbif.data.critical
import secbif.data.hamiltonian
import secbif.errors
import secbif.logic.geometry
import secbif.logic.hopf

EVENT_RESOLUTION = 1e-7
# absolute slack around the published thresholds
EVENT_MARGIN = 1e-6
CENSUS_SIGMA0 = 0.0055
DETERMINISM_RANGE = (0.0045, 0.007)
DETERMINISM_STEPS = 64
DOMAIN_SAMPLES = 50
SYMMETRIC_MODEL = secbif.data.hamiltonian.QuadHopfHamiltonian(A=1.0, B=0.0, C=-1.0, D1=0.0, Delta1=0.0, D3=0.0, Delta3=0.0)


@functools.lru_cache
def octupole_sequence(model: secbif.data.hamiltonian.QuadHopfHamiltonian, sweep: tuple[float, float]) -> secbif.data.critical.BifurcationSequence:
    return secbif.logic.geometry.bifurcation_sequence(model.to_poly(), sweep, EVENT_RESOLUTION)


def test_census_inside_the_bifurcation_window(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    census = secbif.logic.geometry.census(octupole_model.to_poly(), CENSUS_SIGMA0)
    assert len(census.cpi) == 4
    assert len(census.cpii) == 2
    assert all(point.tangency is not None for point in census.cpi)
    assert census.cpii[0].location.sigma2 == pytest.approx(-census.cpii[1].location.sigma2)
    tests_logger.info(f'Census at sigma0={CENSUS_SIGMA0}: signature {census.signature}')


@pytest.mark.parametrize('sigma0', [0.0045, CENSUS_SIGMA0, 0.006, 0.008])
def test_critical_points_are_equilibria_of_the_reduced_flow(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
    sigma0: float,
) -> None:
    model = octupole_model.to_poly()
    linear_sigma1, linear_sigma3 = octupole_model.linear(sigma0)
    reference = sigma0 * max(abs(linear_sigma1), abs(linear_sigma3))
    for point in secbif.logic.geometry.census(model, sigma0).points:
        assert np.linalg.norm(secbif.logic.hopf.reduced_flow_rhs(model, point.location)) <= 1e-6 * reference
        assert point.location.sigma1 ** 2 + point.location.sigma2 ** 2 + point.location.sigma3 ** 2 == pytest.approx(sigma0 ** 2)
    tests_logger.info(f'All critical points at sigma0={sigma0} are stationary')


def test_octupole_bifurcation_sequence(
    tests_logger: logging.Logger,
    published: dict,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    sequence = octupole_sequence(octupole_model, tuple(published['octupole']['sweep']))
    assert [event_type.value for event_type in sequence.types] == published['octupole']['events']
    assert not sequence.unresolved
    expected = sorted([*published['octupole']['cpi'], *published['octupole']['cpii']], reverse=True)
    for event, threshold in zip(sequence.events, expected):
        assert event.contains(threshold, margin=EVENT_MARGIN)
        assert event.sigma0_bracket[1] - event.sigma0_bracket[0] <= EVENT_RESOLUTION
    tests_logger.info(f'Octupole sequence: {[event.type.value for event in sequence.events]}')


def test_sequence_labels_follow_continuity(
    tests_logger: logging.Logger,
    published: dict,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    sequence = octupole_sequence(octupole_model, tuple(published['octupole']['sweep']))
    target = published['octupole']['portrait_sigma0']
    census = min(sequence.censuses, key=lambda item: abs(item.sigma0 - target))
    assert sorted(point.label for point in census.cpi) == sorted(published['octupole']['portrait_labels'])
    assert sorted(point.label for point in census.cpii) == ['F1', 'F2']
    saddle_node = sequence.events[0]
    assert sorted(saddle_node.participants) == ['P1', 'P2']
    tests_logger.info(f'Labels near sigma0={target}: {[point.label for point in census.points]}')


@pytest.mark.repeat(3)
# Repeat the test 3 times to make sure no race conditions are present in the threaded sweep
def test_sequence_does_not_depend_on_threads(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    model = octupole_model.to_poly()
    single, pooled = (
        secbif.logic.geometry.bifurcation_sequence(
            model, DETERMINISM_RANGE, 1e-6, coarse_steps=DETERMINISM_STEPS, threads=threads,
        )
        for threads in (1, 4)
    )
    assert single.events == pooled.events
    assert [census.signature for census in single.censuses] == [census.signature for census in pooled.censuses]
    tests_logger.info(f'{len(single.events)} events found with and without worker threads')


def test_model_without_linear_terms_never_bifurcates(tests_logger: logging.Logger) -> None:
    sequence = secbif.logic.geometry.bifurcation_sequence(SYMMETRIC_MODEL.to_poly(), (0.1, 1.0), 1e-6, coarse_steps=32)
    assert sequence.events == ()
    assert sequence.unresolved == ()
    assert all(census.signature == sequence.censuses[0].signature for census in sequence.censuses)
    tests_logger.info(f'Constant signature {sequence.censuses[0].signature}')


def test_invalid_sweeps_are_rejected(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    with pytest.raises(ValueError):
        secbif.logic.geometry.bifurcation_sequence(octupole_model.to_poly(), (0.01, 0.005), 1e-7)
    with pytest.raises(ValueError):
        secbif.logic.geometry.bifurcation_sequence(octupole_model.to_poly(), (0.005, 0.01), 0.0)
    with pytest.raises(ValueError):
        secbif.logic.geometry.census(octupole_model.to_poly(), 0.0)
    tests_logger.info('Invalid sweeps raise ValueError')


def test_domain_envelope(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    limits = secbif.logic.geometry.domain_limits(octupole_model.to_poly(), 0.02, samples=DOMAIN_SAMPLES, threads=2)
    assert len(limits.sigma0_grid) == DOMAIN_SAMPLES
    assert list(limits.sigma0_grid) == sorted(limits.sigma0_grid)
    assert all(lower <= upper for lower, upper in zip(limits.E_L, limits.E_R))
    assert limits.E_min == min(limits.E_L)
    assert limits.E_23 == limits.E_R[-1]
    assert limits.sigma0_AMD == 0.02
    tests_logger.info(f'Domain energies span [{limits.E_min}, {max(limits.E_R)}]')


def test_sigma0_limits_of_an_attained_energy(
    tests_logger: logging.Logger,
    octupole_model: secbif.data.hamiltonian.QuadHopfHamiltonian,
) -> None:
    model = octupole_model.to_poly()
    lower, upper = secbif.logic.geometry.energy_limits(model, 0.01)
    sigma0_min, sigma0_top = secbif.logic.geometry.sigma0_limits(model, (lower + upper) / 2, 0.02, samples=40)
    assert 0 < sigma0_min <= 0.01 <= sigma0_top <= 0.02
    with pytest.raises(secbif.errors.EmptyDomainError):
        secbif.logic.geometry.sigma0_limits(model, 1.0, 0.02, samples=40)
    tests_logger.info(f'Energy level spans sigma0 in [{sigma0_min}, {sigma0_top}]')
