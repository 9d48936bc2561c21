import functools
import logging

import pytest

import secbif.data.processor.input
import secbif.data.state
import secbif.logic.octupole
import secbif.logic.quadratic

from conftest import fixture_path

MASS_SCALE = 10.0
SCALED_SEARCH_BOUND = 0.05
INVARIANT_FIELDS = ('Delta1til', 'Delta3til', 'a', 'b')
INVERSE_FIELDS = ('Btil', 'Ctil', 'D1til', 'D3til')


@functools.lru_cache
def system() -> secbif.data.state.SystemParams:
    return secbif.data.processor.input.ParamsInput.read(fixture_path('params.json'))


@functools.lru_cache
def scaled_system(factor: float) -> secbif.data.state.SystemParams:
    params = system()
    return params.scaled(
        m0=params.m0 * factor,
        m2=params.m2 * factor,
        m3=params.m3 * factor,
        G=params.G / factor,
        AMD=params.AMD * factor,
    )


def test_coefficients_have_no_sigma1_curvature(tests_logger: logging.Logger) -> None:
    coefficients = secbif.logic.octupole.octupole_coefficients(system())
    assert coefficients.Atil == 0.0
    assert coefficients.a is not None and coefficients.b is not None
    assert (coefficients.a, coefficients.b) == secbif.logic.octupole.secular_frequencies(system())
    tests_logger.info(f'Octupole coefficients: {coefficients.to_mapping()}')


def test_coefficients_document_round_trip(tests_logger: logging.Logger) -> None:
    loaded = secbif.data.processor.input.CoefficientsInput.read(fixture_path('octupole.json'))
    again = secbif.logic.octupole.OctupoleCoefficients.from_mapping(loaded.to_mapping())
    assert again == loaded
    model = secbif.logic.octupole.octupole_to_quad(loaded)
    assert (model.A, model.B, model.C) == (loaded.Atil, loaded.Btil, loaded.Ctil)
    tests_logger.info('Coefficients document maps onto the quadratic model')


@pytest.mark.parametrize('field', INVARIANT_FIELDS)
def test_offsets_and_frequencies_ignore_mass_scaling(tests_logger: logging.Logger, field: str) -> None:
    original = secbif.logic.octupole.octupole_coefficients(system())
    scaled = secbif.logic.octupole.octupole_coefficients(scaled_system(MASS_SCALE))
    assert getattr(scaled, field) == pytest.approx(getattr(original, field), rel=1e-10)
    tests_logger.info(f'{field} is unchanged by the mass scaling')


@pytest.mark.parametrize('field', INVERSE_FIELDS)
def test_slopes_shrink_with_mass_scaling(tests_logger: logging.Logger, field: str) -> None:
    original = secbif.logic.octupole.octupole_coefficients(system())
    scaled = secbif.logic.octupole.octupole_coefficients(scaled_system(MASS_SCALE))
    assert getattr(scaled, field) == pytest.approx(getattr(original, field) / MASS_SCALE, rel=1e-10)
    tests_logger.info(f'{field} scales with the inverse mass factor')


def test_thresholds_grow_with_mass_scaling(tests_logger: logging.Logger) -> None:
    original, _ = secbif.logic.quadratic.rotate_to_diagonal(
        secbif.logic.octupole.octupole_to_quad(secbif.logic.octupole.octupole_coefficients(system()))
    )
    scaled, _ = secbif.logic.quadratic.rotate_to_diagonal(
        secbif.logic.octupole.octupole_to_quad(secbif.logic.octupole.octupole_coefficients(scaled_system(MASS_SCALE)))
    )
    expected = [value * MASS_SCALE for value in secbif.logic.quadratic.f1_roots(original, SCALED_SEARCH_BOUND)]
    assert secbif.logic.quadratic.f1_roots(scaled, SCALED_SEARCH_BOUND * MASS_SCALE) == pytest.approx(expected, rel=1e-6)
    tests_logger.info(f'First-kind thresholds scale to {expected}')
