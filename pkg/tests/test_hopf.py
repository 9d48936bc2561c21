import logging
import math

import numpy as np
import pytest

import secbif.data.hamiltonian
import secbif.data.state
import secbif.errors
import secbif.logic.hopf

SAMPLE_STATES = [
    (0.03, -0.02, 0.11, 0.04),
    (-0.12, 0.05, 0.01, -0.07),
    (0.2, 0.0, 0.0, 0.3),
]
ROTATION_MODEL = secbif.data.hamiltonian.PolyHopfHamiltonian(((0, 0, 1, 1.0),))
SECTION_POINTS = [(0.03, -0.02), (-0.1, 0.05), (0.0, 0.13)]


@pytest.mark.parametrize('values', SAMPLE_STATES)
def test_poincare_images_lie_on_the_sphere(tests_logger: logging.Logger, values: tuple[float, ...]) -> None:
    state = secbif.data.state.PoincareState.from_sequence(values)
    hopf = secbif.logic.hopf.poincare_to_hopf(state)
    assert hopf.on_sphere()
    assert hopf.sigma0 == pytest.approx(state.W2 + state.W3)
    assert hopf.sigma3 == pytest.approx(state.W2 - state.W3)
    tests_logger.info(f'{values} maps onto the sphere of radius {hopf.sigma0}')


@pytest.mark.parametrize('values', SAMPLE_STATES)
def test_action_angle_path_agrees_with_direct_map(tests_logger: logging.Logger, values: tuple[float, ...]) -> None:
    state = secbif.data.state.PoincareState.from_sequence(values)
    direct = secbif.logic.hopf.poincare_to_hopf(state)
    through_angles = secbif.logic.hopf.action_angle_to_hopf(secbif.logic.hopf.poincare_to_action_angle(state))
    assert through_angles.as_tuple() == pytest.approx(direct.as_tuple(), abs=1e-14)
    tests_logger.info('Action-angle and direct Hopf maps agree')


@pytest.mark.parametrize('X2, Y2', SECTION_POINTS)
def test_section_plane_round_trip(tests_logger: logging.Logger, X2: float, Y2: float) -> None:  # pylint: disable=invalid-name
    sigma0 = 0.01
    state = secbif.logic.hopf.section_plane_to_hopf(X2, Y2, sigma0)
    assert state.on_sphere()
    assert secbif.logic.hopf.hopf_to_section_plane(state) == pytest.approx((X2, Y2), abs=1e-14)
    tests_logger.info(f'({X2}, {Y2}) survives the section round trip')


def test_section_rejects_points_outside_the_disk(tests_logger: logging.Logger) -> None:
    with pytest.raises(ValueError):
        secbif.logic.hopf.section_plane_to_hopf(0.2, 0.0, 0.01)
    tests_logger.info('Points outside the section disk are rejected')


@pytest.mark.parametrize('sigma3, radius_squared', [(0.01, 0.02), (-0.01, 0.0)])
def test_pole_is_a_typed_error(tests_logger: logging.Logger, sigma3: float, radius_squared: float) -> None:
    pole = secbif.data.state.HopfState(sigma0=0.01, sigma1=0.0, sigma2=0.0, sigma3=sigma3)
    with pytest.raises(secbif.errors.PoleDegenerateError) as raised:
        secbif.logic.hopf.hopf_to_section_plane(pole)
    assert raised.value.circle_radius_squared == pytest.approx(radius_squared)
    tests_logger.info(f'Pole sigma3={sigma3} reported with circle radius^2 {radius_squared}')


def test_sigma3_hamiltonian_rotates_about_the_sigma3_axis(tests_logger: logging.Logger) -> None:
    state = secbif.data.state.HopfState(sigma0=1.0, sigma1=0.6, sigma2=0.0, sigma3=0.8)
    rhs = secbif.logic.hopf.reduced_flow_rhs(ROTATION_MODEL, state)
    assert rhs == pytest.approx([0.0, -1.2, 0.0])
    assert float(np.dot(rhs, state.vector)) == pytest.approx(0.0)
    tests_logger.info('Z = sigma3 generates a rotation about the sigma3 axis')


def test_jacobian_matches_finite_differences(tests_logger: logging.Logger) -> None:
    model = secbif.data.hamiltonian.QuadHopfHamiltonian(
        A=0.3, B=0.1, C=-0.2, D1=0.5, Delta1=0.01, D3=-0.4, Delta3=0.02,
    ).to_poly()
    state = secbif.data.state.HopfState(sigma0=0.5, sigma1=0.3, sigma2=0.24, sigma3=-0.32)
    jacobian = secbif.logic.hopf.reduced_flow_jacobian(model, state)
    step = 1e-7
    for column in range(3):
        shifted = state.vector.copy()
        shifted[column] += step
        forward = secbif.logic.hopf.reduced_flow_rhs(model, secbif.data.state.HopfState.from_vector(0.5, shifted))
        shifted[column] -= 2 * step
        backward = secbif.logic.hopf.reduced_flow_rhs(model, secbif.data.state.HopfState.from_vector(0.5, shifted))
        assert jacobian[:, column] == pytest.approx((forward - backward) / (2 * step), abs=1e-6)
    tests_logger.info('Reduced flow Jacobian matches central differences')


def test_tangent_basis_is_orthonormal(tests_logger: logging.Logger) -> None:
    state = secbif.data.state.HopfState(sigma0=1.0, sigma1=0.0, sigma2=0.6, sigma3=0.8)
    basis = secbif.logic.hopf.tangent_basis(state)
    assert basis.T @ basis == pytest.approx(np.eye(2))
    assert basis.T @ state.vector == pytest.approx([0.0, 0.0], abs=1e-15)
    tests_logger.info('Tangent basis is orthonormal and tangent')


def test_circular_coplanar_orbits_have_zero_inclination(tests_logger: logging.Logger) -> None:
    params = secbif.data.state.SystemParams(m0=1.0, m2=0.001, m3=0.0003, a2=1.0, a3=2.0, G=1.0, AMD=0.0)
    check = secbif.logic.hopf.mutual_inclination(0.0, 0.0, params)
    assert check.feasible
    assert check.i_mut == pytest.approx(0.0)
    assert secbif.logic.hopf.i_max(params) == pytest.approx(0.0)
    tests_logger.info('Zero AMD leaves no room for inclination')


def test_eccentricities_beyond_the_amd_are_infeasible(tests_logger: logging.Logger) -> None:
    params = secbif.data.state.SystemParams(m0=1.0, m2=0.001, m3=0.0003, a2=1.0, a3=2.0, G=1.0, AMD=1e-6)
    assert not secbif.logic.hopf.mutual_inclination(0.5, 0.5, params).feasible
    with pytest.raises(secbif.errors.InfeasibleGeometryError):
        secbif.logic.hopf.mutual_inclination(0.5, 0.5, params, strict=True)
    tests_logger.info('Eccentricities exceeding the AMD are flagged')


def test_amd_spent_on_inclination_gives_i_max(tests_logger: logging.Logger) -> None:
    params = secbif.data.state.SystemParams(m0=1.0, m2=0.001, m3=0.0003, a2=1.0, a3=2.0, G=1.0, AMD=1e-5)
    check = secbif.logic.hopf.mutual_inclination(0.0, 0.0, params)
    assert check.feasible
    assert check.i_mut == pytest.approx(secbif.logic.hopf.i_max(params))
    assert 0 < secbif.logic.hopf.i_max(params) < math.pi / 2
    tests_logger.info('Circular orbits carry the whole AMD as inclination')
