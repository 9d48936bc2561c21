"""
Coordinate transforms between Poincare variables, reduced action-angle variables and Hopf variables,
the reduced flow on the sphere and the mutual-inclination bounds of the planetary system.
"""

from __future__ import annotations

import dataclasses
import logging
import math

import numpy as np

import secbif.data.hamiltonian
import secbif.data.state
import secbif.errors

DEFAULT_TOLERANCE = 1e-12

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, kw_only=True)
class InclinationCheck:
    """
    InclinationCheck Class

    Mutual inclination implied by the eccentricities (or actions) at fixed AMD.

    Attributes:
        cos_i_mut (float): Cosine of the mutual inclination, unclamped.
        feasible (bool): False when the orbit is geometrically impossible at this AMD.
    """

    cos_i_mut: float
    feasible: bool

    @property
    def i_mut(self) -> float:
        return math.acos(min(1.0, max(-1.0, self.cos_i_mut)))


def poincare_to_hopf(state: secbif.data.state.PoincareState) -> secbif.data.state.HopfState:
    X2, Y2, X3, Y3 = state.as_tuple()  # pylint: disable=invalid-name
    return secbif.data.state.HopfState(
        sigma0=(X2 ** 2 + Y2 ** 2 + X3 ** 2 + Y3 ** 2) / 2,
        sigma1=X2 * X3 + Y2 * Y3,
        sigma2=Y2 * X3 - Y3 * X2,
        sigma3=(X2 ** 2 + Y2 ** 2 - X3 ** 2 - Y3 ** 2) / 2,
    )


def poincare_to_action_angle(state: secbif.data.state.PoincareState) -> secbif.data.state.ReducedActionAngle:
    """
    Angles follow X = -sqrt(2W) cos(w), Y = sqrt(2W) sin(w).
    """

    w2 = math.atan2(state.Y2, -state.X2)
    w3 = math.atan2(state.Y3, -state.X3)
    return secbif.data.state.ReducedActionAngle(
        psi=math.remainder(w2 - w3, 2 * math.pi),
        phi=w2 + w3,
        Gamma=(state.W2 - state.W3) / 2,
        J=(state.W2 + state.W3) / 2,
    )


def action_angle_to_hopf(variables: secbif.data.state.ReducedActionAngle) -> secbif.data.state.HopfState:
    amplitude = 2 * math.sqrt(max(variables.J + variables.Gamma, 0.0)) * math.sqrt(max(variables.J - variables.Gamma, 0.0))
    return secbif.data.state.HopfState(
        sigma0=2 * variables.J,
        sigma1=amplitude * math.cos(variables.psi),
        sigma2=-amplitude * math.sin(variables.psi),
        sigma3=2 * variables.Gamma,
    )


def hopf_to_section_plane(state: secbif.data.state.HopfState, tol: float = DEFAULT_TOLERANCE) -> tuple[float, float]:
    """
    Image of a sphere point on the Y3 = 0 surface of section.

    Args:
        state (secbif.data.state.HopfState): Point on the sphere.
        tol (float): Relative distance to a pole below which the angle psi is considered undefined.

    Returns:
        tuple[float, float]: (X2, Y2) of the section representative with X3 > 0.

    Raises:
        ValueError: If sigma0 is not positive.
        secbif.errors.PoleDegenerateError: If the state sits on a pole, where psi is undefined.
    """

    sigma0, sigma1, sigma2, sigma3 = state.as_tuple()
    if sigma0 <= 0:
        raise ValueError(f'Section image needs sigma0 > 0, got {sigma0}')
    if (sigma0 - abs(sigma3)) <= tol * sigma0:
        raise secbif.errors.PoleDegenerateError(
            f'Angle undefined at pole sigma3={sigma3} of the sphere sigma0={sigma0}',
            circle_radius_squared=max(sigma0 + sigma3, 0.0),
        )
    equator_radius = math.sqrt((sigma0 - sigma3) * (sigma0 + sigma3))
    psi = math.atan2(-sigma2 / equator_radius, sigma1 / equator_radius)
    gamma, action = sigma3 / 2, sigma0 / 2
    amplitude = math.sqrt(2 * (gamma + action))
    return -amplitude * math.cos(psi - math.pi), amplitude * math.sin(psi - math.pi)


def section_plane_to_hopf(X2: float, Y2: float, sigma0: float) -> secbif.data.state.HopfState:  # pylint: disable=invalid-name
    """
    Re-embed a section point with X3 = +sqrt(2 sigma0 - X2^2 - Y2^2), Y3 = 0.

    Raises:
        ValueError: If the point lies outside the disk X2^2 + Y2^2 <= 2 sigma0.
    """

    if (remainder := 2 * sigma0 - X2 ** 2 - Y2 ** 2) < -DEFAULT_TOLERANCE * max(sigma0, 1.0):
        raise ValueError(f'Point ({X2}, {Y2}) lies outside the section disk of sigma0={sigma0}')
    return poincare_to_hopf(secbif.data.state.PoincareState(X2=X2, Y2=Y2, X3=math.sqrt(max(remainder, 0.0)), Y3=0.0))


def reduced_flow_rhs(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    state: secbif.data.state.HopfState,
) -> np.ndarray:
    """
    Right-hand side of the reduced flow, from the brackets {sigma_i, sigma_j} = -2 eps_ijk sigma_k.

    Args:
        model (secbif.data.hamiltonian.PolyHopfHamiltonian): The Hamiltonian.
        state (secbif.data.state.HopfState): Point on the sphere.

    Returns:
        np.ndarray: (dsigma1/dt, dsigma2/dt, dsigma3/dt).
    """

    _, z1, z3 = model.gradient(state.sigma0, state.sigma1, state.sigma3)
    return np.array([
        2 * state.sigma2 * z3,
        2 * (state.sigma3 * z1 - state.sigma1 * z3),
        -2 * state.sigma2 * z1,
    ])


def reduced_flow_jacobian(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    state: secbif.data.state.HopfState,
) -> np.ndarray:
    sigma0, sigma1, sigma2, sigma3 = state.as_tuple()
    _, z1, z3 = model.gradient(sigma0, sigma1, sigma3)
    z11, z13, z33 = model.hessian(sigma0, sigma1, sigma3)
    return 2 * np.array([
        [sigma2 * z13, z3, sigma2 * z33],
        [sigma3 * z11 - z3 - sigma1 * z13, 0.0, z1 + sigma3 * z13 - sigma1 * z33],
        [-sigma2 * z11, -z1, -sigma2 * z13],
    ])


def tangent_basis(state: secbif.data.state.HopfState) -> np.ndarray:
    """
    Orthonormal basis (3x2) of the sphere's tangent plane at a point.
    """

    normal = state.vector
    if (norm := np.linalg.norm(normal)) == 0:
        raise ValueError('Tangent plane undefined at the origin')
    normal = normal / norm
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(normal)))] = 1.0
    first = np.cross(normal, helper)
    first /= np.linalg.norm(first)
    second = np.cross(normal, first)
    return np.column_stack([first, second])


def tangent_linearization(
    model: secbif.data.hamiltonian.PolyHopfHamiltonian,
    state: secbif.data.state.HopfState,
) -> np.ndarray:
    """
    2x2 linearization of the reduced flow in the tangent plane at an equilibrium.
    """

    basis = tangent_basis(state)
    return basis.T @ reduced_flow_jacobian(model, state) @ basis


def mutual_inclination(
    e2: float,
    e3: float,
    params: secbif.data.state.SystemParams,
    strict: bool = False,
) -> InclinationCheck:
    """
    Mutual inclination of the two orbits at fixed AMD.

    Args:
        e2 (float): Eccentricity of the inner planet.
        e3 (float): Eccentricity of the outer planet.
        params (secbif.data.state.SystemParams): The planetary system.
        strict (bool): Raise instead of flagging when the geometry is impossible.

    Returns:
        InclinationCheck: cos(i_mut) and its feasibility flag.

    Raises:
        ValueError: If an eccentricity is outside [0, 1).
        secbif.errors.InfeasibleGeometryError: If strict and |cos(i_mut)| > 1.
    """

    for name, eccentricity in (('e2', e2), ('e3', e3)):
        if not 0 <= eccentricity < 1:
            raise ValueError(f'Invalid eccentricity {name}: {eccentricity}')
    deficit2 = params.Lambda2 * e2 ** 2 / (1 + math.sqrt(1 - e2 ** 2))
    deficit3 = params.Lambda3 * e3 ** 2 / (1 + math.sqrt(1 - e3 ** 2))
    return _inclination_from_deficits(deficit2, deficit3, params, strict)


def mutual_inclination_from_actions(
    W2: float,  # pylint: disable=invalid-name
    W3: float,  # pylint: disable=invalid-name
    params: secbif.data.state.SystemParams,
) -> InclinationCheck:
    """
    Same as mutual_inclination, with eccentricities read from the Poincare actions W_j = Lambda_j - G_j.
    """

    if not (0 <= W2 < params.Lambda2 and 0 <= W3 < params.Lambda3):
        return InclinationCheck(cos_i_mut=math.nan, feasible=False)
    return _inclination_from_deficits(W2, W3, params, strict=False)


def _inclination_from_deficits(
    deficit2: float,
    deficit3: float,
    params: secbif.data.state.SystemParams,
    strict: bool,
) -> InclinationCheck:
    # Lz - G2 - G3, kept exact at zero eccentricity and zero AMD
    excess = (deficit2 + deficit3) - params.AMD
    G2, G3 = params.Lambda2 - deficit2, params.Lambda3 - deficit3  # pylint: disable=invalid-name
    cos_i_mut = 1 + excess * (excess + 2 * (G2 + G3)) / (2 * G2 * G3)
    feasible = -1 - DEFAULT_TOLERANCE <= cos_i_mut <= 1 + DEFAULT_TOLERANCE
    if not feasible:
        if strict:
            raise secbif.errors.InfeasibleGeometryError(f'Orbit impossible at AMD={params.AMD}: cos(i_mut)={cos_i_mut}')
        LOGGER.debug(f'Infeasible mutual inclination: cos(i_mut)={cos_i_mut}')
    return InclinationCheck(cos_i_mut=cos_i_mut, feasible=feasible)


def i_max(params: secbif.data.state.SystemParams) -> float:
    """
    Largest mutual inclination allowed by the AMD, reached by circular orbits.

    Raises:
        secbif.errors.InfeasibleAmdError: If the AMD exceeds what antiparallel orbits allow.
    """

    Lambda2, Lambda3 = params.Lambda2, params.Lambda3  # pylint: disable=invalid-name
    argument = 1 + (-params.AMD) * (2 * (Lambda2 + Lambda3) - params.AMD) / (2 * Lambda2 * Lambda3)
    if not -1 - DEFAULT_TOLERANCE <= argument <= 1 + DEFAULT_TOLERANCE:
        raise secbif.errors.InfeasibleAmdError(f'AMD={params.AMD} gives cos(i_max)={argument}')
    return math.acos(min(1.0, max(-1.0, argument)))
