"""
Closed-form analysis of the quadratic Hopf Hamiltonian.

The quadratic form is first rotated to diagonal form. Tangencies with the sphere then follow from
a quartic in the Lagrange multiplier mu. The values of sigma0 where the tangency count changes are
the roots of f1. The values where the line of second-kind critical points touches the sphere are
the roots of f2.
"""

from __future__ import annotations

import logging
import math
import typing

import numpy as np
import numpy.polynomial
import scipy.optimize

import secbif.data.critical
import secbif.data.hamiltonian
import secbif.errors

ROTATION_TOLERANCE = 1e-12
F1_GRID_POINTS = 2048
F1_XTOL = 1e-16
ROOT_MERGE_DISTANCE = 1e-10
QUARTIC_IMAG_TOLERANCE = 1e-5
DOUBLE_ROOT_TOLERANCE = 1e-10
DOUBLE_ROOT_GAP = 1e-6
NEWTON_MAX_ITERATIONS = 50

LOGGER = logging.getLogger(__name__)

QuadModel = secbif.data.hamiltonian.QuadHopfHamiltonian
ArrayOrFloat = typing.Union[float, np.ndarray]


def conic_class(model: QuadModel) -> secbif.data.hamiltonian.ConicClass:
    """
    Shape of the level curves of the quadratic form, by the sign of B^2 - 4AC.
    """

    discriminant = model.discriminant
    if discriminant == 0 or abs(discriminant) <= 1e-15 * max(model.B ** 2, abs(4 * model.A * model.C)):
        return secbif.data.hamiltonian.ConicClass.PARABOLIC_DEGENERATE
    if discriminant < 0:
        return secbif.data.hamiltonian.ConicClass.ELLIPSE
    return secbif.data.hamiltonian.ConicClass.HYPERBOLA


def rotate_to_diagonal(model: QuadModel, tol: float = ROTATION_TOLERANCE) -> tuple[QuadModel, float]:
    """
    Rotate (sigma1, sigma3) so that the mixed coefficient B vanishes.

    The rotation is sigma1 = alpha s1 + beta s3, sigma3 = -beta s1 + alpha s3 with
    alpha = cos(angle), beta = sin(angle). The rotated A is never below the rotated C.

    Args:
        model (QuadModel): The model to rotate.
        tol (float): Relative tolerance of the isotropy test.

    Returns:
        tuple[QuadModel, float]: The diagonal model and the rotation angle in radians.

    Raises:
        secbif.errors.IsotropicDegenerateError: If A = C and B = 0, where every direction is principal.
    """

    scale = model.scale
    if scale == 0 or (abs(model.A - model.C) <= tol * scale and abs(model.B) <= tol * scale):
        raise secbif.errors.IsotropicDegenerateError(
            f'Isotropic quadratic form (A={model.A}, B={model.B}, C={model.C}): rotation is indeterminate'
        )
    if model.B == 0:
        return model, 0.0
    angle = 0.5 * math.atan2(-model.B, model.A - model.C)
    alpha, beta = math.cos(angle), math.sin(angle)
    residual = model.B * (alpha ** 2 - beta ** 2) + 2 * (model.A - model.C) * alpha * beta
    LOGGER.debug(f'Rotation by {angle} rad leaves B residual {residual}')
    rotated = secbif.data.hamiltonian.QuadHopfHamiltonian(
        A=model.A * alpha ** 2 + model.C * beta ** 2 - model.B * alpha * beta,
        B=0.0,
        C=model.A * beta ** 2 + model.C * alpha ** 2 + model.B * alpha * beta,
        D1=alpha * model.D1 - beta * model.D3,
        Delta1=alpha * model.Delta1 - beta * model.Delta3,
        D3=beta * model.D1 + alpha * model.D3,
        Delta3=beta * model.Delta1 + alpha * model.Delta3,
        F0=model.F0,
        F1=model.F1,
        F2=model.F2,
    )
    return rotated, angle


def unrotate_point(angle: float, s1: ArrayOrFloat, s3: ArrayOrFloat) -> tuple[ArrayOrFloat, ArrayOrFloat]:
    alpha, beta = math.cos(angle), math.sin(angle)
    return alpha * s1 + beta * s3, -beta * s1 + alpha * s3


def _require_diagonal(model: QuadModel, tol: float = ROTATION_TOLERANCE) -> None:
    if abs(model.B) > tol * model.scale:
        raise ValueError(f'Model is not diagonal (B={model.B}); call rotate_to_diagonal first')


def _require_anisotropic(model: QuadModel, tol: float = ROTATION_TOLERANCE) -> None:
    if abs(model.A - model.C) <= tol * model.scale:
        raise secbif.errors.IsotropicDegenerateError(f'A = C = {model.A}: the discriminant vanishes identically')


def T1(model: QuadModel, sigma0: ArrayOrFloat) -> ArrayOrFloat:  # pylint: disable=invalid-name
    return (model.D1 + model.Delta1 / sigma0) ** 2


def T3(model: QuadModel, sigma0: ArrayOrFloat) -> ArrayOrFloat:  # pylint: disable=invalid-name
    return (model.D3 + model.Delta3 / sigma0) ** 2


def symmetric_branch_roots(model: QuadModel, sigma0: float) -> list[secbif.data.critical.CpiRoot]:
    """
    Tangencies when a linear coefficient of the diagonal model vanishes.

    With D(sigma0) = 0 every point of the line mu = A is admissible, giving sigma3 = -E / (2 (C - A))
    and two values of sigma1, while the sigma1 = 0 line gives the poles sigma3 = +/-sigma0.
    The case E(sigma0) = 0 is symmetric.

    Args:
        model (QuadModel): Diagonal model.
        sigma0 (float): Radius of the sphere.

    Returns:
        list[secbif.data.critical.CpiRoot]: The tangencies, by increasing mu.
    """

    linear_sigma1, linear_sigma3 = model.linear(sigma0)
    scale = max(abs(model.D1) * sigma0, abs(model.Delta1), abs(model.D3) * sigma0, abs(model.Delta3), 1e-300)
    found: dict[tuple[float, float], secbif.data.critical.CpiRoot] = {}

    def _add(mu: float, sigma1: float, sigma3: float) -> None:
        key = (round(sigma1 / sigma0, 12), round(sigma3 / sigma0, 12))
        found.setdefault(key, secbif.data.critical.CpiRoot(
            mu=mu,
            sigma1=sigma1,
            sigma3=sigma3,
            residual=abs(sigma1 ** 2 + sigma3 ** 2 - sigma0 ** 2) / sigma0 ** 2,
        ))

    if abs(linear_sigma1) <= ROTATION_TOLERANCE * scale:
        for pole in (sigma0, -sigma0):
            _add(model.C + linear_sigma3 / (2 * pole), 0.0, pole)
        if model.A != model.C and (height := -linear_sigma3 / (2 * (model.C - model.A))) ** 2 < sigma0 ** 2:
            for side in (1.0, -1.0):
                _add(model.A, side * math.sqrt(sigma0 ** 2 - height ** 2), height)
    if abs(linear_sigma3) <= ROTATION_TOLERANCE * scale:
        for pole in (sigma0, -sigma0):
            _add(model.A + linear_sigma1 / (2 * pole), pole, 0.0)
        if model.A != model.C and (width := -linear_sigma1 / (2 * (model.A - model.C))) ** 2 < sigma0 ** 2:
            for side in (1.0, -1.0):
                _add(model.C, width, side * math.sqrt(sigma0 ** 2 - width ** 2))
    return sorted(found.values(), key=lambda root: (root.mu, root.sigma1, root.sigma3))


def _normalized_linear_terms(linear_sigma1: float, linear_sigma3: float, sigma0: float) -> tuple[float, float]:
    try:
        t1, t3 = (linear_sigma1 / sigma0) ** 2, (linear_sigma3 / sigma0) ** 2
    except OverflowError as overflow:
        raise secbif.errors.InfeasibleSigma0Error(f'sigma0={sigma0} is too small for the linear terms') from overflow
    if sigma0 ** 2 == 0 or not math.isfinite(t1 + t3):
        raise secbif.errors.InfeasibleSigma0Error(f'sigma0={sigma0} is too small for the linear terms')
    return t1, t3


def cpi_quartic_roots(
    model: QuadModel,
    sigma0: float,
    allow_symmetric: bool = False,
) -> list[secbif.data.critical.CpiRoot]:
    """
    Tangencies of the diagonal quadratic model with the sphere of radius sigma0.

    The real roots of 4(A-mu)^2(C-mu)^2 - (A-mu)^2 T3 - (C-mu)^2 T1 = 0 are found as eigenvalues of the
    balanced companion matrix. Each is then polished by Newton iterations on
    S(mu) = sigma1(mu)^2 + sigma3(mu)^2 - sigma0^2.
    Candidates that do not settle on a simple root are polished on S' instead. When S vanishes there
    the tangency is double and is returned twice.

    Args:
        model (QuadModel): Diagonal model (B = 0).
        sigma0 (float): Radius of the sphere.
        allow_symmetric (bool): Return the special-case solutions instead of raising when a linear coefficient vanishes.

    Returns:
        list[secbif.data.critical.CpiRoot]: Two or four roots, by increasing mu.

    Raises:
        ValueError: If the model is not diagonal or sigma0 is not positive.
        secbif.errors.InfeasibleSigma0Error: If sigma0 is too small for the linear terms to be represented.
        secbif.errors.IsotropicDegenerateError: If A = C.
        secbif.errors.SymmetricBranchError: If a linear coefficient vanishes and allow_symmetric is False.
    """

    _require_diagonal(model)
    _require_anisotropic(model)
    if sigma0 <= 0:
        raise ValueError(f'Tangency quartic needs sigma0 > 0, got {sigma0}')
    linear_sigma1, linear_sigma3 = model.linear(sigma0)
    t1, t3 = _normalized_linear_terms(linear_sigma1, linear_sigma3, sigma0)
    linear_scale = max(abs(model.D1) * sigma0, abs(model.Delta1), abs(model.D3) * sigma0, abs(model.Delta3), 1e-300)
    if min(abs(linear_sigma1), abs(linear_sigma3)) <= ROTATION_TOLERANCE * linear_scale:
        roots = symmetric_branch_roots(model, sigma0)
        if allow_symmetric:
            return roots
        raise secbif.errors.SymmetricBranchError(
            f'Linear coefficient vanishes at sigma0={sigma0} (D={linear_sigma1}, E={linear_sigma3})',
            roots=roots,
        )

    # mu is rescaled to O(1) before the eigenvalue solve
    scale = max(abs(model.A), abs(model.C), math.sqrt(t1), math.sqrt(t3))
    a_term = numpy.polynomial.Polynomial([model.A / scale, -1.0])
    c_term = numpy.polynomial.Polynomial([model.C / scale, -1.0])
    quartic = 4 * a_term ** 2 * c_term ** 2 - a_term ** 2 * (t3 / scale ** 2) - c_term ** 2 * (t1 / scale ** 2)
    candidates = quartic.roots() * scale

    def _constraint(mu: float) -> float:
        return (linear_sigma1 / (2 * (model.A - mu))) ** 2 + (linear_sigma3 / (2 * (model.C - mu))) ** 2 - sigma0 ** 2

    def _constraint_slope(mu: float) -> float:
        return linear_sigma1 ** 2 / (2 * (model.A - mu) ** 3) + linear_sigma3 ** 2 / (2 * (model.C - mu) ** 3)

    def _constraint_curvature(mu: float) -> float:
        return 3 * linear_sigma1 ** 2 / (2 * (model.A - mu) ** 4) + 3 * linear_sigma3 ** 2 / (2 * (model.C - mu) ** 4)

    def _polish(function: typing.Callable, slope: typing.Callable, start: float) -> tuple[float, bool, float]:
        mu, status = scipy.optimize.newton(
            function,
            start,
            fprime=slope,
            tol=1e-16 * scale,
            maxiter=NEWTON_MAX_ITERATIONS,
            full_output=True,
            disp=False,
        )
        return float(mu), bool(status.converged), abs(_constraint(mu)) / sigma0 ** 2

    def _root(mu: float, residual: float) -> secbif.data.critical.CpiRoot:
        return secbif.data.critical.CpiRoot(
            mu=mu,
            sigma1=-linear_sigma1 / (2 * (model.A - mu)),
            sigma3=-linear_sigma3 / (2 * (model.C - mu)),
            residual=residual,
        )

    roots: list[secbif.data.critical.CpiRoot] = []
    unresolved: list[float] = []
    for candidate in candidates:
        if abs(candidate.imag) > QUARTIC_IMAG_TOLERANCE * scale:
            continue
        mu, converged, residual = _polish(_constraint, _constraint_slope, candidate.real)
        if not (converged or residual < 1e-12) or residual > 1e-9 or any(abs(mu - root.mu) <= 1e-13 * scale for root in roots):
            unresolved.append(candidate.real)
            continue
        roots.append(_root(mu, residual))

    # a double root of S is a simple root of S'
    for start in unresolved:
        mu, _, residual = _polish(_constraint_slope, _constraint_curvature, start)
        if not residual <= DOUBLE_ROOT_TOLERANCE:
            LOGGER.debug(f'Discarded quartic candidate mu={start} at sigma0={sigma0} (residual {residual})')
            continue
        if (missing := 2 - sum(abs(root.mu - mu) <= DOUBLE_ROOT_GAP * scale for root in roots)) > 0:
            LOGGER.info(f'Double tangency at mu={mu}, sigma0={sigma0} (residual {residual})')
            roots.extend(_root(mu, residual) for _ in range(missing))
    return sorted(roots, key=lambda root: root.mu)


def discriminant_Q(model: QuadModel, sigma0: ArrayOrFloat) -> ArrayOrFloat:  # pylint: disable=invalid-name
    """
    Discriminant of the tangency quartic. It is positive where four tangencies exist and negative where two do.
    """

    _require_diagonal(model)
    spread = (model.A - model.C) ** 2
    t1, t3 = T1(model, sigma0), T3(model, sigma0)
    bracket = (
        (4 * spread - t1) ** 3
        - 3 * t3 * (16 * spread ** 2 + 28 * t1 * spread + t1 ** 2)
        + 3 * t3 ** 2 * (4 * spread - t1)
        - t3 ** 3
    )
    return 64 * spread * t1 * t3 * bracket


def discriminant_artifacts(model: QuadModel) -> list[float]:
    """
    Positive sigma0 where T1 or T3 vanishes. Q is zero there, but the tangency count does not change.
    """

    return sorted(
        sigma0
        for slope, offset in ((model.D1, model.Delta1), (model.D3, model.Delta3))
        if slope != 0 and (sigma0 := -offset / slope) > 0
    )


def f1(model: QuadModel, sigma0: ArrayOrFloat) -> ArrayOrFloat:
    spread = (model.A - model.C) ** 2
    t1, t3 = T1(model, sigma0), T3(model, sigma0)
    return (
        -4 * spread + t1 + t3
        - 3 * 2 ** (2 / 3) * np.cbrt(spread * t1 ** 2)
        + 6 * 2 ** (1 / 3) * np.cbrt(spread ** 2 * t1)
    )


def f2(model: QuadModel, sigma0: ArrayOrFloat) -> ArrayOrFloat:
    return -4 + T1(model, sigma0) / model.A ** 2 + T3(model, sigma0) / model.C ** 2


def _scan_f1(
    model: QuadModel,
    sigma0_max: float,
    grid_points: int = F1_GRID_POINTS,
) -> tuple[list[float], list[str]]:
    _require_diagonal(model)
    _require_anisotropic(model)
    if not sigma0_max > 0:
        raise ValueError(f'Invalid sigma0 search bound: {sigma0_max}')
    flags: list[str] = []
    if model.Delta1 == 0 and model.Delta3 == 0:
        constant = float(f1(model, sigma0_max))
        flags.append('f1-degenerate-all-sigma0' if constant == 0 else 'f1-constant')
        LOGGER.warning(f'f1 does not depend on sigma0 (f1 = {constant}): {flags[-1]}')
        return [], flags

    def _f1(sigma0: float) -> float:
        return float(f1(model, sigma0))

    grid = np.linspace(sigma0_max / grid_points, sigma0_max, grid_points)
    values = f1(model, grid)
    tolerance = 1e-9 * max(1.0, 4 * (model.A - model.C) ** 2)
    roots: list[float] = []
    for index in range(grid_points - 1):
        left, right = values[index], values[index + 1]
        if left == 0:
            roots.append(float(grid[index]))
        elif left * right < 0:
            roots.append(scipy.optimize.brentq(_f1, grid[index], grid[index + 1], xtol=F1_XTOL))
        elif 0 < index and abs(left) < abs(values[index - 1]) and abs(left) < abs(right) and abs(left) < 1e3 * tolerance:
            # local minimum of |f1| without a sign change
            nearest = scipy.optimize.minimize_scalar(
                lambda sigma0: abs(_f1(sigma0)),
                bounds=(grid[index - 1], grid[index + 1]),
                method='bounded',
                options={'xatol': F1_XTOL},
            )
            if nearest.fun < tolerance:
                roots.append(float(nearest.x))
                flags.append('possibly-tangent-root')
                LOGGER.warning(f'f1 touches zero without changing sign near sigma0={nearest.x}')
    if values[-1] == 0:
        roots.append(float(grid[-1]))

    merged: list[float] = []
    for root in sorted(roots):
        if merged and root - merged[-1] < ROOT_MERGE_DISTANCE:
            flags.append('possibly-tangent-root')
            LOGGER.warning(f'f1 roots {merged[-1]} and {root} merged')
            continue
        merged.append(root)
    for root in merged:
        if (residual := abs(_f1(root))) >= tolerance:
            LOGGER.warning(f'f1 residual {residual} at sigma0={root} above {tolerance}')
    return merged, sorted(set(flags))


def f1_roots(model: QuadModel, sigma0_max: float, grid_points: int = F1_GRID_POINTS) -> list[float]:
    """
    Values of sigma0 in (0, sigma0_max] where the number of tangencies changes between 2 and 4.

    Args:
        model (QuadModel): Diagonal model.
        sigma0_max (float): Upper end of the search, the AMD of the system when known.
        grid_points (int): Size of the sign-scan grid.

    Returns:
        list[float]: Sorted roots of f1, possibly empty.
    """

    roots, _ = _scan_f1(model, sigma0_max, grid_points)
    LOGGER.info(f'Found {len(roots)} CPI bifurcation values: {roots}')
    return roots


def _solve_f2(model: QuadModel) -> tuple[list[float], list[str], dict[str, typing.Any]]:
    A, C = model.A, model.C  # pylint: disable=invalid-name
    if A * C == 0 or abs(A * C) <= 1e-15 * model.scale ** 2:
        raise secbif.errors.SecondKindDegenerateError(f'A*C = {A * C}: no isolated second-kind critical points')
    D1, Delta1, D3, Delta3 = model.D1, model.Delta1, model.D3, model.Delta3  # pylint: disable=invalid-name
    flags: list[str] = []
    diagnostics: dict[str, typing.Any] = {}

    denominator = C ** 2 * D1 ** 2 + A ** 2 * (-4 * C ** 2 + D3 ** 2)
    denominator_scale = C ** 2 * D1 ** 2 + A ** 2 * (4 * C ** 2 + D3 ** 2)
    if abs(denominator) <= 1e-12 * denominator_scale:
        flags.append('cpii-single-branch')
        root_term = C ** 2 * Delta1 * abs(A) * math.sqrt(max(4 * C ** 2 - D3 ** 2, 0.0))
        numerator = -(C ** 2 * Delta1 ** 2 + A ** 2 * Delta3 ** 2) * abs(C)
        pairings = {
            sign: numerator / (2 * (A ** 2 * D3 * Delta3 * abs(C) + sign * root_term))
            for sign in (1.0, -1.0)
            if A ** 2 * D3 * Delta3 * abs(C) + sign * root_term != 0
        }
        if not pairings:
            diagnostics['cpii_single_branch'] = 'both pairings singular'
            return [], flags, diagnostics
        residuals = {sign: abs(float(f2(model, value))) if value != 0 else math.inf for sign, value in pairings.items()}
        chosen = min(residuals, key=residuals.get)  # type: ignore
        LOGGER.info(f'Single-branch CPII solution: kept pairing {"+" if chosen > 0 else "-"} (f2 residuals {residuals})')
        diagnostics['cpii_pairing'] = {'chosen': chosen, 'residuals': residuals}
        candidates = [pairings[chosen]]
    else:
        radicand = 4 * C ** 2 * Delta1 ** 2 - (D3 * Delta1 + 2 * A * Delta3 - D1 * Delta3) * (D3 * Delta1 - (2 * A + D1) * Delta3)
        if radicand < 0:
            flags.append('cpii-complex')
            diagnostics['cpii_radicand'] = radicand
            return [], flags, diagnostics
        lead = C ** 2 * D1 * Delta1 + A ** 2 * D3 * Delta3
        root_term = A * C * math.sqrt(radicand)
        candidates = [-(lead + root_term) / denominator, -(lead - root_term) / denominator]

    if rejected := [candidate for candidate in candidates if not candidate > 0]:
        flags.append('cpii-nonpositive-filtered')
        diagnostics['cpii_rejected'] = rejected
        LOGGER.warning(f'Filtered non-positive CPII solutions: {rejected}')
    return sorted(candidate for candidate in candidates if candidate > 0), flags, diagnostics


def cpii_values(model: QuadModel) -> list[float]:
    """
    Values of sigma0 where the line of second-kind critical points is tangent to the sphere.

    Args:
        model (QuadModel): Diagonal model.

    Returns:
        list[float]: Zero, one or two positive solutions of f2 = 0, ascending.

    Raises:
        secbif.errors.SecondKindDegenerateError: If A*C = 0.
    """

    _require_diagonal(model)
    values, _, _ = _solve_f2(model)
    LOGGER.info(f'Found {len(values)} CPII bifurcation values: {values}')
    return values


def cpii_center_and_stability(model: QuadModel, sigma0: float) -> secbif.data.critical.CpiiCenter:
    """
    Line of second-kind critical points at a given sigma0.

    The line is where dZ/dsigma1 = dZ/dsigma3 = 0. When it pierces the sphere it gives two equilibria
    F1 and F2 at opposite sigma2. They are stable iff the quadratic form is sign-definite.

    Raises:
        secbif.errors.SecondKindDegenerateError: If A*C = 0 or the quadratic form is singular.
    """

    if model.A * model.C == 0:
        raise secbif.errors.SecondKindDegenerateError(f'A*C = 0 (A={model.A}, C={model.C})')
    determinant = 4 * model.A * model.C - model.B ** 2
    if determinant == 0:
        raise secbif.errors.SecondKindDegenerateError('Singular quadratic form: critical points are not isolated')
    linear_sigma1, linear_sigma3 = model.linear(sigma0)
    sigma1, sigma3 = np.linalg.solve(
        np.array([[2 * model.A, model.B], [model.B, 2 * model.C]]),
        np.array([-linear_sigma1, -linear_sigma3]),
    )
    exists = bool(sigma1 ** 2 + sigma3 ** 2 < sigma0 ** 2)
    return secbif.data.critical.CpiiCenter(
        sigma0=sigma0,
        sigma1=float(sigma1),
        sigma3=float(sigma3),
        exists=exists,
        stability=secbif.data.critical.Stability.STABLE if determinant > 0 else secbif.data.critical.Stability.UNSTABLE,
        sigma2=math.sqrt(sigma0 ** 2 - sigma1 ** 2 - sigma3 ** 2) if exists else 0.0,
    )


def bifurcation_values(model: QuadModel, sigma0_max: float, grid_points: int = F1_GRID_POINTS) -> secbif.data.critical.BifurcationValues:
    """
    All critical sigma0 values of a quadratic model in (0, sigma0_max], rotating it first when needed.

    Args:
        model (QuadModel): Any quadratic model.
        sigma0_max (float): Upper end of the search.
        grid_points (int): Size of the f1 sign-scan grid.

    Returns:
        secbif.data.critical.BifurcationValues: Thresholds, flags and diagnostics.
    """

    diagnostics: dict[str, typing.Any] = {}
    if abs(model.B) > ROTATION_TOLERANCE * model.scale:
        model, angle = rotate_to_diagonal(model)
        diagnostics['rotation_angle'] = angle
    cpi, flags = _scan_f1(model, sigma0_max, grid_points)
    diagnostics['cpi_residuals'] = [abs(float(f1(model, root))) for root in cpi]
    try:
        cpii, cpii_flags, cpii_diagnostics = _solve_f2(model)
    except secbif.errors.SecondKindDegenerateError as no_second_kind_points:
        LOGGER.warning(f'{no_second_kind_points}')
        cpii, cpii_flags, cpii_diagnostics = [], ['cpii-degenerate'], {}
    if outside := [value for value in cpii if value > sigma0_max]:
        cpii_diagnostics['cpii_above_sigma0_max'] = outside
    cpii = [value for value in cpii if value <= sigma0_max]
    diagnostics.update(cpii_diagnostics)
    diagnostics['cpii_residuals'] = [abs(float(f2(model, value))) for value in cpii]
    shape = conic_class(model)
    if shape is not secbif.data.hamiltonian.ConicClass.PARABOLIC_DEGENERATE:
        flags.append(f'{"elliptic" if shape is secbif.data.hamiltonian.ConicClass.ELLIPSE else "hyperbolic"}-ordering')
    return secbif.data.critical.BifurcationValues(
        cpi_sigma0=tuple(cpi),
        cpii_sigma0=tuple(cpii),
        flags=tuple(sorted({*flags, *cpii_flags})),
        diagnostics=diagnostics,
    )
