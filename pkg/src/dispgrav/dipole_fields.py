"""Fields of an oscillating dipole when the source charge field grows as ``q*r``.

Time-domain fields are given in the local spherical basis
``(r_hat, theta_hat, phi_hat)`` of a dipole pointing along ``z``. Frequency
domain quantities use the ``exp(-i*omega*t)`` convention and Cartesian
components. The propagator coefficients multiply the longitudinal projector
``r r / r^2`` (``g_par``) and the transverse projector ``1 - r r / r^2``
(``g_perp``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import C_LIGHT
from .exceptions import InvalidInputError

REAL_AXIS = "real"
IMAGINARY_AXIS = "imaginary"


@dataclass(frozen=True)
class MonochromaticDipole:
    """Dipole ``p(t) = p0 * cos(omega * t) * z_hat``."""

    p0: float = 1.0
    omega: float = 0.0


@dataclass(frozen=True)
class EvaluationPoint:
    r: float
    theta: float
    t: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi):
            raise InvalidInputError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not self.r >= 0:
            raise InvalidInputError(f"r must be >= 0, got {self.r!r}")


@dataclass(frozen=True)
class FieldSample:
    E: np.ndarray
    B: np.ndarray


@dataclass(frozen=True)
class Projectors:
    alpha_tensor: np.ndarray
    beta_tensor: np.ndarray


@dataclass(frozen=True)
class PropagatorCoefficients:
    g_par: complex
    g_perp: complex
    omega: complex
    r: float
    axis: str


def spherical_basis(theta, phi=0.0):
    """Rows are ``r_hat``, ``theta_hat``, ``phi_hat`` in Cartesian components."""
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    return np.array([
        [st * cp, st * sp, ct],
        [ct * cp, ct * sp, -st],
        [-sp, cp, 0.0],
    ])


def to_cartesian(vec, theta, phi=0.0):
    return spherical_basis(theta, phi).T @ np.asarray(vec)


def to_spherical(vec, theta, phi=0.0):
    return spherical_basis(theta, phi) @ np.asarray(vec)


def static_dipole_field(p) -> FieldSample:
    """Field of a static dipole: ``-p`` everywhere, no magnetic field.

    The result has no spatial dependence, so no evaluation point is taken;
    components come back in whatever basis ``p`` was given in.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (3,) or not np.all(np.isfinite(p)):
        raise InvalidInputError("dipole moment must be a finite 3-vector")
    return FieldSample(E=-p, B=np.zeros(3))


def _retarded_moments(dipole: MonochromaticDipole, r, t):
    w = dipole.omega
    phase = w * (t - r / C_LIGHT)
    p = dipole.p0 * np.cos(phase)
    dp = -dipole.p0 * w * np.sin(phase)
    ddp = -dipole.p0 * w * w * np.cos(phase)
    return p, dp, ddp


def field_time_domain(dipole: MonochromaticDipole, point: EvaluationPoint) -> FieldSample:
    """Retarded E and B at ``point``, spherical components."""
    if not point.r > 0:
        raise InvalidInputError("time-domain field needs r > 0")
    return _field_spherical(dipole, point.r, point.theta, point.t)


def _field_spherical(dipole, r, theta, t):
    p, dp, ddp = _retarded_moments(dipole, r, t)
    s = r / C_LIGHT
    e_r = (-p + 2.0 * dp * s - ddp * s * s) * np.cos(theta)
    e_theta = (p - 0.5 * s * dp + 0.5 * ddp * s * s) * np.sin(theta)
    b_phi = (-s * dp + 0.5 * s * s * ddp) * np.sin(theta)
    return FieldSample(E=np.array([e_r, e_theta, 0.0]), B=np.array([0.0, 0.0, b_phi]))


def _field_cartesian(dipole, pos, t):
    x, y, z = pos
    r = np.sqrt(x * x + y * y + z * z)
    theta = np.arccos(np.clip(z / r, -1.0, 1.0))
    phi = np.arctan2(y, x)
    sample = _field_spherical(dipole, r, theta, t)
    basis = spherical_basis(theta, phi).T
    return basis @ sample.E, basis @ sample.B


def projectors(r_hat) -> Projectors:
    r_hat = np.asarray(r_hat, dtype=float)
    if r_hat.shape != (3,) or abs(np.linalg.norm(r_hat) - 1.0) > 1e-12:
        raise InvalidInputError("projectors need a unit 3-vector")
    alpha = np.outer(r_hat, r_hat)
    return Projectors(alpha_tensor=alpha, beta_tensor=np.eye(3) - alpha)


def bracket_factors(x, axis=REAL_AXIS):
    """The two polynomial brackets of the propagator at ``x = omega*r/c``.

    On the real axis ``x`` may be complex (analytic continuation); on the
    imaginary axis ``x >= 0`` is the Wick-rotated variable.
    """
    if axis == REAL_AXIS:
        par = -1.0 + 2.0 * (-1j * x) + x * x
        perp = -1.0 + 0.5 * (-1j * x) + 0.5 * x * x
    elif axis == IMAGINARY_AXIS:
        par = -1.0 + 2.0 * x - x * x
        perp = -1.0 + 0.5 * x - 0.5 * x * x
    else:
        raise InvalidInputError(f"axis must be 'real' or 'imaginary', got {axis!r}")
    return par, perp


def retardation_factor(x, axis=REAL_AXIS):
    return np.exp(1j * x) if axis == REAL_AXIS else np.exp(-x)


def squared_couplings(x):
    """``(g_par**2, g_perp**2)`` on the imaginary axis, vectorized over ``x``.

    Both are real, non-negative and bounded by their ``x = 0`` value of 1.
    """
    x = np.asarray(x, dtype=float)
    par, perp = bracket_factors(x, IMAGINARY_AXIS)
    damp = np.exp(-2.0 * x)
    return damp * par * par, damp * perp * perp


def propagator(omega, r: float, axis: str = REAL_AXIS) -> PropagatorCoefficients:
    """Scalar coefficients of the two-particle propagator tensor.

    ``omega`` is a (possibly complex) real-axis frequency for
    ``axis="real"``, or the non-negative magnitude on the imaginary axis for
    ``axis="imaginary"``.
    """
    if not r > 0:
        raise InvalidInputError(f"separation must be positive, got r={r!r}")
    if axis == IMAGINARY_AXIS and (np.iscomplexobj(omega) or omega < 0):
        raise InvalidInputError("imaginary-axis frequency must be real and >= 0")
    x = omega * r / C_LIGHT
    par, perp = bracket_factors(x, axis)
    damp = retardation_factor(x, axis)
    if axis == IMAGINARY_AXIS:
        g_par, g_perp = float(damp * par), float(damp * perp)
    else:
        g_par, g_perp = complex(damp * par), complex(damp * perp)
    return PropagatorCoefficients(g_par=g_par, g_perp=g_perp, omega=omega, r=r, axis=axis)


def propagator_tensor(omega, r_vec, axis: str = REAL_AXIS) -> np.ndarray:
    r_vec = np.asarray(r_vec, dtype=float)
    r = np.linalg.norm(r_vec)
    if not r > 0:
        raise InvalidInputError("zero separation")
    proj = projectors(r_vec / r)
    g = propagator(omega, r, axis)
    return g.g_par * proj.alpha_tensor + g.g_perp * proj.beta_tensor


def field_frequency_domain(p_hat, p_omega, omega, r_vec) -> np.ndarray:
    """Complex Cartesian field amplitude at ``r_vec`` for dipole ``p_omega * p_hat``."""
    p_hat = np.asarray(p_hat, dtype=float)
    if p_hat.shape != (3,) or abs(np.linalg.norm(p_hat) - 1.0) > 1e-12:
        raise InvalidInputError("p_hat must be a unit 3-vector")
    return propagator_tensor(omega, r_vec, REAL_AXIS) @ (p_omega * p_hat)


def field_from_spectrum(dipole: MonochromaticDipole, point: EvaluationPoint) -> np.ndarray:
    """E at ``point`` rebuilt as ``Re[E(omega) exp(-i omega t)]``, spherical components.

    Independent of :func:`field_time_domain`; the two must agree.
    """
    if not point.r > 0:
        raise InvalidInputError("field needs r > 0")
    r_vec = point.r * spherical_basis(point.theta)[0]
    amp = field_frequency_domain([0.0, 0.0, 1.0], dipole.p0, dipole.omega, r_vec)
    e_cart = np.real(amp * np.exp(-1j * dipole.omega * point.t))
    return to_spherical(e_cart, point.theta)


def default_step(r: float, omega: float) -> float:
    h = r / 100.0
    if omega > 0:
        h = min(h, 0.01 * C_LIGHT / omega)
    return h


def maxwell_residual(dipole: MonochromaticDipole, point: EvaluationPoint, h: float | None = None):
    """Finite-difference residuals of the homogeneous field equations.

    Returns ``(curl_residual, div_residual)`` where ``curl_residual`` is
    ``curl E + (1/c) dB/dt`` in spherical components and ``div_residual`` is
    ``div B``. Central second-order stencils with spatial step ``h`` and time
    step ``h / c``.
    """
    if h is None:
        h = default_step(point.r, dipole.omega)
    if not h > 0:
        raise InvalidInputError("step must be positive")
    if h * abs(dipole.omega) / C_LIGHT > 0.1:
        raise InvalidInputError("step too large relative to the wavelength (h*omega/c > 0.1)")
    if not point.r > 2 * h:
        raise InvalidInputError("point too close to the source for the stencil (need r > 2h)")

    pos = point.r * spherical_basis(point.theta)[0]
    t = point.t
    dt = h / C_LIGHT

    # jac_E[i, j] = dE_i / dx_j
    jac_e = np.empty((3, 3))
    jac_b = np.empty((3, 3))
    for j in range(3):
        step = np.zeros(3)
        step[j] = h
        e_plus, b_plus = _field_cartesian(dipole, pos + step, t)
        e_minus, b_minus = _field_cartesian(dipole, pos - step, t)
        jac_e[:, j] = (e_plus - e_minus) / (2 * h)
        jac_b[:, j] = (b_plus - b_minus) / (2 * h)

    curl_e = np.array([
        jac_e[2, 1] - jac_e[1, 2],
        jac_e[0, 2] - jac_e[2, 0],
        jac_e[1, 0] - jac_e[0, 1],
    ])
    _, b_later = _field_cartesian(dipole, pos, t + dt)
    _, b_earlier = _field_cartesian(dipole, pos, t - dt)
    db_dt = (b_later - b_earlier) / (2 * dt)

    curl_res = curl_e + db_dt / C_LIGHT
    div_res = float(np.trace(jac_b))
    return to_spherical(curl_res, point.theta), div_res
