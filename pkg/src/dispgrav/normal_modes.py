"""Two-particle mode condition and zero-point energy routes.

The coupled dipoles are self-sustained when ``det(I - a1*a2*gamma^2) = 0``.
With the propagator diagonal on the longitudinal/transverse projectors the
determinant factorizes into one longitudinal and two transverse factors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import C_LIGHT, HBAR, London, PolarizabilityModel, log_one_minus
from .dipole_fields import IMAGINARY_AXIS, REAL_AXIS, propagator, squared_couplings
from .exceptions import InstabilityError, InvalidInputError
from .quadrature import QuadratureSettings, geometric_breakpoints, integrate


@dataclass(frozen=True)
class ParticlePair:
    model1: PolarizabilityModel
    model2: PolarizabilityModel
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise InvalidInputError(f"separation must be positive, got r={self.r!r}")

    @property
    def static_coupling(self) -> float:
        """``alpha1(0) * alpha2(0)``."""
        return self.model1.static_value * self.model2.static_value

    def coupling(self, omega):
        """``alpha1(i omega) * alpha2(i omega)``."""
        return self.model1.at_imaginary(omega) * self.model2.at_imaginary(omega)


@dataclass(frozen=True)
class DeterminantValue:
    value: complex
    omega: complex
    axis: str


@dataclass(frozen=True)
class ModeSpectrum:
    modes: tuple
    reference: tuple


def determinant(pair: ParticlePair, omega, axis: str = IMAGINARY_AXIS) -> DeterminantValue:
    """Mode determinant at a single frequency.

    On the imaginary axis ``omega >= 0`` is the magnitude of ``i*omega`` and
    the result is real. On the real axis ``omega`` may be complex; this needs
    models with an analytic continuation (not ``Tabulated``).
    """
    g = propagator(omega, pair.r, axis)
    if axis == IMAGINARY_AXIS:
        a = float(pair.coupling(omega))
        value = (1.0 - a * g.g_par ** 2) * (1.0 - a * g.g_perp ** 2) ** 2
        return DeterminantValue(value=float(value), omega=omega, axis=axis)
    a = pair.model1.at_complex(omega) * pair.model2.at_complex(omega)
    value = (1.0 - a * g.g_par ** 2) * (1.0 - a * g.g_perp ** 2) ** 2
    return DeterminantValue(value=complex(value), omega=omega, axis=REAL_AXIS)


def coupling_terms(pair: ParticlePair, omega):
    """Vectorized ``(a1*a2, a1*a2*g_par^2, a1*a2*g_perp^2)`` on the imaginary axis."""
    omega = np.asarray(omega, dtype=float)
    a = pair.coupling(omega)
    gpar2, gperp2 = squared_couplings(omega * (pair.r / C_LIGHT))
    return a, a * gpar2, a * gperp2


def log_determinant(pair: ParticlePair, omega):
    """``ln det`` on the imaginary axis, vectorized; raises on instability."""
    _, eps_par, eps_perp = coupling_terms(pair, omega)
    return _log_det_from_terms(eps_par, eps_perp)


def _log_det_from_terms(eps_par, eps_perp):
    if np.any(eps_par >= 1.0) or np.any(eps_perp >= 1.0):
        raise InstabilityError(
            "determinant is non-positive on the imaginary axis; "
            "alpha1(0)*alpha2(0) must be < 1"
        )
    return log_one_minus(eps_par) + 2.0 * log_one_minus(eps_perp)


def _check_alpha0(alpha0, omega0):
    if not omega0 > 0:
        raise InvalidInputError(f"omega0 must be > 0, got {omega0!r}")
    if not alpha0 > 0:
        raise InvalidInputError(f"alpha0 must be > 0, got {alpha0!r}")
    if alpha0 >= 1:
        raise InstabilityError(
            f"alpha0={alpha0!r} >= 1: the lower mode frequency would be imaginary"
        )


def nonretarded_mode_spectrum(alpha0: float, omega0: float) -> ModeSpectrum:
    """Zeros and poles of ``(1 - alpha(z)^2)^3`` for identical London particles.

    Without retardation both brackets are -1, so the condition is
    ``alpha(z) = +-1``.
    """
    _check_alpha0(alpha0, omega0)
    lower = omega0 * np.sqrt(1.0 - alpha0)
    upper = omega0 * np.sqrt(1.0 + alpha0)
    return ModeSpectrum(modes=((lower, 3), (upper, 3)), reference=((omega0, 6),))


def zero_point_energy_mode_sum(spectrum: ModeSpectrum) -> float:
    """``(hbar/2) * (sum of mode frequencies - sum of reference frequencies)`` in J."""
    shifted = sum(m * w for w, m in spectrum.modes)
    free = sum(m * w for w, m in spectrum.reference)
    return 0.5 * HBAR * (shifted - free)


def zero_point_energy_imaginary_axis_nonretarded(
    alpha0: float, omega0: float, quadrature: QuadratureSettings | None = None
) -> float:
    """Same energy as the mode sum, from the imaginary-axis integral, in J."""
    if alpha0 == 0:
        return 0.0
    _check_alpha0(alpha0, omega0)
    a2 = alpha0 * alpha0

    def integrand(u):
        return 3.0 * log_one_minus(a2 / (1.0 + u * u) ** 2) / a2

    res = integrate(integrand, geometric_breakpoints([1.0]), quadrature,
                    operation="zero_point_energy_imaginary_axis_nonretarded")
    return HBAR * omega0 / (2.0 * np.pi) * a2 * res.value


def zero_point_energy_contour(alpha0: float, omega0: float, nodes: int = 4096) -> float:
    """Energy from the contour integral ``(1/2 pi i) oint (hbar z/2) d/dz ln D dz``.

    The contour is a circle about ``omega0`` enclosing both positive mode
    frequencies and the pole, but none of the mirror zeros on the negative
    axis. Trapezoidal rule on the circle, which converges geometrically.
    """
    spectrum = nonretarded_mode_spectrum(alpha0, omega0)
    (lower, _), (upper, _) = spectrum.modes
    inner = max(omega0 - lower, upper - omega0)
    outer = omega0 + lower
    radius = 0.5 * (inner + outer)
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    step = radius * np.exp(1j * theta)
    z = omega0 + step
    u = z / omega0
    alpha = alpha0 / (1.0 - u * u)
    dalpha = alpha0 * 2.0 * u / omega0 / (1.0 - u * u) ** 2
    dlog = 3.0 * (-2.0 * alpha * dalpha) / (1.0 - alpha * alpha)
    # dz = i * step * dtheta; the i cancels the 1/(2 pi i) prefactor's i
    integral = np.mean(0.5 * HBAR * z * dlog * step)
    return float(integral.real)


def london_pair(alpha0: float, omega0: float, r: float) -> ParticlePair:
    model = London(alpha0, omega0)
    return ParticlePair(model, model, r)
