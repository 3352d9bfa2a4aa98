"""Interaction potential of two composite particles.

Quadratures run in ``s = omega / omega_s`` where ``omega_s`` is the response
knee of the models (``omega0`` for London) or ``c / r`` when the models are
frequency independent. The integrand is divided by ``alpha1(0)*alpha2(0)``
so the adaptive tolerances act on an O(1) quantity even when the
polarizabilities are ~1e-19.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import C_LIGHT, HBAR, CoefficientSource, Constant, London, Tabulated
from .exceptions import InvalidInputError, NumericalFailureError
from .normal_modes import ParticlePair, _log_det_from_terms, coupling_terms
from .quadrature import QuadratureSettings, geometric_breakpoints, integrate

__all__ = [
    "ExpansionPolynomial",
    "Method",
    "PotentialResult",
    "QuadratureSettings",
    "casimir_limit",
    "casimir_moment",
    "crossover_distance",
    "expansion_polynomial",
    "potential_expanded",
    "potential_full",
    "reduced_moment",
    "vdw_limit_general",
    "vdw_limit_london",
]


class Method(enum.Enum):
    FULL = "full"
    EXPANDED = "expanded"
    VDW_LIMIT = "vdw_limit"
    CASIMIR_LIMIT = "casimir_limit"


@dataclass(frozen=True)
class PotentialResult:
    """An interaction energy.

    ``value_reduced`` is ``value_si / reduced_scale`` where ``reduced_scale``
    is the energy named by ``scale_label`` (``hbar*omega0`` or ``hbar*c/r``).
    ``error_estimate`` is in joules.
    """

    value_si: float
    value_reduced: float
    reduced_scale: float
    scale_label: str
    method: Method
    error_estimate: float = 0.0
    coeff_source: CoefficientSource | None = None
    panels: int = 0


@dataclass(frozen=True)
class ExpansionPolynomial:
    coefficients: tuple = field(default=(3.0, -6.0, 8.5, -5.0, 1.5))

    def __post_init__(self):
        if len(self.coefficients) != 5:
            raise InvalidInputError("expansion polynomial needs exactly 5 coefficients")

    def __call__(self, x):
        c0, c1, c2, c3, c4 = self.coefficients
        return c0 + x * (c1 + x * (c2 + x * (c3 + x * c4)))

    def moment(self) -> Fraction:
        """``integral_0^inf exp(-2x) P(x) dx``, exactly."""
        return sum(
            (Fraction(c).limit_denominator(10**6) * Fraction(math.factorial(n), 2 ** (n + 1))
             for n, c in enumerate(self.coefficients)),
            Fraction(0),
        )


_POLYNOMIALS = {
    CoefficientSource.PAPER_PUBLISHED: ExpansionPolynomial((3.0, -6.0, 8.5, -4.5, 1.5)),
    CoefficientSource.SELF_CONSISTENT: ExpansionPolynomial((3.0, -6.0, 8.5, -5.0, 1.5)),
}


def expansion_polynomial(source=CoefficientSource.SELF_CONSISTENT) -> ExpansionPolynomial:
    return _POLYNOMIALS[CoefficientSource.parse(source)]


def casimir_moment(source=CoefficientSource.SELF_CONSISTENT) -> Fraction:
    """25/16 for the printed polynomial, 11/8 for the self-consistent one."""
    return expansion_polynomial(source).moment()


def _frequency_scale(pair: ParticlePair):
    """Return ``(omega_s, label)``: the response knee, or ``c/r`` if there is none."""
    knees = [m.characteristic_frequency for m in (pair.model1, pair.model2)]
    knees = [k for k in knees if k is not None]
    if knees:
        return min(knees), "hbar*omega0"
    return C_LIGHT / pair.r, "hbar*c/r"


def _breakpoints(pair: ParticlePair, omega_s: float):
    knees = [C_LIGHT / pair.r / omega_s]
    for m in (pair.model1, pair.model2):
        if m.characteristic_frequency is not None:
            knees.append(m.characteristic_frequency / omega_s)
    return np.concatenate([geometric_breakpoints(knees), _table_nodes(pair, omega_s)])


def _table_nodes(pair: ParticlePair, omega_s: float):
    # piecewise interpolation has kinks at the samples; panels must not straddle them
    nodes = [np.asarray(m.omegas) / omega_s for m in (pair.model1, pair.model2) if isinstance(m, Tabulated)]
    return np.concatenate(nodes) if nodes else np.empty(0)


def _normalization(pair: ParticlePair) -> float:
    a0 = pair.static_coupling
    return a0 if a0 > 0 else 1.0


def _zero_result(pair, method, source=None):
    omega_s, label = _frequency_scale(pair)
    return PotentialResult(0.0, 0.0, HBAR * omega_s, label, method, 0.0, source)


def _has_zero_response(pair: ParticlePair) -> bool:
    return any(
        isinstance(m, (Constant, London)) and m.alpha0 == 0 for m in (pair.model1, pair.model2)
    )


def _check_stable(pair: ParticlePair):
    # both imaginary-axis couplings peak at 1 when omega = 0
    _log_det_from_terms(np.array([pair.static_coupling]), np.array([pair.static_coupling]))


def _finish(pair, res, norm, method, source=None):
    omega_s, label = _frequency_scale(pair)
    scale = HBAR * omega_s
    reduced = norm * res.value / (2.0 * np.pi)
    err_reduced = norm * res.error / (2.0 * np.pi)
    return PotentialResult(
        value_si=reduced * scale,
        value_reduced=reduced,
        reduced_scale=scale,
        scale_label=label,
        method=method,
        error_estimate=err_reduced * scale,
        coeff_source=source,
        panels=res.panels,
    )


def potential_full(pair: ParticlePair, q: QuadratureSettings | None = None) -> PotentialResult:
    """``V = (hbar / 2 pi) integral_0^inf ln det(i omega) d omega``."""
    if _has_zero_response(pair):
        return _zero_result(pair, Method.FULL)
    _check_stable(pair)
    omega_s, _ = _frequency_scale(pair)
    norm = _normalization(pair)

    def integrand(s):
        _, eps_par, eps_perp = coupling_terms(pair, s * omega_s)
        return _log_det_from_terms(eps_par, eps_perp) / norm

    res = integrate(integrand, _breakpoints(pair, omega_s), q, operation="potential_full")
    return _finish(pair, res, norm, Method.FULL)


def potential_expanded(pair: ParticlePair, poly: ExpansionPolynomial | None = None,
                       q: QuadratureSettings | None = None) -> PotentialResult:
    """Leading order in the coupling: ``ln(1 - eps) -> -eps``.

    ``V = -(hbar / 2 pi) integral a1 a2 exp(-2x) P(x) d omega``, ``x = omega r / c``.
    """
    poly = poly or expansion_polynomial(CoefficientSource.SELF_CONSISTENT)
    source = next((k for k, v in _POLYNOMIALS.items() if v == poly), None)
    if _has_zero_response(pair):
        return _zero_result(pair, Method.EXPANDED, source)
    _check_stable(pair)
    omega_s, _ = _frequency_scale(pair)
    norm = _normalization(pair)
    x_per_s = omega_s * pair.r / C_LIGHT

    def integrand(s):
        a = pair.coupling(s * omega_s)
        x = s * x_per_s
        return -(a / norm) * np.exp(-2.0 * x) * poly(x)

    res = integrate(integrand, _breakpoints(pair, omega_s), q, operation="potential_expanded")
    return _finish(pair, res, norm, Method.EXPANDED, source)


def casimir_limit(pair: ParticlePair, source=CoefficientSource.SELF_CONSISTENT) -> PotentialResult:
    """Large-separation form ``-(M / 2 pi) hbar c a1(0) a2(0) / r``.

    ``M`` is 25/16 (printed coefficient, ``-25 hbar c / 32 pi r``) or 11/8
    (self-consistent, ``-11 hbar c / 16 pi r``).
    """
    source = CoefficientSource.parse(source)
    moment = float(casimir_moment(source))
    scale = HBAR * C_LIGHT / pair.r
    reduced = -moment / (2.0 * np.pi) * pair.static_coupling
    return PotentialResult(reduced * scale, reduced, scale, "hbar*c/r",
                           Method.CASIMIR_LIMIT, 0.0, source)


def vdw_limit_london(alpha0_1: float, alpha0_2: float, omega0: float) -> PotentialResult:
    """Short-range plateau ``-(3/8) alpha1(0) alpha2(0) hbar omega0``."""
    if not omega0 > 0:
        raise InvalidInputError(f"omega0 must be > 0, got {omega0!r}")
    if alpha0_1 < 0 or alpha0_2 < 0:
        raise InvalidInputError("static polarizabilities must be >= 0")
    reduced = -0.375 * alpha0_1 * alpha0_2
    scale = HBAR * omega0
    return PotentialResult(reduced * scale, reduced, scale, "hbar*omega0", Method.VDW_LIMIT)


def vdw_limit_general(pair: ParticlePair, q: QuadratureSettings | None = None) -> PotentialResult:
    """``V = -(3 hbar / 2 pi) integral_0^inf a1(i omega) a2(i omega) d omega``.

    Independent of ``pair.r``. Frequency-independent models make the integral
    diverge, which is reported as a numerical failure.
    """
    if _has_zero_response(pair):
        return _zero_result(pair, Method.VDW_LIMIT)
    knees = [m.characteristic_frequency for m in (pair.model1, pair.model2)]
    knees = [k for k in knees if k is not None]
    if not knees:
        raise NumericalFailureError(
            "vdw_limit_general: frequency-independent polarizabilities make the "
            "van der Waals integral diverge",
            operation="vdw_limit_general",
        )
    omega_s = min(knees)
    norm = _normalization(pair)

    def integrand(s):
        return -3.0 * pair.coupling(s * omega_s) / norm

    pts = np.concatenate([geometric_breakpoints([k / omega_s for k in knees]), _table_nodes(pair, omega_s)])
    res = integrate(integrand, pts, q,
                    operation="vdw_limit_general")
    scale = HBAR * omega_s
    reduced = norm * res.value / (2.0 * np.pi)
    return PotentialResult(reduced * scale, reduced, scale, "hbar*omega0", Method.VDW_LIMIT,
                           norm * res.error / (2.0 * np.pi) * scale, None, res.panels)


def crossover_distance(omega0: float, source=CoefficientSource.SELF_CONSISTENT) -> float:
    """Separation where the van der Waals plateau equals the Casimir branch.

    ``(3/8) hbar omega0 = (M / 2 pi) hbar c / r`` gives
    ``r_c = 4 M c / (3 pi omega0)``: ``25 c / (12 pi omega0)`` for the printed
    coefficient, ``22 c / (12 pi omega0)`` for the self-consistent one.
    """
    if not omega0 > 0:
        raise InvalidInputError(f"omega0 must be > 0, got {omega0!r}")
    moment = casimir_moment(source)
    return float(4 * moment) * C_LIGHT / (3.0 * np.pi * omega0)


def reduced_moment(result: PotentialResult, pair: ParticlePair) -> float:
    """``-2 pi V r / (hbar c a1(0) a2(0))``; tends to the Casimir moment at large r."""
    return -2.0 * np.pi * result.value_si * pair.r / (HBAR * C_LIGHT * pair.static_coupling)
