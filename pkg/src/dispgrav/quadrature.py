"""Globally adaptive 15-point Gauss-Kronrod quadrature on [0, inf).

The integrand is evaluated vectorized over the 15 nodes of a panel. Finite
panels come from caller-supplied breakpoints; the last breakpoint ``B`` is
followed by an infinite panel mapped onto [0, 1) through ``s = B / (1 - t)``,
which handles both exponential and algebraic tails. Error estimates follow
the QUADPACK ``qk15`` heuristic, including its round-off floor.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError, NumericalFailureError

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 nodes on [-1, 1] and matching weights; Gauss nodes are the odd-indexed
# Kronrod abscissae (plus the centre).
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5]] = _WG[:3]
_GWEIGHTS[[9, 11, 13]] = _WG[2::-1]
_GWEIGHTS[7] = _WG[3]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-16
    max_panels: int = 2000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise InvalidInputError("quadrature tolerances must be positive")
        if int(self.max_panels) < 1:
            raise InvalidInputError("max_panels must be >= 1")

    def tightened(self, factor: float = 10.0) -> "QuadratureSettings":
        return QuadratureSettings(self.rel_tol / factor, self.abs_tol / factor, self.max_panels)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    panels: int
    evaluations: int


def gauss_kronrod_panel(f, a: float, b: float):
    """Integrate ``f`` over ``[a, b]``; return ``(value, error_estimate)``."""
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fv = np.asarray(f(centre + half * _NODES), dtype=float)
    if not np.all(np.isfinite(fv)):
        raise NumericalFailureError(
            f"integrand is not finite on [{a:g}, {b:g}]", operation="quadrature"
        )
    return _panel_estimate(fv, half)


def _panel_estimate(fv, half):
    resk = float(_KWEIGHTS @ fv)
    resg = float(_GWEIGHTS @ fv)
    resabs = float(_KWEIGHTS @ np.abs(fv)) * abs(half)
    mean = 0.5 * resk
    resasc = float(_KWEIGHTS @ np.abs(fv - mean)) * abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _TINY / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return resk * half, err


class _MappedTail:
    """``integral_B^inf f(s) ds`` written as ``integral_0^1 f(B/(1-t)) B/(1-t)^2 dt``."""

    def __init__(self, f, start):
        self.f = f
        self.start = start

    def __call__(self, t):
        one_minus = 1.0 - t
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            s = self.start / one_minus
            return self.f(s) * self.start / (one_minus * one_minus)


def integrate(f, breakpoints, settings: QuadratureSettings | None = None,
              infinite: bool = True, operation: str = "quadrature") -> QuadratureResult:
    """Adaptive integral of a vectorized ``f`` over ``[breakpoints[0], inf)``.

    With ``infinite=False`` the domain ends at the last breakpoint instead.
    """
    settings = settings or QuadratureSettings()
    pts = np.unique(np.asarray(breakpoints, dtype=float))
    if pts.size < 1 or (not infinite and pts.size < 2):
        raise InvalidInputError("need at least one finite panel")
    if infinite and pts[-1] <= 0:
        raise InvalidInputError("last breakpoint must be > 0 for the mapped tail")

    # heap items: (-error, id, a, b, value, error, integrand)
    heap = []
    counter = 0
    evals = 0
    total = 0.0
    total_err = 0.0

    def push(g, a, b):
        nonlocal counter, evals, total, total_err
        try:
            val, err = gauss_kronrod_panel(g, a, b)
        except NumericalFailureError:
            where = "in the infinite tail" if isinstance(g, _MappedTail) else f"on [{a:g}, {b:g}]"
            raise NumericalFailureError(
                f"{operation}: integrand not finite {where}; the integral diverges "
                f"or the integrand is singular",
                operation=operation,
                diagnostic={"value": total, "error": total_err, "panels": len(heap)},
            ) from None
        evals += 15
        counter += 1
        heapq.heappush(heap, (-err, counter, a, b, val, err, g))
        total += val
        total_err += err

    for a, b in zip(pts[:-1], pts[1:]):
        push(f, a, b)
    if infinite:
        push(_MappedTail(f, pts[-1]), 0.0, 1.0)

    while True:
        tol = max(settings.abs_tol, settings.rel_tol * abs(total))
        if total_err <= tol:
            break
        if len(heap) >= settings.max_panels:
            raise NumericalFailureError(
                f"{operation}: no convergence within {settings.max_panels} panels "
                f"(value={total:.6e}, error estimate={total_err:.3e}, target={tol:.3e})",
                operation=operation,
                diagnostic={"value": total, "error": total_err, "panels": len(heap)},
            )
        _, _, a, b, val, err, g = heapq.heappop(heap)
        total -= val
        total_err -= err
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            raise NumericalFailureError(
                f"{operation}: panel [{a!r}, {b!r}] cannot be bisected further",
                operation=operation,
            )
        push(g, a, mid)
        push(g, mid, b)

    # re-sum to shed accumulated round-off from the running totals
    value = float(sum(item[4] for item in heap))
    error = float(sum(item[5] for item in heap))
    return QuadratureResult(value=value, error=error, panels=len(heap), evaluations=evals)


def geometric_breakpoints(knees, decades_below: float = 2.0, decades_above: float = 1.0,
                          per_decade: int = 2):
    """Breakpoints ``0, lo, ..., hi`` spaced geometrically around the given knees."""
    knees = [k for k in knees if k is not None and k > 0]
    if not knees:
        knees = [1.0]
    lo = min(knees) * 10.0 ** (-decades_below)
    hi = max(knees) * 10.0 ** decades_above
    n = max(2, int(np.ceil(np.log10(hi / lo) * per_decade)) + 1)
    grid = np.geomspace(lo, hi, n)
    return np.concatenate([[0.0], grid, knees])
