"""Mass <-> static polarizability calibration against Newtonian gravity.

Choosing ``alpha(0) = k * m`` makes the Casimir branch ``-(M/2pi) hbar c
alpha1 alpha2 / r`` equal to ``-G m1 m2 / r`` when ``k^2 = 2 pi G / (M hbar c)``.
With ``M = 25/16`` this is ``k = sqrt(32 pi G / (25 hbar c))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import C_LIGHT, GAMMA_G, HBAR, CoefficientSource, Constant, joules_to_mev
from .dispersion_potential import casimir_moment, potential_full
from .exceptions import InvalidInputError
from .normal_modes import ParticlePair
from .quadrature import QuadratureSettings


@dataclass(frozen=True)
class Calibration:
    source: CoefficientSource
    k: float  # 1/kg


@dataclass(frozen=True)
class EnergyBound:
    joules: float
    mev: float
    source: CoefficientSource


@dataclass(frozen=True)
class EquivalenceRow:
    r: float
    v_dispersion: float
    v_newton: float
    relative_deviation: float


def calibration(source=CoefficientSource.SELF_CONSISTENT) -> Calibration:
    source = CoefficientSource.parse(source)
    moment = float(casimir_moment(source))
    return Calibration(source, math.sqrt(2.0 * math.pi * GAMMA_G / (moment * HBAR * C_LIGHT)))


def _resolve(cal):
    if isinstance(cal, Calibration):
        return cal
    return calibration(cal)


def mass_to_polarizability(m: float, cal=CoefficientSource.SELF_CONSISTENT) -> float:
    if not m > 0:
        raise InvalidInputError(f"mass must be > 0, got {m!r}")
    return _resolve(cal).k * m


def polarizability_to_mass(alpha0: float, cal=CoefficientSource.SELF_CONSISTENT) -> float:
    if not alpha0 > 0:
        raise InvalidInputError(f"alpha0 must be > 0, got {alpha0!r}")
    return alpha0 / _resolve(cal).k


def newton_potential(m1: float, m2: float, r: float) -> float:
    if not r > 0:
        raise InvalidInputError(f"separation must be positive, got r={r!r}")
    if not (m1 > 0 and m2 > 0):
        raise InvalidInputError("masses must be > 0")
    return -GAMMA_G * m1 * m2 / r


def newton_equivalence_report(m1: float, m2: float, r_values: Sequence[float],
                              cal=CoefficientSource.SELF_CONSISTENT,
                              q: QuadratureSettings | None = None) -> list[EquivalenceRow]:
    """Compare the full dispersion potential of calibrated particles with Newton.

    Static (constant) polarizabilities are used, i.e. the Casimir regime at
    every separation. The deviation only vanishes when ``cal`` uses the
    self-consistent coefficient, since that is what the quadrature produces.
    """
    cal = _resolve(cal)
    a1 = Constant(mass_to_polarizability(m1, cal))
    a2 = Constant(mass_to_polarizability(m2, cal))
    rows = []
    for r in r_values:
        v_disp = potential_full(ParticlePair(a1, a2, r), q).value_si
        v_newt = newton_potential(m1, m2, r)
        rows.append(EquivalenceRow(r, v_disp, v_newt, abs(v_disp - v_newt) / abs(v_newt)))
    return rows


def characteristic_energy_bound(r_c: float, source=CoefficientSource.SELF_CONSISTENT) -> EnergyBound:
    """Smallest ``hbar omega0`` that keeps the crossover below ``r_c``.

    Inverse of the crossover distance: ``25 hbar c / (12 pi r_c)`` with the
    printed coefficient, ``22 hbar c / (12 pi r_c)`` self-consistently.
    """
    if not r_c > 0:
        raise InvalidInputError(f"r_c must be > 0, got {r_c!r}")
    source = CoefficientSource.parse(source)
    moment = float(casimir_moment(source))
    joules = 4.0 * moment * HBAR * C_LIGHT / (3.0 * math.pi * r_c)
    return EnergyBound(joules, joules_to_mev(joules), source)
