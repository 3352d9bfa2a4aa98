"""Physical constants, reduced variables and polarizability models.

All polarizabilities here are dimensionless. Models are evaluated on the
imaginary frequency axis, ``alpha(i*omega)`` with ``omega >= 0`` real, where
they are real and non-negative. ``Constant`` and ``London`` also support
evaluation at a complex frequency on the real-axis convention, which is what
the real-axis determinant needs.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .exceptions import InvalidInputError

# CODATA 2018, fixed here for reproducibility.
HBAR = 1.054571817e-34  # J s
C_LIGHT = 2.99792458e8  # m / s
GAMMA_G = 6.67430e-11  # m^3 / (kg s^2)
M_U = 1.66053907e-27  # kg
ELEMENTARY_CHARGE = 1.602176634e-19  # C
MEV = 1e6 * ELEMENTARY_CHARGE  # J
FM = 1e-15  # m


@dataclass(frozen=True)
class Constants:
    hbar: float
    c: float
    gamma_G: float
    m_u: float
    hbar_c_mev_fm: float

    @property
    def hbar_c(self) -> float:
        """hbar * c in J m."""
        return self.hbar * self.c


_SI = Constants(
    hbar=HBAR,
    c=C_LIGHT,
    gamma_G=GAMMA_G,
    m_u=M_U,
    hbar_c_mev_fm=HBAR * C_LIGHT / (MEV * FM),
)


def si_constants() -> Constants:
    return _SI


def joules_to_mev(energy):
    return energy / MEV


class CoefficientSource(enum.Enum):
    """Which Casimir coefficient to use for closed-form limits.

    ``PAPER_PUBLISHED`` uses the printed expansion polynomial, whose
    large-separation moment is 25/16. ``SELF_CONSISTENT`` uses the polynomial
    obtained by actually expanding the imaginary-axis determinant, with
    moment 11/8; this is what the full quadrature converges to.
    """

    PAPER_PUBLISHED = "paper"
    SELF_CONSISTENT = "derived"

    @classmethod
    def parse(cls, value) -> "CoefficientSource":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidInputError(
                f"unknown coefficient source {value!r}; expected 'paper' or 'derived'"
            ) from None


def log_one_minus(eps):
    """Return ``ln(1 - eps)`` accurately for tiny ``eps``.

    Coupling terms are of order alpha^2, which is ~1e-38 for nucleon masses,
    so ``np.log(1 - eps)`` would return exactly zero.
    """
    return np.log1p(-np.asarray(eps, dtype=float))


@dataclass(frozen=True)
class ReducedFrequency:
    x: float


def reduced_frequency(omega: float, r: float) -> ReducedFrequency:
    """Return the retardation variable ``x = omega * r / c``."""
    if not r > 0:
        raise InvalidInputError(f"separation must be positive, got r={r!r}")
    if omega < 0:
        raise InvalidInputError(f"frequency must be non-negative, got omega={omega!r}")
    return ReducedFrequency(omega * r / C_LIGHT)


def _check_omega(omega):
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0) or np.any(np.isnan(omega)):
        raise InvalidInputError("imaginary-axis frequency must be non-negative")
    return omega


def _maybe_scalar(value):
    return float(value) if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class Constant:
    """Frequency-independent polarizability."""

    alpha0: float

    def __post_init__(self):
        if not self.alpha0 >= 0:
            raise InvalidInputError(f"alpha0 must be >= 0, got {self.alpha0!r}")

    @property
    def static_value(self) -> float:
        return self.alpha0

    @property
    def characteristic_frequency(self):
        return None

    def at_imaginary(self, omega):
        omega = _check_omega(omega)
        return _maybe_scalar(np.full_like(omega, self.alpha0))

    def at_complex(self, z):
        return self.alpha0 + 0 * z


@dataclass(frozen=True)
class London:
    """Single-resonance model ``alpha0 / (1 - (omega/omega0)^2)``."""

    alpha0: float
    omega0: float

    def __post_init__(self):
        if not self.alpha0 >= 0:
            raise InvalidInputError(f"alpha0 must be >= 0, got {self.alpha0!r}")
        if not self.omega0 > 0:
            raise InvalidInputError(f"omega0 must be > 0, got {self.omega0!r}")

    @property
    def static_value(self) -> float:
        return self.alpha0

    @property
    def characteristic_frequency(self):
        return self.omega0

    def at_imaginary(self, omega):
        u = _check_omega(omega) / self.omega0
        return _maybe_scalar(self.alpha0 / (1.0 + u * u))

    def at_complex(self, z):
        u = z / self.omega0
        return self.alpha0 / (1.0 - u * u)


@dataclass(frozen=True)
class Tabulated:
    """Polarizability sampled on the imaginary axis.

    Interpolation is linear in ``log(omega)``. Below the first sample the
    first value is held; above the last sample the London tail
    ``alpha_last * (omega_last / omega)**2`` is used.
    """

    omegas: tuple
    alphas: tuple
    _log_omegas: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        om = np.asarray(self.omegas, dtype=float)
        al = np.asarray(self.alphas, dtype=float)
        if om.ndim != 1 or om.shape != al.shape or om.size < 2:
            raise InvalidInputError("tabulated model needs >= 2 matching (omega, alpha) samples")
        if np.any(om <= 0) or not np.all(np.isfinite(om)):
            raise InvalidInputError("tabulated frequencies must be finite and > 0")
        if np.any(np.diff(om) <= 0):
            raise InvalidInputError("tabulated frequencies must be strictly increasing")
        if np.any(al < 0) or not np.all(np.isfinite(al)):
            raise InvalidInputError("tabulated polarizabilities must be finite and >= 0")
        object.__setattr__(self, "omegas", tuple(om.tolist()))
        object.__setattr__(self, "alphas", tuple(al.tolist()))
        object.__setattr__(self, "_log_omegas", np.log(om))

    @classmethod
    def from_samples(cls, samples: Sequence[Sequence[float]]) -> "Tabulated":
        samples = list(samples)
        if not samples:
            raise InvalidInputError("empty sample table")
        om, al = zip(*samples)
        return cls(om, al)

    @property
    def static_value(self) -> float:
        return self.alphas[0]

    @property
    def characteristic_frequency(self):
        half = 0.5 * self.alphas[0]
        for om, al in zip(self.omegas, self.alphas):
            if al <= half:
                return om
        return self.omegas[-1]

    def at_imaginary(self, omega):
        omega = _check_omega(omega)
        al = np.asarray(self.alphas)
        w_last, a_last = self.omegas[-1], self.alphas[-1]
        with np.errstate(divide="ignore"):
            logw = np.log(np.maximum(omega, self.omegas[0]))
        out = np.interp(logw, self._log_omegas, al)
        above = omega > w_last
        if np.any(above):
            out = np.where(above, a_last * (w_last / np.where(above, omega, 1.0)) ** 2, out)
        return _maybe_scalar(out)

    def at_complex(self, z):
        raise InvalidInputError("tabulated models have no analytic continuation off the imaginary axis")


PolarizabilityModel = Union[Constant, London, Tabulated]


def eval_polarizability(model: PolarizabilityModel, omega):
    """Evaluate ``alpha(i*omega)`` for ``omega >= 0`` (scalar or array)."""
    return model.at_imaginary(omega)
