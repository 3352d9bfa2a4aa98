"""Cross-module consistency checks run by ``dispgrav verify``.

Each check returns a :class:`Check`; none of them raise on a failed
comparison. Randomized checks use a fixed seed so the report is
reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import C_LIGHT, HBAR, M_U, CoefficientSource, Constant, London
from .dipole_fields import (
    IMAGINARY_AXIS,
    REAL_AXIS,
    EvaluationPoint,
    MonochromaticDipole,
    default_step,
    field_from_spectrum,
    field_time_domain,
    maxwell_residual,
    projectors,
    propagator,
    static_dipole_field,
)
from .dispersion_potential import (
    casimir_limit,
    casimir_moment,
    crossover_distance,
    expansion_polynomial,
    potential_expanded,
    potential_full,
    reduced_moment,
    vdw_limit_london,
)
from .gravity_map import characteristic_energy_bound, mass_to_polarizability, newton_equivalence_report
from .normal_modes import (
    ParticlePair,
    determinant,
    nonretarded_mode_spectrum,
    zero_point_energy_imaginary_axis_nonretarded,
    zero_point_energy_mode_sum,
)

SEED = 20240601


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def _random_unit_vectors(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def check_static_field():
    p = np.array([0.3, -1.2, 2.0])
    e = static_dipole_field(p).E
    ok = np.array_equal(e, -p)
    return Check("static dipole field", ok, f"E + p = {np.max(np.abs(e + p)):.1e}")


def check_projectors(n=1000):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for r_hat in _random_unit_vectors(rng, n):
        pr = projectors(r_hat)
        a, b = pr.alpha_tensor, pr.beta_tensor
        worst = max(worst, np.max(np.abs(a @ a - a)), np.max(np.abs(b @ b - b)),
                    np.max(np.abs(a @ b)), np.max(np.abs(a + b - np.eye(3))))
    return Check("projector identities", worst <= 1e-12, f"max deviation {worst:.2e} over {n} vectors")


def check_wick():
    worst = 0.0
    r = 1.0
    for x in (0.01, 0.5, 1.0, 3.0, 10.0):
        omega = x * C_LIGHT / r
        real = propagator(1j * omega, r, REAL_AXIS)
        imag = propagator(omega, r, IMAGINARY_AXIS)
        for u, v in ((real.g_par, imag.g_par), (real.g_perp, imag.g_perp)):
            worst = max(worst, abs(u - v) / max(abs(v), 1e-300) if v != 0 else abs(u))
        pair = ParticlePair(London(0.3, 2 * omega), London(0.2, omega), r)
        d_real = determinant(pair, 1j * omega, REAL_AXIS).value
        d_imag = determinant(pair, omega, IMAGINARY_AXIS).value
        worst = max(worst, abs(d_real - d_imag) / abs(d_imag))
    return Check("Wick rotation consistency", worst <= 1e-12, f"max relative deviation {worst:.2e}")


def check_field_domains(n=100):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(n):
        r = 10 ** rng.uniform(-2, 2)
        point = EvaluationPoint(r, rng.uniform(0, np.pi), rng.uniform(-10, 10) * r / C_LIGHT)
        dip = MonochromaticDipole(rng.uniform(0.1, 2.0), 10 ** rng.uniform(-1, 1) * C_LIGHT / r)
        a = field_time_domain(dip, point).E
        b = field_from_spectrum(dip, point)
        worst = max(worst, np.max(np.abs(a - b)) / np.max(np.abs(a)))
    return Check("time/frequency field agreement", worst <= 1e-10,
                 f"max relative deviation {worst:.2e} at {n} points")


def maxwell_orders(dipole, point, halvings=3):
    h = default_step(point.r, dipole.omega)
    norms = []
    for k in range(halvings + 1):
        curl, div = maxwell_residual(dipole, point, h / 2 ** k)
        norms.append(np.hypot(np.linalg.norm(curl), div))
    return [float(np.log2(norms[i] / norms[i + 1])) for i in range(halvings)]


def check_maxwell_order():
    orders = maxwell_orders(MonochromaticDipole(1.0, 1.3 * C_LIGHT), EvaluationPoint(1.0, 0.7, 0.3 / C_LIGHT))
    ok = all(abs(o - 2.0) <= 0.2 for o in orders)
    return Check("Maxwell residual order", ok, "orders " + ", ".join(f"{o:.3f}" for o in orders))


def check_mode_sum():
    worst = 0.0
    for a in (0.01, 0.1, 0.3, 0.5):
        e_modes = zero_point_energy_mode_sum(nonretarded_mode_spectrum(a, 1.0))
        e_axis = zero_point_energy_imaginary_axis_nonretarded(a, 1.0)
        closed = 1.5 * HBAR * (np.sqrt(1 - a) + np.sqrt(1 + a) - 2)
        worst = max(worst, abs(e_axis - e_modes) / abs(e_modes), abs(e_modes - closed) / abs(closed))
    return Check("mode sum = imaginary-axis integral", worst <= 1e-8, f"max relative deviation {worst:.2e}")


def check_casimir_moments():
    pair = ParticlePair(Constant(1e-3), Constant(1e-3), 1.0)
    full = reduced_moment(potential_full(pair), pair)
    printed = reduced_moment(potential_expanded(pair, expansion_polynomial(CoefficientSource.PAPER_PUBLISHED)), pair)
    ok = abs(full - 1.375) <= 1e-5 and abs(printed - 1.5625) <= 1e-10
    detail = (f"quadrature moment {full:.6f} (self-consistent {float(casimir_moment('derived')):.4f}); "
              f"printed-polynomial moment {printed:.6f} ({float(casimir_moment('paper')):.4f}); "
              f"the printed x^3 coefficient -9/2 differs from -5 obtained by expanding the determinant")
    return Check("constant-alpha Casimir moment", ok, detail)


def check_vdw_limit():
    worst_ratio = 0.0
    for rho in (1e-3, 1e-2):
        omega0 = 1e20
        pair = ParticlePair(London(1e-2, omega0), London(1e-2, omega0), rho * C_LIGHT / omega0)
        v = potential_full(pair).value_si
        ref = vdw_limit_london(1e-2, 1e-2, omega0).value_si
        worst_ratio = max(worst_ratio, abs(v - ref) / abs(ref) / (5 * rho))
    return Check("van der Waals limit matching", worst_ratio <= 1.0, f"deviation / (5 rho) <= {worst_ratio:.3f}")


def check_casimir_limit():
    worst_ratio = 0.0
    for rho in (1e2, 1e3):
        omega0 = 1e20
        pair = ParticlePair(London(1e-4, omega0), London(1e-4, omega0), rho * C_LIGHT / omega0)
        v = potential_full(pair).value_si
        ref = casimir_limit(pair, CoefficientSource.SELF_CONSISTENT).value_si
        worst_ratio = max(worst_ratio, abs(v / ref - 1) / (5 / rho))
    return Check("Casimir limit matching", worst_ratio <= 1.0, f"|ratio - 1| / (5/rho) <= {worst_ratio:.3e}")


def check_alpha_u():
    a = mass_to_polarizability(M_U, CoefficientSource.PAPER_PUBLISHED)
    ok = abs(a / 1.529e-19 - 1) <= 1e-3
    return Check("universal mass unit polarizability", ok, f"alpha_u = {a:.4e} (paper mode; quoted 1.529e-19)")


def check_newton():
    matched = newton_equivalence_report(M_U, M_U, [1e-10, 1e-5, 1.0], CoefficientSource.SELF_CONSISTENT)
    mismatched = newton_equivalence_report(M_U, M_U, [1.0], CoefficientSource.PAPER_PUBLISHED)
    dev_m = max(row.relative_deviation for row in matched)
    dev_x = mismatched[0].relative_deviation
    ok = dev_m <= 1e-5 and abs(dev_x - 0.12) <= 0.01
    return Check("Newton equivalence", ok, f"matched deviation {dev_m:.1e}; paper calibration deviation {dev_x:.4f}")


def check_crossover():
    omega0 = 130.9 * 1.602176634e-13 / HBAR
    r_c = crossover_distance(omega0, CoefficientSource.PAPER_PUBLISHED)
    bound = characteristic_energy_bound(1e-15, CoefficientSource.PAPER_PUBLISHED).mev
    ok = abs(r_c / 1e-15 - 1) <= 5e-3 and 125 <= bound <= 135
    return Check("crossover distance and energy bound", ok, f"r_c = {r_c:.4e} m; hbar*omega0 >= {bound:.2f} MeV")


ALL_CHECKS = (
    check_static_field,
    check_projectors,
    check_wick,
    check_field_domains,
    check_maxwell_order,
    check_mode_sum,
    check_casimir_moments,
    check_vdw_limit,
    check_casimir_limit,
    check_alpha_u,
    check_newton,
    check_crossover,
)


def run_all():
    return [check() for check in ALL_CHECKS]
