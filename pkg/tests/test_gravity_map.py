import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dispgrav.core import C_LIGHT, GAMMA_G, HBAR, M_U, CoefficientSource
from dispgrav.dispersion_potential import crossover_distance
from dispgrav.exceptions import InvalidInputError
from dispgrav.gravity_map import (
    calibration,
    characteristic_energy_bound,
    mass_to_polarizability,
    newton_equivalence_report,
    newton_potential,
    polarizability_to_mass,
)

PAPER = CoefficientSource.PAPER_PUBLISHED
DERIVED = CoefficientSource.SELF_CONSISTENT


def test_atomic_mass_unit_paper():
    assert mass_to_polarizability(M_U, PAPER) == pytest.approx(1.529e-19, abs=0.001e-19)


def test_atomic_mass_unit_derived():
    expected = M_U * math.sqrt(16 * math.pi * GAMMA_G / (11 * HBAR * C_LIGHT))
    assert mass_to_polarizability(M_U, DERIVED) == pytest.approx(expected, rel=1e-14)
    assert mass_to_polarizability(M_U, DERIVED) == pytest.approx(1.630e-19, abs=0.001e-19)


def test_calibration_constant_independent_formula():
    k = calibration(PAPER).k
    assert k == pytest.approx(math.sqrt(32 * math.pi * GAMMA_G / (25 * HBAR * C_LIGHT)), rel=1e-15)


def test_linear_in_mass():
    assert mass_to_polarizability(2 * M_U) == pytest.approx(2 * mass_to_polarizability(M_U), rel=1e-15)


def test_inverse():
    assert polarizability_to_mass(1.529e-19, PAPER) == pytest.approx(1.6605e-27, rel=1e-3)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-35, 1e5), st.sampled_from([PAPER, DERIVED]))
def test_round_trip(m, source):
    assert polarizability_to_mass(mass_to_polarizability(m, source), source) == pytest.approx(m, rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-30, 1e3), st.floats(1e-30, 1e3), st.floats(1e-20, 1e10), st.sampled_from([PAPER, DERIVED]))
def test_closure_identity(m1, m2, r, source):
    # Casimir branch with calibrated polarizabilities reproduces Newton exactly
    cal = calibration(source)
    moment = {PAPER: 25 / 16, DERIVED: 11 / 8}[source]
    a1 = mass_to_polarizability(m1, cal)
    a2 = mass_to_polarizability(m2, cal)
    casimir = -moment / (2 * math.pi) * HBAR * C_LIGHT * a1 * a2 / r
    assert casimir == pytest.approx(newton_potential(m1, m2, r), rel=1e-12)


@pytest.mark.parametrize("m1, m2, r, expected", [
    (1.0, 1.0, 1.0, -6.6743e-11),
    (M_U, M_U, 1e-15, -1.840e-49),
])
def test_newton_examples(m1, m2, r, expected):
    assert newton_potential(m1, m2, r) == pytest.approx(expected, rel=1e-3)


def test_newton_exact():
    assert newton_potential(2.0, 3.0, 4.0) == -GAMMA_G * 1.5


def test_equivalence_matched_calibration():
    rows = newton_equivalence_report(M_U, M_U, [1e-15, 1e-12, 1e-9, 1.0], DERIVED)
    assert len(rows) == 4
    for row in rows:
        assert row.relative_deviation <= 1e-5
        assert row.v_dispersion < 0


def test_equivalence_paper_calibration_shows_coefficient_gap():
    rows = newton_equivalence_report(M_U, 2 * M_U, [1e-15, 1e-10], PAPER)
    for row in rows:
        # 1 - (11/8) / (25/16) = 0.12
        assert row.relative_deviation == pytest.approx(0.12, abs=0.01)


@pytest.mark.parametrize("source, mev", [(PAPER, 130.9), (DERIVED, 115.2)])
def test_energy_bound_at_one_fermi(source, mev):
    assert characteristic_energy_bound(1e-15, source).mev == pytest.approx(mev, abs=0.1)


@pytest.mark.parametrize("source", [PAPER, DERIVED])
def test_energy_bound_inverts_crossover(source):
    bound = characteristic_energy_bound(2.5e-15, source)
    assert crossover_distance(bound.joules / HBAR, source) == pytest.approx(2.5e-15, rel=1e-14)


@pytest.mark.parametrize("call", [
    lambda: mass_to_polarizability(0.0),
    lambda: mass_to_polarizability(-1.0),
    lambda: polarizability_to_mass(0.0),
    lambda: newton_potential(1.0, 1.0, 0.0),
    lambda: newton_potential(0.0, 1.0, 1.0),
    lambda: characteristic_energy_bound(-1.0),
    lambda: calibration("both"),
])
def test_invalid_inputs(call):
    with pytest.raises(InvalidInputError):
        call()
