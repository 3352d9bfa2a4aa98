import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dispgrav.core import C_LIGHT, HBAR, Constant, London
from dispgrav.dipole_fields import IMAGINARY_AXIS, REAL_AXIS, propagator, propagator_tensor
from dispgrav.exceptions import InstabilityError, InvalidInputError
from dispgrav.normal_modes import (
    ParticlePair,
    determinant,
    log_determinant,
    nonretarded_mode_spectrum,
    zero_point_energy_contour,
    zero_point_energy_imaginary_axis_nonretarded,
    zero_point_energy_mode_sum,
)


def closed_form(alpha0):
    """Mode-sum energy in units of hbar*omega0, from the closed-form frequencies."""
    return 1.5 * (math.sqrt(1 - alpha0) + math.sqrt(1 + alpha0) - 2)


class TestDeterminant:
    def test_no_coupling(self):
        pair = ParticlePair(Constant(0.0), Constant(0.0), 1.0)
        for omega in (0.0, 1e8, 1e12):
            assert determinant(pair, omega).value == 1.0

    def test_static_value(self):
        pair = ParticlePair(Constant(0.5), Constant(0.5), 1.0)
        assert determinant(pair, 0.0).value == pytest.approx(0.421875, rel=1e-15)

    def test_unit_retardation(self):
        # x = 1: longitudinal bracket vanishes, transverse bracket is -1
        a = math.sqrt(0.1)
        pair = ParticlePair(Constant(a), Constant(a), 2.0)
        value = determinant(pair, C_LIGHT / 2.0).value
        assert value == pytest.approx((1 - 0.1 * math.exp(-2)) ** 2, rel=1e-14)
        # the quoted 0.97311617 carries a rounding slip in the last digit
        assert value == pytest.approx(0.97311617, abs=1e-7)

    def test_rejects_bad_separation(self):
        with pytest.raises(InvalidInputError):
            ParticlePair(Constant(0.1), Constant(0.1), 0.0)

    def test_high_frequency_limit(self):
        pair = ParticlePair(Constant(0.9), Constant(0.9), 1.0)
        assert abs(determinant(pair, 50 * C_LIGHT).value - 1) < 1e-10

    def test_matches_explicit_3x3_determinant(self):
        r_vec = np.array([0.3, -0.2, 0.9])
        r = np.linalg.norm(r_vec)
        pair = ParticlePair(London(0.4, 1e9), London(0.7, 2e9), r)
        for omega in (0.0, 3e8, 1e9 + 0.5j * 1e8):
            gamma = propagator_tensor(omega, r_vec, REAL_AXIS)
            a = pair.model1.at_complex(omega) * pair.model2.at_complex(omega)
            explicit = np.linalg.det(np.eye(3) - a * gamma @ gamma)
            assert determinant(pair, omega, REAL_AXIS).value == pytest.approx(explicit, rel=1e-12)

    def test_factorized_structure(self):
        pair = ParticlePair(London(0.3, 1e9), Constant(0.6), 0.5)
        omega = 4e8
        g = propagator(omega, pair.r, IMAGINARY_AXIS)
        a = float(pair.coupling(omega))
        expected = (1 - a * g.g_par ** 2) * (1 - a * g.g_perp ** 2) ** 2
        assert determinant(pair, omega).value == expected

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0, 0.99), st.floats(0, 0.99), st.floats(1e-3, 1e3), st.floats(0, 60))
    def test_wick_consistency(self, a1, a2, u0, x):
        r = 1.0
        omega0 = u0 * C_LIGHT / r
        pair = ParticlePair(London(a1, omega0), London(a2, 1.5 * omega0), r)
        omega = x * C_LIGHT / r
        d_real = determinant(pair, 1j * omega, REAL_AXIS).value
        d_imag = determinant(pair, omega, IMAGINARY_AXIS).value
        assert abs(d_real - d_imag) <= 1e-12 * abs(d_imag)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0, 0.999), st.floats(0, 0.999), st.floats(0, 1e3))
    def test_positive_when_stable(self, a1, a2, x):
        pair = ParticlePair(Constant(a1), Constant(a2), 1.0)
        assert determinant(pair, x * C_LIGHT).value > 0

    def test_log_determinant_instability(self):
        pair = ParticlePair(Constant(1.0), Constant(1.2), 1.0)
        with pytest.raises(InstabilityError):
            log_determinant(pair, np.array([0.0, 1.0]))


class TestModes:
    @pytest.mark.parametrize("alpha0, omega0, expected", [
        (0.1, 1.0, (0.94868330, 1.04880885)),
        (0.5, 2.0, (1.41421356, 2.44948975)),
    ])
    def test_frequencies(self, alpha0, omega0, expected):
        spectrum = nonretarded_mode_spectrum(alpha0, omega0)
        (lo, m1), (hi, m2) = spectrum.modes
        assert (lo, hi) == pytest.approx(expected, abs=1e-8)
        assert (lo, hi) == pytest.approx((omega0 * math.sqrt(1 - alpha0), omega0 * math.sqrt(1 + alpha0)),
                                         rel=1e-15)
        assert m1 == m2 == 3
        assert spectrum.reference == ((omega0, 6),)

    def test_decoupled_limit(self):
        spectrum = nonretarded_mode_spectrum(1e-12, 1.0)
        assert spectrum.modes[0][0] == pytest.approx(1.0, abs=1e-11)
        assert spectrum.modes[1][0] == pytest.approx(1.0, abs=1e-11)
        assert abs(zero_point_energy_mode_sum(spectrum)) < 1e-10 * HBAR

    def test_instability(self):
        with pytest.raises(InstabilityError):
            nonretarded_mode_spectrum(1.0, 1.0)

    def test_non_positive_alpha_rejected(self):
        with pytest.raises(InvalidInputError):
            nonretarded_mode_spectrum(0.0, 1.0)

    def test_mode_sum_example(self):
        e = zero_point_energy_mode_sum(nonretarded_mode_spectrum(0.1, 1.0)) / HBAR
        assert e == pytest.approx(-3.76178e-3, abs=5e-9)
        assert e == pytest.approx(closed_form(0.1), rel=1e-12)

    def test_mode_sum_near_london_plateau(self):
        # -(3/8) alpha^2 hbar omega0 to 0.4 %
        e = zero_point_energy_mode_sum(nonretarded_mode_spectrum(0.1, 1.0)) / HBAR
        assert e == pytest.approx(-3.75e-3, rel=4e-3)

    @pytest.mark.parametrize("alpha0", [0.01, 0.1, 0.3, 0.5, 0.99])
    def test_imaginary_axis_equals_mode_sum(self, alpha0):
        omega0 = 2.5
        modes = zero_point_energy_mode_sum(nonretarded_mode_spectrum(alpha0, omega0))
        axis = zero_point_energy_imaginary_axis_nonretarded(alpha0, omega0)
        assert axis == pytest.approx(modes, rel=1e-8)
        assert axis / (HBAR * omega0) == pytest.approx(closed_form(alpha0), rel=1e-8)

    def test_imaginary_axis_examples(self):
        assert zero_point_energy_imaginary_axis_nonretarded(0.0, 1.0) == 0.0
        assert zero_point_energy_imaginary_axis_nonretarded(0.5, 1.0) / HBAR == pytest.approx(-0.10222, abs=5e-6)

    @pytest.mark.parametrize("alpha0", [0.01, 0.3, 0.99])
    def test_contour_integral_equals_mode_sum(self, alpha0):
        modes = zero_point_energy_mode_sum(nonretarded_mode_spectrum(alpha0, 1.0))
        assert zero_point_energy_contour(alpha0, 1.0) == pytest.approx(modes, rel=1e-9)
