import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thetaframe.errors import NonPositiveParameter, TruncationOverflow
from thetaframe.lattice import HEXAGONAL_FORM, QuadraticForm
from thetaframe.theta import (
    TruncationSpec,
    cubic_theta,
    gaussian_sum,
    gaussian_tail_1d,
    jacobi_theta,
    lattice_theta,
    montgomery_vartheta,
    truncation_radius,
    truncation_spec,
)

ULP = 2.0**-52
SQ = QuadraticForm(0.5, 0.0, 0.5)
T_HEX = 2 * math.pi / math.sqrt(3)

# reference values from 40-digit mpmath sums
THETA3_1 = 1.086434811213308
THETA4_1 = 0.9135791381561168
THETA_H_1 = 1.1595952669639283
B_HEX = 0.92037137331794240


def random_reduced_form(rng):
    a = rng.uniform(0.1, 1 / math.sqrt(3))
    b = rng.uniform(-a, a)
    return QuadraticForm(a, b, (b * b + 1) / (4 * a))


def test_reference_values_against_mpmath():
    mpmath.mp.dps = 40
    assert float(mpmath.jtheta(3, 0, mpmath.exp(-mpmath.pi))) == pytest.approx(THETA3_1, abs=1e-15)
    assert float(mpmath.jtheta(4, 0, mpmath.exp(-mpmath.pi))) == pytest.approx(THETA4_1, abs=1e-15)
    t = 2 * mpmath.pi / mpmath.sqrt(3)
    s = mpmath.fsum(mpmath.exp(-t * (k * k + k * l + l * l))
                    for k in range(-12, 13) for l in range(-12, 13))
    assert float(s) == pytest.approx(THETA_H_1, abs=1e-15)


class TestTruncationSpec:
    def test_invariants(self):
        with pytest.raises(ValueError):
            TruncationSpec(1e-15, 0, 0.0)
        with pytest.raises(ValueError):
            TruncationSpec(1e-15, 3, 1e-14)
        assert TruncationSpec(1e-15, 3, 1e-16).as_dict()["radius"] == 3

    def test_tail_bound_is_rigorous(self):
        for t in (0.1, 1.0, 5.0):
            for k in (1, 3, 8):
                for s in (0.0, 0.5):
                    exact = sum(math.exp(-t * (j - s) ** 2) for j in range(-400, 401) if abs(j) > k)
                    assert exact <= gaussian_tail_1d(t, k, s) * (1 + 1e-12)


class TestJacobi:
    def test_values(self):
        assert jacobi_theta(3, 1) == pytest.approx(math.pi**0.25 / math.gamma(0.75), abs=1e-15)
        assert jacobi_theta(3, 1) == pytest.approx(THETA3_1, abs=1e-15)
        assert jacobi_theta(4, 1) == pytest.approx(THETA4_1, abs=1e-15)
        assert jacobi_theta(2, 1) == pytest.approx(jacobi_theta(4, 1), abs=1e-15)

    def test_limits(self):
        assert abs(jacobi_theta(3, 50) - 1) < 1e-15
        assert abs(jacobi_theta(4, 50) - 1) < 1e-15
        assert abs(jacobi_theta(2, 50)) < 1e-15

    @pytest.mark.parametrize("s", [0.5, 1, 2, 4])
    def test_quartic_identity(self, s):
        t2, t3, t4 = (jacobi_theta(k, s) for k in (2, 3, 4))
        assert abs(t3**4 - t2**4 - t4**4) < 1e-12

    @pytest.mark.parametrize("s", [0.5, 1, 2, 4])
    def test_imaginary_transformation(self, s):
        assert abs(jacobi_theta(2, 1 / s) - math.sqrt(s) * jacobi_theta(4, s)) < 1e-12
        assert abs(jacobi_theta(3, 1 / s) - math.sqrt(s) * jacobi_theta(3, s)) < 1e-12

    def test_printed_variant_fails_off_one(self):
        # theta2(s) = theta4(s)/sqrt(s) holds at s = 1 only
        assert abs(jacobi_theta(2, 2) - jacobi_theta(4, 2) / math.sqrt(2)) > 1e-3

    @pytest.mark.parametrize("s", [0.0, -1.0, 1e-7, 1e7])
    def test_bad_parameter(self, s):
        with pytest.raises(NonPositiveParameter):
            jacobi_theta(3, s)


class TestLatticeTheta:
    def test_values(self):
        v, spec = lattice_theta(HEXAGONAL_FORM, 1.0)
        assert v == pytest.approx(THETA_H_1, abs=1e-15)
        assert spec.certified_tail <= spec.epsilon
        assert abs(lattice_theta(HEXAGONAL_FORM, 100)[0] - 1) < 1e-15
        assert lattice_theta(SQ, 1.0)[0] == pytest.approx(jacobi_theta(3, 1) ** 2, abs=1e-15)

    def test_truncation_radius(self):
        assert truncation_radius(HEXAGONAL_FORM, 1.0, 1e-15) <= 8
        assert truncation_radius(HEXAGONAL_FORM, 1.0, 10.0) == 1
        assert truncation_radius(SQ, 0.5, 1e-15) > truncation_radius(SQ, 1.0, 1e-15)
        spec = truncation_spec(SQ, 1.0, 1e-15)
        assert spec.certified_tail <= 1e-15

    def test_overflow(self):
        with pytest.raises(TruncationOverflow):
            lattice_theta(QuadraticForm(1e-6, 0.0, 0.25e6), 1e-6, 1e-15)

    def test_basis_invariance(self, rng):
        from thetaframe.lattice import exact_rebase, random_sl2z
        for _ in range(30):
            q = random_reduced_form(rng)
            m = random_sl2z(rng, 3)
            v1 = lattice_theta(q, 0.7)[0]
            v2 = lattice_theta(exact_rebase(q, m), 0.7)[0]
            assert v1 == pytest.approx(v2, rel=1e-13)

    def test_certificate_against_mpmath(self, rng):
        mpmath.mp.dps = 30
        for _ in range(8):
            q = random_reduced_form(rng)
            for rho in (0.3, 1.0, 3.0):
                v, spec = lattice_theta(q, rho, 1e-10)
                a, b, c = (mpmath.mpf(x) for x in q)
                exact = mpmath.fsum(
                    mpmath.exp(-2 * mpmath.pi * rho * (a * k * k + b * k * l + c * l * l))
                    for k in range(-60, 61) for l in range(-60, 61))
                assert abs(v - float(exact)) <= spec.certified_tail + 16 * ULP * v

    @pytest.mark.parametrize("rho", [0.3, 1.0, 2.0, 5.0])
    def test_modular_identity(self, rng, rho):
        for _ in range(20):
            q = random_reduced_form(rng)
            # at eps=1e-10 the certified tails dominate rounding
            v1, s1 = lattice_theta(q, rho, 1e-10)
            v2, s2 = lattice_theta(q, 1 / rho, 1e-10)
            assert abs(v1 - v2 / rho) <= 2 * (s1.certified_tail + s2.certified_tail / rho) + 8 * ULP * v1
            # at the default eps only rounding remains
            w1, t1 = lattice_theta(q, rho)
            w2, t2 = lattice_theta(q, 1 / rho)
            assert abs(w1 - w2 / rho) <= t1.certified_tail + t2.certified_tail / rho + 32 * ULP * w1

    def test_bad_form(self):
        with pytest.raises(NonPositiveParameter):
            lattice_theta(QuadraticForm(1, 3, 1), 1.0)
        with pytest.raises(NonPositiveParameter):
            lattice_theta(HEXAGONAL_FORM, 0.0)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0.1, 0.577), st.floats(-1, 1), st.floats(0.05, 20))
    def test_tail_never_exceeds_eps(self, a, frac, rho):
        b = frac * a
        q = QuadraticForm(a, b, (b * b + 1) / (4 * a))
        for eps in (1e-15, 1e-9, 1e-3):
            _, spec = lattice_theta(q, rho, eps)
            assert spec.certified_tail <= eps


class TestVartheta:
    def test_decoupled_limit(self):
        for s, c in ((1.0, 1.0), (0.5, 2.0)):
            prod = (sum(math.exp(-c * math.pi * s * k * k) for k in range(-40, 41))
                    * sum(math.exp(-(c * math.pi / s) * l * l) for l in range(-40, 41)))
            assert abs(montgomery_vartheta(1e-8, s, c) - prod) < 1e-10

    def test_negative_slope(self):
        h = 1e-5
        slope = (montgomery_vartheta(0.25 + h, 1, 1) - montgomery_vartheta(0.25 - h, 1, 1)) / (2 * h)
        assert slope < 0

    @pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("c", [1.0, 2.0])
    def test_monotone_in_r(self, s, c):
        rs = np.linspace(0, 0.5, 52)[1:-1]
        vals = np.array([montgomery_vartheta(r, s, c) for r in rs])
        assert np.all(np.diff(vals) < 0)

    def test_upper_bound_consistency(self, rng):
        from conftest import random_even_lattice
        from thetaframe.framebounds import GaborConfig, upper_bound_even
        for _ in range(20):
            lat, n = random_even_lattice(rng)
            a, b, g = lat.alpha, lat.beta, lat.gamma
            v = 2 * n * montgomery_vartheta(g * a / b, 2 * a * a * n, n)
            assert v == pytest.approx(upper_bound_even(GaborConfig(lat, n)), rel=1e-13)

    def test_bad(self):
        with pytest.raises(NonPositiveParameter):
            montgomery_vartheta(0.1, -1, 1)


class TestCubic:
    def test_values(self):
        a = cubic_theta("a", T_HEX)
        b, c = cubic_theta("b", T_HEX), cubic_theta("c", T_HEX)
        assert a == pytest.approx(THETA_H_1, abs=1e-15)
        assert abs(b - c) < 1e-12
        assert b == pytest.approx(a / 2 ** (1 / 3), abs=1e-14)
        assert b == pytest.approx(B_HEX, abs=1e-15)

    @pytest.mark.parametrize("q", [0.1, 0.3, math.exp(-T_HEX)])
    def test_identity(self, q):
        t = -math.log(q)
        a, b, c = (cubic_theta(w, t) for w in "abc")
        assert abs(a**3 - b**3 - c**3) < 1e-12

    def test_cosine_form(self):
        t = 0.8
        s = sum(math.exp(-t * (k * k + k * l + l * l)) * math.cos(2 * math.pi * (k - l) / 3)
                for k in range(-30, 31) for l in range(-30, 31))
        assert cubic_theta("b", t) == pytest.approx(s, abs=1e-14)

    def test_bad(self):
        with pytest.raises(NonPositiveParameter):
            cubic_theta("a", 0.0)
        with pytest.raises(ValueError):
            cubic_theta("d", 1.0)


def test_gaussian_sum_shift_guard():
    with pytest.raises(ValueError):
        gaussian_sum(np.eye(2), shift=(0.6, 0.0))
