import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spheregreen import (
    DivergenceError,
    DomainError,
    HalfIntRational,
    PoleError,
    SphereGeometry,
    gamma_half,
    gen_binomial,
    hyp2f1_series,
    hyp3f2_terminating,
    pochhammer,
    sphere_volume,
)
from spheregreen.errors import ConvergenceFailureError

SQRT_PI = math.sqrt(math.pi)


class TestHalfIntRational:
    def test_parsing(self):
        assert HalfIntRational.from_value("3/2").twice_value == 3
        assert HalfIntRational.from_value("-2").twice_value == -4
        assert HalfIntRational.from_value(2.5).twice_value == 5
        assert HalfIntRational.from_value(Fraction(1, 2)).twice_value == 1

    def test_rejects_other_rationals(self):
        with pytest.raises(DomainError):
            HalfIntRational.from_value("1/3")
        with pytest.raises(DomainError):
            HalfIntRational.from_value(0.3)

    def test_predicates(self):
        assert HalfIntRational.from_value(3).is_integer()
        assert HalfIntRational.from_value("1/2").is_proper_half()
        assert HalfIntRational.from_value(0).is_nonpositive_integer()
        assert not HalfIntRational.from_value("-1/2").is_nonpositive_integer()

    def test_arithmetic_exact(self):
        h = HalfIntRational.from_value("-3/2")
        assert (h + 2).as_fraction() == Fraction(1, 2)
        assert (h - 1).as_fraction() == Fraction(-5, 2)
        assert (-h).as_fraction() == Fraction(3, 2)
        assert float(h) == -1.5
        assert str(h) == "-3/2"


class TestGamma:
    def test_integer_base(self):
        assert gamma_half(1) == 1.0
        assert gamma_half(5) == 24.0

    def test_half_integer_values(self):
        assert gamma_half("1/2") == pytest.approx(SQRT_PI, rel=1e-15)
        # repeated Gamma(x+1) = x Gamma(x) from Gamma(1/2)
        assert gamma_half("7/2") == pytest.approx(15 * SQRT_PI / 8, rel=1e-15)
        assert gamma_half("-1/2") == pytest.approx(-2 * SQRT_PI, rel=1e-15)
        assert gamma_half("-3/2") == pytest.approx(4 * SQRT_PI / 3, rel=1e-15)

    @pytest.mark.parametrize("bad", [0, -1, -2, -7])
    def test_poles(self, bad):
        with pytest.raises(PoleError):
            gamma_half(bad)


class TestSphereVolume:
    def test_known_volumes(self):
        assert sphere_volume(1) == pytest.approx(2 * math.pi, rel=1e-15)
        assert sphere_volume(2) == pytest.approx(4 * math.pi, rel=1e-15)
        assert sphere_volume(5) == pytest.approx(math.pi**3, rel=1e-15)

    def test_recursion(self):
        # S_n = S_(n-1) sqrt(pi) Gamma(n/2) / Gamma((n+1)/2)
        for n in range(2, 11):
            lhs = sphere_volume(n)
            rhs = (
                sphere_volume(n - 1)
                * SQRT_PI
                * gamma_half(Fraction(n, 2))
                / gamma_half(Fraction(n + 1, 2))
            )
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_geometry_wrapper(self):
        geom = SphereGeometry(3, 2.0)
        assert geom.volume() == pytest.approx(2 * math.pi**2 * 8, rel=1e-15)
        assert geom.normalization() == pytest.approx(1 / (2 * math.pi**2 * 8), rel=1e-15)

    def test_geometry_validation(self):
        with pytest.raises(DomainError):
            SphereGeometry(1, 1.0)
        with pytest.raises(DomainError):
            SphereGeometry(3, 0.0)


class TestGenBinomial:
    def test_base_cases(self):
        assert gen_binomial("-1/2", 0) == 1
        assert gen_binomial("3/2", 0) == 1
        assert gen_binomial("1/2", 1) == Fraction(1, 2)

    def test_central_binomial_identity(self):
        # binom(k-1/2, k) = binom(2k, k) / 4^k, exactly
        for k in range(21):
            lhs = gen_binomial(Fraction(2 * k - 1, 2), k)
            rhs = Fraction(math.comb(2 * k, k), 4**k)
            assert lhs == rhs

    def test_pochhammer(self):
        assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
        assert pochhammer(3, 0) == 1


class TestHyp2F1:
    def test_at_zero(self):
        assert hyp2f1_series(0.7, -2.3, 1.9, 0.0) == 1.0

    def test_binomial_case(self):
        # 2F1(1, -3; 1; z) = (1 - z)^3, valid even at z = 1
        assert hyp2f1_series(1.0, -3.0, 1.0, 1.0) == pytest.approx(0.0, abs=1e-15)
        assert hyp2f1_series(1.0, -3.0, 1.0, 0.5) == pytest.approx(0.125, rel=1e-14)

    def test_arctanh_case(self):
        want = math.atanh(0.5) / 0.5
        assert hyp2f1_series(1.0, 0.5, 1.5, 0.25) == pytest.approx(want, rel=1e-12)

    def test_divergence(self):
        with pytest.raises(DivergenceError):
            hyp2f1_series(0.5, 0.5, 1.5, 1.0)

    def test_bad_c(self):
        with pytest.raises(PoleError):
            hyp2f1_series(0.5, 0.5, -2.0, 0.5)
        with pytest.raises(PoleError):
            hyp2f1_series(-5.0, 0.5, -2.0, 0.5)  # pole before termination

    def test_convergence_cap(self):
        with pytest.raises(ConvergenceFailureError):
            hyp2f1_series(0.5, 0.5, 1.5, 0.99999, tol=1e-15)

    @given(
        a=st.floats(-4, 4), b=st.floats(-4, 4),
        c=st.floats(0.3, 5), z=st.floats(-0.8, 0.8),
    )
    @settings(max_examples=60, deadline=None)
    def test_symmetry(self, a, b, c, z):
        assert hyp2f1_series(a, b, c, z) == hyp2f1_series(b, a, c, z)

    @given(
        a=st.floats(-3, 3), b=st.floats(-3, 3),
        c=st.floats(0.5, 5), z=st.floats(-0.9, 0.9),
    )
    @settings(max_examples=60, deadline=None)
    def test_euler_transformation(self, a, b, c, z):
        lhs = hyp2f1_series(a, b, c, z, tol=1e-13)
        rhs = (1 - z) ** (c - a - b) * hyp2f1_series(c - a, c - b, c, z, tol=1e-13)
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


class TestHyp3F2:
    def test_at_zero(self):
        assert hyp3f2_terminating(2.0, 3.0, -4.0, 1.5, 2.5, 0.0) == 1.0

    def test_zero_upper_parameter(self):
        for z in (-2.0, 0.3, 5.0):
            assert hyp3f2_terminating(1.0, 1.0, 0.0, 2.0, 3.0, z) == 1.0

    def test_two_term_expansion(self):
        got = hyp3f2_terminating(1.0, 1.0, -1.0, 2.0, 3.0, -1.0)
        assert got == pytest.approx(7.0 / 6.0, rel=1e-15)

    def test_requires_terminating(self):
        with pytest.raises(DomainError):
            hyp3f2_terminating(0.5, 1.0, 2.0, 1.5, 2.5, 0.3)
