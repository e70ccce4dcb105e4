import math

import numpy as np
import pytest

from spheregreen import (
    DomainError,
    EvaluationMethod,
    PolarAngle,
    SphereGeometry,
    green,
    green_derivative,
    green_even,
    green_integral_recurrence,
    green_odd,
    green_via_recurrence,
    pde_residual,
    sin_power_integral,
    sphere_volume,
)

PI = math.pi
GRID = np.linspace(0.05, PI - 0.05, 20)


class TestPolarAngle:
    def test_coordinates(self):
        a = PolarAngle(PI / 2)
        assert a.r() == pytest.approx(1.0, rel=1e-15)
        assert a.y() == pytest.approx(1.0, rel=1e-15)
        assert PolarAngle(PI / 4).T() == pytest.approx(1.0, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            PolarAngle(0.0)
        with pytest.raises(DomainError):
            PolarAngle(PI + 0.1)
        PolarAngle(PI)  # boundary included


class TestSinPowerIntegral:
    def test_basis_cases(self):
        assert sin_power_integral(1, 1e-12) == pytest.approx(PI, rel=1e-12)
        assert sin_power_integral(1, 1.0) == pytest.approx(PI - 1, rel=1e-15)
        assert sin_power_integral(2, PI) == pytest.approx(0.0, abs=1e-30)

    def test_three_halves_worked_value(self):
        # int_phi^pi sin^2 = (pi - phi)/2 + sin(phi) cos(phi)/2
        assert sin_power_integral(3, PI / 2) == pytest.approx(PI / 4, rel=1e-15)
        phi = 0.7
        want = 0.5 * (PI - phi) + 0.5 * math.sin(phi) * math.cos(phi)
        assert sin_power_integral(3, phi) == pytest.approx(want, rel=1e-15)

    def test_positive_and_decreasing_in_phi(self):
        for m in (2, 5, 9, 12):
            vals = [sin_power_integral(m, float(t)) for t in GRID]
            assert all(v > 0 for v in vals)
            assert all(a > b for a, b in zip(vals, vals[1:]))


class TestGreenRecurrence:
    def test_basis_cases(self):
        assert green_integral_recurrence(1, PI) == 0.0
        assert green_integral_recurrence(2, PI / 2) == pytest.approx(
            math.log(2), rel=1e-15
        )
        # half-angle form: log csc^2(theta/2)
        theta = 0.9
        want = math.log(1.0 / math.sin(theta / 2) ** 2)
        assert green_integral_recurrence(2, theta) == pytest.approx(want, rel=1e-15)

    def test_dimension_three_closed_form(self):
        # 1 + (pi - theta) cot(theta)
        assert green_integral_recurrence(3, PI / 2) == pytest.approx(1.0, rel=1e-14)
        theta = 2.2
        want = 1.0 + (PI - theta) / math.tan(theta)
        assert green_integral_recurrence(3, theta) == pytest.approx(want, rel=1e-13)

    def test_against_quadrature_lemma_form(self):
        # tan^2 reduction of the nested integral: on (pi/2, pi) it equals the
        # recurrence directly; on (0, pi/2) the same expression produces the
        # antipodal value (the branch the closed form fixes via (pi-theta)cot)
        def lemma(m, theta):
            T = math.tan(theta) ** 2
            term, tot = 1.0, 1.0
            for k in range(100000):
                term *= (1 + k) * (1 + k) * (1.5 + k) * (-T) / (
                    (2 + k) * (m + 1.5 + k) * (k + 1)
                )
                tot += term
                if abs(term) <= 1e-15 * abs(tot):
                    break
            return (math.log1p(T) - T / (2 * m + 1) * tot) / (4 * m)

        for m in (1, 2, 3):
            for theta in (2.5, 2.8, 3.0):
                assert lemma(m, theta) == pytest.approx(
                    green_integral_recurrence(2 * m + 1, theta), rel=1e-11
                )
            for theta in (0.3, 0.6):
                assert lemma(m, theta) == pytest.approx(
                    green_integral_recurrence(2 * m + 1, PI - theta), rel=1e-11
                )


class TestClosedForms:
    def test_printed_two_dimensional(self):
        geom = SphereGeometry(2, 1.0)
        got = green(geom, PI / 2)
        assert got.method is EvaluationMethod.EVEN_CLOSED
        assert got.value == pytest.approx(math.log(2) / (4 * PI), rel=1e-15)

    def test_printed_three_dimensional(self):
        geom = SphereGeometry(3, 1.0)
        got = green(geom, PI / 2)
        assert got.method is EvaluationMethod.ODD_CLOSED
        assert got.value == pytest.approx(1 / (4 * PI**2), rel=1e-14)

    def test_printed_four_dimensional(self):
        # (1/(3 S_4)) (-log((1-cos)/2) + cot^2(theta/2)/2); at pi/2: log2 + 1/2
        geom = SphereGeometry(4, 1.0)
        want = (math.log(2) + 0.5) / (3 * sphere_volume(4))
        assert green(geom, PI / 2).value == pytest.approx(want, rel=1e-14)

    def test_printed_five_dimensional(self):
        geom = SphereGeometry(5, 1.0)
        assert green(geom, PI / 2).value == pytest.approx(
            1 / (3 * math.pi**3), rel=1e-14
        )

    def test_zero_at_antipode(self):
        for n in range(2, 10):
            assert green(SphereGeometry(n, 1.0), PI).value == 0.0

    def test_radius_scaling(self):
        # G scales as R^(2-n)
        for n in range(2, 10):
            v1 = green(SphereGeometry(n, 1.0), 1.1).value
            v2 = green(SphereGeometry(n, 2.0), 1.1).value
            assert v2 == pytest.approx(2.0 ** (2 - n) * v1, rel=1e-13)

    def test_dispatch_matches_parity_forms(self):
        theta = 1.3
        assert green(SphereGeometry(6, 1.0), theta).value == green_even(
            3, theta, SphereGeometry(6, 1.0)
        ).value
        assert green(SphereGeometry(7, 1.0), theta).value == green_odd(
            3, theta, SphereGeometry(7, 1.0)
        ).value

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(DomainError):
            green_even(2, 1.0, SphereGeometry(6, 1.0))
        with pytest.raises(DomainError):
            green_odd(2, 1.0, SphereGeometry(4, 1.0))

    def test_antipode_fallback_method_tag(self):
        got = green(SphereGeometry(9, 1.0), PI - 1e-4)
        assert got.method is EvaluationMethod.QUADRATURE
        assert got.value > 0

    def test_positive_and_decreasing(self):
        for n in range(2, 10):
            geom = SphereGeometry(n, 1.0)
            vals = [green(geom, float(t)).value for t in GRID]
            assert all(v > 0 for v in vals)
            assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_quadratic_zero_at_antipode(self):
        # G(pi - eps) = O(eps^2): the eps^2 coefficient stabilizes
        for n in (2, 3, 5, 8):
            geom = SphereGeometry(n, 1.0)
            k2 = green(geom, PI - 1e-2).value / 1e-4
            k3 = green(geom, PI - 1e-3).value / 1e-6
            assert k2 > 0 and k3 > 0
            assert k3 / k2 == pytest.approx(1.0, abs=0.05)

    def test_flat_space_singularity(self):
        theta = 1e-3
        for n in range(3, 10):
            geom = SphereGeometry(n, 1.0)
            v = theta ** (n - 2) * (n - 2) * sphere_volume(n - 1) * green(geom, theta).value
            assert v == pytest.approx(1.0, abs=1e-2)
        g2 = green(SphereGeometry(2, 1.0), theta).value
        assert g2 + math.log(theta) / (2 * PI) == pytest.approx(
            math.log(2) / (2 * PI), abs=1e-3
        )

    def test_parity_identity_with_recurrence(self):
        for n in range(2, 10):
            geom = SphereGeometry(n, 1.0)
            for theta in (0.05, 0.9, 2.0, float(GRID[-1])):
                direct = green(geom, theta).value
                via_j = green_integral_recurrence(n, theta) / sphere_volume(n)
                assert direct == pytest.approx(via_j, rel=1e-10)
                assert green_via_recurrence(geom, theta).value == pytest.approx(
                    direct, rel=1e-10
                )

    def test_szmytkowski_constants_identically_zero(self):
        for theta in GRID:
            theta = float(theta)
            g2 = green(SphereGeometry(2, 1.0), theta).value
            assert g2 + math.log((1 - math.cos(theta)) / 2) / (4 * PI) == pytest.approx(
                0.0, abs=1e-14
            )
            g3 = green(SphereGeometry(3, 1.0), theta).value
            assert g3 - (PI - theta) / math.tan(theta) / (4 * PI**2) == pytest.approx(
                1 / (4 * PI**2), rel=1e-12
            )


class TestDerivative:
    def test_worked_values(self):
        assert green_derivative(SphereGeometry(2, 1.0), PI / 2) == pytest.approx(
            -1 / (4 * PI), rel=1e-14
        )
        assert green_derivative(SphereGeometry(3, 1.0), PI / 2) == pytest.approx(
            -1 / (8 * PI), rel=1e-14
        )

    def test_strictly_negative(self):
        for n in range(2, 10):
            geom = SphereGeometry(n, 1.0)
            for theta in GRID:
                assert green_derivative(geom, float(theta)) < 0

    def test_vanishes_at_antipode(self):
        for n in (2, 5, 8):
            assert abs(green_derivative(SphereGeometry(n, 1.0), PI - 1e-7)) < 1e-6
            assert green_derivative(SphereGeometry(n, 1.0), PI) == 0.0

    def test_matches_finite_difference(self):
        h = 1e-6
        for n in (2, 3, 6, 9):
            geom = SphereGeometry(n, 1.0)
            for theta in (0.8, 1.7, 2.4):
                fd = (green(geom, theta + h).value - green(geom, theta - h).value) / (2 * h)
                assert green_derivative(geom, theta) == pytest.approx(fd, rel=1e-8)


class TestPdeResidual:
    @pytest.mark.parametrize(
        "n,theta", [(2, PI / 2), (5, 1.0), (3, PI / 2), (4, 2.0), (9, 1.8)]
    )
    def test_small_residual_mid_range(self, n, theta):
        geom = SphereGeometry(n, 1.0)
        rhs = 1.0 / sphere_volume(n)
        assert abs(pde_residual(geom, theta, 1e-4)) <= 1e-5 * rhs + 1e-8

    def test_domain_check(self):
        with pytest.raises(DomainError):
            pde_residual(SphereGeometry(2, 1.0), 5e-5, 1e-4)
