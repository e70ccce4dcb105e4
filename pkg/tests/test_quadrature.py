import math

import numpy as np
import pytest

from spheregreen import (
    DomainError,
    QuadratureConfig,
    SphereGeometry,
    ToleranceNotMetError,
    adaptive_quad,
    green,
    quad_green,
    quad_sin_power,
    sin_power_integral,
)
from spheregreen.quadrature import (
    KRONROD_NODES,
    KRONROD_WEIGHTS,
    _GAUSS_WEIGHTS_FULL,
)

PI = math.pi


class TestRuleConstants:
    def test_weight_sums(self):
        assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-13)
        assert _GAUSS_WEIGHTS_FULL.sum() == pytest.approx(2.0, abs=1e-13)

    def test_embedded_nodes_are_legendre_roots(self):
        nodes, weights = np.polynomial.legendre.leggauss(7)
        mine = KRONROD_NODES[1:14:2]
        assert np.allclose(np.sort(mine), np.sort(nodes), atol=1e-14)
        assert np.allclose(
            _GAUSS_WEIGHTS_FULL[1:14:2], weights, atol=1e-14
        )

    @pytest.mark.parametrize("k", [0, 2, 4, 8, 12, 16, 20, 22])
    def test_kronrod_moments_exact(self, k):
        # 15-point Kronrod integrates monomials up to degree 22 exactly
        got = float((KRONROD_NODES**k) @ KRONROD_WEIGHTS)
        assert got == pytest.approx(2.0 / (k + 1), rel=1e-13)

    @pytest.mark.parametrize("k", [1, 3, 5, 9, 15, 21])
    def test_odd_moments_vanish(self, k):
        assert float((KRONROD_NODES**k) @ KRONROD_WEIGHTS) == pytest.approx(
            0.0, abs=1e-15
        )


class TestAdaptiveQuad:
    def test_simple_integrals(self):
        cfg = QuadratureConfig()
        val, err = adaptive_quad(np.sin, 0.0, PI, cfg)
        assert val == pytest.approx(2.0, rel=1e-13)
        assert err < 1e-10
        val, _ = adaptive_quad(lambda x: np.exp(-(x**2)), -8.0, 8.0, cfg)
        assert val == pytest.approx(math.sqrt(PI), rel=1e-12)

    def test_orientation_and_empty(self):
        cfg = QuadratureConfig()
        fwd, _ = adaptive_quad(np.cos, 0.0, 1.0, cfg)
        bwd, _ = adaptive_quad(np.cos, 1.0, 0.0, cfg)
        assert bwd == pytest.approx(-fwd, rel=1e-15)
        assert adaptive_quad(np.cos, 0.7, 0.7, cfg) == (0.0, 0.0)

    def test_tolerance_not_met(self):
        cfg = QuadratureConfig(rel_tol=1e-14, abs_tol=0.0, max_depth=10)
        with pytest.raises(ToleranceNotMetError):
            adaptive_quad(lambda x: np.sqrt(np.abs(x - 1 / 3)), 0.0, 1.0, cfg)

    def test_config_validation(self):
        with pytest.raises(DomainError):
            QuadratureConfig(rel_tol=0.0)
        with pytest.raises(DomainError):
            QuadratureConfig(max_depth=5)
        with pytest.raises(DomainError):
            QuadratureConfig(abs_tol=-1.0)


class TestQuadSinPower:
    def test_worked_values(self):
        assert quad_sin_power(1, 1.0) == pytest.approx(PI - 1, rel=1e-12)
        assert quad_sin_power(2, PI / 2) == pytest.approx(1.0, rel=1e-12)
        assert quad_sin_power(3, PI) == 0.0

    def test_matches_recurrence(self):
        cfg = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-15)
        for m in range(1, 13):
            for phi in (0.05, 0.4, 1.1, 2.0, 2.9):
                assert quad_sin_power(m, phi, cfg) == pytest.approx(
                    sin_power_integral(m, phi), rel=1e-11
                )


class TestQuadGreen:
    def test_worked_values(self):
        cfg = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-15)
        got = quad_green(SphereGeometry(2, 1.0), PI / 2, cfg)
        assert got == pytest.approx(math.log(2) / (4 * PI), rel=1e-10)
        got = quad_green(SphereGeometry(3, 1.0), PI / 2, cfg)
        assert got == pytest.approx(1 / (4 * PI**2), rel=1e-10)

    def test_antipode_and_domain(self):
        assert quad_green(SphereGeometry(5, 1.0), PI) == 0.0
        with pytest.raises(DomainError):
            quad_green(SphereGeometry(5, 1.0), 5e-5)
        with pytest.raises(DomainError):
            quad_green(SphereGeometry(5, 1.0), -0.3)

    def test_oracle_agreement_spot(self):
        cfg = QuadratureConfig(rel_tol=1e-10, abs_tol=1e-16)
        for n in range(2, 10):
            geom = SphereGeometry(n, 1.0)
            for theta in (0.05, 1.2, 2.6):
                a = green(geom, theta).value
                b = quad_green(geom, theta, cfg)
                assert abs(a - b) <= max(1e-8 * abs(a), 1e-12)

    def test_refinement_monotone(self):
        # halving rel_tol never worsens the worst-grid discrepancy
        geom = SphereGeometry(6, 1.0)
        thetas = [0.2, 0.8, 1.5, 2.3, 2.9]
        closed = [green(geom, t).value for t in thetas]
        prev = math.inf
        for rel in (1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9):
            cfg = QuadratureConfig(rel_tol=rel, abs_tol=0.0)
            disc = max(
                abs(quad_green(geom, t, cfg) - c) / abs(c)
                for t, c in zip(thetas, closed)
            )
            assert disc <= prev
            prev = disc
