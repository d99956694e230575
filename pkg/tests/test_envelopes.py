"""
Tests for the envelope functions and their critical points
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasebound.envelopes import (
    EnvelopeKind,
    critical_points,
    envelope_asymptotic,
    envelope_derivative,
    envelope_domain_edge,
    eval_envelope,
    monotone_edge,
    mu_of,
    p_poly,
    phi_lower,
    phi_upper,
    phi_upper_clamped,
    psi_lower,
    r_coefficients,
    r_poly,
    theta_lower,
    theta_lower_clamped,
    theta_upper,
)
from phasebound.errors import DomainError
from phasebound.families import PhaseKind
from phasebound.phase_oracle import phase_value

QUARTER_PI = 0.25 * math.pi


class TestClosedForms:

    @pytest.mark.parametrize("nu", [0.0, 0.5, 3.0, 40.0])
    def test_theta_upper_at_the_order(self, nu):
        assert theta_upper(nu, nu) == -QUARTER_PI

    def test_theta_lower_zero_order(self):
        assert theta_lower(0.0, 1.0) == pytest.approx(1.0 - QUARTER_PI - 0.125, abs=1e-15)

    def test_psi_lower_limit_formula(self):
        # η = ν: x − π/4 + 3/(2x) at ν = η = 1
        assert psi_lower(1.0, 1.0, 2.0) == pytest.approx(2.0 - QUARTER_PI + 0.75, abs=1e-14)

    def test_phi_lower_is_shifted_theta_upper(self):
        for x in (2.0, 5.5, 80.0):
            assert phi_lower(2.0, x) == pytest.approx(theta_upper(2.0, x) + 2 * QUARTER_PI, abs=1e-14)

    def test_small_arc_series_is_continuous(self):
        # u = √(x²−ν²)/ν crosses the 0.1 switch between these two points
        nu = 10.0
        below = theta_upper(nu, math.sqrt(nu * nu + (0.0999 * nu) ** 2))
        above = theta_upper(nu, math.sqrt(nu * nu + (0.1001 * nu) ** 2))
        u1, u2 = 0.0999, 0.1001
        expected1 = nu * (u1 - math.atan(u1)) - QUARTER_PI
        expected2 = nu * (u2 - math.atan(u2)) - QUARTER_PI
        assert below == pytest.approx(expected1, abs=1e-13)
        assert above == pytest.approx(expected2, abs=1e-13)

    def test_clamps(self):
        assert theta_lower_clamped(2.0, 2.0001) == -2 * QUARTER_PI
        points = critical_points(2.0)
        assert phi_upper_clamped(2.0, 0.5 * (2.0 + points.x_star)) == points.z_star
        assert phi_upper_clamped(2.0, 2 * points.x_star) == phi_upper(2.0, 2 * points.x_star)

    @pytest.mark.parametrize("kind, nu, x, eta", [
        (EnvelopeKind.THETA_UPPER, 1.0, 0.5, None),
        (EnvelopeKind.THETA_LOWER, 1.0, 1.0, None),
        (EnvelopeKind.PHI_UPPER, 1.0, 1.0, None),
        (EnvelopeKind.PSI_LOWER, 2.0, 1.0, 3.0),
        (EnvelopeKind.PSI_LOWER, 2.0, 5.0, None),
        (EnvelopeKind.THETA_UPPER, -1.0, 2.0, None),
    ])
    def test_domain_errors(self, kind, nu, x, eta):
        with pytest.raises(DomainError):
            eval_envelope(kind, nu, x, eta)

    def test_psi_below_mu(self):
        mu = mu_of(2.0, 1.0)
        with pytest.raises(DomainError):
            psi_lower(2.0, 1.0, mu)

    @pytest.mark.parametrize("kind, nu, eta, edge", [
        (EnvelopeKind.THETA_UPPER, 2.5, None, 2.5),
        (EnvelopeKind.PHI_UPPER_CLAMPED, 0.0, None, 0.0),
        (EnvelopeKind.PSI_LOWER, 5.0, 3.0, 4.0),
        (EnvelopeKind.PSI_LOWER, 1.0, 1.0, 0.0),
    ])
    def test_domain_edge(self, kind, nu, eta, edge):
        assert envelope_domain_edge(kind, nu, eta) == edge


class TestDerivatives:

    def test_theta_upper_derivative(self):
        assert envelope_derivative(EnvelopeKind.THETA_UPPER, 3.0, 5.0) == pytest.approx(0.8, abs=1e-15)

    def test_phi_upper_stationary_at_x_star(self):
        assert envelope_derivative(EnvelopeKind.PHI_UPPER, 0.0, math.sqrt(3.0 / 8.0)) == pytest.approx(0.0, abs=1e-13)

    def test_psi_lower_stationary_at_x_hash(self):
        points = critical_points(2.0, 1.0)
        assert envelope_derivative(EnvelopeKind.PSI_LOWER, 2.0, points.x_hash, 1.0) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("kind, nu, eta", [
        (EnvelopeKind.THETA_UPPER, 2.0, None),
        (EnvelopeKind.THETA_LOWER, 2.0, None),
        (EnvelopeKind.PHI_LOWER, 0.0, None),
        (EnvelopeKind.PHI_UPPER, 2.0, None),
        (EnvelopeKind.PSI_LOWER, 3.0, 1.5),
        (EnvelopeKind.PSI_LOWER, 1.0, 1.0),
    ])
    def test_against_central_difference(self, kind, nu, eta):
        for x in (nu + 1.3, nu + 7.0, 4.0 * nu + 20.0):
            h = 1e-6 * x
            numeric = (eval_envelope(kind, nu, x + h, eta) - eval_envelope(kind, nu, x - h, eta)) / (2 * h)
            assert envelope_derivative(kind, nu, x, eta) == pytest.approx(numeric, rel=1e-6)

    @pytest.mark.parametrize("kind, nu, eta", [
        (EnvelopeKind.THETA_LOWER, 2.0, None),
        (EnvelopeKind.PHI_UPPER, 0.0, None),
        (EnvelopeKind.PSI_LOWER, 5.0, 3.0),
    ])
    def test_derivative_needs_interior_point(self, kind, nu, eta):
        with pytest.raises(DomainError):
            envelope_derivative(kind, nu, envelope_domain_edge(kind, nu, eta), eta)

    @given(nu=st.floats(min_value=0.0, max_value=50.0), offset=st.floats(min_value=1e-3, max_value=500.0))
    @settings(max_examples=150, deadline=None)
    def test_monotone_beyond_edges(self, nu, offset):
        for kind in (EnvelopeKind.THETA_UPPER, EnvelopeKind.THETA_LOWER, EnvelopeKind.PHI_UPPER):
            x = monotone_edge(kind, nu) + offset
            assert envelope_derivative(kind, nu, x) > 0.0


class TestPolynomials:

    def test_p_shifted_form(self):
        # p_1(√(1+2)) = 8·8 − 3·4 − 10·2 − 7
        assert p_poly(1.0, math.sqrt(3.0)) == pytest.approx(25.0, abs=1e-12)

    def test_p_expanded_form(self):
        nu, x = 1.7, 2.9
        expanded = (8 * x ** 6 - 3 * (8 * nu ** 2 + 1) * x ** 4
                    + 4 * nu ** 2 * (6 * nu ** 2 - 1) * x ** 2 - 8 * nu ** 6)
        assert p_poly(nu, x) == pytest.approx(expanded, rel=1e-12)

    def test_r_reduces_at_zero_mu(self):
        assert list(r_coefficients(0.0, 1.0)) == pytest.approx([12.0, -72.0, -81.0, 81.0, 0.0, 0.0, 0.0, 0.0])
        assert r_poly(0.0, 1.0, 1.0) == pytest.approx(-60.0, abs=1e-12)


class TestCriticalPoints:

    def test_zero_order_constants(self):
        points = critical_points(0.0)
        assert points.x_star == pytest.approx(math.sqrt(3.0 / 8.0), abs=1e-12)
        assert points.z_star == pytest.approx(QUARTER_PI + math.sqrt(1.5), abs=1e-12)
        assert points.x_hash is None and points.x_at is None

    def test_z_star_decreasing(self):
        values = [critical_points(nu).z_star for nu in (0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert min(values) > QUARTER_PI + math.sqrt(7.0 / 18.0)

    def test_x_star_large_order(self):
        nu = 1000.0
        offset = critical_points(nu).x_star - nu
        assert offset == pytest.approx((7.0 * nu) ** (1.0 / 3.0) / 4.0, rel=0.05)

    def test_x_at_limit_case(self):
        # largest root of 4u³ − 24u² − 27u + 27 in u = x²
        points = critical_points(1.0, 1.0)
        assert points.x_at == pytest.approx(2.6158, abs=5e-4)
        assert r_poly(0.0, 1.0, points.x_at) == pytest.approx(0.0, abs=1e-8 * points.x_at ** 14)
        assert r_poly(0.0, 1.0, 1.01 * points.x_at) > 0.0

    @pytest.mark.parametrize("nu, eta", [(2.0, 1.0), (5.0, 2.5), (10.0, 10.0), (0.5, 0.25)])
    def test_ordering(self, nu, eta):
        points = critical_points(nu, eta)
        assert mu_of(nu, eta) < points.x_hash <= points.x_at

    def test_eta_above_order_rejected(self):
        with pytest.raises(DomainError):
            critical_points(1.0, 2.0)


class TestAsymptotics:

    @pytest.mark.parametrize("kind, power", [
        (EnvelopeKind.THETA_UPPER, 3),
        (EnvelopeKind.THETA_LOWER, 5),
        (EnvelopeKind.PHI_LOWER, 3),
        (EnvelopeKind.PHI_UPPER, 5),
    ])
    @pytest.mark.parametrize("nu", [0.0, 1.0, 5.0])
    def test_tail_order(self, kind, power, nu):
        # the next term is O(x^-power); scale so it stays bounded
        for x in (1e2, 1e3, 1e4):
            gap = eval_envelope(kind, nu, x) - envelope_asymptotic(kind, nu, x)
            assert abs(gap) * x ** power < 1e3 * (1.0 + nu) ** 6 or abs(gap) < 1e-11 * x

    @pytest.mark.parametrize("nu", [1.0, 5.0])
    def test_psi_tail(self, nu):
        eta = 0.5 * nu
        for x in (1e2, 1e3, 1e4):
            gap = eval_envelope(EnvelopeKind.PSI_LOWER, nu, x, eta) - envelope_asymptotic(EnvelopeKind.PSI_LOWER, nu, x, eta)
            assert abs(gap) * x ** 2 < 1e3 * (1.0 + nu) ** 4 or abs(gap) < 1e-11 * x


class TestEnvelopeOrdering:

    @given(nu=st.floats(min_value=0.0, max_value=20.0), offset=st.floats(min_value=0.05, max_value=100.0))
    @settings(max_examples=80, deadline=None)
    def test_theta_envelopes_sandwich_the_phase(self, nu, offset):
        x = nu + offset
        theta = phase_value(PhaseKind.THETA, nu, x)
        assert theta_lower(nu, x) < theta < theta_upper(nu, x)
