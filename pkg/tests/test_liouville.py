"""
Tests for Liouville potentials and the Sturm comparison checks
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasebound.envelopes import EnvelopeKind, eval_envelope
from phasebound.errors import DomainError, SturmConditionError
from phasebound.families import PhaseKind
from phasebound.liouville import (
    ENVELOPE_POTENTIAL,
    ComparisonPair,
    GridSpec,
    PotentialKind,
    chi_poly,
    closed_difference,
    default_grid,
    delta_poly,
    pair_edge,
    potential_closed,
    potential_difference_identity,
    potential_numeric,
    tail_constant,
    verify_c2,
    verify_c3,
)
from phasebound.phase_oracle import phase_value


def _pair_cases(nu_values):
    for nu in nu_values:
        for pair in ComparisonPair:
            if pair is ComparisonPair.PSI_LOWER_VS_EXACT:
                if nu > 0.0:
                    yield pair, nu, 0.5 * nu
                    yield pair, nu, nu
            else:
                yield pair, nu, None


class TestPotentials:

    @pytest.mark.parametrize("x", [0.7, 3.0, 40.0])
    def test_half_order_potential_is_one(self, x):
        assert potential_closed(PotentialKind.V_THETA, 0.5, x) == 1.0

    @pytest.mark.parametrize("kind, phase, nu, eta", [
        (PotentialKind.V_THETA, PhaseKind.THETA, 0.0, None),
        (PotentialKind.V_THETA, PhaseKind.THETA, 3.0, None),
        (PotentialKind.V_PHI, PhaseKind.PHI, 1.0, None),
        (PotentialKind.V_PSI, PhaseKind.PSI, 3.0, 1.5),
    ])
    def test_exact_phase_potentials(self, kind, phase, nu, eta):
        for x in (2.0 * nu + 3.0, nu + 20.0):
            numeric = potential_numeric(lambda t: phase_value(phase, nu, t, eta), x)
            assert potential_closed(kind, nu, x, eta) == pytest.approx(numeric, rel=1e-6, abs=1e-8)

    @pytest.mark.parametrize("envelope, nu, eta", [
        (EnvelopeKind.THETA_UPPER, 2.0, None),
        (EnvelopeKind.THETA_LOWER, 0.0, None),
        (EnvelopeKind.THETA_LOWER, 2.0, None),
        (EnvelopeKind.PHI_LOWER, 2.0, None),
        (EnvelopeKind.PHI_UPPER, 0.0, None),
        (EnvelopeKind.PHI_UPPER, 2.0, None),
        (EnvelopeKind.PSI_LOWER, 2.0, 1.0),
        (EnvelopeKind.PSI_LOWER, 2.0, 2.0),
    ])
    def test_envelope_potentials(self, envelope, nu, eta):
        kind = ENVELOPE_POTENTIAL[envelope]
        for x in (2.0 * nu + 3.0, nu + 20.0):
            numeric = potential_numeric(lambda t: eval_envelope(envelope, nu, t, eta), x)
            assert potential_closed(kind, nu, x, eta) == pytest.approx(numeric, rel=1e-6, abs=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            potential_closed(PotentialKind.V_PHI, 2.0, 2.0)
        with pytest.raises(DomainError):
            potential_closed(PotentialKind.V_PSI, 2.0, 5.0)
        with pytest.raises(DomainError):
            potential_closed(PotentialKind.V_THETA, -1.0, 5.0)


class TestIdentities:

    def test_delta_at_zero_order(self):
        x = math.sqrt(3.0 / 8.0)
        assert delta_poly(0.0, x) / x ** 14 == pytest.approx(648.0, rel=1e-12)

    @pytest.mark.parametrize("pair, nu, eta", list(_pair_cases([0.0, 0.25, 1.0, 3.0, 7.0])))
    def test_identity_matches_potential_difference(self, pair, nu, eta):
        for x in (2.0 * nu + 2.0, 2.0 * nu + 8.0):
            direct = closed_difference(pair, nu, x, eta)
            assert potential_difference_identity(pair, nu, x, eta) == pytest.approx(direct, rel=1e-7)

    @given(nu=st.floats(min_value=0.0, max_value=100.0), chi=st.floats(min_value=1e-3, max_value=1e4))
    @settings(max_examples=100, deadline=None)
    def test_chi_polynomial_is_positive(self, nu, chi):
        assert chi_poly(nu, chi) > 0.0

    @pytest.mark.parametrize("nu", [0.0, 1.0, 4.5])
    def test_chi_polynomial_tracks_the_lower_theta_gap(self, nu):
        for chi in (2.0, 8.0, 30.0):
            x = math.sqrt(nu * nu + chi)
            weight = 64.0 * chi ** 5 * (8 * chi ** 3 + chi ** 2 + 6 * nu * nu * chi + 5 * nu ** 4) ** 2
            gap = closed_difference(ComparisonPair.THETA_LOWER_VS_EXACT, nu, x)
            assert chi_poly(nu, chi) / weight == pytest.approx(gap, rel=1e-6)


class TestSturmChecks:

    @pytest.mark.parametrize("pair, nu, eta", list(_pair_cases([0.0, 0.5, 1.0, 2.7, 10.0])))
    def test_c2_holds(self, pair, nu, eta):
        report = verify_c2(pair, nu, eta, default_grid(pair, nu, eta, {"count": 128}))
        assert report.passed
        assert report.min_diff > 0.0
        assert report.grid.x_min <= report.argmin <= report.grid.x_max
        assert report.closed_min > 0.0

    def test_theta_upper_minimum_sits_at_the_right_edge(self):
        grid = GridSpec(3.001, 100.0, 500)
        report = verify_c2(ComparisonPair.THETA_UPPER_VS_EXACT, 3.0, grid=grid)
        assert report.passed
        assert report.argmin == pytest.approx(100.0)
        assert report.min_diff == pytest.approx((1e4 + 36.0) / (4.0 * (1e4 - 9.0) ** 2), rel=1e-12)

    def test_closed_form_cross_check_covers_the_far_grid(self):
        pair, nu = ComparisonPair.PHI_UPPER_VS_EXACT, 4.0
        grid = default_grid(pair, nu, override={"count": 64})
        report = verify_c2(pair, nu, grid=grid)
        far = [float(x) for x in grid.points() if x >= 2.0 * nu + 2.0]
        assert far
        assert report.closed_min == pytest.approx(min(closed_difference(pair, nu, x) for x in far), rel=1e-12)

    def test_closed_form_cross_check_skips_the_turning_point(self):
        grid = GridSpec(10.01, 20.0, 32)
        report = verify_c2(ComparisonPair.THETA_LOWER_VS_EXACT, 10.0, grid=grid)
        assert report.passed
        assert math.isnan(report.closed_min)

    def test_negative_closed_form_fails_the_check(self, monkeypatch):
        from phasebound import liouville

        monkeypatch.setattr(liouville, "_closed_terms", lambda pair, nu, x, eta: (-1e-3, 2.0))
        report = verify_c2(ComparisonPair.THETA_UPPER_VS_EXACT, 1.0, grid=GridSpec(1.5, 50.0, 16))
        assert report.min_diff > 0.0
        assert report.closed_min == -1e-3
        assert not report.passed

    def test_default_grid(self):
        grid = default_grid(ComparisonPair.THETA_UPPER_VS_EXACT, 20.0)
        assert grid.x_min == pytest.approx(20.02)
        assert grid.x_max == 200.0
        assert grid.count == 512
        points = grid.points()
        assert points[0] == pytest.approx(grid.x_min) and points[-1] == pytest.approx(grid.x_max)

    def test_grid_override(self):
        grid = default_grid(ComparisonPair.THETA_UPPER_VS_EXACT, 0.0,
                            override={"count": 16, "spacing": "linear", "x_max": 5.0})
        assert grid.x_min == pytest.approx(1e-3)
        assert len(grid.points()) == 16
        assert grid.points()[1] - grid.points()[0] == pytest.approx(grid.points()[-1] - grid.points()[-2])

    def test_phi_upper_grid_starts_past_x_star(self):
        edge = pair_edge(ComparisonPair.PHI_UPPER_VS_EXACT, 3.0)
        assert default_grid(ComparisonPair.PHI_UPPER_VS_EXACT, 3.0).x_min > edge > 3.0

    def test_grid_errors(self):
        with pytest.raises(DomainError):
            default_grid(ComparisonPair.THETA_UPPER_VS_EXACT, 1.0, override={"spacing": "cubic"})
        with pytest.raises(DomainError):
            default_grid(ComparisonPair.THETA_UPPER_VS_EXACT, 1.0, override={"x_max": 0.5})
        with pytest.raises(DomainError):
            verify_c2(ComparisonPair.THETA_UPPER_VS_EXACT, 2.0, grid=GridSpec(2.0, 10.0, 8))
        with pytest.raises(DomainError):
            pair_edge(ComparisonPair.PSI_LOWER_VS_EXACT, 2.0)

    def test_tail_constants(self):
        assert tail_constant(ComparisonPair.THETA_UPPER_VS_EXACT) == (1, 0.125)
        assert tail_constant(ComparisonPair.THETA_LOWER_VS_EXACT) == (3, 25.0 / 384.0)
        assert tail_constant(ComparisonPair.PHI_UPPER_VS_EXACT) == (3, 21.0 / 128.0)

    @pytest.mark.parametrize("pair, nu, eta", [
        case for case in _pair_cases([0.0, 1.0, 5.0]) if case[2] is None or case[2] == 0.5 * case[1]
    ])
    def test_c3_tails(self, pair, nu, eta):
        _, constant = tail_constant(pair)
        estimate = verify_c3(pair, nu, eta, x=1000.0)
        assert estimate == pytest.approx(constant, rel=0.2)

    def test_c3_failure_raises(self):
        with pytest.raises(SturmConditionError):
            verify_c3(ComparisonPair.THETA_UPPER_VS_EXACT, 1.0, x=10.0, tolerance=1e-9)

    def test_c3_needs_eta(self):
        with pytest.raises(DomainError):
            verify_c3(ComparisonPair.PSI_LOWER_VS_EXACT, 2.0)
