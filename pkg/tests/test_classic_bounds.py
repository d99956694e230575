"""
Tests for the classical zero bounds
"""

import math

import pytest
from scipy import special

from phasebound.classic_bounds import (
    ELBERT_LAFORGIA_LIMIT,
    BoundSource,
    airy_upper_jprime,
    elbert_laforgia,
    hethcote,
    mcmahon,
    mcmahon_beta,
    qu_wong,
)
from phasebound.errors import DomainError
from phasebound.families import BoundStatus, ZeroFamily
from phasebound.phase_oracle import true_zeros


class TestMcMahon:

    def test_two_terms(self):
        assert mcmahon(0.0, 1, terms=2) == pytest.approx(0.75 * math.pi + 1.0 / (6.0 * math.pi), rel=1e-15)
        assert mcmahon(0.0, 1, terms=2) == pytest.approx(2.4092462, abs=1e-7)

    def test_three_terms(self):
        assert mcmahon(0.0, 1, terms=3) == pytest.approx(2.4030755, abs=1e-7)

    def test_half_order_is_exact(self):
        for terms in (1, 2, 3):
            assert mcmahon(0.5, 1, terms=terms) == pytest.approx(math.pi, rel=1e-15)

    def test_shifted_beta(self):
        assert mcmahon_beta(2.0, 3, tau=0.25) == pytest.approx(3.0 * math.pi)
        assert mcmahon(1.0, 2, tau=1.0) == pytest.approx(mcmahon(1.0, 2), rel=1e-15)

    @pytest.mark.parametrize("nu, k, terms, tau", [
        (-1.0, 1, 2, None),
        (1.0, 0, 2, None),
        (1.0, 1, 4, None),
        (0.0, 1, 2, 0.01),
    ])
    def test_domain(self, nu, k, terms, tau):
        with pytest.raises(DomainError):
            mcmahon(nu, k, terms=terms, tau=tau)


class TestRanges:

    def test_hethcote_lower_only_up_to_half(self):
        assert hethcote(0.5, 1)[1].status is BoundStatus.VALID
        upper, lower = hethcote(0.6, 1)
        assert upper.status is BoundStatus.VALID
        assert lower.status is BoundStatus.NOT_APPLICABLE
        assert math.isnan(lower.value)
        assert lower.source is BoundSource.HETHCOTE_LO

    def test_elbert_laforgia_lower_limit(self):
        assert ELBERT_LAFORGIA_LIMIT == pytest.approx(1.0522, abs=1e-4)
        assert elbert_laforgia(1.0, 1)[1].status is BoundStatus.VALID
        assert elbert_laforgia(1.06, 1)[1].status is BoundStatus.NOT_APPLICABLE

    def test_qu_wong_needs_positive_order(self):
        with pytest.raises(DomainError):
            qu_wong(0.0, 1)

    def test_qu_wong_values(self):
        lower, upper = qu_wong(2.0, 1)
        assert lower.value == pytest.approx(4.338107, abs=1e-6)
        assert upper.value == pytest.approx(5.158132, abs=1e-6)
        assert lower.value < special.jn_zeros(2, 1)[0] < upper.value


class TestContainment:

    @pytest.mark.parametrize("nu", [0.0, 0.25, 0.5, 1.0])
    def test_hethcote_and_elbert_laforgia(self, nu):
        zeros = true_zeros(ZeroFamily.j(), nu, 10)
        slack = 1e-13
        for k, zero in enumerate(zeros, start=1):
            for upper, lower in (hethcote(nu, k), elbert_laforgia(nu, k)):
                assert zero <= upper.value * (1 + slack)
                if lower.status is BoundStatus.VALID:
                    assert lower.value * (1 - slack) <= zero

    def test_mcmahon_chain_at_zero_order(self):
        # A⁽¹⁾ < A⁽³⁾ < j_{0,1} < A⁽²⁾
        zero = special.jn_zeros(0, 1)[0]
        assert mcmahon(0.0, 1, 1) < mcmahon(0.0, 1, 3) < zero < mcmahon(0.0, 1, 2)

    @pytest.mark.parametrize("nu", [1.0, 2.0, 5.0, 20.0])
    def test_qu_wong_brackets(self, nu):
        zeros = special.jn_zeros(int(nu), 5)
        for k, zero in enumerate(zeros, start=1):
            lower, upper = qu_wong(nu, k)
            assert lower.value < zero < upper.value

    @pytest.mark.parametrize("n", [1, 3, 10])
    def test_airy_upper_for_derivative_zeros(self, n):
        for k, zero in enumerate(special.jnp_zeros(n, 5), start=1):
            assert zero < airy_upper_jprime(float(n), k)
