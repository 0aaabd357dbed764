import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extatica.bounds import (CONSISTENT, FORCES, BoundInput,
                             HypothesisNotMetError, MissingInputError,
                             abelian_bound, genus_rhs, genus_threshold,
                             invariant_count_check, plane_surface_input,
                             pn_threshold, poincare_degree_bound,
                             surface_bound, virtual_genus_plane)


class TestInvariantCountCheck:
    def test_consistent_case(self):
        rep = invariant_count_check(BoundInput(
            deg_D=2, h0=6, n_invariant=7, deg_foliation=2))
        assert rep.lhs == 2 and rep.rhs == 15
        assert rep.inequality_holds and rep.verdict == CONSISTENT

    def test_vacuous_when_count_equals_dimension(self):
        rep = invariant_count_check(BoundInput(
            deg_D=9, h0=4, n_invariant=4, deg_foliation=3))
        assert rep.lhs == 0 and rep.verdict == CONSISTENT

    def test_violation_forces(self):
        rep = invariant_count_check(BoundInput(
            deg_D=100, h0=3, n_invariant=5, deg_foliation=2))
        assert rep.lhs == 200 and rep.rhs == 3
        assert rep.verdict == FORCES

    def test_missing_field(self):
        with pytest.raises(MissingInputError):
            invariant_count_check(BoundInput(deg_D=1, h0=3, n_invariant=4))


class TestPoincareDegreeBound:
    def test_small(self):
        assert poincare_degree_bound(BoundInput(
            h0=3, n_invariant=4, deg_foliation=2)) == 3

    def test_unit(self):
        assert poincare_degree_bound(BoundInput(
            h0=6, n_invariant=21, deg_foliation=2)) == 1

    def test_hypothesis_boundary(self):
        with pytest.raises(HypothesisNotMetError):
            poincare_degree_bound(BoundInput(
                h0=3, n_invariant=3, deg_foliation=2))


class TestPnThreshold:
    def test_line_case(self):
        assert pn_threshold(2, 1, 2, 4) == 3

    def test_conic_case(self):
        assert pn_threshold(2, 2, 2, 7) == 15

    def test_space_case(self):
        assert pn_threshold(3, 1, 3, 5) == 12

    def test_hypothesis(self):
        with pytest.raises(HypothesisNotMetError):
            pn_threshold(2, 2, 2, 6)

    def test_degree_precondition(self):
        with pytest.raises(ValueError):
            pn_threshold(1, 2, 2, 99)


class TestGenusRhs:
    def test_conic(self):
        assert genus_rhs(2, 2, 1) == 27

    def test_line(self):
        assert genus_rhs(2, 1, 1) == 12

    def test_matches_plane_specialization(self):
        for d, k, n in [(2, 2, 1), (3, 5, 4), (4, 1, 2), (6, 10, 50),
                        (5, 7, 13)] + [
                (2 + (s % 5), 1 + (s * 3) % 10, 1 + (s * 7) % 50)
                for s in range(20)]:
            rep = surface_bound(plane_surface_input(d, k, n, 0))
            assert rep.rhs == genus_rhs(d, k, n)


class TestGenusThreshold:
    def test_conic(self):
        assert genus_threshold(2, 2, 1) == Fraction(-25, 2)

    def test_many_curves(self):
        assert genus_rhs(2, 2, 20) == -11
        assert genus_threshold(2, 2, 20) == Fraction(13, 2)

    def test_algebraic_identity(self):
        for d in range(2, 6):
            for k in range(1, 8):
                for n in (1, 5, 40):
                    assert 2 - 2 * genus_threshold(d, k, n) == \
                        genus_rhs(d, k, n)


class TestSurfaceBound:
    def test_plane_middle_term(self):
        # with K.K = 9, K.D = -3k, chi = 3 the Noether-type term is 6k + 2
        for k in range(1, 11):
            assert Fraction(9 - 12 * (-3 * k) + 3, 6) == 6 * k + 2

    def test_conic_example(self):
        rep = surface_bound(plane_surface_input(2, 2, 1, 0))
        assert rep.lhs == 2 and rep.rhs == 27 and rep.inequality_holds

    def test_monotone_in_genus(self):
        low = surface_bound(plane_surface_input(2, 2, 1, 0))
        high = surface_bound(plane_surface_input(2, 2, 1, 100))
        assert high.lhs < low.lhs and high.rhs == low.rhs
        assert high.inequality_holds

    def test_missing_surface_fields(self):
        with pytest.raises(MissingInputError):
            surface_bound(BoundInput(deg_D=1, h0=3, n_invariant=4,
                                     deg_foliation=2))


class TestVirtualGenusPlane:
    def test_values(self):
        assert virtual_genus_plane(1) == 0
        assert virtual_genus_plane(2) == 0
        assert virtual_genus_plane(3) == 1
        assert virtual_genus_plane(4) == 3


class TestAbelianBound:
    def test_minimal(self):
        assert abelian_bound(4, 2, 3, 2, 1) == 1

    def test_larger(self):
        assert abelian_bound(6, 2, 4, 3, 1) == 6

    def test_hypothesis(self):
        with pytest.raises(HypothesisNotMetError):
            abelian_bound(4, 2, 2, 2, 1)

    def test_non_integral_dimension(self):
        with pytest.raises(ValueError):
            abelian_bound(5, 2, 9, 2, 1)


@given(deg_d=st.integers(1, 60), h0=st.integers(1, 12),
       count=st.integers(0, 80), deg_f=st.integers(1, 9),
       deg_x=st.integers(1, 4))
@settings(max_examples=200)
def test_contrapositive_coherence(deg_d, h0, count, deg_f, deg_x):
    rep = invariant_count_check(BoundInput(
        deg_D=deg_d, h0=h0, n_invariant=count, deg_foliation=deg_f,
        deg_variety=deg_x))
    assert (rep.verdict == FORCES) == (rep.lhs > rep.rhs)


@given(d=st.integers(2, 8), k=st.integers(1, 6), n=st.integers(1, 4))
@settings(max_examples=60)
def test_pn_threshold_monotonicity(d, k, n):
    h0 = math.comb(n + k, k)
    values = [pn_threshold(d, k, n, h0 + extra) for extra in (1, 2, 5)]
    assert values[0] > values[1] > values[2]
    assert pn_threshold(d + 1, k, n, h0 + 2) > values[1]


def test_verdict_flips_exactly_at_poincare_bound():
    from extatica.corpus import SplitMix64
    rng = SplitMix64(4242)
    for _ in range(100):
        h0 = rng.int_in(2, 10)
        count = h0 + rng.int_in(1, 30)
        deg_f = rng.int_in(2, 9)
        deg_x = rng.int_in(1, deg_f - 1)
        inp = BoundInput(h0=h0, n_invariant=count, deg_foliation=deg_f,
                         deg_variety=deg_x)
        bound = poincare_degree_bound(inp)
        lo, hi = 0, 10_000
        while lo < hi:  # largest consistent degree, by bisection
            mid = (lo + hi + 1) // 2
            rep = invariant_count_check(BoundInput(
                deg_D=mid, h0=h0, n_invariant=count, deg_foliation=deg_f,
                deg_variety=deg_x))
            if rep.verdict == CONSISTENT:
                lo = mid
            else:
                hi = mid - 1
        assert lo == math.floor(bound)
