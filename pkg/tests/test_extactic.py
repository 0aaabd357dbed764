import math
from fractions import Fraction

import pytest

from extatica.corpus import (hamiltonian, pencil_field, planted_lines_field,
                             random_field, random_polynomial,
                             random_polynomial_matrix, slv,
                             slv1_invariant_conic)
from extatica.extactic import (DimensionGuardError, ExtacticNotZeroError,
                               LinearSystem, VacuousQueryError,
                               det_fraction_free, det_modular,
                               divides_extactic, extactic,
                               extactic_degree_bound, extract_first_integral,
                               jet_matrix, monomial_system)
from extatica.foliation import (AFFINE, HOMOGENEOUS, VectorField,
                                apply_derivation, radial_field)
from conftest import RING_XY, RING_XYZ

X, Y = RING_XY.variables()


def weighted_field():
    return VectorField((X, Y.scale(2)), AFFINE)


class TestMonomialSystem:
    def test_affine_degree_one(self):
        v = monomial_system(2, 1, AFFINE)
        assert [str(b) for b in v.basis] == ["1", "x", "y"]
        assert v.dimension == 3

    def test_affine_dimension_count(self):
        assert monomial_system(2, 2, AFFINE).dimension == 6
        for n in (1, 2, 3):
            for k in (1, 2, 3):
                assert monomial_system(n, k, AFFINE).dimension == \
                    math.comb(n + k, k)

    def test_homogeneous_basis_order(self):
        v = monomial_system(3, 2, HOMOGENEOUS)
        assert [str(b) for b in v.basis] == \
            ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]

    def test_homogeneous_dimension(self):
        # on n+1 variables the dimension is C(n+k, k)
        assert monomial_system(3, 2, HOMOGENEOUS).dimension == math.comb(4, 2)


class TestJetMatrix:
    def test_weighted_rows(self):
        jet = jet_matrix(weighted_field(), monomial_system(2, 1, AFFINE))
        one = RING_XY.one()
        zero = RING_XY.zero()
        assert jet.entries[0] == (one, zero, zero)
        assert jet.entries[1] == (X, X, X)
        assert jet.entries[2] == (Y, Y.scale(2), Y.scale(4))

    def test_radial_equal_columns(self):
        field = VectorField((X, Y), AFFINE)
        jet = jet_matrix(field, monomial_system(2, 1, AFFINE))
        col1 = tuple(row[1] for row in jet.entries)
        col2 = tuple(row[2] for row in jet.entries)
        assert col1 == col2

    def test_constant_row(self):
        jet = jet_matrix(weighted_field(), monomial_system(2, 2, AFFINE))
        row = jet.entries[0]
        assert row[0] == RING_XY.one()
        assert all(e.is_zero() for e in row[1:])

    def test_homogeneous_entry_degrees(self):
        field = slv(1).field
        system = monomial_system(3, 2, HOMOGENEOUS)
        jet = jet_matrix(field, system)
        for row in jet.entries:
            for j, entry in enumerate(row):
                if not entry.is_zero():
                    assert entry.is_homogeneous()
                    assert entry.degree() == 2 + j * (2 - 1)


class TestExtactic:
    def test_radial_vanishes(self):
        rep = extactic(VectorField((X, Y), AFFINE),
                       monomial_system(2, 1, AFFINE))
        assert rep.identically_zero and rep.extactic.is_zero()

    def test_weighted_value(self):
        rep = extactic(weighted_field(), monomial_system(2, 1, AFFINE))
        assert rep.extactic == (X * Y).scale(2)
        assert rep.degree == 2 and rep.degree_bound == 3

    def test_slv_degree_two_system_nonzero(self):
        field = slv(1).field
        rep_ff = extactic(field, monomial_system(3, 2, HOMOGENEOUS),
                          engine="fraction-free")
        rep_mod = extactic(field, monomial_system(3, 2, HOMOGENEOUS),
                           engine="modular")
        assert not rep_ff.identically_zero
        assert rep_ff.extactic == rep_mod.extactic
        assert str(rep_ff.extactic) == str(rep_mod.extactic)

    def test_guard(self):
        field = weighted_field()
        with pytest.raises(DimensionGuardError):
            extactic(field, monomial_system(2, 6, AFFINE))
        rep = extactic(field, monomial_system(2, 6, AFFINE), max_dim=28,
                       engine="fraction-free")
        assert rep.dimension == 28
        # x d/dx + 2y d/dy has first integral x^2/y, so this one vanishes
        assert rep.identically_zero

    def test_bad_engine(self):
        with pytest.raises(ValueError):
            extactic(weighted_field(), monomial_system(2, 1, AFFINE),
                     engine="nope")


class TestDegreeBound:
    def test_linear_system_on_plane(self):
        for d in (1, 2, 3, 9):
            assert extactic_degree_bound(3, 1, d) == 3 * d

    def test_conic_system(self):
        assert extactic_degree_bound(6, 2, 2) == 27

    def test_one_section(self):
        for k in (1, 2, 5):
            assert extactic_degree_bound(1, k, 3) == k


class TestDividesExtactic:
    def test_coordinate_factor(self):
        rep = extactic(weighted_field(), monomial_system(2, 1, AFFINE))
        assert divides_extactic(X, rep)
        assert not divides_extactic(X + Y, rep)

    def test_slv_conic_divides(self):
        conic, _ = slv1_invariant_conic()
        rep = extactic(slv(1).field, monomial_system(3, 2, HOMOGENEOUS))
        assert divides_extactic(conic, rep)

    def test_vacuous_query(self):
        rep = extactic(VectorField((X, Y), AFFINE),
                       monomial_system(2, 1, AFFINE))
        with pytest.raises(VacuousQueryError):
            divides_extactic(X, rep)

    def test_constant_rejected(self):
        rep = extactic(weighted_field(), monomial_system(2, 1, AFFINE))
        with pytest.raises(ValueError):
            divides_extactic(RING_XY.constant(2), rep)


class TestDetFractionFree:
    def test_identity(self):
        one, zero = RING_XY.one(), RING_XY.zero()
        m = [[one, zero, zero], [zero, one, zero], [zero, zero, one]]
        assert det_fraction_free(m) == one

    def test_two_by_two(self):
        m = [[X, Y], [RING_XY.one(), RING_XY.one()]]
        assert det_fraction_free(m) == X - Y

    def test_jet_example(self):
        jet = jet_matrix(weighted_field(), monomial_system(2, 1, AFFINE))
        assert det_fraction_free(jet.entries) == (X * Y).scale(2)

    def test_zero_column(self):
        zero = RING_XY.zero()
        m = [[X, zero], [Y, zero]]
        assert det_fraction_free(m).is_zero()


class TestDetModular:
    def test_matches_fraction_free_on_named_examples(self):
        one, zero = RING_XY.one(), RING_XY.zero()
        cases = [
            [[one, zero, zero], [zero, one, zero], [zero, zero, one]],
            [[X, Y], [one, one]],
            list(map(list, jet_matrix(weighted_field(),
                                      monomial_system(2, 1, AFFINE)).entries)),
        ]
        for m in cases:
            assert det_modular(m) == det_fraction_free(m)

    def test_random_four_by_four(self):
        for seed in range(5):
            m = random_polynomial_matrix(4, 2, 2, 4000 + seed)
            assert det_modular(m) == det_fraction_free(m)

    def test_zero_column(self):
        zero = RING_XY.zero()
        m = [[X, zero], [Y, zero]]
        assert det_modular(m).is_zero()

    def test_rational_coefficients(self):
        m = random_polynomial_matrix(3, 2, 2, 99)
        m[0][0] = m[0][0].scale(Fraction(3, 7))
        m[1][2] = m[1][2].scale(Fraction(-5, 6))
        assert det_modular(m) == det_fraction_free(m)

    def test_three_variables(self):
        m = random_polynomial_matrix(3, 3, 2, 123)
        assert det_modular(m) == det_fraction_free(m)

    def test_jobs_bit_identical(self):
        m = random_polynomial_matrix(5, 2, 3, 777)
        a = det_modular(m, jobs=1)
        b = det_modular(m, jobs=4)
        assert a == b and str(a) == str(b)

    def test_unlucky_prime_skipped(self):
        from extatica.polyring import PRIMES_2_31
        m = random_polynomial_matrix(3, 2, 2, 555)
        # a denominator hitting the first table prime forces a skip
        m[0][0] = m[0][0] + RING_XY.constant(Fraction(1, PRIMES_2_31[0]))
        assert det_modular(m) == det_fraction_free(m)

    def test_prime_table_exhaustion_is_fatal(self):
        from extatica.polyring import BadPrimeError, PRIMES_2_31
        m = random_polynomial_matrix(3, 2, 2, 556)
        m[0][0] = m[0][0] + RING_XY.constant(Fraction(1, PRIMES_2_31[0]))
        with pytest.raises(BadPrimeError):
            det_modular(m, primes=(PRIMES_2_31[0],))


class TestExtractFirstIntegral:
    def test_radial_moebius_of_y_over_x(self):
        field = VectorField((X, Y), AFFINE)
        fi = extract_first_integral(field, monomial_system(2, 1, AFFINE))
        assert fi.rank == 2
        # A and B are linear in span{x, y} and non-proportional: A/B is a
        # Moebius transformation of y/x
        for p in (fi.numerator, fi.denominator):
            assert p.degree() == 1
            assert all(sum(e) == 1 for e in p.terms)
        ident = apply_derivation(field, fi.numerator) * fi.denominator - \
            fi.numerator * apply_derivation(field, fi.denominator)
        assert ident.is_zero()

    def test_hamiltonian_functional_dependence(self):
        h = X**2 + Y**2
        entry = hamiltonian(h)
        fi = extract_first_integral(entry.field, monomial_system(2, 2, AFFINE))
        a, b = fi.numerator, fi.denominator
        ident = apply_derivation(entry.field, a) * b - \
            a * apply_derivation(entry.field, b)
        assert ident.is_zero()
        # 2x2 Jacobian of (h, a/b) vanishes after clearing b^2
        jac = h.partial_derivative(0) * (a.partial_derivative(1) * b -
                                         a * b.partial_derivative(1)) - \
            h.partial_derivative(1) * (a.partial_derivative(0) * b -
                                       a * b.partial_derivative(0))
        assert jac.is_zero()

    def test_refuses_nonzero_extactic(self):
        with pytest.raises(ExtacticNotZeroError):
            extract_first_integral(weighted_field(),
                                   monomial_system(2, 1, AFFINE))

    def test_pencil_positive_control(self):
        f, g = X**2 + 1, Y
        entry = pencil_field(f, g)
        system = monomial_system(2, 2, AFFINE)
        assert extactic(entry.field, system).identically_zero
        fi = extract_first_integral(entry.field, system)
        a, b = fi.numerator, fi.denominator
        ident = apply_derivation(entry.field, a) * b - \
            a * apply_derivation(entry.field, b)
        assert ident.is_zero()
        # the recovered integral is functionally dependent on the planted
        # ratio f/g: the Jacobian of (f/g, A/B) vanishes after clearing
        # denominators
        jac = (f.partial_derivative(0) * g - f * g.partial_derivative(0)) * \
            (a.partial_derivative(1) * b - a * b.partial_derivative(1)) - \
            (f.partial_derivative(1) * g - f * g.partial_derivative(1)) * \
            (a.partial_derivative(0) * b - a * b.partial_derivative(0))
        assert jac.is_zero()


class TestSymmetries:
    def test_radial_invariance(self):
        system = monomial_system(3, 1, HOMOGENEOUS)
        r = radial_field(3)
        for seed in range(5):
            field = random_field(3, 2, 6000 + seed, homogeneous=True)
            g = random_polynomial(3, 1, 6100 + seed, homogeneous=True)
            shifted = VectorField(
                tuple(p + g * rc for p, rc in zip(field.components,
                                                  r.components)),
                HOMOGENEOUS)
            assert extactic(field, system).extactic == \
                extactic(shifted, system).extactic

    def test_scaling_covariance(self):
        system = monomial_system(3, 1, HOMOGENEOUS)
        for seed in range(5):
            field = random_field(3, 2, 6200 + seed, homogeneous=True)
            h = random_polynomial(3, 1, 6300 + seed, homogeneous=True)
            scaled = VectorField(tuple(h * p for p in field.components),
                                 HOMOGENEOUS)
            m = system.dimension
            assert extactic(scaled, system).extactic == \
                h ** math.comb(m, 2) * extactic(field, system).extactic

    def test_basis_change_covariance(self):
        system = monomial_system(3, 1, HOMOGENEOUS)
        field = slv(1).field
        base = extactic(field, system)
        mix = [[1, 2, 0], [0, 1, 0], [3, 0, 1]]  # determinant 1
        basis = tuple(
            sum((system.basis[j].scale(mix[i][j]) for j in range(3)),
                RING_XYZ.zero())
            for i in range(3))
        mixed_system = LinearSystem(basis, 1, HOMOGENEOUS)
        mixed = extactic(field, mixed_system)
        assert mixed.extactic == base.extactic
        assert mixed.identically_zero == base.identically_zero


def test_planted_lines_divisibility_smoke():
    for n, d, seed in [(2, 1, 3), (2, 2, 1), (3, 1, 2), (3, 2, 7)]:
        entry = planted_lines_field(n, d, seed)
        system = monomial_system(n, 1, AFFINE)
        rep = extactic(entry.field, system)
        if rep.identically_zero:
            continue
        product = entry.field.ring.one()
        for i in range(n):
            product = product * entry.field.ring.variable(i)
        assert divides_extactic(product, rep)


def test_degree_law_smoke():
    hits = 0
    total = 20
    for seed in range(total):
        field = random_field(3, 2, 6400 + seed, homogeneous=True)
        rep = extactic(field, monomial_system(3, 1, HOMOGENEOUS))
        assert rep.degree_bound == 6
        if not rep.identically_zero:
            assert rep.degree <= 6
            hits += rep.degree == 6
    assert hits >= total * 3 // 4


def test_engine_equivalence_rational_fuzz():
    from hypothesis import given, settings
    from hypothesis import strategies as st
    from extatica.polyring import monomials_up_to_degree

    exps = list(monomials_up_to_degree(2, 2))
    coeff = st.fractions(min_value=Fraction(-9), max_value=Fraction(9),
                         max_denominator=12)
    entry = st.dictionaries(st.sampled_from(exps), coeff, max_size=4).map(
        lambda t: RING_XY.from_terms(t))

    @given(st.integers(2, 4).flatmap(
        lambda sz: st.lists(st.lists(entry, min_size=sz, max_size=sz),
                            min_size=sz, max_size=sz)))
    @settings(max_examples=30, deadline=None)
    def check(matrix):
        assert det_modular(matrix) == det_fraction_free(matrix)

    check()


def test_degree_bound_holds_in_affine_mode():
    for seed in range(10):
        field = random_field(2, 2, 6500 + seed)
        rep = extactic(field, monomial_system(2, 1, AFFINE))
        if not rep.identically_zero:
            assert rep.degree <= rep.degree_bound
