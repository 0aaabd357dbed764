from fractions import Fraction

from hypothesis import strategies as st

from extatica.polyring import PolyRing, monomials_up_to_degree

RING_XY = PolyRing(("x", "y"))
RING_XYZ = PolyRing(("x", "y", "z"))


def polynomials(ring=RING_XYZ, max_degree=4, max_terms=8, coeff_bound=9,
                nonzero=False):
    """Strategy for sparse polynomials with small integer coefficients."""
    exps = list(monomials_up_to_degree(ring.nvars, max_degree))
    term = st.tuples(st.sampled_from(exps),
                     st.integers(-coeff_bound, coeff_bound))
    def build(pairs):
        return ring.from_terms(dict(pairs))
    strat = st.lists(term, min_size=0, max_size=max_terms).map(build)
    if nonzero:
        strat = strat.filter(lambda p: not p.is_zero())
    return strat


def rational_points(nvars, bound=20):
    coord = st.fractions(
        min_value=Fraction(-bound), max_value=Fraction(bound),
        max_denominator=7)
    return st.tuples(*[coord] * nvars)
