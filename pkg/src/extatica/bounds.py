"""Degree and genus inequalities for foliations with many invariant divisors.

Every function here evaluates a closed-form inequality exactly (rational
arithmetic throughout) and reports whether the given data are consistent
with the absence of a rational first integral, or violate the inequality
and therefore force one.

Cohomological inputs (h^1, h^0 of K-D, intersection numbers, Euler
characteristics) are caller-supplied everywhere except on the projective
plane, where the standard values are built in.  The invariant-divisor count
is always an input: certifying a single divisor is cheap, counting all of
them is exactly what these bounds exist to avoid.

Note on the count: the degree bookkeeping behind the main inequality groups
irreducible invariant divisors of every degree with multiplicity, while the
inequality as evaluated here takes the plain count of invariant members of
the linear system.  The plain count is what every specialized form below
consumes, so that is the input exposed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

CONSISTENT = "consistent-with-no-first-integral"
FORCES = "forces-first-integral"


class HypothesisNotMetError(ValueError):
    """The inequality's standing hypothesis fails for these inputs."""


class MissingInputError(ValueError):
    """A required (usually surface-specific) input field is absent."""


@dataclass(frozen=True)
class BoundInput:
    """Inputs for the bound evaluators; surface fields may stay None.

    deg_D: degree of the invariant divisor.
    h0: dimension of the linear system containing it.
    n_invariant: number of invariant divisors inside that linear system.
    deg_foliation / deg_variety: the two degrees whose difference is the
        cotangent degree.
    h1, h0_k_minus_d, k_self, k_dot_d, chi_top: surface data (h^1(D),
        h^0(K-D), K.K, K.D, topological Euler characteristic).
    genus: virtual genus of the invariant curve.
    """

    deg_D: Optional[int] = None
    h0: Optional[int] = None
    n_invariant: Optional[int] = None
    deg_foliation: Optional[int] = None
    deg_variety: int = 1
    h1: Optional[int] = None
    h0_k_minus_d: Optional[int] = None
    k_self: Optional[int] = None
    k_dot_d: Optional[int] = None
    chi_top: Optional[int] = None
    genus: Optional[Fraction] = None

    def __post_init__(self):
        for name in ("h0", "n_invariant"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.h0 is not None and self.h0 < 1:
            raise ValueError("h0 must be at least 1")
        if self.deg_variety < 1:
            raise ValueError("deg_variety must be at least 1")

    def require(self, *names):
        for name in names:
            if getattr(self, name) is None:
                raise MissingInputError(f"missing input field {name!r}")


@dataclass(frozen=True)
class BoundReport:
    """Evaluated inequality: verdict is FORCES exactly when lhs > rhs."""

    lhs: Fraction
    rhs: Fraction
    inequality_holds: bool
    verdict: str
    formula: str

    def __post_init__(self):
        assert self.inequality_holds == (self.lhs <= self.rhs)
        assert self.verdict == (CONSISTENT if self.inequality_holds
                                else FORCES)


def _report(lhs: Fraction, rhs: Fraction, formula: str) -> BoundReport:
    holds = lhs <= rhs
    return BoundReport(lhs, rhs, holds, CONSISTENT if holds else FORCES,
                       formula)


def invariant_count_check(inp: BoundInput) -> BoundReport:
    """deg(D) * (N - h0)  <=  (deg F - deg X) * C(h0, 2).

    The master inequality: violated inputs force a rational first integral.
    """
    inp.require("deg_D", "h0", "n_invariant", "deg_foliation")
    lhs = Fraction(inp.deg_D * (inp.n_invariant - inp.h0))
    rhs = Fraction((inp.deg_foliation - inp.deg_variety)
                   * math.comb(inp.h0, 2))
    return _report(lhs, rhs, "theorem1")


def poincare_degree_bound(inp: BoundInput) -> Fraction:
    """(deg F - deg X) * C(h0, 2) / (N - h0): the largest divisor degree
    consistent with having no rational first integral.

    Needs strictly more invariant divisors than the system dimension.
    """
    inp.require("h0", "n_invariant", "deg_foliation")
    if inp.n_invariant <= inp.h0:
        raise HypothesisNotMetError(
            f"need n_invariant > h0 (got {inp.n_invariant} <= {inp.h0})")
    return Fraction((inp.deg_foliation - inp.deg_variety)
                    * math.comb(inp.h0, 2), inp.n_invariant - inp.h0)


def pn_threshold(d: int, k: int, n: int, n_invariant: int) -> Fraction:
    """Degree threshold on projective n-space for degree-k hypersurfaces.

    With N invariant hypersurfaces of degree k, N > C(n+k, k), any k above
    (d-1) * C(C(n+k,k), 2) / (N - C(n+k,k)) forces a rational first
    integral.
    """
    if d < 2:
        raise ValueError("need foliation degree d >= 2")
    h0 = math.comb(n + k, k)
    if n_invariant <= h0:
        raise HypothesisNotMetError(
            f"need n_invariant > C(n+k, k) = {h0} (got {n_invariant})")
    return Fraction((d - 1) * math.comb(h0, 2), n_invariant - h0)


def genus_rhs(d: int, k: int, n_invariant: int) -> Fraction:
    """[d(k^3+6k^2+11k+6) - k^3 - 6k^2 + 13k + 2] / 4 - 2N.

    Right-hand side of the plane genus inequality 2 - 2g <= RHS for a
    degree-k invariant curve of a degree-d plane foliation with N invariant
    degree-k curves.
    """
    if d < 2 or k < 1 or n_invariant < 1:
        raise ValueError("need d >= 2, k >= 1, n_invariant >= 1")
    poly = d * (k**3 + 6 * k**2 + 11 * k + 6) - k**3 - 6 * k**2 + 13 * k + 2
    return Fraction(poly, 4) - 2 * n_invariant


def genus_threshold(d: int, k: int, n_invariant: int) -> Fraction:
    """(2 - genus_rhs) / 2: an invariant degree-k curve of virtual genus
    strictly below this forces a rational first integral of degree <= k."""
    return (2 - genus_rhs(d, k, n_invariant)) / 2


def surface_bound(inp: BoundInput) -> BoundReport:
    """The surface inequality 2 - 2g <= 2h^1 - 2h^0(K-D)
    + 2 (deg F - deg X)/deg D * C(h0, 2) + [K.K - 12 K.D + chi]/6 - 2N."""
    inp.require("deg_D", "h0", "n_invariant", "deg_foliation", "h1",
                "h0_k_minus_d", "k_self", "k_dot_d", "chi_top", "genus")
    if inp.deg_D <= 0:
        raise ValueError("need deg_D > 0")
    rhs = (Fraction(2 * inp.h1 - 2 * inp.h0_k_minus_d)
           + Fraction(2 * (inp.deg_foliation - inp.deg_variety), inp.deg_D)
           * math.comb(inp.h0, 2)
           + Fraction(inp.k_self - 12 * inp.k_dot_d + inp.chi_top, 6)
           - 2 * inp.n_invariant)
    lhs = 2 - 2 * Fraction(inp.genus)
    return _report(lhs, rhs, "cor")


def plane_surface_input(d: int, k: int, n_invariant: int,
                        genus) -> BoundInput:
    """BoundInput for the projective plane: h0 = C(k+2, 2), h1 = 0,
    h^0(K-D) = 0, K.K = 9, K.D = -3k, chi = 3."""
    return BoundInput(
        deg_D=k,
        h0=math.comb(k + 2, 2),
        n_invariant=n_invariant,
        deg_foliation=d,
        deg_variety=1,
        h1=0,
        h0_k_minus_d=0,
        k_self=9,
        k_dot_d=-3 * k,
        chi_top=3,
        genus=Fraction(genus),
    )


def virtual_genus_plane(k: int) -> int:
    """(k-1)(k-2)/2, the virtual genus of a degree-k plane curve."""
    if k < 1:
        raise ValueError("need k >= 1")
    return (k - 1) * (k - 2) // 2


def abelian_bound(d_self_n: int, n: int, n_invariant: int,
                  deg_foliation: int, deg_variety: int) -> Fraction:
    """Degree bound when the ambient has trivial higher cohomology and
    h0 = D^n / n!.

    `d_self_n` is the top self-intersection number D^n; it must be divisible
    by n! so that h0 is an integer, and the invariant count must exceed h0.
    """
    fact = math.factorial(n)
    if d_self_n % fact != 0:
        raise ValueError(
            f"D^n = {d_self_n} is not divisible by n! = {fact}")
    h0 = d_self_n // fact
    if n_invariant <= h0:
        raise HypothesisNotMetError(
            f"need n_invariant > D^n/n! = {h0} (got {n_invariant})")
    return Fraction((deg_foliation - deg_variety) * math.comb(h0, 2),
                    n_invariant - h0)
