#!/usr/bin/env python3
"""Survey the quadratic Lotka-Volterra family.

For each member: invariant coordinate planes with cofactors, extactic
reports for the degree-1 and degree-2 systems (never identically zero,
consistent with the absence of a rational first integral), and for the
first member the irreducible invariant conic recovered by the brute-force
bilinear search.  Ends with a small table of degree/genus thresholds for
degree-2 plane foliations.
"""

import argparse
import math
import time
from fractions import Fraction

from extatica.bounds import genus_threshold, pn_threshold
from extatica.corpus import (conic_is_irreducible, invariant_curve_search,
                             slv, slv1_invariant_conic)
from extatica.extactic import extactic, monomial_system
from extatica.foliation import HOMOGENEOUS, check_invariance


def survey_member(ell: int) -> None:
    entry = slv(ell)
    print(f"== slv({ell}) ==")
    print(f"field: {entry.field}")
    ring = entry.field.ring
    for i, name in enumerate(ring.names):
        cof = check_invariance(entry.field, ring.variable(i))
        print(f"  {name} = 0 invariant, cofactor {cof.polynomial}")
    for k in (1, 2):
        t0 = time.time()
        rep = extactic(entry.field, monomial_system(3, k, HOMOGENEOUS))
        print(f"  extactic k={k}: m={rep.dimension} "
              f"deg={rep.degree}/{rep.degree_bound} "
              f"zero={rep.identically_zero} "
              f"[{rep.engine}, {time.time() - t0:.2f}s]")


def conic_hunt() -> None:
    print("== slv(1) invariant conic (bilinear search) ==")
    field = slv(1).field
    grid = sorted({Fraction(p, q) for q in (1, 2) for p in range(-6, 7)})
    for curve, cof in invariant_curve_search(field, 2, 1, grid):
        tag = "irreducible" if conic_is_irreducible(curve) else "reducible"
        print(f"  {tag}: {curve}   cofactor {cof}")
    frozen, frozen_cof = slv1_invariant_conic()
    print(f"  frozen fixture: {frozen}   cofactor {frozen_cof}")


def threshold_table() -> None:
    print("== thresholds for degree-2 plane foliations ==")
    print("  k   pn threshold (count = C(k+2,2)+1)   genus threshold (N=1)")
    for k in range(1, 7):
        h0 = math.comb(k + 2, 2)
        pn = pn_threshold(2, k, 2, h0 + 1)
        gth = genus_threshold(2, k, 1)
        print(f"  {k}   {str(pn):>12}   {str(gth):>12}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-ell", type=int, default=3)
    args = parser.parse_args()
    for ell in range(1, args.max_ell + 1):
        survey_member(ell)
    conic_hunt()
    threshold_table()


if __name__ == "__main__":
    main()
