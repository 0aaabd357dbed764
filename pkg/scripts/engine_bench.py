#!/usr/bin/env python3
"""Time the two determinant engines on random polynomial matrices.

Shows where the auto-engine crossover (fraction-free up to 4x4, modular
beyond) comes from: Bareiss degree blow-up versus grid evaluation cost.
"""

import argparse
import time

from extatica.corpus import random_polynomial_matrix
from extatica.extactic import det_fraction_free, det_modular


def bench(size: int, degree: int, repeats: int, seed: int) -> None:
    ff_total = mod_total = 0.0
    for r in range(repeats):
        matrix = random_polynomial_matrix(size, 2, degree, seed + r)
        t0 = time.perf_counter()
        a = det_fraction_free(matrix)
        ff_total += time.perf_counter() - t0
        t0 = time.perf_counter()
        b = det_modular(matrix)
        mod_total += time.perf_counter() - t0
        assert a == b
    print(f"  {size}x{size} deg<={degree}: "
          f"fraction-free {ff_total / repeats * 1e3:8.2f} ms   "
          f"modular {mod_total / repeats * 1e3:8.2f} ms")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=2000)
    args = parser.parse_args()
    print("engine timings (mean over repeats; results verified equal):")
    for size in (2, 3, 4, 5, 6, 7):
        for degree in (2, 3):
            bench(size, degree, args.repeats, args.seed)


if __name__ == "__main__":
    main()
