"""Jet matrices, the exact inflection determinant, and first integrals.

Given a field X and an ordered basis (s_1, ..., s_m) of a linear system of
divisors, the jet matrix has entry (i, j) = X^j(s_i).  Its determinant E is
the extactic polynomial of the pair: E vanishes identically exactly when the
basis is linearly dependent over the field of first integrals, and otherwise
it is divisible by every invariant divisor cut out by an element of the
system.

Two exact determinant engines are provided:

* `det_fraction_free` - Bareiss elimination over the polynomial ring, best
  for small matrices.
* `det_modular` - evaluation/interpolation modulo word-size primes with
  Chinese remaindering and rational reconstruction, vectorized over the
  evaluation grid; best once degrees blow up.

Both return identical canonical polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Optional, Sequence

import numpy as np

from .foliation import (AFFINE, HOMOGENEOUS, VectorField, apply_derivation,
                        foliation_degree)
from .polyring import (PRIMES_2_31, BadPrimeError, ContextError,
                       PolyRing, Polynomial, monomials_of_degree,
                       monomials_up_to_degree)

#: Complete monomial systems above this dimension are refused unless the
#: caller overrides: the determinant degree grows quadratically in the
#: dimension and desk-scale runs must stay tractable.
DEFAULT_MAX_DIMENSION = 21

_PROBE_RANGE = 10_000  # random integer probe points live in [-10^4, 10^4]


class DimensionGuardError(RuntimeError):
    """System dimension exceeds the configured guard."""


class VacuousQueryError(ValueError):
    """Divisibility against an identically zero extactic is vacuous."""


class EngineDisagreementError(RuntimeError):
    """The modular engine failed its internal consistency check."""


class ExtacticNotZeroError(ValueError):
    """First-integral extraction requires an identically zero extactic."""


class ExtractionFailedError(RuntimeError):
    """No verified first-integral certificate could be produced."""

    def __init__(self, message: str, rank_profile=None):
        super().__init__(message)
        self.rank_profile = rank_profile


# ---------------------------------------------------------------------------
# linear systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSystem:
    """An ordered basis of a linear system of divisors.

    `descriptor` is "affine" (degrees <= k) or "homogeneous" (homogeneous of
    degree exactly k); `degree` is k.
    """

    basis: tuple
    degree: int
    descriptor: str

    def __post_init__(self):
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        if not basis:
            raise ValueError("empty basis")
        ring = basis[0].ring
        for s in basis:
            if s.ring != ring:
                raise ContextError("basis elements live in different rings")
            if s.is_zero():
                raise ValueError("zero polynomial in basis")
            if self.descriptor == HOMOGENEOUS:
                if not (s.is_homogeneous() and s.degree() == self.degree):
                    raise ValueError(
                        "homogeneous descriptor needs homogeneous basis "
                        f"elements of degree {self.degree}")
            elif s.degree() > self.degree:
                raise ValueError("basis element degree exceeds system degree")
        if self.descriptor not in (AFFINE, HOMOGENEOUS):
            raise ValueError(f"unknown descriptor {self.descriptor!r}")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def ring(self) -> PolyRing:
        return self.basis[0].ring


def monomial_system(nvars: int, k: int, descriptor: str = AFFINE,
                    names: Optional[Sequence[str]] = None) -> LinearSystem:
    """The complete monomial basis of degree <= k (affine) or == k
    (homogeneous), ordered by degree and graded-lex within each degree.

    The affine system on n variables and the homogeneous system on n
    variables both have dimension C(n + k, k) (with n one less than the
    variable count in the homogeneous reading).
    """
    if nvars < 1 or k < 1:
        raise ValueError("need nvars >= 1 and k >= 1")
    from .foliation import default_variable_names
    ring = PolyRing(tuple(names) if names else default_variable_names(nvars))
    if ring.nvars != nvars:
        raise ContextError(f"{ring.nvars} names for {nvars} variables")
    if descriptor == HOMOGENEOUS:
        exps = list(monomials_of_degree(nvars, k))
    elif descriptor == AFFINE:
        exps = list(monomials_up_to_degree(nvars, k))
    else:
        raise ValueError(f"unknown descriptor {descriptor!r}")
    exps.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    basis = tuple(ring.monomial(e) for e in exps)
    return LinearSystem(basis, k, descriptor)


# ---------------------------------------------------------------------------
# jet matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JetMatrix:
    """Square matrix with entry (i, j) = X^j(s_i); rows follow the basis."""

    entries: tuple
    field: VectorField
    system: LinearSystem


def jet_matrix(field: VectorField, system: LinearSystem) -> JetMatrix:
    """Columns built by iterated derivation: column j+1 applies X to column j."""
    if system.ring != field.ring:
        raise ContextError("system and field rings differ")
    if field.mode == HOMOGENEOUS and system.descriptor != HOMOGENEOUS:
        raise ContextError(
            "a homogeneous field needs a homogeneous linear system")
    m = system.dimension
    columns = [list(system.basis)]
    for _ in range(m - 1):
        columns.append([apply_derivation(field, f) for f in columns[-1]])
    rows = tuple(tuple(columns[j][i] for j in range(m)) for i in range(m))
    return JetMatrix(rows, field, system)


# ---------------------------------------------------------------------------
# fraction-free determinant
# ---------------------------------------------------------------------------

def det_fraction_free(matrix) -> Polynomial:
    """Exact determinant by Bareiss elimination over the polynomial ring.

    Every division performed is exact (Sylvester's identity), so no fraction
    field is needed.
    """
    rows = [list(r) for r in matrix]
    m = len(rows)
    if m == 0 or any(len(r) != m for r in rows):
        raise ValueError("matrix must be square and non-empty")
    ring = rows[0][0].ring
    for r in rows:
        for e in r:
            if e.ring != ring:
                raise ContextError("matrix entries live in different rings")
    if m == 1:
        return rows[0][0]
    sign = 1
    prev = ring.one()
    for k in range(m - 1):
        pivot_row = None
        for i in range(k, m):
            if not rows[i][k].is_zero():
                # prefer the sparsest available pivot
                if pivot_row is None or len(rows[i][k].terms) < len(
                        rows[pivot_row][k].terms):
                    pivot_row = i
        if pivot_row is None:
            return ring.zero()
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, m):
            head = rows[i][k]
            for j in range(k + 1, m):
                num = pivot * rows[i][j] - head * rows[k][j]
                q = num.divide_exact(prev)
                if q is None:
                    raise AssertionError("fraction-free division failed")
                rows[i][j] = q
            rows[i][k] = ring.zero()
        prev = pivot
    corner = rows[m - 1][m - 1]
    return -corner if sign < 0 else corner


# ---------------------------------------------------------------------------
# modular determinant
# ---------------------------------------------------------------------------

def _entry_norms(entry: Polynomial) -> tuple:
    """(lcm of coefficient denominators, 1-norm of the integer image)."""
    den = 1
    for c in entry.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    norm = sum(abs(c.numerator) * (den // c.denominator)
               for c in entry.terms.values())
    return den, norm


def _det_bounds(rows, ring):
    """Per-variable degree bounds and coefficient bounds for the determinant.

    Degree bound per variable: sum over columns (and over rows; the smaller
    wins) of the largest entry degree in that variable.  Coefficient bounds
    come from expanding the determinant as a sum of m! entry products.
    """
    m = len(rows)
    nv = ring.nvars
    var_bounds = []
    for v in range(nv):
        col = sum(max(rows[i][j].degree_in(v) for i in range(m))
                  for j in range(m))
        row = sum(max(rows[i][j].degree_in(v) for j in range(m))
                  for i in range(m))
        var_bounds.append(min(col, row))
    den_all = 1
    col_norm = Fraction(1)
    for j in range(m):
        best = Fraction(0)
        for i in range(m):
            den, norm = _entry_norms(rows[i][j])
            den_all = den_all * den // math.gcd(den_all, den)
            frac_norm = Fraction(norm, den)
            if frac_norm > best:
                best = frac_norm
        col_norm *= best
    den_bound = den_all ** m
    num_bound = math.ceil(col_norm * math.factorial(m)) * den_bound
    return var_bounds, max(num_bound, 1), max(den_bound, 1)


def _vec_modpow(base: np.ndarray, exp: int, p: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % p
    while exp:
        if exp & 1:
            out = out * b % p
        b = b * b % p
        exp >>= 1
    return out


def _grid_entry_values(entry: Polynomial, pow_tables, shape, p) -> np.ndarray:
    """Evaluate one entry over the whole grid, mod p."""
    total = np.zeros(shape, dtype=np.int64)
    nv = len(shape)
    for exps, c in entry.terms.items():
        den = c.denominator
        if den % p == 0:
            raise BadPrimeError(f"denominator {den} vanishes mod {p}")
        v = c.numerator % p
        if den != 1:
            v = v * pow(den, p - 2, p) % p
        term = np.full(shape, v, dtype=np.int64)
        for axis in range(nv):
            k = exps[axis]
            if k:
                sl = [None] * nv
                sl[axis] = slice(None)
                term = term * pow_tables[axis][k][tuple(sl)] % p
        total = (total + term) % p
    return total


def _grid_determinants(values, m, p) -> np.ndarray:
    """Pointwise determinants of an m x m matrix of grid tensors, mod p.

    Division-free elimination vectorized over the grid; points that hit a
    zero pivot are recomputed individually with row pivoting.
    """
    shape = values[0][0].shape
    if m == 1:
        return values[0][0].copy()
    work = [[values[i][j].copy() for j in range(m)] for i in range(m)]
    dead = np.zeros(shape, dtype=bool)
    scale = np.ones(shape, dtype=np.int64)
    for k in range(m - 1):
        piv = work[k][k]
        dead |= piv == 0
        if k <= m - 3:
            scale = scale * _vec_modpow(piv, m - 2 - k, p) % p
        for i in range(k + 1, m):
            head = work[i][k]
            for j in range(k + 1, m):
                work[i][j] = (piv * work[i][j] - head * work[k][j]) % p
    dets = work[m - 1][m - 1] * _vec_modpow(scale, p - 2, p) % p
    if dead.any():
        for idx in zip(*np.nonzero(dead)):
            mat = [[int(values[i][j][idx]) for j in range(m)]
                   for i in range(m)]
            dets[idx] = _scalar_det_mod(mat, p)
    return dets


def _scalar_det_mod(mat, p) -> int:
    m = len(mat)
    sign = 1
    det = 1
    for k in range(m):
        piv = None
        for i in range(k, m):
            if mat[i][k] % p:
                piv = i
                break
        if piv is None:
            return 0
        if piv != k:
            mat[k], mat[piv] = mat[piv], mat[k]
            sign = -sign
        inv = pow(mat[k][k], p - 2, p)
        det = det * mat[k][k] % p
        for i in range(k + 1, m):
            f = mat[i][k] * inv % p
            if f:
                for j in range(k, m):
                    mat[i][j] = (mat[i][j] - f * mat[k][j]) % p
    return det * sign % p


def _interpolate_axis(vals: np.ndarray, nodes, p: int) -> np.ndarray:
    """Newton interpolation along axis 0: values at `nodes` -> coefficients."""
    d = len(nodes)
    v = vals.copy()
    inv_cache = {}
    for i in range(1, d):
        for j in range(d - 1, i - 1, -1):
            delta = (nodes[j] - nodes[j - i]) % p
            inv = inv_cache.get(delta)
            if inv is None:
                inv = pow(delta, p - 2, p)
                inv_cache[delta] = inv
            v[j] = (v[j] - v[j - 1]) * inv % p
    coeffs = np.zeros_like(v)
    coeffs[0] = v[d - 1]
    top = 0
    for i in range(d - 2, -1, -1):
        shifted = np.zeros_like(coeffs)
        shifted[1:top + 2] = coeffs[:top + 1]
        coeffs = (shifted - nodes[i] * coeffs) % p
        coeffs[0] = (coeffs[0] + v[i]) % p
        top += 1
    return coeffs


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple:
    g, s, _ = _ext_gcd(m1, m2)
    assert g == 1
    m = m1 * m2
    return (r1 + (r2 - r1) * s % m2 * m1) % m, m


def _ext_gcd(a: int, b: int) -> tuple:
    old_r, r = a, b
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_r, old_s, (old_r - old_s * a) // b if b else 0


def _rational_reconstruct(c: int, modulus: int, num_bound: int,
                          den_bound: int) -> Fraction:
    """Recover n/d from c mod modulus with |n| <= num_bound, 0 < d <= den_bound."""
    r0, r1 = modulus, c % modulus
    s0, s1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0:
        raise EngineDisagreementError("rational reconstruction failed")
    n, d = (r1, s1) if s1 > 0 else (-r1, -s1)
    if d > den_bound or (n - c * d) % modulus != 0:
        raise EngineDisagreementError("rational reconstruction failed")
    return Fraction(n, d)


def det_modular(matrix, primes: Optional[Sequence[int]] = None,
                jobs: int = 1) -> Polynomial:
    """Exact determinant by modular evaluation and interpolation.

    The matrix is evaluated on an integer grid large enough for the a-priori
    degree bound, modulo enough primes for the a-priori coefficient-height
    bound; grid determinants are interpolated per prime, combined by Chinese
    remaindering and finished with rational reconstruction.  Unlucky primes
    (hitting a coefficient denominator) are skipped; the result is
    bit-identical to `det_fraction_free`.
    """
    rows = [list(r) for r in matrix]
    m = len(rows)
    if m == 0 or any(len(r) != m for r in rows):
        raise ValueError("matrix must be square and non-empty")
    ring = rows[0][0].ring
    for r in rows:
        for e in r:
            if e.ring != ring:
                raise ContextError("matrix entries live in different rings")
    # zero row / zero column: determinant is zero outright
    for i in range(m):
        if all(rows[i][j].is_zero() for j in range(m)):
            return ring.zero()
    for j in range(m):
        if all(rows[i][j].is_zero() for i in range(m)):
            return ring.zero()
    if ring.nvars == 0 or all(e.is_constant() for r in rows for e in r):
        return det_fraction_free(rows)
    # Column-homogeneous matrices have a homogeneous determinant of known
    # degree: peel off the last variable, compute in one fewer dimension,
    # and re-homogenize.  (Jet matrices of homogeneous fields are of this
    # shape, column by column.)
    if ring.nvars >= 2:
        col_degs = _column_homogeneous_degrees(rows, m)
        if col_degs is not None:
            last = ring.names[-1]
            sub = [[e.dehomogenize(ring.nvars - 1) for e in r] for r in rows]
            det_sub = det_modular(sub, primes=primes, jobs=jobs)
            if det_sub.is_zero():
                return ring.zero()
            return det_sub.homogenize(last, sum(col_degs))
    var_bounds, num_bound, den_bound = _det_bounds(rows, ring)
    target = 2 * num_bound * den_bound
    table = tuple(primes) if primes is not None else PRIMES_2_31
    chosen = []
    prod = 1
    for p in table:
        if den_bound % p == 0 or any(
                c.denominator % p == 0
                for r in rows for e in r for c in e.terms.values()):
            continue  # unlucky prime: some denominator vanishes mod p
        chosen.append(p)
        prod *= p
        if prod > target:
            break
    else:
        raise BadPrimeError("prime table exhausted before reaching the "
                            "height bound")
    nodes = [list(range(1, b + 2)) for b in var_bounds]
    shape = tuple(b + 1 for b in var_bounds)

    def run_prime(p: int) -> np.ndarray:
        pow_tables = []
        for v in range(ring.nvars):
            maxexp = max(max((e.degree_in(v) for e in r), default=0)
                         for r in rows)
            node_arr = np.array(nodes[v], dtype=np.int64) % p
            tab = [np.ones_like(node_arr)]
            for _ in range(maxexp):
                tab.append(tab[-1] * node_arr % p)
            pow_tables.append(tab)
        values = [[_grid_entry_values(rows[i][j], pow_tables, shape, p)
                   for j in range(m)] for i in range(m)]
        dets = _grid_determinants(values, m, p)
        for axis in range(ring.nvars):
            moved = np.moveaxis(dets, axis, 0)
            moved[...] = _interpolate_axis(moved, nodes[axis], p)
        return dets

    if jobs > 1 and len(chosen) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            tensors = list(pool.map(run_prime, chosen))
    else:
        tensors = [run_prime(p) for p in chosen]

    support = set()
    for t in tensors:
        support.update(zip(*np.nonzero(t)))
    terms = {}
    for idx in support:
        residue, modulus = int(tensors[0][idx]), chosen[0]
        for t, p in zip(tensors[1:], chosen[1:]):
            residue, modulus = _crt_pair(residue, modulus, int(t[idx]), p)
        coeff = _rational_reconstruct(residue, modulus, num_bound, den_bound)
        if coeff != 0:
            terms[tuple(int(e) for e in idx)] = coeff
    det = Polynomial(ring, terms)
    _self_check(rows, det, var_bounds, chosen[0])
    return det


def _column_homogeneous_degrees(rows, m):
    """Per-column homogeneous degrees, or None if some column is mixed."""
    degs = []
    for j in range(m):
        deg = None
        for i in range(m):
            e = rows[i][j]
            if e.is_zero():
                continue
            if not e.is_homogeneous():
                return None
            d = e.degree()
            if deg is None:
                deg = d
            elif d != deg:
                return None
        if deg is None:
            return None  # zero column, handled earlier
        degs.append(int(deg))
    return degs


def _self_check(rows, det, var_bounds, p):
    """Re-check the reconstructed determinant at one fresh point mod p."""
    m = len(rows)
    point = [b + 2 + v for v, b in enumerate(var_bounds)]
    mat = [[rows[i][j].evaluate_mod(point, p) for j in range(m)]
           for i in range(m)]
    expected = _scalar_det_mod(mat, p)
    if det.evaluate_mod(point, p) != expected:
        raise EngineDisagreementError(
            "modular determinant failed its consistency re-check")


def _det_auto(matrix, engine: str = "auto", jobs: int = 1) -> Polynomial:
    m = len(matrix)
    if engine == "fraction-free":
        return det_fraction_free(matrix)
    if engine == "modular":
        return det_modular(matrix, jobs=jobs)
    if engine != "auto":
        raise ValueError(f"unknown engine {engine!r}")
    return det_fraction_free(matrix) if m <= 4 else det_modular(
        matrix, jobs=jobs)


# ---------------------------------------------------------------------------
# the extactic polynomial
# ---------------------------------------------------------------------------

def extactic_degree_bound(m: int, k: int, d: int, deg_variety: int = 1) -> int:
    """m*k + (d - deg_variety) * C(m, 2).

    Column j of the jet matrix has degree k + j*(d - deg_variety) in the
    homogeneous projective normalization, and the bound is the column sum.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    return m * k + (d - deg_variety) * math.comb(m, 2)


@dataclass(frozen=True)
class ExtacticReport:
    """The extactic polynomial together with its derived facts."""

    extactic: Polynomial
    identically_zero: bool
    degree: object        # int, or NEG_INF when identically zero
    degree_bound: int
    field_degree: int
    dimension: int        # m = dim of the linear system
    system_degree: int    # k
    engine: str

    def __post_init__(self):
        assert self.identically_zero == self.extactic.is_zero()
        if not self.identically_zero:
            assert self.degree <= self.degree_bound


def extactic(field: VectorField, system: LinearSystem, engine: str = "auto",
             max_dim: Optional[int] = None, jobs: int = 1) -> ExtacticReport:
    """Determinant of the jet matrix plus derived facts.

    `engine` is "fraction-free", "modular" or "auto" (fraction-free up to
    4x4, modular beyond).  Systems larger than the guard (21 by default) are
    refused; pass `max_dim` to override.
    """
    m = system.dimension
    limit = DEFAULT_MAX_DIMENSION if max_dim is None else max_dim
    if m > limit:
        raise DimensionGuardError(
            f"system dimension {m} exceeds the guard ({limit}); raise the "
            "limit explicitly to proceed")
    if engine not in ("auto", "fraction-free", "modular"):
        raise ValueError(f"unknown engine {engine!r}")
    jet = jet_matrix(field, system)
    used = engine if engine != "auto" else (
        "fraction-free" if m <= 4 else "modular")
    det = _det_auto(jet.entries, engine=used, jobs=jobs)
    d = foliation_degree(field).degree
    bound = extactic_degree_bound(m, system.degree, d)
    return ExtacticReport(
        extactic=det,
        identically_zero=det.is_zero(),
        degree=det.degree(),
        degree_bound=bound,
        field_degree=d,
        dimension=m,
        system_degree=system.degree,
        engine=used,
    )


def divides_extactic(f: Polynomial, report: ExtacticReport) -> bool:
    """Whether f divides the extactic polynomial exactly.

    Zero-locus containment of an invariant divisor upgrades to polynomial
    divisibility here, which is the form the degree bookkeeping actually
    uses; the query is refused when the extactic vanishes identically
    (every divisor is contained, and the first-integral path applies).
    """
    if report.identically_zero:
        raise VacuousQueryError(
            "extactic vanishes identically; use first-integral extraction")
    if f.is_zero() or f.is_constant():
        raise ValueError("divisor must be non-constant")
    return report.extactic.divide_exact(f) is not None


# ---------------------------------------------------------------------------
# first integrals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FirstIntegral:
    """A verified rational first integral numerator/denominator pair.

    The certificate identity X(A)*B - A*X(B) = 0 holds exactly and A/B is
    non-constant; both are signed minors of the jet matrix.
    """

    numerator: Polynomial
    denominator: Polynomial
    rank: int


def _eval_matrix(rows, point):
    return [[e.evaluate(point) for e in r] for r in rows]


def _rank_and_pivot_rows(mat, cols):
    """Rank of the given columns (exact), plus greedily chosen pivot rows."""
    m = len(mat)
    work = [[mat[i][j] for j in cols] for i in range(m)]
    pivot_rows = []
    used = [False] * m
    for j in range(len(cols)):
        pick = None
        for i in range(m):
            if not used[i] and work[i][j] != 0:
                pick = i
                break
        if pick is None:
            continue
        used[pick] = True
        pivot_rows.append(pick)
        inv = Fraction(1) / work[pick][j]
        for i in range(m):
            if i != pick and not used[i] and work[i][j] != 0:
                f = work[i][j] * inv
                for jj in range(j, len(cols)):
                    work[i][jj] -= f * work[pick][jj]
    return len(pivot_rows), pivot_rows


def _minor(rows, row_idx, col_idx):
    return [[rows[i][j] for j in col_idx] for i in row_idx]


def extract_first_integral(field: VectorField, system: LinearSystem,
                           seed: int = 0, max_dim: Optional[int] = None,
                           engine: str = "auto") -> FirstIntegral:
    """Build a rational first integral from a rank-deficient jet matrix.

    The generic rank r < m and a good row subset are found by evaluating the
    jet matrix at random integer points (a nonzero evaluation of a minor
    proves it nonzero; rank guesses are only ever used through the exact
    verification below).  The dependency of one extra row on the pivot rows
    is solved by Cramer's rule, giving two signed r x r minors A, B; the
    certificate X(A)*B - A*X(B) = 0 is checked exactly before returning.
    """
    m = system.dimension
    limit = DEFAULT_MAX_DIMENSION if max_dim is None else max_dim
    if m > limit:
        raise DimensionGuardError(
            f"system dimension {m} exceeds the guard ({limit})")
    if m < 2:
        raise ValueError("need a system of dimension at least 2")
    jet = jet_matrix(field, system)
    rows = [list(r) for r in jet.entries]
    nv = field.ring.nvars
    rng = Random(seed)

    attempts = []
    rank_profile = []
    for attempt in range(8):
        point = [rng.randint(-_PROBE_RANGE, _PROBE_RANGE) for _ in range(nv)]
        mat = _eval_matrix(rows, point)
        r, pivots = _rank_and_pivot_rows(mat, list(range(m)))
        rank_profile.append(r)
        if r == m:
            raise ExtacticNotZeroError(
                "the extactic polynomial is not identically zero "
                f"(full rank at {tuple(point)})")
        attempts.append((r, pivots, point, mat))
    r = max(a[0] for a in attempts)
    if r == 0:
        raise ExtractionFailedError("jet matrix vanishes at all probe points",
                                    rank_profile=rank_profile)
    cols = list(range(r))
    # the point witnessing global rank r may still be deficient on the
    # leading columns; take the first probe exhibiting full leading rank
    for _, _, point, mat in attempts:
        rk, pivots = _rank_and_pivot_rows(mat, cols)
        if rk == r:
            break
    else:
        raise ExtractionFailedError(
            "no probe point exhibits the generic rank on the leading "
            "columns", rank_profile=rank_profile)
    pivots = sorted(pivots)
    others = [i for i in range(m) if i not in pivots]

    # B != 0 is certain: its evaluation at the probe point is nonzero.
    denom = _det_auto(_minor(rows, pivots, cols), engine=engine)
    denom_at = denom.evaluate(point)
    if denom_at == 0 or denom.is_zero():
        raise ExtractionFailedError("pivot minor vanished unexpectedly",
                                    rank_profile=rank_profile)

    second = None
    mat2 = None
    den2 = Fraction(0)
    for _ in range(16):
        candidate = [rng.randint(-_PROBE_RANGE, _PROBE_RANGE)
                     for _ in range(nv)]
        den2 = denom.evaluate(candidate)
        if den2 != 0:
            second = candidate
            mat2 = _eval_matrix(rows, candidate)
            break
    for i0 in others:
        for k in range(r):
            row_idx = pivots.copy()
            row_idx[k] = i0
            # evaluate the replaced minor numerically first: a ratio that
            # differs between two points is certainly non-constant
            sub1 = [[mat[i][j] for j in cols] for i in row_idx]
            val1 = _numeric_det(sub1)
            if mat2 is not None:
                sub2 = [[mat2[i][j] for j in cols] for i in row_idx]
                val2 = _numeric_det(sub2)
                if val1 * den2 == val2 * denom_at:
                    continue  # looks constant; try another replacement
            numer = _det_auto(_minor(rows, row_idx, cols), engine=engine)
            if numer.is_zero():
                continue
            if _proportional(numer, denom):
                continue
            lhs = apply_derivation(field, numer) * denom
            rhs = numer * apply_derivation(field, denom)
            if lhs == rhs:
                return FirstIntegral(numer, denom, r)
    raise ExtractionFailedError(
        "no non-constant dependency ratio passed exact verification",
        rank_profile=rank_profile)


def _numeric_det(mat) -> Fraction:
    m = len(mat)
    work = [[Fraction(v) for v in row] for row in mat]
    det = Fraction(1)
    sign = 1
    for k in range(m):
        piv = None
        for i in range(k, m):
            if work[i][k] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            work[k], work[piv] = work[piv], work[k]
            sign = -sign
        det *= work[k][k]
        inv = 1 / work[k][k]
        for i in range(k + 1, m):
            f = work[i][k] * inv
            if f:
                for j in range(k, m):
                    work[i][j] -= f * work[k][j]
    return det * sign


def _proportional(a: Polynomial, b: Polynomial) -> bool:
    if a.is_zero() or b.is_zero():
        return True
    ea, ca = a.leading_term()
    eb, cb = b.leading_term()
    if ea != eb:
        return False
    return a.scale(cb) == b.scale(ca)
