"""Exact sparse multivariate polynomial arithmetic over rationals.

Polynomials are stored sparsely as {exponent-tuple: Fraction} with no zero
coefficients, so equal polynomials have equal term maps and serialize
identically.  The term order is graded lexicographic (total degree first,
then exponent tuples with the first declared variable strongest); canonical
text output lists terms in descending order of that key.

Everything here is immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Union

Exponents = tuple  # exponent vector, one entry per ring variable
Scalar = Union[int, Fraction]

#: Degree of the zero polynomial.  A true -infinity keeps max-degree algebra
#: correct (max(NEG_INF, d) == d for every integer d).
NEG_INF = float("-inf")

#: Fixed table of primes just below 2**61: large enough that random integer
#: evaluations essentially never collide, small enough that two-factor
#: products stay cheap for the host integer type.
PRIMES_2_61 = (
    2305843009213693951, 2305843009213693921, 2305843009213693907,
    2305843009213693723, 2305843009213693693, 2305843009213693669,
    2305843009213693613, 2305843009213693561, 2305843009213693549,
    2305843009213693487, 2305843009213693421, 2305843009213693373,
    2305843009213693277, 2305843009213693193, 2305843009213693153,
    2305843009213693133,
)

#: Fixed table of primes just below 2**31, used by the vectorized modular
#: determinant engine: products of two residues fit in a 64-bit lane.
PRIMES_2_31 = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
    2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801, 2147482763, 2147482739,
    2147482697, 2147482693, 2147482681, 2147482663, 2147482661, 2147482621,
)


class ContextError(ValueError):
    """Operands live in different ring contexts, or a variable index is bad."""


class DegreeError(ValueError):
    """Homogenization target degree is smaller than the polynomial degree."""


class BadPrimeError(ArithmeticError):
    """A coefficient denominator vanishes modulo the chosen prime."""


def grlex_key(exponents: Exponents) -> tuple:
    """Sort key realizing the graded-lex order (earlier variables stronger)."""
    return (sum(exponents), exponents)


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring context: an ordered tuple of variable names."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ContextError(f"duplicate variable names: {names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: Fraction(c)})

    def variable(self, index: int) -> "Polynomial":
        if not 0 <= index < self.nvars:
            raise ContextError(f"variable index {index} out of range")
        exps = [0] * self.nvars
        exps[index] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def variables(self) -> tuple:
        return tuple(self.variable(i) for i in range(self.nvars))

    def monomial(self, exponents: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exponents): Fraction(coeff)})

    def from_terms(self, terms: Mapping[Exponents, Scalar]) -> "Polynomial":
        return Polynomial(self, terms)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ContextError(f"unknown variable {name!r}") from None


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponents, Scalar]):
        clean = {}
        nv = ring.nvars
        for exps, c in terms.items():
            if len(exps) != nv:
                raise ContextError(
                    f"exponent vector {exps} has wrong length for {ring.names}")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c != 0:
                clean[tuple(exps)] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def _raw(cls, ring: PolyRing, terms: dict) -> "Polynomial":
        """Trusted constructor: terms already canonical (no zeros, tuples)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextError(
                    f"ring mismatch: {self.ring.names} vs {other.ring.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    # -- predicates and views ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()), Fraction(0))

    def sorted_terms(self) -> list:
        """Terms as (exponents, coeff) pairs in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]),
                      reverse=True)

    def leading_term(self) -> tuple:
        """(exponents, coeff) of the graded-lex leading term (poly != 0)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def degree_info(self) -> tuple:
        """(total degree | NEG_INF, is_homogeneous)."""
        return self.degree(), self.is_homogeneous()

    def degree_in(self, var: int) -> int:
        """Largest exponent of one variable (0 for the zero polynomial)."""
        return max((e[var] for e in self.terms), default=0)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(
            self.ring,
            {e: c for e, c in self.terms.items() if sum(e) == degree})

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial._raw(self.ring, {})
        # Clear denominators once so the convolution runs on plain integers;
        # one gcd per *result* term instead of one per term product.
        fa, anum = _integer_image(self.terms)
        fb, bnum = _integer_image(other.terms)
        if len(anum) < len(bnum):
            anum, bnum = bnum, anum
        acc = {}
        for eb, cb in bnum.items():
            for ea, ca in anum.items():
                key = tuple(map(sum, zip(ea, eb)))
                acc[key] = acc.get(key, 0) + ca * cb
        den = fa * fb
        out = {}
        for e, num in acc.items():
            if num:
                out[e] = Fraction(num, den)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial._raw(self.ring, {})
        return Polynomial._raw(self.ring,
                               {e: v * c for e, v in self.terms.items()})

    # -- calculus ---------------------------------------------------------------

    def partial_derivative(self, var: int) -> "Polynomial":
        """Formal partial derivative with respect to variable index `var`."""
        if not 0 <= var < self.ring.nvars:
            raise ContextError(f"variable index {var} out of range")
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                e2 = e[:var] + (k - 1,) + e[var + 1:]
                out[e2] = c * k
        return Polynomial._raw(self.ring, out)

    # -- division ---------------------------------------------------------------

    def divide_exact(self, g: "Polynomial"):
        """Return q with self == q*g, or None when no exact quotient exists.

        Leading-term elimination in graded-lex order; because leading terms
        are multiplicative, a failed leading-term division certifies
        non-divisibility.
        """
        g = self._coerce(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Polynomial._raw(self.ring, {})
        g_exps, g_coeff = g.leading_term()
        rem = dict(self.terms)
        quot = {}
        while rem:
            exps = max(rem, key=grlex_key)
            diff = tuple(a - b for a, b in zip(exps, g_exps))
            if any(d < 0 for d in diff):
                return None
            c = rem[exps] / g_coeff
            quot[diff] = c
            for eg, cg in g.terms.items():
                key = tuple(map(sum, zip(eg, diff)))
                s = rem.get(key, Fraction(0)) - cg * c
                if s == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = s
        return Polynomial._raw(self.ring, quot)

    # -- evaluation ---------------------------------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.ring.nvars:
            raise ContextError("point length does not match variable count")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def evaluate_mod(self, point: Sequence[int], p: int) -> int:
        """Value at an integer point modulo a prime p.

        A coefficient n/d maps to n * d^-1 mod p; raises BadPrimeError when
        some denominator is divisible by p (caller retries with another
        prime).
        """
        if len(point) != self.ring.nvars:
            raise ContextError("point length does not match variable count")
        pt = [v % p for v in point]
        total = 0
        for e, c in self.terms.items():
            den = c.denominator
            if den % p == 0:
                raise BadPrimeError(f"denominator {den} vanishes mod {p}")
            v = (c.numerator % p) * pow(den, p - 2, p) % p if den != 1 \
                else c.numerator % p
            for x, k in zip(pt, e):
                if k:
                    v = v * pow(x, k, p) % p
            total = (total + v) % p
        return total

    # -- chart changes -----------------------------------------------------------

    def homogenize(self, new_var: str, target_degree: int) -> "Polynomial":
        """Append a new variable and pad every term up to target_degree."""
        if new_var in self.ring.names:
            raise ContextError(f"variable {new_var!r} already in ring")
        deg = self.degree()
        if deg != NEG_INF and target_degree < deg:
            raise DegreeError(
                f"target degree {target_degree} below polynomial degree {deg}")
        ring2 = PolyRing(self.ring.names + (new_var,))
        out = {e + (target_degree - sum(e),): c for e, c in self.terms.items()}
        return Polynomial._raw(ring2, out)

    def dehomogenize(self, var, value: Scalar = 1) -> "Polynomial":
        """Substitute `value` for one variable and drop it from the ring."""
        idx = self.ring.index(var) if isinstance(var, str) else var
        if not 0 <= idx < self.ring.nvars:
            raise ContextError(f"variable index {idx} out of range")
        value = Fraction(value)
        ring2 = PolyRing(self.ring.names[:idx] + self.ring.names[idx + 1:])
        out = {}
        for e, c in self.terms.items():
            c2 = c * value ** e[idx]
            if c2 == 0:
                continue
            key = e[:idx] + e[idx + 1:]
            s = out.get(key, Fraction(0)) + c2
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return Polynomial._raw(ring2, out)

    # -- canonical text form --------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for name, k in zip(self.ring.names, exps):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    # -- equality ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.ring, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h


def _integer_image(terms: Mapping[Exponents, Fraction]) -> tuple:
    """(common denominator, {exps: integer numerator}) for a term map."""
    den = 1
    for c in terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        return 1, {e: c.numerator for e, c in terms.items()}
    return den, {e: c.numerator * (den // c.denominator)
                 for e, c in terms.items()}


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Exponents]:
    """All exponent vectors of exact total degree, in no particular order."""
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest


def monomials_up_to_degree(nvars: int, degree: int) -> Iterator[Exponents]:
    for d in range(degree + 1):
        yield from monomials_of_degree(nvars, d)
