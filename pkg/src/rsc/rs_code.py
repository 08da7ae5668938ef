"""Reed-Solomon codes RS_k(q) by evaluation at the powers of the generator."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple

from .finite_field import FieldError, FieldSpec, span

Codeword = Tuple[int, ...]


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class RsSpec:
    field: FieldSpec
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.field.q - 1:
            raise CodeError(f"dimension k={self.k} outside [1, {self.field.q - 1}]")

    @property
    def n(self) -> int:
        return self.field.q - 1

    @property
    def d(self) -> int:
        return self.field.q - self.k

    @property
    def size(self) -> int:
        return self.field.q**self.k


class Polynomial:
    """A polynomial over ``field`` with integer-encoded coefficients, lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int]):
        c = [field.check(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs: Tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, coeff: int = 1) -> "Polynomial":
        return cls(field, [0] * degree + [coeff])

    @classmethod
    def from_terms(cls, field: FieldSpec, terms: dict) -> "Polynomial":
        if not terms:
            return cls(field, [])
        c = [0] * (max(terms) + 1)
        for e, a in terms.items():
            c[e] = field.add(c[e], a)
        return cls(field, c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def terms(self) -> List[Tuple[int, int]]:
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(F, [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(self.field.neg(1))

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, [self.field.mul(c, a) for a in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)}, {self.field!r})"


def evaluate_at_powers(f: Polynomial) -> Codeword:
    """``(f(alpha^0), ..., f(alpha^(q-2)))``.

    Dense polynomials use Horner's rule; sparse ones (few terms relative to
    degree, such as linearized or trace polynomials) are summed term by term
    through discrete logs.
    """
    F = f.field
    n = F.q - 1
    terms = f.terms()
    if len(terms) * 4 >= max(f.degree, 1) or F._log is None:
        return tuple(f(F.exp(i)) for i in range(n))
    logs = [(e, F.log(c)) for e, c in terms]
    out = []
    for i in range(n):
        acc = 0
        for e, lc in logs:
            acc = F.add(acc, F.exp(lc + e * i))
        out.append(acc)
    return tuple(out)


def encode(spec: RsSpec, f: Polynomial) -> Codeword:
    if f.field != spec.field:
        raise FieldError("polynomial and code use different fields")
    if f.degree >= spec.k:
        raise CodeError(f"deg f = {f.degree} is not below k = {spec.k}")
    return evaluate_at_powers(f)


def image(f: Polynomial, field: FieldSpec = None) -> frozenset:
    """``Im f = f(F_q)``, evaluated over every field element including 0."""
    field = field or f.field
    return frozenset(f(x) for x in field.elements())


def codeword_image(c: Sequence[int]) -> frozenset:
    return frozenset(c)


def codewords(spec: RsSpec, guard: int = 10**6) -> Iterator[Codeword]:
    """Every codeword, by linearity over the monomial basis."""
    if spec.size > guard:
        raise CodeError(f"|C| = {spec.size} exceeds guard {guard}")
    F = spec.field
    basis = [evaluate_at_powers(Polynomial.monomial(F, j)) for j in range(spec.k)]
    scaled = [[tuple(F.mul(a, x) for x in row) for a in F.elements()] for row in basis]
    zero = (0,) * spec.n
    for choice in itertools.product(range(F.q), repeat=spec.k):
        word = zero
        for j, a in enumerate(choice):
            if a:
                word = tuple(F.add(x, y) for x, y in zip(word, scaled[j][a]))
        yield word


def polynomials(field: FieldSpec, k: int) -> Iterator[Polynomial]:
    """All polynomials of degree below ``k`` (the space P_k)."""
    for c in itertools.product(range(field.q), repeat=k):
        yield Polynomial(field, c)


def threshold_k(q: int, w1: int, w2: int) -> int:
    """Smallest dimension at which the distance bound d > n - n/(w1 w2) fails."""
    if w1 < 1 or w2 < 1:
        raise ValueError("coalition sizes must be positive")
    return -(-(q - 1) // (w1 * w2)) + 1


def distance_bound_equiv(q: int, k: int, w1: int, w2: int) -> bool:
    """True iff k - 1 < (q - 1)/(w1 w2), the dimension form of d > n - n/(w1 w2)."""
    if not 1 <= k <= q - 1:
        raise CodeError(f"k={k} outside [1, {q - 1}]")
    return (k - 1) * w1 * w2 < q - 1


def distance_bound_direct(q: int, k: int, w1: int, w2: int) -> bool:
    n, d = q - 1, q - k
    return d > n - Fraction(n, w1 * w2)


# polynomials behind the witness constructions


def linearized_monomial(field: FieldSpec, t: int) -> Polynomial:
    """``x^(p^t) - x``."""
    deg = field.p**t
    terms = {deg: 1}
    terms[1] = field.add(terms.get(1, 0), field.neg(1))
    return Polynomial.from_terms(field, terms)


def _eval_linearized(field: FieldSpec, a: Sequence[int], x: int) -> int:
    acc, xp = 0, x
    for c in a:
        acc = field.add(acc, field.mul(c, xp))
        xp = field.pow(xp, field.p)
    return acc


def subspace_polynomial(field: FieldSpec, basis: Sequence[int]) -> Polynomial:
    """``prod_{v in span(basis)} (x - v)``: linearized, degree p^t, kernel the span.

    Built by the recursion L' = L^p - L(b)^(p-1) L over the linearized
    coefficients, so the product is never expanded.
    """
    p = field.p
    a = [1]
    for b in basis:
        c = _eval_linearized(field, a, b)
        if c == 0:
            raise FieldError("subspace basis is linearly dependent")
        cp = field.pow(c, p - 1)
        new = [0] * (len(a) + 1)
        for i, ai in enumerate(a):
            new[i + 1] = field.add(new[i + 1], field.pow(ai, p))
            new[i] = field.sub(new[i], field.mul(cp, ai))
        a = new
    return Polynomial.from_terms(field, {p**i: c for i, c in enumerate(a) if c})


def trace_polynomial(field: FieldSpec, s: int) -> Polynomial:
    """Relative trace onto GF(p^s): ``sum_i x^(p^(s i))`` for ``i < m/s``."""
    if field.m % s:
        raise FieldError(f"GF({field.p}^{s}) is not a subfield of {field!r}")
    return Polynomial.from_terms(field, {field.p ** (s * i): 1 for i in range(field.m // s)})


def additive_image_basis(field: FieldSpec, f: Polynomial) -> List[int]:
    """Basis of Im f for an additive (linearized) ``f``: images of the
    polynomial basis, thinned to an independent set in registry order."""
    out: List[int] = []
    for i in range(field.m):
        y = f(field.p**i)
        if y not in span(field, out):
            out.append(y)
    return out
