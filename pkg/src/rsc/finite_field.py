"""Exact arithmetic in GF(p^m).

Elements are plain integers in ``[0, q)``: the radix-``p`` value of the
polynomial-basis coefficient vector. ``FieldSpec`` owns every operation;
``FieldElement`` is a thin operator-overloading wrapper for interactive use.

>>> F = make_field(2, 2)
>>> F.mul(F.alpha, F.alpha) == F.add(F.alpha, 1)
True
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import _gfp
from ._registry import REGISTRY

DEFAULT_SIZE_CAP = 2**20
DEFAULT_TABLE_THRESHOLD = 2**16


class FieldError(ValueError):
    """Invalid field parameters or an operation outside the field's domain."""


class FieldMismatchError(FieldError):
    pass


class FieldSpec:
    """The field GF(p^m) with a fixed irreducible polynomial and generator ``alpha``.

    Immutable after construction. Build instances with :func:`make_field`.
    """

    def __init__(
        self,
        p: int,
        m: int,
        irreducible: Sequence[int],
        *,
        table_threshold: int = DEFAULT_TABLE_THRESHOLD,
    ):
        self.p = p
        self.m = m
        self.q = p**m
        self.irreducible: Tuple[int, ...] = tuple(irreducible)
        self._poly_int = sum(c << i for i, c in enumerate(self.irreducible)) if p == 2 else None
        self._exp: Optional[List[int]] = None
        self._log: Optional[List[int]] = None
        self._zech: Optional[List[int]] = None
        self._bsgs: Optional[Tuple[int, Dict[int, int]]] = None
        self.alpha = self._find_generator()
        if self.q - 1 <= table_threshold:
            self._build_tables()

    # construction helpers

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        order = self.q - 1
        factors = _gfp.prime_factors(order)
        if self.m == 1:
            root = (-self.irreducible[0]) % self.p
            candidates = [root] + list(range(2, self.q))
        else:
            candidates = range(self.p, self.q)
        for g in candidates:
            if all(self._pow_slow(g, order // r) != 1 for r in factors):
                return g
        raise FieldError(f"no primitive element found in {self!r}")

    def _build_tables(self) -> None:
        n = self.q - 1
        exp = [0] * (2 * n)
        log = [-1] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            if log[x] != -1:
                raise FieldError(f"generator of {self!r} is not primitive")
            log[x] = i
            x = self._mul_slow(x, self.alpha)
        exp[n:] = exp[:n]
        self._exp, self._log = exp, log
        if self.p != 2:
            # zech[i] = log(1 + alpha^i), -1 when that sum is zero
            zech = [-1] * n
            for i in range(n):
                s = self._add_digits(1, exp[i])
                zech[i] = log[s] if s else -1
            self._zech = zech

    # representation

    def digits(self, a: int) -> List[int]:
        """Coefficient vector of ``a``, lowest degree first, length ``m``."""
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, coeffs: Sequence[int]) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + (c % self.p)
        return v

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of {self!r}")
        return a

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def element(self, a: int) -> "FieldElement":
        return FieldElement(self.check(a), self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    @property
    def generator(self) -> "FieldElement":
        return FieldElement(self.alpha, self)

    # additive structure

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        v, scale = 0, 1
        for _ in range(self.m):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            v += ((ra + rb) % p) * scale
            scale *= p
        return v

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        if self._zech is None:
            return self._add_digits(a, b)
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.q - 1)]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.scalar(self.p - 1, a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scalar(self, c: int, a: int) -> int:
        """``c * a`` for an integer ``c`` acting through the prime subfield."""
        c %= self.p
        if c == 0 or a == 0:
            return 0
        if c == 1:
            return a
        v, scale = 0, 1
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            v += (r * c % self.p) * scale
            scale *= self.p
        return v

    # multiplicative structure

    def _mul_slow(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> self.m:
                    a ^= self._poly_int
            return r
        prod = _gfp.poly_mulmod(self.digits(a), self.digits(b), self.irreducible, self.p)
        return self.from_digits(prod)

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is None:
            return self._mul_slow(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self._log is None:
            return self._pow_slow(a, self.q - 2)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._log is None:
            return self._pow_slow(a, e % (self.q - 1))
        return self._exp[self._log[a] * e % (self.q - 1)]

    def exp(self, i: int) -> int:
        """``alpha ** i``."""
        if self._exp is None:
            return self._pow_slow(self.alpha, i % (self.q - 1))
        return self._exp[i % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete logarithm to base ``alpha``, in ``[0, q-1)``."""
        if a == 0:
            raise FieldError("0 has no discrete logarithm")
        if self._log is not None:
            return self._log[a]
        return self._bsgs_log(a)

    def _bsgs_log(self, a: int) -> int:
        n = self.q - 1
        if self._bsgs is None:
            step = math.isqrt(n) + 1
            baby: Dict[int, int] = {}
            x = 1
            for j in range(step):
                baby.setdefault(x, j)
                x = self._mul_slow(x, self.alpha)
            self._bsgs = (step, baby)
        step, baby = self._bsgs
        giant = self._pow_slow(self._pow_slow(self.alpha, step), n - 1)
        y = a
        for i in range(step + 1):
            j = baby.get(y)
            if j is not None:
                return (i * step + j) % n
            y = self._mul_slow(y, giant)
        raise FieldError(f"logarithm of {a} not found")

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        n = self.q - 1
        return n // math.gcd(n, self.log(a))

    def subfield_generator(self, s: int) -> int:
        """Generator of GF(p^s)* inside this field; requires ``s | m``."""
        if s < 1 or self.m % s:
            raise FieldError(f"GF({self.p}^{s}) is not a subfield of {self!r}")
        return self.exp((self.q - 1) // (self.p**s - 1))

    # identity

    def _key(self):
        return (self.p, self.m, self.irreducible)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: FieldSpec

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.check(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(v, self.field)

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def log(self) -> int:
        return self.field.log(self.value)

    @property
    def coeffs(self) -> List[int]:
        return self.field.digits(self.value)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


def _read_registry_file(path: str) -> Dict[Tuple[int, int], Tuple[int, ...]]:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].split()
            if not line:
                continue
            p, m, *coeffs = map(int, line)
            if len(coeffs) != m + 1 or coeffs[-1] != 1:
                raise FieldError(f"{path}:{lineno}: need {m + 1} coefficients ending in 1")
            out[(p, m)] = tuple(coeffs)
    return out


def registry_polynomial(p: int, m: int, registry_path: Optional[str] = None) -> Tuple[int, ...]:
    """Irreducible polynomial for GF(p^m), all ``m+1`` coefficients lowest first."""
    if registry_path:
        override = _read_registry_file(registry_path)
        if (p, m) in override:
            return override[(p, m)]
    if m == 1:
        return tuple(_gfp.first_primitive_poly(p, 1))
    if (p, m) not in REGISTRY:
        raise FieldError(f"no registry polynomial for p={p}, m={m}")
    return REGISTRY[(p, m)] + (1,)


def make_field(
    p: int,
    m: int = 1,
    *,
    size_cap: int = DEFAULT_SIZE_CAP,
    table_threshold: int = DEFAULT_TABLE_THRESHOLD,
) -> FieldSpec:
    """Return GF(p^m) built from the registry polynomial.

    ``RSC_FIELD_REGISTRY`` may point to a file overriding registry entries.
    Results are cached, so repeated calls return the same object.
    """
    return _make_field(p, m, size_cap, table_threshold, os.environ.get("RSC_FIELD_REGISTRY") or None)


@lru_cache(maxsize=None)
def _make_field(p, m, size_cap, table_threshold, registry_path) -> FieldSpec:
    if not isinstance(p, int) or not _gfp.is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m!r}")
    if p**m > size_cap:
        raise FieldError(f"field size {p}^{m} exceeds cap {size_cap}")
    poly = registry_polynomial(p, m, registry_path)
    if len(poly) != m + 1 or poly[-1] != 1:
        raise FieldError(f"registry polynomial for ({p}, {m}) is not monic of degree {m}")
    if not _gfp.is_irreducible(list(poly), p):
        raise FieldError(f"registry polynomial {poly} is reducible over GF({p})")
    return FieldSpec(p, m, poly, table_threshold=table_threshold)


def field_of_order(q: int, **kwargs) -> FieldSpec:
    pm = _gfp.prime_power(q)
    if pm is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(*pm, **kwargs)


# sets and subspaces


def gfp_rank(vectors: Iterable[Sequence[int]], p: int) -> int:
    """Rank over GF(p) of integer vectors, by row reduction."""
    rows = [[x % p for x in v] for v in vectors]
    rank = 0
    ncols = max((len(r) for r in rows), default=0)
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def span(field: FieldSpec, basis: Iterable[int]) -> frozenset:
    """All GF(p)-linear combinations of ``basis``."""
    out = {0}
    for b in basis:
        field.check(b)
        multiples = [field.scalar(c, b) for c in range(field.p)]
        out = {field.add(s, t) for s in out for t in multiples}
    return frozenset(out)


def set_sum(field: FieldSpec, E: Iterable[int], F: Iterable[int]) -> frozenset:
    F = list(F)
    return frozenset(field.add(a, b) for a in E for b in F)


def set_product(field: FieldSpec, E: Iterable[int], F: Iterable[int]) -> frozenset:
    F = list(F)
    return frozenset(field.mul(a, b) for a in E for b in F)


@dataclass(frozen=True)
class SubspaceSpec:
    """A GF(p)-subspace of a field, given by a linearly independent basis."""

    field: FieldSpec
    basis: Tuple[int, ...]

    def __post_init__(self):
        basis = tuple(self.field.check(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if gfp_rank((self.field.digits(b) for b in basis), self.field.p) != len(basis):
            raise FieldError("subspace basis is linearly dependent")

    @property
    def v(self) -> int:
        return len(self.basis)

    def elements(self) -> frozenset:
        return span(self.field, self.basis)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.elements()))


def polynomial_basis_subspace(field: FieldSpec, v: int) -> SubspaceSpec:
    """Span of ``1, x, ..., x^(v-1)`` in registry order."""
    if not 0 <= v <= field.m:
        raise FieldError(f"subspace dimension {v} outside [0, {field.m}]")
    return SubspaceSpec(field, tuple(field.p**i for i in range(v)))


def subfield_subspace(field: FieldSpec, s: int) -> SubspaceSpec:
    """GF(p^s) inside ``field`` as a subspace, basis ``1, beta, ..., beta^(s-1)``."""
    beta = field.subfield_generator(s)
    return SubspaceSpec(field, tuple(field.pow(beta, i) for i in range(s)))
