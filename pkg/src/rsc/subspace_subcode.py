"""Subspace subcodes of Reed-Solomon codes over GF(2^m).

The subcode of RS_k(q) with a GF(2)-subspace S keeps the codewords whose
components all lie in S; it is a binary linear space of dimension K. This
module computes the cyclotomic-coset lower bound L(k, v) and K itself, the
latter as a kernel dimension over GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .finite_field import FieldSpec, SubspaceSpec, make_field, polynomial_basis_subspace, subfield_subspace
from .rs_code import Polynomial, RsSpec, codewords
from .separability import lemma31_branches

EXACT_M_CAP = 12
EXACT_K_CAP = 64


class SubcodeError(ValueError):
    pass


@dataclass(frozen=True)
class CyclotomicCoset:
    leader: int
    elements: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=None)
def cyclotomic_cosets(m: int) -> Tuple[CyclotomicCoset, ...]:
    """Orbits of doubling modulo n = 2^m - 1, ordered by leader."""
    if m < 1:
        raise SubcodeError("m must be >= 1")
    n = 2**m - 1
    seen = bytearray(n)
    out = []
    for j in range(n):
        if seen[j]:
            continue
        orbit = []
        x = j
        while not seen[x]:
            seen[x] = 1
            orbit.append(x)
            x = 2 * x % n
        out.append(CyclotomicCoset(j, tuple(sorted(orbit))))
    return tuple(out)


def coset_of(m: int, j: int) -> CyclotomicCoset:
    j %= 2**m - 1
    return next(c for c in cyclotomic_cosets(m) if j in c.elements)


@dataclass(frozen=True)
class CosetTerm:
    j: int
    d: int
    e: int
    a: int
    term: int


@dataclass(frozen=True)
class SsrsDims:
    m: int
    k: int
    v: int
    L: int
    K: Optional[int] = None
    table: Tuple[CosetTerm, ...] = ()

    def term(self, j: int) -> CosetTerm:
        return next(t for t in self.table if t.j == j)


def lower_bound_L(m: int, k: int, v: int) -> SsrsDims:
    """L(k, v) = sum over coset leaders j of max(d_j (a_j - (m - v)), 0),
    with e_j = |coset_j intersected with J|, J = {1..k} read mod n, and
    a_j = m e_j / d_j. At k = n the residue of n is 0, so L(n, m) = m n."""
    n = 2**m - 1
    if not 1 <= k <= n:
        raise SubcodeError(f"k={k} outside [1, {n}]")
    if not 0 <= v <= m:
        raise SubcodeError(f"v={v} outside [0, {m}]")
    J = {j % n for j in range(1, k + 1)}
    table = []
    total = 0
    for c in cyclotomic_cosets(m):
        e = sum(1 for x in c.elements if x in J)
        a, rem = divmod(m * e, c.size)
        if rem:
            raise AssertionError(f"a_j not integral for coset {c.leader} (m={m})")
        term = max(c.size * (a - (m - v)), 0)
        total += term
        table.append(CosetTerm(c.leader, c.size, e, a, term))
    return SsrsDims(m, k, v, total, None, tuple(table))


def canonical_subspace(field: FieldSpec, v: int) -> SubspaceSpec:
    """GF(2^v) itself when it is a subfield, else the span of the first v
    polynomial-basis vectors."""
    if v >= 1 and field.m % v == 0:
        return subfield_subspace(field, v)
    return polynomial_basis_subspace(field, v)


def _parity_checks(field: FieldSpec, S: SubspaceSpec) -> List[int]:
    """(m - v) functionals over GF(2) whose common kernel is S."""
    return gf2.nullspace(S.basis, field.m)


def _constraint_rows(field: FieldSpec, exponents: Sequence[int], S: SubspaceSpec) -> List[int]:
    """One row per (evaluation point, parity check); columns are the m bits
    of each unknown coefficient f_j, j in ``exponents``."""
    checks = _parity_checks(field, S)
    if not checks:
        return []
    n, m = field.q - 1, field.m
    exp_table = np.array([field.exp(i) for i in range(n)], dtype=np.int64)
    basis_logs = np.array([field.log(1 << b) for b in range(m)], dtype=np.int64)
    i = np.arange(n, dtype=np.int64)[:, None]
    # column idx*m + b: the coefficient x^b on monomial j, evaluated at alpha^i
    col_logs = np.tile(basis_logs, len(exponents))
    col_exps = np.repeat(np.array(exponents, dtype=np.int64), m)
    vals = exp_table[(col_logs[None, :] + i * col_exps[None, :]) % n]
    ncols = vals.shape[1]
    rows = []
    for h in checks:
        parity = np.array([gf2.dot(x, h) for x in range(field.q)], dtype=np.uint8)
        packed = np.packbits(parity[vals][:, ::-1], axis=1)
        pad = packed.shape[1] * 8 - ncols
        rows.extend(int.from_bytes(r.tobytes(), "big") >> pad for r in packed)
    return rows


def _check_exact_caps(field: FieldSpec, k: int) -> None:
    if field.p != 2:
        raise SubcodeError("subspace subcodes are computed over GF(2^m) only")
    if field.m > EXACT_M_CAP or k > EXACT_K_CAP:
        raise SubcodeError(f"exact computation capped at m <= {EXACT_M_CAP}, k <= {EXACT_K_CAP}")
    if not 1 <= k <= field.q - 1:
        raise SubcodeError(f"k={k} outside [1, {field.q - 1}]")


def exact_K(field: FieldSpec, k: int, S: SubspaceSpec, exponents: Optional[Sequence[int]] = None) -> int:
    """Binary dimension of the subcode of RS_k(q) inside S^n.

    K = m k - rank of the GF(2) system stating that every f(alpha^i) lies
    in S. ``exponents`` defaults to {0, ..., k-1}, the monomials spanning
    P_k; the coset bound L(k, v) is phrased over {1, ..., k}.
    """
    _check_exact_caps(field, k)
    exps = list(range(k)) if exponents is None else list(exponents)
    rows = _constraint_rows(field, exps, S)
    return field.m * len(exps) - gf2.rank(rows)


def subcode_basis(field: FieldSpec, k: int, S: SubspaceSpec, exponents: Optional[Sequence[int]] = None) -> List[Polynomial]:
    """Polynomials whose evaluation vectors span the subcode over GF(2)."""
    _check_exact_caps(field, k)
    exps = list(range(k)) if exponents is None else list(exponents)
    m = field.m
    rows = _constraint_rows(field, exps, S)
    out = []
    for vec in gf2.nullspace(rows, m * len(exps)):
        terms = {}
        for idx, j in enumerate(exps):
            terms[j] = (vec >> (idx * m)) & ((1 << m) - 1)
        out.append(Polynomial.from_terms(field, terms))
    return out


def enumerated_K(field: FieldSpec, k: int, S: SubspaceSpec, guard: int = 10**6) -> int:
    """K by listing every codeword of RS_k(q) and counting those inside S^n."""
    members = S.elements()
    count = sum(1 for c in codewords(RsSpec(field, k), guard=guard) if all(x in members for x in c))
    K = count.bit_length() - 1
    if count != 1 << K:
        raise AssertionError(f"subcode size {count} is not a power of 2")
    return K


def is_nontrivial(m: int, k: int, v: int, exact: bool = False) -> bool:
    """K(C, S) > v, decided by L(k, v) > v, optionally refined with exact K
    on the canonical subspace when the bound is inconclusive."""
    if lower_bound_L(m, k, v).L > v:
        return True
    if not exact:
        return False
    field = make_field(2, m)
    return exact_K(field, k, canonical_subspace(field, v)) > v


def best_v(w1: int, w2: int, m: Optional[int] = None) -> Optional[int]:
    """Largest v with 2^v <= w1 w2 for which GF(2^v) is provably
    (w1, w2)-separable; capped at ``m`` when given."""
    top = (w1 * w2).bit_length() - 1
    if m is not None:
        top = min(top, m)
    for v in range(top, 0, -1):
        if lemma31_branches(2, v, w1, w2):
            return v
    return None
