"""Brute-force collusion-secure properties of explicit codes.

Words are tuples of symbols in ``[0, q)``. Coalitions are enumerated in
lexicographic order of codeword indices and the first counterexample found
is returned, so results are deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .finite_field import FieldSpec
from .separability import Mode, SepWitness, covers

Word = Tuple[int, ...]

DEFAULT_GUARD = 10**8


class CollusionError(ValueError):
    pass


@dataclass(frozen=True)
class ExplicitCode:
    words: Tuple[Word, ...]
    q: int

    def __post_init__(self):
        words = tuple(tuple(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if not words:
            raise CollusionError("a code needs at least one word")
        n = len(words[0])
        if n < 2:
            raise CollusionError("word length must be at least 2")
        if any(len(w) != n for w in words):
            raise CollusionError("words have different lengths")
        if len(set(words)) != len(words):
            raise CollusionError("duplicate codewords")
        if any(not 0 <= x < self.q for w in words for x in w):
            raise CollusionError(f"symbols must lie in [0, {self.q})")

    @property
    def n(self) -> int:
        return len(self.words[0])

    def __len__(self):
        return len(self.words)

    def minimum_distance(self) -> int:
        if len(self.words) < 2:
            return self.n
        return min(hamming(a, b) for a, b in itertools.combinations(self.words, 2))


def hamming(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a != b for a, b in zip(x, y))


def separating_bound_holds(code: ExplicitCode, w1: int, w2: int) -> bool:
    """d > n (1 - 1/(w1 w2)), sufficient for (w1, w2)-separation."""
    return code.minimum_distance() > code.n * (1 - Fraction(1, w1 * w2))


def ta_bound_holds(code: ExplicitCode, w: int) -> bool:
    """d > n (1 - 1/w^2), sufficient for w-TA (hence w-IPP)."""
    return separating_bound_holds(code, w, w)


# descendants


def in_descendant(x: Sequence[int], U: Iterable[Sequence[int]]) -> bool:
    U = list(U)
    if not U:
        return False
    if any(len(y) != len(x) for y in U):
        raise CollusionError("length mismatch")
    return all(any(y[i] == xi for y in U) for i, xi in enumerate(x))


def descendant_set(U: Iterable[Sequence[int]], guard: int = 10**6) -> Iterator[Word]:
    """Lazily enumerate desc(U) in lexicographic order of position choices."""
    U = list(U)
    if not U:
        return iter(())
    alphabets = [sorted({y[i] for y in U}) for i in range(len(U[0]))]
    size = math.prod(len(a) for a in alphabets)
    if size > guard:
        raise CollusionError(f"|desc U| = {size} exceeds guard {guard}")
    return itertools.product(*alphabets)


# verdicts


@dataclass(frozen=True)
class NonSepWitness:
    U1: Tuple[Word, ...]
    U2: Tuple[Word, ...]
    x: Word

    def verify(self, w1: int, w2: int, code: Optional[Iterable[Word]] = None) -> bool:
        U1, U2 = set(self.U1), set(self.U2)
        if not (1 <= len(U1) <= w1 and 1 <= len(U2) <= w2) or U1 & U2:
            return False
        if code is not None:
            words = set(code)
            if not (U1 <= words and U2 <= words):
                return False
        return in_descendant(self.x, U1) and in_descendant(self.x, U2)

    def to_dict(self) -> dict:
        return {"U1": [list(w) for w in self.U1], "U2": [list(w) for w in self.U2], "x": list(self.x)}


@dataclass(frozen=True)
class Holds:
    checked: int = 0


@dataclass(frozen=True)
class Fails:
    witness: object


@dataclass(frozen=True)
class GuardExceeded:
    estimate: int


@dataclass(frozen=True)
class IppCounterexample:
    x: Word
    coalitions: Tuple[Tuple[Word, ...], ...]

    def to_dict(self) -> dict:
        return {"x": list(self.x), "coalitions": [[list(w) for w in c] for c in self.coalitions]}


@dataclass(frozen=True)
class TaCounterexample:
    x: Word
    coalition: Tuple[Word, ...]
    z: Word

    def to_dict(self) -> dict:
        return {"x": list(self.x), "coalition": [list(w) for w in self.coalition], "z": list(self.z)}


Verdict = Union[Holds, Fails, GuardExceeded]


def _n_subsets(n: int, w: int) -> int:
    return sum(math.comb(n, i) for i in range(1, min(w, n) + 1))


def _subsets(n: int, w: int) -> Iterator[Tuple[int, ...]]:
    for size in range(1, min(w, n) + 1):
        yield from itertools.combinations(range(n), size)


def is_separating(code: ExplicitCode, w1: int, w2: int, guard: int = DEFAULT_GUARD) -> Verdict:
    """Exhaustive (w1, w2)-separation check over all disjoint coalition pairs.

    desc(U1) and desc(U2) meet exactly when, at every position, some symbol
    is used by both coalitions; that test runs on per-position bitmasks.
    """
    N, n = len(code), code.n
    estimate = _n_subsets(N, w1) * _n_subsets(N, w2) * n
    if estimate > guard:
        return GuardExceeded(estimate)
    words = code.words

    def masks(idx):
        return tuple(sum_bits(words[j][i] for j in idx) for i in range(n))

    m2_cache = {idx: masks(idx) for idx in _subsets(N, w2)}
    checked = 0
    for idx1 in _subsets(N, w1):
        m1 = masks(idx1)
        s1 = set(idx1)
        for idx2, m2 in m2_cache.items():
            checked += 1
            if s1.intersection(idx2):
                continue
            if all(a & b for a, b in zip(m1, m2)):
                x = tuple((a & b & -(a & b)).bit_length() - 1 for a, b in zip(m1, m2))
                wit = NonSepWitness(tuple(words[j] for j in idx1), tuple(words[j] for j in idx2), x)
                assert wit.verify(w1, w2)
                return Fails(wit)
    return Holds(checked)


def sum_bits(symbols: Iterable[int]) -> int:
    m = 0
    for s in symbols:
        m |= 1 << s
    return m


def _match_masks(code: ExplicitCode, x: Word) -> List[int]:
    """Bit i of entry j is set when codeword j agrees with x at position i."""
    return [sum(1 << i for i, (a, b) in enumerate(zip(y, x)) if a == b) for y in code.words]


def is_ipp(code: ExplicitCode, w: int, guard: int = DEFAULT_GUARD) -> Verdict:
    """Exhaustive w-IPP check: for every word x, the coalitions of size <= w
    whose descendant sets contain x must share a member."""
    N, n = len(code), code.n
    alphabets = [sorted({y[i] for y in code.words}) for i in range(n)]
    n_words = math.prod(len(a) for a in alphabets)
    estimate = n_words * _n_subsets(N, w)
    if estimate > guard:
        return GuardExceeded(estimate)
    full = (1 << n) - 1
    subsets = list(_subsets(N, w))
    # words using a symbol absent from a column lie in no descendant set
    for x in itertools.product(*alphabets):
        match = _match_masks(code, x)
        common = (1 << N) - 1
        seen = []
        for idx in subsets:
            acc = 0
            for j in idx:
                acc |= match[j]
            if acc != full:
                continue
            seen.append(idx)
            common &= sum(1 << j for j in idx)
            if not common:
                return Fails(IppCounterexample(tuple(x), _minimal_disjoint(seen, code)))
    return Holds(n_words)


def _minimal_disjoint(coalitions: List[Tuple[int, ...]], code: ExplicitCode):
    """A short sub-list of ``coalitions`` whose intersection is already empty."""
    chosen = [coalitions[-1]]
    common = set(coalitions[-1])
    for idx in coalitions[:-1]:
        shrunk = common.intersection(idx)
        if shrunk != common:
            chosen.append(idx)
            common = shrunk
        if not common:
            break
    return tuple(tuple(code.words[j] for j in idx) for idx in chosen)


def is_ta(code: ExplicitCode, w: int, guard: int = DEFAULT_GUARD) -> Verdict:
    """Exhaustive w-TA check: for each coalition U and x in desc(U), some
    member of U must be strictly closer to x than every non-member."""
    N, n = len(code), code.n
    estimate = _n_subsets(N, w) * min(w, N) ** n * N
    if estimate > guard:
        return GuardExceeded(estimate)
    words = code.words
    checked = 0
    for idx in _subsets(N, w):
        inside = set(idx)
        for x in descendant_set([words[j] for j in idx], guard=guard):
            checked += 1
            dist = [hamming(x, y) for y in words]
            outside = [j for j in range(N) if j not in inside]
            if not outside:
                continue
            z = min(outside, key=lambda j: (dist[j], j))
            if not any(dist[j] < dist[z] for j in idx):
                return Fails(TaCounterexample(tuple(x), tuple(words[j] for j in idx), words[z]))
    return Holds(checked)


# non-separation from a separable image


def witness_from_separable_image(field: FieldSpec, c: Sequence[int], sep: SepWitness) -> NonSepWitness:
    """Two disjoint coalitions with a common descendant, from a codeword ``c``
    whose image is covered by ``sep``. The code must be linear and contain
    the all-ones word; only coverage of Im c is needed, not E, F inside it.

    Additive: U1 = {b 1 : b in E}, U2 = {c - g 1 : g in F}, x_i = b_i where
    c_i = b_i + g_i.

    Multiplicative: the side holding 0 (if any) becomes the constants Z, the
    other side D (without 0) supplies the scalar multiples {d^-1 c}. With
    c_i = z_i d_i one takes x_i = z_i; where c_i = 0, x_i = 0 from the zero
    constant, which every d^-1 c also carries there.
    """
    c = tuple(c)
    n = len(c)
    if len(set(c)) < 2:
        raise CollusionError("|Im c| < 2: constant codeword")
    if not covers(field, set(c), sep):
        raise CollusionError("witness does not cover Im c")
    const = lambda b: (b,) * n  # noqa: E731
    if sep.mode is Mode.ADDITIVE:
        split = {}
        for b in sep.E:
            for g in sep.F:
                split.setdefault(field.add(b, g), b)
        x = [split[ci] for ci in c]
        U1 = tuple(const(b) for b in sep.E)
        U2 = tuple(tuple(field.sub(ci, g) for ci in c) for g in sep.F)
        wit = NonSepWitness(U1, U2, tuple(x))
    else:
        zero_side = "F" if 0 in sep.F else "E"
        Z, D = (sep.F, sep.E) if zero_side == "F" else (sep.E, sep.F)
        D = tuple(d for d in D if d)
        if not D:
            raise CollusionError("multiplicative witness has no nonzero factor")
        split = {0: 0}
        for z in Z:
            if z:
                for d in D:
                    split.setdefault(field.mul(z, d), z)
        x = [split[ci] for ci in c]
        consts = tuple(const(z) for z in Z)
        mults = tuple(tuple(field.mul(field.inv(d), ci) for ci in c) for d in D)
        if zero_side == "F":
            wit = NonSepWitness(mults, consts, tuple(x))
        else:
            wit = NonSepWitness(consts, mults, tuple(x))
    if not wit.verify(sep.w1, sep.w2):
        raise AssertionError("image construction produced an invalid witness")
    return wit
