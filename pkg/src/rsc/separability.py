"""Additive and multiplicative (w1, w2)-separability of subsets of a field.

A set U is separable when U is covered by E + F (additive) or E F
(multiplicative) for some E, F contained in U with |E| <= w1 and |F| <= w2.
Witness constructors follow the algebraic arguments for cyclic groups,
elementary abelian groups and subfields; ``search_separable`` is the
exhaustive fallback for small sets.
"""

from __future__ import annotations

import enum
import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .finite_field import FieldSpec, make_field, set_product, set_sum, span


class Mode(str, enum.Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


def r_index(w: int, p: int) -> int:
    """``floor(log_p w)`` by integer arithmetic."""
    if w < 1:
        raise ValueError("w must be positive")
    r = 0
    while p ** (r + 1) <= w:
        r += 1
    return r


@dataclass(frozen=True)
class SepWitness:
    mode: Mode
    E: Tuple[int, ...]
    F: Tuple[int, ...]
    w1: int
    w2: int

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "E", tuple(sorted(set(self.E))))
        object.__setattr__(self, "F", tuple(sorted(set(self.F))))

    def combined(self, field: FieldSpec) -> FrozenSet[int]:
        if self.mode is Mode.ADDITIVE:
            return set_sum(field, self.E, self.F)
        return set_product(field, self.E, self.F)

    def to_dict(self) -> dict:
        return {"mode": self.mode.value, "E": list(self.E), "F": list(self.F), "w1": self.w1, "w2": self.w2}

    @classmethod
    def from_dict(cls, d: dict) -> "SepWitness":
        return cls(Mode(d["mode"]), tuple(d["E"]), tuple(d["F"]), int(d["w1"]), int(d["w2"]))


def covers(field: FieldSpec, U: Iterable[int], w: SepWitness) -> bool:
    """Coverage alone: U is contained in E + F (or E F)."""
    return set(U) <= w.combined(field)


def check_witness(field: FieldSpec, U: Iterable[int], w: SepWitness) -> bool:
    """All witness invariants against the certified set ``U``."""
    U = frozenset(U)
    if not (1 <= len(w.E) <= w.w1 and 1 <= len(w.F) <= w.w2):
        return False
    if not (set(w.E) <= U and set(w.F) <= U):
        return False
    if not all(0 <= x < field.q for x in w.E + w.F):
        return False
    return U <= w.combined(field)


# search


@dataclass(frozen=True)
class SearchBudget:
    """Limits for ``search_separable``.

    ``max_candidates`` counts search-tree nodes, which keeps results
    deterministic; ``time_cap`` (seconds) is only a safety stop.
    """

    max_set_size: int = 4096
    max_candidates: int = 200_000
    time_cap: float = 30.0
    local_search_iters: int = 0
    seed: int = 0

    def __post_init__(self):
        if min(self.max_set_size, self.max_candidates) <= 0 or self.time_cap <= 0:
            raise ValueError("search budget limits must be positive")


@dataclass(frozen=True)
class NotSeparable:
    reason: str


@dataclass(frozen=True)
class BudgetExceeded:
    explored: int
    reason: str = "search budget exhausted"


SearchResult = Union[SepWitness, NotSeparable, BudgetExceeded]


class _OutOfBudget(Exception):
    pass


class _Counter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.time_cap

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_candidates or (
            self.nodes & 1023 == 0 and time.monotonic() > self.deadline
        ):
            raise _OutOfBudget


def _hitting_set(options: List[FrozenSet[int]], limit: int, counter: _Counter, chosen: Tuple[int, ...] = ()):
    """Some set of size <= ``limit`` meeting every option set, or None."""
    counter.tick()
    open_ = [o for o in options if not o.intersection(chosen)]
    if not open_:
        return chosen
    if len(chosen) == limit:
        return None
    tightest = min(open_, key=len)
    for f in sorted(tightest):
        found = _hitting_set(open_, limit, counter, chosen + (f,))
        if found is not None:
            return found
    return None


def _cover_search(
    targets: Sequence[int],
    cands: Sequence[int],
    op: Callable[[int, int], int],
    inv_op: Callable[[int, int], int],
    a: int,
    b: int,
    counter: _Counter,
):
    """Find E, F within ``cands`` (|E| <= a, |F| <= b) with every target equal to op(e, f).

    Supersets never hurt, so E ranges over subsets of size exactly
    min(a, |cands|); F is then a bounded hitting set for the sets
    {inv_op(u, e) : e in E} restricted to ``cands``.
    """
    if a < 1 or b < 1:
        return None
    if len(targets) > a * b:
        return None
    cand_set = frozenset(cands)
    size = min(a, len(cands))
    # elements that can reach many targets first
    reach = {c: sum(1 for u in targets if inv_op(u, c) in cand_set) for c in cands}
    order = sorted(cands, key=lambda c: (-reach[c], c))
    for E in itertools.combinations(order, size):
        counter.tick()
        options = []
        for u in targets:
            o = frozenset(x for x in (inv_op(u, e) for e in E) if x in cand_set)
            if not o:
                break
            options.append(o)
        else:
            F = _hitting_set(options, b, counter)
            if F is not None:
                return tuple(E), tuple(F)
    return None


def _local_search(
    targets: Sequence[int],
    cands: Sequence[int],
    op: Callable[[int, int], int],
    a: int,
    b: int,
    iters: int,
    seed: int,
):
    """Seeded annealing on the number of covered targets. Finds witnesses,
    never proves their absence."""
    if a < 1 or b < 1 or not cands:
        return None
    rng = random.Random(seed)
    target_set = frozenset(targets)
    cands = list(cands)
    a, b = min(a, len(cands)), min(b, len(cands))
    E = rng.sample(cands, a)
    F = rng.sample(cands, b)
    hits: dict = {}

    def bump(x, d):
        if x in target_set:
            hits[x] = hits.get(x, 0) + d

    for e in E:
        for f in F:
            bump(op(e, f), 1)
    covered = sum(1 for v in hits.values() if v > 0)
    goal = len(target_set)
    for it in range(iters):
        if covered == goal:
            return tuple(E), tuple(F)
        temp = 1.5 * (1 - it / iters) + 0.05
        side, other = (E, F) if rng.random() < 0.5 else (F, E)
        i = rng.randrange(len(side))
        old, new = side[i], rng.choice(cands)
        if new in side:
            continue
        delta = 0
        for y in other:
            x = op(old, y) if side is E else op(y, old)
            if x in target_set:
                hits[x] -= 1
                if hits[x] == 0:
                    delta -= 1
        for y in other:
            x = op(new, y) if side is E else op(y, new)
            if x in target_set:
                hits[x] = hits.get(x, 0) + 1
                if hits[x] == 1:
                    delta += 1
        if delta >= 0 or rng.random() < pow(2.718281828, delta / temp):
            side[i] = new
            covered += delta
        else:
            for y in other:
                x = op(new, y) if side is E else op(y, new)
                if x in target_set:
                    hits[x] -= 1
            for y in other:
                x = op(old, y) if side is E else op(y, old)
                if x in target_set:
                    hits[x] += 1
    if covered == goal:
        return tuple(E), tuple(F)
    return None


def _placements(field: FieldSpec, U: FrozenSet[int], w1: int, w2: int, mode: Mode):
    """Reduce a separability question to group-cover problems.

    Yields ``(targets, cands, op, inv_op, a, b, decode)`` where ``decode``
    maps a group solution back to field sets E, F. In multiplicative mode
    the nonzero part is handled in the exponent group Z/(q-1); a zero in U
    must sit in E or F, where it covers only itself, so both placements
    are tried (F first).
    """
    if mode is Mode.ADDITIVE:
        ident = lambda E, F: (E, F)  # noqa: E731
        yield sorted(U), sorted(U), field.add, field.sub, w1, w2, ident
        return
    n = field.q - 1
    nz = sorted(x for x in U if x)
    logs = [field.log(x) for x in nz]
    add = lambda x, y: (x + y) % n  # noqa: E731
    sub = lambda x, y: (x - y) % n  # noqa: E731

    def decoder(zero_in):
        def decode(E, F):
            E = tuple(field.exp(x) for x in E)
            F = tuple(field.exp(x) for x in F)
            if zero_in == "E":
                E += (0,)
            elif zero_in == "F":
                F += (0,)
            return E, F

        return decode

    if 0 not in U:
        yield logs, logs, add, sub, w1, w2, decoder(None)
        return
    yield logs, logs, add, sub, w1, w2 - 1, decoder("F")
    yield logs, logs, add, sub, w1 - 1, w2, decoder("E")


def search_separable(
    field: FieldSpec,
    U: Iterable[int],
    w1: int,
    w2: int,
    mode: Union[Mode, str] = Mode.ADDITIVE,
    budget: Optional[SearchBudget] = None,
) -> SearchResult:
    """Decide separability of ``U`` by exhaustive search within ``budget``.

    Returns a checked ``SepWitness``, ``NotSeparable`` (every candidate pair
    was ruled out), or ``BudgetExceeded`` (inconclusive).
    """
    mode = Mode(mode)
    budget = budget or SearchBudget()
    U = frozenset(field.check(x) for x in U)
    if not U:
        raise ValueError("U must be nonempty")
    if len(U) > w1 * w2:
        return NotSeparable(f"|U| = {len(U)} exceeds w1*w2 = {w1 * w2}")
    if mode is Mode.MULTIPLICATIVE and U == {0}:
        return _finish(field, U, SepWitness(mode, (0,), (0,), w1, w2))
    if len(U) > budget.max_set_size:
        return BudgetExceeded(0, f"|U| = {len(U)} exceeds max_set_size")

    counter = _Counter(budget)
    placements = list(_placements(field, U, w1, w2, mode))
    exhausted = True
    for targets, cands, op, inv_op, a, b, decode in placements:
        try:
            found = _cover_search(targets, cands, op, inv_op, a, b, counter)
        except _OutOfBudget:
            exhausted = False
            break
        if found is not None:
            return _finish(field, U, SepWitness(mode, *decode(*found), w1, w2))
    if exhausted:
        return NotSeparable("exhaustive search found no cover")
    if budget.local_search_iters:
        for targets, cands, op, inv_op, a, b, decode in placements:
            found = _local_search(targets, cands, op, a, b, budget.local_search_iters, budget.seed)
            if found is not None:
                return _finish(field, U, SepWitness(mode, *decode(*found), w1, w2))
    return BudgetExceeded(counter.nodes)


def _finish(field: FieldSpec, U, w: SepWitness) -> SepWitness:
    if not check_witness(field, U, w):
        raise AssertionError(f"constructed witness fails its own check: {w}")
    return w


# constructions


def witness_mult_cyclic(field: FieldSpec, gamma: int, t: int, w1: int, w2: int) -> Optional[SepWitness]:
    """E = {gamma^(i w2) : i < w1}, F = {gamma^j : j < w2} for the cyclic
    group generated by ``gamma`` of order ``t``; None when t > w1 w2."""
    if gamma == 0 or field.order(gamma) != t:
        raise ValueError(f"{gamma} does not have multiplicative order {t}")
    if t > w1 * w2:
        return None
    E = {field.pow(gamma, i * w2) for i in range(w1)}
    F = {field.pow(gamma, j) for j in range(w2)}
    group = {field.pow(gamma, i) for i in range(t)}
    return _finish(field, group, SepWitness(Mode.MULTIPLICATIVE, tuple(E), tuple(F), w1, w2))


def _split_witness(field: FieldSpec, basis: Sequence[int], a: int, w1: int, w2: int) -> SepWitness:
    E = span(field, basis[:a])
    F = span(field, basis[a:])
    return _finish(field, span(field, basis), SepWitness(Mode.ADDITIVE, tuple(E), tuple(F), w1, w2))


def witness_add_subgroups(field: FieldSpec, basis: Sequence[int], w1: int, w2: int) -> Optional[SepWitness]:
    """Split an elementary abelian group of order p^(r1+r2) into subgroups
    of orders p^r1 and p^r2 along its basis (registry order)."""
    r1, r2 = r_index(w1, field.p), r_index(w2, field.p)
    if len(basis) != r1 + r2:
        return None
    return _split_witness(field, basis, r1, w1, w2)


def prop32_condition(p: int, w1: int, w2: int, rational: bool = False) -> bool:
    """``[w1/p^r1] * [w2/p^r2] >= p`` with brackets read as floor, or as
    exact division when ``rational``."""
    r1, r2 = r_index(w1, p), r_index(w2, p)
    if rational:
        return Fraction(w1, p**r1) * Fraction(w2, p**r2) >= p
    return (w1 // p**r1) * (w2 // p**r2) >= p


def witness_prop32(field: FieldSpec, basis: Sequence[int], w1: int, w2: int) -> Optional[SepWitness]:
    """Cover a group of order p^(r1+r2+1) when the floored quotients of
    w1, w2 by p^r1, p^r2 multiply to at least p.

    With H = E + F + <g>, the cyclic factor is split as
    P1 = {(i b2) g : i < b1} and P2 = {j g : j < b2}, and the witness is
    (E + P1, F + P2).
    """
    p = field.p
    r1, r2 = r_index(w1, p), r_index(w2, p)
    if len(basis) != r1 + r2 + 1 or not prop32_condition(p, w1, w2):
        return None
    b1, b2 = w1 // p**r1, w2 // p**r2
    g = basis[-1]
    P1 = [field.scalar(i * b2, g) for i in range(b1)]
    P2 = [field.scalar(j, g) for j in range(b2)]
    E = set_sum(field, span(field, basis[:r1]), P1)
    F = set_sum(field, span(field, basis[r1 : r1 + r2]), P2)
    return _finish(field, span(field, basis), SepWitness(Mode.ADDITIVE, tuple(E), tuple(F), w1, w2))


def lemma31_branches(p: int, s: int, w1: int, w2: int, rational: bool = False) -> Tuple[int, ...]:
    """Which of the three sufficient conditions for GF(p^s) hold.

    1: s <= r1 + r2.  2: ``prop32_condition``, which only covers
    s <= r1 + r2 + 1.  3: w1 w2 - w2 >= p^s.
    """
    r1, r2 = r_index(w1, p), r_index(w2, p)
    out = []
    if s <= r1 + r2:
        out.append(1)
    if s <= r1 + r2 + 1 and prop32_condition(p, w1, w2, rational):
        out.append(2)
    if w1 * w2 - w2 >= p**s:
        out.append(3)
    return tuple(out)


def subfield_witness(field: FieldSpec, s: int, w1: int, w2: int) -> Optional[SepWitness]:
    """Witness that the subfield GF(p^s) of ``field`` is (w1, w2)-separable,
    via the first applicable branch; None if no branch applies."""
    branches = lemma31_branches(field.p, s, w1, w2)
    if not branches:
        return None
    beta = field.subfield_generator(s)
    basis = [field.pow(beta, i) for i in range(s)]
    r1, r2 = r_index(w1, field.p), r_index(w2, field.p)
    if branches[0] == 1:
        return _split_witness(field, basis, min(r1, s), w1, w2)
    if branches[0] == 2:
        if s <= r1 + r2:
            return _split_witness(field, basis, min(r1, s), w1, w2)
        return witness_prop32(field, basis, w1, w2)
    return _finish(field, span(field, basis), _third_branch(field, beta, w1, w2))


def _third_branch(field: FieldSpec, beta: int, w1: int, w2: int) -> SepWitness:
    sub = {0} | {field.pow(beta, i) for i in range(field.order(beta))}
    # E = {beta^(i (w2-1)) : i < w1}, F' = {beta^j : j <= w2-2} + {0}
    E = {field.pow(beta, i * (w2 - 1)) for i in range(w1)}
    F = {field.pow(beta, j) for j in range(w2 - 1)} | {0}
    w = SepWitness(Mode.MULTIPLICATIVE, tuple(E), tuple(F), w1, w2)
    if covers(field, sub, w):
        return w
    # E F' above reaches only w1 (w2 - 1) powers; with zero in E instead,
    # (w1 - 1) w2 = w1 w2 - w2 powers are reached, which the condition bounds.
    E = {field.pow(beta, i * w2) for i in range(w1 - 1)} | {0}
    F = {field.pow(beta, j) for j in range(w2)}
    return SepWitness(Mode.MULTIPLICATIVE, tuple(E), tuple(F), w1, w2)


def field_separable_lemma31(p: int, s: int, w1: int, w2: int) -> Optional[SepWitness]:
    """Witness that GF(p^s) itself is (w1, w2)-separable, or None when none
    of the three sufficient conditions applies (which is not a disproof)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return subfield_witness(make_field(p, s), s, w1, w2)
