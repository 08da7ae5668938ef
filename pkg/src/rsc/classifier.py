"""Rule chain deciding whether RS_k(q) at the threshold dimension is provably
not (w1, w2)-separating, and the grid renderer built on it.

For (q, w1, w2) the threshold dimension is k = ceil((q-1)/(w1 w2)) + 1, the
smallest k violating d > n - n/(w1 w2). Each rule is a sufficient condition
for non-separation at that k; by nesting (RS_k inside RS_{k+1}) a verdict at
k carries over to every larger dimension.
"""

from __future__ import annotations

import enum
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ._gfp import prime_power
from .collusion import (
    ExplicitCode,
    Fails,
    Holds,
    NonSepWitness,
    is_separating,
    witness_from_separable_image,
)
from .finite_field import FieldSpec, field_of_order, make_field, polynomial_basis_subspace, span
from .rs_code import (
    Polynomial,
    RsSpec,
    additive_image_basis,
    codewords,
    evaluate_at_powers,
    linearized_monomial,
    subspace_polynomial,
    threshold_k,
    trace_polynomial,
)
from .separability import (
    BudgetExceeded,
    Mode,
    SearchBudget,
    SepWitness,
    check_witness,
    covers,
    lemma31_branches,
    prop32_condition,
    r_index,
    search_separable,
    subfield_witness,
    witness_mult_cyclic,
    witness_prop32,
)
from .subspace_subcode import EXACT_K_CAP, EXACT_M_CAP, best_v, canonical_subspace, lower_bound_L, subcode_basis

WITNESS_CAP = 2**12
ORACLE_CAP = 13


class ClassifyError(ValueError):
    pass


class Status(str, enum.Enum):
    TRIVIAL = "Trivial"
    RESOLVED = "Resolved"
    PENDING = "Pending"


class Rule(str, enum.Enum):
    T1_1 = "T1.1"
    T1_2 = "T1.2"
    P2_1 = "P2.1"
    T3_1 = "T3.1"
    T4_1 = "T4.1"
    BRUTE = "BruteForce"


LABELS = {
    Rule.T1_1: "[fcsd]",
    Rule.T1_2: "[mfs]",
    Rule.P2_1: "[mfs]",
    Rule.T3_1: "3.1",
    Rule.T4_1: "4.1",
    Rule.BRUTE: "bf",
}
TRIVIAL_LABEL = "*"
PENDING_LABEL = "-"

# the reference grid: columns q, rows w (ranges share one printed cell)
GRID_Q = (16, 32, 64, 81, 125, 128, 243, 256, 512, 1024, 2048, 2187)
GRID_W_ROWS: Tuple[Tuple[int, ...], ...] = (
    (2,), (3,), (4,), (5,), (7,), (9,), (10,), (12,), (13,), (14, 15), (17,), (18,),
    (19, 20, 21, 22), (24,), (28, 29, 30, 31), tuple(range(34, 41)),
)


@dataclass(frozen=True)
class RuleCheck:
    """One rule's precondition evaluation; ``detail`` records the arithmetic."""

    rule: Rule
    fires: bool
    detail: str


@dataclass
class Verdict:
    q: int
    w1: int
    w2: int
    k: int
    status: Status
    rule: Optional[Rule] = None
    all_rules: Tuple[Rule, ...] = ()
    checks: Tuple[RuleCheck, ...] = ()
    witness: Optional[NonSepWitness] = None
    sep_witness: Optional[SepWitness] = None
    polynomial: Optional[Tuple[int, ...]] = None
    notes: List[str] = dc_field(default_factory=list)
    rational_label: Optional[str] = None

    @property
    def label(self) -> str:
        if self.status is Status.TRIVIAL:
            return TRIVIAL_LABEL
        if self.status is Status.PENDING:
            return PENDING_LABEL
        return LABELS[self.rule]

    @property
    def reading_sensitive(self) -> bool:
        """True when reading the bracket in the product condition as exact
        division instead of floor would change the label."""
        return self.rational_label is not None and self.rational_label != self.label

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "w1": self.w1,
            "w2": self.w2,
            "k": self.k,
            "status": self.status.value,
            "rule": self.rule.value if self.rule else None,
            "label": self.label,
            "all_rules": [r.value for r in self.all_rules],
            "checks": [{"rule": c.rule.value, "fires": c.fires, "detail": c.detail} for c in self.checks],
            "polynomial": list(self.polynomial) if self.polynomial is not None else None,
            "sep_witness": self.sep_witness.to_dict() if self.sep_witness else None,
            "witness": self.witness.to_dict() if self.witness else None,
            "notes": list(self.notes),
            "rational_label": self.rational_label,
        }


# preconditions


def _log_p(x: int, p: int) -> Optional[int]:
    t = 0
    while x % p == 0:
        x //= p
        t += 1
    return t if x == 1 else None


def _check_args(q: int, w1: int, w2: int) -> Tuple[int, int]:
    pm = prime_power(q)
    if pm is None:
        raise ClassifyError(f"q={q} is not a prime power")
    if w2 < 1 or w1 < 2 or w1 < w2:
        raise ClassifyError("need w1 >= 2 and w1 >= w2 >= 1")
    return pm


def rule_checks(q: int, w1: int, w2: int, rational: bool = False) -> Tuple[RuleCheck, ...]:
    """Evaluate every rule at the threshold dimension, in precedence order."""
    p, m = _check_args(q, w1, w2)
    k = threshold_k(q, w1, w2)
    out = []

    out.append(RuleCheck(Rule.T1_1, (q - 1) % (k - 1) == 0, f"k-1={k - 1}, q-1={q - 1}"))
    out.append(RuleCheck(Rule.T1_2, w1 == w2 and q % w1 == 0, f"w={w1}, q={q}" if w1 == w2 else "needs w1 = w2"))
    out.append(RuleCheck(Rule.P2_1, q % (w1 * w2) == 0, f"w1*w2={w1 * w2}, q={q}"))

    t = _log_p(k - 1, p)
    if t is None or t > m:
        out.append(RuleCheck(Rule.T3_1, False, f"k-1={k - 1} does not divide q"))
    else:
        s = m - t
        br = lemma31_branches(p, s, w1, w2, rational)
        out.append(RuleCheck(Rule.T3_1, bool(br), f"q/(k-1)={p}^{s}, branches {list(br)}"))

    if p != 2:
        out.append(RuleCheck(Rule.T4_1, False, "odd characteristic"))
    else:
        v = _best_v(w1, w2, m, rational)
        if v is None:
            out.append(RuleCheck(Rule.T4_1, False, "no admissible v"))
        else:
            L = lower_bound_L(m, k, v).L
            out.append(RuleCheck(Rule.T4_1, L > v, f"v={v}, L(k,v)={L}"))
    return tuple(out)


def _best_v(w1: int, w2: int, m: int, rational: bool) -> Optional[int]:
    if not rational:
        return best_v(w1, w2, m)
    top = min((w1 * w2).bit_length() - 1, m)
    return next((v for v in range(top, 0, -1) if lemma31_branches(2, v, w1, w2, True)), None)


def _first_label(checks: Sequence[RuleCheck]) -> str:
    fired = [c.rule for c in checks if c.fires]
    return LABELS[fired[0]] if fired else PENDING_LABEL


# witnesses


def _additive_polynomial(field: FieldSpec, t: int) -> Polynomial:
    """Linearized polynomial of degree p^t with a t-dimensional kernel."""
    if t and field.m % t == 0:
        return linearized_monomial(field, t)
    return subspace_polynomial(field, polynomial_basis_subspace(field, t).basis)


@lru_cache(maxsize=None)
def _quotient_cover(p: int, a: int, x1: int, x2: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Sets of sizes <= x1, x2 in Z_p^a (digit-encoded) whose sumset is everything."""
    if a == 0:
        return (0,), (0,)
    if x1 * x2 < p**a:
        return None
    budget = SearchBudget(max_candidates=20_000, time_cap=120.0, local_search_iters=50_000, seed=0)
    res = search_separable(make_field(p, a), range(p**a), x1, x2, Mode.ADDITIVE, budget)
    if isinstance(res, SepWitness):
        return res.E, res.F
    return None


def additive_cover(field: FieldSpec, basis: Sequence[int], w1: int, w2: int) -> Optional[SepWitness]:
    """Cover span(basis) = E + F with |E| <= w1, |F| <= w2.

    Tries the subgroup split, the cyclic-factor split, then a product
    construction: subgroups of orders p^b1, p^b2 along the basis plus a
    cover of the remaining Z_p^a found by exhaustive search.
    """
    p, s = field.p, len(basis)
    r1, r2 = r_index(w1, p), r_index(w2, p)
    U = span(field, basis)
    if s <= r1 + r2:
        a = min(r1, s)
        E, F = span(field, basis[:a]), span(field, basis[a:])
        return _checked(field, U, SepWitness(Mode.ADDITIVE, tuple(E), tuple(F), w1, w2))
    if s == r1 + r2 + 1 and prop32_condition(p, w1, w2):
        return witness_prop32(field, basis, w1, w2)
    options = []
    for b1 in range(r1 + 1):
        for b2 in range(r2 + 1):
            a = s - b1 - b2
            x1, x2 = w1 // p**b1, w2 // p**b2
            if a >= 0 and x1 * x2 >= p**a:
                options.append((a, b1, b2, x1, x2))
    for a, b1, b2, x1, x2 in sorted(options):
        found = _quotient_cover(p, a, x1, x2)
        if found is None:
            continue
        rest = basis[b1 + b2 :]

        def embed(x: int) -> int:
            acc = 0
            for i in range(a):
                acc = field.add(acc, field.scalar(x // p**i % p, rest[i]))
            return acc

        E = {field.add(h, embed(x)) for h in span(field, basis[:b1]) for x in found[0]}
        F = {field.add(h, embed(x)) for h in span(field, basis[b1 : b1 + b2]) for x in found[1]}
        return _checked(field, U, SepWitness(Mode.ADDITIVE, tuple(E), tuple(F), w1, w2))
    return None


def _checked(field: FieldSpec, U, w: SepWitness) -> SepWitness:
    if not check_witness(field, U, w):
        raise AssertionError(f"constructed witness fails its own check: {w}")
    return w


def _materialize(field: FieldSpec, f: Polynomial, sep: SepWitness, k: int):
    if f.degree >= k or f.is_constant():
        raise AssertionError("witness polynomial must be nonconstant with degree below k")
    c = evaluate_at_powers(f)
    return witness_from_separable_image(field, c, sep), f, sep


def _witness_t11(field: FieldSpec, k: int, w1: int, w2: int):
    f = Polynomial.monomial(field, k - 1)
    t = (field.q - 1) // (k - 1)
    sep = witness_mult_cyclic(field, field.exp(k - 1), t, w1, w2)
    return _materialize(field, f, sep, k) if sep else None


def _witness_additive_image(field: FieldSpec, k: int, w1: int, w2: int):
    """f linearized of degree k-1 = p^t; Im f is a subgroup of order p^(m-t)."""
    t = _log_p(k - 1, field.p)
    f = _additive_polynomial(field, t)
    basis = additive_image_basis(field, f)
    sep = additive_cover(field, basis, w1, w2)
    if sep is None and field.m % len(basis) == 0 and 3 in lemma31_branches(field.p, len(basis), w1, w2):
        # Im f is not a subfield in general; the trace maps onto one instead
        f = trace_polynomial(field, len(basis))
        sep = subfield_witness(field, len(basis), w1, w2)
    return _materialize(field, f, sep, k) if sep else None


def _witness_t41(field: FieldSpec, k: int, w1: int, w2: int, notes: List[str]):
    if field.m > EXACT_M_CAP or k > EXACT_K_CAP:
        notes.append("T4.1 witness not attempted: subcode size cap")
        return None
    v0 = best_v(w1, w2, field.m)
    for v in range(v0, 0, -1):
        if not lemma31_branches(2, v, w1, w2):
            continue
        S = canonical_subspace(field, v)
        nonconst = [f for f in subcode_basis(field, k, S) if not f.is_constant()]
        if not nonconst:
            continue
        f = nonconst[0]
        if field.m % v == 0:
            sep = subfield_witness(field, v, w1, w2)
        else:
            sep = additive_cover(field, list(S.basis), w1, w2)
        if sep is None or not covers(field, set(evaluate_at_powers(f)), sep):
            continue
        if v != v0:
            notes.append(f"T4.1 witness uses v={v}")
        return _materialize(field, f, sep, k)
    notes.append(
        f"T4.1 fires on the bound L(k,{v0}) > {v0}, but RS_{k}({field.q}) has no nonconstant codeword inside the "
        f"canonical subspaces of dimension <= {v0}; the bound counts exponents 1..k, not 0..k-1 (witness not materialized)"
    )
    return None


def _witness(field: FieldSpec, rule: Rule, k: int, w1: int, w2: int, notes: List[str]):
    if rule is Rule.T1_1:
        return _witness_t11(field, k, w1, w2)
    if rule in (Rule.T1_2, Rule.P2_1, Rule.T3_1):
        return _witness_additive_image(field, k, w1, w2)
    if rule is Rule.T4_1:
        return _witness_t41(field, k, w1, w2, notes)
    return None


# classification


def classify(q: int, w1: int, w2: int, *, witness: bool = True, witness_cap: int = WITNESS_CAP) -> Verdict:
    """Verdict for RS_k(q) at the threshold dimension.

    Trivial when w1 w2 > q; otherwise the first rule (T1.1, T1.2, P2.1,
    T3.1, T4.1) whose preconditions hold, or Pending. Within the witness cap
    a machine-checked non-separation witness is attached.
    """
    p, m = _check_args(q, w1, w2)
    k = threshold_k(q, w1, w2)
    if w1 * w2 > q:
        return Verdict(q, w1, w2, k, Status.TRIVIAL)
    checks = rule_checks(q, w1, w2)
    fired = tuple(c.rule for c in checks if c.fires)
    v = Verdict(q, w1, w2, k, Status.PENDING, None, fired, checks)
    floor, rational = _first_label(checks), _first_label(rule_checks(q, w1, w2, rational=True))
    v.rational_label = rational
    if rational != floor:
        v.notes.append(f"reading-sensitive: floor reading gives {floor}, rational reading gives {rational}")
    if not fired:
        return v
    v.status, v.rule = Status.RESOLVED, fired[0]
    if witness and q <= witness_cap:
        field = field_of_order(q)
        for rule in fired:
            got = _witness(field, rule, k, w1, w2, v.notes)
            if got is not None:
                v.witness, f, v.sep_witness = got
                v.polynomial = f.coeffs
                if rule is not v.rule:
                    v.notes.append(f"witness built through {rule.value}")
                break
        else:
            if not any("not materialized" in n for n in v.notes):
                v.notes.append("witness not materialized")
    return v


def nonseparating_at(q: int, w1: int, w2: int, k: int) -> Optional[bool]:
    """Whether RS_k(q) is known not to be (w1, w2)-separating.

    False below the threshold (the distance bound then guarantees
    separation), True at or above it when the threshold verdict is
    Resolved, None when nothing is known.
    """
    if not 1 <= k <= q - 1:
        raise ClassifyError(f"k={k} outside [1, {q - 1}]")
    k0 = threshold_k(q, w1, w2)
    if k < k0:
        return False
    v = classify(q, w1, w2, witness=False)
    if v.status is Status.PENDING:
        return None
    return True


# exhaustive oracle


def classify_with_oracle(q: int, w1: int, w2: int, *, cap: int = ORACLE_CAP, guard: int = 10**7) -> Verdict:
    """Exhaustive counterpart of ``classify`` for tiny fields.

    Every nonconstant f of degree below k (normalized to a monic leading
    coefficient, since scaling preserves both sumsets and product sets) is
    tested for a separable codeword image. The result is cross-checked
    against a brute-force separation test on the full code when it fits in
    ``guard``.
    """
    p, m = _check_args(q, w1, w2)
    if q > cap:
        raise ClassifyError(f"oracle capped at q <= {cap}")
    k = threshold_k(q, w1, w2)
    field = field_of_order(q)
    v = Verdict(q, w1, w2, k, Status.PENDING)
    seen: Dict[frozenset, Optional[SepWitness]] = {}
    found = None
    for deg in range(1, k):
        for low in itertools.product(range(q), repeat=deg):
            f = Polynomial(field, list(low) + [1])
            c = evaluate_at_powers(f)
            img = frozenset(c)
            if len(img) < 2:
                continue
            if img not in seen:
                seen[img] = _image_separable(field, img, w1, w2)
            if seen[img] is not None:
                found = (f, c, seen[img])
                break
        if found:
            break
    if found:
        f, c, sep = found
        v.status, v.rule, v.all_rules = Status.RESOLVED, Rule.BRUTE, (Rule.BRUTE,)
        v.witness = witness_from_separable_image(field, c, sep)
        v.sep_witness, v.polynomial = sep, f.coeffs
    spec = RsSpec(field, k)
    if spec.size <= 64:
        code = ExplicitCode(tuple(codewords(spec)), q)
        res = is_separating(code, w1, w2, guard=guard)
        if isinstance(res, Fails):
            if not found:
                v.status, v.rule, v.all_rules = Status.RESOLVED, Rule.BRUTE, (Rule.BRUTE,)
                v.witness = res.witness
                v.notes.append("non-separation found only by the exhaustive code check")
        elif isinstance(res, Holds):
            if found:
                raise AssertionError("oracle disagreement: witness found but the code separates")
            v.notes.append(f"RS_{k}({q}) is (w1, w2)-separating: exhaustive check")
    if v.status is Status.PENDING and all(s is None for s in seen.values()):
        v.notes.append("no codeword image is separable")
    return v


def _image_separable(field: FieldSpec, img: frozenset, w1: int, w2: int) -> Optional[SepWitness]:
    if len(img) > w1 * w2:
        return None
    for mode in (Mode.ADDITIVE, Mode.MULTIPLICATIVE):
        r = search_separable(field, img, w1, w2, mode)
        if isinstance(r, SepWitness):
            return r
        if isinstance(r, BudgetExceeded):
            raise AssertionError(f"oracle search budget exceeded on {sorted(img)}")
    return None


# tables


@dataclass
class Table:
    q_list: Tuple[int, ...]
    w_rows: Tuple[Tuple[int, ...], ...]
    cells: Dict[Tuple[int, int], Verdict]

    def cell_label(self, ws: Tuple[int, ...], q: int) -> str:
        labels = [self.cells[(w, q)].label for w in ws]
        if len(set(labels)) == 1:
            return labels[0]
        return "/".join(labels) + "!"

    def disagreements(self) -> List[Tuple[Tuple[int, ...], int]]:
        return [(ws, q) for ws in self.w_rows for q in self.q_list if len({self.cells[(w, q)].label for w in ws}) > 1]

    def verdicts(self) -> List[Verdict]:
        return [self.cells[(w, q)] for ws in self.w_rows for w in ws for q in self.q_list]


def _cell(args):
    q, w, witness = args
    return classify(q, w, w, witness=witness)


def build_table(
    q_list: Sequence[int] = GRID_Q,
    w_rows: Sequence[Sequence[int]] = GRID_W_ROWS,
    *,
    witness: bool = False,
    n_jobs: int = 1,
) -> Table:
    """Classify every (w, w) cell. Rows may group several w; the rendered
    cell reports per-w labels and marks disagreement with '!'."""
    q_list = tuple(q_list)
    w_rows = tuple(tuple(r) for r in w_rows)
    jobs = [(q, w, witness) for ws in w_rows for w in ws for q in q_list]
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as ex:
            results = list(ex.map(_cell, jobs))
    else:
        results = [_cell(j) for j in jobs]
    cells = {(j[1], j[0]): r for j, r in zip(jobs, results)}
    return Table(q_list, w_rows, cells)


def _row_name(ws: Tuple[int, ...]) -> str:
    return f"w={ws[0]}" if len(ws) == 1 else f"w={ws[0]}-{ws[-1]}"


def render_markdown(table: Table) -> str:
    head = "| q | " + " | ".join(str(q) for q in table.q_list) + " |"
    sep = "|---|" + "---|" * len(table.q_list)
    lines = [head, sep]
    for ws in table.w_rows:
        lines.append(f"| {_row_name(ws)} | " + " | ".join(table.cell_label(ws, q) for q in table.q_list) + " |")
    return "\n".join(lines) + "\n"


CSV_COLUMNS = ("q", "w1", "w2", "k", "status", "rule", "all_rules", "note")


def render_csv(table: Table) -> str:
    import csv
    import io

    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_COLUMNS)
    for v in table.verdicts():
        wr.writerow(
            [v.q, v.w1, v.w2, v.k, v.status.value, v.rule.value if v.rule else "", " ".join(r.value for r in v.all_rules), "; ".join(v.notes)]
        )
    return buf.getvalue()


def render_json(table: Table) -> str:
    return json.dumps([v.to_dict() for v in table.verdicts()], indent=2, sort_keys=True) + "\n"
