"""Command-line front end: ``rsc <command> ...`` or ``python -m rsc``.

Exit codes for ``classify``: 0 Resolved or Trivial, 2 Pending, 1 bad input.
Other commands return 0 on a decided answer, 2 when a guard or budget
stopped them, 1 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional, Sequence, Tuple

from . import classifier as clf
from .collusion import ExplicitCode, Fails, GuardExceeded, Holds, is_ipp, is_separating, is_ta
from .finite_field import FieldError, field_of_order
from .rs_code import CodeError, RsSpec, codewords
from .separability import BudgetExceeded, Mode, NotSeparable, SearchBudget, SepWitness, search_separable
from .subspace_subcode import SubcodeError, canonical_subspace, exact_K, lower_bound_L

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as "Pending"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _w_rows(text: str) -> Tuple[Tuple[int, ...], ...]:
    """``"2,3,14-15"`` -> ((2,), (3,), (14, 15))."""
    rows = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        if "-" in part:
            lo, hi = (int(x) for x in part.split("-", 1))
            if hi < lo:
                raise InputError(f"bad range {part!r}")
            rows.append(tuple(range(lo, hi + 1)))
        else:
            rows.append((int(part),))
    return tuple(rows)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _verdict_markdown(v: clf.Verdict) -> str:
    lines = [
        f"q={v.q} w1={v.w1} w2={v.w2} k={v.k}",
        f"status: {v.status.value}",
        f"rule: {v.rule.value if v.rule else '-'} ({v.label})",
        f"all rules: {' '.join(r.value for r in v.all_rules) or '-'}",
    ]
    lines += [f"  {c.rule.value}: {'fires' if c.fires else 'no'} ({c.detail})" for c in v.checks]
    lines.append(f"witness: {'verified' if v.witness else 'none'}")
    lines += [f"note: {n}" for n in v.notes]
    return "\n".join(lines)


def cmd_classify(args) -> int:
    if args.oracle:
        v = clf.classify_with_oracle(args.q, args.w1, args.w2)
    else:
        v = clf.classify(args.q, args.w1, args.w2, witness=not args.no_witness)
    if args.format == "json":
        print(_dump(v.to_dict()))
    elif args.format == "csv":
        t = clf.Table((v.q,), ((v.w1,),), {(v.w1, v.q): v})
        sys.stdout.write(clf.render_csv(t))
    else:
        print(_verdict_markdown(v))
    return EXIT_UNDECIDED if v.status is clf.Status.PENDING else EXIT_OK


def cmd_table(args) -> int:
    q_list = tuple(_int_list(args.q_list)) if args.q_list is not None else clf.GRID_Q
    w_rows = _w_rows(args.w_list) if args.w_list is not None else clf.GRID_W_ROWS
    for q in q_list:
        if clf.prime_power(q) is None:
            raise InputError(f"q={q} is not a prime power")
    table = clf.build_table(q_list, w_rows, witness=args.witness, n_jobs=args.jobs)
    render = {"markdown": clf.render_markdown, "csv": clf.render_csv, "json": clf.render_json}[args.format]
    sys.stdout.write(render(table))
    return EXIT_OK


def _rs_code(q: int, k: int, guard: int) -> ExplicitCode:
    spec = RsSpec(field_of_order(q), k)
    if spec.size > guard:
        raise InputError(f"|C| = {spec.size} exceeds guard {guard}")
    return ExplicitCode(tuple(codewords(spec, guard=guard)), q)


def cmd_verify(args) -> int:
    code = _rs_code(args.q, args.k, args.guard)
    if args.property == "separating":
        res = is_separating(code, args.w1, args.w2, guard=args.guard)
    elif args.property == "ipp":
        res = is_ipp(code, args.w1, guard=args.guard)
    else:
        res = is_ta(code, args.w1, guard=args.guard)
    out = {"property": args.property, "q": args.q, "k": args.k, "w1": args.w1, "w2": args.w2, "result": type(res).__name__}
    if isinstance(res, Fails):
        out["witness"] = res.witness.to_dict()
        if args.property == "separating":
            out["witness_verified"] = res.witness.verify(args.w1, args.w2, code.words)
    elif isinstance(res, Holds):
        out["checked"] = res.checked
    elif isinstance(res, GuardExceeded):
        out["estimate"] = res.estimate
    print(_dump(out))
    return EXIT_UNDECIDED if isinstance(res, GuardExceeded) else EXIT_OK


def cmd_ssrs(args) -> int:
    field = field_of_order(args.q)
    if field.p != 2:
        raise InputError("subspace subcodes need q = 2^m")
    dims = lower_bound_L(field.m, args.k, args.v)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["j", "d_j", "e_j", "a_j", "term"])
    for t in dims.table:
        wr.writerow([t.j, t.d, t.e, t.a, t.term])
    wr.writerow(["L", "", "", "", dims.L])
    if args.exact:
        wr.writerow(["K", "", "", "", exact_K(field, args.k, canonical_subspace(field, args.v))])
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_separable(args) -> int:
    field = field_of_order(args.q)
    U = _int_list(args.set)
    if not U:
        raise InputError("--set is empty")
    budget = SearchBudget(max_candidates=args.budget) if args.budget else None
    res = search_separable(field, U, args.w1, args.w2, Mode(args.mode), budget)
    if isinstance(res, SepWitness):
        print(_dump({"result": "Separable", "witness": res.to_dict()}))
        return EXIT_OK
    if isinstance(res, NotSeparable):
        print(_dump({"result": "NotSeparable", "reason": res.reason}))
        return EXIT_OK
    assert isinstance(res, BudgetExceeded)
    print(_dump({"result": "BudgetExceeded", "explored": res.explored}))
    return EXIT_UNDECIDED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rsc", description="Separation of Reed-Solomon codes: rule chain, oracles, tables.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="verdict for one (q, w1, w2)")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--w1", type=int, required=True)
    c.add_argument("--w2", type=int)
    c.add_argument("--oracle", action="store_true", help="exhaustive search (q <= 13)")
    c.add_argument("--no-witness", action="store_true")
    c.add_argument("--format", choices=["json", "markdown", "csv"], default="json")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("table", help="grid of verdicts for (w, w) cells")
    t.add_argument("--q-list", help="comma-separated q values")
    t.add_argument("--w-list", help="comma-separated w values or ranges such as 14-15")
    t.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")
    t.add_argument("--witness", action="store_true", help="materialize witnesses (slow)")
    t.add_argument("--jobs", type=int, default=1)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="exhaustive property check of RS_k(q)")
    v.add_argument("--property", choices=["separating", "ipp", "ta"], required=True)
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--w1", type=int, required=True)
    v.add_argument("--w2", type=int)
    v.add_argument("--guard", type=int, default=10**8)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("ssrs", help="coset table and dimension bound for a subspace subcode")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--exact", action="store_true", help="also compute K on the canonical subspace")
    s.set_defaults(func=cmd_ssrs)

    e = sub.add_parser("separable", help="decide (w1, w2)-separability of a set")
    e.add_argument("--set", required=True, help="comma-separated element integers")
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--w1", type=int, required=True)
    e.add_argument("--w2", type=int)
    e.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.ADDITIVE.value)
    e.add_argument("--budget", type=int, help="search-node limit")
    e.set_defaults(func=cmd_separable)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "w2", "absent") is None:
        args.w2 = args.w1
    try:
        return args.func(args)
    except (InputError, clf.ClassifyError, FieldError, CodeError, SubcodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
