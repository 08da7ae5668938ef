#!/usr/bin/env python3
"""Regenerate src/rsc/_registry.py and docs/fields.md.

Every (p, m) with m >= 2 and p**m <= 2**20 gets the lexicographically first
monic primitive polynomial. Prime fields (m = 1) are not tabulated; they use
x - g with g the least primitive root.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from rsc._gfp import first_primitive_poly, is_prime  # noqa: E402

CAP = 2**20


def entries():
    for p in range(2, 1025):
        if not is_prime(p):
            continue
        m = 2
        while p**m <= CAP:
            yield p, m, first_primitive_poly(p, m)
            m += 1


def main() -> None:
    rows = list(entries())
    lines = [
        '"""Built-in primitive polynomial registry (generated by tools/gen_registry.py).',
        "",
        "Maps (p, m) to the low m coefficients, lowest degree first, of a monic",
        'primitive polynomial of degree m over GF(p). Do not edit by hand."""',
        "",
        "REGISTRY = {",
    ]
    for p, m, f in rows:
        lines.append(f"    ({p}, {m}): {tuple(f[:-1])!r},")
    lines.append("}")
    (ROOT / "src" / "rsc" / "_registry.py").write_text("\n".join(lines) + "\n")

    doc = [
        "# Field registry",
        "",
        "Every field GF(p^m) is built from a fixed monic irreducible polynomial so",
        "that element labels are identical across runs and machines.",
        "",
        "* m = 1: the polynomial is `x - g`, where g is the least primitive root mod p.",
        "  The designated generator is alpha = g (alpha = 1 for GF(2)).",
        "* m >= 2: the lexicographically first monic primitive polynomial, ordering",
        "  candidates by the radix-p value of their low m coefficients. The",
        "  generator is alpha = x.",
        "",
        "## Element encoding",
        "",
        "An element c_0 + c_1 x + ... + c_{m-1} x^{m-1} is written as the integer",
        "c_0 + c_1 p + ... + c_{m-1} p^{m-1} in [0, q). So x encodes as p, and the",
        "prime subfield is {0, ..., p-1}.",
        "",
        "## Overriding",
        "",
        "Set `RSC_FIELD_REGISTRY` to a text file with one entry per line:",
        "",
        "    p m c_0 c_1 ... c_m",
        "",
        "giving all m+1 coefficients lowest degree first (c_m must be 1). Blank lines",
        "and text after `#` are ignored. Entries replace the built-in polynomial for",
        "that (p, m). The polynomial must be irreducible; if x is not primitive",
        "modulo it, alpha becomes the smallest-integer primitive element.",
        "",
        "## Built-in table",
        "",
        "Coefficients c_0 ... c_m, lowest degree first.",
        "",
        "| p | m | q | polynomial coefficients |",
        "|---|---|---|---|",
    ]
    for p, m, f in rows:
        doc.append(f"| {p} | {m} | {p**m} | {' '.join(map(str, f))} |")
    (ROOT / "docs" / "fields.md").write_text("\n".join(doc) + "\n")
    print(f"{len(rows)} entries")


if __name__ == "__main__":
    main()
