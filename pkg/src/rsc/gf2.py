"""Bit-packed linear algebra over GF(2).

A row is a Python int; bit ``j`` is the entry in column ``j``. Python ints
are arbitrary width, so one row holds a whole constraint (176 columns for
the largest subspace-subcode system the classifier builds).
"""

from __future__ import annotations

from typing import Dict, Iterable, List


class EchelonBasis:
    """Incrementally maintained row space, keyed by each row's leading bit."""

    def __init__(self):
        self.pivots: Dict[int, int] = {}

    def reduce(self, row: int) -> int:
        pivots = self.pivots
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                return row
            row ^= p
        return 0

    def add(self, row: int) -> bool:
        """Insert ``row``; return True if it enlarged the span."""
        row = self.reduce(row)
        if row:
            self.pivots[row.bit_length() - 1] = row
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduced(self) -> Dict[int, int]:
        """Pivot rows in reduced echelon form: no row has another row's pivot bit."""
        rows = dict(self.pivots)
        for c in sorted(rows):
            r = rows[c]
            for d in sorted(rows):
                if d != c and (rows[d] >> c) & 1:
                    rows[d] ^= r
        return rows


def rank(rows: Iterable[int]) -> int:
    basis = EchelonBasis()
    for r in rows:
        basis.add(r)
    return basis.rank


def nullspace(rows: Iterable[int], ncols: int) -> List[int]:
    """Basis of ``{x : popcount(row & x) even for every row}``."""
    basis = EchelonBasis()
    for r in rows:
        if r >> ncols:
            raise ValueError("row wider than ncols")
        basis.add(r)
    reduced = basis.reduced()
    out = []
    for f in range(ncols):
        if f in reduced:
            continue
        x = 1 << f
        for c, r in reduced.items():
            if (r >> f) & 1:
                x |= 1 << c
        out.append(x)
    return out


def dot(a: int, b: int) -> int:
    return bin(a & b).count("1") & 1
