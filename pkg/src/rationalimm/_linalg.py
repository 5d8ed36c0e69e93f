"""Exact rank of sparse rational matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping


def rank(rows: Iterable[Mapping[Hashable, Fraction]]) -> int:
    """Rank of the matrix whose rows are sparse {column: value} maps.

    Rows are reduced against earlier pivot rows in the order the pivots were
    found.  A pivot row is zero in the pivot columns of all older pivots, so
    one pass over the pivot list fully reduces an incoming row.
    """
    pivots: list[tuple[Hashable, dict]] = []
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v}
        for col, prow in pivots:
            a = row.get(col)
            if not a:
                continue
            f = a / prow[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if row:
            pivots.append((next(iter(row)), row))
    return len(pivots)
