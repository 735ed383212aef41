"""Exact sparse linear algebra over Q (rank, kernel, span membership)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Sequence

Vec = Dict[int, Fraction]


def _reduce(rows: List[Vec]) -> List[Vec]:
    """Row-echelon form of sparse rows; returns the nonzero pivot rows."""
    pivots: Dict[int, Vec] = {}
    out: List[Vec] = []
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                inv = Fraction(1) / r[col]
                r = {c: v * inv for c, v in r.items()}
                pivots[col] = r
                out.append(r)
                break
            factor = r[col]
            for c, v in piv.items():
                nv = r.get(c, 0) - factor * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return out


def _reduce_int(rows: List[Dict[int, int]]) -> int:
    """Rank of integer rows by fraction-free elimination (exact)."""
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                g = 0
                for v in r.values():
                    g = math.gcd(g, v)
                pivots[col] = {c: v // g for c, v in r.items()}
                break
            a, b = piv[col], r[col]
            out = {c: a * v for c, v in r.items()}
            for c, v in piv.items():
                nv = out.get(c, 0) - b * v
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
            r = out
    return len(pivots)


def _as_int_rows(rows: Sequence[Vec]):
    out = []
    for row in rows:
        conv = {}
        for c, v in row.items():
            if isinstance(v, int):
                conv[c] = v
            elif isinstance(v, Fraction) and v.denominator == 1:
                conv[c] = v.numerator
            else:
                return None
        out.append(conv)
    return out


def rank(rows: Sequence[Vec]) -> int:
    ints = _as_int_rows(rows)
    if ints is not None:
        return _reduce_int(ints)
    return len(_reduce(list(rows)))


def kernel(columns: Sequence[Vec], ncols: int) -> List[Vec]:
    """Basis of {x : sum_j x_j columns[j] = 0}; columns are sparse vectors."""
    # Gaussian elimination on the augmented system, tracking combinations.
    pivots: Dict[int, tuple] = {}
    basis: List[Vec] = []
    for j in range(ncols):
        r = dict(columns[j])
        comb: Vec = {j: Fraction(1)}
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = (r, comb)
                break
            pr, pc = piv
            factor = Fraction(r[col]) / pr[col]
            for c, v in pr.items():
                nv = r.get(c, 0) - factor * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
            for c, v in pc.items():
                nv = comb.get(c, 0) - factor * v
                if nv:
                    comb[c] = nv
                else:
                    comb.pop(c, None)
        if not r:
            basis.append(comb)
    return basis


def in_span(v: Vec, rows: Sequence[Vec]) -> bool:
    base = rank(rows)
    return rank(list(rows) + [v]) == base
