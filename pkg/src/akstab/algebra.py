"""The graded algebra A_k^N: the A_k double quiver modulo the zig-zag relations.

Basis paths are written ``Path(start, end, kind)``:

* ``e`` -- the idempotent at a node (``start == end``), degree 0;
* ``a`` -- an arrow between adjacent nodes, degree 1 going right
  (i -> i+1) and N-1 going left (i+1 -> i);
* ``f`` -- the loop i -> i+1 -> i (or i -> i-1 -> i), degree N.

Composition is diagrammatic: ``p * q`` means "first p, then q" and is nonzero
only when ``p.end == q.start``.  Every path of length three or more vanishes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple

from .errors import InvalidInput


class Path(NamedTuple):
    start: int
    end: int
    kind: str  # "e", "a" or "f"

    def __str__(self) -> str:
        if self.kind == "e":
            return f"e{self.start}"
        if self.kind == "f":
            return f"f{self.start}"
        return f"({self.start},{self.end})"


Element = Dict[Path, Fraction]


def e(i: int) -> Path:
    return Path(i, i, "e")


def f(i: int) -> Path:
    return Path(i, i, "f")


def arrow(i: int, j: int) -> Path:
    if abs(i - j) != 1:
        raise InvalidInput(f"no arrow between nodes {i} and {j}")
    return Path(i, j, "a")


@dataclass(frozen=True)
class GradedAlgebra:
    k: int
    N: int
    basis: Tuple[Path, ...]
    _table: Mapping[Tuple[Path, Path], Optional[Path]] = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, p: Path) -> int:
        if p.kind == "e":
            return 0
        if p.kind == "f":
            return self.N
        return 1 if p.end == p.start + 1 else self.N - 1

    def product(self, p: Path, q: Path) -> Optional[Path]:
        """Product of two basis paths (coefficient is always 1), or None."""
        return self._table[p, q]

    def paths(self, start: int, end: int, degree: Optional[int] = None) -> List[Path]:
        return [
            p
            for p in self.basis
            if p.start == start and p.end == end and (degree is None or self.degree(p) == degree)
        ]

    def hom_dims(self, a: int, b: int) -> Dict[int, int]:
        """Graded dimension of Hom(E_a, E_b) = span of paths a -> b."""
        out: Dict[int, int] = {}
        for p in self.paths(a, b):
            d = self.degree(p)
            out[d] = out.get(d, 0) + 1
        return out

    def unit(self) -> Element:
        return {e(i): Fraction(1) for i in range(1, self.k + 1)}


def _basis(k: int) -> Tuple[Path, ...]:
    out = []
    for i in range(1, k + 1):
        out.append(e(i))
        if i < k:
            out.append(arrow(i, i + 1))
            out.append(arrow(i + 1, i))
        out.append(f(i))
    return tuple(out)


def _raw_product(p: Path, q: Path) -> Optional[Path]:
    if p.end != q.start:
        return None
    if p.kind == "e":
        return q
    if q.kind == "e":
        return p
    if p.kind == "a" and q.kind == "a" and p.start == q.end:
        # (i, j) then (j, i) is the loop at i
        return f(p.start)
    return None


def build_algebra(k: int, N: int) -> GradedAlgebra:
    if not isinstance(k, int) or k < 1:
        raise InvalidInput(f"k must be a positive integer, got {k!r}")
    if not isinstance(N, int) or N < 2:
        raise InvalidInput(f"N must be an integer >= 2, got {N!r}")
    basis = _basis(k)
    table = {(p, q): _raw_product(p, q) for p in basis for q in basis}
    return GradedAlgebra(k, N, basis, table)


def as_element(x) -> Element:
    if isinstance(x, Path):
        return {x: Fraction(1)}
    return {p: Fraction(c) for p, c in x.items() if c}


def multiply(alg: GradedAlgebra, a, b) -> Element:
    """Bilinear extension of the product table to formal sums."""
    out: Element = {}
    for p, cp in as_element(a).items():
        for q, cq in as_element(b).items():
            r = alg.product(p, q)
            if r is not None:
                out[r] = out.get(r, Fraction(0)) + cp * cq
    return {p: c for p, c in out.items() if c}


def is_associative(alg: GradedAlgebra) -> bool:
    for p, q, r in itertools.product(alg.basis, repeat=3):
        if multiply(alg, multiply(alg, p, q), r) != multiply(alg, p, multiply(alg, q, r)):
            return False
    return True


def _rank(rows: List[List[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                factor = m[i][col] / m[rank][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def check_duality_pairing(alg: GradedAlgebra) -> dict:
    """Check that Hom^d(E_a,E_b) x Hom^{N-d}(E_b,E_a) -> span(f_a) is perfect.

    The trace picks out the coefficient of f_a.  Pairs with both spaces zero
    pass vacuously.
    """
    failures = []
    checked = 0
    for a in range(1, alg.k + 1):
        for b in range(1, alg.k + 1):
            for d in range(0, alg.N + 1):
                left = alg.paths(a, b, d)
                right = alg.paths(b, a, alg.N - d)
                checked += 1
                if len(left) != len(right):
                    failures.append({"a": a, "b": b, "degree": d, "reason": "dimension mismatch"})
                    continue
                if not left:
                    continue
                gram = [
                    [multiply(alg, x, y).get(f(a), Fraction(0)) for y in right] for x in left
                ]
                if _rank(gram) != len(left):
                    failures.append({"a": a, "b": b, "degree": d, "reason": "degenerate"})
    return {"k": alg.k, "N": alg.N, "checked": checked, "failures": failures, "ok": not failures}


def expected_hom_dims(a: int, b: int, N: int) -> Dict[int, int]:
    """Graded Homs between the chain objects E_a, E_b as prescribed for an A_k-chain."""
    if a == b:
        return {0: 1, N: 1} if N != 0 else {0: 2}
    if b == a + 1:
        return {1: 1}
    if a == b + 1:
        return {N - 1: 1}
    return {}


def to_json(alg: GradedAlgebra) -> dict:
    table = []
    for p in alg.basis:
        for q in alg.basis:
            r = alg.product(p, q)
            if r is not None:
                table.append([str(p), str(q), str(r)])
    return {
        "k": alg.k,
        "N": alg.N,
        "dim": alg.dim,
        "basis": [{"name": str(p), "start": p.start, "end": p.end, "degree": alg.degree(p)} for p in alg.basis],
        "products": table,
    }
