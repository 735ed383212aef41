"""Interval objects P_ij[m], their graded Homs, K-classes and the Euler form.

Grading convention: Hom^d(A, B) = Hom(A, B[d]), hence
Hom^d(A[m], B[n]) = Hom^{d+n-m}(A, B).
"""

from __future__ import annotations

from typing import Dict, Iterator, List, NamedTuple, Sequence, Tuple

from .errors import InvalidInput

GradedDims = Dict[int, int]
KVector = Tuple[int, ...]


class Interval(NamedTuple):
    i: int
    j: int
    m: int = 0

    def check(self, k: int | None = None) -> "Interval":
        if not (1 <= self.i <= self.j):
            raise InvalidInput(f"invalid interval P_{self.i}{self.j}")
        if k is not None and self.j > k:
            raise InvalidInput(f"interval P_{self.i}{self.j} outside A_{k}")
        return self

    def shifted(self, n: int) -> "Interval":
        return Interval(self.i, self.j, self.m + n)

    @property
    def base(self) -> "Interval":
        return Interval(self.i, self.j, 0)

    def __str__(self) -> str:
        s = f"P{self.i}{self.j}" if self.i < 10 and self.j < 10 else f"P[{self.i},{self.j}]"
        return s if self.m == 0 else f"{s}[{self.m}]"


def P(i: int, j: int | None = None, m: int = 0) -> Interval:
    return Interval(i, i if j is None else j, m).check()


def intervals(k: int) -> Iterator[Interval]:
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            yield Interval(i, j, 0)


def _homs_unshifted(src: Interval, tgt: Interval, N: int) -> GradedDims:
    """Hom^*(P_kl, P_ij) with src = P_kl, tgt = P_ij, both at shift zero."""
    k, l = src.i, src.j
    i, j = tgt.i, tgt.j
    if (i, j) == (k, l):
        return {0: 1, N: 1}
    if i < k <= j < l:
        return {1: 1, N: 1}
    if (i == k and j < l) or (i < k and j == l):
        return {N: 1}
    if k == j + 1:
        return {1: 1}
    # mirror cases through duality Hom^d(A,B) = Hom^{N-d}(B,A)
    if k < i <= l < j or (i == k and l < j) or (k < i and j == l) or i == l + 1:
        return {N - d: n for d, n in _homs_unshifted(tgt, src, N).items()}
    return {}


def hom_dims(a: Interval, b: Interval, N: int) -> GradedDims:
    """Graded dimensions of Hom^*(a, b)."""
    if N < 2:
        raise InvalidInput("N must be >= 2")
    a.check()
    b.check()
    base = _homs_unshifted(a.base, b.base, N)
    # Hom^d(A[ma], B[mb]) = Hom^{d + mb - ma}(A, B)
    delta = b.m - a.m
    return {d - delta: n for d, n in base.items()}


def total_dim(g: GradedDims) -> int:
    return sum(g.values())


def euler_char(g: GradedDims) -> int:
    return sum((-1) ** (d % 2) * n for d, n in g.items())


def k_class(a: Interval, k: int) -> KVector:
    a.check(k)
    s = -1 if a.m % 2 else 1
    return tuple(s if a.i <= t <= a.j else 0 for t in range(1, k + 1))


def euler_matrix(k: int, N: int) -> List[List[int]]:
    """Gram matrix chi(P_a, P_b) on the basis of simple classes."""
    return [[euler_char(hom_dims(Interval(a, a), Interval(b, b), N)) for b in range(1, k + 1)] for a in range(1, k + 1)]


def euler_form(v: Sequence[int], w: Sequence[int], N: int) -> int:
    if len(v) != len(w):
        raise InvalidInput("K-vectors of different length")
    M = euler_matrix(len(v), N)
    return sum(v[a] * M[a][b] * w[b] for a in range(len(v)) for b in range(len(w)))


def serre_check(k: int, N: int) -> dict:
    failures = []
    pairs = 0
    for a in intervals(k):
        for b in intervals(k):
            pairs += 1
            hab = hom_dims(a, b, N)
            hba = hom_dims(b, a, N)
            for d in set(hab) | {N - x for x in hba}:
                if hab.get(d, 0) != hba.get(N - d, 0):
                    failures.append({"a": str(a), "b": str(b), "degree": d})
    return {"k": k, "N": N, "pairs": pairs, "failures": failures, "ok": not failures}


def dims_to_json(g: GradedDims) -> dict:
    return {str(d): n for d, n in sorted(g.items())}
