"""Independent reference computations used only by the tests.

Nothing here imports the chain backend, the interval table or the rewriting
engine of akstab.  The algebra, twisted complexes, cones and Hom cohomology
are rebuilt from the quiver description with dense sympy matrices; braids are
checked through the Artin action on a free group; walls through floating
point root finding.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

# -- the zigzag algebra ---------------------------------------------------------------
#
# Basis of e_t A e_s (paths s -> t):
#   ("e", a)  length 0 at a, degree 0
#   ("f", a)  loop at a, degree N
#   ("r", a)  a -> a+1, degree 1
#   ("l", a)  a+1 -> a, degree N-1


def paths(s: int, t: int, k: int) -> List[tuple]:
    if s == t:
        return [("e", s), ("f", s)]
    if t == s + 1:
        return [("r", s)]
    if s == t + 1:
        return [("l", t)]
    return []


def degree(p: tuple, N: int) -> int:
    return {"e": 0, "f": N, "r": 1, "l": N - 1}[p[0]]


def ends(p: tuple) -> Tuple[int, int]:
    kind, a = p
    if kind in "ef":
        return a, a
    return (a, a + 1) if kind == "r" else (a + 1, a)


def then(p: tuple, q: tuple) -> Optional[tuple]:
    """Path p followed by path q, or None when it vanishes."""
    if ends(p)[1] != ends(q)[0]:
        return None
    if p[0] == "e":
        return q
    if q[0] == "e":
        return p
    if p[0] == "r" and q[0] == "l" and p[1] == q[1]:
        return ("f", p[1])
    if p[0] == "l" and q[0] == "r" and p[1] == q[1]:
        return ("f", p[1] + 1)
    return None


def algebra_dim(k: int) -> int:
    return sum(len(paths(s, t, k)) for s in range(1, k + 1) for t in range(1, k + 1))


# -- twisted complexes ------------------------------------------------------------------
#
# A complex is (comps, delta): comps a list of (node, shift); delta maps
# (src, tgt) to {path: coeff}.  A component map P_a[s] -> P_b[t] is a path
# b -> a, of Hom-degree deg(path) + s - t.


class Cx:
    def __init__(self, comps, delta=None):
        self.comps = list(comps)
        self.delta = {key: dict(v) for key, v in (delta or {}).items()}

    def shift(self, n: int) -> "Cx":
        return Cx([(a, s + n) for a, s in self.comps], self.delta)


def interval(i: int, j: int, m: int = 0) -> Cx:
    comps = [(a, m) for a in range(i, j + 1)]
    delta = {(a + 1 - i, a - i): {("r", a): Fraction(1)} for a in range(i, j)}
    return Cx(comps, delta)


def direct_sum(x: Cx, y: Cx) -> Cx:
    off = len(x.comps)
    delta = dict(x.delta)
    for (p, q), v in y.delta.items():
        delta[(p + off, q + off)] = v
    return Cx(x.comps + y.comps, delta)


class HomCx:
    def __init__(self, x: Cx, y: Cx, N: int):
        self.x, self.y, self.N = x, y, N
        self.basis: Dict[int, List[tuple]] = {}
        for p, (a, s) in enumerate(x.comps):
            for q, (b, t) in enumerate(y.comps):
                for path in paths(b, a, 0):
                    d = degree(path, N) + s - t
                    self.basis.setdefault(d, []).append((p, q, path))
        self.index = {d: {b: n for n, b in enumerate(bs)} for d, bs in self.basis.items()}

    def D(self, phi: Dict[tuple, Fraction], d: int) -> Dict[tuple, Fraction]:
        out: Dict[tuple, Fraction] = {}
        # delta_Y o phi: first phi (a path b->a read as "map"), then delta_Y
        for (p, q, x), c in phi.items():
            for (q2, r), dv in self.y.delta.items():
                if q2 != q:
                    continue
                for y, cy in dv.items():
                    z = then(y, x)
                    if z is not None:
                        out[(p, r, z)] = out.get((p, r, z), 0) + c * cy
        sgn = -1 if d % 2 == 0 else 1
        for (p0, p), dv in self.x.delta.items():
            for x, cx in dv.items():
                for (p2, q, y), c in phi.items():
                    if p2 != p:
                        continue
                    z = then(y, x)
                    if z is not None:
                        out[(p0, q, z)] = out.get((p0, q, z), 0) + sgn * c * cx
        return {key: v for key, v in out.items() if v}

    def matrix(self, d: int) -> sympy.Matrix:
        src, tgt = self.basis.get(d, []), self.basis.get(d + 1, [])
        M = sympy.zeros(len(tgt), len(src))
        for c, b in enumerate(src):
            for key, v in self.D({b: Fraction(1)}, d).items():
                M[self.index[d + 1][key], c] = sympy.Rational(v.numerator, v.denominator)
        return M

    def rank(self, d: int) -> int:
        if not self.basis.get(d) or not self.basis.get(d + 1):
            return 0
        return self.matrix(d).rank()

    def dims(self) -> Dict[int, int]:
        out = {}
        for d in sorted(self.basis):
            h = len(self.basis[d]) - self.rank(d) - self.rank(d - 1)
            if h:
                out[d] = h
        return out

    def nonzero_class(self, d: int) -> Dict[tuple, Fraction]:
        """A cocycle in degree d that is not a coboundary."""
        src = self.basis.get(d, [])
        Z = self.matrix(d).nullspace() if self.basis.get(d + 1) else [sympy.eye(len(src))[:, c] for c in range(len(src))]
        B = self.matrix(d - 1) if self.basis.get(d - 1) else sympy.zeros(len(src), 0)
        rb = B.rank()
        for z in Z:
            if B.row_join(z).rank() > rb:
                return {src[r]: Fraction(int(sympy.fraction(z[r])[0]), int(sympy.fraction(z[r])[1])) for r in range(len(src)) if z[r] != 0}
        raise ValueError("no class in this degree")


def hom_dims(x: Cx, y: Cx, N: int) -> Dict[int, int]:
    return HomCx(x, y, N).dims()


def cone_of_class(a: Cx, b: Cx, e: Dict[tuple, Fraction]) -> Cx:
    """The twisted complex a -> E -> b glued by e in Hom^1(b, a)."""
    off = len(a.comps)
    delta = dict(a.delta)
    for (p, q), v in b.delta.items():
        delta[(p + off, q + off)] = v
    for (p, q, path), c in e.items():
        delta.setdefault((p + off, q), {})
        delta[(p + off, q)][path] = delta[(p + off, q)].get(path, 0) + c
    return Cx(a.comps + b.comps, delta)


def extension(a: Cx, b: Cx, N: int) -> Cx:
    h = HomCx(b, a, N)
    if h.dims().get(1, 0) != 1:
        raise ValueError("Ext^1 is not one-dimensional")
    return cone_of_class(a, b, h.nonzero_class(1))


def realize(expr, N: int) -> Cx:
    """Oracle realization of an akstab expression (read through its public fields only)."""
    name = type(expr).__name__
    if name == "Stable":
        return interval(expr.iv.i, expr.iv.j, expr.iv.m)
    if name == "Sum":
        out = Cx([])
        for t in expr.terms:
            out = direct_sum(out, realize(t, N))
        return out
    return extension(realize(expr.sub, N), realize(expr.quot, N), N)


def fingerprint(x: Cx, k: int, N: int) -> Tuple:
    """Hom*(P_b, X) for every node b, plus Hom*(X, X)."""
    probes = tuple(tuple(sorted(hom_dims(interval(b, b), x, N).items())) for b in range(1, k + 1))
    return probes + (tuple(sorted(hom_dims(x, x, N).items())),)


# -- K-theory ----------------------------------------------------------------------------


def euler(x: Cx, y: Cx, N: int) -> int:
    return sum((-1) ** (d % 2) * n for d, n in hom_dims(x, y, N).items())


def picard_lefschetz(a: int, v: Sequence[int], k: int, N: int) -> List[int]:
    """[T_a E] = [E] - chi(P_a, E)[P_a], with chi from oracle Homs on node classes."""
    chi = sum(c * euler(interval(a, a), interval(b + 1, b + 1), N) for b, c in enumerate(v))
    out = list(v)
    out[a - 1] -= chi
    return out


# -- phases ------------------------------------------------------------------------------


def float_phase(z: complex) -> float:
    return cmath.phase(z) / math.pi


def standard_phases(Z: Sequence[complex]) -> Dict[Tuple[int, int], float]:
    """phi_ij as the lift of arg Z(P_ij) lying between phi_i and phi_j."""
    base = [float_phase(z) % 2 for z in Z]
    lifted = [base[0]]
    for b in base[1:]:
        x = b
        while x <= lifted[-1]:
            x += 2
        while x - 2 > lifted[-1]:
            x -= 2
        lifted.append(x)
    out = {}
    for i in range(1, len(Z) + 1):
        for j in range(i, len(Z) + 1):
            z = sum(Z[i - 1 : j])
            p = float_phase(z)
            lo, hi = lifted[i - 1], lifted[j - 1]
            cands = [p + 2 * n for n in range(-4, 5) if lo - 1e-12 <= p + 2 * n <= hi + 1e-12]
            out[(i, j)] = cands[0]
    return out


def extremal_phases(expr, stables: Sequence[Tuple[object, float]], N: int, window: int = 3):
    """(phi_plus, phi_minus) of an object from oracle Homs against all shifted stables.

    phi_plus is the largest phase of a stable with a nonzero degree-0 map into
    the object, phi_minus the smallest with a nonzero map out of it.
    """
    X = realize(expr, N)
    ups, downs = [], []
    for s, phi in stables:
        base = realize(s, N)
        for m in range(-window, window + 1):
            sm = base.shift(m)
            if hom_dims(sm, X, N).get(0, 0):
                ups.append(phi + m)
            if hom_dims(X, sm, N).get(0, 0):
                downs.append(phi + m)
    return (max(ups) if ups else None, min(downs) if downs else None)


# -- braids: Artin action on the free group ------------------------------------------------


def _reduce(w: List[int]) -> Tuple[int, ...]:
    out: List[int] = []
    for g in w:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def _inv(w: Sequence[int]) -> List[int]:
    return [-g for g in reversed(w)]


def artin_images(word: Sequence[int], n: int) -> List[Tuple[int, ...]]:
    """Images of the free generators x_1..x_n under the Artin automorphism of word."""
    images = [(j,) for j in range(1, n + 1)]
    for g in word:
        i = abs(g)
        new = list(images)
        xi, xj = list(images[i - 1]), list(images[i])
        if g > 0:
            new[i - 1] = _reduce(xi + xj + _inv(xi))
            new[i] = tuple(xi)
        else:
            new[i - 1] = tuple(xj)
            new[i] = _reduce(_inv(xj) + xi + xj)
        images = new
    return images


def artin_trivial(word: Sequence[int], n: int) -> bool:
    return artin_images(word, n) == [(j,) for j in range(1, n + 1)]


def reduced_words(length: int, gens: int):
    """All freely reduced words of exactly this length over +-1..+-gens."""
    letters = [g for a in range(1, gens + 1) for g in (a, -a)]
    for w in itertools.product(letters, repeat=length):
        if all(w[t] != -w[t + 1] for t in range(length - 1)):
            yield w


# -- walls by floating point root finding ----------------------------------------------------


def wall_times(Z0: Sequence[complex], Z1: Sequence[complex], u, v) -> List[float]:
    """Times in (0,1) where Z_t(u) and Z_t(v) are real-proportional."""

    def charge(Z, c):
        i, j = c
        return sum(Z[i - 1 : j])

    def f(t):
        Z = [a + t * (b - a) for a, b in zip(Z0, Z1)]
        x, y = charge(Z, u), charge(Z, v)
        return (x.conjugate() * y).imag

    ts = np.array([0.0, 0.5, 1.0])
    coeffs = np.polyfit(ts, [f(t) for t in ts], 2)
    if np.allclose(coeffs, 0, atol=1e-14):
        return []
    roots = np.roots(np.trim_zeros(coeffs, "f")) if np.any(coeffs) else []
    return sorted(float(r.real) for r in roots if abs(r.imag) < 1e-12 and 1e-12 < r.real < 1 - 1e-12)
