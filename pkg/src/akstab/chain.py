"""Chain-level realization of objects as twisted complexes over A_k^N.

This is the certification backend: Hom dimensions between arbitrary formal
objects (including extensions that no rewrite rule reduces) are computed as
cohomology of explicit Hom complexes, and isomorphism of spherical objects is
decided by composing cocycles.

A twisted complex is a list of components P_a[s] with a degree-one
differential given by algebra elements.  A morphism component P_a -> P_b is a
path from b to a (``Hom(P_a, P_b) = e_b A e_a``), so composition ``y o x`` is
the diagrammatic product ``y * x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .algebra import GradedAlgebra, Path, build_algebra
from .errors import ExtAmbiguous, ExtUndefined
from . import linalg

# (source component, target component, path) -> coefficient
Map = Dict[Tuple[int, int, Path], Fraction]


@lru_cache(maxsize=None)
def _algebra(k: int, N: int) -> GradedAlgebra:
    return build_algebra(k, N)


@dataclass(frozen=True)
class Twisted:
    N: int
    comps: Tuple[Tuple[int, int], ...]  # (node, shift)
    delta: Tuple[Tuple[Tuple[int, int, Path], Fraction], ...]

    @property
    def delta_map(self) -> Map:
        return dict(self.delta)

    def shifted(self, n: int) -> "Twisted":
        return Twisted(self.N, tuple((a, s + n) for a, s in self.comps), self.delta)

    @property
    def kmax(self) -> int:
        return max((a for a, _ in self.comps), default=1)


def zero(N: int) -> Twisted:
    return Twisted(N, (), ())


def interval(i: int, j: int, m: int, N: int) -> Twisted:
    """P_ij[m]: components P_i..P_j, differential the right-pointing arrows."""
    comps = tuple((a, m) for a in range(i, j + 1))
    delta = []
    for a in range(i, j):
        # P_{a+1} -> P_a is the degree-one path a -> a+1
        src, tgt = a + 1 - i, a - i
        delta.append(((src, tgt, Path(a, a + 1, "a")), 1))
    return Twisted(N, comps, tuple(delta))


def direct_sum(x: Twisted, y: Twisted) -> Twisted:
    off = len(x.comps)
    delta = list(x.delta) + [((p + off, q + off, path), c) for (p, q, path), c in y.delta]
    return Twisted(x.N, x.comps + y.comps, tuple(delta))


class HomComplex:
    """Hom^*(X, Y) with its differential, degree by degree."""

    def __init__(self, x: Twisted, y: Twisted):
        self.x, self.y = x, y
        self.N = x.N
        self.alg = _algebra(max(x.kmax, y.kmax, 2), self.N)
        self._basis: Dict[int, List[Tuple[int, int, Path]]] = {}
        for p, (a, s) in enumerate(x.comps):
            for q, (b, t) in enumerate(y.comps):
                for path in self.alg.paths(b, a):
                    d = self.alg.degree(path) - t + s
                    self._basis.setdefault(d, []).append((p, q, path))
        self._index = {d: {e: n for n, e in enumerate(b)} for d, b in self._basis.items()}
        # differentials indexed by the component they leave from / arrive at
        self._dy: Dict[int, List] = {}
        for (q, r, path), c in y.delta:
            self._dy.setdefault(q, []).append((r, path, c))
        self._dx: Dict[int, List] = {}
        for (p, q, path), c in x.delta:
            self._dx.setdefault(q, []).append((p, path, c))

    def basis(self, d: int) -> List[Tuple[int, int, Path]]:
        return self._basis.get(d, [])

    @property
    def degrees(self) -> List[int]:
        return sorted(self._basis)

    def differential(self, phi: Map, d: int) -> Map:
        """D(phi) = delta_Y o phi - (-1)^d phi o delta_X."""
        out: Map = {}
        sgn = -1 if d % 2 == 0 else 1
        prod = self.alg.product
        for (p, q, x), cx in phi.items():
            for r, y, cy in self._dy.get(q, ()):
                z = prod(y, x)
                if z is not None:
                    key = (p, r, z)
                    out[key] = out.get(key, 0) + cy * cx
        for (q, r, y), cy in phi.items():
            for p, x, cx in self._dx.get(q, ()):
                z = prod(y, x)
                if z is not None:
                    key = (p, r, z)
                    out[key] = out.get(key, 0) + sgn * cy * cx
        return {k: v for k, v in out.items() if v}

    def columns(self, d: int) -> List[linalg.Vec]:
        idx = self._index.get(d + 1, {})
        cols = []
        for e in self.basis(d):
            img = self.differential({e: 1}, d)
            cols.append({idx[k]: v for k, v in img.items()})
        return cols

    def to_vec(self, phi: Map, d: int) -> linalg.Vec:
        idx = self._index.get(d, {})
        return {idx[k]: v for k, v in phi.items()}

    def from_vec(self, v: linalg.Vec, d: int) -> Map:
        b = self.basis(d)
        return {b[i]: c for i, c in v.items() if c}

    def cohomology_dims(self) -> Dict[int, int]:
        out = {}
        ranks = {d: linalg.rank(self.columns(d)) for d in self.degrees}
        for d in self.degrees:
            dim = len(self.basis(d)) - ranks.get(d, 0) - ranks.get(d - 1, 0)
            if dim:
                out[d] = dim
        return out

    def cocycles(self, d: int) -> List[Map]:
        return [self.from_vec(v, d) for v in linalg.kernel(self.columns(d), len(self.basis(d)))]

    def coboundaries(self, d: int) -> List[linalg.Vec]:
        return self.columns(d - 1)

    def is_exact(self, phi: Map, d: int) -> bool:
        return linalg.in_span(self.to_vec(phi, d), self.coboundaries(d))

    def nontrivial_class(self, d: int) -> Map:
        """A cocycle representing a generator of a one-dimensional H^d."""
        dims = self.cohomology_dims().get(d, 0)
        if dims == 0:
            raise ExtUndefined("cohomology vanishes in the requested degree")
        if dims > 1:
            raise ExtAmbiguous(f"H^{d} has dimension {dims}")
        bnd = self.coboundaries(d)
        for z in self.cocycles(d):
            if not linalg.in_span(self.to_vec(z, d), bnd):
                return _integral(z)
        raise AssertionError("no class found despite nonzero cohomology")


def _integral(z: Map) -> Map:
    """Rescale a cocycle to integer coefficients (same class up to a unit)."""
    den = 1
    for v in z.values():
        den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
    return {key: int(Fraction(v) * den) for key, v in z.items()}


def compose(alg: GradedAlgebra, psi: Map, phi: Map) -> Map:
    """psi o phi (phi first)."""
    out: Map = {}
    for (q, r, y), cy in psi.items():
        for (p, q2, x), cx in phi.items():
            if q2 == q:
                z = alg.product(y, x)
                if z is not None:
                    key = (p, r, z)
                    out[key] = out.get(key, 0) + cy * cx
    return {k: v for k, v in out.items() if v}


def cone(a: Twisted, b: Twisted) -> Twisted:
    """A # B: the extension A -> A#B -> B along the unique nonzero class in Ext^1(B, A)."""
    hc = HomComplex(b, a)
    e = hc.nontrivial_class(1)
    off = len(a.comps)
    delta = list(a.delta) + [((p + off, q + off, path), c) for (p, q, path), c in b.delta]
    delta += [((p + off, q, path), c) for (p, q, path), c in e.items()]
    return Twisted(a.N, a.comps + b.comps, tuple(delta))


@lru_cache(maxsize=1 << 14)
def hom_dims(x: Twisted, y: Twisted) -> Dict[int, int]:
    return HomComplex(x, y).cohomology_dims()


def identity(x: Twisted) -> Map:
    return {(p, p, Path(a, a, "e")): Fraction(1) for p, (a, _s) in enumerate(x.comps)}


def isomorphic_spherical(x: Twisted, y: Twisted) -> Optional[bool]:
    """Decide X = Y when End^0 of X is one-dimensional; None when undecidable here."""
    dxx = hom_dims(x, x)
    if dxx.get(0, 0) != 1:
        return None
    dxy, dyx = hom_dims(x, y), hom_dims(y, x)
    if dxy.get(0, 0) == 0 or dyx.get(0, 0) == 0 or dxy != dxx:
        return False
    hxx, hxy, hyx = HomComplex(x, x), HomComplex(x, y), HomComplex(y, x)
    bnd = hxy.coboundaries(0)
    fs = [z for z in hxy.cocycles(0) if not linalg.in_span(hxy.to_vec(z, 0), bnd)]
    bnd2 = hyx.coboundaries(0)
    gs = [z for z in hyx.cocycles(0) if not linalg.in_span(hyx.to_vec(z, 0), bnd2)]
    for f in fs:
        for g in gs:
            gf = compose(hxx.alg, g, f)
            if not hxx.is_exact(gf, 0):
                return True
    return False


def mapping_cone(x: Twisted, y: Twisted, f: Map) -> Twisted:
    """Cone of a degree-zero map presented as a degree-one cocycle of Hom(X[1], Y)."""
    xs = x.shifted(1)
    off = len(y.comps)
    delta = list(y.delta) + [((p + off, q + off, path), c) for (p, q, path), c in xs.delta]
    delta += [((p + off, q, path), c) for (p, q, path), c in f.items()]
    return Twisted(x.N, y.comps + xs.comps, tuple(delta))


def is_acyclic(x: Twisted, k: int) -> bool:
    """X = 0 iff Hom^*(P_1 + ... + P_k, X) vanishes (the P_a generate)."""
    gen = Twisted(x.N, tuple((a, 0) for a in range(1, k + 1)), ())
    return not hom_dims(gen, x)


@lru_cache(maxsize=1 << 12)
def find_isomorphism(x: Twisted, y: Twisted, tries: int = 4) -> Optional[bool]:
    """Certify X = Y by exhibiting a map whose cone is acyclic.

    False when Hom dimensions already rule it out, None when no sampled map works.
    """
    hxx, hyy = hom_dims(x, x), hom_dims(y, y)
    if hxx != hyy or hom_dims(x, y) != hxx or hom_dims(y, x) != hxx:
        return False
    k = max(x.kmax, y.kmax, 2)
    hc = HomComplex(x.shifted(1), y)
    zs = hc.cocycles(1)
    if not zs:
        return False
    cands = list(zs) if len(zs) == 1 else []
    # deterministic pseudo-random combinations; a generic map is an isomorphism
    seed = 7
    for _ in range(tries):
        comb: Map = {}
        for z in zs:
            seed = (seed * 1103515245 + 12345) % (2**31)
            c = Fraction(seed % 97 + 1)
            for key, v in z.items():
                comb[key] = comb.get(key, 0) + c * v
        cands.append({kk: v for kk, v in comb.items() if v})
    for f in cands:
        if is_acyclic(mapping_cone(x, y, f), k):
            return True
    return None
