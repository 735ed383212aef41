"""Stability conditions on D_k^N, exact graded phases, and HN filtrations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath

from . import chain
from . import objects as ob
from .errors import (
    ExtAmbiguous,
    ExtUndefined,
    InvalidInput,
    InvalidQuadruple,
    NonStableLeaf,
    PhaseOrderViolation,
    StepBudgetExceeded,
    UnknownHom,
    ZeroCharge,
)
from .exact import GaussianRational, frac, frac_str, sign, sum_sqrt_cmp
from .intervals import Interval, KVector, intervals
from .objects import ObjExpr


@total_ordering
@dataclass(frozen=True)
class PhaseLift:
    """A real phase n + arg(u)/pi, with u in the half-open upper half plane.

    The charge direction it encodes is (-1)^n * u.
    """

    n: int
    u: GaussianRational

    def __post_init__(self):
        if not self.u.in_upper():
            raise ValueError(f"direction {self.u} not in the half-open upper half plane")

    @classmethod
    def of(cls, z: GaussianRational, winding: int = 0) -> "PhaseLift":
        """The lift 2*winding + arg(z)/pi with arg taken in [0, 2pi)."""
        if not z:
            raise ZeroCharge("phase of a zero charge")
        if z.in_upper():
            return cls(2 * winding, z)
        return cls(2 * winding + 1, -z)

    @classmethod
    def lifts(cls, z: GaussianRational, lo_n: int, hi_n: int) -> List["PhaseLift"]:
        base = cls.of(z)
        return [cls(n, base.u) for n in range(lo_n, hi_n + 1) if (n - base.n) % 2 == 0]

    @property
    def direction(self) -> GaussianRational:
        return -self.u if self.n % 2 else self.u

    def shifted(self, m: int) -> "PhaseLift":
        return PhaseLift(self.n + m, self.u)

    def _cmp(self, o: "PhaseLift") -> int:
        if self.n != o.n:
            return sign(self.n - o.n)
        return -sign(self.u.cross(o.u))

    def __lt__(self, o: "PhaseLift") -> bool:
        return self._cmp(o) < 0

    def __eq__(self, o) -> bool:
        return isinstance(o, PhaseLift) and self._cmp(o) == 0

    def __hash__(self) -> int:
        g = self.u
        # normalize direction up to positive scaling
        den = math.lcm(g.re.denominator, g.im.denominator)
        a, b = int(g.re * den), int(g.im * den)
        d = math.gcd(a, b)
        return hash((self.n, a // d, b // d))

    def minus(self, o: "PhaseLift") -> Optional[int]:
        """self - o when it is an integer, else None."""
        if self.u.cross(o.u) != 0:
            return None
        return self.n - o.n

    def __float__(self) -> float:
        return self.n + math.atan2(float(self.u.im), float(self.u.re)) / math.pi

    def to_mpf(self, dps: int = 40):
        with mpmath.workdps(dps):
            return self.n + mpmath.atan2(
                mpmath.mpf(self.u.im.numerator) / self.u.im.denominator,
                mpmath.mpf(self.u.re.numerator) / self.u.re.denominator,
            ) / mpmath.pi

    def exact_fraction(self) -> Optional[Fraction]:
        """The phase as a rational when the direction is axis- or diagonal-aligned."""
        re, im = self.u.re, self.u.im
        if im == 0:
            return Fraction(self.n)
        if re == 0:
            return Fraction(self.n) + Fraction(1, 2)
        if re == im:
            return Fraction(self.n) + Fraction(1, 4)
        if re == -im:
            return Fraction(self.n) + Fraction(3, 4)
        return None

    def to_json(self) -> dict:
        out = {"n": self.n, "direction": self.u.to_json(), "decimal": round(float(self), 12)}
        f = self.exact_fraction()
        if f is not None:
            out["exact"] = frac_str(f)
        return out

    @classmethod
    def from_json(cls, obj) -> "PhaseLift":
        return cls(int(obj["n"]), GaussianRational.from_json(obj["direction"]))

    def __repr__(self) -> str:
        f = self.exact_fraction()
        return f"phase({frac_str(f)})" if f is not None else f"phase({float(self):.6f})"


def in_interval(p: PhaseLift, lo: PhaseLift, hi: PhaseLift) -> bool:
    return lo <= p <= hi


Cls = Tuple[int, int]


@dataclass(frozen=True)
class StableEntry:
    cls: Cls
    obj: ObjExpr
    phase: PhaseLift
    history: Tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class StabilityCondition:
    k: int
    N: int
    Z: Tuple[GaussianRational, ...]
    stables: Tuple[StableEntry, ...]
    standard: bool = field(default=True, compare=False)
    history: Tuple[str, ...] = field(default=(), compare=False)

    def entry(self, cls: Cls) -> StableEntry:
        for e in self.stables:
            if e.cls == cls:
                return e
        raise KeyError(cls)

    def class_vector(self, cls: Cls) -> KVector:
        i, j = cls
        return tuple(1 if i <= t <= j else 0 for t in range(1, self.k + 1))

    def charge(self, v: Sequence[int]) -> GaussianRational:
        return charge(self, v)

    def class_charge(self, cls: Cls) -> GaussianRational:
        return self.charge(self.class_vector(cls))

    def ascending(self) -> List[StableEntry]:
        return sorted(self.stables, key=lambda e: e.phase)

    def with_stables(self, stables, **kw) -> "StabilityCondition":
        return replace(self, stables=tuple(sorted(stables, key=lambda e: e.cls)), **kw)


def charge(S: StabilityCondition, v: Sequence[int]) -> GaussianRational:
    if len(v) != S.k:
        raise InvalidInput("K-vector length mismatch")
    return _charge(tuple(S.Z), tuple(v))


@lru_cache(maxsize=1 << 16)
def _charge(Z: Tuple[GaussianRational, ...], v: Tuple[int, ...]) -> GaussianRational:
    re = im = Fraction(0)
    for c, z in zip(v, Z):
        if c:
            re += c * z.re
            im += c * z.im
    return GaussianRational(re, im)


def standard_condition(
    k: int, N: int, Z: Sequence[GaussianRational], windings: Optional[Sequence[int]] = None
) -> StabilityCondition:
    if k < 1 or N < 2:
        raise InvalidInput("need k >= 1 and N >= 2")
    Z = tuple(Z)
    if len(Z) != k:
        raise InvalidInput(f"expected {k} charges, got {len(Z)}")
    windings = tuple(windings) if windings is not None else (0,) * k
    if len(windings) != k:
        raise InvalidInput("windings length mismatch")
    for n, z in enumerate(Z):
        if not z:
            raise ZeroCharge(f"Z(P_{n + 1}) = 0")
    phi = [PhaseLift.of(z, w) for z, w in zip(Z, windings)]
    for a in range(k - 1):
        if not phi[a] < phi[a + 1]:
            raise PhaseOrderViolation(f"phi_{a + 1} = {phi[a]!r} is not below phi_{a + 2} = {phi[a + 1]!r}")
    if not phi[-1] < phi[0].shifted(1):
        raise PhaseOrderViolation(f"phi_{k} = {phi[-1]!r} is not below phi_1 + 1")
    stables = []
    for iv in intervals(k):
        z = GaussianRational(0, 0)
        for t in range(iv.i, iv.j + 1):
            z = z + Z[t - 1]
        if not z:
            raise ZeroCharge(f"Z(P_{iv.i}{iv.j}) = 0")
        lo, hi = phi[iv.i - 1], phi[iv.j - 1]
        cands = [p for p in PhaseLift.lifts(z, lo.n - 2, hi.n + 2) if in_interval(p, lo, hi)]
        if len(cands) != 1:
            raise PhaseOrderViolation(f"no unique phase lift for P_{iv.i}{iv.j}")
        stables.append(StableEntry((iv.i, iv.j), ob.Stable(iv), cands[0]))
    return StabilityCondition(k, N, Z, tuple(stables), True)


def phase_of(S: StabilityCondition, e: ObjExpr) -> Optional[PhaseLift]:
    """Phase of a (shifted) stable object of S, else None."""
    for ent in S.stables:
        if isinstance(e, ob.Stable) and isinstance(ent.obj, ob.Stable):
            if e.iv.base == ent.obj.iv.base:
                return ent.phase.shifted(e.iv.m - ent.obj.iv.m)
            continue
        if isinstance(e, ob.Stable) or isinstance(ent.obj, ob.Stable):
            continue
        m = _shift_match(ent.obj, e)
        if m is not None:
            return ent.phase.shifted(m)
    return None


def _shift_match(base: ObjExpr, e: ObjExpr) -> Optional[int]:
    """m with e == base[m] structurally, else None."""
    lb, le = list(ob.leaves(base)), list(ob.leaves(e))
    if not lb or len(lb) != len(le):
        return None
    m = le[0].iv.m - lb[0].iv.m
    return m if ob.shift(base, m) == e else None


# -- Harder-Narasimhan --------------------------------------------------------


@dataclass(frozen=True)
class HNFactor:
    stables: Tuple[ObjExpr, ...]
    phase: PhaseLift
    charge: GaussianRational


@dataclass(frozen=True)
class HNFiltration:
    factors: Tuple[HNFactor, ...]
    mass_terms: Tuple[Fraction, ...]  # squared norms of the stable charges
    steps: int = 0

    @property
    def phases(self) -> List[PhaseLift]:
        return [f.phase for f in self.factors]

    def mass(self) -> float:
        return float(sum(math.sqrt(t) for t in self.mass_terms))

    def summary(self) -> List[Tuple[Tuple[str, ...], PhaseLift]]:
        return [(tuple(str(s) for s in f.stables), f.phase) for f in self.factors]


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise StepBudgetExceeded(f"more than {self.budget} rewrite steps")


def _reduce(e: ObjExpr, N: int, ctr: _Counter) -> ObjExpr:
    if isinstance(e, ob.Stable):
        return e
    if isinstance(e, ob.Sum):
        return ob.direct_sum(*[_reduce(t, N, ctr) for t in e.terms])
    a, b = _reduce(e.sub, N, ctr), _reduce(e.quot, N, ctr)
    ctr.tick()
    return ob.ext(a, b, N)


def _factors(S: StabilityCondition, e: ObjExpr, ctr: _Counter) -> List[Tuple[ObjExpr, PhaseLift]]:
    """Stable factors of a normalized object, in HN order (highest phase first)."""
    out: List[Tuple[ObjExpr, PhaseLift]] = []
    for t in ob.summands(e):
        p = phase_of(S, t)
        if p is not None:
            out.append((t, p))
            continue
        if isinstance(t, ob.Ext):
            got = _ext_factors(S, t, ctr, set())
            if got is not None:
                out.extend(got)
                continue
            raise NonStableLeaf(f"{t} is not reducible to stable factors of decreasing phase")
        raise NonStableLeaf(f"{t} is not a stable object of the condition")
    return out


def _ext_factors(S, t: ob.Ext, ctr: _Counter, seen: set):
    """Factors of an opaque extension, trying the equivalent bracketings when
    the direct reading is not phase-ordered.  None when every reading fails."""
    if t in seen:
        return None
    seen.add(t)
    try:
        top, bottom = _factors(S, t.sub, ctr), _factors(S, t.quot, ctr)
        if min(p for _, p in top) >= max(p for _, p in bottom):
            return top + bottom
    except NonStableLeaf:
        pass
    for alt in _bracketings(t, S.N):
        ctr.tick()
        if isinstance(alt, ob.Ext):
            got = _ext_factors(S, alt, ctr, seen)
        else:
            try:
                got = _factors(S, alt, ctr)
            except NonStableLeaf:
                got = None
        if got is not None:
            return got
    got = _tower_search(S, t)
    if got is not None:
        ctr.tick()
    return got


def _tower_search(S: StabilityCondition, t: ObjExpr):
    """Find a phase-ordered tower certified isomorphic to t.

    The candidates are towers of stables whose phases lie in the range spanned
    by the leaves of t and whose K-classes add up to that of t; the HN
    filtration is unique, so the first certified one is it.
    """
    N, k = S.N, S.k
    leaves = list(ob.leaves(t))
    ph = [phase_of(S, x) for x in leaves]
    if any(p is None for p in ph):
        return None
    lo, hi = min(ph), max(ph)
    target = ob.k_class_expr(t, k)
    pool = []
    for e in S.stables:
        for m in range(math.floor(lo.to_mpf()) - 1, math.ceil(hi.to_mpf()) + 2):
            p = e.phase.shifted(m)
            if lo <= p <= hi:
                obj = ob.shift(e.obj, m)
                pool.append((p, obj, ob.k_class_expr(obj, k)))
    # the extreme HN phases are those of the extreme stables mapping in and out
    ins = [p for p, obj, _ in pool if ob.homs(obj, t, N).get(0)]
    outs = [p for p, obj, _ in pool if ob.homs(t, obj, N).get(0)]
    if not ins or not outs:
        return None
    top, bottom = max(ins), min(outs)
    pool = [x for x in pool if bottom <= x[0] <= top]
    pool.sort(key=lambda x: x[0], reverse=True)
    positive = all(c >= 0 for _, _, v in pool for c in v)
    cap = len(leaves) + 1
    real_t = ob.realize(t, N)

    def towers(items):
        n = len(items)
        for flags in _flag_orders(n - 1):
            for right in (True, False) if n > 2 else (True,):
                cur = items[-1] if right else items[0]
                ok = True
                seq = range(n - 2, -1, -1) if right else range(1, n)
                for i in seq:
                    x, y = (items[i], cur) if right else (cur, items[i])
                    f = flags[i if right else i - 1]
                    if f:
                        if ob.ext_dim(y, x, N) != 1:
                            ok = False
                            break
                        cur = ob.Ext(x, y)
                    else:
                        cur = ob.direct_sum(x, y)
                if ok:
                    yield cur
        if n > 3:
            # towers whose joins are not a comb, e.g. (Q1#Q2)#(Q3#Q4)
            seen = set()
            for cand in _trees(tuple(items), N):
                if cand not in seen:
                    seen.add(cand)
                    yield cand

    def search(start, acc, vec):
        if vec == target and acc and pool[acc[-1]][0] == bottom:
            items = [pool[i][1] for i in acc]
            for cand in towers(items):
                try:
                    if chain.find_isomorphism(ob.realize(cand, N), real_t):
                        return [(pool[i][1], pool[i][0]) for i in acc]
                except UnknownHom:
                    continue
        if len(acc) >= cap:
            return None
        for i in range(start, len(pool)):
            if not acc and pool[i][0] != top:
                break
            nv = tuple(a + b for a, b in zip(vec, pool[i][2]))
            if positive and any(a > b for a, b in zip(nv, target)):
                continue
            got = search(i, acc + [i], nv)
            if got is not None:
                return got
        return None

    return search(0, [], (0,) * k)


@lru_cache(maxsize=1 << 12)
def _trees(items: Tuple[ObjExpr, ...], N: int) -> Tuple[ObjExpr, ...]:
    """Every binary bracketing of items joined by sums or defined extensions."""
    if len(items) == 1:
        return items
    out = []
    for cut in range(1, len(items)):
        for left in _trees(items[:cut], N):
            for right in _trees(items[cut:], N):
                if ob.ext_dim(right, left, N) == 1:
                    out.append(ob.Ext(left, right))
                out.append(ob.direct_sum(left, right))
    return tuple(out)


def _flag_orders(n: int):
    """All 0/1 flag vectors of length n, nonsplit-heavy first."""
    out = [tuple((m >> b) & 1 for b in range(n)) for m in range(2**n)]
    return sorted(out, key=lambda f: -sum(f))


@lru_cache(maxsize=1 << 14)
def _bracketings(t: ob.Ext, N: int):
    """Objects isomorphic to t read off one octahedral rebracketing.

    When the class of t lives on one piece of a nested extension, t sits in a
    triangle sub -> t -> quot with one side an inner extension.  The outer
    extension may still split; of the two readings we keep the one that is
    certified (or the only one not refuted).
    """
    a, b = t.sub, t.quot
    d = ob.ext_dim

    def join(x, y):
        try:
            return ob.ext(x, y, N)
        except (ExtUndefined, ExtAmbiguous):
            return None

    pairs = []
    if isinstance(b, ob.Ext):
        b1, b2 = b.sub, b.quot
        if d(b1, a, N) == 0:
            pairs.append((b1, join(a, b2), 1))
        if d(b2, a, N) == 0:
            pairs.append((join(a, b1), b2, 0))
    if isinstance(a, ob.Ext):
        a1, a2 = a.sub, a.quot
        if d(b, a2, N) == 0:
            pairs.append((join(a1, b), a2, 0))
        if d(b, a1, N) == 0:
            pairs.append((a1, join(a2, b), 1))
    out = []
    for sub, quot, _ in pairs:
        if sub is None or quot is None:
            continue
        split = ob.direct_sum(sub, quot)
        n = d(quot, sub, N)
        if n == 0:
            out.append(split)
            continue
        cands = [c for c in (join(sub, quot), split) if c is not None]
        verdicts = [ob.isomorphic(c, t, N) for c in cands]
        if True in verdicts:
            out.append(cands[verdicts.index(True)])
        elif n == 1 and len(cands) == 2 and verdicts.count(False) == 1:
            out.append(cands[verdicts.index(None)])
    return tuple(c for c in out if c != t)


def _group(S: StabilityCondition, factors: List[Tuple[ObjExpr, PhaseLift]]) -> HNFiltration:
    groups: Dict[PhaseLift, List[ObjExpr]] = {}
    for obj, p in factors:
        groups.setdefault(p, []).append(obj)
    out = []
    terms = []
    for p in sorted(groups, reverse=True):
        objs = tuple(sorted(groups[p], key=ob.sort_key))
        z = GaussianRational(0, 0)
        for o in objs:
            zo = charge(S, ob.k_class_expr(o, S.k))
            terms.append(zo.norm2())
            z = z + zo
        out.append(HNFactor(objs, p, z))
    return HNFiltration(tuple(out), tuple(terms))


def hn(S: StabilityCondition, E: ObjExpr, check: bool = True) -> HNFiltration:
    """HN filtration of E, whose leaves are (shifted) stable objects of S."""
    nleaves = sum(1 for _ in ob.leaves(E))
    for leaf in ob.leaves(E):
        if isinstance(leaf, ob.Stable) and leaf.iv.j > S.k:
            raise NonStableLeaf(f"{leaf} is outside A_{S.k}")
    ctr = _Counter(4 * max(nleaves, 1) ** 2)
    red = _reduce(E, S.N, ctr)
    if ob.is_zero(red):
        return HNFiltration((), (), ctr.steps)
    filt = _group(S, _factors(S, red, ctr))
    filt = replace(filt, steps=ctr.steps)
    if check:
        check_hn(S, E, filt)
    return filt


def hn_tower(
    S: StabilityCondition, factors: Sequence[ObjExpr], flags: Sequence[int], order: Sequence[int]
) -> HNFiltration:
    """Build the tower Q_1 .. Q_n (Q_1 the sub-most factor) by merging adjacent
    pieces in the given order and return its HN filtration.

    ``flags[i]`` says whether the class joining Q_{i+1} to Q_i is the canonical
    nonzero one (1) or split (0); ``order`` lists, step by step, the index of
    the adjacent pair to merge in the current (shrinking) list.
    """
    items = list(factors)
    fl = list(flags)
    if len(fl) != len(items) - 1 or len(order) != len(fl):
        raise InvalidInput("tower shape mismatch")
    steps = 0
    for pos in order:
        a, b = items[pos], items[pos + 1]
        if fl[pos]:
            merged = ob.ext(a, b, S.N)
            steps += 1
        else:
            merged = ob.direct_sum(a, b)
        items[pos : pos + 2] = [merged]
        del fl[pos]
    filt = hn(S, items[0])
    return replace(filt, steps=filt.steps + steps)


def check_hn(S: StabilityCondition, E: ObjExpr, filt: HNFiltration) -> None:
    """Assert the HN invariants: decreasing phases, K-sum, mass >= |Z(E)|."""
    ph = filt.phases
    assert all(ph[i] > ph[i + 1] for i in range(len(ph) - 1)), "phases not strictly decreasing"
    kv = [0] * S.k
    for f in filt.factors:
        for o in f.stables:
            for t, c in enumerate(ob.k_class_expr(o, S.k)):
                kv[t] += c
    assert tuple(kv) == ob.k_class_expr(E, S.k), "K-classes do not add up"
    zE = charge(S, kv)
    charges = [charge(S, ob.k_class_expr(o, S.k)) for f in filt.factors for o in f.stables]
    assert mass_vs_charge(charges, zE) >= 0, "mass below |Z(E)|"


def mass_vs_charge(charges: Sequence[GaussianRational], total: GaussianRational) -> int:
    """Sign of sum |z_i| - |sum z_i|, decided exactly."""
    charges = [z for z in charges if z]
    parallel = all(
        z.cross(charges[0]) == 0 and z.dot(charges[0]) > 0 for z in charges
    )
    return sum_sqrt_cmp([z.norm2() for z in charges], total.norm2(), parallel)


def hn_to_json(filt: HNFiltration) -> dict:
    return {
        "factors": [
            {
                "stables": [ob.to_json(s) for s in f.stables],
                "phase": f.phase.to_json(),
                "charge": f.charge.to_json(),
            }
            for f in filt.factors
        ],
        "mass": {"sqrt_terms": [frac_str(t) for t in filt.mass_terms], "decimal": filt.mass()},
        "steps": filt.steps,
    }


def expressions(S: StabilityCondition, max_leaves: int, shifts: Sequence[int] = (0,)) -> List[ObjExpr]:
    """All expressions with at most max_leaves stable leaves (shifts from
    ``shifts``) built from direct sums and defined extensions, up to the
    canonical ordering of sums."""
    levels: Dict[int, List[ObjExpr]] = {1: [ob.shift(e.obj, m) for e in S.stables for m in shifts]}
    for n in range(2, max_leaves + 1):
        seen = set()
        out = []
        for a in range(1, n):
            for x in levels[a]:
                for y in levels[n - a]:
                    cands = [ob.direct_sum(x, y)]
                    if ob.ext_dim(y, x, S.N) == 1:
                        cands.append(ob.Ext(x, y))
                    for c in cands:
                        if c not in seen:
                            seen.add(c)
                            out.append(c)
        levels[n] = out
    return [e for n in sorted(levels) for e in levels[n]]


def hn_from_json(obj) -> HNFiltration:
    factors = tuple(
        HNFactor(
            tuple(ob.from_json(s) for s in f["stables"]),
            PhaseLift.from_json(f["phase"]),
            GaussianRational.from_json(f["charge"]),
        )
        for f in obj["factors"]
    )
    terms = tuple(frac(t) for t in obj["mass"]["sqrt_terms"])
    return HNFiltration(factors, terms, int(obj.get("steps", 0)))


# -- axioms, heart, termination certificate ----------------------------------


def check_axioms(
    S: StabilityCondition, sample: Iterable[ObjExpr] = (), shift_window: int = 2
) -> dict:
    report: Dict[str, dict] = {}
    # (a): stables are stored up to shift; phases of shifts are phase + m by construction
    wit_a = []
    for e in S.stables:
        for m in range(-shift_window, shift_window + 1):
            if phase_of(S, ob.shift(e.obj, m)) != e.phase.shifted(m):
                wit_a.append({"class": list(e.cls), "shift": m})
    report["a"] = {"ok": not wit_a, "witnesses": wit_a}
    # (b): Z(E) = m(E) exp(i pi phi) with m(E) > 0
    wit_b = []
    for e in S.stables:
        z = charge(S, ob.k_class_expr(e.obj, S.k))
        d = e.phase.direction
        if not (z and z.cross(d) == 0 and z.dot(d) > 0):
            wit_b.append({"class": list(e.cls), "object": str(e.obj)})
    report["b"] = {"ok": not wit_b, "witnesses": wit_b}
    # (d): Hom^0 from higher to lower phase vanishes
    wit_d = []
    for e1 in S.stables:
        for e2 in S.stables:
            for d, n in ob.homs(e1.obj, e2.obj, S.N).items():
                # Hom^0(e1[m1], e2[m2]) = Hom^{m2-m1}(e1, e2): a witness when
                # phi1 + m1 > phi2 + m2 with m2 - m1 = d
                if n and e1.phase > e2.phase.shifted(d):
                    wit_d.append({"source": str(e1.obj), "target": str(e2.obj), "degree": d})
    report["d"] = {"ok": not wit_d, "witnesses": wit_d}
    # (e): charges of semistables lie in the finitely generated lattice spanned
    # by finitely many stable charges, hence are discrete
    vals = {charge(S, ob.k_class_expr(e.obj, S.k)) for e in S.stables}
    report["e"] = {"ok": all(vals), "distinct_charges": len(vals)}
    wit_c = []
    count = 0
    for E in sample:
        count += 1
        try:
            hn(S, E, check=True)
        except (AssertionError, Exception) as exc:  # noqa: BLE001 - reported as witness
            wit_c.append({"object": str(E), "error": f"{type(exc).__name__}: {exc}"})
    report["c"] = {"ok": not wit_c, "sampled": count, "witnesses": wit_c}
    report["ok"] = all(v["ok"] for v in report.values() if isinstance(v, dict))
    return report


def heart_membership(S: StabilityCondition, E: ObjExpr, t: PhaseLift) -> bool:
    filt = hn(S, E)
    return all(t < p <= t.shifted(1) for p in filt.phases)


def termination_potential(
    quadruples: Sequence[Tuple], x_max: int, A=2, r=Fraction(1, 2)
) -> dict:
    """Check f(x) phi + f(x+1) psi > f(x) beta + f(x+1) alpha for f(x) = A - r^x.

    Quadruple entries may be Fractions or PhaseLifts; the comparison is done
    with exact rationals when possible and 50-digit arithmetic otherwise.
    """
    A, r = frac(A), frac(r)
    if not (A > 1 and 0 < r < 1):
        raise InvalidInput("need A > 1 and 0 < r < 1")
    quads = []
    for q in quadruples:
        if len(q) != 4:
            raise InvalidQuadruple(f"{q!r} is not a quadruple")
        vals = [_as_real(v) for v in q]
        if not all(isinstance(v, Fraction) for v in vals):
            with mpmath.workdps(50):
                vals = [mpmath.mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else v for v in vals]
        phi, psi, alpha, beta = vals
        if not (phi < alpha <= beta < psi):
            raise InvalidQuadruple(f"need phi < alpha <= beta < psi, got {q!r}")
        quads.append(vals)
    with mpmath.workdps(50):
        for n, (phi, psi, alpha, beta) in enumerate(quads):
            for x in range(x_max + 1):
                fx, fx1 = A - r**x, A - r ** (x + 1)
                lhs = fx * phi + fx1 * psi
                rhs = fx * beta + fx1 * alpha
                if not lhs > rhs:
                    return {"ok": False, "quadruple": n, "x": x}
    return {"ok": True, "checked": len(quads), "x_max": x_max}


def _as_real(v):
    if isinstance(v, PhaseLift):
        f = v.exact_fraction()
        return f if f is not None else v.to_mpf(50)
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**12)
    return frac(v)


def condition_to_json(S: StabilityCondition) -> dict:
    return {
        "k": S.k,
        "N": S.N,
        "Z": [z.to_json() for z in S.Z],
        "standard": S.standard,
        "stables": [
            {
                "class": list(e.cls),
                "object": ob.to_json(e.obj),
                "phase": e.phase.to_json(),
                "previous": [ob.to_json(h) for h in e.history],
            }
            for e in S.stables
        ],
        "history": list(S.history),
    }


def condition_from_json(obj) -> StabilityCondition:
    k, N = int(obj["k"]), int(obj["N"])
    Z = [GaussianRational.from_json(z) for z in obj["Z"]]
    if "stables" in obj:
        stables = tuple(
            StableEntry(
                tuple(s["class"]),
                ob.from_json(s["object"]),
                PhaseLift.from_json(s["phase"]),
                tuple(ob.from_json(h) for h in s.get("previous", ())),
            )
            for s in obj["stables"]
        )
        return StabilityCondition(k, N, tuple(Z), stables, bool(obj.get("standard", False)), tuple(obj.get("history", ())))
    return standard_condition(k, N, Z, obj.get("windings"))
