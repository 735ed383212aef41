"""Walls along straight segments of central charges, crossing them (N = 2),
simplicity checks, and spherical twists.

A wall is a time t in (0, 1) at which two stable classes get real-proportional
charges.  Crossing a wall where P, Q and R = P + Q collide replaces the
stable object of the largest-mass class R by the extension of the two others
in the order prescribed by their phases after the wall.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from . import objects as ob
from .errors import (
    ExtAmbiguous,
    ExtUndefined,
    InvalidInput,
    MassVanishes,
    NonGenericPath,
    NotSimple,
    UnknownHom,
)
from .exact import GaussianRational, QuadSurd, frac, frac_str, quadratic_roots, sign, surd_between
from .intervals import Interval, euler_form, euler_matrix
from .objects import ObjExpr
from .stability import Cls, PhaseLift, StabilityCondition, StableEntry

# -- segments and wall events -------------------------------------------------


def _lerp(Z0, Z1, t: Fraction) -> Tuple[GaussianRational, ...]:
    t = frac(t)
    return tuple(a * (1 - t) + b * t for a, b in zip(Z0, Z1))


def _class_charge(Z, cls: Cls) -> GaussianRational:
    out = GaussianRational(0, 0)
    for t in range(cls[0], cls[1] + 1):
        out = out + Z[t - 1]
    return out


def _classes(k: int) -> List[Cls]:
    return [(i, j) for i in range(1, k + 1) for j in range(i, k + 1)]


def _kvec(cls: Cls, k: int) -> Tuple[int, ...]:
    return tuple(1 if cls[0] <= t <= cls[1] else 0 for t in range(1, k + 1))


@dataclass(frozen=True)
class WallEvent:
    time: QuadSurd
    colliding: Tuple[Cls, ...]
    kind: str  # "parallel" | "antiparallel"
    before: Fraction  # rational times bracketing the wall and no other
    after: Fraction
    Z0: Tuple[GaussianRational, ...]
    Z1: Tuple[GaussianRational, ...]

    def to_json(self) -> dict:
        return {
            "time": self.time.to_json(),
            "colliding": [list(c) for c in self.colliding],
            "kind": self.kind,
            "before": frac_str(self.before),
            "after": frac_str(self.after),
        }


def _poly_at(c0: Fraction, c1: Fraction, c2: Fraction, t: QuadSurd) -> int:
    """Sign of c0 + c1 t + c2 t^2 at a quadratic surd t."""
    p, q, r = t.p, t.q, t.r
    val_p = c0 + c1 * p + c2 * (p * p + q * q * r)
    val_q = c1 * q + 2 * c2 * p * q
    return QuadSurd.make(val_p, val_q, r if val_q else 1).sign() if val_q else sign(val_p)


def _pair_poly(Z0, Z1, u: Cls, v: Cls, op: str) -> Tuple[Fraction, Fraction, Fraction]:
    a_u, a_v = _class_charge(Z0, u), _class_charge(Z0, v)
    b_u, b_v = _class_charge(Z1, u) - a_u, _class_charge(Z1, v) - a_v
    f = (lambda x, y: x.cross(y)) if op == "cross" else (lambda x, y: x.dot(y))
    return f(a_u, a_v), f(a_u, b_v) + f(b_u, a_v), f(b_u, b_v)


def check_mass(Z0, Z1, k: int) -> None:
    """Raise MassVanishes when some stable charge hits zero on the segment."""
    for cls in _classes(k):
        a = _class_charge(Z0, cls)
        b = _class_charge(Z1, cls) - a
        if not a:
            raise MassVanishes(f"Z([P_{cls[0]}{cls[1]}]) = 0 at t = 0")
        if b and a.cross(b) == 0:
            t = -a.dot(b) / b.norm2()
            if 0 <= t <= 1:
                raise MassVanishes(f"Z([P_{cls[0]}{cls[1]}]) = 0 at t = {t}")


def _dependent(classes: Sequence[Cls], k: int) -> bool:
    vs = [_kvec(c, k) for c in classes]
    a, b, c = vs
    return any(
        tuple(x + y for x, y in zip(p, q)) == r for p, q, r in ((a, b, c), (a, c, b), (b, c, a))
    )


def walls_on_segment(S: StabilityCondition, Z_target: Sequence[GaussianRational]) -> List[WallEvent]:
    Z0, Z1 = tuple(S.Z), tuple(Z_target)
    if len(Z1) != S.k:
        raise InvalidInput("target charge has the wrong length")
    check_mass(Z0, Z1, S.k)
    hits: Dict[QuadSurd, set] = {}
    for u, v in combinations(_classes(S.k), 2):
        c = _pair_poly(Z0, Z1, u, v, "cross")
        if c == (0, 0, 0):
            raise NonGenericPath(f"classes {u} and {v} stay aligned along the segment")
        for t, mult in quadratic_roots(c[2], c[1], c[0]):
            if mult % 2 == 0:
                continue
            if t == QuadSurd.make(0) or t == QuadSurd.make(1):
                raise NonGenericPath(f"classes {u} and {v} collide at a segment endpoint")
            if QuadSurd.make(0) < t < QuadSurd.make(1):
                hits.setdefault(t, set()).add((u, v))
    times = sorted(hits)
    events = []
    for n, t in enumerate(times):
        pairs = hits[t]
        classes = sorted({c for p in pairs for c in p})
        if len(classes) == 3 and len(pairs) == 3 and _dependent(classes, S.k):
            pass
        elif len(pairs) != 1:
            raise NonGenericPath(f"simultaneous collisions {sorted(pairs)} at t = {float(t):.6g}")
        u, v = classes[0], classes[1]
        kind = "parallel" if _poly_at(*_pair_poly(Z0, Z1, u, v, "dot"), t) > 0 else "antiparallel"
        prev = times[n - 1] if n else QuadSurd.make(0)
        nxt = times[n + 1] if n + 1 < len(times) else QuadSurd.make(1)
        events.append(
            WallEvent(t, tuple(classes), kind, surd_between(prev, t), surd_between(t, nxt), Z0, Z1)
        )
    return events


# -- transport and crossing -----------------------------------------------------


def _transport(p: PhaseLift, z_old: GaussianRational, z_new: GaussianRational) -> PhaseLift:
    """Continue a lift along the straight segment z_old -> z_new (not through 0)."""
    s = sign(z_old.cross(z_new))
    for cand in PhaseLift.lifts(z_new, p.n - 2, p.n + 2):
        if s > 0 and p < cand < p.shifted(1):
            return cand
        if s < 0 and p.shifted(-1) < cand < p:
            return cand
        if s == 0 and cand == p:
            return cand
    raise MassVanishes("charge passes through zero")


def move(S: StabilityCondition, Z_new: Sequence[GaussianRational]) -> StabilityCondition:
    """Deform the charge along a straight segment with no wall in between."""
    Z_new = tuple(Z_new)
    check_mass(S.Z, Z_new, S.k)
    out = []
    for e in S.stables:
        out.append(
            replace(e, phase=_transport(e.phase, _class_charge(S.Z, e.cls), _class_charge(Z_new, e.cls)))
        )
    return S.with_stables(out, Z=Z_new)


def _mpc(z: GaussianRational):
    return mpmath.mpc(
        mpmath.mpf(z.re.numerator) / z.re.denominator, mpmath.mpf(z.im.numerator) / z.im.denominator
    )


def _class_charge_mp(Zw, cls: Cls):
    return mpmath.fsum(Zw[t - 1] for t in range(cls[0], cls[1] + 1))


def _charges_at(e: WallEvent):
    t = e.time.to_mpf(mpmath.mp.dps + 10)
    return [(1 - t) * _mpc(a) + t * _mpc(b) for a, b in zip(e.Z0, e.Z1)]


def _wall_phase(e: StableEntry, S: StabilityCondition, Zw):
    """Phase at the wall, continued from the lift stored in S."""
    z0 = _mpc(_class_charge(S.Z, e.cls))
    zw = _class_charge_mp(Zw, e.cls)
    swept = mpmath.arg(zw / z0)
    return e.phase.to_mpf(mpmath.mp.dps) + swept / mpmath.pi


def _common_shifts(S: StabilityCondition, e: WallEvent, ref: StableEntry, others: Sequence[StableEntry]) -> List[int]:
    """Shifts m with phase(other) + m = phase(ref) at the wall."""
    with mpmath.workdps(50):
        Zw = _charges_at(e)
        base = _wall_phase(ref, S, Zw)
        out = []
        for o in others:
            d = base - _wall_phase(o, S, Zw)
            m = int(mpmath.nint(d))
            if abs(d - m) > mpmath.mpf(10) ** -20:
                raise NotSimple("colliding phases differ by a non-integer at the wall")
            out.append(m)
        return out


def cross(S: StabilityCondition, e: WallEvent) -> StabilityCondition:
    """Cross the wall e; the result sits at the rational time e.after."""
    if S.N != 2:
        raise InvalidInput("wall crossing is implemented for N = 2")
    Zb, Za = _lerp(e.Z0, e.Z1, e.before), _lerp(e.Z0, e.Z1, e.after)
    S = move(S, Zb)
    ents = [S.entry(c) for c in e.colliding]
    after = move(S, Za)
    if len(ents) == 2:
        p, q = ents
        (m,) = _common_shifts(S, e, p, [q])
        qm = ob.shift(q.obj, m)
        for d in range(S.N):
            if ob.homs(p.obj, qm, S.N).get(d) or ob.homs(qm, p.obj, S.N).get(d):
                raise NotSimple(f"{p.obj} and {qm} collide with a Hom in degree {d}")
        return after
    # triple wall: R is the class of largest mass
    with mpmath.workdps(50):
        Zw = _charges_at(e)
        ents.sort(key=lambda x: abs(_class_charge_mp(Zw, x.cls)))
    p, q, r = ents
    mp, mq = _common_shifts(S, e, r, [p, q])
    ap, aq = after.entry(p.cls), after.entry(q.cls)
    P, Q = ob.shift(p.obj, mp), ob.shift(q.obj, mq)
    if ap.phase.shifted(mp) < aq.phase.shifted(mq):
        low, high = P, Q
    else:
        low, high = Q, P
    try:
        new = ob.ext(low, high, S.N)
    except (ExtUndefined, ExtAmbiguous) as exc:
        raise NotSimple(f"no canonical extension {low} # {high}: {exc}") from exc
    if ob.k_class_expr(new, S.k) != ob.k_class_expr(r.obj, S.k):
        raise NotSimple("K-class changed across the wall")
    new = canonical(new, r, S.N)
    note = f"{r.cls}: {r.obj} -> {new}"
    stables = [
        replace(x, obj=new, history=x.history + (r.obj,)) if x.cls == r.cls else x for x in after.stables
    ]
    return after.with_stables(stables, standard=False, history=S.history + (note,))


def canonical(new: ObjExpr, r: StableEntry, N: int) -> ObjExpr:
    """A fixed representative of new's isomorphism class.

    Earlier objects of the same class win, then interval objects with an even
    shift; otherwise new is returned unchanged.
    """
    if isinstance(new, ob.Stable):
        return new
    cands = list(reversed(r.history)) + [r.obj]
    i, j = r.cls
    cands += [ob.stable(i, j, m) for m in (0, 2, -2, 4, -4)]
    for c in cands:
        if c != new and ob.isomorphic(new, c, N):
            return c
    return new


def follow(S: StabilityCondition, Z_target: Sequence[GaussianRational]) -> Tuple[StabilityCondition, List[WallEvent]]:
    events = walls_on_segment(S, Z_target)
    for e in events:
        S = cross(S, e)
    return move(S, Z_target), events


def follow_path(S: StabilityCondition, path: Sequence[Sequence[GaussianRational]]):
    """Follow a polygonal path of charges; returns the end condition and all events."""
    events: List[WallEvent] = []
    for Z in path:
        S, ev = follow(S, Z)
        events.extend(ev)
    return S, events


# -- simplicity ----------------------------------------------------------------


def _relation(u: Cls, v: Cls) -> str:
    (a, b), (c, d) = u, v
    if u == v:
        return "same"
    if c == b + 1 or a == d + 1:
        return "adjacent"
    if a == c or b == d:
        return "shared"
    if b < c or d < a:
        return "disjoint"
    if a < c <= b < d or c < a <= d < b:
        return "overlap"
    return "nested"


def simple_report(S: StabilityCondition, pedantic: bool = False) -> dict:
    k, N = S.k, S.N
    problems = []
    classes = sorted(e.cls for e in S.stables)
    if classes != _classes(k):
        problems.append({"check": "count", "found": len(classes), "expected": k * (k + 1) // 2})
    try:
        for e in S.stables:
            if ob.homs(e.obj, e.obj, N) != {0: 1, N: 1}:
                problems.append({"check": "spherical", "class": list(e.cls)})
            if ob.k_class_expr(e.obj, k) != _kvec(e.cls, k):
                problems.append({"check": "k-class", "class": list(e.cls)})
        for e1 in S.stables:
            for e2 in S.stables:
                rel = _relation(e1.cls, e2.cls)
                h = ob.homs(e1.obj, e2.obj, N)
                total = sum(h.values())
                chi = sum((-1) ** (d % 2) * n for d, n in h.items())
                if rel in ("adjacent", "shared") and total != 1:
                    problems.append({"check": "one-hom", "pair": [list(e1.cls), list(e2.cls)], "dims": total})
                # chi = 0 is the even-N statement; for odd N the interval classes
                # themselves pair to +-2 when they overlap
                want = 0 if N % 2 == 0 else euler_form(_kvec(e1.cls, k), _kvec(e2.cls, k), N)
                if rel in ("disjoint", "overlap") and chi != want:
                    problems.append({"check": "euler", "pair": [list(e1.cls), list(e2.cls)], "chi": chi})
    except (UnknownHom, ExtUndefined, ExtAmbiguous) as exc:
        raise UnknownHom(str(exc)) from exc
    out = {"ok": not problems, "problems": problems}
    if pedantic:
        literal = []
        for e1 in S.stables:
            for e2 in S.stables:
                (a, b), (c, d) = e1.cls, e2.cls
                if a < c and c != b + 1:
                    h = ob.homs(e1.obj, e2.obj, N)
                    chi = sum((-1) ** (x % 2) * n for x, n in h.items())
                    if chi:
                        literal.append({"pair": [list(e1.cls), list(e2.cls)], "chi": chi})
        out["literal_condition"] = {"holds": not literal, "violations": literal}
    return out


def is_simple(S: StabilityCondition) -> bool:
    return simple_report(S)["ok"]


# -- spherical twists -------------------------------------------------------------


def _node(a: int, m: int = 0) -> ObjExpr:
    return ob.stable(a, a, m)


def _single_degree(h: Dict[int, int], what: str) -> int:
    if len(h) != 1 or sum(h.values()) != 1:
        raise UnknownHom(f"{what} is not one-dimensional: {h}")
    return next(iter(h))


def twist(a: int, E: ObjExpr, N: int = 2) -> ObjExpr:
    """T_{P_a}(E), defined by the triangle P_a (x) Hom*(P_a, E) -> E -> T(E)."""
    if isinstance(E, ob.Sum):
        return ob.direct_sum(*[twist(a, t, N) for t in E.terms])
    if isinstance(E, ob.Ext):
        return ob.ext(twist(a, E.sub, N), twist(a, E.quot, N), N)
    if E.iv.base == Interval(a, a):
        return ob.shift(E, 1 - N)
    h = ob.homs(_node(a), E, N)
    if not h:
        return E
    n = _single_degree(h, f"Hom*(P_{a}, {E})")
    return ob.ext(E, _node(a, 1 - n), N)


def twist_inverse(a: int, E: ObjExpr, N: int = 2) -> ObjExpr:
    if isinstance(E, ob.Sum):
        return ob.direct_sum(*[twist_inverse(a, t, N) for t in E.terms])
    if isinstance(E, ob.Ext):
        return ob.ext(twist_inverse(a, E.sub, N), twist_inverse(a, E.quot, N), N)
    if E.iv.base == Interval(a, a):
        return ob.shift(E, N - 1)
    h = ob.homs(E, _node(a), N)
    if not h:
        return E
    n = _single_degree(h, f"Hom*({E}, P_{a})")
    return ob.ext(_node(a, n - 1), E, N)


def twist_power(a: int, E: ObjExpr, n: int, N: int = 2) -> ObjExpr:
    for _ in range(abs(n)):
        E = twist(a, E, N) if n > 0 else twist_inverse(a, E, N)
    return E


Matrix = List[List[int]]


def twist_K(a: int, k: int, N: int = 2) -> Matrix:
    """Matrix of [E] -> [E] - chi(P_a, E)[P_a] on column vectors."""
    if not 1 <= a <= k:
        raise InvalidInput(f"twist index {a} outside 1..{k}")
    M = euler_matrix(k, N)
    out = [[int(r == c) for c in range(k)] for r in range(k)]
    for c in range(k):
        out[a - 1][c] -= M[a - 1][c]
    return out


def twist_K_inverse(a: int, k: int, N: int = 2) -> Matrix:
    """Matrix of [E] -> [E] - chi(E, P_a)[P_a]."""
    if not 1 <= a <= k:
        raise InvalidInput(f"twist index {a} outside 1..{k}")
    M = euler_matrix(k, N)
    out = [[int(r == c) for c in range(k)] for r in range(k)]
    for c in range(k):
        out[a - 1][c] -= M[c][a - 1]
    return out


def matmul(A: Matrix, B: Matrix) -> Matrix:
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def identity_matrix(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


# -- generator loops ----------------------------------------------------------------


def rational_circle(sides: int, den: int = 1000) -> List[GaussianRational]:
    """Rational vertices of a sides-gon around 0, at angles 2pi(s + 1/2)/sides."""
    pts = []
    with mpmath.workdps(30):
        for s in range(sides):
            ang = 2 * mpmath.pi * (s + mpmath.mpf(1) / 2) / sides
            re = Fraction(mpmath.nstr(mpmath.cos(ang), 20)).limit_denominator(den)
            im = Fraction(mpmath.nstr(mpmath.sin(ang), 20)).limit_denominator(den)
            pts.append(GaussianRational(re, im))
    return pts


def generator_path(S: StabilityCondition, i: int, sides: int = 8, turns: int = 1):
    """Charge vertices rotating Z(P_i) by turns * 2pi (counterclockwise when
    turns > 0) and returning to the start."""
    if sides < 8 or sides % 2:
        raise InvalidInput("sides must be even and >= 8")
    if not 1 <= i <= S.k:
        raise InvalidInput(f"index {i} outside 1..{S.k}")
    circ = rational_circle(sides)
    if turns < 0:
        circ = [w.conj() for w in circ]
    path = []
    for w in circ * abs(turns) + [GaussianRational(1, 0)]:
        Z = list(S.Z)
        Z[i - 1] = S.Z[i - 1] * w
        path.append(tuple(Z))
    return path


def _check_generator(S: StabilityCondition, i: int) -> None:
    zi = S.Z[i - 1].norm2()
    for cls in _classes(S.k):
        if cls != (i, i) and not _class_charge(S.Z, cls).norm2() > zi:
            raise InvalidInput(f"|Z(P_{i})| is not strictly the smallest stable mass")


def generator_loop(S: StabilityCondition, i: int, sides: int = 8, turns: int = 1):
    """Rotate Z(P_i) around the origin and compare with the twist prediction.

    Returns (final condition, report).  The stable object of class [P_ab] at the
    end, shifted back to its starting phase, is compared with T_{P_i}^{2 turns}(P_ab).
    """
    _check_generator(S, i)
    path = generator_path(S, i, sides, turns)
    frames = []
    cur = S
    events: List[WallEvent] = []
    for Z in path:
        cur, ev = follow(cur, Z)
        events.extend(ev)
        frames.append(cur)
    power = 2 * turns
    comparisons = []
    for e0 in S.stables:
        e1 = cur.entry(e0.cls)
        rows = {"class": list(e0.cls), "final": str(e1.obj)}
        m = e1.phase.minus(e0.phase)
        if m is None:
            rows["match"] = None
            rows["reason"] = "end charge differs from start"
        else:
            got = ob.shift(e1.obj, -m)
            want = twist_power(i, e0.obj, power, S.N)
            rows["shift"] = m
            rows["predicted"] = str(want)
            try:
                rows["match"] = ob.isomorphic(got, want, S.N)
            except UnknownHom:
                rows["match"] = None
        comparisons.append(rows)
    tracked = None
    shifts = [cur.entry((j, j)).phase.minus(S.entry((j, j)).phase) for j in range(1, S.k + 1)]
    if all(m is not None for m in shifts):
        cols = [ob.k_class_expr(ob.shift(cur.entry((j, j)).obj, -m), S.k) for j, m in zip(range(1, S.k + 1), shifts)]
        tracked = [[cols[c][r] for c in range(S.k)] for r in range(S.k)]
    step = twist_K(i, S.k, S.N) if power > 0 else twist_K_inverse(i, S.k, S.N)
    predicted = identity_matrix(S.k)
    for _ in range(abs(power)):
        predicted = matmul(predicted, step)
    report = {
        "index": i,
        "power": power,
        "events": len(events),
        "comparisons": comparisons,
        "match": all(c["match"] is True for c in comparisons),
        "K_tracked": tracked,
        "K_predicted": predicted,
        "K_match": tracked == predicted,
    }
    return cur, report, events, frames
