"""Braid words, the Dynnikov coordinate action, point configurations and the
monodromy of loops of central charges.

Conventions.  Words use Artin generators 1..k of B_{k+1}, acting on the k+1
points 0, Z_1, Z_1+Z_2, ... of a charge vector.  sigma_j exchanges the points
in real-order positions j-1 and j (0-based); it is positive when the strand
moving right-to-left passes above (larger imaginary part), so a
counterclockwise half-turn of two points is sigma_1.

Dynnikov coordinates.  B_{k+1} is embedded in B_{k+3} with one spare puncture
at each end, so every generator acts by the interior update rule on the pair
(a_{j-1}, b_{j-1}, a_j, b_j), j = g + 1.  Vectors have length 2(k+1); the
reference lamination is (0, 1, 0, 1, ...), whose stabilizer is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import objects as ob
from .errors import (
    CoincidentPoints,
    IndexOutOfRange,
    InvalidInput,
    NonGenericLoop,
    PointCollision,
)
from .exact import GaussianRational, frac, sign
from .stability import StabilityCondition
from .walls import (
    Matrix,
    follow_path,
    generator_loop,
    generator_path,
    identity_matrix,
    matmul,
    twist,
    twist_inverse,
    twist_K,
    twist_K_inverse,
)

Word = Tuple[int, ...]


def free_reduce(w: Iterable[int]) -> Word:
    out: List[int] = []
    for g in w:
        if g == 0:
            raise IndexOutOfRange("generator index 0")
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-g for g in reversed(w))


def check_word(w: Sequence[int], k: int) -> Word:
    for g in w:
        if not isinstance(g, int) or not 1 <= abs(g) <= k:
            raise IndexOutOfRange(f"generator {g} outside +-1..+-{k}")
    return tuple(w)


def word_str(w: Sequence[int]) -> str:
    return " ".join(f"s{g}" if g > 0 else f"s{-g}^-1" for g in w) or "e"


# -- Dynnikov coordinates -----------------------------------------------------


def base_coords(k: int) -> Tuple[int, ...]:
    return (0, 1) * (k + 1)


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _neg(x: int) -> int:
    return x if x < 0 else 0


def _half_twist(a1: int, b1: int, a2: int, b2: int) -> Tuple[int, int, int, int]:
    c = a1 - a2 + _pos(b2) - _neg(b1)
    return (
        a1 + _pos(b1) + _pos(_pos(b2) - c),
        b2 - _pos(c),
        a2 + _neg(b2) + _neg(_neg(b1) + c),
        b1 + _pos(c),
    )


def _act(v: List[int], g: int) -> None:
    s = 2 * (abs(g) - 1)
    a1, b1, a2, b2 = v[s : s + 4]
    if g > 0:
        v[s : s + 4] = _half_twist(a1, b1, a2, b2)
    else:
        # the inverse is the mirror image: conjugate by a -> -a
        r = _half_twist(-a1, b1, -a2, b2)
        v[s : s + 4] = [-r[0], r[1], -r[2], r[3]]


def coords_action(w: Sequence[int], c: Sequence[int], k: int) -> Tuple[int, ...]:
    """Apply the letters of w left to right to the coordinate vector c."""
    if len(c) != 2 * (k + 1):
        raise InvalidInput(f"coordinate vector must have length {2 * (k + 1)}")
    check_word(w, k)
    v = list(c)
    for g in w:
        _act(v, g)
    return tuple(v)


def is_trivial(w: Sequence[int], k: int | None = None) -> bool:
    w = free_reduce(w)
    if not w:
        return True
    k = max(abs(g) for g in w) if k is None else k
    return coords_action(w, base_coords(k), k) == base_coords(k)


# -- configurations and loops ---------------------------------------------------


@dataclass(frozen=True)
class Configuration:
    points: Tuple[GaussianRational, ...]
    centered: bool = False

    def __post_init__(self):
        pts = self.points
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                if pts[a] == pts[b]:
                    raise CoincidentPoints(f"points {a} and {b} coincide")

    def to_json(self) -> dict:
        return {"points": [p.to_json() for p in self.points], "centered": self.centered}

    @classmethod
    def from_json(cls, obj) -> "Configuration":
        pts = obj["points"] if isinstance(obj, dict) else obj
        return cls(tuple(GaussianRational.from_json(p) for p in pts), bool(isinstance(obj, dict) and obj.get("centered")))


def config_from_charge(Z: Sequence[GaussianRational], center: bool = True) -> Configuration:
    pts = [GaussianRational(0, 0)]
    for z in Z:
        pts.append(pts[-1] + z)
    try:
        cfg = Configuration(tuple(pts))
    except CoincidentPoints as exc:
        raise CoincidentPoints(f"some Z([P_ij]) vanishes: {exc}") from exc
    if not center:
        return cfg
    mean = GaussianRational(0, 0)
    for p in pts:
        mean = mean + p
    mean = mean * Fraction(1, len(pts))
    return Configuration(tuple(p - mean for p in pts), True)


def _segment_crossings(A: Configuration, B: Configuration):
    """(time, p, q) for each pair of strands whose real parts swap on A -> B."""
    n = len(A.points)
    out = []
    for p in range(n):
        for q in range(p + 1, n):
            x0 = A.points[p].re - A.points[q].re
            x1 = B.points[p].re - B.points[q].re
            if x0 == 0 or x1 == 0:
                raise NonGenericLoop(f"strands {p} and {q} share a real part at a vertex")
            if (x0 > 0) != (x1 > 0):
                out.append((x0 / (x0 - x1), p, q))
    return out


def braid_of_loop(
    loop: Sequence[Configuration], closed: bool = True, tilt: Optional[GaussianRational] = None
) -> Word:
    """Braid word of a piecewise-linear loop of configurations.

    The loop visits the configurations in order (and returns to the first when
    ``closed``); strands are identified by their index in ``points``.  With
    ``tilt`` every point is multiplied by it first, i.e. strands are ordered by
    a slightly rotated projection.
    """
    cfgs = list(loop)
    if not cfgs:
        return ()
    if tilt is not None:
        cfgs = [Configuration(tuple(p * tilt for p in c.points), c.centered) for c in cfgs]
    n = len(cfgs[0].points)
    if any(len(c.points) != n for c in cfgs):
        raise InvalidInput("configurations of different sizes")
    if closed:
        cfgs.append(cfgs[0])
    order = sorted(range(n), key=lambda p: cfgs[0].points[p].re)
    if any(cfgs[0].points[order[a]].re == cfgs[0].points[order[a + 1]].re for a in range(n - 1)):
        raise NonGenericLoop("strands share a real part at the start")
    word: List[int] = []
    for A, B in zip(cfgs, cfgs[1:]):
        events = sorted(_segment_crossings(A, B))
        for idx in range(len(events) - 1):
            if events[idx][0] == events[idx + 1][0]:
                raise NonGenericLoop("simultaneous crossings")
        for t, p, q in events:
            pos_p, pos_q = order.index(p), order.index(q)
            if abs(pos_p - pos_q) != 1:
                raise NonGenericLoop("crossing of non-adjacent strands")
            left, right = (p, q) if pos_p < pos_q else (q, p)
            y_left = A.points[left].im + t * (B.points[left].im - A.points[left].im)
            y_right = A.points[right].im + t * (B.points[right].im - A.points[right].im)
            if y_left == y_right:
                raise PointCollision(f"strands {p} and {q} collide")
            j = min(pos_p, pos_q) + 1
            word.append(j if y_right > y_left else -j)
            order[j - 1], order[j] = order[j], order[j - 1]
    return free_reduce(word)


def _tilted_word(cfgs: Sequence[Configuration]) -> Word:
    """Word of a closed loop, tilting the projection when the real order is degenerate."""
    try:
        return braid_of_loop(cfgs)
    except NonGenericLoop:
        pass
    for e in range(3, 12):
        try:
            return braid_of_loop(cfgs, tilt=GaussianRational(1, -Fraction(1, 2**e)))
        except NonGenericLoop:
            continue
    raise NonGenericLoop("no generic projection found for the loop")


def generator_monodromy(S: StabilityCondition, i: int, sides: int = 8, turns: int = 1):
    """generator_loop plus the braid word read off the induced point loop."""
    end, report, events, frames = generator_loop(S, i, sides, turns)
    path = generator_path(S, i, sides, turns)
    word = _tilted_word(charge_loop_configs(S.Z, path[:-1]))
    report["word"] = list(word)
    report["trivial"] = is_trivial(word, S.k)
    report["K_word"] = word_K(word, S.k, S.N)
    report["K_word_match"] = report["K_word"] == report["K_tracked"]
    return end, report, events, frames


def charge_loop_configs(Z0: Sequence[GaussianRational], path: Sequence[Sequence[GaussianRational]]):
    """Configurations of a closed charge loop Z0 -> path[0] -> ... -> Z0."""
    return [config_from_charge(Z0, center=False)] + [config_from_charge(Z, center=False) for Z in path]


# -- action on objects ----------------------------------------------------------------


def apply_word(w: Sequence[int], E: ob.ObjExpr, N: int = 2) -> ob.ObjExpr:
    """T_w(E) with sigma_i -> T_{P_i}; the rightmost letter acts first."""
    for g in reversed(w):
        E = twist(g, E, N) if g > 0 else twist_inverse(-g, E, N)
    return E


def act_on_chain(w: Sequence[int], k: int, N: int = 2) -> List[ob.ObjExpr]:
    check_word(w, k)
    return [apply_word(w, ob.stable(i, i), N) for i in range(1, k + 1)]


def word_K(w: Sequence[int], k: int, N: int = 2) -> Matrix:
    M = identity_matrix(k)
    for g in w:
        M = matmul(M, twist_K(g, k, N) if g > 0 else twist_K_inverse(-g, k, N))
    return M


def monodromy_compare(
    S: StabilityCondition, path: Sequence[Sequence[GaussianRational]], certify: bool = True
) -> dict:
    """Track S around the closed charge loop S.Z -> path -> S.Z two ways.

    (A) wall crossing, (B) the braid word of the induced point loop and the
    twist action it predicts.
    """
    if S.N != 2:
        raise InvalidInput("monodromy is implemented for N = 2")
    if any(z.re <= 0 for z in S.Z):
        raise InvalidInput("base charges need positive real parts (points in real order)")
    path = [tuple(Z) for Z in path]
    S_end, events = follow_path(S, path + [tuple(S.Z)])
    word = braid_of_loop(charge_loop_configs(S.Z, path))
    k = S.k
    cols = []
    rows = []
    identity = True
    for e0 in S.stables:
        e1 = S_end.entry(e0.cls)
        m = e1.phase.minus(e0.phase)
        got = ob.shift(e1.obj, -m)
        same = ob.isomorphic(got, e0.obj, S.N)
        identity = identity and same is True
        row = {"class": list(e0.cls), "shift": m, "final": str(e1.obj), "identity": same}
        if certify:
            want = apply_word(word, e0.obj, S.N)
            row["predicted"] = str(want)
            row["match"] = ob.isomorphic(got, want, S.N)
        rows.append(row)
        if e0.cls[0] == e0.cls[1]:
            cols.append(ob.k_class_expr(got, k))
    tracked_K = [[cols[c][r] for c in range(k)] for r in range(k)]
    predicted_K = word_K(word, k, S.N)
    trivial = is_trivial(word, k)
    return {
        "word": list(word),
        "trivial": trivial,
        "events": len(events),
        "K_tracked": tracked_K,
        "K_predicted": predicted_K,
        "K_match": tracked_K == predicted_K,
        "identity": identity,
        "consistent": trivial == identity if certify else None,
        "objects": rows,
        "match": all(r.get("match") is True for r in rows) if certify else None,
    }
