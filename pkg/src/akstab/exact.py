"""Exact numbers: Gaussian rationals, real quadratic surds, sums of square roots.

All predicates here are decided exactly.  Where an ordering question cannot be
settled by a closed-form sign rule, equality is first decided symbolically and
the (then guaranteed nonzero) difference is resolved by interval evaluation at
increasing precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Tuple, Union

import mpmath

Rational = Union[int, Fraction]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact input")
    return Fraction(x)


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", frac(re))
        object.__setattr__(self, "im", frac(im))

    def __add__(self, o: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, o) -> "GaussianRational":
        if isinstance(o, GaussianRational):
            return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        o = frac(o)
        return GaussianRational(self.re * o, self.im * o)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def cross(self, o: "GaussianRational") -> Fraction:
        return self.re * o.im - self.im * o.re

    def dot(self, o: "GaussianRational") -> Fraction:
        return self.re * o.re + self.im * o.im

    def in_upper(self) -> bool:
        """True on the half-open upper half plane {im > 0} u {im == 0, re > 0}."""
        return self.im > 0 or (self.im == 0 and self.re > 0)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_json(self) -> dict:
        return {"re": frac_str(self.re), "im": frac_str(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, dict):
            return cls(frac(obj.get("re", 0)), frac(obj.get("im", 0)))
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return cls(frac(obj[0]), frac(obj[1]))
        return cls(frac(obj), 0)

    def __repr__(self) -> str:
        return f"G({frac_str(self.re)}, {frac_str(self.im)})"


def G(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)


def angle_cmp(u: GaussianRational, v: GaussianRational) -> int:
    """Compare arguments of two nonzero vectors in the half-open upper half plane."""
    c = u.cross(v)
    # u before v counterclockwise iff cross(u, v) > 0
    return -sign(c)


def squarefree_split(n: int) -> Tuple[int, int]:
    """n = s**2 * r with r squarefree; returns (s, r)."""
    if n <= 0:
        raise ValueError("positive integer expected")
    s, r = 1, 1
    m = n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        if m % p == 0:
            m //= p
            r *= p
        p += 1 if p == 2 else 2
    return s, r * m


@total_ordering
@dataclass(frozen=True)
class QuadSurd:
    """p + q*sqrt(r) with p, q rational and r a squarefree positive integer."""

    p: Fraction
    q: Fraction
    r: int

    @classmethod
    def make(cls, p, q=0, radicand=1) -> "QuadSurd":
        p, q, radicand = frac(p), frac(q), frac(radicand)
        if radicand < 0:
            raise ValueError("negative radicand")
        if q == 0 or radicand == 0:
            return cls(p, Fraction(0), 1)
        # sqrt(n/d) = sqrt(n*d)/d
        s, r = squarefree_split(radicand.numerator * radicand.denominator)
        q = q * s / radicand.denominator
        if r == 1:
            return cls(p + q, Fraction(0), 1)
        return cls(p, q, r)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            return mpmath.mpf(self.p.numerator) / self.p.denominator + (
                mpmath.mpf(self.q.numerator) / self.q.denominator
            ) * mpmath.sqrt(self.r)

    def __float__(self) -> float:
        return float(self.to_mpf(30))

    def sign(self) -> int:
        # sign of p + q sqrt(r), exactly
        sp, sq = sign(self.p), sign(self.q)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 r
        return sp * sign(self.p * self.p - self.q * self.q * self.r)

    def __eq__(self, o) -> bool:
        if not isinstance(o, QuadSurd):
            return NotImplemented
        return (self.p, self.q, self.r if self.q else 1) == (o.p, o.q, o.r if o.q else 1)

    def __hash__(self) -> int:
        return hash((self.p, self.q, self.r if self.q else 1))

    def __lt__(self, o: "QuadSurd") -> bool:
        return compare_surds(self, o) < 0

    def to_json(self):
        if self.is_rational:
            return {"rational": frac_str(self.p), "decimal": float(self)}
        return {
            "quadratic": {"p": frac_str(self.p), "q": frac_str(self.q), "r": self.r},
            "decimal": float(self),
        }

    def __repr__(self) -> str:
        if self.is_rational:
            return f"Q({frac_str(self.p)})"
        return f"Q({frac_str(self.p)} + {frac_str(self.q)}*sqrt({self.r}))"


def compare_surds(a: QuadSurd, b: QuadSurd) -> int:
    if a == b:
        return 0
    dp = a.p - b.p
    if a.q == 0 and b.q == 0:
        return sign(dp)
    if a.q == 0:
        return QuadSurd(dp, -b.q, b.r).sign()
    if b.q == 0 or a.r == b.r:
        return QuadSurd(dp, a.q - b.q, a.r).sign()
    return _refine_sign(lambda dps: a.to_mpf(dps) - b.to_mpf(dps))


def _refine_sign(f, start: int = 30) -> int:
    """Sign of a quantity known to be nonzero, by increasing working precision."""
    dps = start
    while True:
        with mpmath.workdps(dps):
            v = f(dps)
            if abs(v) > mpmath.mpf(10) ** (-(dps - 8)):
                return 1 if v > 0 else -1
        dps *= 2
        if dps > 20000:
            raise ArithmeticError("sign refinement did not converge")


def surd_between(a: QuadSurd, b: QuadSurd) -> Fraction:
    """A rational strictly between a < b, with small denominator."""
    if not a < b:
        raise ValueError("need a < b")
    lo, hi = a.to_mpf(60), b.to_mpf(60)
    den = 2
    while True:
        x = Fraction(int(mpmath.floor((lo + hi) / 2 * den)), den)
        for cand in (x, x + Fraction(1, den)):
            c = QuadSurd.make(cand)
            if a < c < b:
                return cand
        den *= 2


def sum_sqrt_cmp(terms: Iterable[Fraction], target: Fraction, parallel: bool) -> int:
    """Sign of sum(sqrt(t) for t in terms) - sqrt(target).

    ``parallel`` is the exact equality certificate supplied by the caller: the
    difference vanishes iff the vectors whose squared lengths are ``terms`` are
    positively parallel and sum to the vector of squared length ``target``.
    """
    terms = [frac(t) for t in terms]
    target = frac(target)
    if parallel:
        return 0
    approx = math.fsum(math.sqrt(t) for t in terms) - math.sqrt(target)
    # double rounding error here is a few ulps of the magnitudes involved
    if abs(approx) > 1e-9 * (1 + math.fsum(math.sqrt(t) for t in terms)):
        return 1 if approx > 0 else -1
    return _refine_sign(
        lambda dps: mpmath.fsum(mpmath.sqrt(mpmath.mpf(t.numerator) / t.denominator) for t in terms)
        - mpmath.sqrt(mpmath.mpf(target.numerator) / target.denominator)
    )


def quadratic_roots(a: Fraction, b: Fraction, c: Fraction):
    """Real roots of a t^2 + b t + c as QuadSurds, ascending, with multiplicities."""
    a, b, c = frac(a), frac(b), frac(c)
    if a == 0:
        if b == 0:
            return []
        return [(QuadSurd.make(-c / b), 1)]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    if disc == 0:
        return [(QuadSurd.make(-b / (2 * a)), 2)]
    r1 = QuadSurd.make(-b / (2 * a), -1 / (2 * a), disc)
    r2 = QuadSurd.make(-b / (2 * a), 1 / (2 * a), disc)
    return sorted([(r1, 1), (r2, 1)], key=lambda x: x[0])


def decimal_phase(z: GaussianRational) -> float:
    return math.atan2(float(z.im), float(z.re)) / math.pi
