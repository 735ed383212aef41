from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from akstab.exact import (
    G,
    QuadSurd,
    angle_cmp,
    frac,
    frac_str,
    quadratic_roots,
    squarefree_split,
    sum_sqrt_cmp,
    surd_between,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)


def test_frac_parsing():
    assert frac("3/6") == F(1, 2)
    assert frac(4) == F(4)
    assert frac_str(F(-6, 4)) == "-3/2"
    assert frac_str(F(5)) == "5"
    with pytest.raises(TypeError):
        frac(0.5)


def test_gaussian_json_round_trip():
    z = G(F(1, 3), F(-7, 2))
    assert type(z).from_json(z.to_json()) == z


def test_angle_cmp():
    assert angle_cmp(G(1), G(0, 1)) < 0
    assert angle_cmp(G(-1, 1), G(0, 1)) > 0
    assert angle_cmp(G(2, 2), G(1, 1)) == 0


@given(st.integers(1, 10**6))
def test_squarefree_split(n):
    s, r = squarefree_split(n)
    assert s * s * r == n
    assert sympy.factorint(r) == {} or max(sympy.factorint(r).values()) == 1


def test_surd_normalisation():
    assert QuadSurd.make(1, 1, 8) == QuadSurd(F(1), F(2), 2)
    assert QuadSurd.make(0, 1, 9).is_rational
    assert QuadSurd.make(0, 1, F(1, 2)) == QuadSurd(F(0), F(1, 2), 2)


@given(rationals, rationals, st.integers(1, 50), rationals, rationals, st.integers(1, 50))
def test_surd_order_matches_sympy(p1, q1, r1, p2, q2, r2):
    a, b = QuadSurd.make(p1, q1, r1), QuadSurd.make(p2, q2, r2)
    x = sympy.Rational(p1.numerator, p1.denominator) + sympy.Rational(q1.numerator, q1.denominator) * sympy.sqrt(r1)
    y = sympy.Rational(p2.numerator, p2.denominator) + sympy.Rational(q2.numerator, q2.denominator) * sympy.sqrt(r2)
    d = sympy.nsimplify(x - y)
    want = 0 if d == 0 else (1 if d.evalf(60) > 0 else -1)
    got = 0 if a == b else (-1 if a < b else 1)
    assert got == want


@given(rationals, rationals, rationals)
def test_quadratic_roots_are_roots(a, b, c):
    for t, mult in quadratic_roots(a, b, c):
        x = sympy.Rational(t.p.numerator, t.p.denominator) + sympy.Rational(t.q.numerator, t.q.denominator) * sympy.sqrt(t.r)
        val = sympy.expand(sympy.Rational(a.numerator, a.denominator) * x**2 + sympy.Rational(b.numerator, b.denominator) * x + sympy.Rational(c.numerator, c.denominator))
        assert sympy.simplify(val) == 0
        assert mult in (1, 2)


def test_surd_between():
    a, b = QuadSurd.make(0, 1, 2), QuadSurd.make(F(3, 2))
    x = surd_between(a, b)
    assert a < QuadSurd.make(x) < b


def test_sum_sqrt_cmp():
    assert sum_sqrt_cmp([1, 1], 4, parallel=True) == 0
    assert sum_sqrt_cmp([1, 1], 2, parallel=False) == 1
    assert sum_sqrt_cmp([F(1, 4)], 1, parallel=False) == -1
    # sqrt 2 + sqrt 3 against a square root just below it: needs the precise path
    big = F(10**30)
    assert sum_sqrt_cmp([2 * big**2, 3 * big**2], (5 * big**2 + 2 * 2449489742783178098197284074705 * big), False) == 1
