import itertools

import pytest
from hypothesis import given, strategies as st

from akstab import objects as ob
from akstab.errors import ExtUndefined
from akstab.intervals import intervals

import oracles

P = ob.stable


def test_ext_table_examples():
    assert ob.ext(P(1, 2), P(3, 3), 2) == P(1, 3)
    assert ob.ext(P(1, 2), P(2, 3), 2) == ob.direct_sum(P(2, 2), P(1, 3))
    assert ob.ext(P(2, 3), P(1, 3, 1), 2) == P(1, 1, 1)
    assert ob.is_zero(ob.ext(P(2, 2), P(2, 2, 1), 2))


def test_ext_without_extension_class():
    with pytest.raises(ExtUndefined):
        ob.ext(P(1, 1), P(3, 3), 2)


def test_sum_and_shift():
    assert ob.direct_sum(P(1, 1), ob.direct_sum()) == P(1, 1)
    assert ob.shift(ob.shift(P(1, 2), 1), -1) == P(1, 2)
    assert ob.direct_sum(P(1, 1, 2), P(3, 3)) == ob.direct_sum(P(3, 3), P(1, 1, 2))


def test_k_class_expr_examples():
    assert ob.k_class_expr(ob.Ext(P(1, 2), P(3, 3)), 3) == (1, 1, 1)
    assert ob.k_class_expr(ob.direct_sum(), 3) == (0, 0, 0)
    assert ob.k_class_expr(ob.Ext(P(2, 3), P(1, 2, 1)), 3) == (-1, 0, 1)


def test_json_round_trip():
    e = ob.Ext(P(2, 3), ob.direct_sum(P(1, 2, 1), P(3, 3, -2)))
    assert ob.from_json(ob.to_json(e)) == e


def test_assoc_commute_report():
    rep = ob.assoc_commute_check(P(1, 1), P(2, 2), P(3, 3), 2)
    assert rep["ok"] and rep["reducible"]
    assert rep["assoc"]["holds"] is True and rep["assoc"]["right"] == "P13"
    assert rep["commute"]["applies"] is False
    assert any(step["ext1"] == ["P33", "P11"] and step["dim"] == 0 for step in rep["trace"])


def test_assoc_commute_needs_inner_extension():
    with pytest.raises(ExtUndefined):
        ob.assoc_commute_check(P(2, 2), P(1, 1), P(3, 3), 2)


@pytest.mark.parametrize("k,N", [(3, 2), (4, 2), (4, 3), (5, 2)])
def test_table_soundness(k, N):
    rep = ob.table_soundness(k, N)
    assert rep["ok"], rep["failures"][:3]
    assert sum(rep["cases"].values()) > 0


def test_table_soundness_sees_every_rule():
    names = set(ob.table_soundness(4, 2)["cases"])
    assert len(names) >= 6, names


def _pairs(k, N):
    for a, b in itertools.product(intervals(k), repeat=2):
        for m in (-1, 0, 1, 2):
            x, y = P(a.i, a.j), P(b.i, b.j, m)
            if ob.ext_dim(y, x, N) == 1:
                yield x, y


@pytest.mark.parametrize("k,N", [(3, 2), (3, 3), (4, 2)])
def test_ext_matches_oracle_cone(k, N):
    for x, y in _pairs(k, N):
        got = ob.ext(x, y, N)
        want = oracles.extension(oracles.realize(x, N), oracles.realize(y, N), N)
        assert oracles.fingerprint(oracles.realize(got, N), k, N) == oracles.fingerprint(want, k, N), (x, y, got)


def test_three_leaf_ext_matches_oracle():
    k, N = 3, 2
    stables = [P(a.i, a.j, m) for a in intervals(k) for m in (0, 1)]
    checked = 0
    for a, b, c in itertools.product(stables, repeat=3):
        if ob.ext_dim(c, b, N) != 1:
            continue
        bc = ob.ext(b, c, N)
        if ob.is_zero(bc) or ob.ext_dim(bc, a, N) != 1:
            continue
        got = ob.ext(a, bc, N)
        inner = oracles.extension(oracles.realize(b, N), oracles.realize(c, N), N)
        want = oracles.extension(oracles.realize(a, N), inner, N)
        assert oracles.fingerprint(oracles.realize(got, N), k, N) == oracles.fingerprint(want, k, N), (a, b, c)
        checked += 1
    assert checked > 50


intervals_k4 = st.builds(
    lambda i, l, m: P(min(i, l), max(i, l), m),
    st.integers(1, 4),
    st.integers(1, 4),
    st.integers(-2, 2),
)


@given(intervals_k4, intervals_k4, st.integers(-3, 3))
def test_ext_shift_equivariant(a, b, n):
    if ob.ext_dim(b, a, 2) != 1:
        return
    assert ob.shift(ob.ext(a, b, 2), n) == ob.ext(ob.shift(a, n), ob.shift(b, n), 2)


@given(intervals_k4, intervals_k4)
def test_ext_is_additive_in_k_theory(a, b):
    if ob.ext_dim(b, a, 2) != 1:
        return
    e = ob.ext(a, b, 2)
    ka, kb = ob.k_class_expr(a, 4), ob.k_class_expr(b, 4)
    assert ob.k_class_expr(e, 4) == tuple(x + y for x, y in zip(ka, kb))


@given(intervals_k4, intervals_k4)
def test_ext_homs_agree_with_oracle(a, b):
    N = 2
    want = oracles.hom_dims(oracles.realize(a, N), oracles.realize(b, N), N)
    assert ob.homs(a, b, N) == want
