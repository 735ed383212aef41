import pytest
from hypothesis import given, strategies as st

from akstab import intervals as I
from akstab.errors import AkstabError
from akstab.intervals import P

import oracles


def test_spherical():
    assert I.hom_dims(P(1, 3), P(1, 3), 2) == {0: 1, 2: 1}


def test_full_overlap_gives_one_summand():
    assert I.hom_dims(P(2, 3), P(1, 2), 2) == {1: 1, 2: 1}


def test_self_homs_shift_invariant():
    assert I.hom_dims(P(1, 1, 3), P(1, 1, 3), 2) == {0: 1, 2: 1}


def test_far_apart_is_zero():
    assert I.hom_dims(P(3, 3), P(1, 1), 2) == {}


def test_k_classes():
    assert I.k_class(P(2, 2), 3) == (0, 1, 0)
    assert I.k_class(P(1, 3, 1), 3) == (-1, -1, -1)
    assert I.k_class(P(1, 2), 3) == (1, 1, 0)


def test_euler_form_examples():
    assert I.euler_form((1, 0, 0), (1, 0, 0), 2) == 2
    assert I.euler_form((1, 0, 0), (0, 1, 0), 2) == -1
    assert I.euler_form((1, 1, 1), (1, 1, 1), 2) == 2


def test_serre_examples():
    rep = I.serre_check(3, 2)
    assert rep["ok"] and rep["pairs"] == 36
    assert I.serre_check(1, 7)["ok"]
    assert I.serre_check(5, 3)["ok"]


def test_interval_validation():
    with pytest.raises(AkstabError):
        P(3, 2)
    with pytest.raises(AkstabError):
        P(1, 4).check(3)


@pytest.mark.parametrize("k,N", [(3, 2), (4, 2), (4, 3), (3, 4)])
def test_table_matches_oracle_complexes(k, N):
    ivs = list(I.intervals(k))
    for a in ivs:
        for b in ivs:
            for m in (-2, 0, 1):
                want = oracles.hom_dims(oracles.interval(a.i, a.j), oracles.interval(b.i, b.j, m), N)
                assert I.hom_dims(a, b.shifted(m), N) == want, (a, b, m)


@given(st.integers(1, 6), st.sampled_from([2, 3, 4]), st.data())
def test_serre_duality(k, N, data):
    ivs = list(I.intervals(k))
    a = data.draw(st.sampled_from(ivs))
    b = data.draw(st.sampled_from(ivs)).shifted(data.draw(st.integers(-3, 3)))
    hab, hba = I.hom_dims(a, b, N), I.hom_dims(b, a, N)
    for d in set(hab) | {N - x for x in hba}:
        assert hab.get(d, 0) == hba.get(N - d, 0)


@given(st.integers(1, 6), st.sampled_from([2, 3]), st.data())
def test_shift_rule(k, N, data):
    ivs = list(I.intervals(k))
    a, b = data.draw(st.sampled_from(ivs)), data.draw(st.sampled_from(ivs))
    m, n = data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))
    base = I.hom_dims(a, b, N)
    assert I.hom_dims(a.shifted(m), b.shifted(n), N) == {d - n + m: c for d, c in base.items()}


@given(st.integers(1, 6), st.sampled_from([2, 3]), st.data())
def test_euler_form_is_bilinear_on_classes(k, N, data):
    ivs = list(I.intervals(k))
    a, b = data.draw(st.sampled_from(ivs)), data.draw(st.sampled_from(ivs))
    chi = I.euler_char(I.hom_dims(a, b, N))
    assert I.euler_form(I.k_class(a, k), I.k_class(b, k), N) == chi


def test_dims_json_keys_are_strings():
    assert I.dims_to_json({2: 1, 1: 1}) == {"1": 1, "2": 1}
