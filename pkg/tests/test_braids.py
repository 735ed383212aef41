import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from akstab import braids, walls
from akstab import objects as ob
from akstab.braids import Configuration, braid_of_loop, coords_action, free_reduce, is_trivial
from akstab.errors import AkstabError, CoincidentPoints, IndexOutOfRange, NonGenericLoop
from akstab.exact import G
from akstab.stability import standard_condition

import oracles
from helpers import generic_charges

P = ob.stable


def cfg(*pts):
    return Configuration(tuple(G(*p) if isinstance(p, tuple) else G(p) for p in pts))


def test_config_from_charge_examples():
    Z = [G(1), G(1, 1), G(0, 1)]
    assert braids.config_from_charge(Z, center=False).points == (G(0), G(1), G(2, 1), G(2, 2))
    shift = G(F(5, 4), F(3, 4))
    assert braids.config_from_charge(Z).points == tuple(p - shift for p in (G(0), G(1), G(2, 1), G(2, 2)))
    assert braids.config_from_charge([G(1)]).points == (G(F(-1, 2)), G(F(1, 2)))
    with pytest.raises(CoincidentPoints):
        braids.config_from_charge([G(1), G(-1), G(1)])


def test_coords_action_examples():
    c = braids.base_coords(3)
    assert coords_action((), c, 3) == c
    assert coords_action((1,), c, 3) != c


@given(st.lists(st.integers(-20, 20), min_size=8, max_size=8))
def test_braid_relation_on_coordinates(c):
    c = tuple(c)
    assert coords_action((1, 2, 1), c, 3) == coords_action((2, 1, 2), c, 3)
    assert coords_action((1, 3), c, 3) == coords_action((3, 1), c, 3)
    assert coords_action((2, -2), c, 3) == c


def test_is_trivial_examples():
    assert is_trivial((1, 2, 1, -2, -1, -2))
    assert not is_trivial((1, 2))
    assert is_trivial((1, -1))
    assert free_reduce((1, -1, 2)) == (2,)


def test_word_validation():
    with pytest.raises(IndexOutOfRange):
        braids.check_word((4,), 3)
    with pytest.raises(IndexOutOfRange):
        free_reduce((0,))


@pytest.mark.parametrize("length", [1, 2, 3, 4])
def test_triviality_matches_artin_action(length):
    for w in oracles.reduced_words(length, 2):
        assert is_trivial(w, 2) == oracles.artin_trivial(w, 3), w


# two points turning counterclockwise about 1/2 in steps of about 60 degrees
_TURN = [(0, 0), (F(1, 4), F(-2, 5)), (F(3, 4), F(-2, 5)), (1, 0), (F(3, 4), F(2, 5)), (F(1, 4), F(2, 5))]


def _turn(steps):
    return [cfg(_TURN[s], _TURN[(s + 3) % 6]) for s in range(steps + 1) if s < 6]


def test_half_turn_is_sigma_one():
    assert braid_of_loop(_turn(3), closed=False) == (1,)


def test_full_turn_is_sigma_one_squared():
    assert braid_of_loop(_turn(5)) == (1, 1)
    assert braid_of_loop([_turn(5)[0]] + _turn(5)[1:][::-1]) == (-1, -1)


def test_constant_loop():
    assert braid_of_loop([cfg(0, 1, 2)]) == ()


def test_degenerate_projection_needs_a_tilt():
    loop = [cfg(0, (0, 1))]
    with pytest.raises(NonGenericLoop):
        braid_of_loop(loop)
    assert braid_of_loop(loop, tilt=G(1, F(-1, 8))) == ()


def random_loop(rng, n, steps):
    base = cfg(*range(n))
    out = [base]
    for _ in range(steps):
        out.append(Configuration(tuple(G(F(rng.randint(-40, 40), 10), F(rng.randint(-40, 40), 10)) for _ in range(n))))
    return out


def _loops(rng, n, count):
    while count:
        loop = random_loop(rng, n, rng.randint(1, 4))
        try:
            braid_of_loop(loop)
        except AkstabError:
            continue
        count -= 1
        yield loop


def test_loop_homomorphism_and_inverse(rng):
    loops = list(_loops(rng, 4, 20))
    for a, b in zip(loops, loops[1:]):
        wa, wb = braid_of_loop(a), braid_of_loop(b)
        assert braid_of_loop(a + b) == free_reduce(wa + wb)
        assert braid_of_loop([a[0]] + a[1:][::-1]) == braids.inverse(wa)


def test_act_on_chain():
    assert braids.act_on_chain((1,), 2) == [P(1, 1, -1), ob.Ext(P(2, 2), P(1, 1))]
    assert braids.act_on_chain((), 3) == [P(1, 1), P(2, 2), P(3, 3)]


def test_word_K_is_a_homomorphism():
    mm = walls.matmul
    for w1, w2 in itertools.product(oracles.reduced_words(2, 3), repeat=2):
        assert braids.word_K(w1 + w2, 3) == mm(braids.word_K(w1, 3), braids.word_K(w2, 3))


@pytest.mark.parametrize("k", [2, 3])
def test_generator_monodromy(k):
    for i in range(1, k + 1):
        for turns in (1, -1):
            S = standard_condition(k, 2, generic_charges(k, i))
            _, rep, _, _ = braids.generator_monodromy(S, i, 8, turns)
            s = i if turns > 0 else -i
            assert rep["word"] == [s, s]
            assert not rep["trivial"]
            assert rep["match"] and rep["K_match"] and rep["K_word_match"]


def _two_small():
    return standard_condition(3, 2, [G(F(1, 10), F(1, 100)), G(1, F(1, 5)), G(F(1, 9), F(1, 30))])


def _gen(S, i, t):
    return [tuple(z) for z in walls.generator_path(S, i, 8, t)]


def test_out_and_back_monodromy():
    S = _two_small()
    Z = tuple(z + G(0, F(1, 50)) for z in S.Z)
    rep = braids.monodromy_compare(S, [Z])
    assert rep["word"] == [] and rep["identity"] and rep["consistent"]


def test_commutator_of_disjoint_generators():
    S = _two_small()
    path = _gen(S, 1, 1) + _gen(S, 3, 1) + _gen(S, 1, -1) + _gen(S, 3, -1)
    rep = braids.monodromy_compare(S, path[:-1])
    assert rep["word"] == [1, 1, 3, 3, -1, -1, -3, -3]
    assert rep["trivial"] and rep["identity"] and rep["match"] and rep["K_match"]


def test_generator_loop_changes_objects():
    S = _two_small()
    rep = braids.monodromy_compare(S, _gen(S, 3, 1)[:-1])
    assert rep["word"] == [3, 3]
    assert not rep["trivial"] and not rep["identity"]
    assert rep["match"] and rep["consistent"]
