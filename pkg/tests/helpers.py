"""Random inputs shared by the test modules."""

import functools
from fractions import Fraction as F

from akstab.errors import AkstabError
from akstab.exact import G, angle_cmp
from akstab.stability import standard_condition


def random_condition(rng, k=None, N=None, ks=(2, 3, 4, 5), Ns=(2, 3)):
    """A valid standard condition with charges in the upper half plane."""
    k = k if k is not None else rng.choice(ks)
    N = N if N is not None else rng.choice(Ns)
    while True:
        zs = [G(F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(0, 9), rng.randint(1, 5))) for _ in range(k)]
        if not all(z.in_upper() for z in zs):
            continue
        zs.sort(key=functools.cmp_to_key(angle_cmp))
        if any(angle_cmp(zs[t], zs[t + 1]) == 0 for t in range(k - 1)):
            continue
        try:
            return standard_condition(k, N, zs)
        except AkstabError:
            continue


def generic_charges(k, small=None):
    """Charges in the right half plane with no accidental alignments;
    Z_small is shrunk so that it has the smallest stable mass."""
    Z = [G(1 + F(j, 7), F(j * j, 3 * k * k + 1)) for j in range(1, k + 1)]
    if small is not None:
        Z[small - 1] = Z[small - 1] * F(1, 10)
    return Z


def random_right_charges(rng, k):
    return [G(F(rng.randint(2, 30), 10), F(rng.randint(-30, 30), 10)) for _ in range(k)]


def merge_orders(n):
    """Every sequence of adjacent-pair merges that collapses n pieces to one."""
    import itertools

    return itertools.product(*[range(n - 1 - t) for t in range(n - 1)])


def tower_confluence(S, factors, flags):
    """Collapse the tower in every merge order and compare HN filtrations.

    Orders whose merges are undefined are skipped.  Returns the number of
    usable orders, the number of certified-isomorphic pairs of distinct
    results, and the pairs whose filtrations disagree although the objects
    are isomorphic (or which are identical yet disagree).
    """
    from akstab import objects as ob
    from akstab.stability import hn

    results = {}
    used = 0
    for order in merge_orders(len(factors)):
        items, fl = list(factors), list(flags)
        try:
            for pos in order:
                a, b = items[pos], items[pos + 1]
                items[pos : pos + 2] = [ob.ext(a, b, S.N) if fl[pos] else ob.direct_sum(a, b)]
                del fl[pos]
        except AkstabError:
            continue
        used += 1
        summary = hn(S, items[0]).summary()
        if results.setdefault(items[0], summary) != summary:
            return {"orders": used, "iso_pairs": 0, "violations": [(str(items[0]),)]}
    objs = list(results)
    pairs, bad = 0, []
    for a in range(len(objs)):
        for b in range(a + 1, len(objs)):
            x, y = objs[a], objs[b]
            if results[x] == results[y]:
                if ob.isomorphic(x, y, S.N) is True:
                    pairs += 1
                continue
            if ob.isomorphic(x, y, S.N) is True:
                pairs += 1
                bad.append((str(x), str(y)))
    return {"orders": used, "iso_pairs": pairs, "violations": bad}


def random_tower(rng, S, length, ext_bias=0.7, shifts=(-1, 0, 1)):
    """Random shifted stables with flags; a flag is 1 only where the adjacent
    pair has a one-dimensional extension group."""
    from akstab import objects as ob

    pool = [ob.shift(e.obj, m) for e in S.stables for m in shifts]
    fac, flags = [rng.choice(pool)], []
    for _ in range(length - 1):
        nxt = [p for p in pool if ob.ext_dim(p, fac[-1], S.N) == 1]
        if nxt and rng.random() < ext_bias:
            fac.append(rng.choice(nxt))
            flags.append(1)
        else:
            fac.append(rng.choice(pool))
            flags.append(0)
    return fac, flags


def clear_caches():
    """Empty every memo table so that timings start cold."""
    from akstab import chain, objects, stability

    for mod in (chain, objects, stability):
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


def identity_sweep(k, N, shifts=(-1, 0, 1)):
    """assoc_commute_check on every triple of shifted intervals whose inner
    extension b # c exists; returns (triples, reducible, failures)."""
    from akstab import objects as ob
    from akstab.errors import ExtUndefined
    from akstab.intervals import intervals

    ivs = [ob.Stable(iv.shifted(m)) for iv in intervals(k) for m in shifts]
    triples = reducible = 0
    failures = []
    for a in ivs:
        for b in ivs:
            for c in ivs:
                if ob.ext_dim(c, b, N) != 1:
                    continue
                try:
                    rep = ob.assoc_commute_check(a, b, c, N)
                except ExtUndefined:
                    continue
                triples += 1
                reducible += bool(rep["reducible"])
                if not rep["ok"]:
                    failures.append((str(a), str(b), str(c)))
    return triples, reducible, failures
