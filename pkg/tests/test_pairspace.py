import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import posets
from funayama import (
    DegeneratePoset,
    NotBounded,
    SpaceMismatch,
    UnknownPair,
    adjoin_bounds,
    below,
    box,
    build_pair_space,
    diamond,
    dual_iso,
    from_covers,
    is_downset,
    regularize,
    swap_iso,
)
from funayama.facts import M3_E, M3_PAIRS, m3, n5
from funayama.pairspace import PairSet

# arrows of the drawn diagrams, written as (upper, lower) with "1a" meaning (1, a)
M3_ARROWS = """10-1a 10-1b 10-1c 10-a0 10-b0 10-c0 1a-ba 1a-ca 1b-ab 1b-cb 1c-ac 1c-bc
a0-ab a0-ac b0-ba b0-bc c0-ca c0-cb"""
N5_ARROWS = """1a-ca 1b-1a 1b-cb 1b-ab 1c-ac 10-1b 10-1c 10-a0 10-c0 a0-b0 a0-ab a0-ac
ac-bc b0-bc cb-ca c0-cb"""


def _arrows(text):
    return {(tuple(u), tuple(v)) for u, v in (w.split("-") for w in text.split())}


def _hasse(X):
    return {(X.name(hi), X.name(lo)) for hi, lo in X.hasse_edges()}


def test_m3_points():
    X = build_pair_space(m3())
    assert len(X) == 13
    assert X.names() == M3_PAIRS


def test_n5_points():
    X = build_pair_space(n5())
    assert len(X) == 12
    assert ("b", "a") not in set(X.names())


def test_m3_hasse_matches_drawing():
    assert _hasse(build_pair_space(m3())) == _arrows(M3_ARROWS)


def test_n5_hasse_matches_drawing():
    X = build_pair_space(n5())
    assert len(X.hasse_edges()) == 16
    assert _hasse(X) == _arrows(N5_ARROWS)


def test_below_examples():
    X = build_pair_space(m3())
    assert below(X, ("a", "0")).names() == M3_E["a"]
    assert below(X, ("a", "b")).names() == {("a", "b")}
    with pytest.raises(UnknownPair):
        below(X, ("0", "a"))
    with pytest.raises(UnknownPair):
        X.index(("a", "zz"))


def test_regularize_examples():
    X = build_pair_space(m3())
    ab = X.pairset([("a", "b")])
    assert regularize(X, ab) == ab
    assert regularize(X, below(X, ("a", "0"))) == below(X, ("a", "0"))
    assert regularize(X, X.empty) == X.empty
    assert regularize(X, X.full) == X.full


def test_regularize_accepts_non_downsets():
    X = build_pair_space(m3())
    top = X.pairset([("1", "0")])
    assert not is_downset(X, top)
    assert diamond(X, top) == top
    assert regularize(X, top) == X.empty
    assert regularize(X, X.pairset([("1", "0"), ("a", "b")])) == X.pairset([("a", "b")])


def test_build_rejects_unbounded_and_degenerate():
    with pytest.raises(NotBounded):
        build_pair_space(from_covers(["x", "y"], []))
    with pytest.raises(DegeneratePoset):
        build_pair_space(from_covers(["p"], []))


def test_two_chain():
    X = build_pair_space(from_covers(["0", "1"], [("0", "1")]))
    assert X.names() == [("1", "0")]
    assert X.hasse_edges() == []


def test_pairsets_from_different_spaces_do_not_mix():
    X, Y = build_pair_space(m3()), build_pair_space(m3())
    with pytest.raises(SpaceMismatch):
        X.full & Y.full
    with pytest.raises(SpaceMismatch):
        box(X, Y.full)


def test_pairset_repr_and_set_ops():
    X = build_pair_space(m3())
    ea = below(X, ("a", "0"))
    assert repr(ea) == "{(a,0), (a,b), (a,c)}"
    assert ("a", "b") in ea and ("b", "a") not in ea and ("q", "r") not in ea
    eb = below(X, ("b", "0"))
    assert not (ea & eb)
    assert len(ea | eb) == 6
    assert ea - ea == X.empty
    assert ea <= X.full and ea < X.full and X.full >= ea and not ea > ea


def _bounded(draw_poset):
    return adjoin_bounds(draw_poset).extended


@given(posets(max_size=4))
def test_sq_order_is_a_partial_order(P):
    X = build_pair_space(_bounded(P))
    n = len(X)
    for p in range(n):
        assert X.below_masks[p] >> p & 1
        for q in range(n):
            if X.below_masks[q] >> p & 1 and X.below_masks[p] >> q & 1:
                assert p == q
    for p, q, r in itertools.product(range(n), repeat=3):
        if X.below_masks[q] >> p & 1 and X.below_masks[r] >> q & 1:
            assert X.below_masks[r] >> p & 1


@given(posets(max_size=4), st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_box_and_diamond_laws(P, rnd):
    X = build_pair_space(_bounded(P))
    n = len(X)
    full = X.full_mask
    if n <= 8:
        masks = range(1 << n)
    else:
        masks = [rnd.getrandbits(n) for _ in range(300)]
    for m in masks:
        U = PairSet(X, m)
        assert box(X, U) <= U <= diamond(X, U)
        assert is_downset(X, box(X, U))
        assert X.is_downset_mask(full & ~diamond(X, U).mask)
        R = regularize(X, U)
        assert regularize(X, R) == R
        # box and diamond are dual through complement
        assert X.box_mask(m) == full & ~X.diamond_mask(full & ~m)
    for _ in range(50):
        a, b = rnd.getrandbits(n), rnd.getrandbits(n)
        a &= b
        assert X.box_mask(a) & ~X.box_mask(b) == 0
        assert X.diamond_mask(a) & ~X.diamond_mask(b) == 0


def test_box_diamond_exhaustive_on_small_space():
    X = build_pair_space(from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]))
    assert len(X) <= 8
    for m in range(1 << len(X)):
        r = X.regularize_mask(m)
        assert X.regularize_mask(r) == r


def test_dual_iso_on_named_lattices():
    for P in (m3(), n5()):
        iso = dual_iso(P)
        assert iso.ok
        assert len(iso.mapping) == len(build_pair_space(P))


def test_swap_iso_rejects_wrong_base():
    with pytest.raises(ValueError):
        swap_iso(build_pair_space(m3()), build_pair_space(n5()))


@given(posets(max_size=5))
@settings(max_examples=60)
def test_dual_iso_random(P):
    assert dual_iso(_bounded(P)).ok


def test_downset_check_random():
    X = build_pair_space(n5())
    rnd = random.Random(3)
    for _ in range(200):
        m = rnd.getrandbits(len(X))
        closed = all(X.below_masks[k] & ~m == 0 for k in range(len(X)) if m >> k & 1)
        assert X.is_downset_mask(m) == closed
