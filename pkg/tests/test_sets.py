import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almostded.gen import random_cell, random_top
from almostded.oracle import in_cells, is_limit_in, sample_points
from almostded.ordinal import ord_parse
from almostded.sets import (
    AmbientMismatch,
    DefinableSet,
    Space,
    SubsetError,
    canonical_test_points,
    cb_chain,
    cb_rank,
    derived,
    derived_in,
    is_clopen_in,
    is_closed,
    is_compact,
    isolated_points,
    set_closure,
    set_complement,
    set_equal,
    set_interior,
    set_intersect,
    set_union,
)

O = ord_parse
seeds = st.integers(0, 2**32 - 1)


def random_family(seed, k=3):
    rng = np.random.default_rng(seed)
    top = random_top(rng)
    space = Space(top)
    cells = [random_cell(rng, top) for _ in range(int(rng.integers(0, k + 1)))]
    return space, cells, space.cells(cells)


def test_intersect_and_complement_examples(W2):
    hi_deg = W2.cell(None, "w^2", 1)
    assert set_equal(set_intersect(hi_deg, W2.cell(0, "w")), W2.points(["w"]))
    comp = set_complement(hi_deg)
    assert set_equal(comp, W2.cell(None, "w^2", 0, 0))
    assert 0 in comp and O("5") in comp and O("w+3") in comp and O("w") not in comp
    a = W2.cell(3, "w*2")
    assert set_union(a, W2.empty()) == a


def test_membership_with_point_argument(W):
    a = W.cell(None, 3)
    assert set_equal(set_union(a, O("w")), W.points([0, 1, 2, 3, "w"]))


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        set_union(Space("w").carrier, Space("w^2").carrier)


def test_derived_examples(W2, W):
    assert set_equal(derived(W2.carrier), W2.cell(0, "w^2", 1))
    assert set_equal(set_closure(W2.cell(0, "w^2", 0, 0)), W2.cell(0, "w^2"))
    assert not derived(W.points([3, 5, 9]))
    assert set_equal(derived_in(W.carrier, W.carrier), W.points(["w"]))
    with pytest.raises(SubsetError):
        derived_in(W.carrier, W.points([1]))


def test_clopen_compact_isolated(W, W2):
    assert is_clopen_in(W.cell(0, "w"), W.carrier)
    assert not is_clopen_in(W.points(["w"]), W.carrier)
    assert set_equal(isolated_points(W2.carrier), W2.cell(None, "w^2", 0, 0))
    assert is_compact(W.points(["w"]))
    assert not is_compact(W.cell(0, "w", 0, 0))


def test_cb_examples(W, W2):
    assert cb_rank(W2.carrier) == 3
    assert cb_rank(W.points([1, 4])) == 1
    chain = cb_chain(W.carrier)
    assert len(chain) == 3 and set_equal(chain[1], W.points(["w"])) and not chain[2]
    for k in range(5):
        assert cb_rank(Space(f"w^{k}" if k else "1").carrier) == k + 1


def test_canonical_test_points_examples():
    s4 = Space(4)
    assert canonical_test_points([s4.cell(None, 3)]) == [O(str(i)) for i in range(5)]
    w = Space("w")
    pts = canonical_test_points([w.cell(0, "w", 0, 0), w.points(["w"])])
    assert O("1") in pts and O("w") in pts and any(p.deg == 0 and 1 < p.coeff(0) for p in pts)
    empty = canonical_test_points([], space=w)
    assert O("0") in empty and O("w") in empty


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_membership_matches_cells(seed):
    space, cells, a = random_family(seed)
    for x in sample_points(space.top, 5):
        assert (x in a) == in_cells(cells, x)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_derived_closed_form_matches_sampling(seed):
    space, cells, a = random_family(seed)
    d = derived(a)
    member = lambda y: in_cells(cells, y)
    for x in sample_points(space.top, 5):
        assert (x in d) == is_limit_in(member, x), x


@settings(max_examples=60, deadline=None)
@given(seeds, seeds)
def test_boolean_laws_pointwise(s1, s2):
    space, ca, a = random_family(s1)
    rng = np.random.default_rng(s2)
    cb = [random_cell(rng, space.top) for _ in range(3)]
    b = space.cells(cb)
    pts = canonical_test_points([a, b])
    u, i, c = a | b, a & b, set_complement(a)
    for x in pts:
        ia, ib = in_cells(ca, x), in_cells(cb, x)
        assert (x in u) == (ia or ib)
        assert (x in i) == (ia and ib)
        assert (x in c) == (not ia)
    assert set_equal(set_complement(set_complement(a)), a)
    assert set_equal(set_complement(a | b), set_complement(a) & set_complement(b))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_closure_interior_laws(seed):
    space, _, a = random_family(seed)
    cl = set_closure(a)
    assert a <= cl and set_equal(set_closure(cl), cl) and is_closed(cl)
    assert derived(a) <= cl
    assert set_equal(set_interior(a), set_complement(set_closure(set_complement(a))))
    assert set_interior(a) <= a


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_cb_chain_strict_and_isolated_points(seed):
    space, _, a = random_family(seed)
    s = set_closure(a)
    chain = cb_chain(s)
    for big, small in zip(chain, chain[1:]):
        assert small <= big and not set_equal(small, big)
    iso = isolated_points(s)
    for x in canonical_test_points([s, iso]):
        if x in s:
            single = space.points([x])
            assert is_clopen_in(single, s) == (x in iso)


@settings(max_examples=40, deadline=None)
@given(seeds, seeds)
def test_derived_in_relativizes(s1, s2):
    space, _, a = random_family(s1)
    rng = np.random.default_rng(s2)
    s = set_closure(a | space.cells([random_cell(rng, space.top)]))
    assert set_equal(derived_in(a, s), derived(a) & s)


def test_closed_carrier_required():
    with pytest.raises(ValueError):
        Space("w", [DefinableSet(Space("w"), Space("w").cell(0, "w", 0, 0).steps).cells[0]])
