import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almostded.gen import random_space, random_top
from almostded.ideals import NotIntegral, ideal_mul, is_continuous, v_set
from almostded.model import (
    NotScattered,
    ValidationError,
    continuity_crit_equiv,
    is_sp_domain,
    is_sp_scattered,
    mi_check,
    model_custom,
    model_sharp,
    model_sp,
    model_tail,
    restrict_ideal,
    sp_rank,
    strata,
)
from almostded.ordinal import ord_parse
from almostded.sets import DefinableSet, Space, cb_rank, derived, set_equal
from almostded.suites import _invalid_chain, random_accepted

from conftest import chi, pt

O = ord_parse
seeds = st.integers(0, 2**32 - 1)


def test_constructors(W, W2):
    m = model_sharp(W2)
    assert len(m.chain) == 3 and m.terminal == "empty"
    assert set_equal(m.chain[1], W2.cell(0, "w^2", 1)) and set_equal(m.chain[2], W2.points(["w^2"]))
    assert model_sp(W).chain == (W.carrier,)
    with pytest.raises(ValidationError) as err:
        model_custom(W, [W.carrier, W.points([5])])
    assert (err.value.condition, err.value.stage, err.value.witness) == ("not-in-derived", 1, O("5"))
    assert model_custom(W, [W.carrier, W.points(["w"])]) == model_sharp(W)


def test_validation_conditions(W, W2):
    with pytest.raises(ValidationError) as err:
        model_custom(W2, [W2.carrier, W2.cell(0, "w^2", 1) - W2.points(["w^2"])])
    assert err.value.condition == "not-closed" and err.value.witness == O("w^2")
    with pytest.raises(ValidationError) as err:
        model_custom(W, [W.carrier - W.points([3])])
    assert err.value.condition == "stage0-not-carrier"
    with pytest.raises(ValidationError) as err:
        model_custom(W, [W.carrier, W.points(["w"])], terminal="stalled")
    assert err.value.condition == "stalled-on-scattered"


def test_ranks_strata_predicates(W, W2):
    assert sp_rank(model_sharp(W2)) == 3
    assert sp_rank(model_sp(W2)) == 1
    s = strata(model_sharp(W))
    assert set_equal(s[0], W.cell(None, "w", 0, 0)) and set_equal(s[1], W.points(["w"]))
    assert is_sp_domain(model_sp(W)) and not is_sp_domain(model_sharp(W))
    assert is_sp_domain(model_sharp(Space(7)))
    assert is_sp_scattered(model_sharp(W))


@pytest.mark.parametrize("k", range(5))
def test_sharp_rank_is_cb_rank(k):
    space = Space(f"w^{k}" if k else "1")
    assert sp_rank(model_sharp(space)) == cb_rank(space.carrier) == k + 1


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_sharp_models_are_cb_chains(seed):
    rng = np.random.default_rng(seed)
    space, _ = random_space(rng)
    m = model_sharp(space)
    assert sp_rank(m) == cb_rank(space.carrier)
    for a, b in zip(m.chain, m.chain[1:]):
        assert b <= derived(a) & a
    ss = strata(m)
    total = space.empty()
    for i, s in enumerate(ss):
        assert not (total & s)
        total = total | s
    assert set_equal(total, space.carrier)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_invalid_chains_rejected_with_witness(seed):
    rng = np.random.default_rng(seed)
    space = Space(random_top(rng, O("w^3*2")))
    if cb_rank(space.carrier) < 2:
        space = Space("w")
    chain, expected = _invalid_chain(rng, space)
    with pytest.raises(ValidationError) as err:
        model_custom(space, chain)
    assert (err.value.condition, err.value.stage, err.value.witness) == expected


def test_mi_examples(W):
    sharp = model_sharp(W)
    nu = chi(W, 0, "w") + pt(W, "w")
    assert mi_check(sharp, nu).accepted
    v = mi_check(sharp, pt(W, "w"))
    assert (v.condition, v.witness) == ("b", O("w"))
    assert mi_check(sharp, chi(W, 0, "w")).condition == "d"
    assert mi_check(model_sp(W), nu).condition == "c"
    with pytest.raises(NotIntegral):
        mi_check(sharp, -nu)


def test_mi_rejects_noncompact_support():
    w2 = Space("w^2")
    v = mi_check(model_sharp(w2), chi(w2, 0, "w^2", 1, 0, 0))
    assert not v.accepted


def test_continuity_report(W):
    sharp = model_sharp(W)
    r = continuity_crit_equiv(sharp, chi(W, 1, 3))
    assert r["agree"] and r["continuous"] and r["avoids_critical"]
    r = continuity_crit_equiv(sharp, chi(W, 0, "w") + pt(W, "w"))
    assert r["agree"] and not r["continuous"] and not r["avoids_critical"]
    r = continuity_crit_equiv(sharp, chi(W, 0, "w") + chi(W, 0, 3))
    assert not r["agree"] and r["continuous"] and r["witness"] == "w"
    assert not r["mi"]["accepted"] and r["mi"]["condition"] == "e"


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_accepted_maps_continuous_iff_avoid_critical(seed):
    m = model_sharp(Space("w"))
    nu = random_accepted(np.random.default_rng(seed), m)
    assert is_continuous(nu) == (not (v_set(nu) & m.stage(1)))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_accepted_maps_with_value_one_on_critical_dominate_a_point(seed):
    # checked on the sharp model of [0,w], where the mechanism is guaranteed
    m = model_sharp(Space("w"))
    nu = random_accepted(np.random.default_rng(seed), m)
    if nu("w") == 1:
        from almostded.groups import domination_witness

        y = domination_witness(nu)
        assert y is not None and nu(y) >= 2


def test_restriction_and_tails(W, W2):
    nu = chi(W, 0, "w") + pt(W, "w")
    c1 = model_sharp(W).stage(1)
    r = restrict_ideal(nu, c1)
    assert r("w") == 2 and set_equal(DefinableSet(W, r.space.carrier_steps), c1)
    assert restrict_ideal(nu, W.carrier).space == W
    with pytest.raises(ValueError):
        restrict_ideal(nu, W.cell(0, "w", 0, 0))
    m = model_sharp(W2)
    t = model_tail(m, 1)
    assert t == model_sharp(t.space)
    assert model_tail(model_tail(m, 1), 1) == model_tail(m, 2)
    with pytest.raises(ValueError):
        model_tail(m, 3)


def test_scatter_required():
    w = Space("w")
    stalled = model_sharp(w).__class__(w, (w.carrier,), "stalled")
    with pytest.raises(NotScattered):
        mi_check(stalled, chi(w, 0, 3))
    assert sp_rank(stalled) == 0 and not is_sp_scattered(stalled)


def test_product_of_accepted_maps_can_be_rejected(W):
    m = model_sharp(W)
    tail, top = chi(W, 0, "w"), pt(W, "w")
    nu, mu = tail + top, tail.scale(2) - top
    assert mi_check(m, nu).accepted and mi_check(m, mu).accepted
    v = mi_check(m, ideal_mul(nu, mu))
    assert (v.accepted, v.condition, str(v.witness)) == (False, "e", "w")
