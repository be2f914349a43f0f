import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almostded.colength import (
    INF,
    ZERO,
    ColengthModel,
    PreconditionError,
    check_length_theorem,
    check_potpan,
    check_sum,
    check_viomega,
    colength,
    colength_stage,
)
from almostded.gen import random_map, random_set, random_top
from almostded.ideals import IdealMap, NotIntegral, ideal_leq, radical
from almostded.model import model_sharp
from almostded.ordinal import ord_parse
from almostded.sets import Space

from conftest import chi, pt

seeds = st.integers(0, 2**32 - 1)


def test_extnat():
    assert ZERO + ZERO == ZERO and ZERO + INF == INF and INF + INF == INF
    assert ZERO < INF and str(INF) == "inf" and str(ZERO) == "0"


def test_colength_examples(W):
    cm = ColengthModel(W, W.points(["w"]))
    assert colength(cm, chi(W, 1, 3)) == ZERO
    assert colength(cm, chi(W, 0, "w")) == INF
    assert colength(cm, IdealMap.zero(W)) == ZERO
    with pytest.raises(NotIntegral):
        colength(cm, chi(W, 0, 3, -1))


def test_stage_examples(W):
    cm = ColengthModel(W, W.points(["w"]))
    m = model_sharp(W)
    nu = chi(W, 0, "w")
    assert colength_stage(cm, m, 0, nu) == colength(cm, nu)
    assert colength_stage(cm, m, 1, nu) == INF
    assert colength_stage(cm, m, 2, nu) == ZERO
    with pytest.raises(IndexError):
        colength_stage(cm, m, 3, nu)


def test_identity_examples(W):
    cm = ColengthModel(W, W.points(["w"]))
    m = model_sharp(W)
    assert check_sum(cm, chi(W, 0, "w"), chi(W, 1, 3))
    assert check_potpan(cm, chi(W, None, 3), chi(W, None, 3, 2), 2)
    assert check_length_theorem(cm, m, 1, chi(W, 0, "w"))
    assert check_viomega(cm, m, 1, pt(W, "w"))
    with pytest.raises(PreconditionError):
        check_potpan(cm, chi(W, None, 3), chi(W, None, 3, 3), 2)
    with pytest.raises(PreconditionError):
        check_viomega(cm, m, 1, chi(W, 0, 3))


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_monotone_radical_and_antitone(seed):
    rng = np.random.default_rng(seed)
    space = Space(random_top(rng, ord_parse("w^2*3")))
    m = model_sharp(space)
    cm = ColengthModel(space, random_set(rng, space))
    nu, _ = random_map(rng, space, integral=True, max_pieces=5)
    mu, _ = random_map(rng, space, integral=True, max_pieces=5)
    lo = IdealMap(space, nu.steps)
    big = nu + mu
    assert ideal_leq(lo, big)
    # smaller map, larger ideal: colength can only grow with the map
    assert colength(cm, lo) <= colength(cm, big)
    if colength(cm, lo) == INF:
        assert colength(cm, big) == INF
    assert colength(cm, nu) == colength(cm, radical(nu))
    taus = [colength_stage(cm, m, i, nu) for i in range(len(m.chain) + 1)]
    assert all(b <= a for a, b in zip(taus, taus[1:]))
