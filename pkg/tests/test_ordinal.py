import pytest
from hypothesis import given
from hypothesis import strategies as st

from almostded.ordinal import (
    Ordinal,
    OrdinalParseError,
    approach,
    next_multiple,
    ord_add,
    ord_deg,
    ord_is_limit,
    ord_parse,
    ord_print,
    ord_succ,
    predecessor_base,
)

# coefficients stay far below N, so substituting w = N preserves order
N = 10**6


def as_int(x):
    return sum(c * N**e for e, c in x.terms)


@st.composite
def ordinals(draw, max_exp=4, max_coef=20):
    exps = sorted(draw(st.sets(st.integers(0, max_exp), max_size=max_exp + 1)), reverse=True)
    return Ordinal([(e, draw(st.integers(1, max_coef))) for e in exps])


def test_parse_examples():
    assert ord_parse("w^2*3+w*2+5").terms == ((2, 3), (1, 2), (0, 5))
    assert ord_parse("0").terms == ()
    assert ord_parse("w").terms == ((1, 1),)
    assert ord_parse("w*4").terms == ((1, 4),)


@pytest.mark.parametrize("text", ["w^1*1+w^2*1", "w+w", "w*0", "x", "w^", "3+", "w^2*3+-1"])
def test_parse_rejects(text):
    with pytest.raises(OrdinalParseError) as err:
        ord_parse(text)
    assert err.value.token


@given(ordinals())
def test_print_parse_roundtrip(x):
    assert ord_parse(ord_print(x)) == x


@given(ordinals(), ordinals())
def test_order_matches_integer_substitution(a, b):
    assert (a < b) == (as_int(a) < as_int(b))
    assert (a == b) == (as_int(a) == as_int(b))


def test_add_examples():
    assert ord_add(ord_parse("w+3"), ord_parse("w")) == ord_parse("w*2")
    assert ord_add(ord_parse("5"), ord_parse("w^2")) == ord_parse("w^2")
    assert ord_add(ord_parse("w^2+1"), ord_parse("w+1")) == ord_parse("w^2+w+1")


@given(ordinals(), ordinals(), ordinals())
def test_add_laws(a, b, c):
    assert ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c))
    assert ord_add(a, b) >= b
    assert ord_add(a, b) >= a
    if b:
        assert ord_add(a, b) > a


def test_degree_and_limit():
    assert ord_deg(ord_parse("w^2+5")) == 0
    assert ord_deg(ord_parse("w^2*3")) == 2
    assert ord_deg(ord_parse("0")) == 0
    assert ord_is_limit(ord_parse("w^2"))
    assert not ord_is_limit(ord_parse("7"))
    assert not ord_is_limit(ord_parse("0"))
    assert ord_succ(ord_parse("w")) == ord_parse("w+1")


@given(ordinals(max_exp=3, max_coef=5), st.integers(0, 3))
def test_next_multiple_is_least(a, d):
    x = next_multiple(a, d)
    assert x > a and ord_deg(x) == d
    # nothing of degree >= d strictly between, checked on integer images
    step = N**d
    assert as_int(x) % step == 0
    assert as_int(x) - as_int(a) <= step


@given(ordinals(max_exp=3, max_coef=5).filter(bool))
def test_predecessor_base(x):
    b = predecessor_base(x)
    assert b < x
    e = ord_deg(x)
    assert next_multiple(b, e) == x


@given(ordinals(max_exp=3, max_coef=5).filter(lambda x: x and ord_deg(x) >= 1), st.integers(1, 30))
def test_approach_points_lie_below(x, depth):
    for d in range(ord_deg(x)):
        y = approach(x, depth, d)
        assert y < x and ord_deg(y) == d
        assert approach(x, depth + 1, d) > y
