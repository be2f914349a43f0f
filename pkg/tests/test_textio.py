import json

import pytest

from almostded import textio
from almostded.model import ValidationError, model_sharp
from almostded.sets import Space
from almostded.textio import ParseError

from conftest import chi, pt


def test_space_roundtrip():
    s = textio.parse_space({"top": "w^2", "carrier": [{"lo": "-", "hi": "w"}, {"lo": "w", "hi": "w^2", "dmin": 1}]})
    again = textio.parse_space(json.loads(textio.dumps(textio.space_record(s))))
    assert again == s
    assert textio.space_record(Space("w")) == {"top": "w"}


def test_ideal_roundtrip(W):
    nu = chi(W, None, 1, 2) + chi(W, 1, 3) + pt(W, "w", -1)
    rec = json.loads(textio.dumps(textio.ideal_record(nu)))
    assert textio.parse_ideal(rec) == nu


def test_overrides_and_defaults(W):
    nu = textio.parse_ideal({"space": {"top": "w"}, "pieces": [{"cell": {"hi": "w"}, "value": 1}], "overrides": [["w", 2]]})
    assert nu == chi(W, None, "w") + pt(W, "w")


def test_model_records(W2):
    m = model_sharp(W2)
    assert textio.parse_model(json.loads(textio.dumps(textio.model_record(m)))) == m
    assert textio.parse_model({"space": {"top": "w^2"}, "kind": "sharp"}) == m


def test_bad_chain_is_validation_not_parse():
    with pytest.raises(ValidationError) as e:
        textio.parse_model({"space": {"top": "w"}, "chain": [[{"hi": "w"}], [{"hi": "3"}]]})
    assert e.value.condition == "not-in-derived"


@pytest.mark.parametrize(
    "rec, field",
    [
        ({"space": {"top": "w+"}}, "ideal.space.top"),
        ({"space": {"top": "w"}, "pieces": [{"cell": {"hi": "w"}}]}, "ideal.pieces[0]"),
        ({"space": {"top": "w"}, "pieces": [{"cell": {"hi": "w"}, "value": "x"}]}, "ideal.pieces[0].value"),
        ({"space": {"top": "w"}, "pieces": [{"cell": {"hi": "w", "dmin": -1}, "value": 1}]}, "ideal.pieces[0].cell.dmin"),
        ({"space": {"top": "w"}, "overrides": [["w"]]}, "ideal.overrides[0]"),
        ({"space": {"top": "w"}, "overrides": [["w^2", 1]]}, "ideal"),
        ({"pieces": []}, "ideal"),
    ],
)
def test_parse_errors_name_the_field(rec, field):
    with pytest.raises(ParseError) as e:
        textio.parse_ideal(rec)
    assert e.value.field == field
    assert e.value.record()["error"] == "parse"


def test_json_syntax_error_has_line():
    with pytest.raises(ParseError) as e:
        textio.loads('{\n  "top": "w",\n  oops\n}')
    assert e.value.line == 3


def test_unknown_model_kind():
    with pytest.raises(ParseError) as e:
        textio.parse_model({"space": {"top": "w"}, "kind": "dense"})
    assert e.value.field == "model.kind"


def test_dumps_is_canonical():
    assert textio.dumps({"b": 1, "a": [2]}) == '{"a": [2], "b": 1}'
