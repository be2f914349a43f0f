"""JSON record syntax for spaces, sets, ideal maps, models and colength data.

Records::

    space   {"top": "w^2", "carrier": [cell, ...]}        carrier optional
    cell    {"lo": "3" | "-", "hi": "w", "dmin": 0, "dmax": 1 | "inf"}
    ideal   {"space": space, "pieces": [{"cell": cell, "value": 2}],
             "overrides": [["w", 1]]}
    model   {"space": space, "chain": [[cell, ...], ...], "terminal": "empty"}
            or {"space": space, "kind": "sharp" | "sp"}
    colength {"space": space, "delta": [cell, ...]}
    gens    {"space": space, "gens": [{"pieces": ..., "overrides": ...}, ...]}

A map or model file may also carry a ``"nu"`` / ``"model"`` entry where a
command needs both.
"""
from __future__ import annotations

import json
from typing import Any, List, Tuple

from .ideals import IdealMap, PointOutsideCarrier
from .model import DomainModel, model_custom, model_sharp, model_sp
from .ordinal import OrdinalParseError, Ordinal, ord_parse
from .sets import Cell, DefinableSet, Space, SubsetError
from .colength import ColengthModel


class ParseError(ValueError):
    def __init__(self, message: str, field: str = "", line: int = 0):
        where = []
        if line:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line

    def record(self) -> dict:
        return {"error": "parse", "message": str(self), "field": self.field, "line": self.line}


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None


def load(path: str) -> Any:
    with open(path) as fh:
        return loads(fh.read())


def _get(rec, key, field, default=...):
    if not isinstance(rec, dict):
        raise ParseError("expected a record", field)
    if key not in rec:
        if default is ...:
            raise ParseError(f"missing key {key!r}", field)
        return default
    return rec[key]


def _ordinal(text, field) -> Ordinal:
    if isinstance(text, int) and not isinstance(text, bool) and text >= 0:
        text = str(text)
    if not isinstance(text, str):
        raise ParseError("expected an ordinal literal", field)
    try:
        return ord_parse(text)
    except OrdinalParseError as e:
        raise ParseError(f"bad ordinal literal: {e}", field) from None


def _nat(v, field) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ParseError("expected a natural number", field)
    return v


def _int(v, field) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError("expected an integer", field)
    return v


def parse_cell(rec, field="cell") -> Cell:
    lo = _get(rec, "lo", field, "-")
    lo = None if lo == "-" else _ordinal(lo, f"{field}.lo")
    hi = _ordinal(_get(rec, "hi", field), f"{field}.hi")
    dmin = _nat(_get(rec, "dmin", field, 0), f"{field}.dmin")
    dmax = _get(rec, "dmax", field, "inf")
    dmax = None if dmax == "inf" else _nat(dmax, f"{field}.dmax")
    try:
        return Cell(lo, hi, dmin, dmax)
    except ValueError as e:
        raise ParseError(str(e), field) from None


def parse_cells(recs, field) -> List[Cell]:
    if not isinstance(recs, list):
        raise ParseError("expected a list of cells", field)
    return [parse_cell(r, f"{field}[{k}]") for k, r in enumerate(recs)]


def parse_space(rec, field="space") -> Space:
    top = _ordinal(_get(rec, "top", field), f"{field}.top")
    carrier = _get(rec, "carrier", field, None)
    cells = None if carrier is None else parse_cells(carrier, f"{field}.carrier")
    try:
        return Space(top, cells)
    except ValueError as e:
        raise ParseError(str(e), field) from None


def parse_set(recs, space: Space, field="set") -> DefinableSet:
    try:
        return space.cells(parse_cells(recs, field))
    except SubsetError as e:
        raise ParseError(str(e), field) from None


def parse_ideal_body(rec, space: Space, field="ideal") -> IdealMap:
    pieces = []
    for k, p in enumerate(_get(rec, "pieces", field, [])):
        f = f"{field}.pieces[{k}]"
        pieces.append((parse_cell(_get(p, "cell", f), f + ".cell"), _int(_get(p, "value", f), f + ".value")))
    overrides = []
    for k, o in enumerate(_get(rec, "overrides", field, [])):
        f = f"{field}.overrides[{k}]"
        if not isinstance(o, list) or len(o) != 2:
            raise ParseError("expected [ordinal, value]", f)
        overrides.append((_ordinal(o[0], f + "[0]"), _int(o[1], f + "[1]")))
    try:
        return IdealMap.build(space, pieces, overrides)
    except PointOutsideCarrier as e:
        raise ParseError(str(e), field) from None


def parse_ideal(rec, field="ideal", space: Space = None) -> IdealMap:
    if space is None:
        space = parse_space(_get(rec, "space", field), f"{field}.space")
    return parse_ideal_body(rec, space, field)


def parse_model(rec, field="model", space: Space = None) -> DomainModel:
    """May raise :class:`~almostded.model.ValidationError` for a bad chain."""
    if space is None:
        space = parse_space(_get(rec, "space", field), f"{field}.space")
    kind = _get(rec, "kind", field, None)
    if kind is not None:
        if kind == "sharp":
            return model_sharp(space)
        if kind == "sp":
            return model_sp(space)
        raise ParseError(f"unknown model kind {kind!r}", f"{field}.kind")
    chain = _get(rec, "chain", field)
    if not isinstance(chain, list):
        raise ParseError("expected a list of sets", f"{field}.chain")
    stages = [parse_set(c, space, f"{field}.chain[{k}]") for k, c in enumerate(chain)]
    terminal = _get(rec, "terminal", field, "empty")
    if terminal not in ("empty", "stalled"):
        raise ParseError("terminal must be 'empty' or 'stalled'", f"{field}.terminal")
    return model_custom(space, stages, terminal)


def parse_colength(rec, field="colength", space: Space = None) -> ColengthModel:
    if space is None:
        space = parse_space(_get(rec, "space", field), f"{field}.space")
    return ColengthModel(space, parse_set(_get(rec, "delta", field), space, f"{field}.delta"))


def parse_gens(rec, field="gens", space: Space = None) -> Tuple[Space, List[IdealMap]]:
    if space is None:
        space = parse_space(_get(rec, "space", field), f"{field}.space")
    gens = _get(rec, "gens", field)
    if not isinstance(gens, list):
        raise ParseError("expected a list of maps", f"{field}.gens")
    return space, [parse_ideal_body(g, space, f"{field}.gens[{k}]") for k, g in enumerate(gens)]


# -- printing ------------------------------------------------------------------

def cell_record(c: Cell) -> dict:
    return {
        "lo": "-" if c.lo is None else str(c.lo),
        "hi": str(c.hi),
        "dmin": c.dmin,
        "dmax": "inf" if c.dmax is None else c.dmax,
    }


def set_record(s: DefinableSet) -> list:
    return [cell_record(c) for c in s.cells]


def space_record(space: Space) -> dict:
    rec = {"top": str(space.top)}
    if not space.is_full_interval():
        rec["carrier"] = set_record(space.carrier)
    return rec


def ideal_record(nu: IdealMap) -> dict:
    return {
        "space": space_record(nu.space),
        "pieces": [{"cell": cell_record(c), "value": v} for c, v in nu.pieces()],
        "overrides": [],
    }


def model_record(m: DomainModel) -> dict:
    return {
        "space": space_record(m.space),
        "chain": [set_record(c) for c in m.chain],
        "terminal": m.terminal,
    }


def dumps(rec) -> str:
    return json.dumps(rec, sort_keys=True)
