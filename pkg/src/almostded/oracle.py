"""Naive reference evaluation straight from cell descriptions.

Nothing here touches step maps: membership is decided by comparing ordinals
and degrees, so it serves as an independent check of the step-map algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from .ordinal import ZERO, Ordinal, approach
from .sets import Cell


def in_cell(c: Cell, x: Ordinal) -> bool:
    if c.lo is not None and not c.lo < x:
        return False
    if not x <= c.hi:
        return False
    d = x.deg
    return c.dmin <= d and (c.dmax is None or d <= c.dmax)


def in_cells(cells: Iterable[Cell], x: Ordinal) -> bool:
    return any(in_cell(c, x) for c in cells)


@dataclass
class Painted:
    """A map given as paint strokes applied in order over a carrier.

    ``carrier=None`` is the whole interval ``[0, top]``.
    """

    top: Ordinal
    carrier: Optional[List[Cell]] = None
    strokes: List[Tuple[List[Cell], int]] = field(default_factory=list)

    def in_carrier(self, x: Ordinal) -> bool:
        if not x <= self.top:
            return False
        return self.carrier is None or in_cells(self.carrier, x)

    def __call__(self, x: Ordinal) -> int:
        if not self.in_carrier(x):
            return 0
        v = 0
        for cells, val in self.strokes:
            if in_cells(cells, x):
                v = val
        return v


def jumps_at(f, in_carrier, x: Ordinal, depth: int = 64) -> bool:
    """Is ``f`` not locally constant at ``x`` (within the carrier)?

    Looks at points of each lower degree just below ``x``, beyond every
    breakpoint whose coefficients stay below ``depth``.
    """
    for d in range(x.deg):
        y = approach(x, depth, d)
        if in_carrier(y) and f(y) != f(x):
            return True
    return False


def is_limit_in(in_set, x: Ordinal, depth: int = 64) -> bool:
    return any(in_set(approach(x, depth, d)) for d in range(x.deg))


def sample_points(top: Ordinal, coeff: int = 4) -> List[Ordinal]:
    """All ordinals ``<= top`` with every coefficient below ``coeff`` (plus ``top``)."""
    e = top.terms[0][0] if top else 0
    out = [ZERO]

    def rec(exp, terms):
        if exp < 0:
            if terms:
                out.append(Ordinal(terms))
            return
        for c in range(coeff):
            rec(exp - 1, terms + [(exp, c)] if c else terms)

    rec(e, [])
    pts = sorted({p for p in out if p <= top} | {top})
    return pts
