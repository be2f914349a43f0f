"""Seeded random spaces, sets and maps for the property suites.

Case ``k`` of a run with seed ``s`` draws from ``numpy.random.default_rng([s, k])``,
so any case can be replayed on its own.  Random maps come with a
:class:`~almostded.oracle.Painted` description for reference evaluation.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np

from . import steps
from .ideals import IdealMap
from .oracle import Painted
from .ordinal import Ordinal, predecessor_base
from .sets import Cell, DefinableSet, Space

MAX_TOP = Ordinal([(3, 2)])
MAX_PIECES = 12
VALUE_RANGE = (-5, 5)


def case_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def random_ordinal(rng, top: Ordinal) -> Ordinal:
    """A point of ``[0, top]`` with coefficients below 4."""
    e_max = top.terms[0][0] if top else 0
    while True:
        e = int(rng.integers(0, e_max + 1))
        terms = []
        for exp in range(e, -1, -1):
            if exp == e or rng.random() < 0.6:
                c = int(rng.integers(1 if exp == e else 0, 4))
                if c:
                    terms.append((exp, c))
        x = Ordinal(terms)
        if rng.random() < 0.1:
            x = Ordinal()
        if x <= top:
            return x


def random_top(rng, limit: Ordinal = MAX_TOP) -> Ordinal:
    while True:
        x = random_ordinal(rng, limit)
        if x:
            return x


def random_cell(rng, top: Ordinal, closed_only: bool = False) -> Cell:
    a, b = sorted([random_ordinal(rng, top), random_ordinal(rng, top)])
    if a == b:
        b = top
    lo = None if rng.random() < 0.15 or a == b else a
    if closed_only:
        return Cell(lo, b, int(rng.integers(0, 2)), None)
    dmin = int(rng.integers(0, 3))
    dmax = None if rng.random() < 0.5 else dmin + int(rng.integers(0, 2))
    return Cell(lo, b, dmin, dmax)


def random_interval(rng, top: Ordinal) -> Cell:
    """A clopen compact interval ``(a, b]`` or ``[0, b]``."""
    a, b = sorted([random_ordinal(rng, top), random_ordinal(rng, top)])
    if a == b:
        return Cell(None, b)
    return Cell(None if rng.random() < 0.2 else a, b)


def random_space(rng, top: Optional[Ordinal] = None, full_bias: float = 0.7) -> Tuple[Space, Optional[List[Cell]]]:
    """A space and its carrier cells (``None`` for the full interval)."""
    top = random_top(rng) if top is None else top
    if rng.random() >= full_bias:
        for _ in range(20):
            cells = [random_cell(rng, top, closed_only=True) for _ in range(int(rng.integers(1, 4)))]
            try:
                return Space(top, cells), cells
            except ValueError:
                continue
    return Space(top), None


def _paint(nu: IdealMap, cells: List[Cell], value: int) -> IdealMap:
    mask = steps.StepMap()
    for c in cells:
        mask = steps.combine(lambda a, b: 1 if a or b else 0, mask, c.steps())
    mask = steps.combine(lambda a, b: a * b, mask, nu.space.carrier_steps)
    return IdealMap(nu.space, steps.combine(lambda a, k: value if k else a, nu.steps, mask))


def _draw(rng, space: Space, carrier, strokes) -> Tuple[IdealMap, Painted]:
    nu = IdealMap.zero(space)
    for cells, v in strokes:
        nu = _paint(nu, cells, v)
    return nu, Painted(space.top, carrier, strokes)


def random_map(rng, space: Space, carrier=None, integral: bool = False, max_pieces: int = MAX_PIECES, overrides: int = 2):
    """An arbitrary (usually discontinuous) map with its description."""
    lo_v = 0 if integral else VALUE_RANGE[0]
    strokes = []
    for _ in range(int(rng.integers(1, max_pieces + 1))):
        strokes.append(([random_cell(rng, space.top)], int(rng.integers(lo_v, VALUE_RANGE[1] + 1))))
    for _ in range(int(rng.integers(0, overrides + 1))):
        x = random_ordinal(rng, space.top)
        strokes.append(([point_cell(x)], int(rng.integers(lo_v, VALUE_RANGE[1] + 1))))
    return _draw(rng, space, carrier, strokes)


def point_cell(x: Ordinal) -> Cell:
    if not x:
        return Cell(None, x, 0, 0)
    return Cell(predecessor_base(x), x, x.deg, x.deg)


def random_continuous_map(rng, space: Space, carrier=None, integral: bool = False, max_pieces: int = MAX_PIECES):
    """Paint random clopen intervals with random values: always continuous."""
    lo_v = 0 if integral else VALUE_RANGE[0]
    strokes = []
    for _ in range(int(rng.integers(1, max_pieces + 1))):
        strokes.append(([random_interval(rng, space.top)], int(rng.integers(lo_v, VALUE_RANGE[1] + 1))))
    return _draw(rng, space, carrier, strokes)


def random_set(rng, space: Space, pieces: int = 4) -> DefinableSet:
    s = space.empty()
    for _ in range(int(rng.integers(0, pieces + 1))):
        s = s | (DefinableSet(space, random_cell(rng, space.top).steps()) & space.carrier)
    return s


def first_points(s: DefinableSet, limit: int) -> List[Ordinal]:
    out = []
    rest = s
    while rest and len(out) < limit:
        x = rest.least()
        out.append(x)
        rest = rest - s.space.cell(None, x)
    return out


def random_points_in(rng, s: DefinableSet, size: int = 3, tries: int = 40) -> List[Ordinal]:
    """Up to ``size`` distinct random points of ``s``."""
    pts = set()
    for _ in range(tries):
        x = random_ordinal(rng, s.space.top)
        if x in s:
            pts.add(x)
        if len(pts) >= size:
            break
    if not pts:
        pts.update(first_points(s, 1))
    return sorted(pts)


def random_unimodular(rng, n: int, steps_: int = 8) -> np.ndarray:
    """Product of random elementary row operations and sign flips."""
    U = np.eye(n, dtype=np.int64)
    if n < 2:
        return U * (1 if rng.random() < 0.5 else -1)
    for _ in range(steps_):
        i, j = rng.choice(n, size=2, replace=False)
        U[i] += int(rng.integers(-2, 3)) * U[j]
    for i in range(n):
        if rng.random() < 0.3:
            U[i] = -U[i]
    return U
