"""Definable subsets of compact ordinal spaces and their topology.

A :class:`Space` is a closed subset (the *carrier*) of an interval
``[0, top]`` with the order topology.  A :class:`DefinableSet` is a finite
union of :class:`Cell` objects, stored internally as a 0/1 step map.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Union

from . import steps
from .ordinal import ZERO, Ordinal, approach, as_ordinal, next_multiple, ord_succ
from .steps import StepMap, top_degree


class AmbientMismatch(ValueError):
    pass


class SubsetError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    """``{x : lo < x <= hi, dmin <= deg(x) <= dmax}``; ``lo=None`` means 0 is allowed too."""

    lo: Optional[Ordinal]
    hi: Ordinal
    dmin: int = 0
    dmax: Optional[int] = None  # None = unbounded

    def __post_init__(self):
        if self.dmin < 0 or (self.dmax is not None and self.dmax < self.dmin):
            raise ValueError(f"bad degree range [{self.dmin}, {self.dmax}]")

    def steps(self) -> StepMap:
        return StepMap.cell(self.lo, self.hi, self.dmin, self.dmax)

    def __str__(self):
        lo = "[0" if self.lo is None else f"({self.lo}"
        dmax = "inf" if self.dmax is None else self.dmax
        return f"{lo},{self.hi}]deg[{self.dmin},{dmax}]"


def _bool(m: StepMap) -> StepMap:
    return m.map(lambda v: 1 if v else 0)


class Space:
    """The carrier is a closed definable subset of ``[0, top]``."""

    __slots__ = ("top", "carrier_steps")

    def __init__(self, top, carrier: Optional[Union[StepMap, Sequence[Cell]]] = None):
        top = as_ordinal(top)
        self.top = top
        full = StepMap.cell(None, top, 0, None)
        if carrier is None:
            self.carrier_steps = full
            return
        if not isinstance(carrier, StepMap):
            carrier = _union_cells(carrier)
        carrier = steps.combine(lambda c, f: 1 if c and f else 0, carrier, full)
        if carrier.is_zero():
            raise ValueError("carrier must be nonempty")
        if not _subset(steps.derived(carrier), carrier):
            raise ValueError("carrier must be closed")
        self.carrier_steps = carrier

    @property
    def carrier(self) -> "DefinableSet":
        return DefinableSet(self, self.carrier_steps)

    def full(self) -> "DefinableSet":
        return self.carrier

    def empty(self) -> "DefinableSet":
        return DefinableSet(self, StepMap())

    def cell(self, lo, hi, dmin=0, dmax=None) -> "DefinableSet":
        lo = None if lo is None or lo == "-" else as_ordinal(lo)
        return self.cells([Cell(lo, as_ordinal(hi), dmin, dmax)])

    def cells(self, cells: Iterable[Cell]) -> "DefinableSet":
        m = _union_cells(cells)
        if not _subset(m, self.carrier_steps):
            raise SubsetError("cells leave the carrier")
        return DefinableSet(self, m)

    def points(self, pts: Iterable) -> "DefinableSet":
        m = StepMap()
        for p in pts:
            m = steps.combine(lambda a, b: 1 if a or b else 0, m, StepMap.point(as_ordinal(p)))
        if not _subset(m, self.carrier_steps):
            raise SubsetError("points leave the carrier")
        return DefinableSet(self, m)

    def contains(self, x: Ordinal) -> bool:
        return bool(self.carrier_steps(x))

    def is_full_interval(self) -> bool:
        return _equal(self.carrier_steps, StepMap.cell(None, self.top, 0, None))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Space):
            return NotImplemented
        return self.top == other.top and _equal(self.carrier_steps, other.carrier_steps)

    def __hash__(self):
        return hash(self.top)

    def __repr__(self):
        if self.is_full_interval():
            return f"Space([0,{self.top}])"
        return f"Space(top={self.top}, carrier={self.carrier})"


def _union_cells(cells: Iterable[Cell]) -> StepMap:
    m = StepMap()
    for c in cells:
        m = steps.combine(lambda a, b: 1 if a or b else 0, m, c.steps())
    return m


def _subset(a: StepMap, b: StepMap) -> bool:
    return steps.combine(lambda x, y: 1 if x and not y else 0, a, b).is_zero()


def _equal(a: StepMap, b: StepMap) -> bool:
    return steps.combine(lambda x, y: 1 if bool(x) != bool(y) else 0, a, b).is_zero()


class DefinableSet:
    __slots__ = ("space", "steps")

    def __init__(self, space: Space, m: StepMap):
        self.space = space
        self.steps = m

    # -- convenience -------------------------------------------------------
    def __contains__(self, x) -> bool:
        return bool(self.steps(as_ordinal(x)))

    def __or__(self, other):
        return set_union(self, other)

    def __and__(self, other):
        return set_intersect(self, other)

    def __sub__(self, other):
        return set_intersect(self, set_complement(other))

    def __le__(self, other):
        return set_subset(self, other)

    def __eq__(self, other):
        if not isinstance(other, DefinableSet):
            return NotImplemented
        return set_equal(self, other)

    def __hash__(self):
        return hash(self.space)

    def __bool__(self):
        return not self.steps.is_zero()

    def least(self) -> Optional[Ordinal]:
        return steps.least_point(self.steps)

    @property
    def cells(self) -> List[Cell]:
        return to_cells(self.steps)

    def is_finite(self) -> bool:
        for lo, hi, vals in self.steps.segs:
            if any(vals[:-1]):
                return False
        return True

    def enumerate(self, limit: int = 100_000) -> List[Ordinal]:
        """All points of a finite set, increasing."""
        if not self.is_finite():
            raise ValueError("set is infinite")
        out = [ZERO] if self.steps.zero else []
        for lo, hi, vals in self.steps.segs:
            d = len(vals) - 1
            if not vals[d]:
                continue
            x = next_multiple(lo, d)
            while x <= hi:
                out.append(x)
                if len(out) > limit:
                    raise ValueError("too many points")
                x = next_multiple(x, d)
        return out

    def __len__(self):
        return len(self.enumerate())

    def __repr__(self):
        if not self:
            return "{}"
        return "{" + " | ".join(str(c) for c in self.cells) + "}"


def to_cells(m: StepMap) -> List[Cell]:
    """Cells whose union is the nonzero set of ``m``."""
    out: List[Cell] = []
    zero_pending = bool(m.zero)
    for lo, hi, vals in m.segs:
        top = len(vals) - 1
        d = 0
        while d <= top:
            if not vals[d]:
                d += 1
                continue
            e = d
            while e + 1 <= top and vals[e + 1]:
                e += 1
            dmax = None if e == top else e
            start = lo
            if zero_pending and not lo and d == 0:
                start = None
                zero_pending = False
            out.append(Cell(start, hi, d, dmax))
            d = e + 1
    if zero_pending:
        out.insert(0, Cell(None, ZERO, 0, 0))
    return out


def _check(a: DefinableSet, b: DefinableSet):
    if a.space is not b.space and a.space != b.space:
        raise AmbientMismatch("definable sets live in different spaces")


def _lift(a: DefinableSet, b) -> DefinableSet:
    if isinstance(b, DefinableSet):
        _check(a, b)
        return b
    return a.space.points([b])


# -- Boolean algebra -----------------------------------------------------------

def set_union(a: DefinableSet, b) -> DefinableSet:
    b = _lift(a, b)
    return DefinableSet(a.space, steps.combine(lambda x, y: 1 if x or y else 0, a.steps, b.steps))


def set_intersect(a: DefinableSet, b) -> DefinableSet:
    b = _lift(a, b)
    return DefinableSet(a.space, steps.combine(lambda x, y: 1 if x and y else 0, a.steps, b.steps))


def set_complement(a: DefinableSet) -> DefinableSet:
    """Complement relative to the carrier of the ambient space."""
    c = a.space.carrier_steps
    return DefinableSet(a.space, steps.combine(lambda x, y: 1 if y and not x else 0, a.steps, c))


def set_membership(a: DefinableSet, x) -> bool:
    return x in a


def set_is_empty(a: DefinableSet) -> bool:
    return a.steps.is_zero()


def set_subset(a: DefinableSet, b: DefinableSet) -> bool:
    _check(a, b)
    return _subset(a.steps, b.steps)


def set_equal(a: DefinableSet, b: DefinableSet) -> bool:
    _check(a, b)
    return _equal(a.steps, b.steps)


# -- topology ---------------------------------------------------------------

def derived(a: DefinableSet) -> DefinableSet:
    """Limit points of ``a`` in the ambient interval."""
    return DefinableSet(a.space, steps.derived(a.steps))


def derived_in(a: DefinableSet, s: DefinableSet) -> DefinableSet:
    if not set_subset(a, s):
        raise SubsetError("derived_in needs A inside S")
    if not is_closed(s):
        raise SubsetError("derived_in needs S closed")
    return derived(a) & s


def set_closure(a: DefinableSet) -> DefinableSet:
    return a | derived(a)


def set_interior(a: DefinableSet) -> DefinableSet:
    """Interior relative to the carrier."""
    return set_complement(set_closure(set_complement(a)))


def is_closed(a: DefinableSet) -> bool:
    return _subset(steps.derived(a.steps), a.steps)


def is_compact(a: DefinableSet) -> bool:
    # closed subsets of the compact interval are exactly the compact ones
    return is_closed(a)


def is_open_in(a: DefinableSet, s: DefinableSet) -> bool:
    if not set_subset(a, s):
        raise SubsetError("is_open_in needs A inside S")
    return set_is_empty(a & derived(s - a))


def is_clopen_in(a: DefinableSet, s: DefinableSet) -> bool:
    """``a`` and ``s \\ a`` are both closed in the subspace ``s``."""
    if not set_subset(a, s):
        raise SubsetError("is_clopen_in needs A inside S")
    rest = s - a
    return set_is_empty(derived(a) & rest) and set_is_empty(derived(rest) & a)


def isolated_points(s: DefinableSet) -> DefinableSet:
    return s - derived(s)


def cb_chain(s: DefinableSet) -> List[DefinableSet]:
    """``s, s', s'', ...`` ending with the empty set."""
    if not is_closed(s):
        raise SubsetError("cb_chain needs a closed set")
    chain = [s]
    while chain[-1]:
        chain.append(derived(chain[-1]) & chain[-1])
    return chain


def cb_rank(s: DefinableSet) -> int:
    return len(cb_chain(s)) - 1


# -- oracle support ---------------------------------------------------------------

def canonical_test_points(family: Sequence[DefinableSet], space: Optional[Space] = None) -> List[Ordinal]:
    """Points separating the atoms of the Boolean algebra generated by ``family``.

    Contains 0 and ``top``, each cell endpoint with its successor (when it is
    still below ``top``), the predecessor of every successor endpoint, the least
    point of every (grid interval, degree) atom, and for every limit endpoint
    points of each lower degree that lie above all other breakpoints.
    """
    if space is None:
        if not family:
            raise ValueError("need a space for an empty family")
        space = family[0].space
    maps = [d.steps for d in family] + [space.carrier_steps]
    return test_points_for(maps, space.top, carrier=space.carrier_steps)


def test_points_for(maps: Sequence[StepMap], top: Ordinal, carrier: Optional[StepMap] = None) -> List[Ordinal]:
    grid = sorted({ZERO, top}.union(*(set(m.breakpoints()) for m in maps)))
    depth = 1 + max([m.max_coeff() for m in maps] + [c for _, c in top.terms] + [0])
    pts = set(grid)
    for k in range(len(grid) - 1):
        a, b = grid[k], grid[k + 1]
        for d in range(top_degree(a, b) + 1):
            pts.add(next_multiple(a, d))
    for x in grid:
        s = ord_succ(x)
        if s <= top:
            pts.add(s)
        if x and not x.is_limit():
            e, c = x.terms[-1]
            pts.add(type(x)._raw(x.terms[:-1] + (((0, c - 1),) if c > 1 else ())))
        elif x:
            for d in range(x.deg):
                pts.add(approach(x, depth, d))
    out = sorted(p for p in pts if p <= top)
    if carrier is not None:
        out = [p for p in out if carrier(p)]
    return out
