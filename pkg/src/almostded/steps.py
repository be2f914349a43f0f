"""Integer step maps on an ordinal interval ``[0, top]``.

A step map is a value at the point 0 plus a sorted list of disjoint
half-open segments ``(lo, hi]``.  On a segment the value depends only on the
degree of the point, so each segment carries one integer per degree that
actually occurs in it.  Points outside every segment have value 0.

Both definable sets (values in {0, 1}) and ideal maps are step maps; every
pointwise operation is "refine to a common grid, combine degree by degree,
normalise".
"""
from __future__ import annotations

from bisect import bisect_left
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .ordinal import ZERO, Ordinal, next_multiple

Seg = Tuple[Ordinal, Ordinal, Tuple[int, ...]]


@lru_cache(maxsize=1 << 17)
def top_degree(lo: Ordinal, hi: Ordinal) -> int:
    """Largest degree of a point in ``(lo, hi]`` (requires lo < hi).

    Degrees occurring in the segment are exactly ``0..top_degree``.
    """
    d = 0
    while next_multiple(lo, d + 1) <= hi:
        d += 1
    return d


class StepMap:
    __slots__ = ("zero", "segs", "_his")

    def __init__(self, zero: int = 0, segs: Sequence[Seg] = ()):
        self.zero = zero
        self.segs: Tuple[Seg, ...] = tuple(segs)
        self._his = None

    # -- construction ------------------------------------------------------
    @classmethod
    def cell(cls, lo, hi: Ordinal, dmin: int, dmax, value: int = 1) -> "StepMap":
        """Indicator (times ``value``) of ``{x : lo < x <= hi, dmin <= deg x <= dmax}``.

        ``lo=None`` stands for the bottom marker, i.e. 0 itself is included
        when ``dmin == 0``.
        """
        zero = 0
        start = lo
        if lo is None:
            start = ZERO
            if dmin == 0:
                zero = value
        segs = []
        if start < hi:
            top = top_degree(start, hi)
            hi_d = top if dmax is None else min(dmax, top)
            vals = tuple(value if dmin <= d <= hi_d else 0 for d in range(top + 1))
            if any(vals):
                segs.append((start, hi, vals))
        return cls(zero, segs)

    @classmethod
    def point(cls, x: Ordinal, value: int = 1) -> "StepMap":
        if not x:
            return cls(value, ())
        from .ordinal import predecessor_base

        lo = predecessor_base(x)
        top = top_degree(lo, x)
        vals = tuple(value if d == top else 0 for d in range(top + 1))
        return cls(0, ((lo, x, vals),))

    # -- evaluation --------------------------------------------------------
    def _hi_list(self):
        if self._his is None:
            self._his = [s[1] for s in self.segs]
        return self._his

    def __call__(self, x: Ordinal) -> int:
        if not x:
            return self.zero
        k = bisect_left(self._hi_list(), x)
        if k == len(self.segs):
            return 0
        lo, hi, vals = self.segs[k]
        if not lo < x:
            return 0
        return vals[x.deg]

    def breakpoints(self) -> Iterator[Ordinal]:
        for lo, hi, _ in self.segs:
            yield lo
            yield hi

    def values(self) -> set:
        out = {self.zero}
        for _, _, vals in self.segs:
            out.update(vals)
        return out

    def is_zero(self) -> bool:
        return self.zero == 0 and not self.segs

    def max_coeff(self) -> int:
        m = 0
        for lo, hi, _ in self.segs:
            for _, c in lo.terms + hi.terms:
                m = max(m, c)
        return m

    def __repr__(self):
        segs = ", ".join(f"({lo},{hi}]:{list(v)}" for lo, hi, v in self.segs)
        return f"StepMap(zero={self.zero}, [{segs}])"

    # -- structure ---------------------------------------------------------
    def map(self, f: Callable[[int], int]) -> "StepMap":
        """Apply ``f`` pointwise; requires ``f(0) == 0`` away from segments."""
        return combine(f, self)

    def structurally_equal(self, other: "StepMap") -> bool:
        return self.zero == other.zero and self.segs == other.segs


def _grid(maps: Sequence[StepMap]) -> List[Ordinal]:
    pts = {ZERO}
    for m in maps:
        pts.update(m.breakpoints())
    return sorted(pts)


def refine(m: StepMap, grid: Sequence[Ordinal]) -> List[Tuple[int, ...]]:
    """Values of ``m`` on every grid cell ``(grid[k], grid[k+1]]``.

    ``grid`` must contain all breakpoints of ``m``.
    """
    out: List[Tuple[int, ...]] = []
    segs = m.segs
    j = 0
    for k in range(len(grid) - 1):
        a, b = grid[k], grid[k + 1]
        while j < len(segs) and segs[j][1] <= a:
            j += 1
        top = top_degree(a, b)
        if j < len(segs) and segs[j][0] <= a and b <= segs[j][1]:
            out.append(segs[j][2][: top + 1])
        else:
            out.append((0,) * (top + 1))
    return out


def normalize(zero: int, grid: Sequence[Ordinal], cells: Sequence[Tuple[int, ...]]) -> StepMap:
    segs: List[list] = []
    for k, vals in enumerate(cells):
        if not any(vals):
            continue
        a, b = grid[k], grid[k + 1]
        if segs and segs[-1][1] == a:
            plo, phi, pvals = segs[-1]
            n = min(len(pvals), len(vals))
            if pvals[:n] == vals[:n]:
                segs[-1] = [plo, b, pvals if len(pvals) >= len(vals) else vals]
                continue
        segs.append([a, b, vals])
    return StepMap(zero, [tuple(s) for s in segs])


def combine(f: Callable[..., int], *maps: StepMap) -> StepMap:
    """Pointwise ``f`` of several step maps.

    ``f(0, ..., 0)`` must be 0 unless the caller accepts a value that is not
    representable (points outside every segment would get it): such calls
    raise ``ValueError``.
    """
    if f(*([0] * len(maps))) != 0:
        raise ValueError("combine: f must vanish where all inputs vanish")
    grid = _grid(maps)
    rows = [refine(m, grid) for m in maps]
    cells = []
    for k in range(len(grid) - 1):
        cols = [r[k] for r in rows]
        cells.append(tuple(f(*vs) for vs in zip(*cols)))
    zero = f(*(m.zero for m in maps))
    return normalize(zero, grid, cells)


def all_cells(*maps: StepMap) -> Tuple[List[Ordinal], List[List[Tuple[int, ...]]]]:
    grid = _grid(maps)
    return grid, [refine(m, grid) for m in maps]


def derived(m: StepMap) -> StepMap:
    """Limit points of the nonzero set of ``m``, as a 0/1 step map.

    Inside a segment the nonzero set is cofinal below every point whose
    degree exceeds the least degree carrying a nonzero value; no segment
    accumulates at its own lower end or beyond its upper end.
    """
    segs = []
    for lo, hi, vals in m.segs:
        dmin = next((d for d, v in enumerate(vals) if v), None)
        if dmin is None or dmin + 1 >= len(vals):
            continue
        segs.append((lo, hi, tuple(1 if d > dmin else 0 for d in range(len(vals)))))
    return StepMap(0, segs)


def least_point(m: StepMap):
    """Least point where ``m`` is nonzero, or ``None``."""
    if m.zero:
        return ZERO
    for lo, _, vals in m.segs:
        for d, v in enumerate(vals):
            if v:
                return next_multiple(lo, d)
    return None


def witnesses(m: StepMap) -> Dict[Tuple[int, int], Ordinal]:
    """Least point of each (segment, degree) atom of ``m``."""
    out = {}
    for k, (lo, _, vals) in enumerate(m.segs):
        for d in range(len(vals)):
            out[(k, d)] = next_multiple(lo, d)
    return out
