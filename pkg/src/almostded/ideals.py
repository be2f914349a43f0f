"""Finitely described compact-support maps ``Space -> Z`` and their ideal calculus.

An :class:`IdealMap` plays the role of the valuation map of a fractional
ideal: its value at a maximal ideal is the adic value of the ideal there.
Products become pointwise sums, ``I + J`` the pointwise minimum and ``I ∩ J``
the pointwise maximum, so that containment reverses the pointwise order.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import steps
from .ordinal import Ordinal, as_ordinal
from .sets import (
    AmbientMismatch,
    Cell,
    DefinableSet,
    Space,
    derived,
    is_clopen_in,
    is_closed,
    set_closure,
    set_complement,
    test_points_for,
)
from .steps import StepMap


class PointOutsideCarrier(ValueError):
    pass


class NotIntegral(ValueError):
    pass


class NotContinuous(ValueError):
    """Raised by :func:`radical_factor`; ``witness`` is the discontinuity set."""

    def __init__(self, witness: DefinableSet):
        super().__init__(f"map is not continuous; discontinuities at {witness}")
        self.witness = witness


class NotClopen(ValueError):
    def __init__(self, index: int, factor: DefinableSet):
        super().__init__(f"factor {index} is not clopen-compact in the carrier: {factor}")
        self.index = index
        self.factor = factor


class IdealMap:
    __slots__ = ("space", "steps")

    def __init__(self, space: Space, m: StepMap):
        self.space = space
        self.steps = m

    @classmethod
    def build(
        cls,
        space: Space,
        pieces: Iterable[Tuple[Cell, int]] = (),
        overrides: Iterable[Tuple[object, int]] = (),
    ) -> "IdealMap":
        """Assemble a map from pieces and point overrides.

        Pieces are applied in order, a later piece replacing an earlier one
        where they overlap; overrides are applied last.
        """
        m = StepMap()
        for cell, value in pieces:
            mask = cell.steps()
            m = steps.combine(lambda old, inside: value if inside else old, m, mask)
        for pt, value in overrides:
            x = as_ordinal(pt)
            if not space.contains(x):
                raise PointOutsideCarrier(f"override point {x} is outside the carrier")
            mask = StepMap.point(x)
            m = steps.combine(lambda old, inside: value if inside else old, m, mask)
        outside = steps.combine(lambda v, c: 1 if v and not c else 0, m, space.carrier_steps)
        if not outside.is_zero():
            raise PointOutsideCarrier("pieces leave the carrier")
        return cls(space, m)

    @classmethod
    def indicator(cls, s: DefinableSet, value: int = 1) -> "IdealMap":
        return cls(s.space, s.steps.map(lambda v: value if v else 0))

    @classmethod
    def zero(cls, space: Space) -> "IdealMap":
        return cls(space, StepMap())

    # -- evaluation -----------------------------------------------------------
    def __call__(self, x) -> int:
        return ideal_value(self, x)

    def pieces(self) -> List[Tuple[Cell, int]]:
        """Disjoint cells with their nonzero values (canonical, no overrides)."""
        out = []
        for v in sorted(self.values() - {0}):
            for c in level_set(self, v).cells:
                out.append((c, v))
        return out

    def values(self) -> set:
        """Values taken on the carrier."""
        return {self.steps(x) for x in test_points(self)}

    def __add__(self, other):
        return ideal_mul(self, other)

    def __neg__(self):
        return ideal_inv(self)

    def __sub__(self, other):
        return ideal_mul(self, ideal_inv(other))

    def scale(self, n: int) -> "IdealMap":
        return IdealMap(self.space, self.steps.map(lambda v: n * v))

    def __eq__(self, other):
        if not isinstance(other, IdealMap):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        body = " + ".join(f"{v}*{c}" for c, v in self.pieces()) or "0"
        return f"IdealMap({body})"


def _same(a: IdealMap, b: IdealMap):
    if a.space is not b.space and a.space != b.space:
        raise AmbientMismatch("ideal maps live on different spaces")


def _pointwise(f, *maps: IdealMap) -> IdealMap:
    for m in maps[1:]:
        _same(maps[0], m)
    return IdealMap(maps[0].space, steps.combine(f, *(m.steps for m in maps)))


def test_points(*maps: IdealMap, extra: Sequence[DefinableSet] = ()) -> List[Ordinal]:
    space = maps[0].space
    ms = [m.steps for m in maps] + [d.steps for d in extra] + [space.carrier_steps]
    return test_points_for(ms, space.top, carrier=space.carrier_steps)


# -- values and order ---------------------------------------------------------------

def ideal_value(nu: IdealMap, x) -> int:
    x = as_ordinal(x)
    if not nu.space.contains(x):
        raise PointOutsideCarrier(f"{x} is outside the carrier")
    return nu.steps(x)


def ideal_equal(nu: IdealMap, mu: IdealMap) -> bool:
    """Decided on the canonical test points of both descriptions."""
    _same(nu, mu)
    return all(nu.steps(x) == mu.steps(x) for x in test_points(nu, mu))


def ideal_leq(nu: IdealMap, mu: IdealMap) -> bool:
    """``nu <= mu`` pointwise, i.e. the ideal of ``nu`` contains that of ``mu``."""
    _same(nu, mu)
    return all(nu.steps(x) <= mu.steps(x) for x in test_points(nu, mu))


def ideal_mul(nu: IdealMap, mu: IdealMap) -> IdealMap:
    return _pointwise(lambda a, b: a + b, nu, mu)


def ideal_inv(nu: IdealMap) -> IdealMap:
    return IdealMap(nu.space, nu.steps.map(lambda a: -a))


def ideal_sum(nu: IdealMap, mu: IdealMap) -> IdealMap:
    """The ideal ``I + J``: pointwise minimum."""
    return _pointwise(min, nu, mu)


def ideal_cap(nu: IdealMap, mu: IdealMap) -> IdealMap:
    """The ideal ``I ∩ J``: pointwise maximum."""
    return _pointwise(max, nu, mu)


# -- geometry ---------------------------------------------------------------

def level_set(nu: IdealMap, v: int) -> DefinableSet:
    """``{x in carrier : nu(x) == v}``."""
    m = steps.combine(lambda c, a: 1 if c and a == v else 0, nu.space.carrier_steps, nu.steps)
    return DefinableSet(nu.space, m)


def upper_set(nu: IdealMap, n: int) -> DefinableSet:
    """``{x in carrier : nu(x) >= n}`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("upper_set needs n >= 1")
    return DefinableSet(nu.space, nu.steps.map(lambda a: 1 if a >= n else 0))


def nonzero_set(nu: IdealMap) -> DefinableSet:
    return DefinableSet(nu.space, nu.steps.map(lambda a: 1 if a else 0))


def zero_set(nu: IdealMap) -> DefinableSet:
    return set_complement(nonzero_set(nu))


def support(nu: IdealMap) -> DefinableSet:
    return set_closure(nonzero_set(nu))


def v_set(nu: IdealMap) -> DefinableSet:
    return upper_set(nu, 1)


def is_integral(nu: IdealMap) -> bool:
    return min(nu.steps.values()) >= 0


def is_radical(nu: IdealMap) -> bool:
    return nu.steps.values() <= {0, 1}


def radical(nu: IdealMap) -> IdealMap:
    if not is_integral(nu):
        raise NotIntegral("radical of a non-integral map")
    return IdealMap.indicator(v_set(nu))


# -- continuity ---------------------------------------------------------------

def _levels(nu: IdealMap, within: DefinableSet) -> Dict[int, DefinableSet]:
    out = {}
    for v in nu.steps.values() | {0}:
        lv = level_set(nu, v) & within
        if lv:
            out[v] = lv
    return out


def discontinuity_set(nu: IdealMap, within: Optional[DefinableSet] = None) -> DefinableSet:
    """Points of ``within`` (default: the carrier) where ``nu|within`` is not locally constant.

    A point ``x`` of level ``v`` is a discontinuity exactly when it is a limit
    of points of ``within`` carrying other values.
    """
    s = nu.space.carrier if within is None else within
    bad = nu.space.empty()
    for v, lv in _levels(nu, s).items():
        bad = bad | (lv & derived(s - lv))
    return bad


def is_continuous(nu: IdealMap, within: Optional[DefinableSet] = None) -> bool:
    return not discontinuity_set(nu, within)


def levels_clopen(nu: IdealMap) -> bool:
    """Continuity decided from level sets: every level set clopen in the carrier."""
    c = nu.space.carrier
    return all(is_clopen_in(lv, c) for lv in _levels(nu, c).values())


def pos_neg_split(nu: IdealMap) -> Tuple[IdealMap, IdealMap]:
    j = IdealMap(nu.space, nu.steps.map(lambda a: max(a, 0)))
    l = IdealMap(nu.space, nu.steps.map(lambda a: max(-a, 0)))
    return j, l


# -- radical factorization ------------------------------------------------------

def radical_factor(nu: IdealMap) -> List[DefinableSet]:
    """The decreasing chain ``X_n = {nu >= n}``, ``n = 1..max(nu)``.

    ``nu == sum(chi_{X_n})``; each ``X_n`` is clopen and compact, and the chain
    is the unique decreasing one with that property.
    """
    if not is_integral(nu):
        raise NotIntegral("radical factorization needs an integral map")
    carrier = nu.space.carrier
    top = max(nu.steps.values())
    factors = []
    for n in range(1, top + 1):
        xn = upper_set(nu, n)
        if not (is_clopen_in(xn, carrier) and is_closed(xn)):
            raise NotContinuous(discontinuity_set(nu))
        factors.append(xn)
    return factors


def radical_recompose(factors: Sequence[DefinableSet], space: Space) -> IdealMap:
    total = IdealMap.zero(space)
    carrier = space.carrier
    for i, x in enumerate(factors):
        if x.space != space:
            raise AmbientMismatch("factor lives on another space")
        if not (is_clopen_in(x, carrier) and is_closed(x)):
            raise NotClopen(i, x)
        total = ideal_mul(total, IdealMap.indicator(x))
    return total


def restrict_map(nu: IdealMap, within: DefinableSet) -> IdealMap:
    """``nu`` times the indicator of ``within`` (same space)."""
    return IdealMap(nu.space, steps.combine(lambda a, c: a if c else 0, nu.steps, within.steps))
