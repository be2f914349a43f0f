"""Ideal colengths of singular length functions, described by a set ``delta``.

``tau(nu)`` is 0 when the zero set of ``nu`` contains ``delta``, i.e. when
``v_set(nu)`` misses ``delta``, and infinite otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .ideals import IdealMap, NotIntegral, ideal_leq, ideal_mul, is_integral, radical, v_set
from .model import DomainModel
from .sets import AmbientMismatch, DefinableSet, Space, set_subset


@total_ordering
class ExtNat:
    """An element of ``{0, inf}``."""

    __slots__ = ("infinite",)

    def __init__(self, infinite: bool):
        self.infinite = bool(infinite)

    def __add__(self, other: "ExtNat") -> "ExtNat":
        return ExtNat(self.infinite or other.infinite)

    def __eq__(self, other):
        if not isinstance(other, ExtNat):
            return NotImplemented
        return self.infinite == other.infinite

    def __lt__(self, other: "ExtNat"):
        return not self.infinite and other.infinite

    def __hash__(self):
        return hash(self.infinite)

    def __str__(self):
        return "inf" if self.infinite else "0"

    def __repr__(self):
        return f"ExtNat({self})"


ZERO = ExtNat(False)
INF = ExtNat(True)


class PreconditionError(ValueError):
    """An identity check was called on inputs outside its hypotheses."""


@dataclass(frozen=True)
class ColengthModel:
    space: Space
    delta: DefinableSet

    def __post_init__(self):
        if self.delta.space != self.space:
            raise AmbientMismatch("delta lives in another space")


def _tau(nu: IdealMap, delta: DefinableSet) -> ExtNat:
    if not is_integral(nu):
        raise NotIntegral("colength of a non-integral map")
    if nu.space != delta.space:
        raise AmbientMismatch("map and delta live in different spaces")
    return ExtNat(bool(v_set(nu) & delta))


def colength(cm: ColengthModel, nu: IdealMap) -> ExtNat:
    return _tau(nu, cm.delta)


def colength_stage(cm: ColengthModel, m: DomainModel, i: int, nu: IdealMap) -> ExtNat:
    """Colength after extending to the i-th overring: ``delta`` cut down to ``C_i``."""
    if not 0 <= i <= len(m.chain):
        raise IndexError(f"stage {i} out of range 0..{len(m.chain)}")
    return _tau(nu, cm.delta & m.stage(i))


def check_sum(cm: ColengthModel, nu: IdealMap, mu: IdealMap) -> bool:
    if not (is_integral(nu) and is_integral(mu)):
        raise PreconditionError("check_sum needs integral maps")
    return colength(cm, ideal_mul(nu, mu)) == colength(cm, nu) + colength(cm, mu)


def check_potpan(cm: ColengthModel, nu: IdealMap, mu: IdealMap, n: int) -> bool:
    """``nu <= mu <= n*nu`` forces equal colengths."""
    if n < 1 or not is_integral(nu):
        raise PreconditionError("check_potpan needs n >= 1 and integral nu")
    if not (ideal_leq(nu, mu) and ideal_leq(mu, nu.scale(n))):
        raise PreconditionError("check_potpan needs nu <= mu <= n*nu")
    return colength(cm, nu) == colength(cm, mu)


def check_viomega(cm: ColengthModel, m: DomainModel, i: int, nu: IdealMap) -> bool:
    """An ideal living on ``C_i`` keeps its colength after extension."""
    if not is_integral(nu):
        raise PreconditionError("check_viomega needs an integral map")
    if not set_subset(v_set(nu), m.stage(i)):
        raise PreconditionError("check_viomega needs v_set(nu) inside C_i")
    return colength(cm, nu) == colength_stage(cm, m, i, nu)


def check_length_theorem(cm: ColengthModel, m: DomainModel, i: int, nu: IdealMap) -> bool:
    """``tau(nu) == tau(rad nu) + tau_i(nu)``."""
    if not is_integral(nu):
        raise PreconditionError("check_length_theorem needs an integral map")
    if not 0 <= i <= len(m.chain):
        raise PreconditionError(f"stage {i} out of range")
    return colength(cm, nu) == colength(cm, radical(nu)) + colength_stage(cm, m, i, nu)
