"""Domain models: a space with a validated chain of closed "critical" sets.

``chain[i]`` stands for the i-th critical locus.  ``chain[0]`` is the whole
carrier, each later stage is closed and consists of limit points of the
previous one.  After the last listed stage comes either the empty set
(``terminal="empty"``) or a repetition of the last stage (``"stalled"``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .ideals import (
    IdealMap,
    NotIntegral,
    discontinuity_set,
    is_integral,
    support,
    upper_set,
    v_set,
)
from .ordinal import Ordinal
from .sets import (
    DefinableSet,
    Space,
    cb_chain,
    cb_rank,
    derived,
    is_clopen_in,
    is_closed,
    is_compact,
    set_equal,
    set_subset,
)


class ValidationError(ValueError):
    """A chain violates a model invariant.  Rendered as ``{condition, stage, witness}``."""

    def __init__(self, condition: str, stage: int, witness=None, detail: str = ""):
        msg = f"{condition} at stage {stage}"
        if witness is not None:
            msg += f" (witness {witness})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.condition = condition
        self.stage = stage
        self.witness = witness

    def record(self) -> dict:
        w = self.witness
        if isinstance(w, Ordinal):
            w = str(w)
        elif isinstance(w, DefinableSet):
            w = repr(w)
        return {"condition": self.condition, "stage": self.stage, "witness": w}


class NotScattered(ValueError):
    pass


TERMINALS = ("empty", "stalled")


@dataclass(frozen=True, eq=False)
class DomainModel:
    space: Space
    chain: tuple
    terminal: str = "empty"

    def stage(self, i: int) -> DefinableSet:
        """``C_i`` for any ``i >= 0`` (past the chain: empty or the stalled stage)."""
        if i < len(self.chain):
            return self.chain[i]
        if self.terminal == "empty":
            return self.space.empty()
        return self.chain[-1]

    @property
    def m(self) -> int:
        return len(self.chain) - 1

    def __eq__(self, other):
        if not isinstance(other, DomainModel):
            return NotImplemented
        return (
            self.space == other.space
            and self.terminal == other.terminal
            and len(self.chain) == len(other.chain)
            and all(set_equal(a, _rehome(b, self.space)) for a, b in zip(self.chain, other.chain))
        )

    __hash__ = object.__hash__

    def __repr__(self):
        stages = ", ".join(repr(c) for c in self.chain)
        return f"DomainModel({self.space!r}, [{stages}], terminal={self.terminal})"


def _rehome(s: DefinableSet, space: Space) -> DefinableSet:
    if s.space is space:
        return s
    return DefinableSet(space, s.steps)


def validate(space: Space, chain: Sequence[DefinableSet], terminal: str = "empty") -> DomainModel:
    if terminal not in TERMINALS:
        raise ValidationError("unknown-terminal", len(chain), detail=terminal)
    if not chain:
        raise ValidationError("empty-chain", 0)
    chain = [_rehome(c, space) for c in chain]
    if not set_equal(chain[0], space.carrier):
        diff = (chain[0] - space.carrier) | (space.carrier - chain[0])
        raise ValidationError("stage0-not-carrier", 0, diff.least())
    for i, c in enumerate(chain):
        if not is_closed(c):
            raise ValidationError("not-closed", i, (derived(c) - c).least())
    for i in range(1, len(chain)):
        prev, cur = chain[i - 1], chain[i]
        if not cur:
            raise ValidationError("empty-stage", i, detail="listed stages must be nonempty")
        limit_pts = derived(prev) & prev
        if not set_subset(cur, limit_pts):
            raise ValidationError("not-in-derived", i, (cur - limit_pts).least())
        if set_equal(cur, prev):
            raise ValidationError("not-strict", i, cur.least())
    if terminal == "stalled":
        # a nonempty closed subset of a scattered space has isolated points,
        # so the last stage can never be its own critical locus
        last = chain[-1]
        iso = (last - derived(last)).least()
        raise ValidationError("stalled-on-scattered", len(chain), iso)
    if len(chain) > cb_rank(space.carrier):
        raise ValidationError("too-long", len(chain) - 1)
    return DomainModel(space, tuple(chain), terminal)


def model_custom(space: Space, chain: Sequence[DefinableSet], terminal: str = "empty") -> DomainModel:
    return validate(space, chain, terminal)


def model_sharp(space: Space) -> DomainModel:
    """Critical loci equal to the iterated derived sets."""
    chain = cb_chain(space.carrier)[:-1]
    return DomainModel(space, tuple(chain), "empty")


def model_sp(space: Space) -> DomainModel:
    """No critical points at all."""
    return DomainModel(space, (space.carrier,), "empty")


def sp_rank(m: DomainModel) -> int:
    """Least ``i`` with ``C_i == C_{i+1}``."""
    if m.terminal == "empty":
        return len(m.chain)
    return len(m.chain) - 1


def is_sp_scattered(m: DomainModel) -> bool:
    return m.terminal == "empty"


def is_sp_domain(m: DomainModel) -> bool:
    return not m.stage(1)


def strata(m: DomainModel) -> List[DefinableSet]:
    return [m.stage(i) - m.stage(i + 1) for i in range(len(m.chain))]


def model_tail(m: DomainModel, i: int) -> DomainModel:
    """The model of the i-th overring: carrier ``C_i``, chain ``C_i, C_{i+1}, ...``."""
    if not 0 <= i <= m.m:
        raise ValueError(f"stage {i} out of range 0..{m.m}")
    sub = Space(m.space.top, m.chain[i].steps)
    return DomainModel(sub, tuple(_rehome(c, sub) for c in m.chain[i:]), m.terminal)


def restrict_ideal(nu: IdealMap, c: DefinableSet) -> IdealMap:
    """``nu`` viewed on the closed subspace ``c``."""
    if not is_closed(c):
        raise ValueError("restriction needs a closed set")
    sub = Space(nu.space.top, c.steps)
    from . import steps

    return IdealMap(sub, steps.combine(lambda a, k: a if k else 0, nu.steps, c.steps))


# -- realism checks ------------------------------------------------------------

@dataclass
class Verdict:
    accepted: bool
    condition: Optional[str] = None
    stage: Optional[int] = None
    witness: Optional[Ordinal] = None

    def record(self) -> dict:
        return {
            "accepted": self.accepted,
            "condition": self.condition,
            "stage": self.stage,
            "witness": None if self.witness is None else str(self.witness),
        }


def mi_check(m: DomainModel, nu: IdealMap) -> Verdict:
    """Necessary conditions for ``nu`` to be the map of an invertible integral ideal.

    Per stage ``i``, with ``C = C_i`` and ``N = C_{i+1}``:

    (a) the support is compact;
    (b) ``{nu >= 1} ∩ C`` is clopen in ``C`` and compact;
    (c) ``nu|C`` is locally constant (in ``C``) at every point of ``C \\ N``;
    (d) if some ``x in N`` has ``nu(x) >= 1`` then some ``y in C`` has ``nu(y) >= 2``;
    (e) if ``nu|C`` is continuous on ``C`` then ``{nu >= 1} ∩ N`` is empty.
    """
    if not is_integral(nu):
        raise NotIntegral("mi_check needs an integral map")
    if not is_sp_scattered(m):
        raise NotScattered("mi_check needs an SP-scattered model")
    supp = support(nu)
    if not is_compact(supp):
        return Verdict(False, "a", 0, (derived(supp) - supp).least())
    V = v_set(nu)
    V2 = upper_set(nu, 2)
    for i in range(len(m.chain)):
        C, N = m.stage(i), m.stage(i + 1)
        Vi = V & C
        if not (is_clopen_in(Vi, C) and is_closed(Vi)):
            bad = (Vi & derived(C - Vi)) | (derived(Vi) & (C - Vi)) | (derived(Vi) - Vi)
            return Verdict(False, "b", i, bad.least())
        disc = discontinuity_set(nu, within=C)
        bad = disc - N
        if bad:
            return Verdict(False, "c", i, bad.least())
        hit = V & N
        if hit and not (V2 & C):
            return Verdict(False, "d", i, hit.least())
        if not disc and hit:
            return Verdict(False, "e", i, hit.least())
    return Verdict(True)


def continuity_crit_equiv(m: DomainModel, nu: IdealMap) -> Dict[str, object]:
    """Compare continuity, avoidance of ``C_1`` and invertibility of the radical."""
    if not is_integral(nu):
        raise NotIntegral("continuity_crit_equiv needs an integral map")
    c1 = m.stage(1)
    V = v_set(nu)
    disc = discontinuity_set(nu)
    cont = not disc
    meet = V & c1
    avoids = not meet
    rad_inv = is_clopen_in(V, m.space.carrier) and is_closed(V) and avoids
    agree = cont == avoids == rad_inv
    witness = None
    if not agree:
        witness = meet.least() if meet else disc.least()
    verdict = mi_check(m, nu) if is_sp_scattered(m) else None
    return {
        "continuous": cont,
        "avoids_critical": avoids,
        "radical_invertible": rad_inv,
        "agree": agree,
        "witness": None if witness is None else str(witness),
        "mi": None if verdict is None else verdict.record(),
    }
