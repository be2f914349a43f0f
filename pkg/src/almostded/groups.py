"""Free abelian groups of ideal maps on finitely generated slices.

Every computation goes through an :class:`AtomDecomposition`: the generators
are constant on each atom, so a map becomes an integer row vector and group
questions become integer row reductions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import lattice, steps
from .ideals import (
    IdealMap,
    NotContinuous,
    discontinuity_set,
    ideal_leq,
    is_continuous,
    restrict_map,
    test_points,
    upper_set,
)
from .lattice import CancelToken
from .model import DomainModel, NotScattered, is_sp_scattered, mi_check, model_sharp, strata
from .ordinal import Ordinal, as_ordinal
from .sets import AmbientMismatch, DefinableSet, Space, isolated_points, set_closure


class UnglueError(ValueError):
    def __init__(self, stratum: int, witness: Ordinal):
        super().__init__(f"component on stratum {stratum} is discontinuous at {witness}")
        self.stratum = stratum
        self.witness = witness


class ShapeError(ValueError):
    pass


def _common_space(maps) -> Space:
    space = maps[0].space
    for g in maps[1:]:
        if g.space is not space and g.space != space:
            raise AmbientMismatch("generators live on different spaces")
    return space


@dataclass
class AtomDecomposition:
    space: Space
    atoms: List[DefinableSet]
    table: List[List[int]]  # table[g][a] = value of generator g on atom a

    def vector(self, h: IdealMap) -> Optional[List[int]]:
        """Coordinates of ``h``, or ``None`` if ``h`` is not constant on the atoms."""
        out = []
        covered = self.space.empty()
        for a in self.atoms:
            vals = {h.steps(x) for x in _points(h, a)}
            if len(vals) != 1:
                return None
            out.append(vals.pop())
            covered = covered | a
        rest = restrict_map(h, self.space.carrier - covered)
        if not rest.steps.is_zero():
            return None
        return out

    def to_map(self, row) -> IdealMap:
        m = steps.StepMap()
        for v, a in zip(row, self.atoms):
            v = int(v)
            if v:
                m = steps.combine(lambda acc, k: acc + v * k, m, a.steps)
        return IdealMap(self.space, m)

    def matrix(self) -> np.ndarray:
        return lattice.as_matrix(self.table, len(self.atoms))


def _points(h: IdealMap, a: DefinableSet):
    # one point per (grid cell, degree) of h and a: enough to see every value
    return [x for x in test_points(h, extra=[a]) if a.steps(x)]


def atom_decompose(gens: Sequence[IdealMap], extra: Sequence[DefinableSet] = ()) -> AtomDecomposition:
    """Atoms of the Boolean algebra generated by the level sets of ``gens``.

    Sets in ``extra`` refine the atoms further without adding table rows.
    Atoms where every generator vanishes are dropped unless an extra set
    separates them; atoms are ordered by least point.
    """
    if not gens and not extra:
        raise ValueError("nothing to decompose")
    space = _common_space(list(gens) + [IdealMap(e.space, e.steps) for e in extra])
    carrier = space.carrier_steps
    ms = [g.steps for g in gens] + [e.steps for e in extra]
    grid, rows = steps.all_cells(*ms, carrier)
    sigs = set()
    if carrier.zero:
        sigs.add(tuple(m.zero for m in ms))
    for k in range(len(grid) - 1):
        cvals = rows[-1][k]
        for d in range(len(cvals)):
            if cvals[d]:
                sigs.add(tuple(r[k][d] for r in rows[:-1]))
    sigs.discard(tuple([0] * len(ms)))
    atoms = []
    for sig in sigs:
        mask = steps.combine(
            lambda *a, sig=sig: 1 if a[-1] and a[:-1] == sig else 0, *ms, carrier
        )
        atoms.append((steps.least_point(mask), sig, DefinableSet(space, mask)))
    atoms.sort(key=lambda t: t[0])
    ng = len(gens)
    table = [[sig[g] for _, sig, _ in atoms] for g in range(ng)]
    return AtomDecomposition(space, [a for _, _, a in atoms], table)


@dataclass
class IntBasis:
    decomposition: AtomDecomposition
    basis: np.ndarray  # rows, atom coordinates
    rank: int
    divisors: List[int]
    coefficients: Optional[np.ndarray] = None  # basis rows as combinations of the inputs

    def maps(self) -> List[IdealMap]:
        return [self.decomposition.to_map(r) for r in self.basis]

    def record(self) -> dict:
        return {
            "rank": self.rank,
            "divisors": [int(d) for d in self.divisors],
            "basis": [[int(v) for v in r] for r in self.basis],
        }


def _basis_from_rows(dec: AtomDecomposition, rows, cancel=None) -> IntBasis:
    rows = lattice.as_matrix(rows, len(dec.atoms))
    if rows.shape[0] == 0:
        return IntBasis(dec, rows, 0, [], rows)
    H, U, r = lattice.hnf(rows, cancel)
    return IntBasis(dec, H[:r], r, lattice.elementary_divisors(rows, cancel), U[:r])


def subgroup_basis(gens: Sequence[IdealMap], cancel: Optional[CancelToken] = None) -> IntBasis:
    dec = atom_decompose(gens)
    return _basis_from_rows(dec, dec.table, cancel)


@dataclass
class Membership:
    member: bool
    certificate: Optional[List[int]]  # integer coefficients of the generators


def subgroup_member(gens: Sequence[IdealMap], h: IdealMap, cancel: Optional[CancelToken] = None) -> Membership:
    if not gens:
        return Membership(h.steps.is_zero(), [] if h.steps.is_zero() else None)
    dec = atom_decompose(gens)
    v = dec.vector(h)
    if v is None:
        dec = atom_decompose(list(gens) + [h])
        dec.table.pop()
        v = dec.vector(h)
    sol = lattice.solve_row(dec.matrix(), v, cancel)
    return Membership(sol.member, sol.coefficients)


# -- stratified tuples -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StratTuple:
    """One map per stratum, each vanishing off its stratum (ambient space)."""

    components: Tuple[IdealMap, ...]

    def __add__(self, other: "StratTuple") -> "StratTuple":
        return StratTuple(tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return StratTuple(tuple(-a for a in self.components))

    def __eq__(self, other):
        if not isinstance(other, StratTuple):
            return NotImplemented
        return len(self.components) == len(other.components) and all(
            a == b for a, b in zip(self.components, other.components)
        )

    __hash__ = object.__hash__

    def __le__(self, other: "StratTuple") -> bool:
        return all(ideal_leq(a, b) for a, b in zip(self.components, other.components))


def strat_tuple(m: DomainModel, components: Sequence[IdealMap]) -> StratTuple:
    """Build a tuple, checking that each component lives on its stratum and is continuous there."""
    if not is_sp_scattered(m):
        raise NotScattered("stratified tuples need an SP-scattered model")
    ss = strata(m)
    if len(components) != len(ss):
        raise ValueError(f"expected {len(ss)} components, got {len(components)}")
    out = []
    for i, (c, s) in enumerate(zip(components, ss)):
        off = restrict_map(c, m.space.carrier - s)
        if not off.steps.is_zero():
            raise ValueError(f"component {i} leaves its stratum")
        disc = discontinuity_set(c, within=s)
        if disc:
            raise UnglueError(i, disc.least())
        out.append(c)
    return StratTuple(tuple(out))


def glue(m: DomainModel, t: StratTuple) -> IdealMap:
    """Extension by zero: ``glue(t)(x) = t_i(x)`` for ``x`` in stratum ``i``."""
    if not is_sp_scattered(m):
        raise NotScattered("glue needs an SP-scattered model")
    if len(t.components) != len(m.chain):
        raise ValueError("tuple length does not match the model")
    total = IdealMap.zero(m.space)
    for c, s in zip(t.components, strata(m)):
        total = total + restrict_map(c, s)
    return total


def unglue(m: DomainModel, nu: IdealMap) -> StratTuple:
    if not is_sp_scattered(m):
        raise NotScattered("unglue needs an SP-scattered model")
    comps = []
    for i, s in enumerate(strata(m)):
        disc = discontinuity_set(nu, within=s)
        if disc:
            raise UnglueError(i, disc.least())
        comps.append(restrict_map(nu, s))
    return StratTuple(tuple(comps))


# -- exact sequences ---------------------------------------------------------------

def _stage_columns(dec: AtomDecomposition, c: DefinableSet):
    inside, touching = [], []
    for k, a in enumerate(dec.atoms):
        if a & c:
            inside.append(k)
        if set_closure(a) & c:
            touching.append(k)
    return inside, touching


def _kernel_rows(table: np.ndarray, cols, cancel) -> np.ndarray:
    if not cols:
        return np.eye(table.shape[0], dtype=np.int64)
    return lattice.left_kernel(table[:, cols], cancel)


def kernel_of_restriction(
    m: DomainModel, gens: Sequence[IdealMap], i: int, cancel: Optional[CancelToken] = None
) -> IntBasis:
    """Basis of ``{g in span(gens) : g = 0 on C_i}``."""
    c = m.stage(i)
    dec = atom_decompose(gens, extra=[c])
    T = dec.matrix()
    inside, _ = _stage_columns(dec, c)
    K = _kernel_rows(T, inside, cancel)
    rows = K.dot(T) if K.shape[0] else K.reshape(0, T.shape[1])
    return _basis_from_rows(dec, rows, cancel)


def exactness_report(
    m: DomainModel, gens: Sequence[IdealMap], i: int, cancel: Optional[CancelToken] = None
) -> dict:
    """Rank bookkeeping for ``0 -> ker -> span -> span|C_i -> 0``."""
    c = m.stage(i)
    dec = atom_decompose(gens, extra=[c])
    T = dec.matrix()
    inside, touching = _stage_columns(dec, c)
    total = lattice.rank(T, cancel)
    image = lattice.rank(T[:, inside], cancel) if inside else 0
    K = _kernel_rows(T, inside, cancel)
    kern_rows = lattice.row_basis(K.dot(T), cancel) if K.shape[0] else T[:0]
    kernel = kern_rows.shape[0]
    # supports avoiding C_i: zero on every atom whose closure meets C_i
    A = _kernel_rows(T, touching, cancel)
    avoid = lattice.rank(A.dot(T), cancel) if A.shape[0] else 0
    span = lattice.row_basis(T, cancel)
    if kernel:
        coords = lattice.in_coordinates(span, kern_rows, cancel)
        divisors = lattice.elementary_divisors(coords, cancel)
    else:
        divisors = []
    return {
        "stage": i,
        "total_rank": int(total),
        "kernel_rank": int(kernel),
        "image_rank": int(image),
        "additive": kernel + image == total,
        "support_avoiding_rank": int(avoid),
        "kernel_is_support_avoiding": avoid == kernel,
        "quotient_divisors": [int(d) for d in divisors],
        "quotient_free": all(d == 1 for d in divisors),
    }


def _walk_points(s: DefinableSet, limit: int) -> List[Ordinal]:
    """The first ``limit`` points of ``s`` in increasing order."""
    out = []
    rest = s
    while rest and len(out) < limit:
        x = rest.least()
        out.append(x)
        rest = rest - s.space.cell(None, x)
    return out


def sigma_r_report(
    m: DomainModel,
    gens: Sequence[IdealMap],
    probe: int = 6,
    cancel: Optional[CancelToken] = None,
) -> dict:
    """The quotient of ``span(gens)`` by its part supported away from ``C_1``.

    For finite ``C_1`` extension generators ``chi_(p, c]`` (``p`` the previous
    point of ``C_1``) show the quotient can reach rank ``|C_1|``; for infinite
    ``C_1`` the same construction runs on growing prefixes.
    """
    for k, g in enumerate(gens):
        if not is_continuous(g):
            raise NotContinuous(discontinuity_set(g))
    c1 = m.stage(1)
    out = {"critical_finite": c1.is_finite(), "critical_size": len(c1) if c1.is_finite() else None}
    if gens:
        dec = atom_decompose(gens, extra=[c1])
        T = dec.matrix()
        inside, _ = _stage_columns(dec, c1)
        image = lattice.rank(T[:, inside], cancel) if inside else 0
        K = _kernel_rows(T, inside, cancel)
        kern = lattice.row_basis(K.dot(T), cancel) if K.shape[0] else T[:0]
        span = lattice.row_basis(T, cancel)
        divisors = (
            lattice.elementary_divisors(lattice.in_coordinates(span, kern, cancel), cancel)
            if kern.shape[0]
            else []
        )
        out.update(
            quotient_rank=int(image),
            avoiding_rank=int(kern.shape[0]),
            total_rank=int(span.shape[0]),
            quotient_divisors=[int(d) for d in divisors],
            quotient_free=all(d == 1 for d in divisors),
        )
    else:
        out.update(quotient_rank=0, avoiding_rank=0, total_rank=0, quotient_divisors=[], quotient_free=True)

    n = len(c1) if c1.is_finite() else probe
    pts = _walk_points(c1, n)
    space = m.space
    ext = []
    prev = None
    for x in pts:
        ext.append(IdealMap.indicator(space.carrier & space.cell(prev, x)))
        prev = x
    ranks = []
    for k in range(1, len(ext) + 1):
        fam = list(gens) + ext[:k]
        dec = atom_decompose(fam, extra=[c1])
        T = dec.matrix()
        inside, _ = _stage_columns(dec, c1)
        ranks.append(int(lattice.rank(T[:, inside], cancel)) if inside else 0)
    out["extension_points"] = [str(x) for x in pts]
    out["extension_ranks"] = ranks
    if c1.is_finite():
        achieved = ranks[-1] if ranks else 0
        out["achievable_rank"] = achieved
        out["achieves_critical_size"] = achieved == out["critical_size"]
    else:
        out["rank_grows"] = all(b > a for a, b in zip(ranks, ranks[1:]))
    return out


# -- order mismatch ---------------------------------------------------------------

def _check_shape(m: DomainModel):
    w = as_ordinal("w")
    if not (m.space.top == w and m.space.is_full_interval() and m == model_sharp(m.space)):
        raise ShapeError("order_mismatch_demo needs the sharp model on [0,w]")


def random_critical_ideal(m: DomainModel, rng: np.random.Generator) -> IdealMap:
    """A random map on [0,w] with value 1 at w that passes :func:`mi_check`.

    Shape: value ``t >= 2`` on a tail ``(a, w)``, 1 at ``w``, and random
    values on finitely many points below.
    """
    space = m.space
    w = as_ordinal("w")
    while True:
        a = int(rng.integers(0, 8))
        t = int(rng.integers(2, 6))
        pieces = [(space.cell(a, w).cells[0], t)]
        overrides = [(w, 1)]
        for x in rng.choice(np.arange(1, a + 6), size=int(rng.integers(0, 5)), replace=False):
            overrides.append((int(x), int(rng.integers(0, 6))))
        nu = IdealMap.build(space, pieces, overrides)
        if mi_check(m, nu).accepted:
            return nu


def domination_witness(nu: IdealMap) -> Optional[Ordinal]:
    """Least isolated ``y`` with ``nu(y) >= 2``; then ``nu >= chi_{y}`` pointwise."""
    cand = upper_set(nu, 2) & isolated_points(nu.space.carrier)
    return cand.least()


def order_mismatch_demo(m: DomainModel, count: int = 50, seed: int = 0) -> dict:
    _check_shape(m)
    space = m.space
    w = as_ordinal("w")
    rng = np.random.default_rng(seed)
    samples = [random_critical_ideal(m, rng) for _ in range(count)]
    cases = []
    for nu in samples:
        y = domination_witness(nu)
        ok = y is not None and ideal_leq(IdealMap.indicator(space.points([y])), nu)
        cases.append({"verdict": mi_check(m, nu).record(), "witness": None if y is None else str(y), "dominates": ok})
    y0 = as_ordinal(cases[0]["witness"]) if cases and cases[0]["witness"] else as_ordinal(1)
    s0, s1 = strata(m)
    zero = IdealMap.zero(space)
    t1 = StratTuple((zero, IdealMap.indicator(space.points([w]))))
    t2 = StratTuple((IdealMap.indicator(space.points([y0])), zero))
    g1, g2 = glue(m, t1), glue(m, t2)
    return {
        "t1": ["0", "chi{w}"],
        "t2": [f"chi{{{y0}}}", "0"],
        "incomparable": not (t1 <= t2) and not (t2 <= t1),
        "glue_t1_dominates_glue_t2": ideal_leq(g2, g1),
        "samples": len(cases),
        "all_dominate": all(c["dominates"] for c in cases),
        "cases": cases,
    }
