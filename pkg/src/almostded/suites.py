"""Seeded property suites.

Each suite maps ``(seed, count)`` to a :class:`SuiteReport`.  A case gets its
own generator ``case_rng(seed, index)`` and returns a list of failure records;
cases run in index order so reports are reproducible byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List

from . import steps
from .colength import (
    ColengthModel,
    check_length_theorem,
    check_potpan,
    check_sum,
    check_viomega,
    colength,
)
from .gen import (
    case_rng,
    random_continuous_map,
    random_map,
    random_points_in,
    random_set,
    random_space,
    random_top,
    random_unimodular,
)
from .groups import (
    StratTuple,
    exactness_report,
    glue,
    order_mismatch_demo,
    sigma_r_report,
    subgroup_basis,
    unglue,
)
from .ideals import (
    IdealMap,
    NotContinuous,
    discontinuity_set,
    ideal_cap,
    ideal_leq,
    ideal_mul,
    ideal_sum,
    is_continuous,
    levels_clopen,
    pos_neg_split,
    radical,
    radical_factor,
    radical_recompose,
    restrict_map,
    test_points,
)
from .model import (
    ValidationError,
    mi_check,
    model_custom,
    model_sharp,
    model_sp,
    sp_rank,
    strata,
)
from .oracle import jumps_at
from .ordinal import Ordinal, as_ordinal
from .sets import Space, cb_rank, derived, isolated_points, set_equal

W = as_ordinal("w")
W2 = as_ordinal("w^2")


@dataclass
class SuiteReport:
    name: str
    seed: int
    count: int
    failures: int = 0
    witnesses: List[dict] = field(default_factory=list)
    stats: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "cases": self.count,
            "failures": self.failures,
            "witnesses": self.witnesses[:10],
            "stats": self.stats,
        }


def _run(name: str, seed: int, count: int, case: Callable, stats: Dict = None) -> SuiteReport:
    rep = SuiteReport(name, seed, count, stats={} if stats is None else stats)
    for k in range(count):
        fails = case(case_rng(seed, k), k, rep.stats)
        if fails:
            rep.failures += 1
            for f in fails:
                rep.witnesses.append({"case": k, **f})
    return rep


def _bump(stats, key, n=1):
    stats[key] = stats.get(key, 0) + n


# -- nu-laws ---------------------------------------------------------------

def _nu_laws_case(rng, k, stats):
    space = Space(W2)
    nu, p = random_map(rng, space)
    if rng.random() < 0.3:
        extra, r = random_map(rng, space, integral=True)
        mu = ideal_mul(nu, extra)
        q = lambda x, p=p, r=r: p(x) + r(x)
    else:
        mu, q = random_map(rng, space)
    pts = test_points(nu, mu)
    fails = []
    prod, lo, hi = ideal_mul(nu, mu), ideal_sum(nu, mu), ideal_cap(nu, mu)
    for x in pts:
        a, b = p(x), q(x)
        if prod(x) != a + b:
            fails.append({"law": "mul", "point": str(x)})
        if lo(x) != min(a, b):
            fails.append({"law": "sum-is-min", "point": str(x)})
        if hi(x) != max(a, b):
            fails.append({"law": "cap-is-max", "point": str(x)})
        if (-nu)(x) != -a:
            fails.append({"law": "inv", "point": str(x)})
    pointwise = all(p(x) <= q(x) for x in pts)
    if ideal_leq(nu, mu) != pointwise:
        fails.append({"law": "order", "point": None})
    _bump(stats, "leq_true", int(pointwise))
    if not ideal_leq(lo, nu) or not ideal_leq(nu, hi):
        fails.append({"law": "lattice-bounds", "point": None})
    return fails[:3]


def suite_nu_laws(seed: int = 42, count: int = 500) -> SuiteReport:
    return _run("nu-laws", seed, count, _nu_laws_case)


# -- factor-roundtrip ----------------------------------------------------------

def _collapse(chain):
    out = []
    for x in chain:
        if not out or not set_equal(out[-1], x):
            out.append(x)
    return out


def _factor_case(rng, k, stats):
    space, carrier = random_space(rng)
    nu, p = random_continuous_map(rng, space, carrier, integral=True)
    fails = []
    try:
        factors = radical_factor(nu)
    except NotContinuous as e:
        return [{"check": "factor", "witness": repr(e.witness)}]
    if radical_recompose(factors, space) != nu:
        fails.append({"check": "recompose"})
    pts = test_points(nu, extra=factors)
    top = max(p(x) for x in pts)
    if len(factors) != top:
        fails.append({"check": "length", "expected": top, "got": len(factors)})
    for n, xn in enumerate(factors, start=1):
        # level-set oracle: X_n = {x : nu(x) >= n}
        for x in pts:
            if (x in xn) != (p(x) >= n):
                fails.append({"check": "level-oracle", "n": n, "point": str(x)})
                break
        if n < len(factors):
            attained = any(p(x) == n for x in pts)
            strict = not set_equal(factors[n], xn)
            if strict != attained:
                fails.append({"check": "strict-iff-attained", "n": n})
    distinct = _collapse(factors)
    if any(not (b <= a) or set_equal(a, b) for a, b in zip(distinct, distinct[1:])):
        fails.append({"check": "strictly-decreasing"})
    _bump(stats, "factors", len(factors))
    _bump(stats, "distinct_factors", len(distinct))
    return fails[:3]


def suite_factor_roundtrip(seed: int = 42, count: int = 500) -> SuiteReport:
    return _run("factor-roundtrip", seed, count, _factor_case)


# -- continuity -------------------------------------------------------------------

def _factors_ok(nu) -> bool:
    try:
        for part in pos_neg_split(nu):
            radical_factor(part)
    except NotContinuous:
        return False
    return True


def _continuity_case(rng, k, stats):
    space, carrier = random_space(rng)
    if rng.random() < 0.5:
        nu, p = random_map(rng, space, carrier)
    else:
        nu, p = random_continuous_map(rng, space, carrier)
    a = levels_clopen(nu)
    b = is_continuous(nu)
    c = _factors_ok(nu)
    fails = []
    if not (a == b == c):
        fails.append({"check": "agree", "levels_clopen": a, "locally_constant": b, "factorizes": c})
    # reference: look just below every test point
    disc = discontinuity_set(nu)
    for x in test_points(nu):
        if (x in disc) != jumps_at(p, p.in_carrier, x):
            fails.append({"check": "oracle", "point": str(x)})
            break
    _bump(stats, "continuous", int(b))
    return fails


def suite_continuity(seed: int = 42, count: int = 500) -> SuiteReport:
    return _run("continuity", seed, count, _continuity_case)


# -- chains ---------------------------------------------------------------------

def _invalid_chain(rng, space):
    """A corrupted sharp chain with the (condition, stage, witness) it must produce."""
    chain = list(model_sharp(space).chain)
    kinds = ["extra-isolated", "dup", "stage0"]
    if len(chain) >= 3:
        kinds.append("drop-limit")
    kind = kinds[int(rng.integers(0, len(kinds)))]
    if kind == "stage0":
        x = random_points_in(rng, chain[0], 1)[0]
        chain[0] = chain[0] - space.points([x])
        return chain, ("stage0-not-carrier", 0, x)
    i = int(rng.integers(1, len(chain)))
    if kind == "extra-isolated":
        x = random_points_in(rng, isolated_points(chain[i - 1]), 1)[0]
        chain[i] = chain[i] | space.points([x])
        return chain, ("not-in-derived", i, x)
    if kind == "dup":
        chain.insert(i, chain[i - 1])
        return chain, ("not-in-derived", i, isolated_points(chain[i - 1]).least())
    i = int(rng.integers(1, len(chain) - 1))
    x = random_points_in(rng, derived(chain[i]) & chain[i], 1)[0]
    chain[i] = chain[i] - space.points([x])
    return chain, ("not-closed", i, x)


def _chains_case(rng, k, stats):
    space = Space(random_top(rng, as_ordinal("w^3*2") if rng.random() < 0.8 else W))
    if cb_rank(space.carrier) < 2:
        space = Space(W)
    chain, (cond, stage, wit) = _invalid_chain(rng, space)
    try:
        model_custom(space, chain)
    except ValidationError as e:
        if (e.condition, e.stage, e.witness) != (cond, stage, wit):
            return [{"expected": [cond, stage, str(wit)], "got": e.record()}]
        _bump(stats, cond)
        return []
    return [{"expected": [cond, stage, str(wit)], "got": "accepted"}]


def suite_chains(seed: int = 42, count: int = 100) -> SuiteReport:
    rep = _run("chains", seed, count, _chains_case)
    ranks = []
    for kk in range(5):
        sp = Space(Ordinal([(kk, 1)]))
        r = (sp_rank(model_sharp(sp)), cb_rank(sp.carrier))
        ranks.append(list(r))
        if r != (kk + 1, kk + 1):
            rep.failures += 1
            rep.witnesses.append({"case": "rank", "k": kk, "sp_rank": r[0], "cb_rank": r[1]})
    rep.stats["sharp_ranks"] = ranks
    return rep


# -- stratified decomposition ------------------------------------------------------

def random_tuples(rng, m, per_stratum: int = 3):
    """Stratum-wise finite-support families, then mixed by a random unimodular matrix.

    Returns the mixed tuples and the per-stratum ranks of the unmixed families.
    """
    space = m.space
    zero = IdealMap.zero(space)
    base, ranks = [], []
    for i, s in enumerate(strata(m)):
        fam = []
        for _ in range(int(rng.integers(1, per_stratum + 1))):
            pts = random_points_in(rng, s, 3)
            nu = zero
            for x in pts:
                nu = nu + IdealMap.indicator(space.points([x]), int(rng.integers(-3, 4)))
            fam.append(nu)
        nz = [f for f in fam if not f.steps.is_zero()]
        ranks.append(subgroup_basis(nz).rank if nz else 0)
        for f in fam:
            comps = [zero] * len(m.chain)
            comps[i] = f
            base.append(StratTuple(tuple(comps)))
    U = random_unimodular(rng, len(base))
    mixed = []
    for row in U:
        t = StratTuple(tuple([zero] * len(m.chain)))
        for c, b in zip(row, base):
            if c:
                t = t + StratTuple(tuple(x.scale(int(c)) for x in b.components))
        mixed.append(t)
    return mixed, ranks


def _sp_scattered_case(rng, k, stats):
    m = model_sharp(Space(W2))
    tuples, ranks = random_tuples(rng, m)
    fails = []
    glued = [glue(m, t) for t in tuples]
    for t, g in zip(tuples, glued):
        if unglue(m, g) != t:
            fails.append({"check": "unglue-glue"})
            break
    a, b = tuples[0], tuples[-1]
    if glue(m, a + b) != glue(m, a) + glue(m, b):
        fails.append({"check": "additive"})
    nz = [g for g in glued if not g.steps.is_zero()]
    total = subgroup_basis(nz).rank if nz else 0
    if total != sum(ranks):
        fails.append({"check": "rank-sum", "glued": total, "strata": ranks})
    # span / kernel of restriction to C_i must be free at every stage
    for i in range(len(m.chain)):
        rep = exactness_report(m, nz, i) if nz else None
        if rep and not rep["quotient_free"]:
            fails.append({"check": "quotient-divisors", "stage": i, "divisors": rep["quotient_divisors"]})
    _bump(stats, "rank", total)
    return fails


def suite_sp_scattered(seed: int = 42, count: int = 20) -> SuiteReport:
    return _run("sp-scattered", seed, count, _sp_scattered_case)


# -- exactness -----------------------------------------------------------------------

def random_generators(rng, m, n: int = 4):
    space = m.space
    if rng.random() < 0.5:
        tuples, _ = random_tuples(rng, m, per_stratum=2)
        gens = [glue(m, t) for t in tuples]
    else:
        gens = [random_continuous_map(rng, space, max_pieces=3)[0] for _ in range(n)]
    return [g for g in gens if not g.steps.is_zero()] or [IdealMap.indicator(space.carrier)]


def _exactness_case(rng, k, stats):
    m = model_sharp(Space(W if k % 2 == 0 else W2))
    gens = random_generators(rng, m)
    fails = []
    for i in range(len(m.chain) + 1):
        rep = exactness_report(m, gens, i)
        if not rep["additive"]:
            fails.append({"check": "rank-additivity", **rep})
        if not rep["kernel_is_support_avoiding"]:
            fails.append({"check": "kernel-vs-support", **rep})
        if not rep["quotient_free"]:
            fails.append({"check": "quotient-free", **rep})
    return fails


def suite_exactness(seed: int = 42, count: int = 40) -> SuiteReport:
    return _run("exactness", seed, count, _exactness_case)


# -- sigma-r -------------------------------------------------------------------------

def _sigma_r_case(rng, k, stats):
    fails = []
    space, carrier = random_space(rng)
    gens = [random_continuous_map(rng, space, carrier, max_pieces=3)[0] for _ in range(3)]
    rep = sigma_r_report(model_sp(space), gens)
    if rep["quotient_rank"] != 0:
        fails.append({"check": "sp-quotient-zero", "rank": rep["quotient_rank"]})
    if not rep["quotient_free"]:
        fails.append({"check": "sp-torsion"})
    w = Space(W)
    gens = [random_continuous_map(rng, w, max_pieces=3)[0] for _ in range(3)]
    rep = sigma_r_report(model_sharp(w), gens)
    if rep["quotient_rank"] > 1 or rep.get("achievable_rank") != 1:
        fails.append({"check": "sharp-w-rank", "report": rep})
    if not rep["quotient_free"]:
        fails.append({"check": "sharp-w-torsion"})
    _bump(stats, "sharp_w_quotient_rank_1", int(rep["quotient_rank"] == 1))
    return fails


def suite_sigma_r(seed: int = 42, count: int = 30) -> SuiteReport:
    rep = _run("sigma-r", seed, count, _sigma_r_case)
    m = model_sharp(Space(W2))
    inf = sigma_r_report(m, [IdealMap.indicator(m.space.carrier)])
    rep.stats["infinite_critical_ranks"] = inf["extension_ranks"]
    if not inf["rank_grows"]:
        rep.failures += 1
        rep.witnesses.append({"case": "infinite", "ranks": inf["extension_ranks"]})
    return rep


# -- mi ----------------------------------------------------------------------------

def random_accepted(rng, m):
    """Rejection-sample a map on sharp [0,w] that passes mi_check."""
    space = m.space
    while True:
        a = int(rng.integers(0, 6))
        if rng.random() < 0.25:
            nu = IdealMap.zero(space)
        else:
            nu = IdealMap.indicator(space.cell(a, W), int(rng.integers(1, 4)))
            nu = nu + IdealMap.indicator(space.points([W]), int(rng.integers(-2, 3)))
        for _ in range(int(rng.integers(0, 4))):
            x = int(rng.integers(1, a + 5))
            nu = restrict_map(nu, space.carrier - space.points([x])) + IdealMap.indicator(
                space.points([x]), int(rng.integers(0, 4))
            )
        if min(nu.steps.values()) < 0:
            continue
        if mi_check(m, nu).accepted:
            return nu


def _mi_case(rng, k, stats):
    m = model_sharp(Space(W))
    nu, mu = random_accepted(rng, m), random_accepted(rng, m)
    v = mi_check(m, ideal_mul(nu, mu))
    if not v.accepted:
        return [{"check": "closed-under-mul", "nu": repr(nu), "mu": repr(mu), "verdict": v.record()}]
    return []


def mi_examples() -> Dict[str, bool]:
    w = Space(W)
    sharp, sp = model_sharp(w), model_sp(w)
    tail = IdealMap.indicator(w.cell(0, W))
    top = IdealMap.indicator(w.points([W]))
    out = {
        "accepts tail+point": mi_check(sharp, tail + top).accepted,
        "rejects point (b)": mi_check(sharp, top).condition == "b",
        "rejects tail (d)": mi_check(sharp, tail).condition == "d",
        "rejects on sp model (c)": mi_check(sp, tail + top).condition == "c",
    }
    return out


def suite_mi(seed: int = 42, count: int = 200) -> SuiteReport:
    rep = _run("mi", seed, count, _mi_case)
    ex = mi_examples()
    rep.stats["examples"] = ex
    for k, ok in ex.items():
        if not ok:
            rep.failures += 1
            rep.witnesses.append({"case": "example", "name": k})
    return rep


# -- length identities ----------------------------------------------------------------

def _length_case(rng, k, stats):
    space = Space(random_top(rng, as_ordinal("w^2*3")))
    m = model_sharp(space)
    cm = ColengthModel(space, random_set(rng, space))
    nu, _ = random_map(rng, space, integral=True, max_pieces=6)
    mu, _ = random_map(rng, space, integral=True, max_pieces=6)
    i = int(rng.integers(0, len(m.chain) + 1))
    n = int(rng.integers(1, 4))
    # nu <= rho <= n*nu: add at most (n-1)*nu on top of nu
    cap = steps.combine(lambda a, b: min(b, (n - 1) * a), nu.steps, mu.steps)
    rho = nu + IdealMap(space, cap)
    on_stage = restrict_map(nu, m.stage(i))
    fails = []
    checks = {
        "sum": check_sum(cm, nu, mu),
        "potpan": check_potpan(cm, nu, rho, n),
        "viomega": check_viomega(cm, m, i, on_stage),
        "length": check_length_theorem(cm, m, i, nu),
        "radical": colength(cm, nu) == colength(cm, radical(nu)),
    }
    for name, ok in checks.items():
        if not ok:
            fails.append({"check": name, "stage": i})
    return fails


def suite_length_identities(seed: int = 42, count: int = 200) -> SuiteReport:
    return _run("length-identities", seed, count, _length_case)


# -- order mismatch -------------------------------------------------------------------

def suite_order_mismatch(seed: int = 42, count: int = 50) -> SuiteReport:
    m = model_sharp(Space(W))
    demo = order_mismatch_demo(m, count=count, seed=seed)
    rep = SuiteReport("order-mismatch", seed, count)
    rep.stats = {
        "incomparable": demo["incomparable"],
        "glue_t1_dominates_glue_t2": demo["glue_t1_dominates_glue_t2"],
        "all_dominate": demo["all_dominate"],
    }
    for k, c in enumerate(demo["cases"]):
        if not c["dominates"] or not c["verdict"]["accepted"]:
            rep.failures += 1
            rep.witnesses.append({"case": k, **c})
    if not demo["incomparable"] or demo["glue_t1_dominates_glue_t2"]:
        rep.failures += 1
        rep.witnesses.append({"case": "tuples", "demo": {k: v for k, v in demo.items() if k != "cases"}})
    return rep


SUITES = {
    "nu-laws": suite_nu_laws,
    "factor-roundtrip": suite_factor_roundtrip,
    "continuity": suite_continuity,
    "chains": suite_chains,
    "sp-scattered": suite_sp_scattered,
    "exactness": suite_exactness,
    "sigma-r": suite_sigma_r,
    "mi": suite_mi,
    "length-identities": suite_length_identities,
    "order-mismatch": suite_order_mismatch,
}


def run_suite(name: str, seed: int = 42, count: int = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    f = SUITES[name]
    return f(seed) if count is None else f(seed, count)
