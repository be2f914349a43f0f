"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 a property
witness (a discontinuity, a failed suite case).
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import textio
from .colength import PreconditionError, colength, colength_stage
from .groups import (
    UnglueError,
    atom_decompose,
    exactness_report,
    order_mismatch_demo,
    sigma_r_report,
    subgroup_basis,
    subgroup_member,
)
from .ideals import NotContinuous, NotIntegral, PointOutsideCarrier, radical_factor
from .model import (
    NotScattered,
    ValidationError,
    is_sp_domain,
    is_sp_scattered,
    model_sharp,
    model_sp,
    sp_rank,
    strata,
)
from .sets import AmbientMismatch, SubsetError
from .suites import SUITES, run_suite
from .textio import ParseError, dumps, set_record

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_WITNESS = 0, 2, 3, 4


class Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, record: dict, text: str):
        if self.fmt == "machine":
            print(dumps(record), file=self.stream)
        else:
            print(text, file=self.stream)


def _fmt_set(s) -> str:
    return repr(s)


def _space_of(rec, field="space"):
    if isinstance(rec, dict) and "top" in rec:
        return textio.parse_space(rec, field)
    return textio.parse_space(textio._get(rec, "space", ""), "space")


# -- commands ----------------------------------------------------------------------

def cmd_factor(args, out: Out) -> int:
    nu = textio.parse_ideal(textio.load(args.file))
    try:
        factors = radical_factor(nu)
    except NotContinuous as e:
        out.emit(
            {"command": "factor", "continuous": False, "witness": set_record(e.witness)},
            f"not continuous; discontinuities at {_fmt_set(e.witness)}",
        )
        return EXIT_WITNESS
    lines = [f"{len(factors)} radical factor(s)"]
    lines += [f"X_{n} = {_fmt_set(x)}" for n, x in enumerate(factors, start=1)]
    out.emit(
        {"command": "factor", "continuous": True, "factors": [set_record(x) for x in factors]},
        "\n".join(lines),
    )
    return EXIT_OK


def _load_model(args):
    rec = textio.load(args.file)
    if getattr(args, "chain", None):
        space = _space_of(rec)
        chain_rec = textio.load(args.chain)
        return textio.parse_model(chain_rec, "chain", space=space)
    if getattr(args, "sharp", False):
        return model_sharp(_space_of(rec))
    if getattr(args, "sp", False):
        return model_sp(_space_of(rec))
    if isinstance(rec, dict) and "top" in rec:
        return model_sharp(textio.parse_space(rec))
    return textio.parse_model(rec)


def _model_summary(m) -> dict:
    return {
        "chain": [set_record(c) for c in m.chain],
        "strata": [set_record(s) for s in strata(m)],
        "sp_rank": sp_rank(m),
        "sp_scattered": is_sp_scattered(m),
        "sp_domain": is_sp_domain(m),
        "terminal": m.terminal,
    }


def cmd_model(args, out: Out) -> int:
    m = _load_model(args)
    rec = {"command": "model", **_model_summary(m)}
    lines = [f"C_{i} = {_fmt_set(c)}" for i, c in enumerate(m.chain)]
    lines.append(f"C_{len(m.chain)} = {'{}' if m.terminal == 'empty' else 'C_' + str(len(m.chain) - 1)}")
    lines += [f"S_{i} = {_fmt_set(s)}" for i, s in enumerate(strata(m))]
    lines.append(f"sp_rank = {rec['sp_rank']}, sp_scattered = {rec['sp_scattered']}, sp_domain = {rec['sp_domain']}")
    out.emit(rec, "\n".join(lines))
    return EXIT_OK


def cmd_rank(args, out: Out) -> int:
    m = _load_model(args)
    r, sc = sp_rank(m), is_sp_scattered(m)
    out.emit({"command": "rank", "sp_rank": r, "sp_scattered": sc}, f"sp_rank = {r} ({'scattered' if sc else 'stalled'})")
    return EXIT_OK


def _gens_and_model(rec):
    model = None
    if isinstance(rec, dict) and "model" in rec:
        model = textio.parse_model(rec["model"], "model")
        _, gens = textio.parse_gens(rec, space=model.space)
        return model.space, gens, model
    space, gens = textio.parse_gens(rec)
    return space, gens, model


def cmd_decompose(args, out: Out) -> int:
    rec = textio.load(args.file)
    space, gens, model = _gens_and_model(rec)
    if not gens:
        raise ParseError("need at least one generator", "gens")
    dec = atom_decompose(gens)
    basis = subgroup_basis(gens)
    result = {
        "command": "decompose",
        "atoms": [set_record(a) for a in dec.atoms],
        "table": dec.table,
        **basis.record(),
    }
    lines = [f"atom {k}: {_fmt_set(a)}" for k, a in enumerate(dec.atoms)]
    lines += [f"gen {g}: {row}" for g, row in enumerate(dec.table)]
    lines.append(f"rank {basis.rank}, divisors {basis.divisors}")
    if model is not None and args.stage is not None:
        rep = exactness_report(model, gens, args.stage)
        result["exactness"] = rep
        lines.append(
            f"stage {args.stage}: kernel {rep['kernel_rank']} + image {rep['image_rank']} = total {rep['total_rank']}"
            f" ({'ok' if rep['additive'] else 'FAIL'}), quotient divisors {rep['quotient_divisors']}"
        )
        out.emit(result, "\n".join(lines))
        return EXIT_OK if rep["additive"] and rep["quotient_free"] else EXIT_WITNESS
    out.emit(result, "\n".join(lines))
    return EXIT_OK


def cmd_member(args, out: Out) -> int:
    rec = textio.load(args.file)
    space, gens, _ = _gens_and_model(rec)
    h = textio.parse_ideal_body(textio._get(rec, "h", ""), space, "h")
    res = subgroup_member(gens, h)
    out.emit(
        {"command": "member", "member": res.member, "certificate": res.certificate},
        f"member: {res.member}" + (f", certificate {res.certificate}" if res.member else ""),
    )
    return EXIT_OK


def cmd_sigma_r(args, out: Out) -> int:
    rec = textio.load(args.file)
    space, gens, model = _gens_and_model(rec)
    if model is None:
        model = model_sharp(space)
    try:
        rep = sigma_r_report(model, gens)
    except NotContinuous as e:
        out.emit({"command": "sigma-r", "error": "not continuous", "witness": set_record(e.witness)}, str(e))
        return EXIT_VALIDATION
    text = [f"quotient rank {rep['quotient_rank']} (avoiding {rep['avoiding_rank']} of {rep['total_rank']})"]
    text.append(f"quotient divisors {rep['quotient_divisors']}")
    if rep["critical_finite"]:
        text.append(f"|C_1| = {rep['critical_size']}, achievable rank {rep['achievable_rank']}")
    else:
        text.append(f"C_1 infinite; ranks on growing probes {rep['extension_ranks']}")
    out.emit({"command": "sigma-r", **rep}, "\n".join(text))
    return EXIT_OK if rep["quotient_free"] else EXIT_WITNESS


def cmd_colength(args, out: Out) -> int:
    rec = textio.load(args.file)
    cm = textio.parse_colength(rec)
    nu = textio.parse_ideal_body(textio._get(rec, "nu", ""), cm.space, "nu")
    if args.stage is None:
        tau = colength(cm, nu)
    else:
        mrec = rec.get("model", {"kind": "sharp"})
        m = textio.parse_model(mrec, "model", space=cm.space)
        tau = colength_stage(cm, m, args.stage, nu)
    out.emit({"command": "colength", "stage": args.stage, "tau": str(tau)}, f"tau = {tau}")
    return EXIT_OK


def cmd_suite(args, out: Out) -> int:
    rep = run_suite(args.name, args.seed, args.count)
    text = f"suite {rep.name}: {rep.count} cases, {rep.failures} failures"
    if rep.witnesses:
        text += "\nfirst witness: " + dumps(rep.witnesses[0])
    out.emit(rep.record(), text)
    return EXIT_OK if rep.ok else EXIT_WITNESS


def cmd_demo(args, out: Out) -> int:
    from .sets import Space

    m = model_sharp(Space("w"))
    demo = order_mismatch_demo(m, count=args.count or 50, seed=args.seed)
    ok = demo["incomparable"] and not demo["glue_t1_dominates_glue_t2"] and demo["all_dominate"]
    text = [
        f"t1 = {demo['t1']}, t2 = {demo['t2']}: incomparable = {demo['incomparable']}",
        f"glue(t1) >= glue(t2): {demo['glue_t1_dominates_glue_t2']}",
        f"{demo['samples']} accepted maps with value 1 at w, all dominate some chi{{y}}: {demo['all_dominate']}",
    ]
    out.emit({"command": "demo-order-mismatch", **demo}, "\n".join(text))
    return EXIT_OK if ok else EXIT_WITNESS


# -- parser ---------------------------------------------------------------------

def _count(v: str) -> int:
    n = int(v)
    if n < 1:
        raise argparse.ArgumentTypeError("count must be >= 1")
    return n


def _seed(v: str) -> int:
    n = int(v)
    if not 0 <= n < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit natural")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--seed", type=_seed, default=42)
    common.add_argument("--count", type=_count, default=None)
    common.add_argument("--stage", type=int, default=None)

    p = argparse.ArgumentParser(prog="almostded", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("factor", parents=[common], help="radical factorization of an ideal map")
    s.add_argument("file")
    s.set_defaults(func=cmd_factor)

    for name, func in (("model", cmd_model), ("rank", cmd_rank)):
        s = sub.add_parser(name, parents=[common], help=f"{name} report for a space or model")
        s.add_argument("file")
        g = s.add_mutually_exclusive_group()
        g.add_argument("--sharp", action="store_true")
        g.add_argument("--sp", action="store_true")
        g.add_argument("--chain")
        s.set_defaults(func=func)

    for name, func, hlp in (
        ("decompose", cmd_decompose, "atoms, basis and divisors of a generator family"),
        ("member", cmd_member, "subgroup membership with certificate"),
        ("sigma-r", cmd_sigma_r, "quotient by maps supported away from C_1"),
        ("colength", cmd_colength, "colength of an ideal map"),
    ):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("file")
        s.set_defaults(func=func)

    s = sub.add_parser("suite", parents=[common], help="run a property suite")
    s.add_argument("name", choices=sorted(SUITES))
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("demo-order-mismatch", parents=[common], help="order-mismatch exhibit on [0,w]")
    s.set_defaults(func=cmd_demo)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Out(args.format)
    try:
        return args.func(args, out)
    except (ParseError, OSError) as e:
        rec = e.record() if isinstance(e, ParseError) else {"error": "parse", "message": str(e)}
        out.emit(rec, f"parse error: {e}")
        return EXIT_PARSE
    except ValidationError as e:
        out.emit({"error": "validation", **e.record()}, f"invalid model: {e}")
        return EXIT_VALIDATION
    except (
        NotIntegral,
        NotScattered,
        UnglueError,
        PreconditionError,
        PointOutsideCarrier,
        SubsetError,
        AmbientMismatch,
        IndexError,
    ) as e:
        out.emit({"error": "validation", "condition": type(e).__name__, "message": str(e)}, f"error: {e}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
