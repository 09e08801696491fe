"""Command line entry point ``lambdag``.

Exit codes: 0 when everything requested passed, 1 on a failed check or
cross-check, 2 on usage errors (bad flags, unknown types, budgets).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from . import budget
from .budget import BudgetExceeded, Budgets
from .gradedmult import (
    decompose,
    exterior_character,
    gm_formula_theta,
    gm_formula_theta_s,
    gm_formula_zero,
    gm_via_macdonald,
    special_weight,
)
from .groupalg import parse_element
from .hecke import build_Y_theta_dual, check_proposition
from .macdonald import macdonald_poly
from .rootsys import UnknownRootSystem, build_root_system, heights
from .scalar import cherednik_ratio, verify_convexity_theorem, verify_theorem2, verify_unitarity
from .verify import CHECKS, VerifyOptions, render_matrix, verify_types
from .weyl import symmetric_decomposition_of_s_theta

SUITE = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    types: list[str] = field(default_factory=list)
    k: int | None = None
    method: str | None = None
    fmt: str = "text"
    budgets: Budgets = field(default_factory=budget.current)
    seed: int = 0
    sample_bound: int = 2
    jobs: int = 1

    def __post_init__(self):
        if self.fmt not in ("text", "json", "latex"):
            raise UsageError(f"unknown output format {self.fmt!r}")
        if self.sample_bound <= 0 or self.jobs <= 0:
            raise UsageError("sample bound and job count must be positive")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        fmt = "json" if getattr(args, "json", False) else "latex" if getattr(args, "latex", False) else args.format
        types = []
        if getattr(args, "type", None):
            types = [args.type]
        elif getattr(args, "types", None):
            types = [t for t in args.types.split(",") if t]
        try:
            budgets = Budgets(
                max_weyl=args.max_weyl or budget.current().max_weyl,
                max_k=args.max_k or budget.current().max_k,
                max_roots=budget.current().max_roots,
                max_kernel_factors=budget.current().max_kernel_factors,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return cls(
            types=types,
            k=getattr(args, "k", None),
            method=getattr(args, "method", None),
            fmt=fmt,
            budgets=budgets,
            seed=args.seed,
            sample_bound=args.sample_bound,
            jobs=getattr(args, "jobs", 1),
        )


def _root_system(label):
    try:
        return build_root_system(label)
    except UnknownRootSystem as exc:
        raise UsageError(str(exc)) from None


def _coords(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.strip().strip("[]()").split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad coordinates {text!r}") from None


def _emit(obj, cfg: RunConfig, text: str, out):
    if cfg.fmt == "json":
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_roots(args, cfg, out) -> int:
    rs = _root_system(args.type)
    ex = rs.exponent_data
    obj = {
        "type": rs.label,
        "roots": [list(b) for b in rs.roots],
        "theta": list(rs.theta),
        "theta_s": list(rs.theta_s) if rs.theta_s is not None else None,
        "exponents": list(ex.exponents),
        "short_exponents": list(ex.short_exponents),
    }
    lines = [
        f"type {rs.label}, rank {rs.rank}, |R| = {len(rs.roots)}, |W| = {rs.weyl_order}",
        f"Lambda = {rs.lambda_ratio if rs.lambda_ratio else 'none (simply laced)'}",
        f"theta = {rs.theta}, theta_s = {rs.theta_s}",
        f"exponents = {ex.exponents}, short exponents = {ex.short_exponents}",
        "positive roots (ht, ht_l, ht_s):",
    ]
    lines += [f"  {b}  {heights(rs, b)}  {'long' if rs.is_long(b) else 'short'}" for b in rs.positive_roots]
    _emit(obj, cfg, "\n".join(lines), out)
    return 0


def cmd_weyl(args, cfg, out) -> int:
    rs = _root_system(args.type)
    ch = symmetric_decomposition_of_s_theta(rs)
    rows = []
    for i in ch.indices():
        a = ch.alpha(i)
        rows.append({"i": i, "j": ch.j(i), "root": list(a), "heights": list(heights(rs, a)),
                     "long": rs.is_long(a)})
    obj = {"type": rs.label, "word": list(ch.word), "p": ch.p, "chain": rows}
    lines = [f"s_theta = " + " ".join(f"s{j}" for j in ch.word) + f"   (p = {ch.p})"]
    for r in rows:
        lines.append(f"  alpha^({r['i']:>3}) = {tuple(r['root'])}  j = {r['j']}  "
                     f"ht = {tuple(r['heights'])}  {'long' if r['long'] else 'short'}")
    _emit(obj, cfg, "\n".join(lines), out)
    return 0


def cmd_hecke(args, cfg, out) -> int:
    rs = _root_system(args.type)
    if args.check:
        fails = check_proposition(rs)
        _emit({"type": rs.label, "check": "proposition", "pass": not fails, "failures": fails},
              cfg, "\n".join(fails) if fails else f"{rs.label}: proposition pass", out)
        return 1 if fails else 0
    if args.apply != "Y_theta_dual" or args.to is None:
        raise UsageError("use --apply Y_theta_dual --to 'e[...]' or --check proposition")
    try:
        f = parse_element(args.to, rs.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = build_Y_theta_dual(rs)(f)
    _emit(g.to_json(), cfg, str(g), out)
    return 0


def cmd_scalar(args, cfg, out) -> int:
    rs = _root_system(args.type)
    k = args.k
    if args.verify:
        if args.verify == "theorem2":
            fails = verify_theorem2(rs, k)
        elif args.verify == "unitarity":
            fails = verify_unitarity(rs, k, random.Random(f"{cfg.seed}:{rs.label}:unitarity{k}"),
                                     bound=cfg.sample_bound)
        else:
            fails = verify_convexity_theorem(rs, k)
        _emit({"type": rs.label, "k": k, "check": args.verify, "pass": not fails, "failures": fails},
              cfg, "\n".join(fails) if fails else f"{rs.label} k={k}: {args.verify} pass", out)
        return 1 if fails else 0
    if args.ratio is None:
        raise UsageError("give --ratio 'e[...]' or --verify")
    try:
        f = parse_element(args.ratio, rs.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    val = cherednik_ratio(rs, f, k)
    _emit({"type": rs.label, "k": k, "element": str(f), "ratio": str(val)}, cfg, str(val), out)
    return 0


def cmd_macdonald(args, cfg, out) -> int:
    rs = _root_system(args.type)
    lam = _coords(args.lam)
    if len(lam) != rs.rank or not rs.is_dominant(lam):
        raise UsageError(f"--lambda must be a dominant weight with {rs.rank} coordinates")
    P = macdonald_poly(rs, lam, args.k)
    orbit = " + ".join([f"m{list(lam)}"] + [f"({c})*m{list(mu)}" for mu, c in sorted(P.coefficients.items(), reverse=True)])
    _emit(P.to_json(), cfg, f"P = {orbit}\n  = {P.expansion}", out)
    return 0


_FORMULAS = {"zero": gm_formula_zero, "theta": gm_formula_theta, "theta-s": gm_formula_theta_s}


def cmd_gm(args, cfg, out) -> int:
    rs = _root_system(args.type)
    method = args.method
    which = [args.lam] if args.lam != "all" else ["zero", "theta"] + ([] if rs.simply_laced else ["theta-s"])
    if rs.simply_laced and "theta-s" in which:
        raise UsageError(f"{rs.label} is simply laced; theta-s is not defined")
    dec = None
    if method in ("oracle", "cross-check"):
        dec = decompose(exterior_character(rs))
    results, ok = [], True
    for w in which:
        lam = special_weight(rs, w)
        values = {}
        if method in ("oracle", "cross-check"):
            values["oracle"] = dec.get(lam)
        if method in ("macdonald", "cross-check"):
            values["macdonald"] = gm_via_macdonald(rs, w)
        if method in ("formula", "cross-check"):
            values["formula"] = _FORMULAS[w](rs)
        polys = list(values.values())
        agree = all(p == polys[0] for p in polys)
        ok &= agree
        main = polys[0]
        results.append((w, lam, main, agree, values))
    if cfg.fmt == "json":
        objs = []
        for w, lam, main, agree, values in results:
            o = main.to_json() if main is not None else {"lambda": list(lam), "poly": {}}
            o["methods_agree"] = agree
            objs.append(o)
        _emit(objs[0] if len(objs) == 1 else objs, cfg, "", out)
    else:
        lines = []
        for w, lam, main, agree, values in results:
            body = main.latex() if cfg.fmt == "latex" else str(main)
            if cfg.fmt == "latex":
                name = {"zero": "0", "theta": r"\theta", "theta-s": r"\theta_s"}[w]
                lines.append(f"\\mathrm{{GM}}_{{{name}}}(q) = {body}")
            else:
                name = {"zero": "GM_0", "theta": "GM_theta", "theta-s": "GM_theta_s"}[w]
                lines.append(f"{name}(q) = {body}")
            if len(values) > 1:
                lines.append(f"  methods {', '.join(values)}: {'agree' if agree else 'DISAGREE'}")
        _emit(None, cfg, "\n".join(lines), out)
    return 0 if ok else 1


def cmd_verify(args, cfg, out) -> int:
    names = [n for n, _ in CHECKS]
    only = None
    if args.check:
        bad = [c for c in args.check if c not in names]
        if bad:
            raise UsageError(f"unknown check(s) {bad}; choose from {names}")
        only = args.check
    elif not args.all:
        raise UsageError("use --all or --check NAME")
    types = cfg.types or SUITE
    for t in types:
        _root_system(t)
    opts = VerifyOptions(seed=cfg.seed, sample_bound=cfg.sample_bound)
    results = verify_types(types, opts, only, cfg.budgets, cfg.jobs)
    failed = any(r.status == "fail" for r in results)
    _emit({"results": [r.to_json() for r in results], "pass": not failed}, cfg, render_matrix(results), out)
    return 1 if failed else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "latex"], default="text")
    common.add_argument("--json", action="store_true", help="shorthand for --format json")
    common.add_argument("--latex", action="store_true", help="shorthand for --format latex")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--max-weyl", type=int, default=None, help="largest |W| to enumerate")
    common.add_argument("--max-k", type=int, default=None, help="largest kernel exponent k")
    common.add_argument("--sample-bound", type=int, default=2, help="|ht mu| bound for sampled weights")

    p = argparse.ArgumentParser(prog="lambdag", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("roots", parents=[common], help="root system data")
    s.add_argument("--type", required=True)
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("weyl", parents=[common], help="symmetric reduced word of s_theta")
    s.add_argument("--type", required=True)
    s.add_argument("--s-theta", action="store_true", default=True)
    s.set_defaults(func=cmd_weyl)

    s = sub.add_parser("hecke", parents=[common], help="Y^{theta^vee} and the proposition checks")
    s.add_argument("--type", required=True)
    s.add_argument("--apply", default="Y_theta_dual")
    s.add_argument("--to")
    s.add_argument("--check", choices=["proposition"])
    s.set_defaults(func=cmd_hecke)

    s = sub.add_parser("scalar", parents=[common], help="Cherednik ratios at t = q^(-k/2)")
    s.add_argument("--type", required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--ratio")
    s.add_argument("--verify", choices=["theorem2", "unitarity", "convexity"])
    s.set_defaults(func=cmd_scalar)

    s = sub.add_parser("macdonald", parents=[common], help="Macdonald polynomial P_lambda")
    s.add_argument("--type", required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=cmd_macdonald)

    s = sub.add_parser("gm", parents=[common], help="graded multiplicities")
    s.add_argument("--type", required=True)
    s.add_argument("--lambda", dest="lam", choices=["zero", "theta", "theta-s", "all"], default="all")
    s.add_argument("--method", choices=["oracle", "macdonald", "formula", "cross-check"], default="formula")
    s.set_defaults(func=cmd_gm)

    s = sub.add_parser("verify", parents=[common], help="run the verification matrix")
    s.add_argument("--all", action="store_true")
    s.add_argument("--check", action="append", help="run only this check (repeatable)")
    s.add_argument("--types", default=",".join(SUITE))
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_args(args)
        with budget.override(**vars(cfg.budgets)):
            return args.func(args, cfg, out)
    except UsageError as exc:
        print(f"lambdag: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"lambdag: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"lambdag: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
