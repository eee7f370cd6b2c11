"""Command line front end: `adeg <subcommand> ...`.

Exit codes: 0 success, 1 computation error or failed verification,
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import closed_forms as cf
from . import invariants as inv
from .colength import DEFAULT_MAX_N
from .corpus import COLUMNS, TABLE1, corpus
from .errors import AdegError, UsageError
from .field import DEFAULT_PRIME, PrimeField
from .parser import format_germ, parse_germ

_KEY_ORDER = ("command", "germ", "order", "kind", "prime", "trials", "seed",
              "value", "agreement", "truncation", "stable", "bounds",
              "closed_form", "elapsed_ms")


@dataclass(frozen=True)
class RunConfig:
    prime: int = DEFAULT_PRIME
    trials: int = 5
    units: int = 2
    seed: int = 0
    start_N: Optional[int] = None
    max_N: int = DEFAULT_MAX_N
    output: str = "text"

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.prime)


def _num(v):
    """JSON-friendly exact number."""
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--units", type=int, default=2)
    common.add_argument("--seed", type=int, default=0,
                        help="0 draws a fresh seed and reports it")
    common.add_argument("--start-n", type=int, default=None)
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    common.add_argument("--json", action="store_true")
    common.add_argument("--timing", action="store_true",
                        help="add elapsed_ms to JSON (breaks byte-determinism)")

    top = _Parser(prog="adeg", description="Automatic degeneracies of plane curve germs")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(name, germ=False, order=False, kind=False, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        if germ:
            p.add_argument("--germ", required=True)
        if order:
            p.add_argument("--order", type=int, required=True)
        if kind:
            p.add_argument("--type", dest="kind", required=True,
                           choices=["w1", "w2a", "w2b"], type=str.lower)
        return p

    cmd("ad", True, True, True, help="automatic degeneracy")
    cmd("sd", True, True, True, help="degeneracy of the germ as given")
    cmd("milnor", True, help="Milnor number")
    cmd("delta", True, help="delta invariant (x*y and y^t - x^s only)")
    cmd("hilbert-samuel", True, help="Hilbert-Samuel multiplicity of the Jacobian ideal")
    cmd("limit", True, True, True, help="inflection points limiting to the singularity")
    p = cmd("node", False, True, False, help="node computations at any order")
    p.add_argument("--type", dest="kind", default="w2a",
                   choices=["w1", "w2a", "w2b"], type=str.lower)
    p.add_argument("--flecnode", action="store_true")
    p.add_argument("--zero-spec", action="store_true")
    p = cmd("bounds", True, True, True, help="check the lower/upper bounds")
    p.add_argument("--value", type=int, default=None,
                   help="value to test; computed with `ad` when omitted")
    p = cmd("count", help="enumerative counts for plane curves")
    p.add_argument("what", choices=["hyperflex", "septactic", "pencil"])
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--order", type=int, default=4)
    p = cmd("weierstrass", help="lambda and delta_0 terms of Weierstrass divisors")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--type", dest="kind", required=True, choices=["w2a", "w2b"],
                   type=str.lower)
    p = cmd("chern", help="Chern class coefficients of the jet bundle")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--degree", type=int, default=None,
                   help="also pair with a pencil of plane curves of this degree")
    p = cmd("verify", help="batch checks against the tabulated values")
    p.add_argument("what", choices=["table1", "formulas"])
    return top


def _resolve_seed(args) -> int:
    env = os.environ.get("ADEG_SEED")
    seed = args.seed
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"ADEG_SEED={env!r} is not an integer") from None
    if seed == 0:
        seed = secrets.randbits(31) or 1
    return seed


def _config(args) -> RunConfig:
    if args.trials < 1 or args.units < 1:
        raise UsageError("trials and units must be positive")
    return RunConfig(args.prime, args.trials, args.units, _resolve_seed(args),
                     args.start_n, args.max_n, "json" if args.json else "text")


def _degeneracy_fields(res: inv.DegeneracyResult) -> dict:
    return {"value": res.value, "agreement": res.agreement,
            "truncation": res.truncation, "stable": res.stable}


def _bounds_fields(f, m, kind, cfg) -> dict:
    try:
        mu = inv.milnor_number(f, cfg.field)
        delta = inv.delta_invariant(f) if kind == "w1" else None
        lo, hi = cf.ad_bounds(mu, delta, m, kind)
    except AdegError:
        return {}
    return {"bounds": {"lower": _num(lo), "upper": _num(hi)}}


def _run(args, cfg: RunConfig) -> dict:
    field = cfg.field
    c = args.command
    rep: dict = {"command": c if c not in ("count", "verify") else f"{c} {args.what}"}
    common = dict(trials=cfg.trials, field=field, seed=cfg.seed)
    caps = dict(start_N=cfg.start_N, max_N=cfg.max_N)

    if c in ("ad", "sd", "limit", "bounds", "milnor", "delta", "hilbert-samuel"):
        f = parse_germ(args.germ)
        rep["germ"] = format_germ(f)
    if c in ("ad", "sd", "limit", "bounds"):
        rep.update(order=args.order, kind=args.kind)
    rep.update(prime=field.p)

    if c in ("ad", "sd"):
        rep.update(trials=cfg.trials, seed=cfg.seed)
        if c == "ad":
            res = inv.ad_value(f, args.order, args.kind, units=cfg.units, **common, **caps)
        else:
            res = inv.sd_value(f, args.order, args.kind, **common, **caps)
        rep.update(_degeneracy_fields(res))
        rep.update(_bounds_fields(f, args.order, args.kind, cfg))
        rep["closed_form"] = cf.known_value(f, args.order, args.kind)
    elif c == "milnor":
        rep["value"] = inv.milnor_number(f, field, max_N=cfg.max_N)
    elif c == "delta":
        rep["value"] = inv.delta_invariant(f)
    elif c == "hilbert-samuel":
        rep.update(trials=cfg.trials, seed=cfg.seed)
        rep["value"] = inv.hilbert_samuel(f, field, cfg.seed, cfg.trials, cfg.units)
    elif c == "limit":
        rep.update(trials=cfg.trials, seed=cfg.seed)
        rep["value"] = inv.limiting_count(f, args.order, args.kind, cfg.trials,
                                          cfg.units, field, cfg.seed)
    elif c == "node":
        rep.update(order=args.order, kind=args.kind, trials=cfg.trials, seed=cfg.seed)
        node = inv.NODE_GERM
        rep["germ"] = format_germ(node)
        if args.flecnode and args.zero_spec:
            raise UsageError("--flecnode and --zero-spec are exclusive")
        if args.flecnode:
            if args.kind != "w2a":
                raise UsageError("the flecnode count is a w2a computation")
            res = inv.flecnode_colength(args.order, **common, **caps)
            closed = cf.binom(args.order + 1, 4) + 1
        elif args.zero_spec:
            res = inv.zero_specialized_length(node, args.order, args.kind, **common, **caps)
            closed = cf.node_length_zero(args.order, args.kind)
        else:
            res = inv.node_ad(args.order, args.kind, **common, **caps)
            closed = cf.known_value(node, args.order, args.kind)
        rep.update(_degeneracy_fields(res))
        rep["closed_form"] = closed
    elif c == "bounds":
        value = args.value
        if value is None:
            rep.update(trials=cfg.trials, seed=cfg.seed)
            value = inv.ad_value(f, args.order, args.kind, units=cfg.units,
                                 **common, **caps).value
        chk = inv.bounds_report(f, args.order, args.kind, value, field, strict=False)
        rep["value"] = value
        rep["bounds"] = {"lower": _num(chk.lower), "upper": _num(chk.upper)}
        rep["stable"] = chk.ok
        rep["_ok"] = chk.ok
    elif c == "count":
        d = args.degree
        if args.what == "hyperflex":
            rep["value"] = cf.hyperflex_count(d)
            rep["closed_form"] = 6 * (d - 3) * (3 * d - 2)
        elif args.what == "septactic":
            rep["value"] = cf.septactic_count(d)
            rep["closed_form"] = 9 * (d - 3) * (31 * d - 23)
        else:
            rep["order"] = args.order
            rep["value"] = cf.pencil_count(d, args.order)
    elif c == "weierstrass":
        cls = cf.weierstrass_divisor(args.genus, args.degree, args.kind)
        rep["kind"] = args.kind
        rep["value"] = {"genus": args.genus, "degree": args.degree,
                        "lambda": _num(cls.lambda_coeff),
                        "delta0": _num(cls.delta0_coeff)}
    elif c == "chern":
        ch = cf.chern_invincible(args.order)
        rep["order"] = args.order
        val = {"c1": [ch.c1_L, ch.c1_W], "c2": [ch.c2_L2, ch.c2_W2, ch.c2_LW]}
        if args.degree is not None:
            val["pencil_degree"] = args.degree
            val["inflection_count"] = cf.weight2_inflection_class(
                args.order, cf.pencil_degrees(args.degree))
        rep["value"] = val
    elif c == "verify":
        rep.update(trials=cfg.trials, seed=cfg.seed)
        summary = verify_table1(cfg) if args.what == "table1" else verify_formulas(cfg)
        rep["value"] = summary
        rep["_ok"] = summary["failed"] == 0
    return rep


# -- batch verification -------------------------------------------------------

def _check(results: list, name: str, got, want):
    ok = got == want
    results.append({"check": name, "got": _num(got), "expected": _num(want), "ok": ok})


def _summary(results: list) -> dict:
    failed = [r for r in results if not r["ok"]]
    return {"checks": len(results), "passed": len(results) - len(failed),
            "failed": len(failed), "mismatches": failed}


def verify_table1(cfg: RunConfig) -> dict:
    field = cfg.field
    results: list = []
    for label, f in corpus():
        row = TABLE1[label]
        _check(results, f"{label} mu", inv.milnor_number(f, field), row[0])
        for (m, kind), want in zip(COLUMNS, row[1:]):
            name = f"{label} m={m} {kind}"
            try:
                res = inv.ad_value(f, m, kind, cfg.trials, cfg.units, field, cfg.seed,
                                   cfg.start_N, cfg.max_N)
                got = res.value
            except AdegError as exc:
                results.append({"check": name, "got": None, "expected": want,
                                "ok": False, "error": str(exc)})
                continue
            _check(results, name, got, want)
            kv = cf.known_value(f, m, kind)
            if kv is not None:
                _check(results, name + " closed form", got, kv)
            if kind != "w1":
                chk = inv.bounds_report(f, m, kind, got, field, strict=False)
                _check(results, name + " bounds", chk.ok, True)
    return _summary(results)


def verify_formulas(cfg: RunConfig) -> dict:
    """Closed-form theorems that need no table: node, cusp, families,
    flecnode, zero specialization and the enumerative identities."""
    field = cfg.field
    kw = dict(trials=cfg.trials, field=field, seed=cfg.seed)
    results: list = []
    node = inv.NODE_GERM
    for m in range(2, 9):
        for kind in inv.KINDS:
            _check(results, f"node m={m} {kind}", inv.node_ad(m, kind, **kw).value,
                   cf.known_value(node, m, kind))
    cusp = parse_germ("y^2 - x^3")
    for m in (3, 4):
        v = inv.ad_value(cusp, m, "w2a", units=cfg.units, **kw).value
        _check(results, f"cusp m={m}", v, 2 * cf.binom(m + 1, 4))
        _check(results, f"cusp limit m={m}",
               inv.limiting_count(cusp, m, "w2a", cfg.trials, cfg.units, field, cfg.seed), 0)
    for t in range(2, 7):
        for s in range(t, 7):
            f = parse_germ(f"y^{t} - x^{s}")
            _check(results, f"y^{t}-x^{s} m=3 w2a",
                   inv.ad_value(f, 3, "w2a", units=cfg.units, **kw).value, (2 * t - 3) * (s - 1))
            _check(results, f"y^{t}-x^{s} m=2 w1",
                   inv.ad_value(f, 2, "w1", units=cfg.units, **kw).value, s * (t - 1))
    for s in range(2, 9):
        f = parse_germ(f"y^2 - x^{s}")
        _check(results, f"y^2-x^{s} m=4 w2a", inv.ad_value(f, 4, "w2a", units=cfg.units, **kw).value,
               {2: 5, 3: 10}.get(s, 6 * (s - 1)))
        _check(results, f"y^2-x^{s} m=3 w1", inv.ad_value(f, 3, "w1", units=cfg.units, **kw).value,
               {2: 6, 3: 8}.get(s, 3 * s))
    for m in range(3, 7):
        _check(results, f"flecnode m={m}", inv.flecnode_colength(m, **kw).value,
               cf.binom(m + 1, 4) + 1)
    for m in range(2, 7):
        for kind in ("w2a", "w2b"):
            _check(results, f"node zero-spec m={m} {kind}",
                   inv.zero_specialized_length(node, m, kind, **kw).value,
                   cf.node_length_zero(m, kind))
    for d in range(3, 11):
        _check(results, f"pencil d={d}", cf.pencil_count(d, 4), 6 * (d - 3) * (3 * d - 2))
        _check(results, f"septactic d={d}", cf.septactic_pipeline(d), 9 * (d - 3) * (31 * d - 23))
    for g in range(2, 13):
        for n in range(1, 6):
            for kind in ("w2a", "w2b"):
                cls = cf.weierstrass_pipeline(g, n, kind)
                _check(results, f"weierstrass g={g} n={n} {kind}",
                       (cls.lambda_coeff, cls.delta0_coeff), cf.weierstrass_printed(g, n, kind))
    return _summary(results)


# -- output ---------------------------------------------------------------------

def _ordered(rep: dict) -> dict:
    out = {k: rep[k] for k in _KEY_ORDER if k in rep}
    out.update({k: v for k, v in rep.items() if k not in out and not k.startswith("_")})
    return out


def _text(rep: dict) -> str:
    lines = []
    head = [rep["command"]]
    for k in ("germ", "order", "kind"):
        if k in rep:
            head.append(f"{k}={rep[k]}")
    lines.append(" ".join(head))
    v = rep.get("value")
    if isinstance(v, dict) and "mismatches" in v:
        lines.append(f"checks {v['checks']}: passed {v['passed']}, failed {v['failed']}")
        for r in v["mismatches"]:
            lines.append(f"  MISMATCH {r['check']}: got {r['got']}, expected {r['expected']}"
                         + (f" ({r['error']})" if "error" in r else ""))
    elif isinstance(v, dict):
        for k, x in v.items():
            lines.append(f"{k}: {x}")
    else:
        lines.append(f"value: {v}")
    if "agreement" in rep:
        lines.append(f"agreement: {rep['agreement']}/{rep['trials']} trials, "
                     f"N={rep['truncation']}, {'stable' if rep['stable'] else 'unstable'}")
    if "bounds" in rep:
        b = rep["bounds"]
        lines.append(f"bounds: {b['lower']} <= value" + (f" <= {b['upper']}" if b["upper"] is not None else ""))
    if "closed_form" in rep:
        lines.append(f"closed form: {rep['closed_form'] if rep['closed_form'] is not None else 'none'}")
    if "seed" in rep:
        lines.append(f"seed: {rep['seed']} (p={rep['prime']})")
    return "\n".join(lines)


def execute(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand (try --help)")
        cfg = _config(args)
        t0 = time.perf_counter()
        rep = _run(args, cfg)
        if args.timing:
            rep["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    except AdegError as exc:
        print(f"adeg: {type(exc).__name__}: {exc}", file=err)
        return exc.exit_code
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    ok = rep.pop("_ok", True)
    if cfg.output == "json":
        out.write(json.dumps(_ordered(rep), default=_num) + "\n")
    else:
        out.write(_text(rep) + "\n")
    return 0 if ok else 1


def main(argv=None) -> int:
    return execute(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
