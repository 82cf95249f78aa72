"""Command-line interface.

Subcommands: verify-thm1, verify-thm4, asymptotic, anneal, envelope,
crossover, expand, pnt-exponent.  Exit codes: 0 success/pass, 1
verification failure, 2 usage or domain error.  Report paths accept
``--plot FILE`` to render a matplotlib figure next to the text/CSV/JSON
output.
"""

from __future__ import annotations

import argparse
import json
import sys

from mpmath import mp, mpf

from . import annealer, plotting, regions, trigpoly
from .digits import DEFAULT_DPS, dec, fmt_upper, workdps

__all__ = ["main", "run"]


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zerofree",
        description="verify and search explicit zero-free regions of the "
                    "Riemann zeta-function")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, poly=True):
        p.add_argument("--precision", type=int, default=DEFAULT_DPS,
                       metavar="DIGITS", help="significant digits (default 50)")
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.add_argument("--out", metavar="FILE", help="write output to FILE")
        if poly:
            p.add_argument("--poly", metavar="FILE",
                           help="polynomial file (default: bundled P40)")

    p1 = sub.add_parser("verify-thm1", help="all-heights region chain")
    add_common(p1)
    p1.add_argument("--params", metavar="FILE",
                    help="JSON file overriding A, B, E, M1, R, log_t0, K, "
                         "t1_multiplier")
    p1.add_argument("--best-m1", action="store_true",
                    help="also bisect for the largest closing M1")
    p1.add_argument("--plot", metavar="FILE", help="render the polynomial")

    p4 = sub.add_parser("verify-thm4", help="intermediate region chain")
    add_common(p4)
    p4.add_argument("--log-t0", default="1000", metavar="X",
                    help="starting height as log t (default 1000)")
    p4.add_argument("--plot", metavar="FILE", help="render the polynomial")

    pa = sub.add_parser("asymptotic", help="asymptotic constant of a polynomial")
    add_common(pa)
    pa.add_argument("--richert-b", default="4.45", metavar="B",
                    help="growth-bound constant B (default 4.45)")
    pa.add_argument("--plot", metavar="FILE", help="render the polynomial")

    pn = sub.add_parser("anneal", help="simulated-annealing search")
    pn.add_argument("--degree", type=int, required=True)
    pn.add_argument("--seed", type=int, default=0)
    pn.add_argument("--chains", type=int, default=1)
    pn.add_argument("--objective", choices=["r2", "r1"], default="r2")
    pn.add_argument("--iters", type=int, default=None,
                    help="iterations per (S, T) level")
    pn.add_argument("--init-range", type=float, default=150.0)
    pn.add_argument("--include-top", action="store_true",
                    help="also perturb the top coefficient c_K")
    pn.add_argument("--config", metavar="FILE", help="JSON AnnealConfig")
    pn.add_argument("--init-from", metavar="FILE",
                    help="warm-start from a polynomial file (generators)")
    pn.add_argument("--run-log", metavar="FILE",
                    help="append one JSON line per run")
    pn.add_argument("--out", metavar="FILE",
                    help="write the best polynomial to FILE")
    pn.add_argument("--json", action="store_true")

    pe = sub.add_parser("envelope", help="widest known region per height")
    pe.add_argument("--from-log", type=float, required=True, metavar="X")
    pe.add_argument("--to-log", type=float, required=True, metavar="Y")
    pe.add_argument("--steps", type=int, required=True, metavar="N")
    pe.add_argument("--out", metavar="FILE", help="write CSV to FILE")
    pe.add_argument("--json", action="store_true")
    pe.add_argument("--plot", metavar="FILE", help="render the envelope")

    pc = sub.add_parser("crossover", help="height where two bounds cross")
    names = [b.name for b in regions.builtin_bounds()]
    pc.add_argument("--first", choices=names, required=True)
    pc.add_argument("--second", choices=names, required=True)
    pc.add_argument("--lo", type=float, required=True, metavar="LOGT")
    pc.add_argument("--hi", type=float, required=True, metavar="LOGT")
    pc.add_argument("--json", action="store_true")
    pc.add_argument("--out", metavar="FILE")

    px = sub.add_parser("expand", help="expand a cosine product form")
    px.add_argument("--factor", action="append", default=[], metavar="A:MULT",
                    help="one (a + cos x)^mult factor, repeatable")
    px.add_argument("--one-plus-cos", action="store_true",
                    help="multiply by (1 + cos x)")
    px.add_argument("--precision", type=int, default=DEFAULT_DPS)
    px.add_argument("--json", action="store_true")
    px.add_argument("--out", metavar="FILE",
                    help="write the expansion as a polynomial file")
    px.add_argument("--plot", metavar="FILE", help="render the polynomial")

    pp = sub.add_parser("pnt-exponent", help="prime-counting error exponent")
    pp.add_argument("--c", required=True, metavar="CONST",
                    help="zero-free-region constant, e.g. 48.1588")
    pp.add_argument("--precision", type=int, default=DEFAULT_DPS)
    pp.add_argument("--json", action="store_true")
    pp.add_argument("--out", metavar="FILE")

    return ap


def _emit(text: str, out=None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _load_poly(args, dps):
    if getattr(args, "poly", None):
        return trigpoly.load_polynomial(args.poly, dps=dps)
    return trigpoly.bundled_p40(dps=dps)


def _report_out(report, args) -> int:
    text = report.to_json() if args.json else report.to_text()
    _emit(text, args.out)
    return 0 if report.passed else 1


def _cmd_verify_thm1(args) -> int:
    dps = args.precision
    poly = _load_poly(args, dps)
    overrides = {}
    if args.params:
        with open(args.params, "r", encoding="utf-8") as fh:
            overrides = json.load(fh)
        unknown = set(overrides) - {"A", "B", "E", "M1", "R", "log_t0", "K",
                                    "t1_multiplier"}
        if unknown:
            raise ValueError("unknown parameter fields: %s" % sorted(unknown))
        if "R" in overrides:
            overrides["R"] = int(overrides["R"])
        if "K" in overrides:
            overrides["K"] = int(overrides["K"])
    params = regions.RegionParams.defaults(poly=poly, dps=dps, **overrides)
    report = regions.verify_theorem1(params, dps=dps,
                                     with_best_m1=args.best_m1)
    if args.plot:
        plotting.save_polynomial_plot(poly, args.plot)
    return _report_out(report, args)


def _cmd_verify_thm4(args) -> int:
    dps = args.precision
    poly = _load_poly(args, dps)
    report = regions.verify_theorem4(poly, log_t0=mpf(args.log_t0), dps=dps)
    if args.plot:
        plotting.save_polynomial_plot(poly, args.plot)
    return _report_out(report, args)


def _cmd_asymptotic(args) -> int:
    dps = args.precision
    poly = _load_poly(args, dps)
    with workdps(dps):
        q = regions.asymptotic_quantity(poly, dps=dps)
        r2 = mpf(args.richert_b) ** (mpf(2) / 3) / q
        payload = {
            "degree": poly.degree,
            "b1": dec(poly.b[1], 15),
            "b": dec(poly.b_sum, 15),
            "q": dec(q, 15),
            "R2": dec(r2, 16),
            # directed display: a region constant is safe to round up
            "R2_quoted_style": fmt_upper(r2, 13),
        }
    if args.plot:
        plotting.save_polynomial_plot(poly, args.plot)
    if args.json:
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        _emit("\n".join("%s: %s" % kv for kv in payload.items()), args.out)
    return 0


def _cmd_anneal(args) -> int:
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = annealer.AnnealConfig.from_json_dict(json.load(fh))
    else:
        kw = dict(degree=args.degree, seed=args.seed, chains=args.chains,
                  objective=args.objective.upper(),
                  include_top=args.include_top,
                  init_range=args.init_range)
        if args.iters is not None:
            kw["iters_per_level"] = args.iters
        if args.init_from:
            init = trigpoly.load_polynomial(args.init_from)
            if init.c is None:
                raise ValueError("warm start requires generator coefficients")
            kw["initial_c"] = tuple(float(x) for x in init.c)
            kw["degree"] = init.degree
        config = annealer.AnnealConfig(**kw)
    result = annealer.anneal(config)
    if args.run_log:
        annealer.append_run_log(args.run_log, config, result)
    if args.out:
        trigpoly.save_polynomial(result.best, args.out,
                                 comment="annealed degree-%d polynomial, "
                                         "%s = %.12g, seed %d"
                                 % (config.degree, result.objective,
                                    result.best_objective, config.seed))
    payload = {
        "objective": result.objective,
        "best_objective": result.best_objective,
        "hp_objective": result.hp_objective,
        "hp_verified": result.hp_verified,
        "seed": result.seed,
        "chains": result.chains,
        "best_chain": result.best_chain,
        "config_hash": result.config_hash,
        "generator": result.generator,
        "b1": dec(result.best.b[1], 15),
        "b": dec(result.best.b_sum, 15),
        "coefficients": [float(x) for x in result.best.c],
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(result.summary())
        print("b1 = %s, b = %s" % (payload["b1"], payload["b"]))
    return 0 if result.hp_verified else 1


def _cmd_envelope(args) -> int:
    rows = regions.envelope_table(args.from_log, args.to_log, args.steps)
    if args.plot:
        plotting.save_envelope_plot(rows, args.plot)
    # JSON and CSV carry the same digits
    formatted = [("%.10g" % lt, "%.12g" % w, s) for lt, w, s in rows]
    if args.json:
        payload = [{"log_t": float(lt), "width": float(w), "source": s}
                   for lt, w, s in formatted]
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        lines = ["log_t,width,source"]
        lines += ["%s,%s,%s" % row for row in formatted]
        _emit("\n".join(lines), args.out)
    return 0


def _cmd_crossover(args) -> int:
    by_name = {b.name: b for b in regions.builtin_bounds()}
    lt = regions.crossover(by_name[args.first], by_name[args.second],
                           args.lo, args.hi)
    if args.json:
        _emit(json.dumps({"first": args.first, "second": args.second,
                          "log_t": lt}, indent=2), args.out)
    else:
        _emit("crossover %s / %s at log t = %.10g"
              % (args.first, args.second, lt), args.out)
    return 0


def _parse_factor(text: str):
    parts = text.split(":")
    if len(parts) == 1:
        a, m = parts[0], "1"
    elif len(parts) == 2:
        a, m = parts
    else:
        raise ValueError("factor must be 'a' or 'a:mult', got %r" % text)
    try:
        mult = int(m)
        mpf(a)
    except Exception:
        raise ValueError("malformed factor %r" % text)
    return a, mult


def _cmd_expand(args) -> int:
    factors = [_parse_factor(f) for f in args.factor]
    if not factors and not args.one_plus_cos:
        raise ValueError("need at least one --factor or --one-plus-cos")
    with workdps(args.precision):
        poly = trigpoly.expand_product_form(
            factors, include_one_plus_cos=args.one_plus_cos,
            dps=args.precision)
        payload = {
            "degree": poly.degree,
            "admissible": poly.admissible,
            "nonneg_certified": poly.nonneg_certified,
            "b": [dec(v, 20) for v in poly.b],
            "b1": dec(poly.b[1], 15) if poly.degree >= 1 else None,
            "b_sum": dec(poly.b_sum, 15),
        }
    if args.out:
        trigpoly.save_polynomial(
            poly, args.out,
            comment="expanded product form: %s%s" % (
                " ".join("(%s + cos x)^%d" % f for f in factors),
                " (1 + cos x)" if args.one_plus_cos else ""))
    if args.plot:
        plotting.save_polynomial_plot(poly, args.plot)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join("%s: %s" % kv for kv in payload.items()))
    return 0


def _cmd_pnt(args) -> int:
    with workdps(args.precision):
        d = regions.pnt_exponent(mpf(args.c), dps=args.precision)
        payload = {"c": args.c, "d": dec(d, 15)}
    if args.json:
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        _emit("d = %s" % payload["d"], args.out)
    return 0


_HANDLERS = {
    "verify-thm1": _cmd_verify_thm1,
    "verify-thm4": _cmd_verify_thm4,
    "asymptotic": _cmd_asymptotic,
    "anneal": _cmd_anneal,
    "envelope": _cmd_envelope,
    "crossover": _cmd_crossover,
    "expand": _cmd_expand,
    "pnt-exponent": _cmd_pnt,
}


def run(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
