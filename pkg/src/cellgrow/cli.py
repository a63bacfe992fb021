"""Command line entry point: ``cellgrow COMMAND CONFIG [options]``.

Exit status is 0 on success, 1 when a check fails or a size cap is hit,
and 2 for configuration errors.  Errors are also printed to stderr as JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from . import amenability as am
from . import geometry as geo
from .config import Config, load_config
from .errors import BallTooLargeError, CellGrowError, ConfigError, MalformedElementError, StabiliserTooLargeError
from .growth import classify, equivalent, growth_rate, growth_table
from .properties import SUITES, run_suite

DOMINATION_CAVEAT = (
    "domination is checked on a finite range only; "
    "no-witness-up-to is not a disproof"
)


def _meta(cfg: Config) -> dict:
    return {"tool": "cellgrow", "version": __version__, "config_sha256": cfg.digest()}


def _json(cfg: Config, payload: dict) -> str:
    return json.dumps({"meta": _meta(cfg), **payload}, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _csv(cfg: Config, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# cellgrow {__version__} config_sha256={cfg.digest()}\n")
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


def cmd_growth(cfg, space, gens, args):
    table = growth_table(space, gens, args.kmax, cap=cfg.caps["ball_size"])
    rate = growth_rate(table) if args.kmax >= 1 else None
    rows = [["k", "gamma", "root"]]
    for k, v in enumerate(table.values):
        rows.append([k, v, _fmt(rate.roots[k]) if rate else ""])
    outputs = {"growth.csv": _csv(cfg, rows)}
    if len(table) >= 8:
        est = classify(table, cfg.thresholds["residual"], cfg.thresholds["degree_factor"])
        outputs["classification.json"] = _json(cfg, est.to_dict())
    else:
        outputs["classification.json"] = _json(
            cfg, {"class": None, "error": "table-too-short", "range": [0, table.k_max]}
        )
    return outputs, 0


def cmd_rate(cfg, space, gens, args):
    table = growth_table(space, gens, args.kmax, cap=cfg.caps["ball_size"])
    rate = growth_rate(table)
    rows = [["k", "gamma", "root", "ratio"]]
    for k, v in enumerate(table.values):
        rows.append([k, v, _fmt(rate.roots[k]), _fmt(rate.ratios[k])])
    summary = {
        "estimate": rate.estimate,
        "estimate_kind": "running infimum of gamma(k)^(1/k), an upper bound on the growth rate",
        "k_max": args.kmax,
    }
    return {"rate.csv": _csv(cfg, rows), "rate.json": _json(cfg, summary)}, 0


def cmd_ball(cfg, space, gens, args):
    center = space.parse_point(args.center) if args.center else space.origin
    ball = geo.build_ball(space, gens, center, args.radius, cap=cfg.caps["ball_size"])
    if args.format == "csv":
        return {"ball.csv": _csv(cfg, geo.ball_to_csv_rows(space, ball))}, 0
    graph = geo.cayley_subgraph(space, gens, ball.ball())
    if args.format == "edges":
        return {"edges.csv": _csv(cfg, geo.graph_to_csv_rows(space, graph))}, 0
    header = f"// cellgrow {__version__} config_sha256={cfg.digest()}\n"
    return {"ball.dot": header + geo.graph_to_dot(space, graph)}, 0


def cmd_iso(cfg, space, gens, args):
    report = am.isoperimetric_profile(space, gens, args.kmax, cap=cfg.caps["ball_size"])
    if args.csv:
        rows = [["k", "size", "generator", "deficiency", "union_deficiency"]]
        for rec in report.records:
            for lbl, v in rec.per_generator.items():
                rows.append([rec.k, rec.size, lbl, _fmt(v), _fmt(rec.union)])
        return {"iso.csv": _csv(cfg, rows)}, 0
    payload = report.to_dict()
    payload["note"] = "running_min is an upper bound on the isoperimetric constant"
    return {"iso.json": _json(cfg, payload)}, 0


def cmd_folner(cfg, space, gens, args):
    result = am.folner_witness_subexp(space, gens, args.epsilon, args.kcap, cap=cfg.caps["ball_size"])
    payload = result.to_dict(space)
    if isinstance(result, am.FolnerWitness):
        payload["rechecked"] = result.check(space, gens)
    else:
        payload["note"] = "not finding a ball witness does not show non-amenability"
    payload["epsilon"] = args.epsilon
    return {"folner.json": _json(cfg, payload)}, 0


def cmd_check(cfg, space, gens, args):
    results = run_suite(args.suite, space, gens, args.samples, cfg.seed)
    ok = all(r.passed for r in results)
    payload = {
        "suite": args.suite,
        "samples": args.samples,
        "seed": cfg.seed,
        "passed": ok,
        "results": [r.to_dict() for r in results],
    }
    return {"check.json": _json(cfg, payload)}, 0 if ok else 1


def cmd_compare(cfg, space, gens, args):
    other_cfg = load_config(args.other)
    other_space, other_gens = other_cfg.build()
    mine = growth_table(space, gens, args.kmax, cap=cfg.caps["ball_size"])
    theirs = growth_table(other_space, other_gens, args.kmax, cap=other_cfg.caps["ball_size"])
    forward, backward = equivalent(mine, theirs, args.alphamax)

    def verdict(v):
        return {"alpha": v.alpha, "alpha_max": v.alpha_max, "checked_range": v.checked_range, "text": str(v)}

    payload = {
        "this_dominates_other": verdict(forward),
        "other_dominates_this": verdict(backward),
        "other_config_sha256": other_cfg.digest(),
        "this_table": mine.values,
        "other_table": theirs.values,
        "caveat": DOMINATION_CAVEAT,
    }
    return {"compare.json": _json(cfg, payload)}, 0


COMMANDS = {
    "growth": cmd_growth,
    "rate": cmd_rate,
    "ball": cmd_ball,
    "iso": cmd_iso,
    "folner": cmd_folner,
    "check": cmd_check,
    "compare": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cellgrow", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cellgrow {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("config", help="path to the JSON config")
        p.add_argument("--out", help="write output files into this directory instead of stdout")
        return p

    p = add("growth", "growth table and classification")
    p.add_argument("--kmax", type=int, required=True)
    p = add("rate", "k-th roots and the running-infimum rate estimate")
    p.add_argument("--kmax", type=int, required=True)
    p = add("ball", "export a ball as DOT or CSV")
    p.add_argument("--center", default=None)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--format", choices=("dot", "csv", "edges"), default="dot")
    p = add("iso", "isoperimetric profile of balls")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--csv", action="store_true")
    p = add("folner", "search for a Folner ball")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--kcap", type=int, required=True)
    p = add("check", "run lemma suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--samples", type=int, default=100)
    p = add("compare", "mutual domination of two growth tables")
    p.add_argument("--other", required=True)
    p.add_argument("--alphamax", type=int, default=8)
    p.add_argument("--kmax", type=int, default=10)
    return parser


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        space, gens = cfg.build()
        outputs, code = COMMANDS[args.command](cfg, space, gens, args)
    except ConfigError as exc:
        return _error("config", str(exc), 2)
    except MalformedElementError as exc:
        return _error("malformed-element", str(exc), 2)
    except (BallTooLargeError, StabiliserTooLargeError) as exc:
        return _error("cap-exceeded", str(exc), 1)
    except CellGrowError as exc:
        return _error(type(exc).__name__, str(exc), 1)
    except ValueError as exc:
        return _error("invalid-argument", str(exc), 2)

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in outputs.items():
            (out / name).write_text(text, encoding="utf-8", newline="\n")
    else:
        for text in outputs.values():
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
