"""Command-line front end.

    upperclust dims --max-d 5
    upperclust check "2*y^3 + 3*z^3" 1,0,0
    upperclust verify-deg0 --bound 2
    upperclust u1-growth --max-d 4
    upperclust crosscheck --trials 500 --seed 7
    upperclust show-seed

Exit codes: 0 clean, 1 violation (or non-member for ``check``), 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .cluster import adjacent_variable, exchange_polys
from .field import (
    DEFAULT_PARAMS,
    PARAM_NAMES,
    ParamAssignment,
    ParameterError,
    make_params,
    parse_params,
    torsion_ratio,
)
from .grading import crosscheck, deg1_table, u1_growth, verify_deg0
from .membership import lemma1_check, normalize
from .poly import LaurentFraction, PolyError, format_form, format_polynomial, parse_polynomial

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    params: List[str] = field(default_factory=lambda: [str(v) for v in DEFAULT_PARAMS])
    max_d: int = 3
    bound: int = 2
    trials: int = 500
    seed: int = 0
    format: str = "json"
    out: Optional[str] = None
    jobs: int = 1

    def assignment(self) -> ParamAssignment:
        return make_params(self.params)


def read_config(path: str) -> Dict[str, str]:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, val = line.split("=", 1)
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        raw = read_config(args.config)
        if "params" in raw:
            cfg.params = [s.strip() for s in raw.pop("params").split(",")]
        named = [raw.pop(n) for n in PARAM_NAMES if n in raw]
        if named:
            if len(named) != 6:
                raise ParameterError("config must give all six of " + ", ".join(PARAM_NAMES))
            cfg.params = named
        for key, val in raw.items():
            if not hasattr(cfg, key):
                raise ValueError(f"unknown config key {key!r}")
            cur = getattr(cfg, key)
            setattr(cfg, key, int(val) if isinstance(cur, int) else val)
    if args.params:
        cfg.params = [s.strip() for s in args.params.split(",")]
    for key in ("max_d", "bound", "trials", "seed", "format", "out", "jobs"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    return cfg


def emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_dims(cfg: RunConfig) -> int:
    params = cfg.assignment()
    records = deg1_table(cfg.max_d, exchange_polys(params), jobs=cfg.jobs)
    header = ["d", "ambient_dim", "conditions", "kernel_dim", "lower_bound", "exact_match"]
    if cfg.format == "csv":
        emit(_csv(header, [[r.d, r.ambient_dim, r.conditions, r.kernel_dim, r.lower_bound,
                            str(r.exact_match).lower()] for r in records]), cfg)
    else:
        emit(_json({"params": params.as_strings(), "records": [r.as_dict() for r in records]}), cfg)
    return EXIT_OK if all(r.ok for r in records) else EXIT_VIOLATION


def parse_expo(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"exponents must be three integers i,j,k, got {text!r}")
    return tuple(int(p) for p in parts)


def cmd_check(cfg: RunConfig, numerator: str, exponents: str) -> int:
    params = cfg.assignment()
    fr = LaurentFraction(parse_polynomial(numerator), parse_expo(exponents))
    verdict = lemma1_check(fr, exchange_polys(params))
    out = {"params": params.as_strings(), "numerator": format_polynomial(fr.numerator_coeffs()),
           "expo": list(fr.expo)}
    if not fr.is_zero():
        nf = normalize(fr)
        out["normalized"] = {"numerator": format_polynomial(nf.numerator_coeffs()), "expo": list(nf.expo)}
    out.update(verdict.as_dict())
    emit(_json(out), cfg)
    return EXIT_OK if verdict.member else EXIT_VIOLATION


def cmd_verify_deg0(cfg: RunConfig) -> int:
    params = cfg.assignment()
    report = verify_deg0(cfg.bound, exchange_polys(params))
    if cfg.format == "csv":
        emit(_csv(["i", "j", "k", "dim_space", "dim_sum", "contained", "ok"],
                  [[*e.expo, e.dim_space, e.dim_sum, str(e.contained).lower(), str(e.ok).lower()]
                   for e in report.entries]), cfg)
    else:
        emit(_json({"params": params.as_strings(), **report.as_dict()}), cfg)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_u1_growth(cfg: RunConfig) -> int:
    params = cfg.assignment()
    report = u1_growth(cfg.max_d, exchange_polys(params))
    if cfg.format == "csv":
        emit(_csv(["d", "dim_prev", "dim", "image_rank", "embedded_ok", "witness_member",
                   "witness_not_lower", "ok"],
                  [[lv.d, lv.dim_prev, lv.dim, lv.image_rank, str(lv.embedded_ok).lower(),
                    str(lv.witness_member).lower(), str(lv.witness_not_lower).lower(),
                    str(lv.ok).lower()] for lv in report.levels]), cfg)
    else:
        emit(_json({"params": params.as_strings(), **report.as_dict()}), cfg)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_crosscheck(cfg: RunConfig) -> int:
    params = cfg.assignment()
    report = crosscheck(cfg.trials, cfg.seed, exchange_polys(params))
    if cfg.format == "csv":
        emit(_csv(["trials", "seed", "agree", "members", "ok"],
                  [[report.trials, report.seed, report.agree, report.members, str(report.ok).lower()]]), cfg)
    else:
        emit(_json({"params": params.as_strings(), **report.as_dict()}), cfg)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_show_seed(cfg: RunConfig) -> int:
    params = cfg.assignment()
    ex = exchange_polys(params)
    out = {
        "params": dict(zip(PARAM_NAMES, params.as_strings())),
        "torsion_ratio": str(torsion_ratio(params)),
        "exchange": {name: format_form(poly.to_ternary()) for name, poly in zip("pqr", (ex.p, ex.q, ex.r))},
        "adjacent": {},
    }
    for axis in "xyz":
        fr = adjacent_variable(axis, params).fraction
        out["adjacent"][axis + "'"] = {"numerator": format_form(fr.numerator), "expo": list(fr.expo)}
    if cfg.format == "csv":
        rows = [[k, v] for k, v in out["exchange"].items()]
        rows += [[k, f"({v['numerator']})/{k[0]}"] for k, v in out["adjacent"].items()]
        emit(_csv(["name", "value"], rows), cfg)
    else:
        emit(_json(out), cfg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", help="six rationals a1p,a1m,a2p,a2m,a3p,a3m (default 2,3,5,7,11,13)")
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="upperclust", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", parents=[common], help="degree-1 dimension table")
    p.add_argument("--max-d", type=int, dest="max_d")
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("check", parents=[common], help="membership of numerator/(x^i y^j z^k)")
    p.add_argument("numerator")
    p.add_argument("exponents", help="i,j,k")

    p = sub.add_parser("verify-deg0", parents=[common], help="degree-0 subspace equality checks")
    p.add_argument("--bound", type=int)

    p = sub.add_parser("u1-growth", parents=[common], help="strictly increasing degree-1 chain")
    p.add_argument("--max-d", type=int, dest="max_d")

    p = sub.add_parser("crosscheck", parents=[common], help="criterion vs division oracle")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)

    sub.add_parser("show-seed", parents=[common], help="exchange polynomials and adjacent variables")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        cfg.assignment()
        if args.command == "dims":
            return cmd_dims(cfg)
        if args.command == "check":
            return cmd_check(cfg, args.numerator, args.exponents)
        if args.command == "verify-deg0":
            return cmd_verify_deg0(cfg)
        if args.command == "u1-growth":
            return cmd_u1_growth(cfg)
        if args.command == "crosscheck":
            return cmd_crosscheck(cfg)
        return cmd_show_seed(cfg)
    except (ParameterError, PolyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
