"""Command-line front end: ``bosonic-polytope <subcommand> ...``.

Reports go to stdout (JSON unless CSV is requested or implied), diagnostics
to stderr. Exit codes: 0 success, 1 a verification check failed, 2 bad
usage or invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import PolytopeError
from .figures import minkowski_loops, sigma_segments
from .halfspace import analytic_halfspaces, numeric_facets
from .lineups import count_lineups, enumerate_lineups
from .oracle import hubbard_report, verify_trials
from .polytope import SUM_TOL, WeightVector, build_vertices, generic_weights, membership, parse_number

__all__ = ["RunConfig", "build_parser", "main", "run"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Fully parsed invocation."""

    command: str
    N: Optional[int] = None
    d: Optional[int] = None
    r: Optional[int] = None
    weights: Optional[WeightVector] = None
    seed: int = 0
    fmt: str = "json"
    options: dict = field(default_factory=dict)


def parse_weights(text: str, warn=None) -> WeightVector:
    """Exact weights from ``"0.5,0.3,0.2"`` or ``"1/2,1/3,1/6"``; renormalized if needed."""
    try:
        w = [parse_number(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse weights {text!r}: {exc}") from None
    if not w:
        raise UsageError("empty weight list")
    total = sum(w)
    if total <= 0:
        raise UsageError(f"weights must have positive sum, got {total}")
    if total != 1:
        if abs(total - 1) > Fraction(SUM_TOL) and warn is not None:
            warn(f"weights sum to {total}; normalizing")
        w = [x / total for x in w]
    try:
        return WeightVector(tuple(w))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _numbers(text: str) -> list[Fraction]:
    try:
        return [parse_number(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _fmt(x) -> str:
    return repr(float(x))


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _weights_for(cfg: RunConfig) -> WeightVector:
    if cfg.weights is None:
        if cfg.r is None:
            raise UsageError("give --w or --r")
        return generic_weights(cfg.r)
    if cfg.r is not None and cfg.r != cfg.weights.r:
        raise UsageError(f"--r {cfg.r} disagrees with {cfg.weights.r} nonzero weights")
    return cfg.weights


def _cmd_lineups(cfg: RunConfig) -> tuple[str, int]:
    lus = enumerate_lineups(cfg.N, cfg.d, cfg.r)
    if cfg.fmt == "csv":
        rows = [["lineup", "position", "configuration"]]
        for k, lu in enumerate(lus):
            for j, c in enumerate(lu.sequence, 1):
                rows.append([k, j, " ".join(str(i) for i in c.indices)])
        return _csv(rows), EXIT_OK
    return _json([lu.to_json() for lu in lus]), EXIT_OK


def _cmd_vertices(cfg: RunConfig) -> tuple[str, int]:
    w = _weights_for(cfg)
    p = build_vertices(cfg.N, cfg.d, w)
    if cfg.fmt == "csv":
        rows = [["vertex"] + [f"lambda{i}" for i in range(1, cfg.d + 1)]]
        rows += [[k] + [str(x) for x in v.coords] for k, v in enumerate(p.vertices)]
        return _csv(rows), EXIT_OK
    out = {
        "N": cfg.N,
        "d": cfg.d,
        "weights": w.to_json(),
        "vertices": [v.to_json() for v in p.vertices],
        "lineups": [p.lineups[v.lineup_id].to_json() for v in p.vertices],
        "lineup_count": len(p.lineups),
    }
    return _json(out), EXIT_OK


def _cmd_contains(cfg: RunConfig) -> tuple[str, int]:
    w = _weights_for(cfg)
    p = build_vertices(cfg.N, cfg.d, w)
    lam = _numbers(cfg.options["spectrum"])
    if len(lam) != cfg.d:
        raise UsageError(f"spectrum has {len(lam)} entries, expected d={cfg.d}")
    total = sum(lam)
    if total != cfg.N:
        if abs(total - cfg.N) > Fraction(SUM_TOL):
            raise UsageError(f"spectrum sums to {total}, expected N={cfg.N}")
        lam = [float(x) for x in lam]
    res = membership(p, lam)
    out = {
        "N": cfg.N,
        "d": cfg.d,
        "weights": w.to_json(),
        "spectrum": [str(x) if isinstance(x, Fraction) else repr(x) for x in lam],
        "member": bool(res.member),
        "boundary": bool(res.boundary),
        "slack": str(res.slack),
    }
    return _json(out), EXIT_OK


def _cmd_facets(cfg: RunConfig) -> tuple[str, int]:
    w = _weights_for(cfg)
    d = cfg.d if cfg.d is not None else w.r
    if cfg.options["mode"] == "analytic":
        system = analytic_halfspaces(cfg.N, w, d)
    else:
        system = numeric_facets(build_vertices(cfg.N, d, w), allow_large=cfg.options["allow_large"])
    if cfg.fmt == "csv":
        rows = [["type", "bound"] + [f"c{i}" for i in range(1, d + 1)]]
        rows += [[h.kind, str(h.bound)] + [str(c) for c in h.coeffs] for h in system.rows]
        return _csv(rows), EXIT_OK
    return _json(system.to_json()), EXIT_OK


def _cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    w = _weights_for(cfg)
    report = verify_trials(cfg.N, cfg.d, w, cfg.options["trials"], cfg.seed, workers=cfg.options.get("workers"))
    return _json(report), EXIT_OK if report["misses"] == 0 else EXIT_FAIL


def _cmd_hubbard(cfg: RunConfig) -> tuple[str, int]:
    w = _weights_for(cfg)
    v = cfg.options.get("v")
    v = [float(x) for x in _numbers(v)] if v else None
    if v is not None and len(v) != cfg.options["sites"]:
        raise UsageError(f"--v needs {cfg.options['sites']} entries")
    rep = hubbard_report(cfg.options["J"], cfg.options["U"], cfg.N, cfg.options["sites"], w, v)
    out = {
        "N": cfg.N,
        "sites": cfg.options["sites"],
        "J": cfg.options["J"],
        "U": cfg.options["U"],
        "weights": w.to_json(),
        **rep,
    }
    return _json(out), EXIT_OK if rep["membership"] else EXIT_FAIL


def _cmd_sigma(cfg: RunConfig) -> tuple[str, int]:
    p = build_vertices(cfg.N, cfg.d, _weights_for(cfg))
    rows = [["set", "segment", "kind", "lambda1_start", "lambda2_start", "lambda1_end", "lambda2_end"]]
    for row in sigma_segments(p):
        rows.append([row["set"], row["segment"], row["kind"], *map(_fmt, row["start"]), *map(_fmt, row["end"])])
    return _csv(rows), EXIT_OK


def _cmd_minkowski(cfg: RunConfig) -> tuple[str, int]:
    Nprime = cfg.options["Nprime"]
    if Nprime <= cfg.N:
        raise UsageError(f"--Nprime must exceed --N, got {Nprime} <= {cfg.N}")
    w = _weights_for(cfg)
    small = build_vertices(cfg.N, cfg.d, w)
    large = build_vertices(Nprime, cfg.d, w)
    rows = [["set", "index", "lambda1", "lambda2"]]
    for row in minkowski_loops(small, large):
        rows.append([row["set"], row["index"], *map(_fmt, row["point"])])
    return _csv(rows), EXIT_OK


def _cmd_table1(cfg: RunConfig) -> tuple[str, int]:
    rmax = cfg.options["rmax"]
    ineq_rmax = cfg.options["ineq_rmax"]
    rs = list(range(1, rmax + 1))
    vertices = [count_lineups(max(r - 1, 1), r, r) for r in rs]
    inequalities = []
    for r in rs:
        if r > ineq_rmax:
            inequalities.append(None)
            continue
        p = build_vertices(max(r - 1, 1), r, generic_weights(r))
        inequalities.append(numeric_facets(p, allow_large=True).count)
    if cfg.fmt == "csv":
        rows = [["quantity"] + rs, ["vertices"] + vertices, ["inequalities"] + ["" if x is None else x for x in inequalities]]
        return _csv(rows), EXIT_OK
    return _json({"r": rs, "vertices": vertices, "inequalities": inequalities}), EXIT_OK


HANDLERS = {
    "lineups": _cmd_lineups,
    "polytope vertices": _cmd_vertices,
    "polytope contains": _cmd_contains,
    "facets": _cmd_facets,
    "oracle verify": _cmd_verify,
    "oracle hubbard": _cmd_hubbard,
    "figure-data sigma": _cmd_sigma,
    "figure-data minkowski": _cmd_minkowski,
    "table1": _cmd_table1,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute ``cfg``, writing the report to ``out``; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        text, code = HANDLERS[cfg.command](cfg)
    except (UsageError, PolytopeError, ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    out.write(text)
    if code == EXIT_FAIL:
        print("verification failed", file=err)
    return code


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bosonic-polytope", description="Spectral polytopes of bosonic w-ensembles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need=("N", "d"), r=False, w=False, fmt=("json",)):
        for name in need:
            p.add_argument(f"--{name}", type=_positive, required=True)
        if r:
            p.add_argument("--r", type=_positive)
        if w:
            p.add_argument("--w", help="weights, e.g. 0.5,0.3,0.2 or 1/2,1/3,1/6")
        p.add_argument("--format", choices=fmt, default=fmt[0], dest="fmt")

    p = sub.add_parser("lineups", help="enumerate lineups")
    common(p, need=("N", "d", "r"), fmt=("json", "csv"))

    poly = sub.add_parser("polytope", help="vertices and membership").add_subparsers(dest="action", required=True)
    common(poly.add_parser("vertices"), r=True, w=True, fmt=("json", "csv"))
    p = poly.add_parser("contains")
    common(p, r=True, w=True)
    p.add_argument("--spectrum", required=True)

    p = sub.add_parser("facets", help="halfspace description")
    common(p, need=("N",), r=True, w=True, fmt=("json", "csv"))
    p.add_argument("--d", type=_positive)
    p.add_argument("--mode", choices=("analytic", "numeric"), default="analytic")
    p.add_argument("--allow-large", action="store_true")

    orc = sub.add_parser("oracle", help="exact-diagonalization checks").add_subparsers(dest="action", required=True)
    p = orc.add_parser("verify")
    common(p, r=True, w=True)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--workers", type=_positive)
    p = orc.add_parser("hubbard")
    common(p, need=("N",), r=True, w=True)
    p.add_argument("--sites", type=_positive, required=True)
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--U", type=float, default=0.0)
    p.add_argument("--v", help="on-site potentials, comma separated")

    fig = sub.add_parser("figure-data", help="CSV for plots").add_subparsers(dest="action", required=True)
    common(fig.add_parser("sigma"), r=True, w=True, fmt=("csv",))
    p = fig.add_parser("minkowski")
    common(p, r=True, w=True, fmt=("csv",))
    p.add_argument("--Nprime", type=_positive, required=True)

    p = sub.add_parser("table1", help="vertex and inequality counts")
    p.add_argument("--rmax", type=_positive, default=8)
    p.add_argument("--ineq-rmax", type=_nonneg, default=8)
    p.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    return parser


def config_from_args(ns: argparse.Namespace, warn=None) -> RunConfig:
    command = ns.command + (f" {ns.action}" if getattr(ns, "action", None) else "")
    w = getattr(ns, "w", None)
    known = {"command", "action", "N", "d", "r", "w", "seed", "fmt"}
    return RunConfig(
        command=command,
        N=getattr(ns, "N", None),
        d=getattr(ns, "d", None),
        r=getattr(ns, "r", None),
        weights=parse_weights(w, warn) if w else None,
        seed=getattr(ns, "seed", 0),
        fmt=ns.fmt,
        options={k: v for k, v in vars(ns).items() if k not in known},
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def warn(msg: str) -> None:
        print(f"warning: {msg}", file=sys.stderr)

    try:
        cfg = config_from_args(ns, warn)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
