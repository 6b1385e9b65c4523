"""Command-line harness: sweeps, figure data, cross-checks and plot scripts.

    tfgrover spectrum --n-min 20 --n-max 40 --n-step 2 --gamma pi --out spectrum.csv
    tfgrover spectrum --n-min 20 --n-max 20 --gamma-sweep 0.2:pi:0.2 --out gamma.csv
    tfgrover evolve --n-min 16 --n-max 24 --n-step 4 --t-max peak
    tfgrover crosscheck --seed 7 --out report.json
    tfgrover plots --input spectrum.csv --out figures/
    tfgrover --schema

Exit status is 0 on success, 1 when a cross-check fails and 2 on usage
errors.
"""
from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import operator
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import analytic, spectral, walk
from .crosscheck import run_suite
from .errors import DomainError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PI_TOL = 1e-12

SPECTRUM_COLUMNS = {
    "n": "qubit count",
    "gamma": "oracle angle gamma in radians",
    "arg_alpha": "eigenphase of the principal eigenvalue alpha of W(gamma), by diagonalization",
    "sqrtn_arg_alpha": "sqrt(2^n) * arg_alpha",
    "fid_target": "|<0|w+>| by diagonalization",
    "fid_bplus": "|<b+|w->| by diagonalization",
    "infid_target": "1 - fid_target",
    "infid_bplus": "1 - fid_bplus",
    "poly_arg_alpha": "arg(beta^2) for the Newton root beta of the eigenvalue polynomial (gamma = pi only)",
    "pred_arg_alpha": "4 sqrt(2) 2^(-n/2) (1 - pi^2/2n)^(1/4) (gamma = pi, n >= 8)",
    "pred_sqrtn_arg_alpha": "4 sqrt(2) (1 - pi^2/2n)^(1/4) (gamma = pi, n >= 8)",
    "pred_fid_target": "(1 - pi^2/2n)^(1/4) (gamma = pi, n >= 8)",
    "pred_infid_target": "1 - pred_fid_target (gamma = pi, n >= 8)",
    "pred_infid_bplus": "2^-n (gamma = pi, n >= 8)",
    "diff_sqrtn_arg_alpha": "sqrtn_arg_alpha - pred_sqrtn_arg_alpha",
    "diff_fid_target": "fid_target - pred_fid_target",
    "diff_poly_arg_alpha": "arg_alpha - poly_arg_alpha",
}

EVOLVE_COLUMNS = {
    "n": "qubit count",
    "gamma": "oracle angle gamma in radians",
    "t_max": "number of W applications scanned",
    "t_star": "W applications at the first (near-)maximal target probability",
    "success_prob": "target probability at t_star",
    "truncated": "1 if the maximum sits on the last scanned step",
    "oracle_queries": "2 * t_star, oracle calls of one run",
    "retry_queries": "oracle_queries / success_prob, expected calls when failed runs are repeated",
    "arg_alpha": "eigenphase of the principal eigenvalue of W(gamma)",
    "average_queries": "2 pi / arg_alpha",
    "reference_queries": "(pi / 2 sqrt 2) 2^(n/2)",
    "query_ratio": "average_queries / reference_queries",
}

CURVE_COLUMNS = {
    "n": "qubit count",
    "gamma": "oracle angle gamma in radians",
    "t": "number of W applications",
    "success_prob": "|<0|psi_t>|^2",
}

CROSSCHECK_FIELDS = {
    "name": "invariant identifier",
    "passed": "true when the measured value is within tolerance (null when skipped)",
    "value": "worst measured deviation",
    "tolerance": "acceptance bound for value",
    "skipped": "true when the check was disabled by a flag",
}

SCHEMA = {
    "spectrum": SPECTRUM_COLUMNS,
    "evolve": EVOLVE_COLUMNS,
    "curve": CURVE_COLUMNS,
    "crosscheck": CROSSCHECK_FIELDS,
}


class UsageError(Exception):
    pass


# -- configuration ---------------------------------------------------------


@dataclass
class SweepConfig:
    n_min: int = 16
    n_max: int = 16
    n_step: int = 2
    gamma_list: list[float] = field(default_factory=lambda: [math.pi])
    t_max_policy: str = "default"
    output_path: str | None = None
    format: str = "csv"
    seed: int = 0
    no_fullspace: bool = False
    workers: int = 1
    curve_path: str | None = None
    input_path: str | None = None
    inject_fault: str | None = None

    def validate(self) -> SweepConfig:
        for name in ("n_min", "n_max", "n_step"):
            v = getattr(self, name)
            if not isinstance(v, int) or v <= 0 or v % 2:
                raise UsageError(f"{name} must be a positive even integer, got {v!r}")
        if not 2 <= self.n_min <= self.n_max <= 40:
            raise UsageError(f"need 2 <= n-min <= n-max <= 40, got {self.n_min}..{self.n_max}")
        if not self.gamma_list:
            raise UsageError("no gamma values given")
        for g in self.gamma_list:
            if not 0 < g <= math.pi + PI_TOL:
                raise UsageError(f"gamma must lie in (0, pi], got {g!r}")
        self.gamma_list = [min(g, math.pi) for g in self.gamma_list]
        if self.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")
        if self.t_max_policy not in ("default", "peak"):
            try:
                if int(self.t_max_policy) < 1:
                    raise ValueError
            except ValueError:
                raise UsageError(f"t-max must be default, peak or a positive integer, got {self.t_max_policy!r}")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        if self.inject_fault not in (None, "xi"):
            raise UsageError(f"unknown fault {self.inject_fault!r}")
        return self

    @property
    def n_values(self) -> list[int]:
        return list(range(self.n_min, self.n_max + 1, self.n_step))


_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}


def parse_angle(text: str) -> float:
    """Numbers combined with ``pi`` and ``+ - * /``, e.g. ``3*pi/4``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.operand))
        raise ValueError(text)

    try:
        return ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse angle {text!r}") from None


def parse_gamma_list(text: str) -> list[float]:
    return [parse_angle(t) for t in text.split(",") if t.strip()]


def parse_gamma_sweep(text: str) -> list[float]:
    """``START:STOP:STEP``, STOP included even when off the step grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"gamma sweep must be START:STOP:STEP, got {text!r}")
    start, stop, step = (parse_angle(p) for p in parts)
    if step <= 0 or stop < start:
        raise UsageError(f"bad gamma sweep {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9))
    values = [start + i * step for i in range(count + 1)]
    if stop - values[-1] > 1e-9:
        values.append(stop)
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with SweepConfig fields; flags override it")
    common.add_argument("--n-min", type=int)
    common.add_argument("--n-max", type=int)
    common.add_argument("--n-step", type=int)
    common.add_argument("--gamma", help="comma-separated angles, e.g. pi,pi/2")
    common.add_argument("--gamma-sweep", help="START:STOP:STEP, e.g. 0.2:pi:0.2")
    common.add_argument("--t-max", help="default (ceil(4*2^(n/2))), peak (ceil(pi/arg alpha)) or an integer")
    common.add_argument("--out", help="output file (directory for plots); stdout when omitted")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--seed", type=int)
    common.add_argument("--no-fullspace", action="store_true", default=None)
    common.add_argument("--workers", type=int)
    common.add_argument("--schema", action="store_true", help="print the column schema and exit")

    parser = argparse.ArgumentParser(prog="tfgrover", description=__doc__.split("\n")[0])
    parser.add_argument("--schema", action="store_true", help="print the column schema and exit")
    sub = parser.add_subparsers(dest="command")
    sub.add_parser("spectrum", parents=[common], help="eigen-analysis sweep over (n, gamma)")
    ev = sub.add_parser("evolve", parents=[common], help="search runs over (n, gamma)")
    ev.add_argument("--curve", help="also write the full probability curves to this file")
    cc = sub.add_parser("crosscheck", parents=[common], help="run the invariant suite")
    cc.add_argument("--inject-fault", choices=["xi"], help="negative control: corrupt the xi table")
    pl = sub.add_parser("plots", parents=[common], help="write plot scripts for a spectrum CSV")
    pl.add_argument("--input", help="spectrum CSV (default: OUT/spectrum.csv)")
    return parser


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    values: dict = {}
    if getattr(args, "config", None):
        try:
            values.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        known = {f.name for f in fields(SweepConfig)}
        unknown = set(values) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    flag_map = {
        "n_min": "n_min",
        "n_max": "n_max",
        "n_step": "n_step",
        "t_max": "t_max_policy",
        "out": "output_path",
        "format": "format",
        "seed": "seed",
        "no_fullspace": "no_fullspace",
        "workers": "workers",
        "curve": "curve_path",
        "input": "input_path",
        "inject_fault": "inject_fault",
    }
    for flag, key in flag_map.items():
        v = getattr(args, flag, None)
        if v is not None:
            values[key] = v
    if getattr(args, "gamma", None) and getattr(args, "gamma_sweep", None):
        raise UsageError("use either --gamma or --gamma-sweep")
    if getattr(args, "gamma", None):
        values["gamma_list"] = parse_gamma_list(args.gamma)
    elif getattr(args, "gamma_sweep", None):
        values["gamma_list"] = parse_gamma_sweep(args.gamma_sweep)
    elif "gamma_list" in values:
        values["gamma_list"] = [
            parse_angle(g) if isinstance(g, str) else float(g) for g in values["gamma_list"]
        ]
    if "n_min" in values and "n_max" not in values:
        values["n_max"] = values["n_min"]
    if "t_max_policy" in values:
        values["t_max_policy"] = str(values["t_max_policy"])
    return SweepConfig(**values).validate()


# -- row producers ---------------------------------------------------------


def _is_pi(g: float) -> bool:
    return abs(g - math.pi) < PI_TOL


def spectrum_row(n: int, gamma: float) -> dict:
    rep = spectral.analyze(n, gamma)
    sqrt_n = 2 ** (n / 2)
    row = dict.fromkeys(SPECTRUM_COLUMNS)
    row.update(
        n=n,
        gamma=gamma,
        arg_alpha=rep.arg_alpha,
        sqrtn_arg_alpha=sqrt_n * rep.arg_alpha,
        fid_target=rep.fid_target,
        fid_bplus=rep.fid_bplus,
        infid_target=1 - rep.fid_target,
        infid_bplus=1 - rep.fid_bplus,
    )
    if _is_pi(gamma) and n >= 8:
        beta = analytic.root_solve(n)
        poly_arg = float(np.angle(beta * beta))
        pred_arg = analytic.pred_arg_alpha(n)
        pred_ft = analytic.pred_fid_target(n)
        row.update(
            poly_arg_alpha=poly_arg,
            pred_arg_alpha=pred_arg,
            pred_sqrtn_arg_alpha=sqrt_n * pred_arg,
            pred_fid_target=pred_ft,
            pred_infid_target=1 - pred_ft,
            pred_infid_bplus=2.0**-n,
            diff_sqrtn_arg_alpha=sqrt_n * (rep.arg_alpha - pred_arg),
            diff_fid_target=rep.fid_target - pred_ft,
            diff_poly_arg_alpha=rep.arg_alpha - poly_arg,
        )
    return row


def _resolve_t_max(policy: str, n: int, arg_alpha: float) -> int:
    if policy == "default":
        return walk.default_t_max(n)
    if policy == "peak":
        return math.ceil(math.pi / arg_alpha)
    return int(policy)


def evolve_rows(n: int, gamma: float, policy: str) -> tuple[dict, list[dict]]:
    alpha, _, _ = spectral.principal_pair(n, gamma)
    arg = float(np.angle(alpha))
    t_max = _resolve_t_max(policy, n, arg)
    rec = walk.evolve_scan(n, gamma, t_max)
    ref = walk.grover_like_queries(n)
    avg = walk.queries_from_arg(arg)
    row = {
        "n": n,
        "gamma": gamma,
        "t_max": t_max,
        "t_star": rec.t_star,
        "success_prob": rec.success_prob,
        "truncated": int(rec.truncated),
        "oracle_queries": rec.oracle_queries,
        "retry_queries": rec.expected_queries if rec.success_prob > 0 else None,
        "arg_alpha": arg,
        "average_queries": avg,
        "reference_queries": ref,
        "query_ratio": avg / ref,
    }
    curve = [{"n": n, "gamma": gamma, "t": t, "success_prob": p} for t, p in enumerate(rec.curve.tolist())]
    return row, curve


def _spectrum_task(args):
    return spectrum_row(*args)


def _evolve_task(args):
    return evolve_rows(*args)


def _grid(cfg: SweepConfig) -> list[tuple[int, float]]:
    return sorted((n, g) for n in cfg.n_values for g in cfg.gamma_list)


def _map(func, tasks, workers: int):
    if workers == 1 or len(tasks) < 2:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps task order regardless of completion order
        return list(pool.map(func, tasks))


def cmd_spectrum(cfg: SweepConfig) -> list[dict]:
    return _map(_spectrum_task, _grid(cfg), cfg.workers)


def cmd_evolve(cfg: SweepConfig) -> tuple[list[dict], list[dict]]:
    tasks = [(n, g, cfg.t_max_policy) for n, g in _grid(cfg)]
    results = _map(_evolve_task, tasks, cfg.workers)
    rows = [r for r, _ in results]
    curves = [c for _, cs in results for c in cs]
    return rows, curves


# -- output ----------------------------------------------------------------


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def render_rows(rows: list[dict], columns: dict, fmt: str) -> str:
    names = list(columns)
    if fmt == "json":
        clean = [{k: _json_value(row.get(k)) for k in names} for row in rows]
        return json.dumps(clean, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for row in rows:
        w.writerow([format_value(row.get(k)) for k in names])
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    return v


def emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def read_csv(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# -- plots -----------------------------------------------------------------

_PLOT_TEMPLATE = '''\
"""{title}

Generated by ``tfgrover plots``; reads {csv_rel} relative to this file.
"""
import csv
import math
from pathlib import Path

import matplotlib.pyplot as plt

CSV = Path(__file__).parent / {csv_rel!r}

with open(CSV, newline="") as fh:
    rows = list(csv.DictReader(fh))


def num(v):
    return float(v) if v != "" else math.nan


{body}
plt.tight_layout()
plt.savefig(Path(__file__).with_suffix(".png"), dpi=150)
'''

_N_SWEEP_BODY = '''\
rows = [r for r in rows if abs(num(r["gamma"]) - math.pi) < 1e-12]
rows.sort(key=lambda r: int(r["n"]))
n = [int(r["n"]) for r in rows]
plt.figure(figsize=(4, 3))
plt.{plot}(n, [num(r[{num_col!r}]) for r in rows], "o", label="diagonalization")
plt.{plot}(n, [num(r[{pred_col!r}]) for r in rows], "-", label="large-n formula")
plt.xlabel("n")
plt.ylabel({ylabel!r})
plt.legend()
'''

_GAMMA_SWEEP_BODY = '''\
by_n = {}
for r in rows:
    by_n.setdefault(int(r["n"]), []).append(r)
plt.figure(figsize=(4, 3))
for n, group in sorted(by_n.items()):
    if len(group) < 2:
        continue
    group.sort(key=lambda r: num(r["gamma"]))
    plt.plot([num(r["gamma"]) for r in group], [num(r["sqrtn_arg_alpha"]) for r in group], "o-", label=f"n={n}")
plt.xlabel("gamma")
plt.ylabel("sqrt(N) arg(alpha)")
if plt.gca().get_legend_handles_labels()[0]:
    plt.legend()
else:
    print("no gamma sweep in the CSV; run spectrum with --gamma-sweep")
'''

PLOTS = {
    "fig2a_infid_target.py": (
        "Target infidelity 1 - |<0|w+>| against n at gamma = pi.",
        _N_SWEEP_BODY,
        dict(plot="semilogy", num_col="infid_target", pred_col="pred_infid_target", ylabel="1 - |<0|w+>|"),
    ),
    "fig2b_infid_bplus.py": (
        "b+ infidelity 1 - |<b+|w->| against n at gamma = pi.",
        _N_SWEEP_BODY,
        dict(plot="semilogy", num_col="infid_bplus", pred_col="pred_infid_bplus", ylabel="1 - |<b+|w->|"),
    ),
    "fig3a_sqrtn_arg_alpha.py": (
        "sqrt(N) arg(alpha) against n at gamma = pi.",
        _N_SWEEP_BODY,
        dict(plot="plot", num_col="sqrtn_arg_alpha", pred_col="pred_sqrtn_arg_alpha", ylabel="sqrt(N) arg(alpha)"),
    ),
    "fig3b_arg_vs_gamma.py": ("sqrt(N) arg(alpha) against gamma, one line per n.", _GAMMA_SWEEP_BODY, {}),
}

PLOT_COLUMNS = {"n", "gamma", "infid_target", "pred_infid_target", "infid_bplus", "pred_infid_bplus", "sqrtn_arg_alpha", "pred_sqrtn_arg_alpha"}


def cmd_plots(cfg: SweepConfig) -> list[Path]:
    out_dir = Path(cfg.output_path or ".")
    csv_path = Path(cfg.input_path) if cfg.input_path else out_dir / "spectrum.csv"
    if not csv_path.is_file():
        raise UsageError(f"spectrum CSV not found: {csv_path}")
    with open(csv_path, newline="") as fh:
        header = next(csv.reader(fh), [])
    missing = PLOT_COLUMNS - set(header)
    if missing:
        raise UsageError(f"{csv_path} lacks columns {sorted(missing)}")
    out_dir.mkdir(parents=True, exist_ok=True)
    rel = Path(os.path.relpath(csv_path.resolve(), out_dir.resolve()))
    written = []
    for name, (title, body, params) in PLOTS.items():
        text = _PLOT_TEMPLATE.format(
            title=title, csv_name=rel.name, csv_rel=rel.as_posix(), body=body.format(**params) if params else body
        )
        path = out_dir / name
        path.write_text(text)
        written.append(path)
    return written


# -- entry point -----------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.schema:
        sys.stdout.write(json.dumps(SCHEMA, indent=1) + "\n")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = config_from_args(args)
        if args.command == "spectrum":
            emit(render_rows(cmd_spectrum(cfg), SPECTRUM_COLUMNS, cfg.format), cfg.output_path)
        elif args.command == "evolve":
            rows, curves = cmd_evolve(cfg)
            emit(render_rows(rows, EVOLVE_COLUMNS, cfg.format), cfg.output_path)
            if cfg.curve_path:
                emit(render_rows(curves, CURVE_COLUMNS, cfg.format), cfg.curve_path)
        elif args.command == "crosscheck":
            report = run_suite(cfg)
            emit(json.dumps(report, indent=1) + "\n", cfg.output_path)
            if not report["passed"]:
                failed = [c["name"] for c in report["checks"] if c["passed"] is False]
                print("failed: " + ", ".join(failed), file=sys.stderr)
                return EXIT_FAIL
        elif args.command == "plots":
            for path in cmd_plots(cfg):
                print(path)
    except (UsageError, DomainError) as exc:
        print(f"tfgrover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
