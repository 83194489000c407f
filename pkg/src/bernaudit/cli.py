"""Command-line front end: sweep drivers and report serialization.

Reports are deterministic: fixed cell ordering (label, n, x, y, n2), floats
serialized via repr, JSON keys sorted, no timestamps.  Two runs with the
same configuration produce byte-identical files.

CSV reports use one fixed column set per family:
  bound/uniform/derivative/bivariate: label,x,y,n1,n2,delta,j,bound,ratio,pass
  sharpness traces:                   label,x,n,delta,j,ratio,asymptote,residual_times_n
  subgaussian maps reuse the bound columns with delta=lhs, bound=rhs,
  ratio=margin (lhs-rhs) and x,y,n1 holding the cell coordinates.
A cell whose quadrature fails to converge is recorded with empty j/bound
columns and pass=nc rather than aborting the sweep.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from . import __version__
from .bernstein import INF, error_exact
from .bounds import (
    PASS_SLACK,
    derivative_bound,
    bivariate_bound,
    uniform_bound,
    uniform_bound_theta_half,
    upper_bound,
)
from .functions import (
    ScalarFunction,
    corpus_factorable,
    corpus_standard,
    load_function_csv,
    load_modulus_csv,
    trial_G,
    trial_g,
)
from .numerics import QuadratureConfig, QuadratureConvergenceError
from .sharpness import (
    bivariate_ratio_check,
    bojanic_residual_trace,
    derivative_trial_check,
    ratio_trace,
)
from . import subgaussian as sg

SCHEMA = "bernaudit-report/1"

BOUND_COLUMNS = ["label", "x", "y", "n1", "n2", "delta", "j", "bound", "ratio", "pass"]
TRACE_COLUMNS = ["label", "x", "n", "delta", "j", "ratio", "asymptote",
                 "residual_times_n"]


def report_schema_version() -> str:
    return SCHEMA


@dataclass
class SweepConfig:
    command: str
    function_selector: Optional[str] = None
    n_set: List[Union[int, float]] = field(default_factory=list)
    x_grid: List[float] = field(default_factory=list)
    output_format: str = "csv"
    output_path: Optional[str] = None
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    fail_on_violation: bool = False
    # command-specific extras
    modulus_csv: Optional[str] = None
    n2_set: Optional[List[Union[int, float]]] = None
    y_grid: Optional[List[float]] = None
    experiment: Optional[str] = None
    t_value: float = 0.5
    x_value: float = 0.5
    y_value: float = 0.5
    audit: Optional[str] = None
    p_values: Optional[List[float]] = None
    lambda_grid: Optional[List[float]] = None
    u_grid: Optional[List[float]] = None
    m_max: int = 5
    alpha: float = 0.5
    keep_margins: bool = False

    def __post_init__(self):
        if self.command not in {"bound", "uniform", "derivative", "bivariate",
                                "sharpness", "subgaussian"}:
            raise ValueError(f"unknown command {self.command!r}")
        if any(not (0.0 <= x <= 1.0) for x in self.x_grid):
            raise ValueError("x grid points must lie in [0, 1]")
        if self.command != "subgaussian" and not self.n_set:
            raise ValueError("n set must be nonempty")
        if self.output_format not in {"csv", "json"}:
            raise ValueError(f"unknown output format {self.output_format!r}")


# ---- parsing helpers ----


def parse_n_spec(spec: str) -> List[int]:
    """"a..b" is the doubling ladder a, 2a, 4a, ... capped at b; commas list
    explicit degrees."""
    spec = spec.strip()
    if ".." in spec:
        lo_s, hi_s = spec.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if lo < 1 or hi < lo:
            raise ValueError(f"bad degree range {spec!r}")
        out = []
        n = lo
        while n <= hi:
            out.append(n)
            n *= 2
        return out
    out = [int(tok) for tok in spec.split(",") if tok.strip()]
    if not out or any(n < 1 for n in out):
        raise ValueError(f"bad degree list {spec!r}")
    if sorted(set(out)) != out:
        raise ValueError(f"degree list must be strictly increasing: {spec!r}")
    return out


def parse_x_grid(spec: str) -> List[float]:
    """An integer R yields the uniform grid k/(R+1), k = 0..R+1 (R interior
    points plus both endpoints); commas list explicit abscissae."""
    spec = spec.strip()
    if "," in spec or "." in spec:
        pts = [float(tok) for tok in spec.split(",") if tok.strip()]
        if not pts:
            raise ValueError(f"bad x grid {spec!r}")
        return pts
    r = int(spec)
    if r < 1:
        raise ValueError(f"x grid resolution must be >= 1, got {spec!r}")
    return [k / (r + 1.0) for k in range(r + 2)]


def parse_linspace(spec: str) -> List[float]:
    """"min:max:count" inclusive grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected min:max:count, got {spec!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1 or hi < lo:
        raise ValueError(f"bad grid {spec!r}")
    return [float(v) for v in np.linspace(lo, hi, count)]


def _float_list(spec: str) -> List[float]:
    out = [float(tok) for tok in spec.split(",") if tok.strip()]
    if not out:
        raise ValueError(f"empty list {spec!r}")
    return out


_TRIAL_PREFIXES = ("g_", "G_")


def resolve_functions(selector: str, modulus_csv: Optional[str] = None) -> list:
    """Corpus name, corpus label, trial label g_t / G_t, or a CSV path."""
    if selector == "standard":
        return corpus_standard()
    if selector.lower().endswith(".csv"):
        f = load_function_csv(selector)
        if modulus_csv is not None:
            return [ScalarFunction(eval=f.eval, label=f.label,
                                   exact_modulus=load_modulus_csv(modulus_csv))]
        return [f]
    for entry in corpus_standard():
        if entry.label == selector:
            return [entry]
    for prefix, maker in zip(_TRIAL_PREFIXES, (trial_g, trial_G)):
        if selector.startswith(prefix):
            try:
                return [maker(float(selector[len(prefix):]))]
            except ValueError:
                break
    raise ValueError(
        f"unknown function selector {selector!r}: expected 'standard', a corpus "
        "label, g_<t>, G_<t>, or a .csv path"
    )


# ---- serialization ----


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def _degree_repr(n) -> Union[int, str, None]:
    if n is None:
        return None
    if n == INF:
        return "inf"
    return int(n)


def _quad_dict(cfg: QuadratureConfig) -> dict:
    return {
        "truncation_z": cfg.truncation_z,
        "rel_tol": cfg.rel_tol,
        "max_subdivisions": cfg.max_subdivisions,
    }


def _header_lines(command: str, cfg: QuadratureConfig, grid_desc: str,
                  extra: Sequence[str] = ()) -> List[str]:
    lines = [
        f"# bernaudit {__version__}",
        f"# schema: {SCHEMA}",
        f"# command: {command}",
        (f"# quadrature: truncation_z={_fmt(cfg.truncation_z)} "
         f"rel_tol={_fmt(cfg.rel_tol)} max_subdivisions={cfg.max_subdivisions}"),
        f"# grid: {grid_desc}",
    ]
    lines.extend(extra)
    return lines


def _write_csv(path: str, header_lines: Sequence[str], columns: Sequence[str],
               rows: Sequence[dict]) -> None:
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(line + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row.get(c)) for c in columns) + "\n")


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def _sanitize_json(obj):
    """JSON has no inf/nan literals; encode them as strings."""
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return _fmt(obj) if math.isinf(obj) else "nan"
        return obj
    if isinstance(obj, dict):
        return {k: _sanitize_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize_json(v) for v in obj]
    return obj


def _record_row(rec) -> dict:
    return {
        "label": rec.label,
        "x": rec.x,
        "y": rec.y,
        "n1": _degree_repr(rec.n),
        "n2": _degree_repr(rec.n2),
        "delta": rec.delta,
        "j": rec.j,
        "bound": rec.bound,
        "ratio": rec.ratio,
        "pass": rec.passed,
    }


def _sentinel_row(label, x, n, delta, y=None, n2=None) -> dict:
    return {
        "label": label, "x": x, "y": y,
        "n1": _degree_repr(n), "n2": _degree_repr(n2),
        "delta": delta, "j": None, "bound": None, "ratio": None,
        "pass": "nc",
    }


def _interior(x: Optional[float]) -> bool:
    # Rows without a grid coordinate (uniform sweeps) have no endpoint issue.
    return x is None or 0.0 < x < 1.0


def _sup_ratio(rows: Sequence[dict]) -> Optional[float]:
    best = None
    for row in rows:
        if row["ratio"] is None or not isinstance(row["ratio"], float):
            continue
        if not _interior(row["x"]) or (row["y"] is not None and not _interior(row["y"])):
            continue
        if best is None or row["ratio"] > best:
            best = row["ratio"]
    return best


def _count_violations(rows: Sequence[dict]) -> int:
    return sum(1 for row in rows if row["pass"] is False)


# ---- sweep drivers ----


def _run_bound(config: SweepConfig):
    functions = resolve_functions(config.function_selector, config.modulus_csv)
    rows = []
    for f in sorted(functions, key=lambda f: f.label):
        for n in config.n_set:
            for x in config.x_grid:
                try:
                    rec = upper_bound(f, n, x, config.quadrature)
                except QuadratureConvergenceError:
                    rows.append(_sentinel_row(f.label, x, n, error_exact(f, n, x)))
                    continue
                rows.append(_record_row(rec))
    grid = (f"functions={ [f.label for f in sorted(functions, key=lambda f: f.label)] }, "
            f"n={config.n_set}, x={len(config.x_grid)} points")
    return rows, grid


def _run_uniform(config: SweepConfig):
    """Per (f, n): delta = sup of the exact error over interior grid x;
    bound = the printed x-free estimate; j = the companion 2 J at theta=1/2;
    ratio = bound / j, the constant-factor gap between the two forms."""
    functions = resolve_functions(config.function_selector, config.modulus_csv)
    rows = []
    for f in sorted(functions, key=lambda f: f.label):
        m = f.exact_modulus
        if m is None:
            raise ValueError(f"{f.label}: the uniform sweep needs an exact modulus")
        for n in config.n_set:
            sup_delta = max(error_exact(f, n, x)
                            for x in config.x_grid if _interior(x))
            try:
                printed = uniform_bound(m, n, config.quadrature)
                companion = uniform_bound_theta_half(m, n, config.quadrature)
            except QuadratureConvergenceError:
                rows.append(_sentinel_row(f.label, None, n, sup_delta))
                continue
            passed = sup_delta <= printed + PASS_SLACK * (1.0 + printed)
            rows.append({
                "label": f.label, "x": None, "y": None,
                "n1": _degree_repr(n), "n2": None,
                "delta": sup_delta, "j": companion, "bound": printed,
                "ratio": printed / companion if companion else None,
                "pass": passed,
            })
    grid = (f"functions={ [f.label for f in sorted(functions, key=lambda f: f.label)] }, "
            f"n={config.n_set}, sup over {sum(1 for x in config.x_grid if _interior(x))} "
            "interior x points")
    return rows, grid


def _run_derivative(config: SweepConfig):
    functions = [f for f in resolve_functions(config.function_selector,
                                              config.modulus_csv)
                 if f.derivative is not None and f.derivative_modulus is not None]
    if not functions:
        raise ValueError("no selected function carries a derivative and its modulus")
    rows = []
    for f in sorted(functions, key=lambda f: f.label):
        for n in config.n_set:
            for x in config.x_grid:
                try:
                    rec = derivative_bound(f, n, x, config.quadrature)
                except QuadratureConvergenceError:
                    rows.append(_sentinel_row(f.label, x, n, math.nan))
                    continue
                rows.append(_record_row(rec))
    grid = (f"functions={ [f.label for f in sorted(functions, key=lambda f: f.label)] }, "
            f"n={config.n_set}, x={len(config.x_grid)} points")
    return rows, grid


def _run_bivariate(config: SweepConfig):
    corpus = corpus_factorable()
    n2_set = config.n2_set or config.n_set
    y_grid = config.y_grid or config.x_grid
    rows = []
    for f in sorted(corpus, key=lambda f: f.label):
        for n1 in config.n_set:
            for x in config.x_grid:
                for n2 in n2_set:
                    for y in y_grid:
                        try:
                            rec = bivariate_bound(f, n1, n2, x, y, config.quadrature)
                        except QuadratureConvergenceError:
                            rows.append(_sentinel_row(f.label, x, n1, math.nan,
                                                      y=y, n2=n2))
                            continue
                        rows.append(_record_row(rec))
    grid = (f"functions={ [f.label for f in sorted(corpus, key=lambda f: f.label)] }, "
            f"n1={config.n_set}, n2={n2_set}, "
            f"x={len(config.x_grid)} points, y={len(y_grid)} points")
    return rows, grid


def _trace_rows(trace) -> List[dict]:
    rows = []
    for i, n in enumerate(trace.n_values):
        rows.append({
            "label": trace.label,
            "x": trace.x,
            "n": n,
            "delta": trace.deltas[i],
            "j": None if trace.js is None else trace.js[i],
            "ratio": trace.ratios[i],
            "asymptote": None if trace.asymptotes is None else trace.asymptotes[i],
            "residual_times_n": (None if trace.asymptote_residuals is None
                                 else trace.asymptote_residuals[i]),
        })
    return rows


def _run_sharpness(config: SweepConfig):
    exp = config.experiment
    cfg = config.quadrature
    if exp == "ratio":
        trace = ratio_trace(trial_g(config.t_value), config.x_value,
                            config.n_set, cfg)
    elif exp == "bojanic":
        trace = bojanic_residual_trace(config.x_value, config.n_set)
    elif exp == "bivariate":
        trace = bivariate_ratio_check(config.t_value, config.x_value,
                                      config.y_value, config.n_set, cfg)
    elif exp == "derivative-trial":
        trace = derivative_trial_check(config.t_value, config.x_value,
                                       config.n_set, cfg)
    else:
        raise ValueError(f"unknown sharpness experiment {exp!r}")
    grid = (f"experiment={exp}, t={_fmt(config.t_value)}, x={_fmt(config.x_value)}, "
            f"n={config.n_set}")
    return trace, grid


def _run_subgaussian(config: SweepConfig):
    audit = config.audit
    p_values = config.p_values if config.p_values else sg.default_p_grid()
    n_values = config.n_set or sg.default_n_grid()
    if audit == "ssub":
        density = sg.PolyDensity(config.alpha)
        _, _, report = sg.poly_density_stats(
            density, lambda_grid=config.lambda_grid,
            keep_margins=config.keep_margins)
        return report
    if audit in {"cosh", "moments", "tail", "bk"}:
        return sg.audit_grid(audit, n_values, p_values,
                             lambdas=config.lambda_grid, u_grid=config.u_grid,
                             m_max=config.m_max, keep_margins=config.keep_margins)
    raise ValueError(f"unknown subgaussian audit {audit!r}")


def _violation_rows(report) -> List[dict]:
    """Map violation cells onto the fixed bound columns for CSV output.

    Default output is the violation map: every failing cell, or the worst
    (passing) cell when nothing fails.  --keep-margins switches to the full
    per-cell dump.
    """
    if report.all_margins is not None:
        cells = report.all_margins
    elif report.violations:
        cells = list(report.violations)
    else:
        cells = [report.worst] if report.worst is not None else []
    rows = []
    for cell in cells:
        params = cell.parameters
        inner = params.get("lambda", params.get("u", params.get("m")))
        rows.append({
            "label": report.inequality_id,
            "x": params.get("p", params.get("alpha")),
            "y": inner,
            "n1": params.get("n"),
            "n2": None,
            "delta": cell.lhs,
            "j": None,
            "bound": cell.rhs,
            "ratio": cell.margin,
            "pass": cell.margin <= sg.DEFAULT_ATOL,
        })
    return rows


# ---- entry points ----


def _output_path(config: SweepConfig) -> str:
    if config.output_path:
        return config.output_path
    outdir = os.environ.get("BERNAUDIT_OUTDIR", ".")
    ext = "csv" if config.output_format == "csv" else "json"
    name = config.command
    if config.command == "subgaussian" and config.audit:
        name = f"{config.command}_{config.audit}"
    if config.command == "sharpness" and config.experiment:
        name = f"{config.command}_{config.experiment}"
    return os.path.join(outdir, f"bernaudit_{name}.{ext}")


def run(config: SweepConfig) -> int:
    """Execute one sweep, write one report file, return the exit status."""
    path = _output_path(config)
    cfg = config.quadrature
    if config.command in {"bound", "uniform", "derivative", "bivariate"}:
        driver = {"bound": _run_bound, "uniform": _run_uniform,
                  "derivative": _run_derivative, "bivariate": _run_bivariate}
        rows, grid = driver[config.command](config)
        violations = _count_violations(rows)
        sup_ratio = _sup_ratio(rows)
        if config.output_format == "csv":
            extra = [f"# sup_ratio_interior: {_fmt(sup_ratio)}",
                     "# endpoint cells (x or y in {0,1}) carry an empty ratio"]
            _write_csv(path, _header_lines(config.command, cfg, grid, extra),
                       BOUND_COLUMNS, rows)
        else:
            _write_json(path, _sanitize_json({
                "schema": SCHEMA, "tool_version": __version__,
                "command": config.command, "quadrature": _quad_dict(cfg),
                "grid": grid, "sup_ratio_interior": sup_ratio,
                "violations": violations, "records": rows,
            }))
    elif config.command == "sharpness":
        trace, grid = _run_sharpness(config)
        violations = 0
        if config.output_format == "csv":
            extra = [f"# extrapolated_limit: {_fmt(trace.extrapolated_limit)}"]
            _write_csv(path, _header_lines(config.command, cfg, grid, extra),
                       TRACE_COLUMNS, _trace_rows(trace))
        else:
            _write_json(path, _sanitize_json({
                "schema": SCHEMA, "tool_version": __version__,
                "command": config.command, "quadrature": _quad_dict(cfg),
                "grid": grid,
                "trace": {
                    "label": trace.label, "x": trace.x,
                    "n_values": trace.n_values, "deltas": trace.deltas,
                    "js": trace.js, "ratios": trace.ratios,
                    "extrapolated_limit": trace.extrapolated_limit,
                    "asymptotes": trace.asymptotes,
                    "asymptote_residuals": trace.asymptote_residuals,
                },
            }))
    else:  # subgaussian
        report = _run_subgaussian(config)
        violations = report.cells_violating
        if config.output_format == "csv":
            extra = [f"# inequality: {report.inequality_id}",
                     f"# cells_total: {report.cells_total}",
                     f"# cells_violating: {report.cells_violating}",
                     "# columns: x=p|alpha, y=lambda|u|m, delta=lhs, bound=rhs, ratio=margin"]
            _write_csv(path, _header_lines(config.command, cfg, report.grid, extra),
                       BOUND_COLUMNS, _violation_rows(report))
        else:
            _write_json(path, _sanitize_json({
                "schema": SCHEMA, "tool_version": __version__,
                "command": config.command, "quadrature": _quad_dict(cfg),
                "report": report.to_dict(),
            }))
    if config.fail_on_violation and violations > 0:
        return 1
    return 0


def _add_common(parser: argparse.ArgumentParser, default_n: str,
                default_x: Optional[str] = None) -> None:
    parser.add_argument("--n", default=default_n,
                        help="degrees: 'a..b' doubling ladder or comma list")
    if default_x is not None:
        parser.add_argument("--x-grid", default=default_x,
                            help="resolution R (grid k/(R+1)) or comma list")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--out", default=None, help="output file path")
    parser.add_argument("--truncation-z", type=float, default=10.0)
    parser.add_argument("--rel-tol", type=float, default=1e-10)
    parser.add_argument("--max-subdivisions", type=int, default=2 ** 20)
    parser.add_argument("--fail-on-violation", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bernaudit",
        description="Bernstein approximation error bounds: sweeps and audits",
    )
    parser.add_argument("--version", action="version",
                        version=f"bernaudit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="pointwise error vs 2J sweep")
    p_bound.add_argument("--corpus", dest="selector", default=None,
                         help="corpus name (standard)")
    p_bound.add_argument("--function", dest="selector_fn", default=None,
                         help="corpus label, g_<t>, G_<t>, or CSV path")
    p_bound.add_argument("--modulus-csv", default=None)
    _add_common(p_bound, "2..256", "99")

    p_uni = sub.add_parser("uniform", help="x-free bound vs sup error")
    p_uni.add_argument("--corpus", dest="selector", default=None)
    p_uni.add_argument("--function", dest="selector_fn", default=None)
    p_uni.add_argument("--modulus-csv", default=None)
    _add_common(p_uni, "2..256", "99")

    p_der = sub.add_parser("derivative", help="derivative error bound sweep")
    p_der.add_argument("--corpus", dest="selector", default=None)
    p_der.add_argument("--function", dest="selector_fn", default=None)
    p_der.add_argument("--modulus-csv", default=None)
    _add_common(p_der, "2..128", "9")

    p_biv = sub.add_parser("bivariate", help="square error vs 4J sweep")
    p_biv.add_argument("--n2", default=None, help="second-axis degrees")
    p_biv.add_argument("--y-grid", default=None)
    _add_common(p_biv, "2..64", "9")

    p_sharp = sub.add_parser("sharpness", help="ratio and asymptote traces")
    p_sharp.add_argument("--experiment", required=True,
                         choices=["ratio", "bojanic", "bivariate",
                                  "derivative-trial"])
    p_sharp.add_argument("--t", type=float, default=0.5)
    p_sharp.add_argument("--x", type=float, default=0.5)
    p_sharp.add_argument("--y", type=float, default=0.5)
    _add_common(p_sharp, "16..16384")

    p_sg = sub.add_parser("subgaussian", help="moment/MGF/tail violation maps")
    p_sg.add_argument("--audit", required=True,
                      choices=["cosh", "moments", "tail", "bk", "ssub"])
    p_sg.add_argument("--p", default=None, help="comma list of p values")
    p_sg.add_argument("--p-default-grid", action="store_true",
                      help="use the default p grid with mirror images")
    p_sg.add_argument("--lambda-grid", default=None, help="min:max:count")
    p_sg.add_argument("--u-grid", default=None, help="min:max:count")
    p_sg.add_argument("--m-max", type=int, default=5)
    p_sg.add_argument("--alpha", type=float, default=0.5)
    p_sg.add_argument("--keep-margins", action="store_true")
    _add_common(p_sg, "1..256")
    return parser


def _config_from_args(args: argparse.Namespace) -> SweepConfig:
    quad = QuadratureConfig(args.truncation_z, args.rel_tol,
                            args.max_subdivisions)
    common = dict(
        command=args.command,
        n_set=parse_n_spec(args.n),
        output_format=args.format,
        output_path=args.out,
        quadrature=quad,
        fail_on_violation=args.fail_on_violation,
    )
    if args.command in {"bound", "uniform", "derivative"}:
        selector = args.selector_fn or args.selector
        if args.selector_fn is None and args.selector is None:
            selector = "standard"
        return SweepConfig(
            function_selector=selector,
            x_grid=parse_x_grid(args.x_grid),
            modulus_csv=args.modulus_csv,
            **common,
        )
    if args.command == "bivariate":
        return SweepConfig(
            x_grid=parse_x_grid(args.x_grid),
            n2_set=parse_n_spec(args.n2) if args.n2 else None,
            y_grid=parse_x_grid(args.y_grid) if args.y_grid else None,
            **common,
        )
    if args.command == "sharpness":
        return SweepConfig(
            experiment=args.experiment,
            t_value=args.t,
            x_value=args.x,
            y_value=args.y,
            **common,
        )
    # subgaussian
    p_values = None
    if args.p:
        p_values = _float_list(args.p)
    elif args.p_default_grid:
        p_values = sg.default_p_grid()
    return SweepConfig(
        audit=args.audit,
        p_values=p_values,
        lambda_grid=parse_linspace(args.lambda_grid) if args.lambda_grid else None,
        u_grid=parse_linspace(args.u_grid) if args.u_grid else None,
        m_max=args.m_max,
        alpha=args.alpha,
        keep_margins=args.keep_margins,
        **common,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return run(config)
    except (ValueError, OSError) as exc:
        print(f"bernaudit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
