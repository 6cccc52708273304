"""Command-line front end: single computations, k sweeps, order-convergence
tables, and the built-in validation suite.

Output is deterministic: floats are printed with 17 significant digits and
rows are emitted in ascending k regardless of worker scheduling, so a sweep
re-run with the same config is byte-identical.

Exit codes: 0 success, 1 validation failures, 2 configuration errors,
3 numerical failures (the module error name appears in the message).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .controls import Controls, DEFAULT_CONTROLS
from .core import amplitudes_from_transfer, det2, max_abs
from .corrections import transfer_matrix_order_n
from .errors import AdiaScatterError, ConfigError
from .exact import transfer_matrix_exact
from .hamiltonian import ScatteringContext
from .potentials import make_potential
from .semiclassical import transfer_matrix_semiclassical

CSV_COLUMNS = ("k", "ReT", "ImT", "ReRl", "ImRl", "ReRr", "ImRr",
               "absT2", "absRl2", "absRr2", "detM_residual",
               "method", "order", "error_estimate")


def fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0   # normalize -0.0
    return f"{x:.17g}"


@dataclass
class RunConfig:
    potential_kind: str = "free"
    potential_params: dict = field(default_factory=dict)
    k: Optional[float] = None
    k_min: Optional[float] = None
    k_max: Optional[float] = None
    k_count: int = 1
    k_scale: str = "linear"
    method: str = "exact"               # exact | semiclassical | order-n
    order: int = 1
    tol_ode: float = DEFAULT_CONTROLS.tol_ode_rel
    tol_quad: float = DEFAULT_CONTROLS.tol_quad
    out_format: str = "csv"             # csv | json
    out: Optional[str] = None

    def validate(self) -> None:
        if self.method not in ("exact", "semiclassical", "order-n"):
            raise ConfigError(f"unknown method {self.method!r}")
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.out_format!r}")
        if self.order < 0:
            raise ConfigError("order must be >= 0")
        for name, tol in (("tol-ode", self.tol_ode), ("tol-quad", self.tol_quad)):
            if not (0.0 < tol < 1.0):
                raise ConfigError(f"{name} must lie in (0, 1)")
        for kv in self.k_values():
            if not (kv > 0 and math.isfinite(kv)):
                raise ConfigError("k values must be strictly positive")

    def k_values(self) -> list[float]:
        if self.k is not None:
            return [float(self.k)]
        if self.k_min is None or self.k_max is None:
            raise ConfigError("either --k or --k-min/--k-max must be given")
        if self.k_count < 1:
            raise ConfigError("--k-count must be >= 1")
        if self.k_count == 1:
            return [float(self.k_min)]
        if self.k_scale == "log":
            if self.k_min <= 0:
                raise ConfigError("log spacing needs positive k-min")
            return list(np.geomspace(self.k_min, self.k_max, self.k_count))
        if self.k_scale != "linear":
            raise ConfigError(f"unknown k-scale {self.k_scale!r}")
        return list(np.linspace(self.k_min, self.k_max, self.k_count))

    def controls(self) -> Controls:
        return DEFAULT_CONTROLS.with_(tol_ode_rel=self.tol_ode,
                                      tol_ode_abs=min(self.tol_ode * 1e-2, 1e-12),
                                      tol_quad=self.tol_quad)


def _parse_param_value(text: str):
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        return text


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        pot = data.get("potential", {})
        cfg.potential_kind = pot.get("kind", cfg.potential_kind)
        cfg.potential_params = {key: _parse_param_value(str(val))
                                for key, val in pot.get("params", {}).items()}
        for name in ("k", "k_min", "k_max", "k_count", "k_scale", "method",
                     "order", "tol_ode", "tol_quad", "out"):
            if name in data:
                setattr(cfg, name, data[name])
        if "format" in data:
            cfg.out_format = data["format"]
    # flags override the file
    if args.potential is not None:
        cfg.potential_kind = args.potential
    for item in args.param or []:
        if "=" not in item:
            raise ConfigError(f"--param needs key=value, got {item!r}")
        key, _, val = item.partition("=")
        cfg.potential_params[key] = _parse_param_value(val)
    if args.k is not None:
        cfg.k = args.k
    if args.k_min is not None:
        cfg.k_min = args.k_min
        cfg.k = None
    if args.k_max is not None:
        cfg.k_max = args.k_max
        cfg.k = None
    if args.k_count is not None:
        cfg.k_count = args.k_count
    if args.k_scale is not None:
        cfg.k_scale = args.k_scale
    if args.method is not None:
        cfg.method = args.method
    if args.order is not None:
        cfg.order = args.order
    if args.tol_ode is not None:
        cfg.tol_ode = args.tol_ode
    if args.tol_quad is not None:
        cfg.tol_quad = args.tol_quad
    if args.format is not None:
        cfg.out_format = args.format
    if args.out is not None:
        cfg.out = args.out
    cfg.validate()
    return cfg


def compute_point(cfg: RunConfig, k: float) -> dict:
    """One (potential, k, method) evaluation as a plain dict."""
    potential = make_potential(cfg.potential_kind, dict(cfg.potential_params))
    controls = cfg.controls()
    ctx = ScatteringContext(k, potential, controls)
    term_norms: list[float] = []
    if cfg.method == "exact":
        res = transfer_matrix_exact(ctx, controls)
        M, est, order_str = res.M, res.error_estimate, ""
    elif cfg.method == "semiclassical":
        M = transfer_matrix_semiclassical(ctx)
        est, order_str = controls.tol_quad, "0"
    else:
        series = transfer_matrix_order_n(ctx, cfg.order, controls)
        M = series.M
        est = series.error_estimate
        order_str = str(cfg.order)
        term_norms = [max_abs(t.A) for t in series.terms]
    amps = amplitudes_from_transfer(M, controls.singularity_tol)
    return {
        "k": k,
        "T": amps.T, "Rl": amps.Rl, "Rr": amps.Rr,
        "absT2": amps.abs_T2, "absRl2": amps.abs_Rl2, "absRr2": amps.abs_Rr2,
        "detM_residual": abs(det2(M) - 1.0),
        "method": cfg.method, "order": order_str,
        "error_estimate": est,
        "M": M,
        "term_norms": term_norms,
    }


def row_to_csv(row: dict) -> str:
    vals = [fmt(row["k"]),
            fmt(row["T"].real), fmt(row["T"].imag),
            fmt(row["Rl"].real), fmt(row["Rl"].imag),
            fmt(row["Rr"].real), fmt(row["Rr"].imag),
            fmt(row["absT2"]), fmt(row["absRl2"]), fmt(row["absRr2"]),
            fmt(row["detM_residual"]),
            row["method"], row["order"],
            fmt(row["error_estimate"])]
    return ",".join(vals)


def row_to_json_obj(row: dict) -> dict:
    M = row["M"]
    obj = {col: row[col] for col in ("k", "absT2", "absRl2", "absRr2",
                                     "detM_residual", "method", "order",
                                     "error_estimate")}
    for name in ("T", "Rl", "Rr"):
        obj["Re" + name] = row[name].real
        obj["Im" + name] = row[name].imag
    obj["M"] = [[{"re": M[i, j].real, "im": M[i, j].imag} for j in (0, 1)]
                for i in (0, 1)]
    obj["term_norms"] = row["term_norms"]
    return obj


class _Output:
    def __init__(self, path: Optional[str]):
        self.path = path
        self.handle = open(path, "w", encoding="utf-8", newline="\n") if path \
            else sys.stdout

    def write(self, text: str) -> None:
        self.handle.write(text)

    def close(self) -> None:
        if self.path:
            self.handle.close()


def _pool_size(npoints: int) -> int:
    cap = os.environ.get("ADIA_THREADS")
    try:
        cap_val = max(1, int(cap)) if cap else 4
    except ValueError:
        raise ConfigError(f"ADIA_THREADS must be an integer, got {cap!r}")
    return max(1, min(cap_val, os.cpu_count() or 1, npoints))


def cmd_compute(cfg: RunConfig) -> int:
    ks = cfg.k_values()
    if len(ks) != 1:
        raise ConfigError("compute expects a single k; use sweep for ranges")
    row = compute_point(cfg, ks[0])
    out = _Output(cfg.out)
    try:
        if cfg.out_format == "csv":
            out.write(",".join(CSV_COLUMNS) + "\n")
            out.write(row_to_csv(row) + "\n")
        else:
            out.write(json.dumps(row_to_json_obj(row), indent=2, sort_keys=True) + "\n")
    finally:
        out.close()
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    ks = sorted(cfg.k_values())
    out = _Output(cfg.out)
    rows_json = []
    code = 0
    try:
        if cfg.out_format == "csv":
            out.write(",".join(CSV_COLUMNS) + "\n")
        workers = _pool_size(len(ks))
        try:
            if workers > 1:
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    futures = [pool.submit(compute_point, cfg, k) for k in ks]
                    for fut in futures:
                        row = fut.result()
                        if cfg.out_format == "csv":
                            out.write(row_to_csv(row) + "\n")
                        else:
                            rows_json.append(row_to_json_obj(row))
            else:
                for k in ks:
                    row = compute_point(cfg, k)
                    if cfg.out_format == "csv":
                        out.write(row_to_csv(row) + "\n")
                    else:
                        rows_json.append(row_to_json_obj(row))
        except AdiaScatterError as exc:
            if cfg.out_format == "csv":
                out.write("# ABORTED\n")
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            code = 3
        if cfg.out_format == "json" and code == 0:
            out.write(json.dumps(rows_json, indent=2, sort_keys=True) + "\n")
    finally:
        out.close()
    return code


def cmd_converge(cfg: RunConfig) -> int:
    ks = cfg.k_values()
    if len(ks) != 1:
        raise ConfigError("converge expects a single k")
    k = ks[0]
    potential = make_potential(cfg.potential_kind, dict(cfg.potential_params))
    controls = cfg.controls()
    ctx = ScatteringContext(k, potential, controls)
    series = transfer_matrix_order_n(ctx, cfg.order, controls, compare_exact=True)
    out = _Output(cfg.out)
    try:
        out.write("k,order,residual,term_norm,method\n")
        for j, resid in enumerate(series.residual_norms):
            term_norm = max_abs(series.terms[j - 1].A) if j >= 1 else 0.0
            out.write(",".join([fmt(k), str(j), fmt(resid), fmt(term_norm),
                                series.method]) + "\n")
    finally:
        out.close()
    return 0


def cmd_validate(corrupt: Optional[str] = None,
                 only: Optional[list[str]] = None) -> int:
    from . import validation
    results = validation.run_all(corrupt=corrupt, only=only)
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        ok = ok and res.passed
        print(f"[{status}] {res.cid}: {res.name} -- {res.detail}")
    print("validation:", "all criteria passed" if ok else "FAILURES present")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adiascatter",
        description="Transfer matrices of complex 1D scattering potentials: "
                    "exact, semiclassical, and adiabatic-series methods.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--potential", help="free | rectangular | gaussian | "
                                           "exp-profile | sampled")
        p.add_argument("--param", action="append", metavar="KEY=VAL",
                       help="potential parameter (repeatable), e.g. v0=0.3+0.1j")
        p.add_argument("--k", type=float, help="single wavenumber")
        p.add_argument("--k-min", type=float)
        p.add_argument("--k-max", type=float)
        p.add_argument("--k-count", type=int)
        p.add_argument("--k-scale", choices=("linear", "log"))
        p.add_argument("--method", choices=("exact", "semiclassical", "order-n"))
        p.add_argument("--order", type=int)
        p.add_argument("--tol-ode", type=float)
        p.add_argument("--tol-quad", type=float)
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--config", help="JSON config file; flags override it")

    for name, help_text in (("compute", "single computation"),
                            ("sweep", "one row per k over a range"),
                            ("converge", "order-by-order residual table")):
        add_common(sub.add_parser(name, help=help_text))

    val = sub.add_parser("validate", help="run the acceptance-criteria suite")
    val.add_argument("--corrupt", help=argparse.SUPPRESS)  # negative-control hook
    val.add_argument("--only", action="append", help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(corrupt=args.corrupt, only=args.only)
        cfg = _config_from_args(args)
        if args.command == "compute":
            return cmd_compute(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        return cmd_converge(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except AdiaScatterError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
