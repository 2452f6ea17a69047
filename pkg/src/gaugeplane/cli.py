"""Command-line front end driven by a TOML job file.

Exit codes: 0 success, 2 job/flag parse error, 3 capability error,
4 numeric failure, 5 round-trip hypotheses not met.  Failures print one JSON
error record on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import FORMAT_VERSION, __version__
from .arclength import ArcLengthTable
from .associated import METHODS, associated, polygon_polar
from .curvature import profile
from .curves import circle, ellipse, lissajous, segment, trig_polynomial
from .errors import GaugeError, NotApplicableError
from .evolute import LIFT_SAMPLES, SampledCurve, check_evolute_of_involute, check_involute_of_evolute, evolute, involute
from .gauges import EuclideanGauge, PolygonGauge, RandersGauge, validate
from .output import csv_text, emit_svg, write_text

COMMANDS = (
    "gauge-eval", "associated", "polar", "curvature-profile", "evolute",
    "involute", "roundtrip-evolute-involute", "roundtrip-involute-evolute", "validate",
)
ROUND_TRIPS = {"roundtrip-evolute-involute", "roundtrip-involute-evolute"}
NEEDS_CURVE = {"curvature-profile", "evolute", "involute"} | ROUND_TRIPS

EXIT_OK, EXIT_PARSE, EXIT_CAPABILITY, EXIT_NUMERIC, EXIT_NOT_APPLICABLE = 0, 2, 3, 4, 5


class JobError(Exception):
    """Malformed or incomplete job specification."""


@dataclass
class JobSpec:
    command: str
    gauge: dict
    curve: dict | None = None
    samples: int = 256
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "JobSpec":
        data = dict(data)
        command = data.pop("command", None)
        if command not in COMMANDS:
            raise JobError(f"command must be one of {', '.join(COMMANDS)}; got {command!r}")
        if "gauge" not in data:
            raise JobError("missing [gauge] section")
        spec = cls(
            command=command,
            gauge=dict(data.pop("gauge")),
            curve=dict(data.pop("curve")) if "curve" in data else None,
            samples=int(data.pop("samples", LIFT_SAMPLES if command in ROUND_TRIPS else 256)),
            seed=int(data.pop("seed", 0)),
            tolerances=dict(data.pop("tolerances", {})),
            params=dict(data.pop("params", {})),
            output=dict(data.pop("output", {})),
        )
        if data:
            raise JobError(f"unknown top-level keys: {', '.join(sorted(data))}")
        if command in NEEDS_CURVE and spec.curve is None:
            raise JobError(f"command {command} needs a [curve] section")
        if command in ("involute", "roundtrip-evolute-involute") and "c" not in spec.params:
            raise JobError(f"command {command} needs params.c")
        if command in ("gauge-eval", "associated") and "points" not in spec.params:
            raise JobError(f"command {command} needs params.points")
        if spec.samples < 2:
            raise JobError("samples must be at least 2")
        return spec


def build_gauge(cfg: dict):
    kind = cfg.get("kind")
    try:
        if kind == "euclidean":
            return EuclideanGauge()
        if kind == "randers":
            return RandersGauge(float(cfg["b"]))
        if kind == "polygon":
            return PolygonGauge(cfg["vertices"])
    except KeyError as err:
        raise JobError(f"gauge {kind} needs parameter {err.args[0]}") from None
    raise JobError(f"unknown gauge kind {kind!r}")


def build_curve(cfg: dict):
    kind = cfg.get("kind")
    dom = {k: float(cfg[k]) for k in ("t0", "t1") if k in cfg}
    try:
        if kind == "circle":
            return circle(float(cfg.get("r", 1.0)), center=cfg.get("center", (0.0, 0.0)), **dom)
        if kind == "ellipse":
            return ellipse(float(cfg["a"]), float(cfg["b"]), **dom)
        if kind == "lissajous":
            return lissajous(float(cfg["a"]), float(cfg["b"]), float(cfg["omega"]), **dom)
        if kind == "trig":
            return trig_polynomial(cfg["x"], cfg["y"], **dom)
        if kind == "segment":
            return segment(cfg["start"], cfg["direction"], **dom)
    except KeyError as err:
        raise JobError(f"curve {kind} needs parameter {err.args[0]}") from None
    raise JobError(f"unknown curve kind {kind!r}")


def _points(spec: JobSpec) -> np.ndarray:
    pts = np.asarray(spec.params["points"], dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise JobError("params.points must be a list of [x1, x2] pairs")
    return pts


def run(spec: JobSpec) -> tuple[int, dict]:
    """Execute a job; returns ``(exit_code, summary)`` and writes requested artifacts."""
    F = build_gauge(spec.gauge)
    tol = spec.tolerances
    quad_tol = float(tol.get("quadrature", 1e-10))
    out_csv = spec.output.get("csv")
    out_svg = spec.output.get("svg")
    summary = {"command": spec.command, "gauge": F.params()}
    table = None
    svg_curves = []

    if spec.command == "gauge-eval":
        x = _points(spec)
        cols, header = [x, F.eval(x)], ["x1", "x2", "F"]
        if F.smooth:
            cols.append(F.grad(x))
            header += ["F_x1", "F_x2"]
        table = (header, np.column_stack(cols))
    elif spec.command == "associated":
        method = spec.params.get("method")
        if method is not None and method not in METHODS:
            raise JobError(f"params.method must be one of {', '.join(METHODS)}")
        A = associated(F, method)
        x = _points(spec)
        summary["method"] = A.method
        table = (["x1", "x2", "F_a"], np.column_stack([x, A.eval(x)]))
    elif spec.command == "polar":
        if not isinstance(F, PolygonGauge):
            raise JobError("polar needs a polygon gauge")
        table = (["x1", "x2"], polygon_polar(F.vertices))
    elif spec.command == "validate":
        report = validate(F, spec.samples, seed=spec.seed, tol=float(tol.get("validate", 1e-12)))
        summary["report"] = report.as_dict()
    else:
        curve = build_curve(spec.curve)
        summary["curve"] = curve.name
        base = None
        if spec.command == "curvature-profile":
            prof = profile(F, curve, spec.samples, tol=quad_tol)
            table = prof
            base = curve
            summary["degenerate_samples"] = int(prof.degenerate.sum())
        elif spec.command == "evolute":
            table = evolute(F, curve, spec.samples, k_min=float(tol.get("k_min", 1e-8)), tol=quad_tol)
            base = curve
            svg_curves.append((table, "evolute"))
        elif spec.command == "involute":
            table = involute(F, curve, float(spec.params["c"]), spec.samples, tol=quad_tol)
            base = curve
            svg_curves.append((table, "involute"))
        else:
            if spec.command == "roundtrip-evolute-involute":
                report = check_evolute_of_involute(F, curve, float(spec.params["c"]),
                                                   samples=spec.samples, tol=quad_tol)
            else:
                report = check_involute_of_evolute(F, curve, samples=spec.samples, tol=quad_tol)
            summary["report"] = report.as_dict()
            if not report.applicable:
                err = NotApplicableError(report.message)
                err.report = summary["report"]
                raise err
            dev = np.linalg.norm(report.recovered - report.reference, axis=1)
            table = (["s", "x1", "x2", "ref1", "ref2", "deviation"],
                     np.column_stack([report.params, report.recovered, report.reference, dev]))
            limit = tol.get("roundtrip")
            if limit is not None and not report.max_deviation <= float(limit):
                summary["exit"] = EXIT_NUMERIC
        if out_svg and base is not None:
            arc = ArcLengthTable(F, curve, tol=quad_tol)
            s = np.linspace(0.0, arc.length, max(spec.samples, 64))
            svg_curves.insert(0, (SampledCurve(s, curve.value(arc.tau_at(s))), "base"))

    if table is not None and (out_csv or "report" not in summary):
        write_text(csv_text(table), out_csv)
    if out_svg and svg_curves:
        emit_svg(svg_curves, out_svg)
    return summary.pop("exit", EXIT_OK), summary


def _parse_value(text: str):
    try:
        return tomllib.loads(f"v = {text}")["v"]
    except tomllib.TOMLDecodeError:
        return text


def _apply_override(data: dict, dotted: str, value) -> None:
    keys = dotted.split(".")
    node = data
    for k in keys[:-1]:
        node = node.setdefault(k, {})
    node[keys[-1]] = value


def load_job(args) -> JobSpec:
    data: dict = {}
    if args.spec:
        try:
            with open(args.spec, "rb") as fh:
                data = tomllib.load(fh)
        except OSError as err:
            raise JobError(f"cannot read job file {args.spec}: {err.strerror}") from None
        except tomllib.TOMLDecodeError as err:
            raise JobError(f"{args.spec}: {err}") from None
    for item in args.set or ():
        if "=" not in item:
            raise JobError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        _apply_override(data, key.strip(), _parse_value(value.strip()))
    if args.command:
        data["command"] = args.command
    if args.samples is not None:
        data["samples"] = args.samples
    if args.seed is not None:
        data["seed"] = args.seed
    if args.tol is not None:
        data.setdefault("tolerances", {})["quadrature"] = args.tol
    if args.out_csv:
        data.setdefault("output", {})["csv"] = args.out_csv
    if args.out_svg:
        data.setdefault("output", {})["svg"] = args.out_svg
    if args.out_report:
        data.setdefault("output", {})["report"] = args.out_report
    try:
        return JobSpec.from_dict(data)
    except (TypeError, ValueError) as err:
        raise JobError(str(err)) from None


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gaugeplane", description="Curvature of planar curves in gauge planes.")
    p.add_argument("--spec", help="TOML job file")
    p.add_argument("--command", choices=COMMANDS, help="override the job's command")
    p.add_argument("--out-csv", help="CSV destination ('-' for stdout)")
    p.add_argument("--out-svg", help="SVG destination")
    p.add_argument("--out-report", help="JSON report destination for roundtrip/validate")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, help="arc-length quadrature tolerance")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override any job entry, e.g. --set gauge.b=0.3 (repeatable)")
    p.add_argument("--version", action="version",
                   version=f"gaugeplane {__version__} (job format {FORMAT_VERSION}, csv format {FORMAT_VERSION})")
    return p


def _error(code: int, err: Exception, **extra) -> int:
    record = {"error": type(err).__name__, "code": code, "message": str(err), **extra}
    sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        spec = load_job(args)
    except JobError as err:
        return _error(EXIT_PARSE, err)
    try:
        code, summary = run(spec)
    except JobError as err:
        return _error(EXIT_PARSE, err)
    except NotApplicableError as err:
        return _error(EXIT_NOT_APPLICABLE, err, report=getattr(err, "report", None))
    except GaugeError as err:
        return _error(err.exit_code, err)
    except (OSError, ValueError, FloatingPointError) as err:
        return _error(EXIT_NUMERIC, err)
    text = json.dumps(summary, sort_keys=True, indent=2) + "\n"
    report_path = spec.output.get("report")
    if report_path:
        write_text(text, report_path)
    elif "report" in summary:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
