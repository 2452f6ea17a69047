"""CSV and SVG writers for curvature profiles and sampled curves."""
from __future__ import annotations

import io
import os
import sys
import xml.etree.ElementTree as ET

import numpy as np

from .curvature import CurvatureProfile
from .evolute import SampledCurve

SIGNIFICANT_DIGITS = 12

STYLES = {
    "base": {"stroke": "#1f3a93", "stroke-width": "1.5"},
    "evolute": {"stroke": "#c0392b", "stroke-width": "1.2", "stroke-dasharray": "6 4"},
    "involute": {"stroke": "#1e824c", "stroke-width": "1.2", "stroke-dasharray": "1 3", "stroke-linecap": "round"},
}


def format_number(x: float) -> str:
    """Positional decimal with 12 significant digits; ``-0`` prints as ``0``."""
    if x == 0.0:
        return "0"
    return np.format_float_positional(float(x), precision=SIGNIFICANT_DIGITS, unique=False,
                                      fractional=False, trim="-")


def table_for(data):
    """``(header, rows)`` for a profile, a sampled curve, or an explicit pair."""
    if isinstance(data, CurvatureProfile):
        return list(CurvatureProfile.COLUMNS), data.rows()
    if isinstance(data, SampledCurve):
        return ["s", "x1", "x2"], np.column_stack([data.s, data.points])
    header, rows = data
    return list(header), np.asarray(rows, dtype=float)


def csv_text(data) -> str:
    header, rows = table_for(data)
    if rows.size == 0 or len(rows) == 0:
        raise ValueError("nothing to write: empty data")
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format_number(v) for v in row) + "\n")
    return buf.getvalue()


def write_text(text: str, destination) -> None:
    if destination is None or destination == "-":
        sys.stdout.write(text)
        return
    try:
        with open(destination, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as err:
        raise OSError(f"cannot write {os.fspath(destination)}: {err.strerror}") from err


def emit_csv(data, destination) -> None:
    """Write a header row and one record per sample.  Empty data writes nothing."""
    write_text(csv_text(data), destination)


def read_csv(path) -> tuple[list[str], np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        rows = np.loadtxt(fh, delimiter=",", ndmin=2)
    return header, rows


def svg_text(curves, size: int = 600, margin: float = 0.05) -> str:
    """One polyline per ``(SampledCurve, style)`` pair, y axis pointing up."""
    curves = [(c, style) for c, style in curves]
    if not curves:
        raise ValueError("no curves to draw")
    for c, _ in curves:
        if len(c.points) < 2:
            raise ValueError("every curve needs at least two points")
    allpts = np.vstack([c.points for c, _ in curves])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    extent = hi - lo
    span = max(float(extent.max()), 1e-9)
    pad = margin * span
    x0, y0 = lo - pad
    w = extent[0] + 2 * pad if extent[0] > 0 else span + 2 * pad
    h = extent[1] + 2 * pad if extent[1] > 0 else span + 2 * pad
    if extent[0] == 0:
        x0 = lo[0] - w / 2
    if extent[1] == 0:
        y0 = lo[1] - h / 2
    scale = size / max(w, h)

    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                      width=f"{w * scale:.2f}", height=f"{h * scale:.2f}",
                      viewBox=f"0 0 {w * scale:.4f} {h * scale:.4f}")
    for c, style in curves:
        px = (c.points[:, 0] - x0) * scale
        py = (y0 + h - c.points[:, 1]) * scale  # flip y
        attrs = {"fill": "none", "class": style, **STYLES.get(style, STYLES["base"])}
        ET.SubElement(root, "polyline", points=" ".join(f"{a:.4f},{b:.4f}" for a, b in zip(px, py)), **attrs)
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def emit_svg(curves, destination, size: int = 600) -> None:
    write_text(svg_text(curves, size=size), destination)
