import xml.etree.ElementTree as ET

import numpy as np
import pytest

from gaugeplane import EuclideanGauge, RandersGauge, SampledCurve, circle, profile
from gaugeplane.output import csv_text, emit_csv, emit_svg, format_number, read_csv, svg_text


@pytest.mark.parametrize(
    "x, text",
    [(0.0, "0"), (-0.0, "0"), (0.5, "0.5"), (1.0, "1"), (-2.25, "-2.25"),
     (1 / 3, "0.333333333333"), (1e-20, "0.00000000000000000001"), (123456789012345.0, "123456789012000")],
)
def test_format_number(x, text):
    assert format_number(x) == text


def test_profile_csv_lines(tmp_path):
    prof = profile(EuclideanGauge(), circle(2.0), 8)
    path = tmp_path / "p.csv"
    emit_csv(prof, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 9
    assert lines[0] == "s,tau,x1,x2,t1,t2,n1,n2,l1,l2,k_m,k_n,k_c,k_l"


def test_csv_round_trip(tmp_path):
    prof = profile(RandersGauge(0.5), circle(), 16)
    path = tmp_path / "p.csv"
    emit_csv(prof, path)
    header, rows = read_csv(path)
    assert header == list(prof.COLUMNS)
    np.testing.assert_allclose(rows, prof.rows(), rtol=1e-11, atol=1e-15)


def test_empty_data_writes_nothing(tmp_path):
    path = tmp_path / "empty.csv"
    with pytest.raises(ValueError):
        emit_csv((["a", "b"], np.zeros((0, 2))), path)
    assert not path.exists()


def test_unwritable_destination(tmp_path):
    with pytest.raises(OSError, match="cannot write"):
        emit_csv((["a"], [[1.0]]), tmp_path / "missing" / "x.csv")


def test_stdout_destination(capsys):
    emit_csv((["a", "b"], [[1.0, -0.0]]), "-")
    assert capsys.readouterr().out == "a,b\n1,0\n"


def test_svg_structure(tmp_path):
    t = np.linspace(0, 2 * np.pi, 50)
    base = SampledCurve(t, circle()(t))
    point = SampledCurve([0.0, 1.0], np.zeros((2, 2)))
    path = tmp_path / "c.svg"
    emit_svg([(base, "base"), (point, "evolute")], path)
    root = ET.parse(path).getroot()
    lines = root.findall("{http://www.w3.org/2000/svg}polyline")
    assert [p.get("class") for p in lines] == ["base", "evolute"]
    assert lines[1].get("stroke-dasharray") == "6 4"
    pts = np.array([p.split(",") for p in lines[0].get("points").split()], dtype=float)
    assert len(pts) == 50
    w, h = float(root.get("width")), float(root.get("height"))
    assert np.all((pts >= 0) & (pts <= [w, h]))
    # y axis points up: the top of the circle maps to the smallest SVG y
    assert np.argmin(pts[:, 1]) == np.argmin(np.abs(t - np.pi / 2))


def test_svg_degenerate_extent():
    text = svg_text([(SampledCurve([0.0, 1.0], np.zeros((2, 2))), "base")])
    assert "polyline" in text and "nan" not in text
    with pytest.raises(ValueError):
        svg_text([])


def test_csv_text_is_deterministic():
    prof = profile(RandersGauge(0.3), circle(), 32)
    assert csv_text(prof) == csv_text(profile(RandersGauge(0.3), circle(), 32))
