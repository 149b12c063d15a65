import math
import re
import xml.etree.ElementTree as ET

import pytest

from equipalette.equilibrium import SolverConfig
from equipalette.evaluation import ContrastReport, contrast_curve
from equipalette.metrics import ContrastMetric
from equipalette.render import (
    MID_GRAY_HEX,
    ScatterProjection,
    chart_y,
    render_contrast_chart,
    render_lab_scatter,
    render_pie,
    render_swatches,
    scatter_position,
)
from equipalette.schemes import PaletteSpec, SchemeKind, generate_palette


def _tag(element: ET.Element) -> str:
    return element.tag.rsplit("}", 1)[-1]


def _elements(doc_body: str, tag: str) -> list[ET.Element]:
    root = ET.fromstring(doc_body)
    return [el for el in root.iter() if _tag(el) == tag]


def _pie_sector_angles(doc_body: str) -> list[float]:
    """Sector widths in degrees, recovered from the emitted path data."""
    angles = []
    for path in _elements(doc_body, "path"):
        tokens = path.attrib["d"].split()
        assert tokens[0] == "M" and tokens[3] == "L" and tokens[6] == "A"
        cx, cy = float(tokens[1]), float(tokens[2])
        x1, y1 = float(tokens[4]), float(tokens[5])
        x2, y2 = float(tokens[12]), float(tokens[13])

        def screen_angle(x: float, y: float) -> float:
            # degrees clockwise from 12 o'clock
            return math.degrees(math.atan2(x - cx, -(y - cy))) % 360.0

        angles.append((screen_angle(x2, y2) - screen_angle(x1, y1)) % 360.0)
    return angles


@pytest.fixture(scope="module")
def small_palette():
    return generate_palette(PaletteSpec(n=6, seed=1))


def test_all_documents_are_well_formed_xml(small_palette) -> None:
    report = contrast_curve(SchemeKind.HARMONIC, ContrastMetric.CIE76, range(2, 8))
    docs = [
        render_swatches(small_palette),
        render_pie(small_palette),
        render_lab_scatter(small_palette),
        render_lab_scatter(small_palette, ScatterProjection.THREE_QUARTER),
        render_contrast_chart([report]),
    ]
    for doc in docs:
        ET.fromstring(doc.body)
        assert doc.body.startswith('<?xml version="1.0" encoding="UTF-8"?>')
        assert "\r" not in doc.body


def test_color_literals_are_six_digit_lowercase_hex(small_palette) -> None:
    for doc in (render_swatches(small_palette), render_pie(small_palette), render_lab_scatter(small_palette)):
        for literal in re.findall(r"#[0-9a-fA-F]+", doc.body):
            assert re.fullmatch(r"#[0-9a-f]{6}", literal), literal


def test_rendering_is_deterministic(small_palette) -> None:
    assert render_pie(small_palette).body == render_pie(small_palette).body
    assert render_swatches(small_palette).body == render_swatches(small_palette).body


def test_swatches_single_color() -> None:
    palette = generate_palette(PaletteSpec(n=1, scheme=SchemeKind.HARMONIC))
    rects = _elements(render_swatches(palette).body, "rect")
    swatches = [r for r in rects if r.attrib.get("width") == "80"]
    assert len(swatches) == 1
    assert swatches[0].attrib["fill"] == "#ff0000"


def test_swatches_grid_arithmetic() -> None:
    palette = generate_palette(PaletteSpec(n=37, scheme=SchemeKind.HARMONIC))
    doc = render_swatches(palette, columns=8)
    swatches = [r for r in _elements(doc.body, "rect") if r.attrib.get("width") == "80"]
    assert len(swatches) == 37
    rows = sorted({float(r.attrib["y"]) for r in swatches})
    assert len(rows) == 5
    last_row = [r for r in swatches if float(r.attrib["y"]) == rows[-1]]
    assert len(last_row) == 5


def test_swatch_fills_and_labels_round_trip_the_palette(small_palette) -> None:
    doc = render_swatches(small_palette)
    swatches = [r for r in _elements(doc.body, "rect") if r.attrib.get("width") == "80"]
    assert [r.attrib["fill"] for r in swatches] == small_palette.hex_codes()
    labels = [t.text for t in _elements(doc.body, "text")]
    assert labels == [f"{i} {h}" for i, h in enumerate(small_palette.hex_codes())]
    background = _elements(doc.body, "rect")[0]
    assert background.attrib["fill"] == MID_GRAY_HEX == "#777777"


def test_pie_four_equal_sectors() -> None:
    palette = generate_palette(PaletteSpec(n=4, seed=2))
    angles = _pie_sector_angles(render_pie(palette).body)
    assert angles == pytest.approx([90.0, 90.0, 90.0, 90.0], abs=1e-9)


def test_pie_weights_set_sector_proportions() -> None:
    palette = generate_palette(PaletteSpec(n=3, scheme=SchemeKind.HARMONIC))
    angles = _pie_sector_angles(render_pie(palette, weights=[1.0, 1.0, 2.0]).body)
    assert angles == pytest.approx([90.0, 90.0, 180.0], abs=1e-9)


def test_pie_thirty_seven_sectors_close_the_circle() -> None:
    palette = generate_palette(PaletteSpec(n=37, scheme=SchemeKind.HARMONIC))
    angles = _pie_sector_angles(render_pie(palette).body)
    assert len(angles) == 37
    assert sum(angles) == pytest.approx(360.0, abs=1e-9)


def test_pie_single_color_is_a_full_disc() -> None:
    palette = generate_palette(PaletteSpec(n=1, scheme=SchemeKind.HARMONIC))
    doc = render_pie(palette)
    assert len(_elements(doc.body, "circle")) == 1
    assert len(_elements(doc.body, "path")) == 0


def test_pie_rejects_bad_weights(small_palette) -> None:
    with pytest.raises(ValueError):
        render_pie(small_palette, weights=[1.0, 2.0])
    with pytest.raises(ValueError):
        render_pie(small_palette, weights=[1.0] * 5 + [0.0])


def test_scatter_positions_recomputable(small_palette) -> None:
    for projection in ScatterProjection:
        doc = render_lab_scatter(small_palette, projection)
        dots = _elements(doc.body, "circle")
        assert len(dots) == len(small_palette.colors)
        for dot, color in zip(dots, small_palette.colors):
            x, y = scatter_position(color.lab, projection)
            assert float(dot.attrib["cx"]) == pytest.approx(x, abs=1e-5)
            assert float(dot.attrib["cy"]) == pytest.approx(y, abs=1e-5)
            assert dot.attrib["fill"] == color.srgb.to_hex()


def test_scatter_antipodal_lightness_pair_collapses_in_ab_plane() -> None:
    palette = generate_palette(PaletteSpec(n=2))
    doc = render_lab_scatter(palette)
    dots = _elements(doc.body, "circle")
    assert len(dots) == 2
    assert dots[0].attrib["cx"] == dots[1].attrib["cx"] == "220"
    assert dots[0].attrib["cy"] == dots[1].attrib["cy"] == "220"


def test_scatter_axis_labels() -> None:
    palette = generate_palette(PaletteSpec(n=3, scheme=SchemeKind.HARMONIC))
    flat = [t.text for t in _elements(render_lab_scatter(palette).body, "text")]
    assert flat == ["a", "b"]
    deep = [t.text for t in _elements(render_lab_scatter(palette, ScatterProjection.THREE_QUARTER).body, "text")]
    assert deep == ["a", "b", "L"]


def _fake_report(values: list[tuple[int, float]], metric=ContrastMetric.CIE76, scheme=SchemeKind.HARMONIC):
    return ContrastReport(scheme, metric, tuple(values), None, PaletteSpec(n=2, scheme=scheme), SolverConfig())


def test_chart_flat_series_is_a_horizontal_polyline() -> None:
    doc = render_contrast_chart([_fake_report([(2, 7.0), (3, 7.0), (4, 7.0)])])
    polyline = _elements(doc.body, "polyline")[0]
    ys = {point.split(",")[1] for point in polyline.attrib["points"].split()}
    assert len(ys) == 1


def test_chart_jnd_line_sits_at_the_threshold() -> None:
    report = _fake_report([(2, 7.0), (3, 6.0)])
    doc = render_contrast_chart([report])
    dashed = [l for l in _elements(doc.body, "line") if "stroke-dasharray" in l.attrib]
    assert len(dashed) == 1
    y_max = 7.0 * 1.05
    assert float(dashed[0].attrib["y1"]) == pytest.approx(chart_y(5.0, y_max), abs=1e-5)
    assert dashed[0].attrib["y1"] == dashed[0].attrib["y2"]


def test_chart_rejects_mixed_metrics() -> None:
    a = _fake_report([(2, 7.0)])
    b = _fake_report([(2, 7.0)], metric=ContrastMetric.CIEDE2000)
    with pytest.raises(ValueError):
        render_contrast_chart([a, b])


def test_chart_equilibrium_curve_sits_above_harmonic() -> None:
    ns = range(12, 41)
    eq = contrast_curve(SchemeKind.EQUILIBRIUM, ContrastMetric.CIE76, ns)
    ha = contrast_curve(SchemeKind.HARMONIC, ContrastMetric.CIE76, ns)
    doc = render_contrast_chart([eq, ha])
    polylines = _elements(doc.body, "polyline")
    assert len(polylines) == 2
    for (_, v_eq), (_, v_ha) in zip(eq.series, ha.series):
        assert v_eq > v_ha
    # higher contrast means smaller y in screen coordinates, pointwise
    eq_ys = [float(p.split(",")[1]) for p in polylines[0].attrib["points"].split()]
    ha_ys = [float(p.split(",")[1]) for p in polylines[1].attrib["points"].split()]
    assert all(a < b for a, b in zip(eq_ys, ha_ys))
    legend = [t.text for t in _elements(doc.body, "text")]
    assert "equilibrium" in legend and "harmonic" in legend
