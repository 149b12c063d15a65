"""Deterministic SVG artifacts: swatch sheets, pie charts, Lab scatter plots,
and contrast-curve charts.

Documents are built as plain SVG 1.1 text so that tests (and downstream
tooling) can parse coordinates and color literals back out exactly. Output is
byte-for-byte deterministic for fixed inputs; every color literal is 6-digit
lowercase hex, quantized round-half-up from the palette's clamped sRGB.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .color_space import LabColor, lab_to_srgb
from .evaluation import ContrastReport
from .schemes import Palette

_SVG_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'

# Canvas background for swatch sheets and pies: the palette's neutral anchor.
MID_GRAY_HEX = lab_to_srgb(LabColor(50.0, 0.0, 0.0))[0].to_hex()  # "#777777"

_SCHEME_STROKES = {"equilibrium": "#2c7bb6", "harmonic": "#d7301f"}
_FALLBACK_STROKE = "#555555"


@dataclass(frozen=True)
class SvgDocument:
    width: int
    height: int
    body: str  # complete well-formed SVG 1.1 markup

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.body)


class ScatterProjection(enum.Enum):
    AB_PLANE = "ab-plane"
    THREE_QUARTER = "three-quarter"


def _fmt(value: float) -> str:
    if value == 0.0:
        return "0"
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return text


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _document(width: int, height: int, elements: Sequence[str]) -> SvgDocument:
    lines = [
        _SVG_HEADER
        + f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        + f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    ]
    lines.extend(elements)
    lines.append("</svg>")
    return SvgDocument(width, height, "\n".join(lines) + "\n")


def _text(x: float, y: float, content: str, size: int = 12, fill: str = "#111111", anchor: str = "start") -> str:
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" font-size="{size}" '
        f'fill="{fill}" text-anchor="{anchor}">{_esc(content)}</text>'
    )


def render_swatches(p: Palette, columns: int = 8) -> SvgDocument:
    """Grid of labeled color rectangles, row-major in palette order."""
    if columns < 1:
        raise ValueError(f"columns must be >= 1, got {columns}")
    n = len(p.colors)
    cols = min(columns, n)
    rows = math.ceil(n / columns)
    margin, cell_w, cell_h, swatch = 16, 96, 110, 80
    width = 2 * margin + cols * cell_w
    height = 2 * margin + rows * cell_h
    elements = [f'<rect x="0" y="0" width="{width}" height="{height}" fill="{MID_GRAY_HEX}"/>']
    for idx, color in enumerate(p.colors):
        row, col = divmod(idx, columns)
        x = margin + col * cell_w + (cell_w - swatch) / 2
        y = margin + row * cell_h + 6
        hexcode = color.srgb.to_hex()
        elements.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{swatch}" height="{swatch}" fill="{hexcode}"/>'
        )
        elements.append(_text(x + swatch / 2, y + swatch + 16, f"{idx} {hexcode}", size=11, anchor="middle"))
    return _document(width, height, elements)


def _pie_point(cx: float, cy: float, r: float, angle_deg: float) -> tuple[float, float]:
    # 0 degrees at 12 o'clock, increasing clockwise on screen
    rad = math.radians(angle_deg)
    return cx + r * math.sin(rad), cy - r * math.cos(rad)


def render_pie(p: Palette, weights: Optional[Sequence[float]] = None) -> SvgDocument:
    """Full-circle pie, one sector per color in palette order, clockwise from 12 o'clock."""
    n = len(p.colors)
    if weights is None:
        weights = [1.0] * n
    if len(weights) != n:
        raise ValueError(f"got {len(weights)} weights for {n} colors")
    if any(not w > 0 for w in weights):
        raise ValueError("weights must all be positive")

    size, cx, cy, r = 400, 200.0, 200.0, 150.0
    elements = [f'<rect x="0" y="0" width="{size}" height="{size}" fill="{MID_GRAY_HEX}"/>']
    if n == 1:
        elements.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" fill="{p.colors[0].srgb.to_hex()}"/>')
        return _document(size, size, elements)

    total = float(sum(weights))
    angle = 0.0
    for color, w in zip(p.colors, weights):
        sweep = 360.0 * w / total
        x1, y1 = _pie_point(cx, cy, r, angle)
        x2, y2 = _pie_point(cx, cy, r, angle + sweep)
        large_arc = 1 if sweep > 180.0 else 0
        path = (
            f"M {_fmt(cx)} {_fmt(cy)} L {_fmt(x1)} {_fmt(y1)} "
            f"A {_fmt(r)} {_fmt(r)} 0 {large_arc} 1 {_fmt(x2)} {_fmt(y2)} Z"
        )
        elements.append(f'<path d="{path}" fill="{color.srgb.to_hex()}"/>')
        angle += sweep
    return _document(size, size, elements)


# Fixed-angle orthographic view used by the three-quarter scatter projection.
_SCATTER_AZIMUTH = math.radians(35.0)
_SCATTER_ELEVATION = math.radians(25.0)
_SCATTER_SIZE = 440
_SCATTER_CENTER = 220.0
_SCATTER_SCALE = 180.0 / 130.0  # pixels per Lab unit


def scatter_position(lab: LabColor, projection: ScatterProjection) -> tuple[float, float]:
    """Screen position of a Lab color; exposed so plots can be verified."""
    if projection is ScatterProjection.AB_PLANE:
        u, v = lab.a, lab.b
    else:
        sin_az, cos_az = math.sin(_SCATTER_AZIMUTH), math.cos(_SCATTER_AZIMUTH)
        sin_el, cos_el = math.sin(_SCATTER_ELEVATION), math.cos(_SCATTER_ELEVATION)
        u = -lab.a * sin_az + lab.b * cos_az
        v = -(lab.a * cos_az + lab.b * sin_az) * sin_el + (lab.L - 50.0) * cos_el
    return _SCATTER_CENTER + u * _SCATTER_SCALE, _SCATTER_CENTER - v * _SCATTER_SCALE


def render_lab_scatter(p: Palette, projection: ScatterProjection = ScatterProjection.AB_PLANE) -> SvgDocument:
    """Each color as a filled dot at its projected Lab position."""
    size = _SCATTER_SIZE
    elements = [f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>']

    def axis(lab_from: tuple[float, float, float], lab_to: tuple[float, float, float], label: str) -> None:
        x1, y1 = scatter_position(LabColor(*lab_from), projection)
        x2, y2 = scatter_position(LabColor(*lab_to), projection)
        elements.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="#999999" stroke-width="1"/>'
        )
        elements.append(_text(x2 + 6, y2 + 4, label, size=13))

    axis((50.0, -127.0, 0.0), (50.0, 127.0, 0.0), "a")
    axis((50.0, 0.0, -127.0), (50.0, 0.0, 127.0), "b")
    if projection is ScatterProjection.THREE_QUARTER:
        axis((0.0, 0.0, 0.0), (100.0, 0.0, 0.0), "L")

    for color in p.colors:
        x, y = scatter_position(color.lab, projection)
        elements.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="6" fill="{color.srgb.to_hex()}" '
            f'stroke="#333333" stroke-width="0.5"/>'
        )
    return _document(size, size, elements)


_CHART_W, _CHART_H = 640, 420
_PLOT = (60.0, 30.0, 600.0, 370.0)  # left, top, right, bottom


def chart_x(n: float, n_min: int, n_max: int) -> float:
    left, _, right, _ = _PLOT
    if n_max == n_min:
        return (left + right) / 2.0
    return left + (n - n_min) / (n_max - n_min) * (right - left)


def chart_y(value: float, y_max: float) -> float:
    _, top, _, bottom = _PLOT
    return bottom - value / y_max * (bottom - top)


def render_contrast_chart(reports: Sequence[ContrastReport]) -> SvgDocument:
    """Min-contrast polylines over n with a dashed line at the JND threshold."""
    if not reports:
        raise ValueError("need at least one report")
    metric = reports[0].metric
    if any(r.metric is not metric for r in reports):
        raise ValueError("all reports must share the same metric")

    n_min = min(r.series[0][0] for r in reports)
    n_max = max(r.series[-1][0] for r in reports)
    y_max = max(max(v for _, v in r.series) for r in reports)
    y_max = max(y_max, metric.jnd_threshold) * 1.05

    left, top, right, bottom = _PLOT
    elements = [f'<rect x="0" y="0" width="{_CHART_W}" height="{_CHART_H}" fill="#ffffff"/>']
    elements.append(
        f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(right - left)}" '
        f'height="{_fmt(bottom - top)}" fill="#ffffff" stroke="#333333" stroke-width="1"/>'
    )

    for i in range(5):
        n_tick = n_min + (n_max - n_min) * i / 4
        x = chart_x(n_tick, n_min, n_max)
        elements.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(bottom)}" x2="{_fmt(x)}" y2="{_fmt(bottom + 5)}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        elements.append(_text(x, bottom + 18, f"{n_tick:g}", size=11, anchor="middle"))
        v_tick = y_max * i / 4
        y = chart_y(v_tick, y_max)
        elements.append(
            f'<line x1="{_fmt(left - 5)}" y1="{_fmt(y)}" x2="{_fmt(left)}" y2="{_fmt(y)}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        elements.append(_text(left - 8, y + 4, f"{v_tick:.1f}", size=11, anchor="end"))
    elements.append(_text((left + right) / 2, bottom + 34, "n", size=13, anchor="middle"))
    elements.append(_text(left, top - 10, f"min contrast ({metric.value})", size=13))

    jnd_y = chart_y(metric.jnd_threshold, y_max)
    elements.append(
        f'<line x1="{_fmt(left)}" y1="{_fmt(jnd_y)}" x2="{_fmt(right)}" y2="{_fmt(jnd_y)}" '
        f'stroke="#555555" stroke-width="1" stroke-dasharray="6 4"/>'
    )
    elements.append(_text(right - 4, jnd_y - 6, f"JND = {metric.jnd_threshold:g}", size=11, anchor="end"))

    for idx, report in enumerate(reports):
        stroke = _SCHEME_STROKES.get(report.scheme.value, _FALLBACK_STROKE)
        points = " ".join(
            f"{_fmt(chart_x(n, n_min, n_max))},{_fmt(chart_y(v, y_max))}" for n, v in report.series
        )
        elements.append(f'<polyline points="{points}" fill="none" stroke="{stroke}" stroke-width="2"/>')
        ly = top + 16 + idx * 18
        elements.append(
            f'<line x1="{_fmt(right - 150)}" y1="{_fmt(ly - 4)}" x2="{_fmt(right - 122)}" y2="{_fmt(ly - 4)}" '
            f'stroke="{stroke}" stroke-width="2"/>'
        )
        elements.append(_text(right - 114, ly, report.scheme.value, size=12))
    return _document(_CHART_W, _CHART_H, elements)
