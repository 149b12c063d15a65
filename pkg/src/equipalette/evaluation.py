"""Minimum-contrast-vs-n curves for palette schemes, with JND annotations.

For each n in a range, a palette is generated and the minimum pairwise
contrast of its final (post-gamut-handling) Lab colors recorded, i.e. the
contrast a viewer would actually get. The JND crossing is the first n whose
minimum contrast drops below the metric's threshold.

Per-n evaluations are independent: each n uses the derived seed
base_seed + n, so a report is deterministic for a fixed base seed and any
subset of it can be regenerated in isolation.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, replace
from typing import Optional, Sequence, TextIO, Union

from .equilibrium import SolverConfig
from .metrics import ContrastMetric
from .schemes import PaletteSpec, SchemeKind, generate_palette

_N_LIMIT = 200


@dataclass(frozen=True)
class ContrastReport:
    scheme: SchemeKind
    metric: ContrastMetric
    series: tuple[tuple[int, float], ...]  # (n, min_contrast), strictly increasing n
    jnd_crossing: Optional[int]  # first n with min_contrast below the threshold
    spec_defaults: PaletteSpec
    solver_config: SolverConfig


def contrast_curve(
    scheme: SchemeKind,
    metric: ContrastMetric,
    n_range: Union[range, Sequence[int]],
    spec_defaults: Optional[PaletteSpec] = None,
    cfg: Optional[SolverConfig] = None,
) -> ContrastReport:
    """Evaluate min pairwise contrast for every n in n_range (each in [2, 200])."""
    ns = sorted(set(int(n) for n in n_range))
    if not ns:
        raise ValueError("n_range is empty")
    if ns[0] < 2 or ns[-1] > _N_LIMIT:
        raise ValueError(f"n_range must lie within [2, {_N_LIMIT}], got {ns[0]}..{ns[-1]}")
    if spec_defaults is None:
        spec_defaults = PaletteSpec(n=2, scheme=scheme)
    if cfg is None:
        cfg = SolverConfig(seed=spec_defaults.seed)

    series = []
    for n in ns:
        spec = replace(spec_defaults, n=n, scheme=scheme, seed=spec_defaults.seed + n)
        try:
            palette = generate_palette(spec, cfg)
        except Exception as exc:
            raise RuntimeError(f"palette generation failed at n={n}: {exc}") from exc
        value = palette.achieved_min_de76 if metric is ContrastMetric.CIE76 else palette.achieved_min_de2000
        series.append((n, float(value)))

    crossing = next((n for n, v in series if v < metric.jnd_threshold), None)
    return ContrastReport(scheme, metric, tuple(series), crossing, spec_defaults, cfg)


@dataclass(frozen=True)
class JndSummary:
    scheme: SchemeKind
    metric: ContrastMetric
    n_min: int
    n_max: int
    min_contrast: float
    max_contrast: float
    jnd_crossing: Optional[int]
    margin_at_max_n: float  # contrast at the largest n minus the threshold

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "metric": self.metric.value,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "min_contrast": self.min_contrast,
            "max_contrast": self.max_contrast,
            "jnd_threshold": self.metric.jnd_threshold,
            "jnd_crossing": self.jnd_crossing,
            "margin_at_max_n": self.margin_at_max_n,
        }

    def to_text(self) -> str:
        crossing = (
            f"drops below the JND threshold {self.metric.jnd_threshold:g} at n={self.jnd_crossing}"
            if self.jnd_crossing is not None
            else f"stays at or above the JND threshold {self.metric.jnd_threshold:g} everywhere"
        )
        return (
            f"{self.scheme.value} / {self.metric.value}, n={self.n_min}..{self.n_max}: "
            f"min contrast {self.min_contrast:.4f}, max {self.max_contrast:.4f}; {crossing}; "
            f"margin at n={self.n_max}: {self.margin_at_max_n:+.4f}"
        )


def jnd_report(report: ContrastReport) -> JndSummary:
    """Summarize a contrast report; degenerate single-point series are fine."""
    if not report.series:
        raise ValueError("report has an empty series")
    values = [v for _, v in report.series]
    last_n, last_v = report.series[-1]
    return JndSummary(
        scheme=report.scheme,
        metric=report.metric,
        n_min=report.series[0][0],
        n_max=last_n,
        min_contrast=min(values),
        max_contrast=max(values),
        jnd_crossing=report.jnd_crossing,
        margin_at_max_n=last_v - report.metric.jnd_threshold,
    )


def write_series_csv(report: ContrastReport, out: Union[str, TextIO]) -> None:
    """CSV with header `n,min_contrast`, one row per n, '.' decimals, LF endings."""
    if isinstance(out, str):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            write_series_csv(report, fh)
        return
    out.write("n,min_contrast\n")
    for n, value in report.series:
        out.write(f"{n},{value!r}\n")


def series_csv_text(report: ContrastReport) -> str:
    buf = io.StringIO()
    write_series_csv(report, buf)
    return buf.getvalue()
