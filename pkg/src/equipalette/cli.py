"""Command-line surface: generate, eval, verify-platonic, swatch, pie, scatter.

Exit codes are a stable contract: 0 success, 1 runtime or verification
failure (with a machine-readable JSON error on stderr), 2 usage error.
Palette serialization (JSON, flat hex list, GIMP .gpl) lives here; all
commands are deterministic given identical flags and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

from .color_space import LabColor, SrgbColor
from .equilibrium import SolverConfig, solve
from .evaluation import contrast_curve, jnd_report, write_series_csv
from .metrics import ContrastMetric
from .render import ScatterProjection, render_contrast_chart, render_lab_scatter, render_pie, render_swatches
from .schemes import (
    GamutMode,
    Palette,
    PaletteColor,
    PaletteSpec,
    SchemeKind,
    generate_palette,
)

# Known globally optimal minimum separations of the spherical charge
# equilibrium for the Platonic vertex counts, next to each solid's edge
# length. The cube and dodecahedron rows are starred: there the equilibrium
# beats the solid's own vertex arrangement.
PLATONIC_ROWS = (
    ("Tetrahedron", 4, 1.63299, 1.63299, False),
    ("Octahedron", 6, 1.41421, 1.41421, False),
    ("Cube", 8, 1.1547, 1.1712, True),
    ("Icosahedron", 12, 1.05146, 1.05146, False),
    ("Dodecahedron", 20, 0.713644, 0.782961, True),
)


def _round9(value: float) -> float:
    # 9 significant digits: enough for byte-stable emit -> load -> emit cycles
    return float(f"{value:.9g}")


def palette_to_json(palette: Palette) -> str:
    spec = palette.spec
    doc = {
        "spec": {
            "n": spec.n,
            "scheme": spec.scheme.value,
            "center": [_round9(spec.center.L), _round9(spec.center.a), _round9(spec.center.b)],
            "radius": None if spec.radius is None else _round9(spec.radius),
            "gamut_mode": spec.gamut_mode.value,
            "seed": spec.seed,
        },
        "colors": [
            {
                "lab": [_round9(c.lab.L), _round9(c.lab.a), _round9(c.lab.b)],
                "srgb_hex": c.srgb.to_hex(),
                "in_gamut": c.in_gamut,
            }
            for c in palette.colors
        ],
        "metrics": {
            "min_de76": None if palette.achieved_min_de76 is None else _round9(palette.achieved_min_de76),
            "min_de2000": None if palette.achieved_min_de2000 is None else _round9(palette.achieved_min_de2000),
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def palette_from_json(text: str) -> Palette:
    doc = json.loads(text)
    spec_doc = doc["spec"]
    spec = PaletteSpec(
        n=spec_doc["n"],
        scheme=SchemeKind(spec_doc["scheme"]),
        center=LabColor(*spec_doc["center"]),
        radius=spec_doc["radius"],
        gamut_mode=GamutMode(spec_doc["gamut_mode"]),
        seed=spec_doc["seed"],
    )
    colors = tuple(
        PaletteColor(LabColor(*c["lab"]), SrgbColor.from_hex(c["srgb_hex"]), bool(c["in_gamut"]))
        for c in doc["colors"]
    )
    m = doc["metrics"]
    return Palette(colors, spec, m["min_de76"], m["min_de2000"])


def palette_to_hex_list(palette: Palette) -> str:
    return "\n".join(palette.hex_codes()) + "\n"


def palette_to_gpl(palette: Palette, columns: int = 8) -> str:
    spec = palette.spec
    lines = [
        "GIMP Palette",
        f"Name: equipalette-{spec.scheme.value}-{spec.n}",
        f"Columns: {columns}",
        f"# scheme: {spec.scheme.value}  seed: {spec.seed}",
    ]
    for idx, color in enumerate(palette.colors):
        c = color.srgb.clamped()
        r, g, b = (int(math.floor(v * 255.0 + 0.5)) for v in (c.r, c.g, c.b))
        lines.append(f"{r:3d} {g:3d} {b:3d}\tcolor-{idx}")
    return "\n".join(lines) + "\n"


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _radius(text: str) -> Optional[float]:
    if text == "auto":
        return None
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"radius must be a number or 'auto', got {text!r}") from exc
    if not value > 0:
        raise argparse.ArgumentTypeError(f"radius must be > 0, got {value}")
    return value


def _n_range(text: str) -> tuple[int, int]:
    try:
        lo_text, hi_text = text.split(":", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX, got {text!r}") from exc
    if not 2 <= lo <= hi <= 200:
        raise argparse.ArgumentTypeError(f"need 2 <= MIN <= MAX <= 200, got {text!r}")
    return lo, hi


def _weights(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated numbers, got {text!r}") from exc
    return values


def _add_palette_flags(sub: argparse.ArgumentParser, require_n: bool) -> None:
    sub.add_argument("--n", type=_positive_int, required=require_n, help="number of colors")
    sub.add_argument(
        "--scheme",
        choices=[kind.value for kind in SchemeKind],
        default=SchemeKind.EQUILIBRIUM.value,
    )
    sub.add_argument("--radius", type=_radius, default=None, metavar="LAB|auto",
                     help="sphere radius in Lab units, or 'auto' for the largest inscribed sphere (default)")
    sub.add_argument(
        "--gamut-mode",
        choices=[mode.value for mode in GamutMode],
        default=GamutMode.INSCRIBED_SPHERE.value,
    )
    sub.add_argument("--seed", type=int, default=0)


def _spec_from_args(args: argparse.Namespace) -> PaletteSpec:
    return PaletteSpec(
        n=args.n,
        scheme=SchemeKind(args.scheme),
        radius=args.radius,
        gamut_mode=GamutMode(args.gamut_mode),
        seed=args.seed,
    )


def _palette_from_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> Palette:
    if getattr(args, "from_path", None):
        with open(args.from_path, encoding="utf-8") as fh:
            return palette_from_json(fh.read())
    if args.n is None:
        parser.error("either --from or --n is required")
    return generate_palette(_spec_from_args(args))


def cmd_generate(args: argparse.Namespace) -> int:
    palette = generate_palette(_spec_from_args(args))
    if args.format == "json":
        text = palette_to_json(palette)
    elif args.format == "hex":
        text = palette_to_hex_list(palette)
    else:
        text = palette_to_gpl(palette)
    _write_text(args.out, text)
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    n_min, n_max = args.n
    ns = range(n_min, n_max + 1, args.stride)
    metric = ContrastMetric(args.metric)
    schemes = [SchemeKind.EQUILIBRIUM, SchemeKind.HARMONIC] if args.scheme == "both" else [SchemeKind(args.scheme)]
    spec_defaults = PaletteSpec(
        n=2,
        radius=args.radius,
        gamut_mode=GamutMode(args.gamut_mode),
        seed=args.seed,
    )
    os.makedirs(args.out_dir, exist_ok=True)
    reports = []
    for scheme in schemes:
        report = contrast_curve(scheme, metric, ns, spec_defaults)
        reports.append(report)
        csv_path = os.path.join(args.out_dir, f"{scheme.value}_{metric.value}.csv")
        write_series_csv(report, csv_path)
        print(jnd_report(report).to_text())
        print(f"wrote {csv_path}")
    if args.chart:
        render_contrast_chart(reports).save(args.chart)
        print(f"wrote {args.chart}")
    return 0


def _style(text: str, ok: bool) -> str:
    if not sys.stdout.isatty() or os.environ.get("NO_COLOR"):
        return text
    return f"\x1b[32m{text}\x1b[0m" if ok else f"\x1b[31m{text}\x1b[0m"


def cmd_verify_platonic(args: argparse.Namespace) -> int:
    cfg = SolverConfig(seed=args.seed)
    print(f"{'solid':<14} {'n':>3} {'edge':>10} {'target':>10} {'achieved':>10} {'error':>9}  result")
    all_ok = True
    for name, n, edge, target, differs in PLATONIC_ROWS:
        config = solve(n, cfg)
        err = abs(config.min_distance - target)
        ok = err <= args.tolerance
        all_ok &= ok
        star = "*" if differs else ""
        print(
            f"{name + star:<14} {n:>3} {edge:>10.6g} {target:>10.6g} "
            f"{config.min_distance:>10.6f} {err:>9.2e}  {_style('PASS' if ok else 'FAIL', ok)}"
        )
    print("* equilibrium optimum differs from the vertices of this solid")
    return 0 if all_ok else 1


def cmd_swatch(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    palette = _palette_from_args(parser, args)
    _write_text(args.out, render_swatches(palette, args.columns).body)
    return 0


def cmd_pie(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    palette = _palette_from_args(parser, args)
    _write_text(args.out, render_pie(palette, args.weights).body)
    return 0


def cmd_scatter(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    palette = _palette_from_args(parser, args)
    _write_text(args.out, render_lab_scatter(palette, ScatterProjection(args.projection)).body)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equipalette",
        description="Categorical color palettes from charge-equilibrium point sets in CIELAB.",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress informational output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="generate a palette and write it out")
    _add_palette_flags(p_gen, require_n=True)
    p_gen.add_argument("--format", choices=["json", "hex", "gpl"], default="json")
    p_gen.add_argument("--out", default=None, help="output path (default: stdout)")
    p_gen.set_defaults(func=cmd_generate)

    p_eval = sub.add_parser("eval", help="min-contrast-vs-n curves as CSV, optionally a chart")
    p_eval.add_argument("--scheme", choices=["equilibrium", "harmonic", "both"], default="both")
    p_eval.add_argument("--metric", choices=[m.value for m in ContrastMetric], default="cie76")
    p_eval.add_argument("--n", type=_n_range, default=(2, 100), metavar="MIN:MAX")
    p_eval.add_argument("--stride", type=_positive_int, default=1)
    p_eval.add_argument("--radius", type=_radius, default=None, metavar="LAB|auto")
    p_eval.add_argument(
        "--gamut-mode",
        choices=[mode.value for mode in GamutMode],
        default=GamutMode.INSCRIBED_SPHERE.value,
    )
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--out-dir", default=".")
    p_eval.add_argument("--chart", default=None, help="also write a combined SVG chart here")
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify-platonic", help="check solver minima against known optima")
    p_verify.add_argument("--tolerance", type=float, default=1e-3)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify_platonic)

    for name, handler, extras in (
        ("swatch", cmd_swatch, "columns"),
        ("pie", cmd_pie, "weights"),
        ("scatter", cmd_scatter, "projection"),
    ):
        p = sub.add_parser(name, help=f"render a palette {name} as SVG")
        _add_palette_flags(p, require_n=False)
        p.add_argument("--from", dest="from_path", default=None, metavar="PALETTE_JSON",
                       help="load a previously generated palette instead of the flags above")
        if extras == "columns":
            p.add_argument("--columns", type=_positive_int, default=8)
        elif extras == "weights":
            p.add_argument("--weights", type=_weights, default=None, metavar="W1,W2,...")
        else:
            p.add_argument(
                "--projection",
                choices=[proj.value for proj in ScatterProjection],
                default=ScatterProjection.AB_PLANE.value,
            )
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.set_defaults(func=handler, needs_parser=True)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "needs_parser", False):
            return args.func(args, parser)
        return args.func(args)
    except Exception as exc:  # argparse usage errors exit(2) before this
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
