"""Palette construction: the equilibrium scheme and the harmonic baseline.

The equilibrium scheme places n colors on a sphere centered at mid-gray
Lab(50, 0, 0): every color sits at the same perceptual distance from the
neutral background, and the sphere positions come from the charge-equilibrium
solver so the colors are spread as evenly as that distance allows. The
harmonic baseline is the even HSV hue wheel at full saturation and value.

Unit-sphere coordinates map to Lab offsets as (x, y, z) -> (da, db, dL), so
the pole axis is lightness.
"""

from __future__ import annotations

import colorsys
import enum
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import numpy as np

from . import metrics
from .color_space import D65, LabColor, SrgbColor, WhitePoint, labs_to_srgb_array, srgb_to_lab
from .equilibrium import SolverConfig, cached_solve

MID_GRAY = LabColor(50.0, 0.0, 0.0)

_RADIUS_TOL = 0.01  # Lab units, for both the inscribed-radius and clip bisections
_MIN_PROBE_DIRECTIONS = 2562  # icosphere subdivision level 4


class SchemeKind(enum.Enum):
    EQUILIBRIUM = "equilibrium"
    HARMONIC = "harmonic"


class GamutMode(enum.Enum):
    # INSCRIBED_SPHERE keeps exact equidistance from the center and relies on
    # the radius fitting inside the gamut; CLIP_TO_GAMUT allows any radius and
    # pulls stray colors radially inward until they are displayable.
    INSCRIBED_SPHERE = "inscribed-sphere"
    CLIP_TO_GAMUT = "clip-to-gamut"


@dataclass(frozen=True)
class PaletteSpec:
    n: int
    scheme: SchemeKind = SchemeKind.EQUILIBRIUM
    center: LabColor = MID_GRAY
    radius: Optional[float] = None  # None means auto: the largest inscribed sphere
    gamut_mode: GamutMode = GamutMode.INSCRIBED_SPHERE
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.radius is not None and not self.radius > 0:
            raise ValueError(f"radius must be > 0, got {self.radius}")


@dataclass(frozen=True)
class PaletteColor:
    lab: LabColor
    srgb: SrgbColor
    in_gamut: bool


@dataclass(frozen=True)
class Palette:
    colors: tuple[PaletteColor, ...]
    spec: PaletteSpec
    # Minimum pairwise contrasts of the final Lab colors; None for n < 2.
    achieved_min_de76: Optional[float]
    achieved_min_de2000: Optional[float]

    def labs(self) -> list[LabColor]:
        return [c.lab for c in self.colors]

    def hex_codes(self) -> list[str]:
        return [c.srgb.to_hex() for c in self.colors]


def _icosahedron() -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    raw = []
    for s1 in (-1.0, 1.0):
        for s2 in (-1.0, 1.0):
            raw += [(0.0, s1, s2 * phi), (s1, s2 * phi, 0.0), (s1 * phi, 0.0, s2)]
    verts = np.array(raw) / math.sqrt(1.0 + phi * phi)
    # faces = vertex triples whose three pairwise chords all equal the edge
    edge2 = 4.0 / (1.0 + phi * phi) + 1e-9
    faces = []
    for i in range(12):
        for j in range(i + 1, 12):
            if np.sum((verts[i] - verts[j]) ** 2) > edge2:
                continue
            for k in range(j + 1, 12):
                if (
                    np.sum((verts[i] - verts[k]) ** 2) <= edge2
                    and np.sum((verts[j] - verts[k]) ** 2) <= edge2
                ):
                    faces.append((i, j, k))
    return verts, faces


@lru_cache(maxsize=None)
def probe_directions(levels: int = 4) -> np.ndarray:
    """Near-uniform unit directions from icosahedron face subdivision.

    Level 4 gives 2562 distinct directions. Read-only.
    """
    verts, faces = _icosahedron()
    points = [tuple(v) for v in verts]
    for _ in range(levels):
        midpoint_cache: dict[tuple[int, int], int] = {}
        new_faces = []

        def midpoint(i: int, j: int) -> int:
            key = (i, j) if i < j else (j, i)
            if key not in midpoint_cache:
                m = np.add(points[i], points[j]) / 2.0
                m /= np.linalg.norm(m)
                midpoint_cache[key] = len(points)
                points.append(tuple(m))
            return midpoint_cache[key]

        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_faces += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
        faces = new_faces
    dirs = np.array(points)
    dirs.setflags(write=False)
    return dirs


def _sphere_in_gamut(center: np.ndarray, radius: float, dirs: np.ndarray, wp: WhitePoint) -> bool:
    _, ok = labs_to_srgb_array(center + radius * dirs, wp)
    return bool(np.all(ok))


@lru_cache(maxsize=64)
def max_inscribed_radius(center: LabColor = MID_GRAY, wp: WhitePoint = D65) -> float:
    """Largest radius whose full sphere around `center` converts in-gamut.

    Bisection to 0.01 Lab units, testing 2562 near-uniform directions per
    candidate radius. The center must be strictly inside the gamut.
    """
    c = center.as_array()
    _, ok = labs_to_srgb_array(c[None, :], wp)
    if not ok[0]:
        raise ValueError(f"center {center} is outside the sRGB gamut")
    dirs = probe_directions()
    assert dirs.shape[0] >= _MIN_PROBE_DIRECTIONS
    # leaving 0 <= L <= 100 always leaves the gamut, so this bounds the search
    lo, hi = 0.0, min(center.L, 100.0 - center.L) + 1.0
    while hi - lo > _RADIUS_TOL:
        mid = (lo + hi) / 2.0
        if _sphere_in_gamut(c, mid, dirs, wp):
            lo = mid
        else:
            hi = mid
    return lo


def _clip_toward_center(center: np.ndarray, pos: np.ndarray, wp: WhitePoint) -> np.ndarray:
    """Largest in-gamut point on the segment center -> pos, to 0.01 Lab units."""
    _, ok = labs_to_srgb_array(pos[None, :], wp)
    if ok[0]:
        return pos
    span = float(np.linalg.norm(pos - center))
    lo, hi = 0.0, 1.0
    while (hi - lo) * span > _RADIUS_TOL:
        mid = (lo + hi) / 2.0
        _, ok = labs_to_srgb_array((center + mid * (pos - center))[None, :], wp)
        if ok[0]:
            lo = mid
        else:
            hi = mid
    return center + lo * (pos - center)


def _hue_angle(lab: LabColor) -> float:
    return math.degrees(math.atan2(lab.b, lab.a)) % 360.0


def _assemble(lab_rows: np.ndarray, spec: PaletteSpec, wp: WhitePoint, sort: bool) -> Palette:
    labs = [LabColor(*(float(v) for v in row)) for row in lab_rows]
    if sort:
        labs.sort(key=lambda c: (-c.L, _hue_angle(c)))
    colors = []
    for lab in labs:
        rgb, in_gamut = labs_to_srgb_array(lab.as_array()[None, :], wp)
        colors.append(PaletteColor(lab, SrgbColor(*(float(v) for v in rgb[0])), bool(in_gamut[0])))
    de76 = de2000 = None
    if len(labs) >= 2:
        de76 = metrics.min_pairwise_contrast(labs, metrics.ContrastMetric.CIE76)
        de2000 = metrics.min_pairwise_contrast(labs, metrics.ContrastMetric.CIEDE2000)
    return Palette(tuple(colors), spec, de76, de2000)


def equilibrium_palette(
    spec: PaletteSpec, cfg: Optional[SolverConfig] = None, wp: WhitePoint = D65
) -> Palette:
    """Sphere equilibrium scaled by the requested radius and moved to the center.

    The palette seed is authoritative: solver restarts derive from it, and any
    provided config contributes only its algorithmic knobs. Colors come out
    sorted by descending lightness, then hue angle. Solver non-convergence is
    not an error; positions are still the best of all restarts.
    """
    if spec.scheme is not SchemeKind.EQUILIBRIUM:
        raise ValueError(f"spec.scheme must be EQUILIBRIUM, got {spec.scheme}")
    cfg = SolverConfig(seed=spec.seed) if cfg is None else replace(cfg, seed=spec.seed)
    radius = spec.radius if spec.radius is not None else max_inscribed_radius(spec.center, wp)
    center = spec.center.as_array()

    if spec.n == 1:
        unit = np.array([[0.0, 0.0, 1.0]])  # lone color at the +L pole
    else:
        unit = cached_solve(spec.n, cfg).points
    # (x, y, z) -> (da, db, dL): reorder columns so the pole axis lands on L
    lab_rows = center + radius * unit[:, [2, 0, 1]]

    if spec.gamut_mode is GamutMode.CLIP_TO_GAMUT:
        lab_rows = np.array([_clip_toward_center(center, row, wp) for row in lab_rows])
    return _assemble(lab_rows, spec, wp, sort=True)


def harmonic_palette(spec: PaletteSpec, wp: WhitePoint = D65) -> Palette:
    """n hues evenly spaced on the HSV wheel at S = V = 1; no seed dependence."""
    if spec.scheme is not SchemeKind.HARMONIC:
        raise ValueError(f"spec.scheme must be HARMONIC, got {spec.scheme}")
    colors = []
    for i in range(spec.n):
        r, g, b = colorsys.hsv_to_rgb(i / spec.n, 1.0, 1.0)
        srgb = SrgbColor(r, g, b)
        colors.append(PaletteColor(srgb_to_lab(srgb, wp), srgb, True))
    labs = [c.lab for c in colors]
    de76 = de2000 = None
    if spec.n >= 2:
        de76 = metrics.min_pairwise_contrast(labs, metrics.ContrastMetric.CIE76)
        de2000 = metrics.min_pairwise_contrast(labs, metrics.ContrastMetric.CIEDE2000)
    return Palette(tuple(colors), spec, de76, de2000)


def generate_palette(
    spec: PaletteSpec, cfg: Optional[SolverConfig] = None, wp: WhitePoint = D65
) -> Palette:
    if spec.scheme is SchemeKind.HARMONIC:
        return harmonic_palette(spec, wp)
    return equilibrium_palette(spec, cfg, wp)
