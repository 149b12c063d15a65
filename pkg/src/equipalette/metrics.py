"""Perceptual contrast measures: CIE76 and CIEDE2000, plus JND thresholds.

CIE76 is plain Euclidean distance in CIELAB; a difference above ~5 is
reliably visible to a standard observer. CIEDE2000 adds chroma- and
hue-dependent weighting and a blue-region rotation term; its just-noticeable
difference sits at ~1. Hue angles are handled in degrees throughout, matching
the published formulation and its verification data.
"""

from __future__ import annotations

import enum
import itertools
import math
from typing import Sequence

from .color_space import LabColor

_POW25_7 = 25.0**7  # precomputed once; shows up in the G and RC terms


class ContrastMetric(enum.Enum):
    CIE76 = "cie76"
    CIEDE2000 = "ciede2000"

    @property
    def jnd_threshold(self) -> float:
        return 5.0 if self is ContrastMetric.CIE76 else 1.0

    def distance(self, x: LabColor, y: LabColor) -> float:
        if self is ContrastMetric.CIE76:
            return delta_e_76(x, y)
        return delta_e_2000(x, y)


def delta_e_76(x: LabColor, y: LabColor) -> float:
    """Euclidean distance in CIELAB."""
    return math.sqrt((x.L - y.L) ** 2 + (x.a - y.a) ** 2 + (x.b - y.b) ** 2)


def delta_e_2000(x: LabColor, y: LabColor, kL: float = 1.0, kC: float = 1.0, kH: float = 1.0) -> float:
    """CIEDE2000 color difference with parametric factors (1, 1, 1 by default).

    Symmetric in (x, y), zero iff x == y, continuous across the hue-angle
    wraparound at 360 degrees. Not a metric: the triangle inequality is not
    guaranteed and must not be assumed.
    """
    if kL <= 0 or kC <= 0 or kH <= 0:
        raise ValueError(f"parametric factors must be positive, got kL={kL} kC={kC} kH={kH}")

    L1, a1, b1 = x.L, x.a, x.b
    L2, a2, b2 = y.L, y.a, y.b

    # Chroma-dependent correction of the a* axis.
    c_bar = (math.hypot(a1, b1) + math.hypot(a2, b2)) / 2.0
    g = 0.5 * (1.0 - math.sqrt(c_bar**7 / (c_bar**7 + _POW25_7)))
    a1p = (1.0 + g) * a1
    a2p = (1.0 + g) * a2

    c1p = math.hypot(a1p, b1)
    c2p = math.hypot(a2p, b2)
    h1p = math.degrees(math.atan2(b1, a1p)) % 360.0 if (a1p != 0.0 or b1 != 0.0) else 0.0
    h2p = math.degrees(math.atan2(b2, a2p)) % 360.0 if (a2p != 0.0 or b2 != 0.0) else 0.0

    dlp = L2 - L1
    dcp = c2p - c1p
    if c1p * c2p == 0.0:
        dhp = 0.0
    else:
        dhp = h2p - h1p
        if dhp > 180.0:
            dhp -= 360.0
        elif dhp < -180.0:
            dhp += 360.0
    dHp = 2.0 * math.sqrt(c1p * c2p) * math.sin(math.radians(dhp) / 2.0)

    lbp = (L1 + L2) / 2.0
    cbp = (c1p + c2p) / 2.0
    if c1p * c2p == 0.0:
        hbp = h1p + h2p
    elif abs(h1p - h2p) <= 180.0:
        hbp = (h1p + h2p) / 2.0
    elif h1p + h2p < 360.0:
        hbp = (h1p + h2p) / 2.0 + 180.0
    else:
        hbp = (h1p + h2p) / 2.0 - 180.0

    t = (
        1.0
        - 0.17 * math.cos(math.radians(hbp - 30.0))
        + 0.24 * math.cos(math.radians(2.0 * hbp))
        + 0.32 * math.cos(math.radians(3.0 * hbp + 6.0))
        - 0.20 * math.cos(math.radians(4.0 * hbp - 63.0))
    )
    dtheta = 30.0 * math.exp(-(((hbp - 275.0) / 25.0) ** 2))
    rc = 2.0 * math.sqrt(cbp**7 / (cbp**7 + _POW25_7))
    sl = 1.0 + 0.015 * (lbp - 50.0) ** 2 / math.sqrt(20.0 + (lbp - 50.0) ** 2)
    sc = 1.0 + 0.045 * cbp
    sh = 1.0 + 0.015 * cbp * t
    rt = -math.sin(math.radians(2.0 * dtheta)) * rc

    fl = dlp / (kL * sl)
    fc = dcp / (kC * sc)
    fh = dHp / (kH * sh)
    return math.sqrt(fl * fl + fc * fc + fh * fh + rt * fc * fh)


def min_pairwise_contrast(colors: Sequence[LabColor], metric: ContrastMetric) -> float:
    """Minimum of the metric over all unordered pairs; the brute force IS the definition."""
    if len(colors) < 2:
        raise ValueError(f"need at least 2 colors, got {len(colors)}")
    return min(metric.distance(x, y) for x, y in itertools.combinations(colors, 2))
