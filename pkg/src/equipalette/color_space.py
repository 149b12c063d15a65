"""sRGB <-> CIELAB conversion via CIE XYZ, fixed to the D65/2-degree white.

All perceptual math in this package happens in CIELAB; this module is the
geometric substrate. Conversions use the standard piecewise sRGB transfer
curve (threshold 0.04045, slope 12.92, exponent 2.4) and the CIE 1976 Lab
transform with the 6/29 linear-segment cutoff. Every function here is pure
and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class InvalidColorError(ValueError):
    """Raised when a color value violates its domain constraints."""


@dataclass(frozen=True)
class WhitePoint:
    """Reference-white tristimulus values, scaled so Yn = 100."""

    Xn: float
    Yn: float
    Zn: float


# D65 / 2-degree observer, the sRGB native white. No chromatic adaptation
# is performed anywhere in this package.
D65 = WhitePoint(95.047, 100.0, 108.883)

# Published 7-digit sRGB->XYZ matrix, with each row rescaled so that its sum
# is exactly the D65 white. The raw middle row sums to 1.0000001, which would
# push white to L > 100 and grays off the a=b=0 axis; after rescaling the
# neutral axis maps to |a|,|b| < 1e-12 and white to L = 100 exactly.
_SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_D65_UNIT = np.array([D65.Xn, D65.Yn, D65.Zn]) / 100.0
_SRGB_TO_XYZ *= (_D65_UNIT / _SRGB_TO_XYZ.sum(axis=1))[:, None]
# Numerical inverse rather than published inverse constants: the pair is then
# consistent to machine precision, which the < 1e-9 round-trip contract needs.
_XYZ_TO_SRGB = np.linalg.inv(_SRGB_TO_XYZ)

_DELTA = 6.0 / 29.0
_GAMUT_EPS = 1e-6
_LAB_BOUND_TOL = 1e-9  # absorbs float round-off at the L=0/L=100 planes


@dataclass(frozen=True)
class SrgbColor:
    """Display color with nonlinear channels nominally in [0, 1]."""

    r: float
    g: float
    b: float

    def is_displayable(self, eps: float = _GAMUT_EPS) -> bool:
        return all(-eps <= c <= 1.0 + eps for c in (self.r, self.g, self.b))

    def clamped(self) -> "SrgbColor":
        return SrgbColor(*(min(1.0, max(0.0, c)) for c in (self.r, self.g, self.b)))

    def to_hex(self) -> str:
        """6-digit lowercase hex of the clamped color, round-half-up per channel."""
        q = [int(math.floor(min(1.0, max(0.0, c)) * 255.0 + 0.5)) for c in (self.r, self.g, self.b)]
        return "#{:02x}{:02x}{:02x}".format(*q)

    @classmethod
    def from_hex(cls, text: str) -> "SrgbColor":
        s = text.strip().lstrip("#")
        if len(s) != 6:
            raise InvalidColorError(f"expected 6 hex digits, got {text!r}")
        return cls(*(int(s[i : i + 2], 16) / 255.0 for i in (0, 2, 4)))


@dataclass(frozen=True)
class XyzColor:
    """CIE XYZ tristimulus values, scaled so the reference white has Y = 100."""

    X: float
    Y: float
    Z: float


@dataclass(frozen=True)
class LabColor:
    """A point in CIELAB. L in [0, 100], a and b in [-128, 127]."""

    L: float
    a: float
    b: float

    def __post_init__(self) -> None:
        for name, value in (("L", self.L), ("a", self.a), ("b", self.b)):
            if not math.isfinite(value):
                raise InvalidColorError(f"non-finite Lab component {name}={value}")
        if not -_LAB_BOUND_TOL <= self.L <= 100.0 + _LAB_BOUND_TOL:
            raise InvalidColorError(f"L={self.L} outside [0, 100]")
        for name, value in (("a", self.a), ("b", self.b)):
            if not -128.0 - _LAB_BOUND_TOL <= value <= 127.0 + _LAB_BOUND_TOL:
                raise InvalidColorError(f"{name}={value} outside [-128, 127]")

    def as_array(self) -> np.ndarray:
        return np.array([self.L, self.a, self.b])


def _linearize(channel: np.ndarray) -> np.ndarray:
    return np.where(channel <= 0.04045, channel / 12.92, ((channel + 0.055) / 1.055) ** 2.4)


def _delinearize(linear: np.ndarray) -> np.ndarray:
    # Mirrored for negative inputs so the extended curve stays monotone;
    # negative linear values only occur out of gamut.
    mag = np.abs(linear)
    enc = np.where(mag <= 0.0031308, 12.92 * mag, 1.055 * mag ** (1.0 / 2.4) - 0.055)
    return np.copysign(enc, linear)


def _lab_forward(t: np.ndarray) -> np.ndarray:
    return np.where(t > _DELTA**3, np.cbrt(t), t / (3.0 * _DELTA**2) + 4.0 / 29.0)


def _lab_inverse(f: np.ndarray) -> np.ndarray:
    return np.where(f > _DELTA, f**3, 3.0 * _DELTA**2 * (f - 4.0 / 29.0))


def srgb_to_xyz(c: SrgbColor) -> XyzColor:
    """Linearize and apply the sRGB->XYZ matrix."""
    rgb = np.array([c.r, c.g, c.b], dtype=float)
    if not np.all(np.isfinite(rgb)):
        raise InvalidColorError(f"non-finite sRGB channels {rgb.tolist()}")
    xyz = 100.0 * (_SRGB_TO_XYZ @ _linearize(rgb))
    return XyzColor(*(float(v) for v in xyz))


def xyz_to_lab(c: XyzColor, wp: WhitePoint = D65) -> LabColor:
    t = np.array([c.X / wp.Xn, c.Y / wp.Yn, c.Z / wp.Zn])
    fx, fy, fz = (float(v) for v in _lab_forward(t))
    return LabColor(116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz))


def srgb_to_lab(c: SrgbColor, wp: WhitePoint = D65) -> LabColor:
    """Full forward chain sRGB -> linear RGB -> XYZ -> Lab."""
    return xyz_to_lab(srgb_to_xyz(c), wp)


def lab_to_xyz(c: LabColor, wp: WhitePoint = D65) -> XyzColor:
    fy = (c.L + 16.0) / 116.0
    f = np.array([fy + c.a / 500.0, fy, fy - c.b / 200.0])
    t = _lab_inverse(f)
    return XyzColor(float(t[0]) * wp.Xn, float(t[1]) * wp.Yn, float(t[2]) * wp.Zn)


def lab_to_srgb(c: LabColor, wp: WhitePoint = D65) -> tuple[SrgbColor, bool]:
    """Inverse chain. Returns the clamped color and an in-gamut flag.

    The flag is true iff every pre-clamp channel lies in [-1e-6, 1 + 1e-6];
    out-of-gamut input is not an error.
    """
    xyz = lab_to_xyz(c, wp)
    linear = _XYZ_TO_SRGB @ (np.array([xyz.X, xyz.Y, xyz.Z]) / 100.0)
    rgb = _delinearize(linear)
    in_gamut = bool(np.all((rgb >= -_GAMUT_EPS) & (rgb <= 1.0 + _GAMUT_EPS)))
    return SrgbColor(*(float(v) for v in np.clip(rgb, 0.0, 1.0))), in_gamut


def round_trip_error(c: SrgbColor) -> float:
    """Max channel deviation of lab_to_srgb(srgb_to_lab(c)) from c."""
    back, _ = lab_to_srgb(srgb_to_lab(c))
    return max(abs(back.r - c.r), abs(back.g - c.g), abs(back.b - c.b))


def labs_to_srgb_array(labs: np.ndarray, wp: WhitePoint = D65) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized inverse chain for an (n, 3) array of raw Lab rows.

    Skips LabColor range validation so callers can probe points outside the
    Lab box (those are simply out of gamut). Returns (clamped sRGB rows,
    in-gamut mask).
    """
    labs = np.asarray(labs, dtype=float)
    fy = (labs[:, 0] + 16.0) / 116.0
    f = np.stack([fy + labs[:, 1] / 500.0, fy, fy - labs[:, 2] / 200.0], axis=1)
    t = _lab_inverse(f)
    xyz = t * (np.array([wp.Xn, wp.Yn, wp.Zn]) / 100.0)
    rgb = _delinearize(xyz @ _XYZ_TO_SRGB.T)
    in_gamut = np.all((rgb >= -_GAMUT_EPS) & (rgb <= 1.0 + _GAMUT_EPS), axis=1)
    return np.clip(rgb, 0.0, 1.0), in_gamut
