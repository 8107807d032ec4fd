"""In-gamut color atlases on a uniform CAM16-UCS grid.

An atlas is a square lattice in the (a'_M, b'_M) plane at a fixed CAM16
lightness J, anchored at the achromatic origin, with a configurable spacing
in UCS units.  Every lattice candidate is inverted through CAM16 to a
stimulus and kept only if the display gamut can reproduce it.  Candidates
the model cannot invert are counted separately so gamut holes are never
confused with solver failures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cam16 import (
    Cam16Appearance,
    Cam16ViewingConditions,
    UcsPoint,
    cam16_forward,
    cam16_inverse,
    to_ucs,
    ucs_colorfulness_to_m,
)
from .spectral import Chromaticity, Tristimulus, illuminant_white, xyz_to_chromaticity
from .targets import REC709_PRIMARIES

ATLAS_CSV_HEADER = "J,a_m_prime,b_m_prime,X,Y,Z,x,y,R_lin,G_lin,B_lin"

_GAMUT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DisplayGamut:
    """An additive three-primary display."""

    primaries: tuple[Chromaticity, Chromaticity, Chromaticity] = REC709_PRIMARIES
    white: Chromaticity = field(default_factory=lambda: illuminant_white("D65"))
    white_luminance: float = 100.0

    def __post_init__(self):
        if self.white_luminance <= 0:
            raise ValueError("white luminance must be positive")
        cols = np.empty((3, 3))
        for i, p in enumerate(self.primaries):
            if p.y <= 0:
                raise ValueError("primary with zero y is degenerate")
            cols[:, i] = (p.x / p.y, 1.0, p.z / p.y)
        if abs(np.linalg.det(cols)) < 1e-12:
            raise ValueError("primaries form a degenerate triangle")
        white_xyz = np.array([self.white.x / self.white.y, 1.0, self.white.z / self.white.y])
        scale = np.linalg.solve(cols, white_xyz)
        if np.any(scale <= 0):
            raise ValueError("white point lies outside the primary triangle")
        m = cols * scale * self.white_luminance
        object.__setattr__(self, "rgb_to_xyz", m)
        object.__setattr__(self, "xyz_to_rgb", np.linalg.inv(m))

    def linear_rgb(self, xyz: Tristimulus) -> np.ndarray:
        """Linear channel drive levels reproducing ``xyz`` (unclamped)."""
        return self.xyz_to_rgb @ xyz.as_array()


def gamut_contains(xyz: Tristimulus, gamut: DisplayGamut) -> bool:
    """True iff the stimulus is reproducible with channel levels in [0, 1]."""
    rgb = gamut.linear_rgb(xyz)
    return bool(np.all(rgb >= -_GAMUT_TOL) and np.all(rgb <= 1.0 + _GAMUT_TOL))


@dataclass(frozen=True)
class AtlasSpec:
    """Parameters of one atlas slice."""

    vc: Cam16ViewingConditions
    J: float
    spacing: float = 2.0
    gamut: DisplayGamut = field(default_factory=DisplayGamut)
    chroma_bound: float = 60.0

    def __post_init__(self):
        if not 0.0 < self.J < 100.0:
            raise ValueError("lightness J must lie in (0, 100)")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if self.chroma_bound <= 0:
            raise ValueError("chroma bound must be positive")


@dataclass(frozen=True)
class AtlasPoint:
    ucs: UcsPoint
    appearance: Cam16Appearance
    xyz: Tristimulus
    xy: Chromaticity
    rgb_linear: tuple[float, float, float]


@dataclass(frozen=True)
class AtlasResult:
    """Atlas points plus generation diagnostics."""

    points: tuple[AtlasPoint, ...]
    inversion_failures: int
    candidates: int

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def generate_atlas(spec: AtlasSpec) -> AtlasResult:
    """Generate the in-gamut UCS lattice for one lightness level.

    Deterministic: candidates are scanned in a fixed order and the output is
    sorted by (b'_M, a'_M).
    """
    j_prime = 1.7 * spec.J / (1.0 + 0.007 * spec.J)
    steps = int(math.floor(spec.chroma_bound / spec.spacing))
    failures = 0
    candidates = 0
    kept = []
    for j in range(-steps, steps + 1):
        b_m = j * spec.spacing
        for i in range(-steps, steps + 1):
            a_m = i * spec.spacing
            candidates += 1
            h = math.degrees(math.atan2(b_m, a_m)) % 360.0
            m = ucs_colorfulness_to_m(math.hypot(a_m, b_m))
            try:
                xyz = cam16_inverse(spec.J, h, spec.vc, M=m)
            except ValueError:
                failures += 1
                continue
            if not gamut_contains(xyz, spec.gamut):
                continue
            appearance = cam16_forward(xyz, spec.vc)
            rgb = np.clip(spec.gamut.linear_rgb(xyz), 0.0, 1.0)
            kept.append(
                AtlasPoint(
                    ucs=UcsPoint(j_prime, a_m, b_m),
                    appearance=appearance,
                    xyz=xyz,
                    xy=xyz_to_chromaticity(xyz),
                    rgb_linear=tuple(float(v) for v in rgb),
                )
            )
    kept.sort(key=lambda p: (p.ucs.b_M, p.ucs.a_M))
    return AtlasResult(tuple(kept), failures, candidates)


def atlas_to_xy(points) -> list[tuple[float, float]]:
    """Project atlas points onto the xy chromaticity plane."""
    pts = list(points)
    if not pts:
        raise ValueError("cannot project an empty atlas")
    return [(p.xy.x, p.xy.y) for p in pts]


def atlas_csv(points) -> str:
    """Serialize atlas points with the canonical column set."""
    lines = [ATLAS_CSV_HEADER]
    for p in points:
        lines.append(
            ",".join(
                repr(float(v))
                for v in (
                    p.appearance.J,
                    p.ucs.a_M,
                    p.ucs.b_M,
                    p.xyz.X,
                    p.xyz.Y,
                    p.xyz.Z,
                    p.xy.x,
                    p.xy.y,
                    *p.rgb_linear,
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_atlas_csv(points, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(atlas_csv(points))


def scatter_svg(
    xy_pairs,
    width: int = 640,
    height: int = 640,
    margin: float = 0.08,
    labels: tuple[str, str] = ("a'_M", "b'_M"),
) -> str:
    """Minimal deterministic scatter plot as an SVG document."""
    pairs = list(xy_pairs)
    if not pairs:
        raise ValueError("nothing to plot")
    xs = [p[0] for p in pairs]
    ys = [p[1] for p in pairs]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span_x = (x1 - x0) or 1.0
    span_y = (y1 - y0) or 1.0
    pad_x, pad_y = span_x * margin, span_y * margin
    x0, x1 = x0 - pad_x, x1 + pad_x
    y0, y1 = y0 - pad_y, y1 + pad_y

    def px(x):
        return (x - x0) / (x1 - x0) * width

    def py(y):
        return height - (y - y0) / (y1 - y0) * height

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="8" y="16" font-size="12" font-family="monospace">{labels[0]} vs {labels[1]}</text>',
    ]
    for x, y in pairs:
        parts.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2.5" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
