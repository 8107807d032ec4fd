"""CAM16 color appearance model and the CAM16-UCS uniform space.

Implements the forward model (XYZ plus viewing conditions to the appearance
correlates J, C, h, M, s, Q), the analytic inverse, and the UCS coordinates
(J', a'_M, b'_M) in which Euclidean distance approximates perceived color
difference.

Viewing conditions:

``white``     reference white tristimulus, scaled to Y_w = 100.
``Y_b``       relative luminance of the background region, 0-100; 20 is the
              usual gray-world value.
``L_A``       luminance of the adapting field in cd/m2.
``surround``  'average', 'dim' or 'dark', selecting the (F, c, N_c) triple.
``D``         degree of adaptation; None selects the surround-derived
              formula clamped to [0, 1].

A constructed ``Cam16ViewingConditions`` precomputes every derived constant
and is immutable, so one instance can be shared freely between threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import OBSERVER_2DEG, Tristimulus, illuminant_white

# CAT16 chromatic adaptation matrix and its inverse
M16 = np.array(
    [
        [0.401288, 0.650173, -0.051461],
        [-0.250268, 1.204414, 0.045854],
        [-0.002079, 0.048952, 0.953127],
    ]
)
M16_INV = np.linalg.inv(M16)

# opponent decomposition used by the inverse, scaled by 1/1403
_M_AB = np.array(
    [
        [460.0, 451.0, 288.0],
        [460.0, -891.0, -261.0],
        [460.0, -220.0, -6300.0],
    ]
)

SURROUNDS = {
    "average": (1.0, 0.69, 1.0),
    "dim": (0.9, 0.59, 0.9),
    "dark": (0.8, 0.525, 0.8),
}


def d65_white_tristimulus(observer_id: str = OBSERVER_2DEG) -> Tristimulus:
    """Bundled-table D65 white with Y scaled to 100."""
    w = illuminant_white("D65", observer_id)
    return Tristimulus(100.0 * w.x / w.y, 100.0, 100.0 * w.z / w.y)


@dataclass(frozen=True, eq=False)
class Cam16ViewingConditions:
    white: Tristimulus = field(default_factory=d65_white_tristimulus)
    Y_b: float = 20.0
    L_A: float = 50.0
    surround: str = "average"
    D: float | None = None

    def __post_init__(self):
        if self.surround not in SURROUNDS:
            raise ValueError(f"surround must be one of {tuple(SURROUNDS)}, got {self.surround!r}")
        if self.L_A <= 0:
            raise ValueError("adapting luminance L_A must be positive")
        if not 0.0 <= self.Y_b <= 100.0:
            raise ValueError("background luminance Y_b must lie in [0, 100]")
        if abs(self.white.Y - 100.0) > 1e-6:
            raise ValueError("reference white must be scaled to Y_w = 100")
        if self.D is not None and not 0.0 <= self.D <= 1.0:
            raise ValueError("explicit degree of adaptation D must lie in [0, 1]")

        F, c, N_c = SURROUNDS[self.surround]
        d = self.D
        if d is None:
            d = F * (1.0 - (1.0 / 3.6) * math.exp((-self.L_A - 42.0) / 92.0))
            d = min(max(d, 0.0), 1.0)

        k = 1.0 / (5.0 * self.L_A + 1.0)
        k4 = k**4
        F_L = 0.2 * k4 * 5.0 * self.L_A + 0.1 * (1.0 - k4) ** 2 * (5.0 * self.L_A) ** (1.0 / 3.0)

        n = self.Y_b / self.white.Y
        z = 1.48 + math.sqrt(n)
        N_bb = 0.725 * n**-0.2

        rgb_w = M16 @ self.white.as_array()
        d_rgb = d * self.white.Y / rgb_w + 1.0 - d
        rgb_aw = _adapt(d_rgb * rgb_w, F_L)
        A_w = float(N_bb * (2.0 * rgb_aw[0] + rgb_aw[1] + 0.05 * rgb_aw[2]))

        for name, value in (
            ("c", c),
            ("N_c", N_c),
            ("D_eff", d),
            ("F_L", F_L),
            ("F_L_root", F_L**0.25),
            ("n", n),
            ("z", z),
            ("N_bb", N_bb),
            ("N_cb", N_bb),
            ("d_rgb", d_rgb),
            ("A_w", A_w),
        ):
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class Cam16Appearance:
    """CAM16 correlates: lightness J, chroma C, hue angle h (degrees),
    colorfulness M, saturation s, brightness Q."""

    J: float
    C: float
    h: float
    M: float
    s: float
    Q: float

    def __post_init__(self):
        for name in ("J", "C", "h", "M", "s", "Q"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "h", self.h % 360.0)


@dataclass(frozen=True)
class UcsPoint:
    """CAM16-UCS coordinates (J', a'_M, b'_M)."""

    J_prime: float
    a_M: float
    b_M: float

    def __post_init__(self):
        for name in ("J_prime", "a_M", "b_M"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def as_array(self) -> np.ndarray:
        return np.array([self.J_prime, self.a_M, self.b_M])


def _adapt(rgb: np.ndarray, F_L: float) -> np.ndarray:
    """Post-adaptation cone compression; sign-preserving."""
    t = (F_L * np.abs(rgb) / 100.0) ** 0.42
    return np.copysign(400.0 * t / (t + 27.13), rgb)


def _unadapt(rgb_a: np.ndarray, F_L: float) -> np.ndarray:
    mag = np.abs(rgb_a)
    if np.any(mag >= 400.0):
        raise ValueError("appearance outside the invertible range (|response| >= 400)")
    core = (27.13 * mag / (400.0 - mag)) ** (1.0 / 0.42)
    return np.copysign(100.0 / F_L * core, rgb_a)


def cam16_forward(stimulus: Tristimulus, vc: Cam16ViewingConditions) -> Cam16Appearance:
    """XYZ (Y on 0-100) to CAM16 appearance correlates."""
    rgb_a = _adapt(vc.d_rgb * (M16 @ stimulus.as_array()), vc.F_L)

    a = rgb_a[0] - 12.0 * rgb_a[1] / 11.0 + rgb_a[2] / 11.0
    b = (rgb_a[0] + rgb_a[1] - 2.0 * rgb_a[2]) / 9.0
    h_rad = math.atan2(b, a)
    h = math.degrees(h_rad) % 360.0

    A = vc.N_bb * (2.0 * rgb_a[0] + rgb_a[1] + 0.05 * rgb_a[2])
    if A <= 0.0:
        return Cam16Appearance(0.0, 0.0, h, 0.0, 0.0, 0.0)

    J = 100.0 * (A / vc.A_w) ** (vc.c * vc.z)
    Q = (4.0 / vc.c) * math.sqrt(J / 100.0) * (vc.A_w + 4.0) * vc.F_L_root

    e_t = 0.25 * (math.cos(h_rad + 2.0) + 3.8)
    t = (
        (50000.0 / 13.0)
        * vc.N_c
        * vc.N_cb
        * e_t
        * math.hypot(a, b)
        / (rgb_a[0] + rgb_a[1] + 1.05 * rgb_a[2] + 0.305)
    )
    alpha = t**0.9 * (1.64 - 0.29**vc.n) ** 0.73
    C = alpha * math.sqrt(J / 100.0)
    M = C * vc.F_L_root
    s = 100.0 * math.sqrt(M / Q) if Q > 0 else 0.0
    return Cam16Appearance(J, C, h, M, s, Q)


def cam16_inverse(
    J: float,
    h: float,
    vc: Cam16ViewingConditions,
    C: float | None = None,
    M: float | None = None,
) -> Tristimulus:
    """CAM16 appearance back to XYZ.  Exactly one of C and M must be given."""
    if (C is None) == (M is None):
        raise ValueError("provide exactly one of chroma C or colorfulness M")
    if M is not None:
        C = M / vc.F_L_root
    if J < 0 or C < 0:
        raise ValueError("J and C must be non-negative")
    if J == 0.0:
        if C > 0:
            raise ValueError("chromatic appearance with zero lightness is not invertible")
        return Tristimulus(0.0, 0.0, 0.0)

    h_rad = math.radians(h % 360.0)
    cos_h, sin_h = math.cos(h_rad), math.sin(h_rad)

    alpha = C / math.sqrt(J / 100.0)
    t = (alpha / (1.64 - 0.29**vc.n) ** 0.73) ** (10.0 / 9.0)
    e_t = 0.25 * (math.cos(h_rad + 2.0) + 3.8)

    A = vc.A_w * (J / 100.0) ** (1.0 / (vc.c * vc.z))
    p1 = (50000.0 / 13.0) * vc.N_c * vc.N_cb * e_t
    p2 = A / vc.N_bb

    if t > 0.0:
        gamma = 23.0 * (p2 + 0.305) * t / (23.0 * p1 + t * (11.0 * cos_h + 108.0 * sin_h))
    else:
        gamma = 0.0
    a, b = gamma * cos_h, gamma * sin_h

    rgb_a = _M_AB @ np.array([p2, a, b]) / 1403.0
    rgb = (M16_INV @ (_unadapt(rgb_a, vc.F_L) / vc.d_rgb))
    if np.any(rgb < -1e-6):
        raise ValueError("appearance inverts to a non-physical (negative) stimulus")
    rgb = np.clip(rgb, 0.0, None)
    return Tristimulus(*rgb)


def to_ucs(app: Cam16Appearance) -> UcsPoint:
    """Project appearance correlates into CAM16-UCS."""
    J_prime = 1.7 * app.J / (1.0 + 0.007 * app.J)
    M_prime = math.log1p(0.0228 * app.M) / 0.0228
    h_rad = math.radians(app.h)
    return UcsPoint(J_prime, M_prime * math.cos(h_rad), M_prime * math.sin(h_rad))


def ucs_lightness_to_j(J_prime: float) -> float:
    """Invert the UCS lightness compression."""
    return J_prime / (1.7 - 0.007 * J_prime)


def ucs_colorfulness_to_m(M_prime: float) -> float:
    """Invert the UCS colorfulness compression."""
    return math.expm1(0.0228 * M_prime) / 0.0228


def delta_e_ucs(p: UcsPoint, q: UcsPoint) -> float:
    """Euclidean distance in (J', a'_M, b'_M)."""
    return float(
        math.sqrt(
            (p.J_prime - q.J_prime) ** 2 + (p.a_M - q.a_M) ** 2 + (p.b_M - q.b_M) ** 2
        )
    )
