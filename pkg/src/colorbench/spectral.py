"""CIE colorimetry on a fixed 1 nm working grid spanning 360-720 nm.

Tristimulus integration follows CIE 15: weighted sums of a sample spectrum
against an illuminant and a standard observer, normalized so that a perfect
reflector scores Y = 100 under the chosen illuminant.

Two luminance scales coexist in this package: the colorimetric Y on 0-100
and the TV-side relative luminance on 0-1.  ``y100_to_lc`` / ``lc_to_y100``
are the only sanctioned bridge between them.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

GRID_START_NM = 360
GRID_STOP_NM = 720
GRID_STEP_NM = 1
GRID_COUNT = (GRID_STOP_NM - GRID_START_NM) // GRID_STEP_NM + 1

_DATA_DIR = Path(__file__).parent / "data"

OBSERVER_2DEG = "degree2"
OBSERVER_10DEG = "degree10"

_OBSERVER_FILES = {
    OBSERVER_2DEG: "cie_1931_2deg_1nm.csv",
    OBSERVER_10DEG: "cie_1964_10deg_1nm.csv",
}


def grid_wavelengths() -> np.ndarray:
    """Wavelengths of the working grid, in nm."""
    return np.arange(GRID_START_NM, GRID_STOP_NM + 1, GRID_STEP_NM, dtype=float)


@dataclass(frozen=True, eq=False)
class SpectralDistribution:
    """Uniformly sampled non-negative spectral function."""

    start_nm: int
    step_nm: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.values, dtype=float))
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("spectral distribution requires a non-empty 1-D sample vector")
        if self.step_nm <= 0:
            raise ValueError("step_nm must be a positive number of nanometers")
        if not np.all(np.isfinite(vals)):
            raise ValueError("spectral samples must be finite")
        if np.any(vals < 0):
            raise ValueError("spectral samples must be non-negative")

    @property
    def stop_nm(self) -> float:
        return self.start_nm + self.step_nm * (self.values.size - 1)

    @property
    def wavelengths(self) -> np.ndarray:
        return self.start_nm + self.step_nm * np.arange(self.values.size, dtype=float)

    def is_working_grid(self) -> bool:
        return (
            self.start_nm == GRID_START_NM
            and self.step_nm == GRID_STEP_NM
            and self.values.size == GRID_COUNT
        )

    def scaled(self, factor: float) -> "SpectralDistribution":
        if factor < 0:
            raise ValueError("scale factor must be non-negative")
        return SpectralDistribution(self.start_nm, self.step_nm, self.values * factor)


def resample(
    spd: SpectralDistribution,
    start_nm: int = GRID_START_NM,
    step_nm: int = GRID_STEP_NM,
    count: int = GRID_COUNT,
) -> SpectralDistribution:
    """Resample onto a new uniform grid.

    Linear interpolation inside the source support, zero outside it.
    """
    if step_nm <= 0 or count < 1:
        raise ValueError("target grid must be increasing and non-empty")
    new_wl = start_nm + step_nm * np.arange(count, dtype=float)
    vals = np.interp(new_wl, spd.wavelengths, spd.values, left=0.0, right=0.0)
    return SpectralDistribution(start_nm, step_nm, vals)


@dataclass(frozen=True, eq=False)
class ObserverTables:
    """Color matching functions x_bar, y_bar, z_bar on the working grid."""

    cmf_x: SpectralDistribution
    cmf_y: SpectralDistribution
    cmf_z: SpectralDistribution
    observer_id: str

    def __post_init__(self):
        if self.observer_id not in _OBSERVER_FILES:
            raise ValueError(f"unknown observer id: {self.observer_id!r}")
        for t in (self.cmf_x, self.cmf_y, self.cmf_z):
            if not t.is_working_grid():
                raise ValueError("observer tables must live on the working grid")
        peak = self.cmf_y.wavelengths[int(np.argmax(self.cmf_y.values))]
        if not 550.0 <= peak <= 560.0:
            raise ValueError(f"y_bar peak at {peak} nm is outside [550, 560]")


@dataclass(frozen=True)
class Tristimulus:
    """CIE XYZ; Y on the 0-100 scale unless stated otherwise."""

    X: float
    Y: float
    Z: float

    def __post_init__(self):
        for name in ("X", "Y", "Z"):
            object.__setattr__(self, name, float(getattr(self, name)))
        comps = (self.X, self.Y, self.Z)
        if not all(np.isfinite(comps)):
            raise ValueError("tristimulus components must be finite")
        if any(c < 0 for c in comps):
            raise ValueError("tristimulus components must be non-negative")

    def as_array(self) -> np.ndarray:
        return np.array([self.X, self.Y, self.Z], dtype=float)


@dataclass(frozen=True)
class Chromaticity:
    """Normalized color coordinates x + y + z = 1."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))
        comps = (self.x, self.y, self.z)
        if not all(np.isfinite(comps)):
            raise ValueError("chromaticity components must be finite")
        if any(c < -1e-12 or c > 1 + 1e-12 for c in comps):
            raise ValueError("chromaticity components must lie in [0, 1]")
        if abs(self.x + self.y + self.z - 1.0) > 1e-12:
            raise ValueError("chromaticity components must sum to 1")

    @classmethod
    def from_xy(cls, x: float, y: float) -> "Chromaticity":
        return cls(x, y, 1.0 - x - y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


def _read_table(name: str) -> np.ndarray:
    rows = []
    path = _DATA_DIR / name
    for line in path.read_text().splitlines():
        if not line or line.startswith("#") or line[0].isalpha() or line.startswith("wavelength"):
            continue
        rows.append([float(tok) for tok in line.split(",")])
    return np.asarray(rows, dtype=float)


@lru_cache(maxsize=None)
def load_observer(observer_id: str = OBSERVER_2DEG) -> ObserverTables:
    """Bundled CIE standard observer, resampled to the working grid."""
    if observer_id not in _OBSERVER_FILES:
        raise ValueError(f"unknown observer id: {observer_id!r}")
    table = _read_table(_OBSERVER_FILES[observer_id])
    start = int(table[0, 0])
    make = lambda col: SpectralDistribution(start, 1, table[:, col])
    return ObserverTables(make(1), make(2), make(3), observer_id)


@lru_cache(maxsize=None)
def load_illuminant(name: str = "D65") -> SpectralDistribution:
    """Bundled illuminant SPD on the working grid.

    ``D65`` is the CIE daylight table; ``E`` is the equal-energy spectrum.
    """
    key = name.upper()
    if key == "D65":
        table = _read_table("illuminant_d65_1nm.csv")
        return SpectralDistribution(int(table[0, 0]), 1, table[:, 1])
    if key == "E":
        return SpectralDistribution(GRID_START_NM, GRID_STEP_NM, np.full(GRID_COUNT, 100.0))
    raise ValueError(f"unknown illuminant {name!r} (expected 'D65' or 'E')")


def read_spectrum_csv(path) -> SpectralDistribution:
    """Read a ``wavelength_nm,value`` CSV and resample it to the working grid.

    Wavelengths must be strictly increasing; values use a decimal point and
    no thousands separators.
    """
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty spectrum file")
    if lines[0].strip() != "wavelength_nm,value":
        raise ValueError(f"{path}: line 1: expected header 'wavelength_nm,value'")
    wl, vals = [], []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"{path}: line {i}: expected two comma-separated fields")
        try:
            w, v = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise ValueError(f"{path}: line {i}: {exc}") from None
        if wl and w <= wl[-1]:
            raise ValueError(f"{path}: line {i}: wavelengths must be strictly increasing")
        if v < 0:
            raise ValueError(f"{path}: line {i}: negative spectral value")
        wl.append(w)
        vals.append(v)
    if not wl:
        raise ValueError(f"{path}: no spectral samples")
    new_wl = grid_wavelengths()
    grid_vals = np.interp(new_wl, np.asarray(wl), np.asarray(vals), left=0.0, right=0.0)
    return SpectralDistribution(GRID_START_NM, GRID_STEP_NM, grid_vals)


def _require_working_grid(*spds: SpectralDistribution):
    for spd in spds:
        if not spd.is_working_grid():
            raise ValueError(
                "grid mismatch: spectra must be resampled to the "
                f"{GRID_START_NM}-{GRID_STOP_NM} nm / {GRID_STEP_NM} nm working grid"
            )


def raw_tristimulus(
    spd: SpectralDistribution,
    illuminant: SpectralDistribution,
    obs: ObserverTables,
) -> tuple[float, float, float]:
    """Unnormalized weighted sums of S * P * {x_bar, y_bar, z_bar}."""
    _require_working_grid(spd, illuminant)
    sp = spd.values * illuminant.values
    return (
        float(np.sum(sp * obs.cmf_x.values)),
        float(np.sum(sp * obs.cmf_y.values)),
        float(np.sum(sp * obs.cmf_z.values)),
    )


def spd_to_xyz(
    spd: SpectralDistribution,
    illuminant: SpectralDistribution | None = None,
    obs: ObserverTables | None = None,
) -> Tristimulus:
    """Integrate a spectrum to XYZ, normalized so a perfect reflector has Y=100."""
    illuminant = illuminant if illuminant is not None else load_illuminant("D65")
    obs = obs if obs is not None else load_observer(OBSERVER_2DEG)
    X, Y, Z = raw_tristimulus(spd, illuminant, obs)
    k = 100.0 / float(np.sum(illuminant.values * obs.cmf_y.values))
    return Tristimulus(max(k * X, 0.0), max(k * Y, 0.0), max(k * Z, 0.0))


def xyz_to_chromaticity(t: Tristimulus) -> Chromaticity:
    """Project XYZ onto the chromaticity plane."""
    s = t.X + t.Y + t.Z
    if s <= 0:
        raise ValueError("cannot normalize a zero-sum tristimulus")
    z = 1.0 - t.X / s - t.Y / s
    return Chromaticity(t.X / s, t.Y / s, z)


def delta_e_xyz(a: Chromaticity, b: Chromaticity) -> float:
    """Euclidean distance between two chromaticities over (x, y, z)."""
    return float(np.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2))


def y100_to_lc(y100: float) -> float:
    """Colorimetric Y (0-100) to TV relative luminance (0-1)."""
    return y100 / 100.0


def lc_to_y100(lc: float) -> float:
    """TV relative luminance (0-1) to colorimetric Y (0-100)."""
    return lc * 100.0


@lru_cache(maxsize=None)
def illuminant_white(name: str = "D65", observer_id: str = OBSERVER_2DEG) -> Chromaticity:
    """Chromaticity of a perfect reflector under the named bundled illuminant."""
    flat = SpectralDistribution(GRID_START_NM, GRID_STEP_NM, np.ones(GRID_COUNT))
    return xyz_to_chromaticity(
        spd_to_xyz(flat, load_illuminant(name), load_observer(observer_id))
    )


def _spectral_locus_xy(obs: ObserverTables) -> np.ndarray:
    cmf = np.stack([obs.cmf_x.values, obs.cmf_y.values, obs.cmf_z.values], axis=1)
    sums = cmf.sum(axis=1)
    return cmf[:, :2] / sums[:, None]


def dominant_wavelength(
    c: Chromaticity,
    white: Chromaticity,
    obs: ObserverTables | None = None,
) -> float | None:
    """Wavelength where the ray from the white point through ``c`` meets the
    spectral locus.

    Returns ``None`` when the ray exits through the purple line, i.e. the
    color only has a complementary wavelength.
    """
    obs = obs if obs is not None else load_observer(OBSERVER_2DEG)
    d = np.array([c.x - white.x, c.y - white.y])
    if float(np.hypot(*d)) < 1e-6:
        raise ValueError("color coincides with the white point")
    locus = _spectral_locus_xy(obs)
    w = np.array([white.x, white.y])

    def ray_hit(p, q):
        # solve w + t*d == p + u*(q - p) with t > 0, u in [0, 1]
        e = q - p
        det = d[0] * (-e[1]) - (-e[0]) * d[1]
        if abs(det) < 1e-15:
            return None
        rhs = p - w
        t = (rhs[0] * (-e[1]) - (-e[0]) * rhs[1]) / det
        u = (d[0] * rhs[1] - d[1] * rhs[0]) / det
        if t > 1e-9 and -1e-9 <= u <= 1 + 1e-9:
            return t, u
        return None

    best = None
    for i in range(len(locus) - 1):
        hit = ray_hit(locus[i], locus[i + 1])
        if hit and (best is None or hit[0] < best[0]):
            best = (hit[0], GRID_START_NM + (i + hit[1]) * GRID_STEP_NM)
    if best is not None:
        return float(best[1])
    # no locus crossing: the ray leaves through the purple line
    if ray_hit(locus[-1], locus[0]) is not None:
        return None
    raise ValueError("ray from white through color intersects neither locus nor purple line")
