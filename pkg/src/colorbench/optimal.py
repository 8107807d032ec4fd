"""Rectangular test spectra: synthesis and cut-wavelength solving.

A rectangular spectrum takes the value K inside its pass region and zero
elsewhere.  ``band_pass`` passes a single interval [lambda1, lambda2];
``band_stop`` passes the two flanks [360, lambda1] and [lambda2, 720].
Cut wavelengths are continuous: a cut that falls inside a 1 nm bin fills
that bin with the fractional coverage of the pass side, which keeps the
solver objective continuous.

The cut solver is a Nelder-Mead simplex search over (lambda1, lambda2)
minimizing the xyz chromaticity distance to a target; amplitude K does not
affect chromaticity and is held at 1 during the search.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .spectral import (
    GRID_COUNT,
    GRID_START_NM,
    GRID_STEP_NM,
    GRID_STOP_NM,
    Chromaticity,
    ObserverTables,
    SpectralDistribution,
    delta_e_xyz,
    dominant_wavelength,
    load_illuminant,
    load_observer,
    raw_tristimulus,
    spd_to_xyz,
    xyz_to_chromaticity,
)
from .targets import target_from_weights

BAND_PASS = "band_pass"
BAND_STOP = "band_stop"
_GENERA = (BAND_PASS, BAND_STOP)

DEFAULT_TOLERANCE = 1e-5
DEFAULT_INITIAL_CUTS = (490.0, 545.0)
MAX_ITERATIONS = 500

# keeps the simplex from flattening out in the clamped region beyond the
# spectrum boundaries; zero on [360, 720] so in-range results are unbiased
_OUT_OF_RANGE_SLOPE = 1e-4


@dataclass(frozen=True)
class OptimalSpectrumParams:
    """Genus, cut wavelengths and amplitude of a rectangular spectrum."""

    genus: str
    lambda1_nm: float
    lambda2_nm: float
    K: float = 1.0

    def __post_init__(self):
        if self.genus not in _GENERA:
            raise ValueError(f"genus must be one of {_GENERA}, got {self.genus!r}")
        if not (GRID_START_NM <= self.lambda1_nm <= self.lambda2_nm <= GRID_STOP_NM):
            raise ValueError(
                f"cuts must satisfy {GRID_START_NM} <= lambda1 <= lambda2 <= {GRID_STOP_NM}"
            )
        if self.K < 0 or not np.isfinite(self.K):
            raise ValueError("K must be non-negative and finite")

    def with_k(self, k: float) -> "OptimalSpectrumParams":
        return OptimalSpectrumParams(self.genus, self.lambda1_nm, self.lambda2_nm, k)


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a cut-wavelength solve."""

    params: OptimalSpectrumParams
    achieved_delta_e: float
    iterations: int
    converged: bool


def _interval_coverage(starts: np.ndarray, step: float, a: float, b: float) -> np.ndarray:
    """Per-bin coverage of the closed interval [a, b]; bin i spans
    [start_i, start_i + step), and the final bin additionally ramps to full
    coverage as b approaches the grid end so that a cut at the end of the
    spectrum covers the last sample completely."""
    lo = np.maximum(a, starts)
    hi = np.minimum(b, starts + step)
    cov = np.clip((hi - lo) / step, 0.0, 1.0)
    last = starts[-1]
    cov[-1] = np.clip((min(b + step, last + 2 * step) - max(a, last)) / step, 0.0, 1.0)
    return cov


def synthesize(
    params: OptimalSpectrumParams,
    start_nm: int = GRID_START_NM,
    step_nm: int = GRID_STEP_NM,
    count: int = GRID_COUNT,
) -> SpectralDistribution:
    """Sample a rectangular spectrum onto a uniform grid."""
    starts = start_nm + step_nm * np.arange(count, dtype=float)
    l1, l2 = params.lambda1_nm, params.lambda2_nm
    if params.genus == BAND_PASS:
        cov = _interval_coverage(starts, step_nm, l1, l2)
    else:
        cov = _interval_coverage(starts, step_nm, GRID_START_NM, l1) + _interval_coverage(
            starts, step_nm, l2, GRID_STOP_NM
        )
    return SpectralDistribution(start_nm, step_nm, params.K * np.clip(cov, 0.0, 1.0))


def rectangle_chromaticity(
    params: OptimalSpectrumParams,
    illuminant: SpectralDistribution | None = None,
    obs: ObserverTables | None = None,
) -> Chromaticity:
    """Chromaticity of a rectangular spectrum (independent of K)."""
    spd = synthesize(params.with_k(1.0))
    return xyz_to_chromaticity(spd_to_xyz(spd, illuminant, obs))


def pick_genus(
    target: Chromaticity,
    white: Chromaticity,
    obs: ObserverTables | None = None,
) -> str:
    """Heuristic genus choice: band_stop for purples and the red/violet
    sector, band_pass otherwise (near-white targets are full-band passes)."""
    if np.hypot(target.x - white.x, target.y - white.y) < 1e-6:
        return BAND_PASS
    wl = dominant_wavelength(target, white, obs)
    if wl is None or wl >= 595.0 or wl <= 475.0:
        return BAND_STOP
    return BAND_PASS


def solve_optimal(
    target: Chromaticity,
    genus: str = BAND_PASS,
    tolerance: float = DEFAULT_TOLERANCE,
    init: tuple[float, float] = DEFAULT_INITIAL_CUTS,
    illuminant: SpectralDistribution | None = None,
    obs: ObserverTables | None = None,
    max_iterations: int = MAX_ITERATIONS,
) -> SolveReport:
    """Search cut wavelengths whose rectangular spectrum matches ``target``.

    Runs a bounded Nelder-Mead search from ``init``, restarting once from
    the best point before declaring non-convergence.  Convergence means the
    achieved chromaticity distance does not exceed ``tolerance``.
    """
    if genus not in _GENERA:
        raise ValueError(f"genus must be one of {_GENERA}, got {genus!r}")
    illuminant = illuminant if illuminant is not None else load_illuminant("D65")
    obs = obs if obs is not None else load_observer()
    tgt = target.as_array()

    def objective(lam: np.ndarray) -> float:
        l1 = min(max(lam[0], GRID_START_NM), GRID_STOP_NM)
        l2 = min(max(lam[1], GRID_START_NM), GRID_STOP_NM)
        if l1 > l2:
            return np.inf
        spd = synthesize(OptimalSpectrumParams(genus, l1, l2, 1.0))
        xyz = spd_to_xyz(spd, illuminant, obs)
        if xyz.X + xyz.Y + xyz.Z <= 0:
            return np.inf
        de = delta_e_xyz(Chromaticity(*(v / (xyz.X + xyz.Y + xyz.Z) for v in xyz.as_array())), Chromaticity(*tgt))
        return de + _OUT_OF_RANGE_SLOPE * (abs(lam[0] - l1) + abs(lam[1] - l2))

    options = dict(maxiter=max_iterations, xatol=1e-6, fatol=1e-14)
    first = minimize(objective, np.asarray(init, dtype=float), method="Nelder-Mead", options=options)
    iterations = int(first.nit)
    best_x = np.clip(first.x, GRID_START_NM, GRID_STOP_NM)
    second = minimize(objective, best_x, method="Nelder-Mead", options=options)
    iterations += int(second.nit)
    if second.fun <= first.fun:
        best_x = np.clip(second.x, GRID_START_NM, GRID_STOP_NM)

    l1, l2 = sorted(float(v) for v in best_x)
    params = OptimalSpectrumParams(genus, l1, l2, 1.0)
    achieved = delta_e_xyz(rectangle_chromaticity(params, illuminant, obs), target)
    return SolveReport(params, achieved, iterations, achieved <= tolerance)


def scale_to_luminance(
    params: OptimalSpectrumParams,
    target_L_C: float,
    illuminant: SpectralDistribution | None = None,
    obs: ObserverTables | None = None,
) -> OptimalSpectrumParams:
    """Choose K so the spectrum reaches a TV-scale relative luminance.

    K = L_C * 100 / Y(K=1) with Y taken as the plain weighted sum of
    S * P * y_bar over the working grid (the illuminant table keeps its
    conventional 100-at-560-nm scale).  Chromaticity is unaffected.
    """
    if not 0.0 <= target_L_C <= 1.0:
        raise ValueError("target_L_C must lie in [0, 1]")
    illuminant = illuminant if illuminant is not None else load_illuminant("D65")
    obs = obs if obs is not None else load_observer()
    _, y_raw, _ = raw_tristimulus(synthesize(params.with_k(1.0)), illuminant, obs)
    if y_raw <= 0:
        raise ValueError("spectrum has zero luminance; cannot scale")
    return params.with_k(target_L_C * 100.0 / y_raw)


# Reference color suite: weights and genus per column.  Genus follows the
# band_pass list {Ye, C, G, G05, WW} / band_stop list {R, R05, B, B05, M}.
TABLE1_COLUMNS = (
    ("R", (1.0, 0.0, 0.0), BAND_STOP),
    ("G", (0.0, 1.0, 0.0), BAND_PASS),
    ("B", (0.0, 0.0, 1.0), BAND_STOP),
    ("Ye", (0.5, 0.5, 0.0), BAND_PASS),
    ("C", (0.0, 0.5, 0.5), BAND_PASS),
    ("M", (0.5, 0.0, 0.5), BAND_STOP),
    ("R05", (2 / 3, 1 / 6, 1 / 6), BAND_STOP),
    ("G05", (1 / 6, 2 / 3, 1 / 6), BAND_PASS),
    ("B05", (1 / 6, 1 / 6, 2 / 3), BAND_STOP),
    ("WW", (1.0, 1.0, 1.0), BAND_PASS),
)


def table1_suite(
    tolerance: float = DEFAULT_TOLERANCE,
    illuminant: SpectralDistribution | None = None,
    obs: ObserverTables | None = None,
) -> list[SolveReport]:
    """Solve and luminance-scale the full ten-color reference suite.

    Reports are ordered as ``TABLE1_COLUMNS``.
    """
    reports = []
    for _, weights, genus in TABLE1_COLUMNS:
        target = target_from_weights(weights)
        report = solve_optimal(
            target.chromaticity, genus, tolerance=tolerance, illuminant=illuminant, obs=obs
        )
        scaled = scale_to_luminance(report.params, target.L_C, illuminant, obs)
        reports.append(SolveReport(scaled, report.achieved_delta_e, report.iterations, report.converged))
    return reports
