"""Colorimetric test materials for assessing video transmission paths.

Solves rectangular test spectra against HDTV reference colors, matches real
reflectance spectra to a sixteen-color target set, and generates CAM16-UCS
color atlases restricted to the display gamut, with chart and data-file
output for end-to-end path checks.
"""

__version__ = "0.1.0"

from .spectral import (
    GRID_COUNT,
    GRID_START_NM,
    GRID_STEP_NM,
    GRID_STOP_NM,
    Chromaticity,
    ObserverTables,
    SpectralDistribution,
    Tristimulus,
    delta_e_xyz,
    dominant_wavelength,
    grid_wavelengths,
    illuminant_white,
    lc_to_y100,
    load_illuminant,
    load_observer,
    read_spectrum_csv,
    resample,
    spd_to_xyz,
    xyz_to_chromaticity,
    y100_to_lc,
)
from .targets import (
    LUMA_COEFFS,
    REC709_PRIMARIES,
    TargetColor,
    rgb_to_xyz_matrix,
    target_from_weights,
    target_tristimulus,
)
from .optimal import (
    BAND_PASS,
    BAND_STOP,
    TABLE1_COLUMNS,
    OptimalSpectrumParams,
    SolveReport,
    pick_genus,
    rectangle_chromaticity,
    scale_to_luminance,
    solve_optimal,
    synthesize,
    table1_suite,
)
from .cam16 import (
    Cam16Appearance,
    Cam16ViewingConditions,
    UcsPoint,
    cam16_forward,
    cam16_inverse,
    d65_white_tristimulus,
    delta_e_ucs,
    to_ucs,
    ucs_colorfulness_to_m,
    ucs_lightness_to_j,
)
from .atlas import (
    ATLAS_CSV_HEADER,
    AtlasPoint,
    AtlasResult,
    AtlasSpec,
    DisplayGamut,
    atlas_csv,
    atlas_to_xy,
    gamut_contains,
    generate_atlas,
    scatter_svg,
    write_atlas_csv,
)
from .spectradb import (
    LONG_CSV,
    MATCH_CSV_HEADER,
    WIDE_CSV,
    MatchResult,
    SpectraRecord,
    build_target_set,
    load_database,
    match_csv,
    match_nearest,
    saturated_weights,
)
from .chart import (
    BT709_TRANSFER,
    LINEAR_TRANSFER,
    ChartLayout,
    ChartMetadata,
    decode_png_rgb16,
    encode_png_rgb16,
    export_metadata,
    load_metadata,
    oetf_bt709,
    oetf_bt709_inverse,
    render_chart,
)
