#!/usr/bin/env python3
"""Generate the 1 nm CIE data assets bundled with colorbench.

Linearly interpolates the standard 5 nm tables (CIE 15 colorimetry tables:
1931 2-degree and 1964 10-degree color matching functions, D65 relative SPD)
onto the 360-720 nm working grid at 1 nm and writes them to
src/colorbench/data/ as CSV with a provenance header.

Run from the repository root:

    python3 tools/generate_cie_tables.py
"""
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "colorbench" / "data"

GRID_START = 360
GRID_STOP = 720

# CIE 1931 2-degree standard observer, 5 nm, 360-780 nm (CIE 15 Table T.2).
# Columns: wavelength, x_bar, y_bar, z_bar
CIE_1931_2DEG_5NM = [
    (360, 0.000129900, 0.000003917, 0.000606100),
    (365, 0.000232100, 0.000006965, 0.001086000),
    (370, 0.000414900, 0.000012390, 0.001946000),
    (375, 0.000741600, 0.000022020, 0.003486000),
    (380, 0.001368000, 0.000039000, 0.006450000),
    (385, 0.002236000, 0.000064000, 0.010550000),
    (390, 0.004243000, 0.000120000, 0.020050000),
    (395, 0.007650000, 0.000217000, 0.036210000),
    (400, 0.014310000, 0.000396000, 0.067850000),
    (405, 0.023190000, 0.000640000, 0.110200000),
    (410, 0.043510000, 0.001210000, 0.207400000),
    (415, 0.077630000, 0.002180000, 0.371300000),
    (420, 0.134380000, 0.004000000, 0.645600000),
    (425, 0.214770000, 0.007300000, 1.039050000),
    (430, 0.283900000, 0.011600000, 1.385600000),
    (435, 0.328500000, 0.016840000, 1.622960000),
    (440, 0.348280000, 0.023000000, 1.747060000),
    (445, 0.348060000, 0.029800000, 1.782600000),
    (450, 0.336200000, 0.038000000, 1.772110000),
    (455, 0.318700000, 0.048000000, 1.744100000),
    (460, 0.290800000, 0.060000000, 1.669200000),
    (465, 0.251100000, 0.073900000, 1.528100000),
    (470, 0.195360000, 0.090980000, 1.287640000),
    (475, 0.142100000, 0.112600000, 1.041900000),
    (480, 0.095640000, 0.139020000, 0.812950000),
    (485, 0.058010000, 0.169300000, 0.616200000),
    (490, 0.032010000, 0.208020000, 0.465180000),
    (495, 0.014700000, 0.258600000, 0.353300000),
    (500, 0.004900000, 0.323000000, 0.272000000),
    (505, 0.002400000, 0.407300000, 0.212300000),
    (510, 0.009300000, 0.503000000, 0.158200000),
    (515, 0.029100000, 0.608200000, 0.111700000),
    (520, 0.063270000, 0.710000000, 0.078250000),
    (525, 0.109600000, 0.793200000, 0.057250000),
    (530, 0.165500000, 0.862000000, 0.042160000),
    (535, 0.225750000, 0.914850000, 0.029840000),
    (540, 0.290400000, 0.954000000, 0.020300000),
    (545, 0.359700000, 0.980300000, 0.013400000),
    (550, 0.433450000, 0.994950000, 0.008750000),
    (555, 0.512050000, 1.000000000, 0.005750000),
    (560, 0.594500000, 0.995000000, 0.003900000),
    (565, 0.678400000, 0.978600000, 0.002750000),
    (570, 0.762100000, 0.952000000, 0.002100000),
    (575, 0.842500000, 0.915400000, 0.001800000),
    (580, 0.916300000, 0.870000000, 0.001650000),
    (585, 0.978600000, 0.816300000, 0.001400000),
    (590, 1.026300000, 0.757000000, 0.001100000),
    (595, 1.056700000, 0.694900000, 0.001000000),
    (600, 1.062200000, 0.631000000, 0.000800000),
    (605, 1.045600000, 0.566800000, 0.000600000),
    (610, 1.002600000, 0.503000000, 0.000340000),
    (615, 0.938400000, 0.441200000, 0.000240000),
    (620, 0.854450000, 0.381000000, 0.000190000),
    (625, 0.751400000, 0.321000000, 0.000100000),
    (630, 0.642400000, 0.265000000, 0.000050000),
    (635, 0.541900000, 0.217000000, 0.000030000),
    (640, 0.447900000, 0.175000000, 0.000020000),
    (645, 0.360800000, 0.138200000, 0.000010000),
    (650, 0.283500000, 0.107000000, 0.000000000),
    (655, 0.218700000, 0.081600000, 0.000000000),
    (660, 0.164900000, 0.061000000, 0.000000000),
    (665, 0.121200000, 0.044580000, 0.000000000),
    (670, 0.087400000, 0.032000000, 0.000000000),
    (675, 0.063600000, 0.023200000, 0.000000000),
    (680, 0.046770000, 0.017000000, 0.000000000),
    (685, 0.032900000, 0.011920000, 0.000000000),
    (690, 0.022700000, 0.008210000, 0.000000000),
    (695, 0.015840000, 0.005723000, 0.000000000),
    (700, 0.011359000, 0.004102000, 0.000000000),
    (705, 0.008111000, 0.002929000, 0.000000000),
    (710, 0.005790000, 0.002091000, 0.000000000),
    (715, 0.004109000, 0.001484000, 0.000000000),
    (720, 0.002899000, 0.001047000, 0.000000000),
    (725, 0.002049000, 0.000740000, 0.000000000),
    (730, 0.001440000, 0.000520000, 0.000000000),
    (735, 0.001000000, 0.000361000, 0.000000000),
    (740, 0.000690000, 0.000249000, 0.000000000),
    (745, 0.000476000, 0.000172000, 0.000000000),
    (750, 0.000332000, 0.000120000, 0.000000000),
    (755, 0.000235000, 0.000085000, 0.000000000),
    (760, 0.000166000, 0.000060000, 0.000000000),
    (765, 0.000117000, 0.000042000, 0.000000000),
    (770, 0.000083000, 0.000030000, 0.000000000),
    (775, 0.000059000, 0.000021000, 0.000000000),
    (780, 0.000042000, 0.000015000, 0.000000000),
]

# CIE 1964 10-degree supplementary observer, 5 nm, 360-780 nm.
CIE_1964_10DEG_5NM = [
    (360, 0.000000122200, 0.000000013398, 0.000000535027),
    (365, 0.000000919270, 0.000000100650, 0.000004028300),
    (370, 0.000005958600, 0.000000651100, 0.000026143700),
    (375, 0.000033266000, 0.000003625000, 0.000146220000),
    (380, 0.000159952000, 0.000017364000, 0.000704776000),
    (385, 0.000662440000, 0.000071560000, 0.002927800000),
    (390, 0.002361600000, 0.000253400000, 0.010482200000),
    (395, 0.007242300000, 0.000768500000, 0.032344000000),
    (400, 0.019109700000, 0.002004400000, 0.086010900000),
    (405, 0.043400000000, 0.004509000000, 0.197120000000),
    (410, 0.084736000000, 0.008756000000, 0.389366000000),
    (415, 0.140638000000, 0.014456000000, 0.656760000000),
    (420, 0.204492000000, 0.021391000000, 0.972542000000),
    (425, 0.264737000000, 0.029497000000, 1.282500000000),
    (430, 0.314679000000, 0.038676000000, 1.553480000000),
    (435, 0.357719000000, 0.049602000000, 1.798500000000),
    (440, 0.383734000000, 0.062077000000, 1.967280000000),
    (445, 0.386726000000, 0.074704000000, 2.027300000000),
    (450, 0.370702000000, 0.089456000000, 1.994800000000),
    (455, 0.342957000000, 0.106256000000, 1.900700000000),
    (460, 0.302273000000, 0.128201000000, 1.745370000000),
    (465, 0.254085000000, 0.152761000000, 1.554900000000),
    (470, 0.195618000000, 0.185190000000, 1.317560000000),
    (475, 0.132349000000, 0.219940000000, 1.030200000000),
    (480, 0.080507000000, 0.253589000000, 0.772125000000),
    (485, 0.041072000000, 0.297665000000, 0.570060000000),
    (490, 0.016172000000, 0.339133000000, 0.415254000000),
    (495, 0.005132000000, 0.395379000000, 0.302356000000),
    (500, 0.003816000000, 0.460777000000, 0.218502000000),
    (505, 0.015444000000, 0.531360000000, 0.159249000000),
    (510, 0.037465000000, 0.606741000000, 0.112044000000),
    (515, 0.071358000000, 0.685660000000, 0.082248000000),
    (520, 0.117749000000, 0.761757000000, 0.060709000000),
    (525, 0.172953000000, 0.823330000000, 0.043050000000),
    (530, 0.236491000000, 0.875211000000, 0.030451000000),
    (535, 0.304213000000, 0.923810000000, 0.020584000000),
    (540, 0.376772000000, 0.961988000000, 0.013676000000),
    (545, 0.451584000000, 0.982200000000, 0.007918000000),
    (550, 0.529826000000, 0.991761000000, 0.003988000000),
    (555, 0.616053000000, 0.999110000000, 0.001091000000),
    (560, 0.705224000000, 0.997340000000, 0.000000000000),
    (565, 0.793832000000, 0.982380000000, 0.000000000000),
    (570, 0.878655000000, 0.955552000000, 0.000000000000),
    (575, 0.951162000000, 0.915175000000, 0.000000000000),
    (580, 1.014160000000, 0.868934000000, 0.000000000000),
    (585, 1.074300000000, 0.825623000000, 0.000000000000),
    (590, 1.118520000000, 0.777405000000, 0.000000000000),
    (595, 1.134300000000, 0.720353000000, 0.000000000000),
    (600, 1.123990000000, 0.658341000000, 0.000000000000),
    (605, 1.089100000000, 0.593878000000, 0.000000000000),
    (610, 1.030480000000, 0.527963000000, 0.000000000000),
    (615, 0.950740000000, 0.461834000000, 0.000000000000),
    (620, 0.856297000000, 0.398057000000, 0.000000000000),
    (625, 0.754930000000, 0.339554000000, 0.000000000000),
    (630, 0.647467000000, 0.283493000000, 0.000000000000),
    (635, 0.535110000000, 0.228254000000, 0.000000000000),
    (640, 0.431567000000, 0.179828000000, 0.000000000000),
    (645, 0.343690000000, 0.140211000000, 0.000000000000),
    (650, 0.268329000000, 0.107633000000, 0.000000000000),
    (655, 0.204300000000, 0.081187000000, 0.000000000000),
    (660, 0.152568000000, 0.060281000000, 0.000000000000),
    (665, 0.112210000000, 0.044096000000, 0.000000000000),
    (670, 0.081260600000, 0.031800400000, 0.000000000000),
    (675, 0.057930000000, 0.022601700000, 0.000000000000),
    (680, 0.040850800000, 0.015905100000, 0.000000000000),
    (685, 0.028623000000, 0.011130300000, 0.000000000000),
    (690, 0.019941300000, 0.007748800000, 0.000000000000),
    (695, 0.013842000000, 0.005375100000, 0.000000000000),
    (700, 0.009576880000, 0.003717740000, 0.000000000000),
    (705, 0.006605200000, 0.002564560000, 0.000000000000),
    (710, 0.004552630000, 0.001768470000, 0.000000000000),
    (715, 0.003144700000, 0.001222390000, 0.000000000000),
    (720, 0.002174960000, 0.000846190000, 0.000000000000),
    (725, 0.001505700000, 0.000586440000, 0.000000000000),
    (730, 0.001044760000, 0.000407410000, 0.000000000000),
    (735, 0.000727450000, 0.000284041000, 0.000000000000),
    (740, 0.000508258000, 0.000198730000, 0.000000000000),
    (745, 0.000356380000, 0.000139550000, 0.000000000000),
    (750, 0.000250969000, 0.000098428000, 0.000000000000),
    (755, 0.000177730000, 0.000069819000, 0.000000000000),
    (760, 0.000126390000, 0.000049737000, 0.000000000000),
    (765, 0.000090151000, 0.000035540500, 0.000000000000),
    (770, 0.000064525800, 0.000025486000, 0.000000000000),
    (775, 0.000046339000, 0.000018338400, 0.000000000000),
    (780, 0.000033411700, 0.000013249000, 0.000000000000),
]

# CIE standard illuminant D65, relative SPD normalized to 100 at 560 nm,
# 5 nm, 300-780 nm (CIE 15 Table T.1).
D65_5NM = [
    (300, 0.034100), (305, 1.664300), (310, 3.294500), (315, 11.765200),
    (320, 20.236000), (325, 28.644700), (330, 37.053500), (335, 38.501100),
    (340, 39.948800), (345, 42.430200), (350, 44.911700), (355, 45.775000),
    (360, 46.638300), (365, 49.363700), (370, 52.089100), (375, 51.032300),
    (380, 49.975500), (385, 52.311800), (390, 54.648200), (395, 68.701500),
    (400, 82.754900), (405, 87.120400), (410, 91.486000), (415, 92.458900),
    (420, 93.431800), (425, 90.057000), (430, 86.682300), (435, 95.773600),
    (440, 104.865000), (445, 110.936000), (450, 117.008000), (455, 117.410000),
    (460, 117.812000), (465, 116.336000), (470, 114.861000), (475, 115.392000),
    (480, 115.923000), (485, 112.367000), (490, 108.811000), (495, 109.082000),
    (500, 109.354000), (505, 108.578000), (510, 107.802000), (515, 106.296000),
    (520, 104.790000), (525, 106.239000), (530, 107.689000), (535, 106.047000),
    (540, 104.405000), (545, 104.225000), (550, 104.046000), (555, 102.023000),
    (560, 100.000000), (565, 98.167100), (570, 96.334200), (575, 96.061100),
    (580, 95.788000), (585, 92.236800), (590, 88.685600), (595, 89.345900),
    (600, 90.006200), (605, 89.802600), (610, 89.599100), (615, 88.648900),
    (620, 87.698700), (625, 85.493600), (630, 83.288600), (635, 83.493900),
    (640, 83.699200), (645, 81.863000), (650, 80.026800), (655, 80.120700),
    (660, 80.214600), (665, 81.246200), (670, 82.277800), (675, 80.281000),
    (680, 78.284200), (685, 74.002700), (690, 69.721300), (695, 70.665200),
    (700, 71.609100), (705, 72.979000), (710, 74.349000), (715, 67.976500),
    (720, 61.604000), (725, 65.744800), (730, 69.885600), (735, 72.486300),
    (740, 75.087000), (745, 69.339800), (750, 63.592700), (755, 55.005400),
    (760, 46.418200), (765, 56.611800), (770, 66.805400), (775, 65.094100),
    (780, 63.382800),
]


def lerp_to_grid(table, column):
    """Linearly interpolate one column of a 5 nm table onto the 1 nm grid."""
    xs = [row[0] for row in table]
    ys = [row[column] for row in table]
    out = []
    for wl in range(GRID_START, GRID_STOP + 1):
        # locate the bracketing 5 nm nodes
        i = 0
        while i + 1 < len(xs) and xs[i + 1] < wl:
            i += 1
        if wl <= xs[0]:
            v = ys[0]
        elif wl >= xs[-1]:
            v = ys[-1]
        else:
            x0, x1 = xs[i], xs[i + 1]
            t = (wl - x0) / (x1 - x0)
            v = ys[i] * (1.0 - t) + ys[i + 1] * t
        out.append((wl, v))
    return out


def write_cmf(path, table, source_note):
    cols = {
        "x_bar": lerp_to_grid(table, 1),
        "y_bar": lerp_to_grid(table, 2),
        "z_bar": lerp_to_grid(table, 3),
    }
    lines = [
        f"# {source_note}",
        "# linearly interpolated from the standard 5 nm table to 1 nm, 360-720 nm",
        "wavelength_nm,x_bar,y_bar,z_bar",
    ]
    for idx, wl in enumerate(range(GRID_START, GRID_STOP + 1)):
        x = cols["x_bar"][idx][1]
        y = cols["y_bar"][idx][1]
        z = cols["z_bar"][idx][1]
        lines.append(f"{wl},{x:.12g},{y:.12g},{z:.12g}")
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path}")


def write_illuminant(path, table, source_note):
    vals = lerp_to_grid(table, 1)
    lines = [
        f"# {source_note}",
        "# linearly interpolated from the standard 5 nm table to 1 nm, 360-720 nm",
        "wavelength_nm,value",
    ]
    for wl, v in vals:
        lines.append(f"{wl},{v:.12g}")
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path}")


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    write_cmf(
        OUT_DIR / "cie_1931_2deg_1nm.csv",
        CIE_1931_2DEG_5NM,
        "CIE 1931 2-degree standard observer color matching functions",
    )
    write_cmf(
        OUT_DIR / "cie_1964_10deg_1nm.csv",
        CIE_1964_10DEG_5NM,
        "CIE 1964 10-degree supplementary observer color matching functions",
    )
    write_illuminant(
        OUT_DIR / "illuminant_d65_1nm.csv",
        D65_5NM,
        "CIE standard illuminant D65, relative SPD (100 at 560 nm)",
    )


if __name__ == "__main__":
    main()
