"""Command-line interface.

Exit codes: 0 on success, 1 on a domain error (bad input data, unreachable
target, missing database), 2 on a usage error.  Outputs are deterministic
for a fixed configuration.  Human-readable numbers are printed with six
significant digits; CSV and JSON carry full precision.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .atlas import (
    AtlasSpec,
    DisplayGamut,
    atlas_to_xy,
    generate_atlas,
    scatter_svg,
    write_atlas_csv,
)
from .cam16 import Cam16ViewingConditions, d65_white_tristimulus
from .chart import BT709_TRANSFER, LINEAR_TRANSFER, ChartLayout, export_metadata, render_chart
from .optimal import (
    BAND_PASS,
    BAND_STOP,
    DEFAULT_INITIAL_CUTS,
    TABLE1_COLUMNS,
    pick_genus,
    solve_optimal,
    scale_to_luminance,
    table1_suite,
)
from .spectral import (
    GRID_COUNT,
    GRID_START_NM,
    GRID_STEP_NM,
    OBSERVER_10DEG,
    OBSERVER_2DEG,
    Chromaticity,
    SpectralDistribution,
    load_illuminant,
    load_observer,
    read_spectrum_csv,
    spd_to_xyz,
    xyz_to_chromaticity,
)
from .spectradb import (
    LONG_CSV,
    WIDE_CSV,
    build_target_set,
    load_database,
    match_csv,
    match_nearest,
)
from .targets import target_from_weights


@dataclass
class RunConfig:
    """Session-wide settings resolved from config file and flags."""

    illuminant: str = "d65"
    observer: str = OBSERVER_2DEG
    la: float = 50.0
    yb: float = 20.0
    surround: str = "average"
    d: float | None = None
    primaries: str | None = None
    out_dir: str = "."

    def resolve_illuminant(self):
        key = self.illuminant.lower()
        if key in ("d65", "e"):
            return load_illuminant(key.upper())
        return read_spectrum_csv(self.illuminant)

    def resolve_observer(self):
        if self.observer not in (OBSERVER_2DEG, OBSERVER_10DEG):
            raise ValueError(f"unknown observer {self.observer!r}")
        return load_observer(self.observer)

    def viewing_conditions(self) -> Cam16ViewingConditions:
        return Cam16ViewingConditions(
            white=d65_white_tristimulus(self.observer),
            Y_b=self.yb,
            L_A=self.la,
            surround=self.surround,
            D=self.d,
        )

    def display_gamut(self, white_luminance: float = 100.0) -> DisplayGamut:
        if self.primaries is None:
            return DisplayGamut(white_luminance=white_luminance)
        parts = [float(v) for v in self.primaries.split(",")]
        if len(parts) != 6:
            raise ValueError("--primaries must be six numbers: rx,ry,gx,gy,bx,by")
        prim = tuple(Chromaticity.from_xy(parts[i], parts[i + 1]) for i in (0, 2, 4))
        return DisplayGamut(primaries=prim, white_luminance=white_luminance)

    def out_path(self, path) -> Path:
        p = Path(path)
        return p if p.is_absolute() else Path(self.out_dir) / p


def _sig6(value: float) -> str:
    return f"{value:.6g}"


def _parse_pair(text: str, what: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"{what} must be two comma-separated numbers, got {text!r}")
    return float(parts[0]), float(parts[1])


def _emit(text: str, out: str | None, cfg: RunConfig | None = None) -> None:
    if out:
        target = cfg.out_path(out) if cfg else Path(out)
        target.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report_dict(name, report):
    p = report.params
    return {
        "name": name,
        "genus": p.genus,
        "lambda1_nm": p.lambda1_nm,
        "lambda2_nm": p.lambda2_nm,
        "K": p.K,
        "delta_e": report.achieved_delta_e,
        "iterations": report.iterations,
        "converged": report.converged,
    }


def _cmd_solve_optimal(cfg: RunConfig, args) -> int:
    x, y = _parse_pair(args.target, "--target")
    target = Chromaticity.from_xy(x, y)
    illuminant = cfg.resolve_illuminant()
    obs = cfg.resolve_observer()
    genus = args.genus
    if genus == "auto":
        flat = SpectralDistribution(GRID_START_NM, GRID_STEP_NM, np.ones(GRID_COUNT))
        session_white = xyz_to_chromaticity(spd_to_xyz(flat, illuminant, obs))
        genus = pick_genus(target, session_white, obs)
    init = _parse_pair(args.init, "--init") if args.init else DEFAULT_INITIAL_CUTS
    report = solve_optimal(
        target, genus, tolerance=args.tolerance, init=init, illuminant=illuminant, obs=obs
    )
    if args.lc is not None:
        report = type(report)(
            scale_to_luminance(report.params, args.lc, illuminant, obs),
            report.achieved_delta_e,
            report.iterations,
            report.converged,
        )
    payload = _report_dict("target", report)
    if args.json:
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out, cfg)
    else:
        p = report.params
        _emit(
            f"genus={p.genus} lambda1={_sig6(p.lambda1_nm)} lambda2={_sig6(p.lambda2_nm)} "
            f"K={_sig6(p.K)} delta_e={_sig6(report.achieved_delta_e)} "
            f"iterations={report.iterations} converged={report.converged}\n",
            args.out,
            cfg,
        )
    return 0 if report.converged else 1


def _cmd_table1(cfg: RunConfig, args) -> int:
    illuminant = cfg.resolve_illuminant()
    obs = cfg.resolve_observer()
    reports = table1_suite(tolerance=args.tolerance, illuminant=illuminant, obs=obs)
    rows = [_report_dict(name, r) for (name, _, _), r in zip(TABLE1_COLUMNS, reports)]
    if args.json:
        _emit(json.dumps(rows, indent=2, sort_keys=True) + "\n", args.out, cfg)
    else:
        lines = []
        for row in rows:
            lines.append(
                f"{row['name']:4s} {row['genus']:9s} "
                f"l1={_sig6(row['lambda1_nm']):>8s} l2={_sig6(row['lambda2_nm']):>8s} "
                f"K={_sig6(row['K']):>12s} dE={_sig6(row['delta_e']):>12s} "
                f"converged={row['converged']}"
            )
        _emit("\n".join(lines) + "\n", args.out, cfg)
    return 0 if all(r.converged for r in reports) else 1


def _cmd_targets(cfg: RunConfig, args) -> int:
    targets = build_target_set()
    if args.json:
        rows = [
            {
                "name": t.name,
                "rgb_weights": list(t.rgb_weights),
                "x": t.x,
                "y": t.y,
                "L_C": t.L_C,
            }
            for t in targets
        ]
        _emit(json.dumps(rows, indent=2, sort_keys=True) + "\n", args.out, cfg)
    else:
        lines = ["name,R,G,B,x,y,L_C"]
        for t in targets:
            w = t.rgb_weights
            lines.append(f"{t.name},{w[0]!r},{w[1]!r},{w[2]!r},{t.x!r},{t.y!r},{t.L_C!r}")
        _emit("\n".join(lines) + "\n", args.out, cfg)
    return 0


def _cmd_match(cfg: RunConfig, args) -> int:
    db_path = Path(args.db)
    if not db_path.exists():
        print(f"error: database not found: {db_path}", file=sys.stderr)
        return 1
    illuminant = cfg.resolve_illuminant()
    obs = cfg.resolve_observer()
    db = load_database(db_path, fmt=args.format, illuminant=illuminant, obs=obs)
    results = match_nearest(build_target_set(), db)
    _emit(match_csv(results), args.out, cfg)
    return 0


def _cmd_atlas(cfg: RunConfig, args) -> int:
    spec = AtlasSpec(
        vc=cfg.viewing_conditions(),
        J=args.j,
        spacing=args.spacing,
        gamut=cfg.display_gamut(args.white_luminance),
        chroma_bound=args.bound,
    )
    result = generate_atlas(spec)
    write_atlas_csv(result.points, cfg.out_path(args.out))
    if args.svg:
        pairs = [(p.ucs.a_M, p.ucs.b_M) for p in result.points]
        cfg.out_path(args.svg).write_text(scatter_svg(pairs), encoding="utf-8")
    if args.xy_svg:
        cfg.out_path(args.xy_svg).write_text(
            scatter_svg(atlas_to_xy(result.points), labels=("x", "y")), encoding="utf-8"
        )
    print(
        f"atlas J={_sig6(args.j)} spacing={_sig6(args.spacing)}: "
        f"{len(result.points)} points, {result.inversion_failures} inversion failures",
        file=sys.stderr,
    )
    return 0


def _cmd_chart(cfg: RunConfig, args) -> int:
    gamut = cfg.display_gamut()
    if args.from_atlas:
        source = "atlas"
        colors = []
        lines = Path(args.from_atlas).read_text(encoding="utf-8").splitlines()
        header = lines[0].split(",")
        for i, line in enumerate(lines[1:]):
            vals = dict(zip(header, (float(v) for v in line.split(","))))
            colors.append((f"atlas_{i}", (vals["R_lin"], vals["G_lin"], vals["B_lin"])))
    elif args.db:
        source = "matched"
        illuminant = cfg.resolve_illuminant()
        obs = cfg.resolve_observer()
        db = {r.id: r for r in load_database(args.db, fmt=args.format, illuminant=illuminant, obs=obs)}
        colors = []
        for res in match_nearest(build_target_set(), list(db.values())):
            xyz = spd_to_xyz(db[res.record_id].spectrum, illuminant, obs)
            rgb = np.clip(gamut.linear_rgb(xyz), 0.0, 1.0)
            colors.append((f"{res.target_name}:{res.record_id}", tuple(float(v) for v in rgb)))
    else:
        source = "targets"
        targets = build_target_set()
        peak = max(max(t.rgb_weights) for t in targets)
        colors = [(t.name, tuple(w / peak for w in t.rgb_weights)) for t in targets]
    rows = args.rows or int(np.ceil(len(colors) / args.cols))
    layout = ChartLayout(rows=rows, cols=args.cols, patch_px=args.patch_px, gap_px=args.gap_px)
    transfer = LINEAR_TRANSFER if args.linear else BT709_TRANSFER
    png, meta = render_chart(
        colors,
        layout,
        transfer=transfer,
        gamut=gamut,
        source=source,
        embed_primaries=args.embed_primaries,
        parameters={
            "illuminant": cfg.illuminant,
            "observer": cfg.observer,
            "la": cfg.la,
            "yb": cfg.yb,
            "surround": cfg.surround,
        },
    )
    out = cfg.out_path(args.out)
    out.write_bytes(png)
    export_metadata(meta, out.with_suffix(out.suffix + ".meta.json"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colorbench",
        description="Colorimetric test materials for video path assessment.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    session = argparse.ArgumentParser(add_help=False)
    session.add_argument("--config", help="JSON config file; flags override its values")
    session.add_argument("--illuminant", help="d65, e, or a wavelength_nm,value CSV path")
    session.add_argument("--observer", choices=[OBSERVER_2DEG, OBSERVER_10DEG])
    session.add_argument("--la", type=float, help="adapting luminance in cd/m2 (default 50)")
    session.add_argument("--yb", type=float, help="background relative luminance 0-100 (default 20)")
    session.add_argument("--surround", choices=["average", "dim", "dark"])
    session.add_argument("--d", type=float, help="explicit degree of adaptation in [0, 1]")
    session.add_argument(
        "--primaries", metavar="rx,ry,gx,gy,bx,by", help="display primaries (default BT.709)"
    )
    session.add_argument("--out-dir", help="base directory for relative output paths")

    sub = parser.add_subparsers(dest="command", required=True)
    common = dict(parents=[session])

    p = sub.add_parser(
        "solve-optimal", help="solve rectangle cuts for a chromaticity target", **common
    )
    p.add_argument("--target", required=True, metavar="x,y")
    p.add_argument("--genus", choices=[BAND_PASS, BAND_STOP, "auto"], default="auto")
    p.add_argument("--tolerance", type=float, default=1e-5)
    p.add_argument("--init", metavar="l1,l2", help="initial cut wavelengths (default 490,545)")
    p.add_argument("--lc", type=float, help="scale K to this relative luminance in [0, 1]")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_solve_optimal)

    p = sub.add_parser("table1", help="solve the ten-color reference suite", **common)
    p.add_argument("--tolerance", type=float, default=1e-5)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("targets", help="emit the sixteen-color target set", **common)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_targets)

    p = sub.add_parser("match", help="match the target set against a spectra database", **common)
    p.add_argument("--db", required=True)
    p.add_argument("--format", choices=[WIDE_CSV, LONG_CSV], default=WIDE_CSV)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("atlas", help="generate an in-gamut UCS atlas slice", **common)
    p.add_argument("--j", type=float, required=True, help="CAM16 lightness of the slice")
    p.add_argument("--spacing", type=float, default=2.0)
    p.add_argument("--bound", type=float, default=60.0)
    p.add_argument("--white-luminance", type=float, default=100.0)
    p.add_argument("--out", required=True)
    p.add_argument("--svg", help="write an (a'_M, b'_M) scatter SVG")
    p.add_argument("--xy-svg", help="write an (x, y) scatter SVG")
    p.set_defaults(func=_cmd_atlas)

    p = sub.add_parser("chart", help="render a patch-grid chart PNG plus sidecar", **common)
    p.add_argument("--from-atlas", help="atlas CSV to render instead of the target set")
    p.add_argument("--db", help="spectra database: render the matched set instead")
    p.add_argument("--format", choices=[WIDE_CSV, LONG_CSV], default=WIDE_CSV)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int, default=4)
    p.add_argument("--patch-px", type=int, default=64)
    p.add_argument("--gap-px", type=int, default=8)
    p.add_argument("--linear", action="store_true", help="skip the BT.709 OETF")
    p.add_argument(
        "--embed-primaries", action="store_true",
        help="write a cHRM color chunk with the display primaries",
    )
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_chart)

    return parser


def _load_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise FileNotFoundError(f"config file not found: {path}")
        data = json.loads(path.read_text(encoding="utf-8"))
        for key in ("illuminant", "observer", "la", "yb", "surround", "d", "primaries", "out_dir"):
            if key in data:
                setattr(cfg, key, data[key])
    for key in ("illuminant", "observer", "la", "yb", "surround", "d", "primaries", "out_dir"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    return cfg


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        return args.func(cfg, args)
    except (ValueError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
