"""Patch-grid test charts with a machine-readable sidecar.

Charts are written as 16-bit-per-channel RGB PNG.  Linear patch values are
encoded with the Rec. BT.709 OETF by default (a ``linear`` escape hatch
stores them unencoded) and quantized as q = round(65535 * encoded), the only
lossy step in the pipeline.  No color-management chunks are embedded: the
chart is signal-referred.

The sidecar is JSON with a fixed key order, so rendering the same chart
twice produces byte-identical image and metadata files.
"""
from __future__ import annotations

import json
import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .atlas import DisplayGamut
from .spectral import Tristimulus, xyz_to_chromaticity

BT709_TRANSFER = "bt709"
LINEAR_TRANSFER = "linear"

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def oetf_bt709(linear):
    """Rec. BT.709 opto-electronic transfer function."""
    v = np.asarray(linear, dtype=float)
    if np.any(v < 0) or np.any(v > 1):
        raise ValueError("linear values must lie in [0, 1]")
    return np.where(v < 0.018, 4.5 * v, 1.099 * np.power(v, 0.45) - 0.099)


def oetf_bt709_inverse(encoded):
    """Invert the BT.709 OETF."""
    v = np.asarray(encoded, dtype=float)
    return np.where(v < 0.081, v / 4.5, np.power((v + 0.099) / 1.099, 1.0 / 0.45))


@dataclass(frozen=True)
class ChartLayout:
    rows: int
    cols: int
    patch_px: int = 64
    gap_px: int = 8
    background_rgb: tuple[float, float, float] = (0.2, 0.2, 0.2)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("layout needs at least one row and one column")
        if self.patch_px < 1 or self.gap_px < 0:
            raise ValueError("pixel dimensions must be positive")
        if any(not 0.0 <= v <= 1.0 for v in self.background_rgb):
            raise ValueError("background must be a linear RGB triple in [0, 1]")

    @property
    def image_size(self) -> tuple[int, int]:
        w = self.cols * self.patch_px + (self.cols + 1) * self.gap_px
        h = self.rows * self.patch_px + (self.rows + 1) * self.gap_px
        return w, h


@dataclass(frozen=True)
class ChartMetadata:
    """Per-patch records plus the generation parameters."""

    patches: tuple[dict, ...]
    parameters: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {"parameters": self.parameters, "patches": list(self.patches)}
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ChartMetadata":
        payload = json.loads(text)
        return cls(tuple(payload["patches"]), payload["parameters"])


def _png_chunk(kind: bytes, data: bytes) -> bytes:
    return (
        struct.pack(">I", len(data))
        + kind
        + data
        + struct.pack(">I", zlib.crc32(kind + data) & 0xFFFFFFFF)
    )


def encode_png_rgb16(image: np.ndarray, chrm: tuple | None = None) -> bytes:
    """Encode an (H, W, 3) uint16 array as a 16-bit truecolor PNG.

    ``chrm``, when given, is (white, red, green, blue) xy pairs written as a
    cHRM chunk; by default no color-management chunks are embedded (the
    image is signal-referred).
    """
    if image.ndim != 3 or image.shape[2] != 3 or image.dtype != np.uint16:
        raise ValueError("expected an (H, W, 3) uint16 image")
    h, w = image.shape[:2]
    ihdr = struct.pack(">IIBBBBB", w, h, 16, 2, 0, 0, 0)
    chunks = _PNG_SIGNATURE + _png_chunk(b"IHDR", ihdr)
    if chrm is not None:
        values = [int(round(coord * 100000)) for point in chrm for coord in point]
        chunks += _png_chunk(b"cHRM", struct.pack(">8I", *values))
    big_endian = image.astype(">u2")
    raw = b"".join(b"\x00" + big_endian[row].tobytes() for row in range(h))
    return chunks + _png_chunk(b"IDAT", zlib.compress(raw, 9)) + _png_chunk(b"IEND", b"")


def decode_png_rgb16(data: bytes) -> np.ndarray:
    """Decode PNGs produced by :func:`encode_png_rgb16` (filter 0 only)."""
    if not data.startswith(_PNG_SIGNATURE):
        raise ValueError("not a PNG stream")
    pos = len(_PNG_SIGNATURE)
    width = height = None
    idat = b""
    while pos < len(data):
        (length,) = struct.unpack(">I", data[pos : pos + 4])
        kind = data[pos + 4 : pos + 8]
        chunk = data[pos + 8 : pos + 8 + length]
        pos += 12 + length
        if kind == b"IHDR":
            width, height, depth, color_type = struct.unpack(">IIBB", chunk[:10])
            if depth != 16 or color_type != 2:
                raise ValueError("only 16-bit truecolor PNGs are supported")
        elif kind == b"IDAT":
            idat += chunk
        elif kind == b"IEND":
            break
    raw = zlib.decompress(idat)
    stride = 1 + width * 6
    rows = []
    for r in range(height):
        line = raw[r * stride : (r + 1) * stride]
        if line[0] != 0:
            raise ValueError("unsupported PNG filter type")
        rows.append(np.frombuffer(line[1:], dtype=">u2").reshape(width, 3))
    return np.stack(rows).astype(np.uint16)


def render_chart(
    colors,
    layout: ChartLayout,
    transfer: str = BT709_TRANSFER,
    gamut: DisplayGamut | None = None,
    parameters: dict | None = None,
    source: str = "targets",
    embed_primaries: bool = False,
) -> tuple[bytes, ChartMetadata]:
    """Render named linear-RGB patches into a PNG chart plus metadata.

    ``colors`` is a sequence of ``(name, (r, g, b))`` with linear components
    in [0, 1]; patches fill the grid row-major in input order.  ``source``
    labels where the colors came from (targets, optimal, matched, atlas).
    """
    colors = list(colors)
    if not colors:
        raise ValueError("no colors to render")
    if layout.rows * layout.cols < len(colors):
        raise ValueError(
            f"layout {layout.rows}x{layout.cols} too small for {len(colors)} colors"
        )
    if transfer not in (BT709_TRANSFER, LINEAR_TRANSFER):
        raise ValueError(f"unknown transfer function {transfer!r}")
    gamut = gamut if gamut is not None else DisplayGamut()

    encode = oetf_bt709 if transfer == BT709_TRANSFER else lambda v: np.asarray(v, float)
    w, h = layout.image_size
    image = np.empty((h, w, 3), dtype=float)
    image[:] = encode(np.asarray(layout.background_rgb))

    patches = []
    for idx, (name, rgb) in enumerate(colors):
        rgb = np.asarray(rgb, dtype=float)
        if rgb.shape != (3,) or np.any(rgb < 0) or np.any(rgb > 1):
            raise ValueError(f"patch {name!r}: linear RGB must be three values in [0, 1]")
        row, col = divmod(idx, layout.cols)
        y0 = layout.gap_px + row * (layout.patch_px + layout.gap_px)
        x0 = layout.gap_px + col * (layout.patch_px + layout.gap_px)
        image[y0 : y0 + layout.patch_px, x0 : x0 + layout.patch_px] = encode(rgb)
        xyz = Tristimulus(*(gamut.rgb_to_xyz @ rgb))
        xy = xyz_to_chromaticity(xyz)
        patches.append(
            {
                "name": name,
                "row": row,
                "col": col,
                "x": xy.x,
                "y": xy.y,
                "L_C": float(xyz.Y / gamut.white_luminance),
                "rgb_linear": [float(v) for v in rgb],
                "source": source,
            }
        )

    quantized = np.round(image * 65535.0).astype(np.uint16)
    chrm = None
    if embed_primaries:
        chrm = ((gamut.white.x, gamut.white.y),) + tuple(
            (p.x, p.y) for p in gamut.primaries
        )
    params = {
        "transfer": transfer,
        "bit_depth": 16,
        "rows": layout.rows,
        "cols": layout.cols,
        "patch_px": layout.patch_px,
        "gap_px": layout.gap_px,
        "background_rgb": [float(v) for v in layout.background_rgb],
        "gamut_white": [gamut.white.x, gamut.white.y],
        "white_luminance": gamut.white_luminance,
    }
    if parameters:
        params.update(parameters)
    return encode_png_rgb16(quantized, chrm=chrm), ChartMetadata(tuple(patches), params)


def patch_pixel_origin(layout: ChartLayout, row: int, col: int) -> tuple[int, int]:
    """Top-left pixel (x, y) of a patch."""
    return (
        layout.gap_px + col * (layout.patch_px + layout.gap_px),
        layout.gap_px + row * (layout.patch_px + layout.gap_px),
    )


def export_metadata(meta: ChartMetadata, path) -> None:
    Path(path).write_text(meta.to_json(), encoding="utf-8")


def load_metadata(path) -> ChartMetadata:
    return ChartMetadata.from_json(Path(path).read_text(encoding="utf-8"))
