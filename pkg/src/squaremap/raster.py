"""Image remapping between discs and squares by inverse-mapped resampling.

Every output pixel is traced back through the inverse of the job's direction
to a point of the source, which is then sampled bilinearly. Nothing is
splatted forward, so the output has no holes.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from PIL import Image

from .core import DomainError, MappingId, MappingSingularityError
from .maps import Direction, apply
from .radial_maps import ConvergenceError

SUPERSAMPLE_CHOICES = (1, 2, 4)
FALLBACK_RADIUS = 3  # pixels searched for a replacement when a sample fails
BLOCK_ROWS = 32  # fixed work unit; results never depend on the worker count

RGBA = Tuple[int, int, int, int]


@dataclass
class RasterImage:
    """Row-major RGBA image stored as an (height, width, 4) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 3 or px.shape[2] != 4 or px.dtype != np.uint8:
            raise ValueError(f"expected an (H, W, 4) uint8 array, got {px.shape} {px.dtype}")
        if px.shape[0] == 0 or px.shape[1] == 0:
            raise ValueError("image is empty")
        self.pixels = np.ascontiguousarray(px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    @classmethod
    def from_pil(cls, im: Image.Image) -> "RasterImage":
        if im.mode in ("I;16", "I;16B", "I;16L", "I"):
            # 16-bit gray: keep the top byte rather than clipping at 255
            a = np.asarray(im, dtype=np.uint32) >> 8
            im = Image.fromarray(a.astype(np.uint8), "L")
        return cls(np.asarray(im.convert("RGBA"), dtype=np.uint8).copy())

    def to_pil(self) -> Image.Image:
        return Image.fromarray(self.pixels, "RGBA")


def load_png(path) -> RasterImage:
    """Read any Pillow-readable image and promote it to RGBA."""
    with Image.open(path) as im:
        im.load()
        return RasterImage.from_pil(im)


def save_png(img: RasterImage, path) -> None:
    img.to_pil().save(path, format="PNG")


def png_bytes(img: RasterImage) -> bytes:
    buf = io.BytesIO()
    img.to_pil().save(buf, format="PNG")
    return buf.getvalue()


def parse_rgba(text: str) -> RGBA:
    """'RRGGBBAA' (optionally with a leading '#') to a 4-tuple."""
    t = text.strip().lstrip("#")
    if len(t) != 8:
        raise ValueError(f"colour must be 8 hex digits RRGGBBAA, got {text!r}")
    try:
        raw = bytes.fromhex(t)
    except ValueError:
        raise ValueError(f"colour must be 8 hex digits RRGGBBAA, got {text!r}") from None
    return tuple(raw)  # type: ignore[return-value]


@dataclass(frozen=True)
class RemapJob:
    mapping: MappingId
    direction: Direction
    out_size: int
    supersample: int = 1
    background: RGBA = field(default=(0, 0, 0, 0))

    def __post_init__(self):
        if int(self.out_size) != self.out_size or self.out_size < 1:
            raise ValueError(f"out_size must be a positive integer, got {self.out_size}")
        if self.supersample not in SUPERSAMPLE_CHOICES:
            raise ValueError(f"supersample must be one of {SUPERSAMPLE_CHOICES}, got {self.supersample}")
        bg = tuple(int(c) for c in self.background)
        if len(bg) != 4 or any(c < 0 or c > 255 for c in bg):
            raise ValueError(f"background must be four values in 0..255, got {self.background}")
        object.__setattr__(self, "background", bg)


def pixel_to_canonical(i, j, n: int):
    """Pixel centre (column i, row j) of an n x n image in canonical coordinates."""
    i = np.asarray(i, dtype=float)
    j = np.asarray(j, dtype=float)
    x = 2.0 * (i + 0.5) / n - 1.0
    y = 1.0 - 2.0 * (j + 0.5) / n
    return (x[()], y[()]) if x.ndim == 0 else (x, y)


def _source_frame(src: RasterImage):
    """Size and offsets of the centred square that holds the source's canonical space."""
    s = min(src.width, src.height)
    return s, 0.5 * (src.width - s), 0.5 * (src.height - s)


def bilinear_sample(src: RasterImage, px, py) -> np.ndarray:
    """Bilinear lookup at fractional pixel coordinates, clamped to the border.

    ``px`` and ``py`` index pixel centres (0 is the centre of the first pixel).
    Returns float RGBA values with a trailing axis of length 4.
    """
    w, h = src.width, src.height
    px = np.clip(px, 0.0, w - 1.0)
    py = np.clip(py, 0.0, h - 1.0)
    x0 = np.floor(px).astype(np.intp)
    y0 = np.floor(py).astype(np.intp)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = (px - x0)[..., None]
    fy = (py - y0)[..., None]
    img = src.pixels
    top = img[y0, x0] * (1.0 - fx) + img[y0, x1] * fx
    bot = img[y1, x0] * (1.0 - fx) + img[y1, x1] * fx
    return top * (1.0 - fy) + bot * fy


def _output_domain(direction: Direction, a, b):
    # the output lives in the target of the direction
    if direction is Direction.DISC_TO_SQUARE:
        return (np.abs(a) <= 1.0) & (np.abs(b) <= 1.0)
    return a * a + b * b <= 1.0


def _pull_back(mapping: MappingId, direction: Direction, a, b):
    """Inverse map of in-domain output points; failed points come back as NaN."""
    inv = direction.inverse
    try:
        p, q = apply(mapping, inv, a, b)
        return np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    except (MappingSingularityError, ConvergenceError, DomainError, FloatingPointError):
        pass
    # isolate the offending points one at a time
    p = np.full(a.shape, np.nan)
    q = np.full(a.shape, np.nan)
    for k in np.ndindex(a.shape):
        try:
            pk, qk = apply(mapping, inv, a[k], b[k])
        except (MappingSingularityError, ConvergenceError, DomainError, FloatingPointError):
            continue
        p[k], q[k] = pk, qk
    return p, q


def _render_rows(src: RasterImage, job: RemapJob, r0: int, r1: int):
    """Colour of output rows [r0, r1) as float RGBA, plus masks of background and failed pixels."""
    n, ss = job.out_size, job.supersample
    s, ox, oy = _source_frame(src)
    bg = np.asarray(job.background, dtype=np.float64)
    cols = np.arange(n, dtype=float)
    rows = np.arange(r0, r1, dtype=float)
    cx, cy = pixel_to_canonical(cols[None, :], rows[:, None], n)
    outside = ~_output_domain(job.direction, cx, cy)

    offs = (np.arange(ss) + 0.5) / ss - 0.5
    acc = np.zeros(outside.shape + (4,))
    failed = np.zeros(outside.shape, dtype=bool)
    for dy in offs:
        for dx in offs:
            a = 2.0 * (cols[None, :] + 0.5 + dx) / n - 1.0
            b = 1.0 - 2.0 * (rows[:, None] + 0.5 + dy) / n
            a, b = np.broadcast_arrays(a, b)
            inside = _output_domain(job.direction, a, b)
            p = np.full(a.shape, np.nan)
            q = np.full(a.shape, np.nan)
            if inside.any():
                p[inside], q[inside] = _pull_back(job.mapping, job.direction, a[inside], b[inside])
            bad = inside & ~(np.isfinite(p) & np.isfinite(q))
            failed |= bad
            ok = inside & ~bad
            col = np.broadcast_to(bg, a.shape + (4,)).copy()
            if ok.any():
                sx = (p[ok] + 1.0) * 0.5 * s - 0.5 + ox
                sy = (1.0 - q[ok]) * 0.5 * s - 0.5 + oy
                col[ok] = bilinear_sample(src, sx, sy)
            acc += col
    acc /= ss * ss
    acc[outside] = bg
    failed &= ~outside
    return acc, outside, failed


def _fill_failed(out: np.ndarray, failed: np.ndarray, outside: np.ndarray, bg) -> None:
    """Replace failed pixels with the nearest good in-domain pixel within FALLBACK_RADIUS."""
    h, w = failed.shape
    good = ~failed & ~outside
    r = FALLBACK_RADIUS
    # candidate offsets sorted by distance, ties broken by (dy, dx) for determinism
    cand = sorted(
        ((dy, dx) for dy in range(-r, r + 1) for dx in range(-r, r + 1) if 0 < dy * dy + dx * dx <= r * r),
        key=lambda t: (t[0] * t[0] + t[1] * t[1], t[0], t[1]),
    )
    for j, i in zip(*np.nonzero(failed)):
        for dy, dx in cand:
            jj, ii = j + dy, i + dx
            if 0 <= jj < h and 0 <= ii < w and good[jj, ii]:
                out[j, i] = out[jj, ii]
                break
        else:
            out[j, i] = bg


def remap(src: RasterImage, job: RemapJob, workers: int = 1) -> RasterImage:
    """Resample ``src`` through ``job``.

    For disc-to-square the source's inscribed disc is read and the whole output
    square is covered; for square-to-disc the full source square is read and
    output pixels whose centre lies outside the unit disc get the background.
    The source's canonical frame is the centred square of side min(W, H).
    Output bytes do not depend on ``workers``.
    """
    n = job.out_size
    starts = list(range(0, n, BLOCK_ROWS))

    def work(r0):
        return _render_rows(src, job, r0, min(r0 + BLOCK_ROWS, n))

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, starts))
    else:
        parts = [work(r0) for r0 in starts]

    acc = np.concatenate([p[0] for p in parts], axis=0)
    outside = np.concatenate([p[1] for p in parts], axis=0)
    failed = np.concatenate([p[2] for p in parts], axis=0)
    pixels = np.clip(np.rint(acc), 0, 255).astype(np.uint8)
    if failed.any():
        _fill_failed(pixels, failed, outside, np.asarray(job.background, dtype=np.uint8))
    return RasterImage(pixels)


def grid_points(n: int):
    """n x n lattice over [-1, 1]^2 in row-major order (y outer, x inner)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    g = np.linspace(-1.0, 1.0, n)
    g = 0.5 * (g - g[::-1])
    y, x = np.meshgrid(g, g, indexing="ij")
    return x.ravel(), y.ravel()


def export_grid_csv(mapping: MappingId, direction: Direction, n: int) -> str:
    """Map an n x n canonical lattice and return it as CSV text.

    Rows whose input falls outside the direction's domain (the disc for
    disc-to-square) are left out.
    """
    x, y = grid_points(n)
    if direction is Direction.DISC_TO_SQUARE:
        keep = x * x + y * y <= 1.0
        x, y = x[keep], y[keep]
    a, b = apply(mapping, direction, x, y)
    a = np.atleast_1d(a)
    b = np.atleast_1d(b)
    lines = ["x_in,y_in,x_out,y_out"]
    lines.extend(f"{p:.17g},{q:.17g},{r:.17g},{t:.17g}" for p, q, r, t in zip(x, y, a, b))
    return "\n".join(lines) + "\n"


def read_grid_csv(text: str):
    """Parse export_grid_csv output back into four float arrays."""
    rows = [ln for ln in text.splitlines()[1:] if ln]
    data = np.array([[float(c) for c in ln.split(",")] for ln in rows]).reshape(-1, 4)
    return data[:, 0], data[:, 1], data[:, 2], data[:, 3]
