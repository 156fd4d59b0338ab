"""Synthetic test images and simple measurements on them.

These drive the raster checks: constant fields, concentric rings,
chessboards, and a barrel-distorted line grid for the defishing experiment.
"""

from __future__ import annotations

import numpy as np

from .raster import RasterImage, pixel_to_canonical


def _centres(n: int):
    x, y = pixel_to_canonical(np.arange(n)[None, :], np.arange(n)[:, None], n)
    return np.broadcast_arrays(x, y)


def _gray(on, alpha) -> RasterImage:
    px = np.zeros(on.shape + (4,), dtype=np.uint8)
    px[..., :3] = np.where(on, 255, 0)[..., None]
    px[..., 3] = alpha
    return RasterImage(px)


def constant_image(n: int, rgba=(200, 80, 30, 255)) -> RasterImage:
    px = np.empty((n, n, 4), dtype=np.uint8)
    px[...] = rgba
    return RasterImage(px)


def disc_rings(n: int, period: float = 0.1) -> RasterImage:
    """White/black concentric rings of radial width ``period`` inside the inscribed disc."""
    x, y = _centres(n)
    r = np.hypot(x, y)
    on = np.floor(r / period).astype(int) % 2 == 0
    return _gray(on, np.where(r <= 1.0, 255, 0))


def chessboard(n: int, cells: int = 8) -> RasterImage:
    """Opaque chessboard covering the whole square."""
    x, y = _centres(n)
    k = np.floor((x + 1.0) * cells / 2.0) + np.floor((y + 1.0) * cells / 2.0)
    return _gray(k.astype(int) % 2 == 0, 255)


def smooth_disc(n: int) -> RasterImage:
    """Low-frequency colour field, opaque everywhere."""
    x, y = _centres(n)
    px = np.empty((n, n, 4), dtype=np.uint8)
    px[..., 0] = np.rint(127.5 + 100.0 * np.sin(1.5 * x) * np.cos(y))
    px[..., 1] = np.rint(127.5 + 100.0 * np.cos(2.0 * x * y))
    px[..., 2] = np.rint(127.5 * (1.0 + 0.8 * y))
    px[..., 3] = 255
    return RasterImage(px)


def undistort_radius(rd, strength: float):
    """Solve r (1 - strength r^2) = rd for the root on the monotone branch."""
    r = np.array(rd, dtype=float)
    for _ in range(40):
        r = r - (r * (1.0 - strength * r * r) - rd) / (1.0 - 3.0 * strength * r * r)
    return r


def fold_radius(strength: float) -> float:
    """Radius where r (1 - strength r^2) stops increasing."""
    return float(np.sqrt(1.0 / (3.0 * strength)))


def barrel_lines(n: int, count: int = 7, strength: float = 0.2, vertical: bool = True, width: float = 1.5, reach=None):
    """Straight lines seen through the barrel distortion r' = r(1 - strength r^2).

    ``count`` equally spaced vertical (or horizontal) lines span the
    undistorted disc of radius ``reach``, whose distorted image fills the
    inscribed circle. By default ``reach`` is the fold radius, so the image
    circle is the edge of the field of view as in a circular fisheye. Lines
    are dark on white; outside the disc is transparent.
    """
    reach = fold_radius(strength) if reach is None else float(reach)
    x, y = _centres(n)
    rho = np.hypot(x, y)
    r = undistort_radius(rho * reach * (1.0 - strength * reach * reach), strength)
    scale = np.where(rho > 0, r / np.where(rho > 0, rho, 1.0), 1.0)
    c = (x if vertical else y) * scale
    pos = np.linspace(-reach, reach, count + 2)[1:-1]
    # distance in undistorted units, converted to output pixels by the local scale
    d = np.min(np.abs(c[..., None] - pos), axis=-1) / np.maximum(scale, 1e-12) * (n / 2.0)
    return _gray(~(d < width), np.where(rho <= 1.0, 255, 0))


def line_tracks(img: RasterImage, vertical: bool = True, margin: float = 0.1):
    """Sub-pixel centres of dark runs, followed from the middle scanline outwards.

    For vertical lines each row is a scanline (horizontal lines use columns).
    Returns one (along, across) array pair per line, in pixels. Scanlines
    within ``margin`` of the image border (canonical units) are skipped.
    """
    px = img.pixels
    dark = (px[..., :3].astype(int).sum(axis=2) < 384) & (px[..., 3] > 0)
    if not vertical:
        dark = dark.T
    n = dark.shape[0]
    lo, hi = int(np.ceil(margin * n / 2.0)), int(np.floor(n - margin * n / 2.0))

    def runs(k):
        row = dark[k].astype(np.int8)
        edges = np.diff(np.concatenate(([0], row, [0])))
        starts = np.nonzero(edges == 1)[0]
        stops = np.nonzero(edges == -1)[0]
        return 0.5 * (starts + stops - 1)

    mid = n // 2
    seed = runs(mid)
    tracks = [[(mid, c)] for c in seed]
    for order in (range(mid + 1, hi), range(mid - 1, lo - 1, -1)):
        last = list(seed)
        for k in order:
            cs = runs(k)
            if cs.size == 0:
                continue
            for t, prev in enumerate(last):
                if prev is None:
                    continue
                j = np.argmin(np.abs(cs - prev))
                if abs(cs[j] - prev) > 3.0:
                    last[t] = None  # the line has ended (rim or lost)
                    continue
                tracks[t].append((k, cs[j]))
                last[t] = cs[j]
    return [np.array(t, dtype=float).T for t in tracks if len(t) > 10]


def max_bowing(img: RasterImage, vertical: bool = True, margin: float = 0.1) -> float:
    """Largest distance (pixels) of a tracked line point from that line's least-squares fit."""
    worst = 0.0
    for along, across in line_tracks(img, vertical, margin):
        coef = np.polyfit(along, across, 1)
        worst = max(worst, float(np.max(np.abs(across - np.polyval(coef, along)))))
    return worst
