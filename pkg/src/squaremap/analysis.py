"""Measured distortion properties of the mappings.

Everything here is numerical inspection: finite-difference Jacobians give the
conformality defect and area scaling, polar angles give the radial defect,
and forward/inverse compositions give the round-trip error.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import DomainError, MappingId, MappingKind, as_pair
from .maps import PROFILE_OF, Direction, apply, disc_to_square, roundtrip_tolerance, square_to_disc

DEFAULT_H = 1e-5
GRID_MARGIN = 0.005
BLOCK_ROWS = 16  # fixed work unit; the worker count only schedules blocks


@dataclass(frozen=True)
class Jacobian2:
    """Partial derivatives of the output pair with respect to the input pair.

    Fields may be scalars or equally shaped arrays (one Jacobian per point).
    """

    j11: np.ndarray
    j12: np.ndarray
    j21: np.ndarray
    j22: np.ndarray

    @property
    def det(self):
        return self.j11 * self.j22 - self.j12 * self.j21

    @property
    def frobenius(self):
        return np.sqrt(self.j11**2 + self.j12**2 + self.j21**2 + self.j22**2)


def _in_domain(direction: Direction, a, b, margin):
    if direction is Direction.SQUARE_TO_DISC:
        return np.maximum(np.abs(a), np.abs(b)) <= 1.0 - margin
    return np.hypot(a, b) <= 1.0 - margin


def jacobian_fd(mapping: MappingId, direction: Direction, a, b, h: float = DEFAULT_H) -> Jacobian2:
    """Central-difference Jacobian of ``direction`` at the point(s) (a, b)."""
    if not (1e-7 <= h <= 1e-3):
        raise ValueError(f"step {h} outside [1e-7, 1e-3]")
    a, b = as_pair(a, b)
    if not np.all(_in_domain(direction, a, b, 2.0 * h)):
        raise DomainError("finite-difference stencil leaves the domain; need margin >= 2h")
    pa = apply(mapping, direction, a + h, b)
    ma = apply(mapping, direction, a - h, b)
    pb = apply(mapping, direction, a, b + h)
    mb = apply(mapping, direction, a, b - h)
    inv = 1.0 / (2.0 * h)
    return Jacobian2(
        j11=(np.asarray(pa[0]) - ma[0]) * inv,
        j12=(np.asarray(pb[0]) - mb[0]) * inv,
        j21=(np.asarray(pa[1]) - ma[1]) * inv,
        j22=(np.asarray(pb[1]) - mb[1]) * inv,
    )


def cr_residual(j: Jacobian2):
    """Scale-free Cauchy-Riemann defect; 0 exactly for orientation-preserving similarities."""
    num = np.abs(j.j11 - j.j22) + np.abs(j.j12 + j.j21)
    out = num / np.maximum(j.frobenius, 1e-30)
    return out[()] if np.ndim(out) == 0 else out


def wrap_angle(d):
    """Shortest signed angle, in (-pi, pi]."""
    d = np.asarray(d, dtype=float)
    w = np.remainder(d + math.pi, 2.0 * math.pi) - math.pi
    return np.where(w == -math.pi, math.pi, w)


def radial_deviation(mapping: MappingId, a, b, direction: Direction = Direction.SQUARE_TO_DISC):
    """|polar angle of the image - polar angle of the input|."""
    a, b = as_pair(a, b)
    if np.any((a == 0) & (b == 0)):
        raise DomainError("polar angle is undefined at the origin")
    p, q = apply(mapping, direction, a, b)
    out = np.abs(wrap_angle(np.arctan2(q, p) - np.arctan2(b, a)))
    return out[()] if out.ndim == 0 else out


def square_grid(n: int, margin: float = GRID_MARGIN):
    g = np.linspace(-1.0 + margin, 1.0 - margin, n)
    g = 0.5 * (g - g[::-1])  # exact mirror symmetry, exact 0 at the centre
    return np.meshgrid(g, g)


def disc_grid(n: int, margin: float = GRID_MARGIN):
    """Points of the n x n lattice lying at radius <= 1 - margin, flattened."""
    x, y = square_grid(n, margin)
    keep = np.hypot(x, y) <= 1.0 - margin
    return x[keep], y[keep]


def squircularity_residual(mapping: MappingId, x, y, u, v) -> Optional[np.ndarray]:
    """Contour-matching residual of the mapping's squircle family, if it has one.

    FG-squircular and the Elliptical Grid satisfy u^2 + v^2 = x^2 + y^2 - x^2 y^2;
    the other exponent-family maps satisfy their own continuum equation with
    t = |(u, v)|. Other mappings have no such condition.
    """
    kind = mapping.kind
    if kind in (MappingKind.FG_SQUIRCULAR, MappingKind.ELLIPTICAL_GRID):
        return np.abs(u * u + v * v - (x * x + y * y - x * x * y * y))
    if kind in PROFILE_OF:
        return np.abs(PROFILE_OF[kind].continuum_residual(x, y, np.hypot(u, v)))
    return None


REPORT_KEYS = (
    "mapping",
    "grid_n",
    "max_roundtrip",
    "max_angle_dev",
    "cr_residual_max",
    "area_ratio_min",
    "area_ratio_max",
    "squircularity_residual_max",
)


@dataclass(frozen=True)
class DistortionReport:
    mapping: MappingId
    grid_n: int
    max_roundtrip: float
    max_angle_dev: float
    cr_residual_max: float
    area_ratio_min: float
    area_ratio_max: float
    squircularity_residual_max: Optional[float] = None

    def to_json(self) -> str:
        d = {k: getattr(self, k) for k in REPORT_KEYS}
        d["mapping"] = str(self.mapping)
        return json.dumps(d)

    def failures(self) -> list:
        """Threshold violations for the properties this mapping is known to have."""
        out = []
        kind = self.mapping.kind
        tol = roundtrip_tolerance(self.mapping)
        if not self.max_roundtrip < tol:
            out.append(f"round trip {self.max_roundtrip:.3e} >= {tol:g}")
        if self.mapping.is_radial and not self.max_angle_dev < 1e-12:
            out.append(f"angular deviation {self.max_angle_dev:.3e} >= 1e-12 for a radial map")
        non_radial = (MappingKind.ELLIPTICAL_GRID, MappingKind.SQUELCHED_ELLIPTICAL_GRID, MappingKind.SCHWARZ_CHRISTOFFEL)
        if kind in non_radial and not self.max_angle_dev > 0.01:
            out.append(f"angular deviation {self.max_angle_dev:.3e} <= 0.01 for a non-radial map")
        if kind is MappingKind.SCHWARZ_CHRISTOFFEL:
            if not self.cr_residual_max < 1e-4:
                out.append(f"Cauchy-Riemann residual {self.cr_residual_max:.3e} >= 1e-4")
        elif kind in (MappingKind.SIMPLE_STRETCH, MappingKind.FG_SQUIRCULAR, MappingKind.ELLIPTICAL_GRID):
            if not self.cr_residual_max > 0.05:
                out.append(f"Cauchy-Riemann residual {self.cr_residual_max:.3e} <= 0.05 for a non-conformal map")
        if not self.area_ratio_max / self.area_ratio_min > 1.05:
            out.append("area scaling is nearly constant")
        if self.squircularity_residual_max is not None and not self.squircularity_residual_max < 1e-12:
            out.append(f"squircularity residual {self.squircularity_residual_max:.3e} >= 1e-12")
        return out


def _measure_rows(mapping: MappingId, xs, ys, h):
    """Per-chunk maxima/minima over a block of square-grid rows."""
    u, v = square_to_disc(mapping, xs, ys)
    u, v = np.asarray(u), np.asarray(v)
    x2, y2 = disc_to_square(mapping, u, v)
    rt = np.max(np.maximum(np.abs(x2 - xs), np.abs(y2 - ys)))
    off = (xs != 0) | (ys != 0)
    ang = np.abs(wrap_angle(np.arctan2(v, u) - np.arctan2(ys, xs)))[off]
    jac = jacobian_fd(mapping, Direction.SQUARE_TO_DISC, xs, ys, h)
    cr = cr_residual(jac)
    area = np.abs(jac.det)
    sq = squircularity_residual(mapping, xs, ys, u, v)
    return (
        rt,
        np.max(ang) if ang.size else 0.0,
        np.max(cr),
        np.min(area),
        np.max(area),
        None if sq is None else np.max(sq),
    )


def _measure_disc(mapping: MappingId, us, vs):
    x, y = disc_to_square(mapping, us, vs)
    u2, v2 = square_to_disc(mapping, x, y)
    rt = np.max(np.maximum(np.abs(u2 - us), np.abs(v2 - vs)))
    off = (us != 0) | (vs != 0)
    ang = np.abs(wrap_angle(np.arctan2(y, x) - np.arctan2(vs, us)))[off]
    return rt, np.max(ang) if ang.size else 0.0


def verify_report(mapping: MappingId, grid_n: int = 201, workers: int = 1, h: float = DEFAULT_H) -> DistortionReport:
    """Measure round trip, radiality, conformality, area scaling and squircularity.

    The grids are cut into fixed blocks of rows that ``workers`` threads pick
    up; blocks never depend on the worker count and every reduction is a max
    or min, so the report is bit-identical for any ``workers``.
    """
    if grid_n < 11 or grid_n % 2 == 0:
        raise ValueError("grid_n must be odd and at least 11")
    xs, ys = square_grid(grid_n)
    us, vs = disc_grid(grid_n)
    starts = range(0, grid_n, BLOCK_ROWS)
    # disc points come row-major, so a row block is a contiguous slice
    row_of = np.searchsorted(vs, ys[:, 0], side="left")
    row_of = np.append(row_of, us.size)

    def job(r0):
        r1 = min(r0 + BLOCK_ROWS, grid_n)
        sq = _measure_rows(mapping, xs[r0:r1], ys[r0:r1], h)
        d0, d1 = row_of[r0], row_of[r1]
        dc = _measure_disc(mapping, us[d0:d1], vs[d0:d1]) if d1 > d0 else (0.0, 0.0)
        return sq, dc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, starts))
    else:
        parts = [job(r0) for r0 in starts]

    sq_parts = [p[0] for p in parts]
    dc_parts = [p[1] for p in parts]
    squirc = [p[5] for p in sq_parts]
    return DistortionReport(
        mapping=mapping,
        grid_n=grid_n,
        max_roundtrip=float(max(max(p[0] for p in sq_parts), max(p[0] for p in dc_parts))),
        max_angle_dev=float(max(max(p[1] for p in sq_parts), max(p[1] for p in dc_parts))),
        cr_residual_max=float(max(p[2] for p in sq_parts)),
        area_ratio_min=float(min(p[3] for p in sq_parts)),
        area_ratio_max=float(max(p[4] for p in sq_parts)),
        squircularity_residual_max=None if squirc[0] is None else float(max(squirc)),
    )
