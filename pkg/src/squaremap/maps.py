"""Dispatch from a :class:`MappingId` to its forward and inverse functions."""

from __future__ import annotations

import enum

from . import conformal, grid_maps, radial_maps
from .core import DiscPoint, MappingId, MappingKind, SquarePoint, axis_passthrough
from .radial_maps import RadialProfile


class Direction(enum.Enum):
    DISC_TO_SQUARE = "disc2square"
    SQUARE_TO_DISC = "square2disc"

    @property
    def inverse(self) -> "Direction":
        if self is Direction.DISC_TO_SQUARE:
            return Direction.SQUARE_TO_DISC
        return Direction.DISC_TO_SQUARE


_CLOSED = {
    MappingKind.SIMPLE_STRETCH: (radial_maps.stretch_square_to_disc, radial_maps.stretch_disc_to_square),
    MappingKind.FG_SQUIRCULAR: (radial_maps.fgs_square_to_disc, radial_maps.fgs_disc_to_square),
    MappingKind.TWO_SQUIRCULAR: (radial_maps.two_sq_square_to_disc, radial_maps.two_sq_disc_to_square),
    MappingKind.THREE_SQUIRCULAR: (radial_maps.three_sq_square_to_disc, radial_maps.three_sq_disc_to_square),
    MappingKind.ELLIPTICAL_GRID: (grid_maps.eg_square_to_disc, grid_maps.eg_disc_to_square_trig),
    MappingKind.SCHWARZ_CHRISTOFFEL: (conformal.sc_square_to_disc, conformal.sc_disc_to_square),
}

PROFILE_OF = {
    MappingKind.FG_SQUIRCULAR: RadialProfile.LINEAR,
    MappingKind.TWO_SQUIRCULAR: RadialProfile.SQUARE,
    MappingKind.THREE_SQUIRCULAR: RadialProfile.CUBE,
    MappingKind.THREE_HALVES_SQUIRCULAR: RadialProfile.THREE_HALVES,
    MappingKind.HALF_SQUIRCULAR: RadialProfile.HALF,
    MappingKind.FOUR_SQUIRCULAR: RadialProfile.FOURTH,
}


def square_to_disc(mapping: MappingId, x, y):
    kind = mapping.kind
    if kind in _CLOSED:
        return _CLOSED[kind][0](x, y)
    if kind is MappingKind.SQUELCHED_ELLIPTICAL_GRID:
        return grid_maps.seg_square_to_disc(mapping.q, x, y)
    return radial_maps.profile_square_to_disc(PROFILE_OF[kind], x, y)


def disc_to_square(mapping: MappingId, u, v):
    kind = mapping.kind
    if kind in _CLOSED:
        return _CLOSED[kind][1](u, v)
    if kind is MappingKind.SQUELCHED_ELLIPTICAL_GRID:
        return grid_maps.seg_disc_to_square(mapping.q, u, v)
    return radial_maps.profile_disc_to_square(PROFILE_OF[kind], u, v)


def apply(mapping: MappingId, direction: Direction, a, b):
    if direction is Direction.DISC_TO_SQUARE:
        return disc_to_square(mapping, a, b)
    return square_to_disc(mapping, a, b)


def to_disc(mapping: MappingId, p: SquarePoint) -> DiscPoint:
    """Single-point square-to-disc with validated input and output."""
    if mapping.kind is not MappingKind.SCHWARZ_CHRISTOFFEL:
        hit = axis_passthrough(p)
        if hit is not None:
            return DiscPoint(hit.x, hit.y)
    u, v = square_to_disc(mapping, p.x, p.y)
    return DiscPoint(float(u), float(v))


def to_square(mapping: MappingId, p: DiscPoint) -> SquarePoint:
    if mapping.kind is not MappingKind.SCHWARZ_CHRISTOFFEL:
        hit = axis_passthrough(p)
        if hit is not None:
            return SquarePoint(hit.u, hit.v)
    x, y = disc_to_square(mapping, p.u, p.v)
    return SquarePoint(float(x), float(y))


def roundtrip_tolerance(mapping: MappingId) -> float:
    kind = mapping.kind
    if kind is MappingKind.SCHWARZ_CHRISTOFFEL:
        return 1e-8
    if kind in (
        MappingKind.THREE_HALVES_SQUIRCULAR,
        MappingKind.HALF_SQUIRCULAR,
        MappingKind.FOUR_SQUIRCULAR,
    ):
        return 1e-10
    return 1e-12


def every_mapping(q: float = 0.5):
    """One MappingId per kind; the squelched grid gets ``q``."""
    return [
        MappingId(k, q if k is MappingKind.SQUELCHED_ELLIPTICAL_GRID else None) for k in MappingKind
    ]


__all__ = [
    "Direction",
    "apply",
    "disc_to_square",
    "every_mapping",
    "roundtrip_tolerance",
    "square_to_disc",
    "to_disc",
    "to_square",
]
