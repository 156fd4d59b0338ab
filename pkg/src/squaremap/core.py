"""Canonical mapping space shared by every disc <-> square mapping.

The disc is ``u**2 + v**2 <= 1`` and the square is ``[-1, 1] x [-1, 1]``.
Mapping functions in this package are vectorised over coordinate arrays; the
point types below are thin validated wrappers for single-point use.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

EPS_DOMAIN = 1e-12
EPS_CLAMP = 1e-9
AXIS_TOL = 1e-15


class DomainError(ValueError):
    """A point lies outside the disc or square it was supposed to live in."""


class MappingSingularityError(ArithmeticError):
    """Evaluation hit a pole or branch point of a transcendental mapping."""


def sgn(x):
    """Signum: -1, 0 or 1. Works elementwise on arrays."""
    out = np.sign(np.asarray(x, dtype=float))
    return out[()] if out.ndim == 0 else out


def safe_sqrt(r):
    """Square root that clamps roundoff-negative radicands to zero.

    Radicands below ``-EPS_CLAMP`` are not roundoff: they mean the input was
    outside the domain, and raise :class:`DomainError`.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < -EPS_CLAMP):
        raise DomainError(f"negative radicand {float(np.min(r)):.3e}: input outside the domain")
    out = np.sqrt(np.maximum(r, 0.0))
    return out[()] if out.ndim == 0 else out


def axis_mask(a, b):
    """True where either coordinate is zero (within ``AXIS_TOL``)."""
    return (np.abs(a) <= AXIS_TOL) | (np.abs(b) <= AXIS_TOL)


def as_pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.broadcast_arrays(a, b)


def unwrap(*arrays):
    """Turn 0-d arrays back into numpy scalars so scalar calls return scalars."""
    return tuple(a[()] if a.ndim == 0 else a for a in arrays)


def in_disc(u, v, eps=EPS_DOMAIN):
    return np.asarray(u) ** 2 + np.asarray(v) ** 2 <= 1.0 + eps


def in_square(x, y, eps=EPS_DOMAIN):
    return np.maximum(np.abs(x), np.abs(y)) <= 1.0 + eps


@dataclass(frozen=True)
class DiscPoint:
    u: float
    v: float

    def __post_init__(self):
        if not (np.isfinite(self.u) and np.isfinite(self.v)):
            raise DomainError(f"non-finite disc point ({self.u}, {self.v})")
        if not in_disc(self.u, self.v):
            raise DomainError(f"({self.u}, {self.v}) is outside the unit disc")

    def __iter__(self):
        yield self.u
        yield self.v


@dataclass(frozen=True)
class SquarePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise DomainError(f"non-finite square point ({self.x}, {self.y})")
        if not in_square(self.x, self.y):
            raise DomainError(f"({self.x}, {self.y}) is outside the square [-1, 1]^2")

    def __iter__(self):
        yield self.x
        yield self.y


Point = Union[DiscPoint, SquarePoint]


def axis_passthrough(p: Point) -> Optional[Point]:
    """Identity fallback for points on a coordinate axis, else ``None``.

    The closed-form mappings divide by a coordinate; on the axes every one of
    them reduces to the identity, so callers short-circuit here.
    """
    a, b = p
    if abs(a) <= AXIS_TOL or abs(b) <= AXIS_TOL:
        return type(p)(float(a), float(b))
    return None


class MappingKind(enum.Enum):
    SIMPLE_STRETCH = "simple-stretch"
    FG_SQUIRCULAR = "fg-squircular"
    TWO_SQUIRCULAR = "2-squircular"
    THREE_SQUIRCULAR = "3-squircular"
    THREE_HALVES_SQUIRCULAR = "3half-squircular"
    HALF_SQUIRCULAR = "half-squircular"
    FOUR_SQUIRCULAR = "4-squircular"
    ELLIPTICAL_GRID = "elliptical-grid"
    SQUELCHED_ELLIPTICAL_GRID = "squelched-elliptical-grid"
    SCHWARZ_CHRISTOFFEL = "schwarz-christoffel"


RADIAL_KINDS = frozenset(
    {
        MappingKind.SIMPLE_STRETCH,
        MappingKind.FG_SQUIRCULAR,
        MappingKind.TWO_SQUIRCULAR,
        MappingKind.THREE_SQUIRCULAR,
        MappingKind.THREE_HALVES_SQUIRCULAR,
        MappingKind.HALF_SQUIRCULAR,
        MappingKind.FOUR_SQUIRCULAR,
    }
)

# q below this makes 1/sqrt(2q) amplify roundoff past any useful tolerance.
MIN_SQUELCH = 1e-6


@dataclass(frozen=True)
class MappingId:
    """A mapping from the catalogue, plus ``q`` for the squelched grid."""

    kind: MappingKind
    q: Optional[float] = None

    def __post_init__(self):
        if self.kind is MappingKind.SQUELCHED_ELLIPTICAL_GRID:
            if self.q is None:
                raise ValueError("squelched-elliptical-grid needs a q parameter")
            if not (MIN_SQUELCH <= self.q <= 1.0):
                raise ValueError(f"q must lie in [{MIN_SQUELCH}, 1], got {self.q}")
        elif self.q is not None:
            raise ValueError(f"{self.kind.value} takes no q parameter")

    @classmethod
    def parse(cls, name: str, q: Optional[float] = None) -> "MappingId":
        try:
            kind = MappingKind(name)
        except ValueError:
            valid = ", ".join(k.value for k in MappingKind)
            raise ValueError(f"unknown mapping {name!r}; expected one of {valid}") from None
        return cls(kind, q)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def is_radial(self) -> bool:
        return self.kind in RADIAL_KINDS

    def __str__(self):
        return self.name if self.q is None else f"{self.name}(q={self.q:g})"


ALL_KINDS = tuple(MappingKind)
