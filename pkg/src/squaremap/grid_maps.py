"""Elliptical Grid mapping and its squelched generalisation.

The square-to-disc direction sends each vertical segment ``x = x0`` onto an
arc of the ellipse ``u^2/x0^2 + v^2/b^2 = 1`` (and likewise for horizontal
segments), with ``b^2 = q + 1 - q x0^2``. ``q = 1`` is the ordinary grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import MIN_SQUELCH, as_pair, safe_sqrt, sgn, unwrap

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class SquelchParam:
    q: float

    def __post_init__(self):
        if not (MIN_SQUELCH <= self.q <= 1.0):
            raise ValueError(f"squelching parameter must lie in [{MIN_SQUELCH}, 1], got {self.q}")

    def semi_axes(self, x, y):
        """Ellipse semi-axes ``a = sqrt(q+1-qy^2)`` and ``b = sqrt(q+1-qx^2)``."""
        q = self.q
        return np.sqrt(q + 1.0 - q * np.asarray(y) ** 2), np.sqrt(q + 1.0 - q * np.asarray(x) ** 2)


def _param(q) -> SquelchParam:
    return q if isinstance(q, SquelchParam) else SquelchParam(float(q))


def eg_square_to_disc(x, y):
    x, y = as_pair(x, y)
    return unwrap(x * np.sqrt(1.0 - 0.5 * y * y), y * np.sqrt(1.0 - 0.5 * x * x))


def eg_disc_to_square_trig(u, v):
    """Inverse derived through the half-angle substitution (the primary inverse)."""
    u, v = as_pair(u, v)
    d = u * u - v * v
    k = 2.0 * SQRT2
    x = 0.5 * safe_sqrt(2.0 + d + k * u) - 0.5 * safe_sqrt(2.0 + d - k * u)
    y = 0.5 * safe_sqrt(2.0 - d + k * v) - 0.5 * safe_sqrt(2.0 - d - k * v)
    return unwrap(x, y)


def eg_disc_to_square_biquadratic(u, v):
    """Inverse from the biquadratic in x^2; kept as an independent cross-check."""
    u, v = as_pair(u, v)
    pu = 2.0 + u * u - v * v
    pv = 2.0 - u * u + v * v
    x = sgn(u) / SQRT2 * safe_sqrt(pu - safe_sqrt(pu * pu - 8.0 * u * u))
    y = sgn(v) / SQRT2 * safe_sqrt(pv - safe_sqrt(pv * pv - 8.0 * v * v))
    return unwrap(x, y)


eg_disc_to_square = eg_disc_to_square_trig


def seg_square_to_disc(q, x, y):
    """Squelched Elliptical Grid, square to disc.

    Evaluated as ``u^2 = x^2 a^2 (b^2 - y^2) / (a^2 b^2 - x^2 y^2)`` with the
    numerator and denominator expanded in ``A = 1 - x^2`` and ``B = 1 - y^2`` so
    nothing cancels near the boundary. At the exact corners the ratio is 0/0
    and the diagonal limit is used.
    """
    q = _param(q).q
    x, y = as_pair(x, y)
    A = (1.0 - x) * (1.0 + x)
    B = (1.0 - y) * (1.0 + y)
    den = (q + 1.0) * (A + B) - (1.0 - q * q) * A * B
    corner = den <= 0.0
    den = np.where(corner, 1.0, den)
    u2 = x * x * (1.0 + q * B) * (q * A + B) / den
    v2 = y * y * (1.0 + q * A) * (A + q * B) / den
    u = sgn(x) * np.sqrt(np.where(corner, 0.5, u2))
    v = sgn(y) * np.sqrt(np.where(corner, 0.5, v2))
    return unwrap(u, v)


def seg_disc_to_square(q, u, v):
    """Squelched Elliptical Grid, disc to square.

    ``P - sqrt(P^2 - c u^2)`` is rewritten as ``c u^2 / (P + sqrt(P^2 - c u^2))``,
    which is the same number without the cancellation near the axes.
    """
    q = _param(q).q
    u, v = as_pair(u, v)
    pu = q + 1.0 + q * u * u - v * v
    pv = q + 1.0 - u * u + q * v * v
    c = 4.0 * q * (q + 1.0)
    s = 1.0 / np.sqrt(2.0 * q)
    x = s * u * np.sqrt(c / (pu + safe_sqrt(pu * pu - c * u * u)))
    y = s * v * np.sqrt(c / (pv + safe_sqrt(pv * pv - c * v * v)))
    return unwrap(x, y)
