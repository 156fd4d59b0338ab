"""Radially constrained disc <-> square mappings.

Every mapping here moves points only along rays from the origin: a square
point at polar radius ``rho`` goes to the disc point at radius ``t`` on the
same ray, where ``t`` is the contour level of a squircle family

    x**2 + y**2 - t**(2n - 2) * x**2 * y**2 = t**2

for a profile exponent ``n``. Simple stretching is the one radial map not in
that family (its contours are squares).
"""

from __future__ import annotations

import enum
import functools

import numpy as np

from .core import as_pair, axis_mask, safe_sqrt, sgn, unwrap

SQRT2 = np.sqrt(2.0)


class ConvergenceError(RuntimeError):
    """A bracketed root solve did not converge (the profile is not monotone)."""


def _axis_guarded(kernel):
    """Wrap a kernel that divides by a coordinate with the axis identity rule."""

    @functools.wraps(kernel)
    def wrapper(a, b):
        a, b = as_pair(a, b)
        axis = axis_mask(a, b)
        if axis.all():
            return unwrap(a.copy(), b.copy())
        # dummy values keep the kernel away from 0/0 on masked entries
        a_safe = np.where(axis, 0.5, a)
        b_safe = np.where(axis, 0.5, b)
        p, q = kernel(a_safe, b_safe)
        return unwrap(np.where(axis, a, p), np.where(axis, b, q))

    return wrapper


# --- simple stretching ------------------------------------------------------


@_axis_guarded
def stretch_disc_to_square(u, v):
    r = np.hypot(u, v)
    right = u * u >= v * v
    x = np.where(right, sgn(u) * r, sgn(v) * (u / v) * r)
    y = np.where(right, sgn(u) * (v / u) * r, sgn(v) * r)
    return x, y


@_axis_guarded
def stretch_square_to_disc(x, y):
    rho = np.hypot(x, y)
    right = x * x >= y * y
    u = np.where(right, sgn(x) * x * x / rho, sgn(y) * x * y / rho)
    v = np.where(right, sgn(x) * x * y / rho, sgn(y) * y * y / rho)
    return u, v


# --- FG-squircular ------------------------------------------------------------


@_axis_guarded
def fgs_square_to_disc(x, y):
    rho2 = x * x + y * y
    scale = safe_sqrt(rho2 - x * x * y * y) / np.sqrt(rho2)
    return x * scale, y * scale


@_axis_guarded
def fgs_disc_to_square(u, v):
    # sgn(u)/(|v| sqrt2) sqrt(r^2 - sqrt(r^2 (r^2 - 4u^2v^2))) with the
    # difference of radicals rationalised, which removes the 1/|v| as well
    r2 = u * u + v * v
    scale = np.sqrt(2.0 / (1.0 + safe_sqrt(1.0 - 4.0 * u * u * v * v / r2)))
    return u * scale, v * scale


@_axis_guarded
def fgs_disc_to_square_literal(u, v):
    """The |v|, |u| form as printed; loses digits near the axes, kept as a cross-check."""
    r2 = u * u + v * v
    inner = safe_sqrt(r2 * (r2 - 4.0 * u * u * v * v))
    common = safe_sqrt(r2 - inner) / SQRT2
    return sgn(u) / np.abs(v) * common, sgn(v) / np.abs(u) * common


# --- 2-squircular (s = t^2) ---------------------------------------------------


@_axis_guarded
def two_sq_square_to_disc(x, y):
    scale = 1.0 / np.sqrt(1.0 + x * x * y * y)
    return x * scale, y * scale


@_axis_guarded
def two_sq_disc_to_square(u, v):
    # sgn(uv)/(v sqrt2) sqrt(1 - sqrt(1 - 4u^2v^2)) with the difference of
    # radicals rationalised; the printed form cancels catastrophically near the axes
    scale = np.sqrt(2.0 / (1.0 + safe_sqrt(1.0 - 4.0 * u * u * v * v)))
    return u * scale, v * scale


# --- 3-squircular (s = t^3) ---------------------------------------------------


@_axis_guarded
def three_sq_square_to_disc(x, y):
    # sgn(xy)/y sqrt((-1 + sqrt(1 + 4x^2y^2(x^2+y^2))) / (2(x^2+y^2))), rationalised
    rho2 = x * x + y * y
    scale = np.sqrt(2.0 / (1.0 + np.sqrt(1.0 + 4.0 * x * x * y * y * rho2)))
    return x * scale, y * scale


@_axis_guarded
def three_sq_disc_to_square(u, v):
    # sgn(uv)/v sqrt((1 - sqrt(1 - 4u^2v^2(u^2+v^2))) / (2(u^2+v^2))), rationalised
    r2 = u * u + v * v
    scale = np.sqrt(2.0 / (1.0 + safe_sqrt(1.0 - 4.0 * u * u * v * v * r2)))
    return u * scale, v * scale


# --- the exponent family ----------------------------------------------------


def _bracketed_newton(fdf, x0, lo, hi, maxiter=200):
    """Vectorised Newton iteration for increasing functions, with bisection fallback.

    ``fdf(x) -> (f, df, scale)`` where ``scale`` bounds the magnitude of the terms
    summed into ``f``; a residual within a few ulps of it counts as converged.
    The root must lie in ``[lo, hi]`` with f(lo) <= 0 <= f(hi).
    """
    eps = np.finfo(float).eps
    x = np.array(x0, dtype=float)
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    active = np.ones(x.shape, dtype=bool)
    for _ in range(maxiter):
        f, df, scale = fdf(x)
        lo = np.where(active & (f < 0), x, lo)
        hi = np.where(active & (f > 0), x, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = f / df
            x_new = x - step
        bad = ~np.isfinite(x_new) | (x_new < lo) | (x_new > hi)
        x_new = np.where(bad, 0.5 * (lo + hi), x_new)
        delta = np.abs(x_new - x)
        x = np.where(active, x_new, x)
        tiny = np.maximum(np.abs(x), 1e-300)
        done = (np.abs(f) <= 4.0 * eps * scale) | (delta <= 2.0 * eps * tiny)
        done |= (hi - lo) <= 2.0 * eps * tiny
        active &= ~done
        if not active.any():
            return x
    raise ConvergenceError(f"root solve did not converge in {maxiter} iterations")


def _half_t(x, y):
    # largest root of t^3 - rho^2 t + x^2 y^2 = 0; FG's t sits at or above it
    # and rho/sqrt(3) (the cubic's local minimum) below it
    rho2 = x * x + y * y
    p2 = x * x * y * y
    seed = np.sqrt(np.maximum(rho2 - p2, 0.0))
    lo = np.sqrt(rho2 / 3.0)

    def fdf(t):
        return t * (t * t - rho2) + p2, 3.0 * t * t - rho2, t**3 + rho2 * t + p2

    t = _bracketed_newton(fdf, seed, lo, seed)
    return np.where(p2 == 0.0, seed, t)


def _four_t(x, y):
    # unique positive root tau of p2 tau^3 + tau - rho^2 = 0, t = sqrt(tau)
    rho2 = x * x + y * y
    p2 = x * x * y * y
    seed = np.maximum(rho2 - p2, 0.0)

    def fdf(tau):
        return p2 * tau**3 + tau - rho2, 3.0 * p2 * tau * tau + 1.0, p2 * tau**3 + tau + rho2

    tau = _bracketed_newton(fdf, seed, seed, rho2)
    return np.sqrt(np.where(p2 == 0.0, rho2, tau))


def _three_halves_t(x, y):
    p2 = x * x * y * y
    return 0.5 * (np.sqrt(p2 * p2 + 4.0 * (x * x + y * y)) - p2)


class RadialProfile(enum.Enum):
    """Squircle families ``s = t**n`` indexing the radial mappings."""

    LINEAR = 1.0
    SQUARE = 2.0
    CUBE = 3.0
    THREE_HALVES = 1.5
    HALF = 0.5
    FOURTH = 4.0

    @property
    def exponent(self) -> float:
        return self.value

    @property
    def tag(self) -> str:
        return {1.0: "t^1", 2.0: "t^2", 3.0: "t^3", 1.5: "t^3/2", 0.5: "t^1/2", 4.0: "t^4"}[self.value]

    def forward_t(self, x, y):
        """Contour level t in [0, 1] of the square point (x, y)."""
        x, y = as_pair(x, y)
        rho2 = x * x + y * y
        p2 = x * x * y * y
        if self is RadialProfile.LINEAR:
            t = np.sqrt(np.maximum(rho2 - p2, 0.0))
        elif self is RadialProfile.SQUARE:
            t = np.sqrt(rho2 / (1.0 + p2))
        elif self is RadialProfile.CUBE:
            t = np.sqrt(2.0 * rho2 / (1.0 + np.sqrt(1.0 + 4.0 * p2 * rho2)))
        elif self is RadialProfile.THREE_HALVES:
            t = _three_halves_t(x, y)
        elif self is RadialProfile.HALF:
            t = _half_t(x, y)
        else:
            t = _four_t(x, y)
        return unwrap(t)[0]

    def continuum_residual(self, x, y, t):
        """``x^2 + y^2 - t^(2n-2) x^2 y^2 - t^2``; zero on the family's contour."""
        x, y, t = (np.asarray(a, dtype=float) for a in (x, y, t))
        with np.errstate(divide="ignore", invalid="ignore"):
            w = t ** (2.0 * self.exponent - 2.0)
        w = np.where(x * y == 0.0, 0.0, w)
        return x * x + y * y - w * x * x * y * y - t * t


NUMERIC_PROFILES = (RadialProfile.THREE_HALVES, RadialProfile.HALF, RadialProfile.FOURTH)


def _check_numeric(profile):
    if profile not in NUMERIC_PROFILES:
        raise ValueError(f"profile {profile.tag} has a dedicated closed-form mapping")


def profile_square_to_disc(profile: RadialProfile, x, y):
    _check_numeric(profile)

    @_axis_guarded
    def kernel(a, b):
        scale = profile.forward_t(a, b) / np.hypot(a, b)
        return a * scale, b * scale

    return kernel(x, y)


def profile_disc_to_square(profile: RadialProfile, u, v):
    """Invert a profile mapping by solving for the square radius along each ray."""
    _check_numeric(profile)
    n = profile.exponent

    @_axis_guarded
    def kernel(a, b):
        r = np.hypot(a, b)
        c, s = a / r, b / r
        cs2 = (c * s) ** 2
        r_perim = 1.0 / np.maximum(np.abs(c), np.abs(s))

        def fdf(rho):
            t = np.asarray(profile.forward_t(rho * c, rho * s))
            # implicit derivative of rho^2 - t^(2n-2) cs2 rho^4 - t^2 = 0
            tp = np.maximum(t, 1e-300)
            g_rho = 2.0 * rho - 4.0 * tp ** (2 * n - 2) * cs2 * rho**3
            g_t = -(2 * n - 2) * tp ** (2 * n - 3) * cs2 * rho**4 - 2.0 * tp
            return t - r, -g_rho / g_t, r

        # the disc radius is a fine first guess; the bracket keeps it honest
        rho = _bracketed_newton(fdf, np.minimum(r, r_perim), np.zeros_like(r), r_perim)
        # t is flat in rho at the corners, so rim points are placed on the
        # perimeter directly rather than anywhere in the sqrt(eps)-wide flat spot
        rho = np.where(r >= 1.0 - 4.0 * np.finfo(float).eps, r_perim, rho)
        return rho * c, rho * s

    return kernel(u, v)
