"""Elliptic special functions at the fixed modulus k = 1/sqrt(2).

At this modulus the complementary modulus is also 1/sqrt(2), so K' = K and a
single descending-Landen table serves both the real and imaginary parts of a
complex argument.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .core import MappingSingularityError

K_MODULUS = 1.0 / math.sqrt(2.0)
M_PARAM = 0.5  # k^2
RF_TOL = 1e-14
POLE_TOL = 1e-9


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive reals."""
    for _ in range(64):
        if abs(a - b) <= 2.0 * np.finfo(float).eps * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


@functools.lru_cache(maxsize=None)
def compute_k_e() -> float:
    """Complete elliptic integral of the first kind at modulus 1/sqrt(2)."""
    return math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - M_PARAM)))


def lemniscate_constant() -> float:
    """Gamma(1/4)^2 / (2 sqrt(2 pi)), about 2.62205755."""
    return math.gamma(0.25) ** 2 / (2.0 * math.sqrt(2.0 * math.pi))


@dataclass(frozen=True)
class EllipticConstants:
    k_e: float
    l_e: float


def elliptic_constants() -> EllipticConstants:
    return EllipticConstants(compute_k_e(), lemniscate_constant())


@functools.lru_cache(maxsize=None)
def _landen_table():
    # a_n, c_n of the AGM started from (1, k'), stopped once c_n vanishes
    a = [1.0]
    b = [math.sqrt(1.0 - M_PARAM)]
    c = [K_MODULUS]
    for _ in range(16):
        if abs(c[-1]) <= np.finfo(float).eps:
            break
        a.append(0.5 * (a[-1] + b[-1]))
        c.append(0.5 * (a[-2] - b[-1]))
        b.append(math.sqrt(a[-2] * b[-1]))
    return tuple(a), tuple(c)


def jacobi_sncndn(x):
    """Real sn, cn, dn at k = 1/sqrt(2) by the descending Landen transformation."""
    x = np.asarray(x, dtype=float)
    a, c = _landen_table()
    n = len(a) - 1
    phi = (2.0**n) * a[n] * x
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c[i] / a[i] * np.sin(phi)))
    sn = np.sin(phi)
    cn = np.cos(phi)
    # for real x, dn >= k' > 0, so the square root is exact and well conditioned
    # (the Landen ratio cn / cos(phi_prev - phi) loses digits near the zeros of cn)
    dn = np.sqrt(1.0 - M_PARAM * sn * sn)
    return sn, cn, dn


def _nearest_pole_distance(z):
    # poles of cn sit at 2mK + (2n+1) i K'
    k = compute_k_e()
    re = np.remainder(z.real, 2.0 * k)
    re = np.minimum(re, 2.0 * k - re)
    im = np.remainder(z.imag - k, 2.0 * k)
    im = np.minimum(im, 2.0 * k - im)
    return np.hypot(re, im)


def jacobi_cn_complex(z):
    """cn(z, 1/sqrt(2)) for complex z via the real/imaginary addition formula."""
    z = np.asarray(z, dtype=complex)
    if np.any(_nearest_pole_distance(z) < POLE_TOL):
        raise MappingSingularityError("argument within 1e-9 of a pole of cn")
    s, c, d = jacobi_sncndn(z.real)
    s1, c1, d1 = jacobi_sncndn(z.imag)  # complementary modulus equals the modulus
    den = c1 * c1 + M_PARAM * s * s * s1 * s1
    out = (c * c1 - 1j * s * d * s1 * d1) / den
    return out[()] if out.ndim == 0 else out


def carlson_rf(x, y, z, rtol=RF_TOL):
    """Carlson's symmetric integral R_F for complex arguments (duplication)."""
    x, y, z = np.broadcast_arrays(*(np.asarray(t, dtype=complex) for t in (x, y, z)))
    a0 = (x + y + z) / 3.0
    q = (3.0 * rtol) ** (-1.0 / 6.0) * np.maximum.reduce([np.abs(a0 - x), np.abs(a0 - y), np.abs(a0 - z)])
    xn, yn, zn, an = x.copy(), y.copy(), z.copy(), a0.copy()
    scale = np.ones(an.shape)
    # converged entries are frozen so a value never depends on its neighbours
    for _ in range(100):
        active = scale * q >= np.abs(an)
        if not active.any():
            break
        sx, sy, sz = np.sqrt(xn), np.sqrt(yn), np.sqrt(zn)
        lam = sx * sy + sx * sz + sy * sz
        xn = np.where(active, (xn + lam) / 4.0, xn)
        yn = np.where(active, (yn + lam) / 4.0, yn)
        zn = np.where(active, (zn + lam) / 4.0, zn)
        an = np.where(active, (an + lam) / 4.0, an)
        scale = np.where(active, scale / 4.0, scale)
    else:
        raise MappingSingularityError("R_F duplication did not converge (argument on a branch cut?)")
    dx = (a0 - x) * scale / an
    dy = (a0 - y) * scale / an
    dz = -(dx + dy)
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0
    out = series / np.sqrt(an)
    return out[()] if out.ndim == 0 else out


def complex_arccos(w):
    """Principal arccosine, real part in [0, pi] (Kahan's formulation)."""
    w = np.asarray(w, dtype=complex)
    s1 = np.sqrt(1.0 - w)
    s2 = np.sqrt(1.0 + w)
    out = 2.0 * np.arctan2(s1.real, s2.real) + 1j * np.arcsinh((np.conj(s2) * s1).imag)
    return out[()] if out.ndim == 0 else out


def elliptic_f_complex(phi):
    """Incomplete elliptic integral F(phi, 1/sqrt(2)) for complex amplitude.

    Amplitudes are shifted into |Re phi| <= pi/2 with F(phi + n pi) = F(phi) + 2nK.
    """
    phi = np.asarray(phi, dtype=complex)
    shift = np.round(phi.real / np.pi)
    p = phi - shift * np.pi
    s = np.sin(p)
    cc = np.cos(p) ** 2
    out = s * carlson_rf(cc, 1.0 - M_PARAM * s * s, 1.0) + 2.0 * shift * compute_k_e()
    return out[()] if out.ndim == 0 else out


def inverse_cn(w):
    """cn^{-1}(w) = F(arccos w, 1/sqrt(2)), evaluated directly from w.

    With cos(phi) = w the integrand pieces are w^2, 1 - w^2 and (1 + w^2)/2, so
    no trigonometric round trip is needed. Points with Re w < 0 use
    F(arccos w) = 2K - F(arccos(-w)).
    """
    w = np.asarray(w, dtype=complex)
    neg = w.real < 0
    ww = np.where(neg, -w, w)
    w2 = ww * ww
    # on Re w = 0 the square lands on the negative real axis; pin the sign of
    # its zero imaginary part to the side the point approaches from
    on_cut = (w2.imag == 0) & (w2.real < 0)
    w2 = np.where(on_cut, w2.real + 1j * np.copysign(0.0, ww.imag), w2)
    sin_phi = np.sqrt(1.0 - w2)
    f = sin_phi * carlson_rf(w2, 0.5 * (1.0 + w2), 1.0)
    out = np.where(neg, 2.0 * compute_k_e() - f, f)
    return out[()] if out.ndim == 0 else out
