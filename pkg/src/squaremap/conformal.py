"""Conformal (Schwarz-Christoffel) mapping between the unit disc and the square.

The fundamental map ``w = cn(z, 1/sqrt(2))`` takes a square tilted by 45
degrees with corners at multiples of K_e onto the disc; rotating by +-45
degrees and rescaling places it in the canonical space.
"""

from __future__ import annotations

import numpy as np

from .core import as_pair, unwrap
from .elliptic import complex_arccos, compute_k_e, elliptic_f_complex, inverse_cn, jacobi_cn_complex

ROT_POS = (1.0 + 1.0j) / np.sqrt(2.0)  # +45 degrees
ROT_NEG = (1.0 - 1.0j) / np.sqrt(2.0)  # -45 degrees
RIM_PULLBACK = 1.0 - 1e-9
CONSISTENCY_TOL = 1e-8


def sc_square_to_disc(x, y):
    x, y = as_pair(x, y)
    k = compute_k_e()
    z = x + 1j * y
    w = ROT_NEG * jacobi_cn_complex(k * (1.0 + 1.0j) / 2.0 * z - k)
    return unwrap(w.real, w.imag)


def sc_square_to_disc_even(x, y):
    """Same map through cn(-z) = cn(z): the argument is negated."""
    x, y = as_pair(x, y)
    k = compute_k_e()
    z = x + 1j * y
    w = ROT_NEG * jacobi_cn_complex(-k * (1.0 + 1.0j) / 2.0 * z + k)
    return unwrap(w.real, w.imag)


def sc_square_to_disc_compact(x, y):
    """``w = sqrt(-i) cn(K z sqrt(i/2) - K)`` with the roots taken numerically."""
    x, y = as_pair(x, y)
    k = compute_k_e()
    z = x + 1j * y
    w = np.sqrt(-1j) * jacobi_cn_complex(k * z * np.sqrt(0.5j) - k)
    return unwrap(w.real, w.imag)


def _branch_checked_inverse_cn(w):
    f = np.asarray(inverse_cn(w))
    bad = np.abs(jacobi_cn_complex(f) - w) > CONSISTENCY_TOL
    if bad.any():
        # retry on the conjugate branch: F(conj phi) = conj F(phi)
        f = np.where(bad, np.conj(np.asarray(inverse_cn(np.conj(w)))), f)
    return f


def sc_disc_to_square(u, v):
    """Disc to square. Points within 1e-9 of the rim are evaluated just inside
    it and the result is pushed radially onto the square's perimeter."""
    u, v = as_pair(u, v)
    r = np.hypot(u, v)
    rim = r > RIM_PULLBACK
    pull = np.where(rim, RIM_PULLBACK / np.where(rim, r, 1.0), 1.0)
    w = ROT_POS * (u * pull + 1j * v * pull)
    k = compute_k_e()
    z = (1.0 - 1.0j) / (-k) * _branch_checked_inverse_cn(w) + (1.0 - 1.0j)
    x, y = z.real, z.imag
    sup = np.maximum(np.abs(x), np.abs(y))
    push = np.where(rim & (sup > 0), 1.0 / np.where(sup > 0, sup, 1.0), 1.0)
    return unwrap(x * push, y * push)


def sc_disc_to_square_compact(u, v):
    """``z = -sqrt(-2i)/K F(arccos(w sqrt(i))) + 1 - i``, through the general
    complex arccosine and elliptic integral."""
    u, v = as_pair(u, v)
    k = compute_k_e()
    w = u + 1j * v
    z = -np.sqrt(-2j) / k * elliptic_f_complex(complex_arccos(w * np.sqrt(1j))) + 1.0 - 1.0j
    z = np.asarray(z)
    return unwrap(z.real, z.imag)
