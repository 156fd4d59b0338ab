"""Figures of mapped grids, rendered off-screen to image files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .core import MappingId  # noqa: E402
from .maps import Direction, apply  # noqa: E402


def _input_curves(direction: Direction, lines: int, samples: int):
    """Families of straight lines (square input) or circles and rays (disc input)."""
    t = np.linspace(-1.0, 1.0, samples)
    curves = []
    if direction is Direction.SQUARE_TO_DISC:
        for c in np.linspace(-1.0, 1.0, lines):
            curves.append((np.full_like(t, c), t))
            curves.append((t, np.full_like(t, c)))
        return curves
    th = np.linspace(0.0, 2.0 * np.pi, 4 * samples)
    for r in np.linspace(0.0, 1.0, lines // 2 + 1)[1:]:
        curves.append((r * np.cos(th), r * np.sin(th)))
    s = np.linspace(0.0, 1.0, samples)
    for a in np.linspace(0.0, 2.0 * np.pi, 2 * lines, endpoint=False):
        curves.append((s * np.cos(a), s * np.sin(a)))
    return curves


def grid_figure(mapping: MappingId, direction: Direction, lines: int = 11, samples: int = 200):
    """Side-by-side input pattern and its image under ``direction``."""
    fig, (ax_in, ax_out) = plt.subplots(1, 2, figsize=(8, 4))
    for x, y in _input_curves(direction, lines, samples):
        ax_in.plot(x, y, lw=0.7, color="tab:blue")
        u, v = apply(mapping, direction, x, y)
        ax_out.plot(u, v, lw=0.7, color="tab:red")
    th = np.linspace(0.0, 2.0 * np.pi, 400)
    circle = (np.cos(th), np.sin(th))
    square = ([-1, 1, 1, -1, -1], [-1, -1, 1, 1, -1])
    src, dst = (square, circle) if direction is Direction.SQUARE_TO_DISC else (circle, square)
    ax_in.plot(*src, color="k", lw=1.0)
    ax_out.plot(*dst, color="k", lw=1.0)
    for ax, title in ((ax_in, "input"), (ax_out, f"{mapping} {direction.value}")):
        ax.set_aspect("equal")
        ax.set_xlim(-1.1, 1.1)
        ax.set_ylim(-1.1, 1.1)
        ax.set_title(title, fontsize=9)
        ax.tick_params(labelsize=7)
    fig.tight_layout()
    return fig


def save_grid_figure(mapping: MappingId, direction: Direction, path, lines: int = 11, dpi: int = 120) -> None:
    fig = grid_figure(mapping, direction, lines)
    try:
        fig.savefig(path, dpi=dpi)
    finally:
        plt.close(fig)
