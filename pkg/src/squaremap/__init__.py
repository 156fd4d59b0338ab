"""Mappings between the unit disc and the square [-1, 1]^2.

Radial squircular maps, the (squelched) Elliptical Grid, the conformal
Schwarz-Christoffel map, distortion measurements and an image remapper.
"""

from .analysis import DistortionReport, Jacobian2, cr_residual, jacobian_fd, radial_deviation, verify_report
from .core import (
    DiscPoint,
    DomainError,
    MappingId,
    MappingKind,
    MappingSingularityError,
    SquarePoint,
    axis_passthrough,
)
from .elliptic import compute_k_e, elliptic_constants, inverse_cn, jacobi_cn_complex, jacobi_sncndn
from .maps import Direction, apply, disc_to_square, every_mapping, square_to_disc, to_disc, to_square
from .radial_maps import ConvergenceError, RadialProfile
from .raster import RasterImage, RemapJob, export_grid_csv, load_png, pixel_to_canonical, remap, save_png

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "Direction",
    "DiscPoint",
    "DistortionReport",
    "DomainError",
    "Jacobian2",
    "MappingId",
    "MappingKind",
    "MappingSingularityError",
    "RadialProfile",
    "RasterImage",
    "RemapJob",
    "SquarePoint",
    "apply",
    "axis_passthrough",
    "compute_k_e",
    "cr_residual",
    "disc_to_square",
    "elliptic_constants",
    "every_mapping",
    "export_grid_csv",
    "inverse_cn",
    "jacobi_cn_complex",
    "jacobi_sncndn",
    "jacobian_fd",
    "load_png",
    "pixel_to_canonical",
    "radial_deviation",
    "remap",
    "save_png",
    "square_to_disc",
    "to_disc",
    "to_square",
    "verify_report",
]
