"""Collective emission of emitter arrays on planar and locally spherical guides.

Lengths are in vacuum wavelengths, so the vacuum wavenumber is ``2 pi``.
Decay rates and shifts are in units of the single-emitter decay rate.
"""

from ._version import __version__
from .collective import (
    CollectiveSpectrum,
    Mode,
    Radiance,
    build_matrix,
    eigenvalues,
    match_modes,
    spectrum,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    CurvedLatticeError,
    DomainError,
    EvanescentError,
    GeometryError,
    NumericalError,
)
from .greens import (
    coincidence_im,
    green_for_surface,
    green_free3d_zz,
    green_plane,
    green_sphere_closed,
    green_sphere_open,
)
from .surface import (
    EmitterArray,
    OpticalParams,
    SurfaceDescriptor,
    SurfaceKind,
    central_angles,
    distance_matrix,
    effective_wavenumber,
    ring_in_free_space,
    ring_on_plane,
    ring_on_sphere,
)

__all__ = [
    "__version__",
    "CollectiveSpectrum",
    "Mode",
    "Radiance",
    "build_matrix",
    "eigenvalues",
    "match_modes",
    "spectrum",
    "ConfigError",
    "ConvergenceError",
    "CurvedLatticeError",
    "DomainError",
    "EvanescentError",
    "GeometryError",
    "NumericalError",
    "coincidence_im",
    "green_for_surface",
    "green_free3d_zz",
    "green_plane",
    "green_sphere_closed",
    "green_sphere_open",
    "EmitterArray",
    "OpticalParams",
    "SurfaceDescriptor",
    "SurfaceKind",
    "central_angles",
    "distance_matrix",
    "effective_wavenumber",
    "ring_in_free_space",
    "ring_on_plane",
    "ring_on_sphere",
]
