"""Surfaces, optical parameters, effective wavenumber and emitter layouts.

Lengths are measured in units of the free-space wavelength, so the default
free-space wavenumber is ``2 pi``.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, EvanescentError, GeometryError
from .specfun import ANTIPODE_DEG

__all__ = [
    "K0",
    "THETA_MAX",
    "SurfaceKind",
    "SurfaceDescriptor",
    "OpticalParams",
    "EmitterArray",
    "effective_wavenumber",
    "ring_on_plane",
    "ring_in_free_space",
    "ring_on_sphere",
    "distance_matrix",
    "central_angles",
]

K0 = 2.0 * math.pi

#: Largest central angle (radians) between emitters on a sphere patch.
THETA_MAX = math.radians(ANTIPODE_DEG)


class SurfaceKind(enum.Enum):
    PLANE = "plane"
    SPHERE = "sphere"
    FREE3D = "free3d"


@dataclass(frozen=True)
class SurfaceDescriptor:
    """Which surface the emitters live on.

    Use the :meth:`plane`, :meth:`sphere` and :meth:`free3d` constructors.
    ``FREE3D`` is the bulk free-space baseline and bypasses the surface
    formalism altogether.
    """

    kind: SurfaceKind
    radius: float | None = None

    def __post_init__(self):
        if self.kind is SurfaceKind.SPHERE:
            if self.radius is None or not math.isfinite(self.radius) or self.radius <= 0:
                raise DomainError(f"sphere radius must be a positive number, got {self.radius!r}")
        elif self.radius is not None:
            raise DomainError(f"{self.kind.value} surface takes no radius")

    @classmethod
    def plane(cls):
        return cls(SurfaceKind.PLANE)

    @classmethod
    def sphere(cls, radius):
        return cls(SurfaceKind.SPHERE, float(radius))

    @classmethod
    def free3d(cls):
        return cls(SurfaceKind.FREE3D)

    @property
    def gaussian_curvature(self):
        """Intrinsic curvature ``K``."""
        if self.kind is SurfaceKind.SPHERE:
            return 1.0 / self.radius**2
        return 0.0

    @property
    def mean_curvature(self):
        """Extrinsic curvature ``H``."""
        if self.kind is SurfaceKind.SPHERE:
            return 1.0 / self.radius
        return 0.0

    # short aliases matching the usual symbols
    K = gaussian_curvature
    H = mean_curvature


@dataclass(frozen=True)
class OpticalParams:
    """Free-space wavenumber, guide index and perpendicular momentum."""

    k0: float = K0
    n0: float = 1.0
    k_perp: float = 0.0

    def __post_init__(self):
        if not self.k0 > 0:
            raise DomainError(f"k0 must be positive, got {self.k0!r}")
        if not self.n0 >= 1:
            raise DomainError(f"n0 must be >= 1, got {self.n0!r}")
        if not 0 <= self.k_perp < self.k0 * self.n0:
            raise DomainError(
                f"k_perp must satisfy 0 <= k_perp < k0*n0 = {self.k0 * self.n0:g}, "
                f"got {self.k_perp!r}"
            )

    @classmethod
    def from_fraction(cls, k_perp_frac, n0=1.0, k0=K0):
        """Build from ``k_perp`` given as a fraction of ``k0 * n0``."""
        return cls(k0=k0, n0=n0, k_perp=k_perp_frac * k0 * n0)


def effective_wavenumber(optics, surface):
    """In-surface wavenumber ``sqrt(k0^2 n0^2 - k_perp^2 + K - 3 H^2)``.

    On a sphere patch the curvature term is ``-2 / R^2``. For the ``FREE3D``
    baseline the bulk wavenumber ``k0 * n0`` is returned and ``k_perp`` is
    ignored.

    Raises
    ------
    EvanescentError
        If the squared effective wavenumber is not positive.
    """
    bulk = optics.k0 * optics.n0
    if surface.kind is SurfaceKind.FREE3D:
        return bulk
    k2 = (
        bulk**2
        - optics.k_perp**2
        + surface.gaussian_curvature
        - 3.0 * surface.mean_curvature**2
    )
    if k2 <= 0:
        raise EvanescentError(
            f"k_eff^2 = {k2:.6g} <= 0: guided mode is evanescent for this "
            "curvature and perpendicular momentum"
        )
    return math.sqrt(k2)


@dataclass(frozen=True, eq=False)
class EmitterArray:
    """Emitter positions on a surface; dipoles are implicitly surface-normal.

    ``positions`` holds 2D Cartesian coordinates on a plane, (colatitude,
    azimuth) pairs on a sphere patch, and 3D Cartesian coordinates in free
    space.
    """

    surface: SurfaceDescriptor
    positions: np.ndarray = field(repr=False)

    def __post_init__(self):
        pos = np.array(self.positions, dtype=float)
        width = 3 if self.surface.kind is SurfaceKind.FREE3D else 2
        if pos.ndim != 2 or pos.shape[1] != width:
            raise GeometryError(
                f"{self.surface.kind.value} positions must have shape (N, {width}), "
                f"got {pos.shape}"
            )
        if pos.shape[0] < 2:
            raise GeometryError("an emitter array needs at least two emitters")
        if not np.all(np.isfinite(pos)):
            raise GeometryError("emitter positions must be finite")
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        d = distance_matrix(self)
        off = d[~np.eye(len(pos), dtype=bool)]
        if np.any(off <= 0):
            raise GeometryError("emitter positions must be distinct")
        if self.surface.kind is SurfaceKind.SPHERE:
            widest = float(np.max(d)) / self.surface.radius
            if widest >= THETA_MAX:
                raise GeometryError(
                    f"largest central angle {math.degrees(widest):.2f} deg exceeds the "
                    f"{ANTIPODE_DEG:g} deg antipode exclusion bound"
                )

    @property
    def n(self):
        return self.positions.shape[0]

    def __len__(self):
        return self.n


def _ring_xy(n, spacing):
    if int(n) != n or n < 2:
        raise GeometryError(f"ring needs an integer N >= 2, got {n!r}")
    if not spacing > 0:
        raise GeometryError(f"spacing must be positive, got {spacing!r}")
    n = int(n)
    r_ring = n * spacing / (2.0 * math.pi)
    phi = 2.0 * math.pi * np.arange(n) / n
    return r_ring * np.cos(phi), r_ring * np.sin(phi)


def ring_on_plane(n, spacing):
    """``n`` emitters on a planar circle of circumference ``n * spacing``.

    The arc length between neighbours is ``spacing``; the straight-line
    distance for index offset ``m`` is ``2 r sin(pi m / n)`` with
    ``r = n * spacing / (2 pi)``.
    """
    x, y = _ring_xy(n, spacing)
    return EmitterArray(SurfaceDescriptor.plane(), np.column_stack([x, y]))


def ring_in_free_space(n, spacing):
    """Same ring as :func:`ring_on_plane`, embedded in the ``z = 0`` plane of
    free space with dipoles along ``z``."""
    x, y = _ring_xy(n, spacing)
    return EmitterArray(SurfaceDescriptor.free3d(), np.column_stack([x, y, np.zeros_like(x)]))


def ring_on_sphere(n, spacing, radius):
    """``n`` emitters on a small circle of a sphere patch around the pole.

    The common colatitude ``theta_c`` is chosen so that neighbouring
    emitters are one ``spacing`` apart along the great circle joining them:
    ``sin(theta_c) = sin(spacing / 2R) / sin(pi / n)``.

    Raises
    ------
    GeometryError
        If no such small circle exists or the ring reaches into the
        antipode exclusion zone.
    """
    if int(n) != n or n < 2:
        raise GeometryError(f"ring needs an integer N >= 2, got {n!r}")
    if not spacing > 0:
        raise GeometryError(f"spacing must be positive, got {spacing!r}")
    surface = SurfaceDescriptor.sphere(radius)
    n = int(n)
    s = math.sin(spacing / (2.0 * radius)) / math.sin(math.pi / n)
    if spacing / radius >= math.pi or s > 1.0:
        raise GeometryError(
            f"a ring of {n} emitters with arc spacing {spacing:g} does not fit on "
            f"a sphere of radius {radius:g}"
        )
    theta_c = math.asin(s)
    phi = 2.0 * math.pi * np.arange(n) / n
    return EmitterArray(surface, np.column_stack([np.full(n, theta_c), phi]))


def _unit_vectors(colat_az):
    th, ph = colat_az[:, 0], colat_az[:, 1]
    return np.column_stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])


def central_angles(array):
    """Pairwise central angles (radians) for an array on a sphere patch."""
    if array.surface.kind is not SurfaceKind.SPHERE:
        raise GeometryError("central angles are only defined on a sphere patch")
    u = _unit_vectors(array.positions)
    cross = np.linalg.norm(np.cross(u[:, None, :], u[None, :, :]), axis=-1)
    dot = np.einsum("ik,jk->ij", u, u)
    ang = np.arctan2(cross, dot)
    np.fill_diagonal(ang, 0.0)
    return 0.5 * (ang + ang.T)


def distance_matrix(array):
    """Symmetric matrix of geodesic separations.

    Euclidean on the plane and in free space, arc length ``R * alpha`` on a
    sphere patch. The diagonal is exactly zero.
    """
    if array.surface.kind is SurfaceKind.SPHERE:
        return array.surface.radius * central_angles(array)
    p = array.positions
    d = np.linalg.norm(p[:, None, :] - p[None, :, :], axis=-1)
    np.fill_diagonal(d, 0.0)
    return 0.5 * (d + d.T)
