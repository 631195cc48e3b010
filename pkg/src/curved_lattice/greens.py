"""Scalar surface Green functions and the free-space baseline.

All functions take a strictly positive separation. The divergent real part
at coincidence is never evaluated; the imaginary coincidence limit that sets
the single-emitter decay rate is exposed separately by
:func:`coincidence_im`.
"""

import cmath
import math

from .errors import DomainError
from .specfun import (
    DEFAULT_CONTROL,
    degree_from_wavenumber,
    hankel1_0,
    legendre_p_angle,
    legendre_q_angle,
)
from .surface import THETA_MAX, SurfaceKind

__all__ = [
    "SURFACE_COINCIDENCE_IM",
    "coincidence_im",
    "green_plane",
    "green_sphere_open",
    "green_sphere_closed",
    "green_free3d_zz",
    "green_for_surface",
]

#: ``lim Im G`` at zero separation for the plane and the open sphere patch.
SURFACE_COINCIDENCE_IM = 0.25


def coincidence_im(kind, k=None):
    """Imaginary part of the Green function at coincidence.

    ``1/4`` for the surface families; ``k / (6 pi)`` for free space, which
    needs the bulk wavenumber ``k``.
    """
    kind = SurfaceKind(kind)
    if kind is SurfaceKind.FREE3D:
        if k is None or not k > 0:
            raise DomainError("free-space coincidence limit needs a positive wavenumber")
        return k / (6.0 * math.pi)
    return SURFACE_COINCIDENCE_IM


def _positive(name, value):
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return value


def green_plane(r, k_eff):
    """Planar Green function ``(i/4) H0^(1)(k_eff r)``."""
    r = _positive("separation r", r)
    k_eff = _positive("k_eff", k_eff)
    return 0.25j * hankel1_0(k_eff * r)


def green_sphere_open(theta, radius, k_eff, theta_max=THETA_MAX, control=DEFAULT_CONTROL):
    """Radiating Green function on a locally spherical patch.

    ``Q_nu(cos theta) / (2 pi) + (i/4) P_nu(cos theta)`` with
    ``nu (nu + 1) = (k_eff R)^2``. It reduces to :func:`green_plane` at
    fixed arc length as ``R`` grows, and diverges toward the antipode, so
    central angles at or beyond ``theta_max`` are rejected.
    """
    theta = float(theta)
    if not 0.0 < theta < theta_max:
        raise DomainError(
            f"central angle {theta!r} rad outside (0, {theta_max:.6g}) for the open "
            "sphere Green function"
        )
    radius = _positive("radius", radius)
    k_eff = _positive("k_eff", k_eff)
    nu = degree_from_wavenumber(k_eff, radius)
    p = legendre_p_angle(nu, theta, control)
    q = legendre_q_angle(nu, theta, control)
    return complex(q / (2.0 * math.pi), 0.25 * p)


def green_sphere_closed(theta, radius, k_eff, control=DEFAULT_CONTROL):
    """Standing-wave Green function of the closed sphere, ``P_nu(-cos theta) / (2 pi)``.

    Real-valued and finite at the antipode. Near ``theta = 0`` the
    underlying series is outside its convergence zone and a
    :class:`~curved_lattice.errors.ConvergenceError` is raised.
    """
    theta = float(theta)
    if not 0.0 < theta <= math.pi:
        raise DomainError(f"central angle {theta!r} rad outside (0, pi]")
    radius = _positive("radius", radius)
    k_eff = _positive("k_eff", k_eff)
    nu = degree_from_wavenumber(k_eff, radius)
    if theta == math.pi:
        return 1.0 / (2.0 * math.pi)
    # P_nu(-cos theta) == P_nu(cos(pi - theta))
    return legendre_p_angle(nu, math.pi - theta, control) / (2.0 * math.pi)


def green_free3d_zz(r, k):
    """Free-space dyadic ``zz`` component for a separation normal to ``z``.

    ``exp(ikr) / (4 pi r) * (1 + (ikr - 1) / (kr)^2)``
    """
    r = _positive("separation r", r)
    k = _positive("k", k)
    kr = k * r
    g = cmath.exp(1j * kr) / (4.0 * math.pi * r) * (1.0 + (1j * kr - 1.0) / (kr * kr))
    if kr < 1e-2:
        # Im part cancels at O(1/kr); use j0(x) - j1(x)/x expanded in x
        x2 = kr * kr
        im = 2.0 / 3.0 - x2 * (2.0 / 15.0 - x2 * (1.0 / 140.0 - x2 / 5670.0))
        g = complex(g.real, k / (4.0 * math.pi) * im)
    return g


def green_for_surface(surface, k_eff):
    """Return ``G(separation)`` for a surface; separation is a geodesic length."""
    kind = surface.kind
    if kind is SurfaceKind.PLANE:
        return lambda s: green_plane(s, k_eff)
    if kind is SurfaceKind.SPHERE:
        radius = surface.radius
        return lambda s: green_sphere_open(s / radius, radius, k_eff)
    return lambda s: green_free3d_zz(s, k_eff)
