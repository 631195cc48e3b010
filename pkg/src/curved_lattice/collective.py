"""Interaction matrix and collective spectrum of a normal-dipole array.

Everything is expressed in units of the single-emitter decay rate. The
coupling between emitters ``i != j`` is the surface (or free-space) Green
function divided by ``2 Im G`` at coincidence, and the diagonal is ``i/2``.
An eigenvalue ``lam`` of that matrix then carries the collective shift
``Re lam`` and decay rate ``2 Im lam``.
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import NumericalError
from .greens import coincidence_im, green_for_surface
from .surface import distance_matrix, effective_wavenumber

__all__ = [
    "PASSIVITY_TOL",
    "Radiance",
    "Mode",
    "CollectiveSpectrum",
    "build_matrix",
    "eigenvalues",
    "spectrum",
    "match_modes",
]

#: Decay rates down to this (negative) value are treated as round-off.
PASSIVITY_TOL = -1e-10


class Radiance(enum.Enum):
    SUPERRADIANT = "superradiant"
    SUBRADIANT = "subradiant"


@dataclass(frozen=True)
class Mode:
    shift: float
    gamma: float

    @property
    def classification(self):
        return Radiance.SUPERRADIANT if self.gamma > 1.0 else Radiance.SUBRADIANT


@dataclass(frozen=True, eq=False)
class CollectiveSpectrum:
    """Collective modes sorted by descending decay rate.

    ``eigenvalues`` keeps the raw complex eigenvalues in the same order as
    ``modes``.
    """

    eigenvalues: np.ndarray
    modes: tuple

    @property
    def shifts(self):
        return np.array([m.shift for m in self.modes])

    @property
    def gammas(self):
        return np.array([m.gamma for m in self.modes])

    def __len__(self):
        return len(self.modes)


def build_matrix(array, optics):
    """Normalized ``N x N`` interaction matrix for an emitter array.

    Complex symmetric (not Hermitian), with diagonal exactly ``i/2``.
    """
    surface = array.surface
    k = effective_wavenumber(optics, surface)
    green = green_for_surface(surface, k)
    scale = 1.0 / (2.0 * coincidence_im(surface.kind, k))
    d = distance_matrix(array)
    n = array.n
    m = np.empty((n, n), dtype=complex)
    np.fill_diagonal(m, 0.5j)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = m[j, i] = green(d[i, j]) * scale
    return m


def eigenvalues(m, vectors=False):
    """Eigenvalues of a dense complex matrix, optionally with right eigenvectors.

    LAPACK's Hessenberg reduction plus shifted QR (``zgeev``) does the work;
    the order is whatever it returns, which is deterministic for a fixed
    input.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
        raise ValueError(f"need a square matrix with N >= 2, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericalError("interaction matrix has non-finite entries")
    try:
        if vectors:
            return np.linalg.eig(m)
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"eigenvalue iteration failed for {m.shape[0]}x{m.shape[0]} matrix "
            f"(norm {np.linalg.norm(m):.3e}): {exc}"
        ) from exc


def _to_spectrum(lam):
    gamma = 2.0 * lam.imag
    worst = float(gamma.min())
    if worst < PASSIVITY_TOL:
        raise NumericalError(
            f"collective decay rate {worst:.3e} < 0: the coupling kernel is not "
            "passive for these parameters"
        )
    gamma = np.maximum(gamma, 0.0)
    order = np.lexsort((lam.real, -gamma))
    modes = tuple(Mode(float(lam[i].real), float(gamma[i])) for i in order)
    return CollectiveSpectrum(lam[order], modes)


def spectrum(array, optics):
    """Collective shifts and decay rates, sorted by descending decay.

    Raises
    ------
    NumericalError
        If any decay rate is negative beyond :data:`PASSIVITY_TOL`.
    """
    return _to_spectrum(eigenvalues(build_matrix(array, optics)))


def match_modes(previous, current):
    """Pair eigenvalues between adjacent sweep points.

    Returns ``perm`` such that ``current[perm[i]]`` continues
    ``previous[i]``. Pairs minimize the total distance in the complex plane;
    the shift difference enters with a tiny weight so that exact ties go to
    the closer shift.
    """
    previous = np.asarray(previous)
    current = np.asarray(current)
    if previous.shape != current.shape:
        raise ValueError("mode tracking needs equally many eigenvalues at both points")
    cost = np.abs(previous[:, None] - current[None, :])
    cost = cost + 1e-9 * np.abs(previous.real[:, None] - current.real[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(len(previous), dtype=int)
    perm[rows] = cols
    return perm
