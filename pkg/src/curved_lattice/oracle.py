"""Independent reference computations used to certify the production code.

Nothing in this module imports :mod:`specfun`, :mod:`greens` or
:mod:`collective`. The series oracle works in 50-digit decimal arithmetic
from the standard library; the circulant oracle is a direct discrete Fourier
sum; the Helmholtz checker applies central differences to whatever Green
function it is handed.
"""

import math
from decimal import Decimal, localcontext

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "circulant_eigenvalues",
    "helmholtz_residual",
    "highprec_series",
    "ORACLE_DIGITS",
]

ORACLE_DIGITS = 50

_PI = Decimal("3.14159265358979323846264338327950288419716939937510582097494459")
_GAMMA = Decimal("0.57721566490153286060651209008240243104215933593992359880576723")
_MAX_TERMS = 20000


# ---------------------------------------------------------------------------
# circulant matrices


def circulant_eigenvalues(row):
    """Eigenvalues of the circulant matrix with first row ``row``.

    ``lam_k = sum_m row[m] exp(-2 pi i k m / N)`` by direct summation.
    """
    row = np.asarray(row, dtype=complex)
    n = row.shape[0]
    if row.ndim != 1 or n < 2:
        raise ValueError("circulant row must be a vector of length >= 2")
    k = np.arange(n)
    phase = np.exp(-2j * np.pi * np.outer(k, k) / n)
    return phase @ row


# ---------------------------------------------------------------------------
# Helmholtz residual by central differences


def helmholtz_residual(green, surface, k_eff, window, h, samples=41):
    """Largest relative residual of ``(Delta + k_eff^2) G`` over a window.

    Parameters
    ----------
    green : callable
        ``G(separation)``: a distance on the plane, a central angle in
        radians on the sphere.
    surface : SurfaceDescriptor
        Plane or sphere patch; fixes the radial Laplace-Beltrami form
        ``G'' + G'/r`` or ``(G'' + cot(theta) G') / R^2``.
    k_eff : float
        Wavenumber of the Helmholtz operator.
    window : (float, float)
        Separation interval, clear of the source and the antipode.
    h : float
        Finite-difference step, in the same units as the separation.

    Returns
    -------
    float
        ``max |(Delta + k^2) G| / (k^2 |G|)``; the absolute ``max |Delta G|``
        when ``k_eff == 0``.
    """
    kind = surface.kind.value
    lo, hi = (float(w) for w in window)
    if not 0.0 < lo < hi:
        raise DomainError(f"window must satisfy 0 < lo < hi, got {window!r}")
    if not h > 0 or lo - h <= 0.0:
        raise DomainError("step must be positive and keep the stencil off the source")
    scale = surface.radius if kind == "sphere" else 1.0
    if k_eff > 0 and h * scale > (2.0 * math.pi / k_eff) / 100.0:
        raise DomainError("step must not exceed a hundredth of the effective wavelength")
    if kind == "sphere" and hi + h >= math.radians(160.0):
        raise DomainError("window reaches into the antipode exclusion zone")
    if kind not in ("plane", "sphere"):
        raise DomainError(f"no surface Laplacian for {kind!r}")

    worst = 0.0
    for s in np.linspace(lo, hi, samples):
        g0 = green(s)
        gp = green(s + h)
        gm = green(s - h)
        d2 = (gp - 2.0 * g0 + gm) / (h * h)
        d1 = (gp - gm) / (2.0 * h)
        if kind == "plane":
            lap = d2 + d1 / s
        else:
            lap = (d2 + d1 / math.tan(s)) / scale**2
        if k_eff > 0:
            res = abs(lap + k_eff**2 * g0) / (k_eff**2 * abs(g0))
        else:
            res = abs(lap)
        worst = max(worst, res)
    return worst


# ---------------------------------------------------------------------------
# extended-precision series


def _dec(x):
    return Decimal(repr(float(x))) if not isinstance(x, Decimal) else x


def _sum_until(terms_iter, tiny):
    total = Decimal(0)
    n = 0
    for n, term in enumerate(terms_iter, 1):
        total += term
        if n > 5 and abs(term) < tiny:
            return total, abs(term)
        if n >= _MAX_TERMS:
            break
    raise ConvergenceError("oracle series did not converge", n)


def _j0(x):
    q = -(x * x) / 4

    def gen():
        term = Decimal(1)
        k = 0
        yield term
        while True:
            k += 1
            term = term * q / (k * k)
            yield term

    return _sum_until(gen(), Decimal(10) ** -(ORACLE_DIGITS - 5))


def _y0(x):
    q = -(x * x) / 4

    def gen():
        term = Decimal(1)
        harmonic = Decimal(0)
        k = 0
        while True:
            k += 1
            term = term * q / (k * k)
            harmonic += Decimal(1) / k
            yield -harmonic * term

    tail, bound = _sum_until(gen(), Decimal(10) ** -(ORACLE_DIGITS - 5))
    j0, jb = _j0(x)
    value = (2 / _PI) * (((x / 2).ln() + _GAMMA) * j0 + tail)
    return value, bound + jb


def _hyp(a, b, z):
    """``2F1(a, b; 1; z)`` with a geometric bound on the remaining tail."""
    if z == 0:
        return Decimal(1), Decimal(0)
    total = Decimal(1)
    term = Decimal(1)
    tiny = Decimal(10) ** -(ORACLE_DIGITS - 8)
    for k in range(_MAX_TERMS):
        ratio = (a + k) * (b + k) / ((k + 1) ** 2)
        term = term * ratio * z
        total += term
        if term == 0:
            return total, Decimal(0)
        r = abs(ratio * z)
        if k > abs(a) + abs(b) and r < 1:
            bound = abs(term) * max(r, z) / (1 - max(r, z))
            if bound < tiny * max(abs(total), Decimal(1)):
                return total, bound
    raise ConvergenceError("oracle hypergeometric series did not converge", _MAX_TERMS)


def _sin_cos(x):
    """Taylor series for sin and cos after reduction to |x| <= pi."""
    two_pi = 2 * _PI
    x = x - two_pi * (x / two_pi).to_integral_value()
    s = Decimal(0)
    c = Decimal(0)
    term = Decimal(1)
    for k in range(0, 400):
        # term == x^k / k!
        if k % 4 == 0:
            c += term
        elif k % 4 == 1:
            s += term
        elif k % 4 == 2:
            c -= term
        else:
            s -= term
        term = term * x / (k + 1)
        if k > 10 and abs(term) < Decimal(10) ** -(ORACLE_DIGITS + 2):
            break
    return s, c


def _legendre_p(nu, x):
    return _hyp(-nu, nu + 1, (1 - x) / 2)


def _legendre_q(nu, x):
    n = nu.to_integral_value()
    if nu == n:
        q0 = ((1 + x) / (1 - x)).ln() / 2
        if n == 0:
            return q0, Decimal(0)
        prev, cur = q0, x * q0 - 1
        for m in range(1, int(n)):
            prev, cur = cur, ((2 * m + 1) * x * cur - m * prev) / (m + 1)
        return cur, Decimal(0)
    s, c = _sin_cos(nu * _PI)
    p_plus, b1 = _legendre_p(nu, x)
    p_minus, b2 = _legendre_p(nu, -x)
    factor = _PI / (2 * s)
    return factor * (c * p_plus - p_minus), abs(factor) * (b1 + b2)


def highprec_series(kind, x, **params):
    """Reference value and truncation bound from 50-digit direct summation.

    Parameters
    ----------
    kind : {"J0", "Y0", "2F1", "P", "Q"}
        Function to evaluate. ``2F1`` takes ``a`` and ``b`` (with ``c = 1``);
        ``P`` and ``Q`` take the degree ``nu``.
    x : float
        Argument (``z`` for ``2F1``).

    Returns
    -------
    (float, float)
        Value rounded to double precision, and a conservative bound on the
        truncation error of the series.
    """
    with localcontext() as ctx:
        ctx.prec = ORACLE_DIGITS
        xd = _dec(x)
        if kind == "J0":
            if xd < 0:
                raise DomainError("J0 oracle needs x >= 0")
            value, bound = _j0(xd)
        elif kind == "Y0":
            if xd <= 0:
                raise DomainError("Y0 oracle needs x > 0")
            value, bound = _y0(xd)
        elif kind == "2F1":
            if not 0 <= xd < 1:
                raise DomainError("2F1 oracle needs 0 <= z < 1")
            value, bound = _hyp(_dec(params["a"]), _dec(params["b"]), xd)
        elif kind == "P":
            if not -1 < xd <= 1:
                raise DomainError("P oracle needs -1 < x <= 1")
            value, bound = _legendre_p(_dec(params["nu"]), xd)
        elif kind == "Q":
            if not -1 < xd < 1:
                raise DomainError("Q oracle needs -1 < x < 1")
            value, bound = _legendre_q(_dec(params["nu"]), xd)
        else:
            raise ValueError(f"unknown oracle kind {kind!r}")
        # leave room for double rounding of the result itself
        return float(value), float(bound) + 1e-30
