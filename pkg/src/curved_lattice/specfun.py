"""Scalar special functions used by the surface Green functions.

Bessel J0, Y0 and the Hankel function H0^(1) on the positive real axis, the
Gauss hypergeometric series with ``c = 1``, and Ferrers (on-the-cut) Legendre
functions ``P_nu`` and ``Q_nu`` of real, non-negative degree together with
their first derivatives.

Everything here is a pure function of its arguments.
"""

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "SeriesControl",
    "DEFAULT_CONTROL",
    "ANTIPODE_DEG",
    "Z_MAX",
    "BESSEL_CROSSOVER",
    "EULER_GAMMA",
    "bessel_j0",
    "bessel_y0",
    "hankel1_0",
    "digamma",
    "hyp2f1_unit_c",
    "legendre_p",
    "legendre_q",
    "legendre_p_prime",
    "legendre_q_prime",
    "legendre_p_angle",
    "legendre_q_angle",
    "degree_from_wavenumber",
]

EULER_GAMMA = 0.57721566490153286060651209

#: Largest central angle (degrees) at which Legendre series are evaluated.
ANTIPODE_DEG = 160.0
#: Series-argument bound equivalent to ``ANTIPODE_DEG``: ``(1 - cos 160deg) / 2``.
Z_MAX = math.sin(math.radians(ANTIPODE_DEG / 2.0)) ** 2

#: Ascending series at or below this argument, Hankel asymptotics above it.
BESSEL_CROSSOVER = 12.0

# Above this value of nu * sqrt((1 - x) / 2) Legendre functions are built
# by degree recurrence instead of the hypergeometric series.
RECURRENCE_THRESHOLD = 6.0

# Degrees within this distance of an integer take the integer path in Q.
INTEGER_SNAP = 1e-6

# Largest tolerated ratio between the biggest series term and the result
# scale, i.e. about seven lost digits.
_CANCELLATION_LIMIT = 1e7

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class SeriesControl:
    """Truncation controls for the power series in this module."""

    max_terms: int = 10000
    rel_tol: float = 1e-12

    def __post_init__(self):
        if int(self.max_terms) != self.max_terms or self.max_terms < 50:
            raise ValueError("max_terms must be an integer >= 50")
        if not 0.0 < self.rel_tol <= 1e-3:
            raise ValueError("rel_tol must lie in (0, 1e-3]")


DEFAULT_CONTROL = SeriesControl()


# ---------------------------------------------------------------------------
# Bessel functions of order zero


def _j0_series(x):
    q = -0.25 * x * x
    term = 1.0
    terms = [term]
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        terms.append(term)
        if abs(term) < _EPS * 1e-3:
            break
    return math.fsum(terms)


def _y0_series(x):
    q = -0.25 * x * x
    term = 1.0
    harmonic = 0.0
    terms = []
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        harmonic += 1.0 / k
        # (-1)^(k+1) H_k (x^2/4)^k / (k!)^2 == -H_k * term
        terms.append(-harmonic * term)
        if abs(term) * harmonic < _EPS * 1e-3:
            break
    tail = math.fsum(terms)
    return (2.0 / math.pi) * ((math.log(0.5 * x) + EULER_GAMMA) * _j0_series(x) + tail)


def _hankel_pq(x):
    """Optimally truncated asymptotic P(x), Q(x) for order zero."""
    p_terms = [1.0]
    q_terms = []
    coef = 1.0
    prev = math.inf
    for k in range(1, 200):
        # a_k(0) / x^k with a_k = prod (2j-1)^2 / (k! 8^k)
        coef *= (2 * k - 1) ** 2 / (8.0 * k * x)
        if coef >= prev or coef < _EPS * 1e-3:
            break
        prev = coef
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            # odd-order coefficients of order zero are negative
            q_terms.append(-sign * coef)
        else:
            p_terms.append(sign * coef)
    return math.fsum(p_terms), math.fsum(q_terms)


def _j0_asymptotic(x):
    p, q = _hankel_pq(x)
    chi = x - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def _y0_asymptotic(x):
    p, q = _hankel_pq(x)
    chi = x - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.sin(chi) + q * math.cos(chi))


def bessel_j0(x):
    """Bessel function of the first kind, order zero, for ``x >= 0``.

    Uses the ascending series up to ``BESSEL_CROSSOVER`` and the Hankel
    asymptotic expansion beyond it. Both branches agree to better than
    1e-9 at the crossover.
    """
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"bessel_j0 needs finite x >= 0, got {x!r}")
    if x <= BESSEL_CROSSOVER:
        return _j0_series(x)
    return _j0_asymptotic(x)


def bessel_y0(x):
    """Bessel function of the second kind, order zero, for ``x > 0``."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"bessel_y0 needs finite x > 0, got {x!r}")
    if x <= BESSEL_CROSSOVER:
        return _y0_series(x)
    return _y0_asymptotic(x)


def hankel1_0(x):
    """Hankel function of the first kind ``J0(x) + i Y0(x)`` for ``x > 0``."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"hankel1_0 needs finite x > 0, got {x!r}")
    if x <= BESSEL_CROSSOVER:
        return complex(_j0_series(x), _y0_series(x))
    return complex(_j0_asymptotic(x), _y0_asymptotic(x))


def digamma(x):
    """Digamma function for real ``x > 0``."""
    x = float(x)
    if x <= 0.0:
        raise DomainError("digamma is only provided for x > 0")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    # Bernoulli-number asymptotic tail, accurate to ~1e-17 for x >= 10
    series = inv2 * (
        1.0 / 12
        - inv2 * (1.0 / 120
                  - inv2 * (1.0 / 252
                            - inv2 * (1.0 / 240
                                      - inv2 * (1.0 / 132
                                                - inv2 * (691.0 / 32760 - inv2 / 12.0)))))
    )
    return acc + math.log(x) - 0.5 / x - series


# ---------------------------------------------------------------------------
# Hypergeometric series with c = 1


def _finished(next_term, ratio, total, biggest, control):
    """Tail test for a series whose term ratio is bounded by ``ratio < 1``."""
    if ratio >= 1.0:
        return False
    tail = 2.0 * abs(next_term) / (1.0 - ratio)
    return tail <= max(control.rel_tol * abs(total), _EPS * biggest)


def _check_cancellation(biggest, total, n, what):
    if biggest > _CANCELLATION_LIMIT * max(abs(total), 1.0):
        raise ConvergenceError(
            f"{what}: largest term {biggest:.3e} swamps the result "
            f"{total:.3e}; degree too large for this argument",
            n,
        )


def _hyp_series(a, b, z, control, derivative=False, legendre=False):
    """Sum ``F(a, b; 1; z)`` or its z-derivative term by term.

    With ``legendre=True`` (``a = -nu``, ``b = nu + 1``) the coefficient ratio
    magnitude decreases while ``k < nu`` and stays below one afterwards, so
    the tail bound may be applied as soon as the ratio drops below one.
    """
    coef = 1.0  # (a)_k (b)_k / (k!)^2 * z^k
    terms = [0.0 if derivative else 1.0]
    biggest = 1.0
    total = terms[0]
    for k in range(control.max_terms):
        step = (a + k) * (b + k) / ((k + 1.0) ** 2)
        coef *= step * z
        if coef == 0.0:
            # terminating (polynomial) series
            return math.fsum(terms), biggest, k + 1
        term = (k + 1) * coef / z if derivative else coef
        terms.append(term)
        total += term
        biggest = max(biggest, abs(term))
        past_peak = legendre or k > abs(a) + abs(b)
        ratio = max(abs(step) * z, z) if past_peak else 1.0
        if _finished(term, ratio, total, biggest, control):
            return math.fsum(terms), biggest, k + 2
    raise ConvergenceError(
        f"hypergeometric series F({a}, {b}; 1; {z}) did not converge", control.max_terms
    )


def hyp2f1_unit_c(a, b, z, control=DEFAULT_CONTROL):
    """Gauss hypergeometric function ``2F1(a, b; 1; z)`` for ``0 <= z < 1``.

    Direct power series, truncated once a geometric bound on the remaining
    tail drops below ``control.rel_tol`` relative to the partial sum.

    Raises
    ------
    ConvergenceError
        If ``control.max_terms`` is exhausted or cancellation destroys more
        than about seven significant digits.
    """
    z = float(z)
    if not 0.0 <= z < 1.0:
        raise DomainError(f"hyp2f1_unit_c needs 0 <= z < 1, got {z!r}")
    if z == 0.0:
        return 1.0
    total, biggest, n = _hyp_series(float(a), float(b), z, control)
    _check_cancellation(biggest, total, n, "hyp2f1_unit_c")
    return total


# ---------------------------------------------------------------------------
# Legendre functions


def _check_degree(nu):
    nu = float(nu)
    if not math.isfinite(nu):
        raise DomainError(f"Legendre degree must be finite, got {nu!r}")
    if nu < 0.0:
        raise DomainError(f"only degrees nu >= 0 are supported, got {nu!r}")
    return nu


def _series_argument(x):
    x = float(x)
    if not -1.0 < x <= 1.0:
        raise DomainError(f"Legendre argument must lie in (-1, 1], got {x!r}")
    z = 0.5 * (1.0 - x)
    if z > Z_MAX:
        raise ConvergenceError(
            f"x = {x!r} lies inside the antipode exclusion zone "
            f"(central angle > {ANTIPODE_DEG:g} deg)",
            0,
        )
    return z


def _use_recurrence(nu, z):
    # The series' largest term grows like exp(2 nu sqrt(z)); past this point
    # upward recurrence in the degree is the more accurate route.
    return nu * math.sqrt(z) > RECURRENCE_THRESHOLD


def _recur_up(f0, f1, mu, steps, x):
    """Advance ``(f_mu, f_{mu+1})`` to ``(f_{mu+steps}, f_{mu+steps+1})``.

    Uses ``(m + 1) f_{m+1} = (2m + 1) x f_m - m f_{m-1}``, shared by the
    Ferrers functions of both kinds and stable on ``-1 < x < 1``.
    """
    for i in range(1, steps + 1):
        m = mu + i
        f0, f1 = f1, ((2.0 * m + 1.0) * x * f1 - m * f0) / (m + 1.0)
    return f0, f1


def _p_series(nu, z, control, derivative=False):
    total, biggest, n = _hyp_series(
        -nu, nu + 1.0, z, control, derivative=derivative, legendre=True
    )
    _check_cancellation(biggest, total, n, "legendre_p")
    return -0.5 * total if derivative else total


def _p_pair(nu, x, z, control):
    """``(P_nu, P_{nu+1})`` via recurrence from the fractional degree."""
    n = math.floor(nu)
    mu = nu - n
    f0 = _p_series(mu, z, control)
    f1 = _p_series(mu + 1.0, z, control)
    return _recur_up(f0, f1, mu, n, x)


def _p_value(nu, x, z, control):
    if z == 0.0:
        return 1.0
    if _use_recurrence(nu, z):
        return _p_pair(nu, x, z, control)[0]
    return _p_series(nu, z, control)


def legendre_p(nu, x, control=DEFAULT_CONTROL):
    """Ferrers function of the first kind ``P_nu(x)`` for real ``nu >= 0``.

    Evaluated as ``2F1(-nu, nu + 1; 1; (1 - x) / 2)``; the series terminates
    for integer degree, giving the Legendre polynomial exactly. When the
    series would cancel badly (large ``nu`` away from ``x = 1``) the value is
    obtained by upward recurrence from degrees ``nu - floor(nu)`` and one
    above it.

    Raises
    ------
    ConvergenceError
        If ``x`` lies inside the antipode exclusion zone.
    """
    nu = _check_degree(nu)
    z = _series_argument(x)
    return _p_value(nu, float(x), z, control)


def legendre_p_prime(nu, x, control=DEFAULT_CONTROL):
    """Derivative ``dP_nu/dx`` from the term-wise differentiated series."""
    nu = _check_degree(nu)
    z = _series_argument(x)
    x = float(x)
    if z == 0.0:
        return 0.5 * nu * (nu + 1.0)
    if _use_recurrence(nu, z):
        p0, p1 = _p_pair(nu, x, z, control)
        return (nu + 1.0) * (x * p0 - p1) / (1.0 - x * x)
    return _p_series(nu, z, control, derivative=True)


def _nearest_integer(nu):
    n = round(nu)
    if abs(nu - n) < INTEGER_SNAP:
        return int(n)
    return None


def _q_integer(n, x, z):
    """``(Q_n, Q_{n+1})`` by forward recurrence from Q0 = artanh x."""
    # artanh x == ln((1 - z) / z) / 2, accurate as x -> 1
    q0 = 0.5 * math.log((1.0 - z) / z)
    q1 = x * q0 - 1.0
    return _recur_up(q0, q1, 0.0, n, x)


def _q_log_series(nu, x, z, control, derivative=False):
    """Frobenius log-series of ``Q_nu`` about ``x = 1`` (non-integer ``nu``).

    Q_nu(x) = P_nu(x) [ln(2/(1-x))/2 - gamma - psi(nu+1)]
              - 1/2 sum_k t_k w_k z^k,
    t_k = (-nu)_k (nu+1)_k / (k!)^2,
    w_k = sum_{j<k} [1/(j-nu) + 1/(j+nu+1) - 2/(j+1)].
    """
    coef = 1.0
    weight = 0.0
    terms = []
    total = 0.0
    biggest = 1.0
    a, b = -nu, nu + 1.0
    for k in range(control.max_terms):
        step = (a + k) * (b + k) / ((k + 1.0) ** 2)
        coef *= step * z
        weight += 1.0 / (k - nu) + 1.0 / (k + nu + 1.0) - 2.0 / (k + 1.0)
        term = coef * weight
        if derivative:
            term *= (k + 1) / z
        terms.append(term)
        total += term
        biggest = max(biggest, abs(term))
        if _finished(term, max(abs(step) * z, z), total, biggest, control):
            break
    else:
        raise ConvergenceError(
            f"Q_nu log-series at nu={nu}, x={x} did not converge", control.max_terms
        )
    series = math.fsum(terms)
    _check_cancellation(biggest, series, len(terms), "legendre_q")
    # ln(2 / (1 - x)) == -ln z
    log_part = -0.5 * math.log(z) - EULER_GAMMA - digamma(nu + 1.0)
    if derivative:
        p = _p_series(nu, z, control)
        dp = _p_series(nu, z, control, derivative=True)
        # d/dx = -1/2 d/dz on the series part
        return dp * log_part + p / (4.0 * z) + 0.25 * series
    return _p_series(nu, z, control) * log_part - 0.5 * series


def _q_direct(nu, x, z, control, derivative=False):
    """Non-integer ``Q_nu`` (or its derivative) without degree recurrence."""
    if x > 0.0:
        return _q_log_series(nu, x, z, control, derivative)
    s, c = math.sin(math.pi * nu), math.cos(math.pi * nu)
    zp, zm = z, 1.0 - z
    if derivative:
        inner = c * _p_series(nu, zp, control, True) + _p_series(nu, zm, control, True)
    else:
        inner = c * _p_series(nu, zp, control) - _p_series(nu, zm, control)
    return 0.5 * math.pi / s * inner


def _q_pair(nu, x, z, control):
    n = math.floor(nu)
    mu = nu - n
    f0 = _q_direct(mu, x, z, control)
    f1 = _q_direct(mu + 1.0, x, z, control)
    return _recur_up(f0, f1, mu, n, x)


def _q_value(nu, x, z, control):
    n = _nearest_integer(nu)
    if n is not None:
        return _q_integer(n, x, z)[0]
    if _use_recurrence(nu, z):
        return _q_pair(nu, x, z, control)[0]
    return _q_direct(nu, x, z, control)


def _check_q_argument(x):
    x = float(x)
    if not -1.0 < x < 1.0:
        raise DomainError(f"Q_nu(x) is singular at x = +-1 and undefined beyond; got {x!r}")
    return x


def legendre_q(nu, x, control=DEFAULT_CONTROL):
    """Ferrers function of the second kind ``Q_nu(x)`` for ``-1 < x < 1``.

    Integer degrees (and degrees within ``INTEGER_SNAP`` of one) use the
    three-term recurrence from ``Q0 = artanh x``. Otherwise the connection
    formula

        Q_nu(x) = pi / (2 sin(nu pi)) * [cos(nu pi) P_nu(x) - P_nu(-x)]

    is used for ``x <= 0``, and the log-series about ``x = 1`` for ``x > 0``
    where ``P_nu(-x)`` would need a slowly converging series. Large degrees
    away from ``x = 1`` go through upward recurrence as in ``legendre_p``.
    """
    nu = _check_degree(nu)
    x = _check_q_argument(x)
    z = _series_argument(x)
    return _q_value(nu, x, z, control)


def legendre_q_prime(nu, x, control=DEFAULT_CONTROL):
    """Derivative ``dQ_nu/dx``, following the same branches as ``legendre_q``."""
    nu = _check_degree(nu)
    x = _check_q_argument(x)
    z = _series_argument(x)
    n = _nearest_integer(nu)
    if n is not None:
        if n == 0:
            return 1.0 / (1.0 - x * x)
        q0, q1 = _q_integer(n, x, z)
        return (n + 1.0) * (x * q0 - q1) / (1.0 - x * x)
    if _use_recurrence(nu, z):
        q0, q1 = _q_pair(nu, x, z, control)
        return (nu + 1.0) * (x * q0 - q1) / (1.0 - x * x)
    return _q_direct(nu, x, z, control, derivative=True)


def _check_angle(theta):
    theta = float(theta)
    if not 0.0 < theta < math.pi:
        raise DomainError(f"central angle must lie in (0, pi), got {theta!r}")
    half = math.sin(0.5 * theta) ** 2
    if half > Z_MAX:
        raise ConvergenceError(
            f"central angle {math.degrees(theta):.4g} deg lies inside the antipode "
            f"exclusion zone (> {ANTIPODE_DEG:g} deg)",
            0,
        )
    return math.cos(theta), half


def legendre_p_angle(nu, theta, control=DEFAULT_CONTROL):
    """``P_nu(cos theta)`` with the series argument formed as ``sin^2(theta/2)``.

    Equivalent to ``legendre_p(nu, cos(theta))`` but keeps full relative
    accuracy for very small central angles.
    """
    nu = _check_degree(nu)
    x, z = _check_angle(theta)
    return _p_value(nu, x, z, control)


def legendre_q_angle(nu, theta, control=DEFAULT_CONTROL):
    """``Q_nu(cos theta)``, accurate for very small central angles."""
    nu = _check_degree(nu)
    x, z = _check_angle(theta)
    return _q_value(nu, x, z, control)


def degree_from_wavenumber(k_eff, radius):
    """Non-negative root ``nu`` of ``nu (nu + 1) = (k_eff R)^2``."""
    kr2 = (float(k_eff) * float(radius)) ** 2
    if not math.isfinite(kr2):
        raise DomainError("k_eff * R must be finite")
    # (sqrt(1 + 4y) - 1) / 2 == 2y / (sqrt(1 + 4y) + 1), stable for small y
    return 2.0 * kr2 / (math.sqrt(1.0 + 4.0 * kr2) + 1.0)
