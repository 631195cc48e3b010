"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run standalone with ``python3 tests/test_acceptance.py`` or through pytest,
where the lines are also repeated in the terminal summary.
"""

import math
import tempfile
from pathlib import Path

import numpy as np
import pytest

from curved_lattice.cli import run
from curved_lattice.collective import build_matrix, eigenvalues, spectrum
from curved_lattice.config import parse_config, recipe
from curved_lattice.greens import (
    green_free3d_zz,
    green_plane,
    green_sphere_closed,
    green_sphere_open,
)
from curved_lattice.oracle import circulant_eigenvalues, helmholtz_residual, highprec_series
from curved_lattice.specfun import (
    bessel_j0,
    bessel_y0,
    legendre_p,
    legendre_p_prime,
    legendre_q,
    legendre_q_prime,
)
from curved_lattice.surface import (
    K0,
    OpticalParams,
    SurfaceDescriptor,
    effective_wavenumber,
    ring_in_free_space,
    ring_on_plane,
    ring_on_sphere,
)
from curved_lattice.sweep import run_sweep

RESULTS = []


def _report(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} -- {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _match_distance(a, b):
    from scipy.optimize import linear_sum_assignment

    cost = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    r, c = linear_sum_assignment(cost)
    return cost[r, c].max()


def check_special_functions():
    worst_spot = 0.0
    spots = [
        ("J0", 1.0, {}, lambda: bessel_j0(1.0)),
        ("Y0", 1.0, {}, lambda: bessel_y0(1.0)),
        ("P", 0.4, {"nu": 2.6}, lambda: legendre_p(2.6, 0.4)),
        ("P", 0.7, {"nu": 1.0}, lambda: legendre_p(1.0, 0.7)),
        ("Q", 0.3, {"nu": 1.5}, lambda: legendre_q(1.5, 0.3)),
        ("Q", 0.5, {"nu": 0.0}, lambda: legendre_q(0.0, 0.5)),
        ("Q", 0.5, {"nu": 1.0}, lambda: legendre_q(1.0, 0.5)),
    ]
    for kind, x, params, f in spots:
        ref, bound = highprec_series(kind, x, **params)
        worst_spot = max(worst_spot, abs(f() - ref) - bound)
    worst_w = 0.0
    for nu in (0.0, 0.3, 1.0, 1.7, 5.2):
        for x in (-0.8, -0.3, 0.0, 0.3, 0.8):
            w = legendre_p(nu, x) * legendre_q_prime(nu, x) - legendre_p_prime(nu, x) * legendre_q(nu, x)
            expected = 1 / (1 - x * x)
            worst_w = max(worst_w, abs(w - expected) / expected)
    ok = worst_spot < 1e-9 and worst_w < 1e-8
    return _report(1, "special-function certification", ok,
                   f"max spot error {worst_spot:.1e} (<1e-9), max Wronskian rel. error "
                   f"{worst_w:.1e} (<1e-8)")


def check_coincidence():
    sep = 1e-6
    errs = {
        "plane": abs(green_plane(sep, K0).imag / 0.25 - 1),
        "sphere": abs(green_sphere_open(sep, 1.0, K0).imag / 0.25 - 1),
        "free3d": abs(green_free3d_zz(sep, K0).imag / (K0 / (6 * math.pi)) - 1),
    }
    ok = max(errs.values()) < 1e-4
    detail = ", ".join(f"{k} {v:.1e}" for k, v in errs.items())
    return _report(2, "coincidence normalization", ok, f"relative errors {detail} (<1e-4)")


def check_plane_limit():
    ok = True
    finals = []
    for ks in (0.5, 1.0, 2.0, 5.0):
        ref = green_plane(ks / K0, K0)
        devs = [abs(green_sphere_open(ks / K0 / r, r, K0) - ref) / abs(ref)
                for r in (10.0, 100.0, 1000.0)]
        ok &= devs[0] > devs[1] > devs[2] and devs[2] < 1e-2
        finals.append(devs[2])
    return _report(3, "plane-limit convergence", ok,
                   f"monotone in R; deviation at R=1000: max {max(finals):.1e} (<1e-2)")


def check_helmholtz():
    plane = SurfaceDescriptor.plane()
    g_plane = lambda r: green_plane(r, K0)  # noqa: E731
    win_plane = (1 / K0, 10 / K0)
    sphere = SurfaceDescriptor.sphere(1.0)
    k_s = effective_wavenumber(OpticalParams(), sphere)
    g_sphere = lambda t: green_sphere_open(t, 1.0, k_s)  # noqa: E731
    win_sphere = (math.radians(20), math.radians(140))
    rp = [helmholtz_residual(g_plane, plane, K0, win_plane, h) for h in (1e-3, 5e-4)]
    rs = [helmholtz_residual(g_sphere, sphere, k_s, win_sphere, h) for h in (1e-3, 5e-4)]
    ratios = (rp[0] / rp[1], rs[0] / rs[1])
    ok = max(rp[0], rs[0]) < 1e-3 and all(abs(q / 4 - 1) < 0.2 for q in ratios)
    return _report(4, "Helmholtz residual", ok,
                   f"plane {rp[0]:.1e}, sphere {rs[0]:.1e} (<1e-3); halving h gives "
                   f"x{ratios[0]:.2f} and x{ratios[1]:.2f} (~4)")


def check_eigensolver():
    worst = 0.0
    worst_trace = 0.0
    for n in (2, 4, 8, 16):
        for arr in (ring_on_plane(n, 0.3), ring_on_sphere(n, 0.3, 4.0)):
            m = build_matrix(arr, OpticalParams())
            ref = circulant_eigenvalues(m[0])
            worst = max(worst, _match_distance(eigenvalues(m), ref) / np.abs(ref).max())
            g = spectrum(arr, OpticalParams()).gammas
            worst_trace = max(worst_trace, abs(g.sum() / n - 1))
    ok = worst < 1e-8 and worst_trace < 1e-8
    return _report(5, "eigensolver vs circulant DFT", ok,
                   f"max rel. eigenvalue mismatch {worst:.1e}, trace error {worst_trace:.1e} (<1e-8)")


def check_dicke():
    arr = ring_in_free_space(2, 1e-4 * math.pi / 2)  # separation 1e-4
    g = spectrum(arr, OpticalParams()).gammas
    ok = abs(g[0] - 2) < 1e-3 and abs(g[1]) < 1e-3
    return _report(6, "Dicke limit", ok, f"Gammas {g[0]:.6f}, {g[1]:.2e} (expect 2, 0)")


def check_ring_enhancement():
    free = spectrum(ring_in_free_space(8, 0.2), OpticalParams()).gammas.max()
    guide = spectrum(ring_on_plane(8, 0.2), OpticalParams.from_fraction(0.9)).gammas.max()
    ratio = guide / free
    ok = 2.0 <= free <= 4.0 and abs(ratio / 2 - 1) <= 0.3
    return _report(7, "ring enhancement in a planar guide", ok,
                   f"free-space max Gamma {free:.3f} (in [2,4]), guide {guide:.3f}, "
                   f"ratio {ratio:.2f} (2 +/- 30%)")


def check_kperp_transition():
    res = run_sweep(parse_config(recipe("fig3")), workers=1)
    crossing = set()
    for tid in range(8):
        _, g = res.track(tid)
        if np.any(np.diff(np.sign(g - 1.0)) != 0):
            crossing.add(tid)
    ok = len(crossing) > 0
    return _report(8, "superradiant/subradiant transition vs k_perp", ok,
                   f"{len(crossing)} of 8 tracked modes cross Gamma = 1")


def check_curvature():
    res = run_sweep(parse_config(recipe("fig4c")), workers=1)
    good = [r for r in res.rows if r.error is None]
    small, large = good[0], good[-1]
    max_drops = small.gammas.max() < large.gammas.max()
    min_rises = small.gammas.min() > large.gammas.min()
    opened = [abs(green_sphere_open(math.radians(d), 1.0, K0)) for d in (150, 155, 159)]
    closed = [abs(green_sphere_closed(math.radians(d), 1.0, K0)) for d in (150, 155, 159)]
    diverges = opened[0] < opened[1] < opened[2]
    bounded = max(closed) <= 1 / (2 * math.pi)
    ok = max_drops and min_rises and diverges and bounded
    return _report(
        9, "curvature suppression and antipode contrast", ok,
        f"R={small.param:g}: max/min Gamma {small.gammas.max():.4f}/{small.gammas.min():.2e}; "
        f"R={large.param:g}: {large.gammas.max():.4f}/{large.gammas.min():.2e} "
        f"(max falls: {max_drops}, min rises: {min_rises}); "
        f"|G_open| 150/155/159 deg = {opened[0]:.3f}/{opened[1]:.3f}/{opened[2]:.3f} "
        f"(rising: {diverges}), closed bounded: {bounded}",
    )


def check_determinism():
    with tempfile.TemporaryDirectory() as tmp:
        same = True
        for fmt in ("csv", "json"):
            a, b = Path(tmp, f"a.{fmt}"), Path(tmp, f"b.{fmt}")
            for p in (a, b):
                code = run(["sweep", "--recipe", "fig2b", "--format", fmt, "--out", str(p)])
                same &= code == 0
            same &= a.read_bytes() == b.read_bytes()
    cfg = parse_config(recipe("fig3"))
    parallel_ok = run_sweep(cfg, workers=1) == run_sweep(cfg, workers=4)
    ok = same and parallel_ok
    return _report(10, "determinism and I/O", ok,
                   f"byte-identical reruns: {same}; parallel == serial: {parallel_ok}")


CHECKS = [
    check_special_functions,
    check_coincidence,
    check_plane_limit,
    check_helmholtz,
    check_eigensolver,
    check_dicke,
    check_ring_enhancement,
    check_kperp_transition,
    check_curvature,
    check_determinism,
]


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i + 1:02d}" for i in range(len(CHECKS))])
def test_criterion(check):
    assert check()


if __name__ == "__main__":
    import sys

    passed = sum(bool(c()) for c in CHECKS)
    print(f"{passed}/{len(CHECKS)} criteria pass")
    sys.exit(0 if passed == len(CHECKS) else 1)
