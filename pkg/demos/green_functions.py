"""
Green functions on a plane and on a sphere
==========================================

Tabulates the open (radiating) and closed (standing-wave) sphere Green
functions against central angle, and shows the open one collapsing onto
the planar Hankel form as the radius grows at fixed arc length.

Run with ``python3 demos/green_functions.py``.
"""

import math

import numpy as np

from curved_lattice import (
    OpticalParams,
    SurfaceDescriptor,
    effective_wavenumber,
    green_plane,
    green_sphere_closed,
    green_sphere_open,
)

# A sphere one wavelength in radius, no transverse momentum.
radius = 1.0
sphere = SurfaceDescriptor.sphere(radius)
k = effective_wavenumber(OpticalParams(), sphere)
print(f"k_eff on the R={radius} sphere: {k:.6f} (flat value {2 * math.pi:.6f})\n")

# The two sphere families side by side. The open form grows toward the
# antipode; the closed one stays real and finite there.
print(f"{'deg':>5} {'Re G_open':>12} {'Im G_open':>12} {'G_closed':>12}")
degrees = np.arange(20, 160, 10)
for d in degrees:
    t = math.radians(d)
    g_open = green_sphere_open(t, radius, k)
    g_closed = green_sphere_closed(t, radius, k)
    print(f"{d:5.0f} {g_open.real:12.6f} {g_open.imag:12.6f} {g_closed:12.6f}")
print(f"{180:5d} {'(excluded)':>25} {green_sphere_closed(math.pi, radius, k):12.6f}\n")

# Plane limit: hold k*s fixed and let the radius grow.
ks = 2.0
ref = green_plane(ks / (2 * math.pi), 2 * math.pi)
print(f"plane value at k s = {ks}: {ref:.8f}")
for r in (2.0, 10.0, 100.0, 1000.0):
    g = green_sphere_open(ks / (2 * math.pi) / r, r, 2 * math.pi)
    print(f"  R = {r:7.1f}: relative deviation {abs(g - ref) / abs(ref):.2e}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    pass
else:
    fine = np.radians(np.linspace(21, 159, 300))
    plt.plot(np.degrees(fine), [abs(green_sphere_open(t, radius, k)) for t in fine], label="open")
    plt.plot(np.degrees(fine), [abs(green_sphere_closed(t, radius, k)) for t in fine], label="closed")
    plt.xlabel("central angle (deg)")
    plt.ylabel("|G|")
    plt.legend()
    plt.savefig("green_functions.png", dpi=120)
    print("\nsaved green_functions.png")
