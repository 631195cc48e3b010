"""Run configuration: JSON schema, validation, overrides and figure recipes."""

import copy
import json
import math
from dataclasses import dataclass

from .errors import ConfigError
from .surface import (
    EmitterArray,
    OpticalParams,
    SurfaceDescriptor,
    ring_in_free_space,
    ring_on_plane,
    ring_on_sphere,
)

__all__ = [
    "RunConfig",
    "Geometry",
    "Emitters",
    "Optics",
    "Sweep",
    "Output",
    "GreenRequest",
    "RECIPES",
    "DEFAULT_N",
    "recipe",
    "load_config",
    "parse_config",
    "config_to_dict",
    "build_system",
]

DEFAULT_N = 8

SWEEP_PARAMS = ("spacing", "k_perp_frac", "radius")


@dataclass(frozen=True)
class Geometry:
    kind: str
    radius: float | None = None

    def surface(self, radius=None):
        r = self.radius if radius is None else radius
        if self.kind == "plane":
            return SurfaceDescriptor.plane()
        if self.kind == "sphere":
            return SurfaceDescriptor.sphere(r)
        return SurfaceDescriptor.free3d()


@dataclass(frozen=True)
class Emitters:
    layout: str = "ring"
    n: int = DEFAULT_N
    spacing: float | None = None
    positions: tuple | None = None


@dataclass(frozen=True)
class Optics:
    n0: float = 1.0
    k_perp_frac: float = 0.0


@dataclass(frozen=True)
class Sweep:
    param: str
    start: float
    stop: float
    steps: int
    scale: str = "linear"
    outer: "Sweep | None" = None


@dataclass(frozen=True)
class Output:
    format: str = "csv"
    path: str | None = None
    precision: int = 12


@dataclass(frozen=True)
class GreenRequest:
    separations: tuple
    family: str = "both"


@dataclass(frozen=True)
class RunConfig:
    geometry: Geometry
    emitters: Emitters
    optics: Optics
    sweep: Sweep | None = None
    output: Output = Output()
    green: GreenRequest | None = None
    notes: tuple = ()


# ---------------------------------------------------------------------------
# parsing


def _num(block, key, default=None, required=False):
    if key not in block or block[key] is None:
        if required:
            raise ConfigError(f"missing required key {key!r}")
        return default
    value = block[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key!r} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{key!r} must be finite")
    return float(value)


def _int(block, key, default):
    value = block.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise ConfigError(f"{key!r} must be an integer, got {value!r}")
    return value


def _choice(block, key, options, default=None):
    value = block.get(key, default)
    if value not in options:
        raise ConfigError(f"{key!r} must be one of {', '.join(options)}; got {value!r}")
    return value


def _parse_sweep(block):
    if not isinstance(block, dict):
        raise ConfigError("sweep must be an object")
    param = _choice(block, "param", SWEEP_PARAMS)
    start = _num(block, "from", required=True)
    stop = _num(block, "to", required=True)
    steps = _int(block, "steps", None)
    scale = _choice(block, "scale", ("linear", "log"), "linear")
    if steps < 2:
        raise ConfigError("sweep.steps must be >= 2")
    if not start < stop:
        raise ConfigError("sweep.from must be smaller than sweep.to")
    if scale == "log" and start <= 0:
        raise ConfigError("log-scaled sweeps need a positive start")
    outer = _parse_sweep(block["outer"]) if block.get("outer") is not None else None
    if outer is not None:
        if outer.outer is not None:
            raise ConfigError("only one level of outer sweep is supported")
        if outer.param == param:
            raise ConfigError("outer and inner sweeps must vary different parameters")
    return Sweep(param, start, stop, steps, scale, outer)


def parse_config(data):
    """Validate a config mapping and return a :class:`RunConfig`.

    Keys starting with ``_`` are treated as comments and ignored.

    Raises
    ------
    ConfigError
        On any schema or consistency violation.
    """
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    geo = data.get("geometry") or {}
    kind = _choice(geo, "kind", ("plane", "sphere", "free3d"))
    radius = _num(geo, "radius")
    if kind == "sphere":
        if radius is None or radius <= 0:
            raise ConfigError("geometry.radius (> 0) is required for a sphere")
    elif radius is not None:
        raise ConfigError(f"geometry.radius is only valid for a sphere, not {kind!r}")
    geometry = Geometry(kind, radius)

    em = data.get("emitters") or {}
    layout = _choice(em, "layout", ("ring", "explicit"), "ring")
    if layout == "ring":
        n = _int(em, "n", DEFAULT_N)
        if n < 2:
            raise ConfigError("emitters.n must be >= 2")
        spacing = _num(em, "spacing", required=True)
        if spacing <= 0:
            raise ConfigError("emitters.spacing must be > 0")
        emitters = Emitters("ring", n, spacing)
    else:
        pos = em.get("positions")
        width = 3 if kind == "free3d" else 2
        if not isinstance(pos, list) or len(pos) < 2:
            raise ConfigError("explicit layout needs a list of at least two positions")
        try:
            positions = tuple(tuple(float(c) for c in p) for p in pos)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad emitter position: {exc}") from None
        if any(len(p) != width for p in positions):
            raise ConfigError(f"{kind} positions need {width} coordinates each")
        if "n" in em and _int(em, "n", None) != len(positions):
            raise ConfigError("emitters.n disagrees with the number of positions")
        emitters = Emitters("explicit", len(positions), None, positions)

    op = data.get("optics") or {}
    n0 = _num(op, "n0", 1.0)
    frac = _num(op, "k_perp_frac", 0.0)
    if n0 < 1:
        raise ConfigError("optics.n0 must be >= 1")
    if not 0 <= frac < 1:
        raise ConfigError("optics.k_perp_frac must lie in [0, 1)")
    optics = Optics(n0, frac)

    sweep = _parse_sweep(data["sweep"]) if data.get("sweep") is not None else None
    for sw in (sweep, sweep.outer if sweep else None):
        if sw is None:
            continue
        if sw.param == "radius" and kind != "sphere":
            raise ConfigError("only sphere geometries can sweep the radius")
        if sw.param == "spacing" and layout != "ring":
            raise ConfigError("spacing sweeps need a ring layout")
        if sw.param == "k_perp_frac" and not (0 <= sw.start and sw.stop < 1):
            raise ConfigError("k_perp_frac sweep must stay inside [0, 1)")
        if sw.param in ("spacing", "radius") and sw.start <= 0:
            raise ConfigError(f"{sw.param} sweep must stay positive")

    out = data.get("output") or {}
    fmt = _choice(out, "format", ("csv", "json"), "csv")
    path = out.get("path")
    if path is not None and not isinstance(path, str):
        raise ConfigError("output.path must be a string")
    precision = _int(out, "precision", 12)
    if not 1 <= precision <= 17:
        raise ConfigError("output.precision must lie in 1..17")
    output = Output(fmt, path, precision)

    green = None
    if data.get("green") is not None:
        gr = data["green"]
        seps = gr.get("separations")
        if not isinstance(seps, list) or not seps:
            raise ConfigError("green.separations must be a non-empty list")
        try:
            seps = tuple(float(s) for s in seps)
        except (TypeError, ValueError):
            raise ConfigError("green.separations must be numbers") from None
        family = _choice(gr, "family", ("both", "open", "closed"), "both")
        green = GreenRequest(seps, family)

    notes = data.get("_notes", ())
    if isinstance(notes, str):
        notes = (notes,)
    return RunConfig(geometry, emitters, optics, sweep, output, green, tuple(notes))


def load_config(path):
    """Read a JSON config file into a plain dict (validation is separate)."""
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from None


def _sweep_to_dict(sw):
    d = {"param": sw.param, "from": sw.start, "to": sw.stop, "steps": sw.steps, "scale": sw.scale}
    if sw.outer is not None:
        d["outer"] = _sweep_to_dict(sw.outer)
    return d


def config_to_dict(cfg):
    """Inverse of :func:`parse_config`."""
    geo = {"kind": cfg.geometry.kind}
    if cfg.geometry.radius is not None:
        geo["radius"] = cfg.geometry.radius
    em = {"layout": cfg.emitters.layout, "n": cfg.emitters.n}
    if cfg.emitters.layout == "ring":
        em["spacing"] = cfg.emitters.spacing
    else:
        em["positions"] = [list(p) for p in cfg.emitters.positions]
    d = {}
    if cfg.notes:
        d["_notes"] = list(cfg.notes)
    d["geometry"] = geo
    d["emitters"] = em
    d["optics"] = {"n0": cfg.optics.n0, "k_perp_frac": cfg.optics.k_perp_frac}
    if cfg.sweep is not None:
        d["sweep"] = _sweep_to_dict(cfg.sweep)
    if cfg.green is not None:
        d["green"] = {"separations": list(cfg.green.separations), "family": cfg.green.family}
    out = {"format": cfg.output.format, "precision": cfg.output.precision}
    if cfg.output.path is not None:
        out["path"] = cfg.output.path
    d["output"] = out
    return d


# ---------------------------------------------------------------------------
# system construction


def build_system(cfg, **values):
    """Emitter array and optics for ``cfg`` with swept parameters substituted.

    ``values`` may contain ``spacing``, ``k_perp_frac`` and ``radius``.
    Library errors (geometry, domain) propagate unchanged.
    """
    unknown = set(values) - set(SWEEP_PARAMS)
    if unknown:
        raise ConfigError(f"unknown sweep parameters {sorted(unknown)}")
    radius = values.get("radius", cfg.geometry.radius)
    surface = cfg.geometry.surface(radius)
    frac = values.get("k_perp_frac", cfg.optics.k_perp_frac)
    optics = OpticalParams.from_fraction(frac, n0=cfg.optics.n0)
    em = cfg.emitters
    if em.layout == "explicit":
        return EmitterArray(surface, em.positions), optics
    spacing = values.get("spacing", em.spacing)
    if cfg.geometry.kind == "plane":
        array = ring_on_plane(em.n, spacing)
    elif cfg.geometry.kind == "free3d":
        array = ring_in_free_space(em.n, spacing)
    else:
        array = ring_on_sphere(em.n, spacing, radius)
    return array, optics


# ---------------------------------------------------------------------------
# figure recipes

_N_NOTE = (
    f"ring size N={DEFAULT_N} is an assumed default; set emitters.n to change it"
)

RECIPES = {
    "fig2a": {
        "_notes": [_N_NOTE, "free-space ring, dipoles normal to the ring plane"],
        "geometry": {"kind": "free3d"},
        "emitters": {"layout": "ring", "n": DEFAULT_N, "spacing": 0.2},
        "optics": {"n0": 1.0, "k_perp_frac": 0.0},
        "sweep": {"param": "spacing", "from": 0.1, "to": 1.0, "steps": 90, "scale": "linear"},
    },
    "fig2b": {
        "_notes": [_N_NOTE, "planar waveguide with k_perp = 0.9 k0 n0"],
        "geometry": {"kind": "plane"},
        "emitters": {"layout": "ring", "n": DEFAULT_N, "spacing": 0.2},
        "optics": {"n0": 1.0, "k_perp_frac": 0.9},
        "sweep": {"param": "spacing", "from": 0.1, "to": 1.0, "steps": 90, "scale": "linear"},
    },
    "fig3": {
        "_notes": [_N_NOTE, "ring lattice spacing 0.6 wavelengths, k_perp swept"],
        "geometry": {"kind": "plane"},
        "emitters": {"layout": "ring", "n": DEFAULT_N, "spacing": 0.6},
        "optics": {"n0": 1.0, "k_perp_frac": 0.0},
        "sweep": {"param": "k_perp_frac", "from": 0.0, "to": 0.95, "steps": 96, "scale": "linear"},
    },
    "fig4b": {
        "_notes": [
            "radius 1 wavelength and k_perp = 0 are assumed values",
            "central angles 20..159 deg keep both sphere Green functions inside "
            "their series convergence zones",
        ],
        "geometry": {"kind": "sphere", "radius": 1.0},
        "emitters": {"layout": "ring", "n": DEFAULT_N, "spacing": 0.1},
        "optics": {"n0": 1.0, "k_perp_frac": 0.0},
        "green": {
            "separations": [round(math.radians(d), 15) for d in range(20, 160)],
            "family": "both",
        },
    },
    "fig4c": {
        "_notes": [
            _N_NOTE,
            "arc spacing 0.1 wavelengths and the radius range 1.5..20 wavelengths "
            "are assumptions; below R ~ 1.4 the open-sphere kernel yields negative "
            "decay rates for this ring",
        ],
        "geometry": {"kind": "sphere", "radius": 20.0},
        "emitters": {"layout": "ring", "n": DEFAULT_N, "spacing": 0.1},
        "optics": {"n0": 1.0, "k_perp_frac": 0.9},
        "sweep": {"param": "radius", "from": 1.5, "to": 20.0, "steps": 40, "scale": "log"},
    },
}


def recipe(name):
    """Config dict for a named figure recipe (a fresh copy)."""
    try:
        return copy.deepcopy(RECIPES[name])
    except KeyError:
        raise ConfigError(
            f"unknown recipe {name!r}; choose from {', '.join(sorted(RECIPES))}"
        ) from None
