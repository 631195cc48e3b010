"""Command-line front end: ``curved-lattice {green,spectrum,sweep,recipes}``.

A run starts from a JSON config (``--config``), a named recipe
(``--recipe``) or nothing; individual flags then override config keys.

Exit status: 0 success, 2 configuration or usage error, 3 numerical or
domain error, 4 sweep finished with failed points.
"""

import argparse
import json
import math
import sys

from ._version import __version__
from .config import RECIPES, config_to_dict, load_config, parse_config, recipe
from .errors import ConfigError, CurvedLatticeError
from .greens import green_free3d_zz, green_plane, green_sphere_closed, green_sphere_open
from .output import (
    green_table_to_csv,
    green_table_to_json,
    sweep_to_csv,
    sweep_to_json,
)
from .surface import OpticalParams, effective_wavenumber
from .sweep import WORKERS_ENV, run_point, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_PARTIAL = 4


def _add_common(p):
    src = p.add_argument_group("config source")
    src.add_argument("--config", metavar="PATH", help="JSON run configuration")
    src.add_argument("--recipe", choices=sorted(RECIPES), help="start from a named recipe")
    ov = p.add_argument_group("overrides (flag wins over config)")
    ov.add_argument("--geometry", choices=("plane", "sphere", "free3d"))
    ov.add_argument("--radius", type=float, help="sphere radius in vacuum wavelengths")
    ov.add_argument("--n", type=int, help="ring size")
    ov.add_argument("--spacing", type=float, help="ring spacing in vacuum wavelengths")
    ov.add_argument("--n0", type=float, help="guide refractive index")
    ov.add_argument("--k-perp-frac", type=float, dest="k_perp_frac",
                    help="transverse wavenumber as a fraction of k0*n0")
    out = p.add_argument_group("output")
    out.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    out.add_argument("--format", choices=("csv", "json"))
    out.add_argument("--precision", type=int, help="significant digits (default 12)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curved-lattice",
        description="Collective emission of emitter rings on planar and spherical guides.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("green", help="tabulate Green functions over separations")
    _add_common(g)
    g.add_argument("--separations", help="comma-separated list; radians on a sphere")
    g.add_argument("--degrees", action="store_true", help="read sphere separations in degrees")
    g.add_argument("--family", choices=("both", "open", "closed"),
                   help="sphere Green function family (default both)")

    s = sub.add_parser("spectrum", help="collective spectrum at one parameter point")
    _add_common(s)

    w = sub.add_parser("sweep", help="spectra along the config's sweep block")
    _add_common(w)
    w.add_argument("--workers", type=int,
                   help=f"parallel worker processes (default ${WORKERS_ENV} or 1)")

    r = sub.add_parser("recipes", help="print a canned configuration, or list them")
    r.add_argument("name", nargs="?", help="recipe name; omit to list")
    return parser


def _merge(args):
    """Config dict from the chosen source with command-line overrides applied."""
    if args.config and args.recipe:
        raise ConfigError("use either --config or --recipe, not both")
    if args.config:
        data = load_config(args.config)
    elif args.recipe:
        data = recipe(args.recipe)
    else:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    geo = data.setdefault("geometry", {})
    em = data.setdefault("emitters", {})
    op = data.setdefault("optics", {})
    out = data.setdefault("output", {})
    if args.geometry is not None:
        geo["kind"] = args.geometry
        if args.geometry != "sphere" and args.radius is None:
            geo.pop("radius", None)
    if args.radius is not None:
        geo["radius"] = args.radius
    for key in ("n", "spacing"):
        if getattr(args, key) is not None:
            em[key] = getattr(args, key)
    for key in ("n0", "k_perp_frac"):
        if getattr(args, key) is not None:
            op[key] = getattr(args, key)
    if args.format is not None:
        out["format"] = args.format
    if args.precision is not None:
        out["precision"] = args.precision
    if args.out is not None:
        out["path"] = args.out
    if getattr(args, "separations", None) is not None:
        try:
            seps = [float(x) for x in args.separations.split(",") if x.strip()]
        except ValueError:
            raise ConfigError(f"bad --separations list {args.separations!r}") from None
        data.setdefault("green", {})["separations"] = seps
    if getattr(args, "family", None) is not None:
        data.setdefault("green", {})["family"] = args.family
    if args.command == "green":
        # the ring is not used; a placeholder keeps the emitters block valid
        em.setdefault("spacing", 1.0)
    return data


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _write(text, path):
    try:
        _emit(text, path)
    except OSError as exc:
        print(f"curved-lattice: cannot write output: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def _green_table(cfg, degrees):
    if cfg.green is None:
        raise ConfigError("green needs separations (--separations or green.separations)")
    optics = OpticalParams.from_fraction(cfg.optics.k_perp_frac, n0=cfg.optics.n0)
    surface = cfg.geometry.surface()
    k = effective_wavenumber(optics, surface)
    kind = cfg.geometry.kind
    if kind == "sphere":
        fams = ["open", "closed"] if cfg.green.family == "both" else [cfg.green.family]
        funcs = {
            "open": lambda t: green_sphere_open(t, surface.radius, k),
            "closed": lambda t: green_sphere_closed(t, surface.radius, k),
        }
        evaluators = [funcs[f] for f in fams]
    else:
        if cfg.green.family != "both":
            raise ConfigError("green.family only applies to sphere geometries")
        fams = [""]
        evaluators = [(lambda r: green_plane(r, k)) if kind == "plane"
                      else (lambda r: green_free3d_zz(r, k))]
    rows = []
    for i, sep in enumerate(cfg.green.separations):
        arg = math.radians(sep) if degrees and kind == "sphere" else sep
        try:
            rows.append((sep, [complex(f(arg)) for f in evaluators]))
        except CurvedLatticeError as exc:
            raise type(exc)(f"row {i} (separation {sep!r}): {exc}") from exc
    return {"families": fams, "rows": rows}


def _cmd_recipes(args):
    if args.name is None:
        for name in sorted(RECIPES):
            print(name)
        return EXIT_OK
    try:
        data = recipe(args.name)
    except ConfigError as exc:
        print(f"curved-lattice recipes: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    # round-trip through the parser so the printed config is exactly what runs
    print(json.dumps(config_to_dict(parse_config(data)), indent=2))
    return EXIT_OK


def run(argv=None):
    """Entry point returning the exit status instead of calling ``sys.exit``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    if args.command == "recipes":
        return _cmd_recipes(args)

    try:
        cfg = parse_config(_merge(args))
    except ConfigError as exc:
        print(f"curved-lattice {args.command}: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    fmt = cfg.output.format
    prec = cfg.output.precision
    try:
        if args.command == "green":
            table = _green_table(cfg, args.degrees)
            writer = green_table_to_json if fmt == "json" else green_table_to_csv
            return _write(writer(table, cfg.notes, prec), cfg.output.path)
        if args.command == "spectrum":
            result = run_point(cfg)
        else:
            if cfg.sweep is None:
                raise ConfigError("sweep needs a sweep block in the config")
            result = run_sweep(cfg, workers=args.workers)
    except ConfigError as exc:
        print(f"curved-lattice {args.command}: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CurvedLatticeError as exc:
        print(f"curved-lattice {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    failed = [row for row in result.rows if row.error is not None]
    if args.command == "spectrum" and failed:
        print(f"curved-lattice spectrum: {failed[0].error}", file=sys.stderr)
        return EXIT_NUMERIC
    writer = sweep_to_json if fmt == "json" else sweep_to_csv
    status = _write(writer(result, cfg.notes, prec), cfg.output.path)
    if status != EXIT_OK:
        return status
    for row in failed:
        print(f"curved-lattice sweep: {result.param}={row.param!r}: {row.error}", file=sys.stderr)
    return EXIT_PARTIAL if failed else EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
