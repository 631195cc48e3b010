"""CSV and JSON emission (and re-parsing) for sweeps and Green tables.

Floats are printed with ``format(x, f".{precision}g")`` and negative zero is
normalized, so equal inputs always give byte-identical files.
"""

import csv
import io
import json
import math

from ._version import __version__
from .sweep import SweepResult, SweepRow

__all__ = [
    "HEADER",
    "COLUMNS",
    "fmt_float",
    "sweep_to_csv",
    "sweep_to_json",
    "read_sweep_csv",
    "read_sweep_json",
    "green_table_to_csv",
    "green_table_to_json",
]

HEADER = f"# curved-lattice v{__version__}"
COLUMNS = ("param", "mode", "track_id", "shift", "gamma")


def fmt_float(x, precision=12):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = format(x, f".{precision}g")
    return "0" if s in ("-0", "0") else s


def _rounded(x, precision):
    return float(fmt_float(x, precision))


def _one_line(text):
    return " ".join(str(text).split())


def sweep_to_csv(result, notes=(), precision=12):
    """Render a :class:`SweepResult` as CSV text.

    Comment lines (``#``) carry the version, free-form notes, the swept
    parameter, outer-sweep block markers and failed-point messages. Failed
    points appear as a single row with mode ``error`` and NaN values.
    """
    out = io.StringIO()
    out.write(HEADER + "\n")
    for note in notes:
        out.write(f"# note: {_one_line(note)}\n")
    out.write(f"# param: {result.param}\n")
    out.write(",".join(COLUMNS) + "\n")
    current_outer = object()
    for row in result.rows:
        if result.outer_param is not None and row.outer != current_outer:
            current_outer = row.outer
            out.write(f"# outer {result.outer_param}={fmt_float(row.outer, precision)}\n")
        p = fmt_float(row.param, precision)
        if row.error is not None:
            out.write(f"# error at {result.param}={p}: {_one_line(row.error)}\n")
            out.write(f"{p},error,,nan,nan\n")
            continue
        for i, (shift, gamma, tid) in enumerate(row.modes):
            out.write(
                f"{p},{i},{tid},{fmt_float(shift, precision)},{fmt_float(gamma, precision)}\n"
            )
    return out.getvalue()


def sweep_to_json(result, notes=(), precision=12):
    """JSON mirror of :func:`sweep_to_csv`: one object per CSV data row."""
    rows = []
    for row in result.rows:
        base = {"param": _rounded(row.param, precision)}
        if result.outer_param is not None:
            base["outer"] = _rounded(row.outer, precision)
        if row.error is not None:
            rows.append({**base, "error": row.error})
            continue
        for i, (shift, gamma, tid) in enumerate(row.modes):
            rows.append(
                {
                    **base,
                    "mode": i,
                    "track_id": tid,
                    "shift": _rounded(shift, precision),
                    "gamma": _rounded(gamma, precision),
                }
            )
    doc = {
        "version": __version__,
        "notes": list(notes),
        "param": result.param,
        "outer_param": result.outer_param,
        "rows": rows,
    }
    return json.dumps(doc, indent=1, allow_nan=True) + "\n"


def _assemble(param, outer_param, flat):
    """Group flat ``(param, outer, mode, tid, shift, gamma, error)`` records into rows."""
    rows = []
    key = None
    modes = []

    def flush():
        if key is not None and modes:
            rows.append(SweepRow(key[0], tuple(modes), None, key[1]))

    for p, outer, mode, tid, shift, gamma, error in flat:
        if error is not None:
            flush()
            modes, key = [], None
            rows.append(SweepRow(p, (), error, outer))
            continue
        if mode == 0:
            flush()
            modes, key = [], (p, outer)
        modes.append((shift, gamma, tid))
    flush()
    return SweepResult(param, tuple(rows), outer_param)


def read_sweep_csv(text):
    """Parse text written by :func:`sweep_to_csv` back into a :class:`SweepResult`.

    Returns
    -------
    (SweepResult, list of str)
        The rows and the ``# note:`` lines.
    """
    notes = []
    param = "spacing"
    outer_param = None
    outer = None
    pending_error = None
    header_seen = False
    flat = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("note: "):
                notes.append(body[6:])
            elif body.startswith("param: "):
                param = body[7:]
            elif body.startswith("outer "):
                name, _, value = body[6:].partition("=")
                outer_param, outer = name, float(value)
            elif body.startswith("error at "):
                pending_error = body.partition(": ")[2] or body
            continue
        fields = next(csv.reader([line]))
        if not header_seen:
            if tuple(fields) != COLUMNS:
                raise ValueError("not a curved-lattice sweep CSV (bad column header)")
            header_seen = True
            continue
        p = float(fields[0])
        if fields[1] == "error":
            flat.append((p, outer, None, None, None, None, pending_error or "error"))
            pending_error = None
        else:
            flat.append(
                (p, outer, int(fields[1]), int(fields[2]), float(fields[3]), float(fields[4]), None)
            )
    if not header_seen:
        raise ValueError("not a curved-lattice sweep CSV (no column header)")
    return _assemble(param, outer_param, flat), notes


def read_sweep_json(text):
    doc = json.loads(text)
    outer_param = doc.get("outer_param")
    flat = []
    for r in doc["rows"]:
        outer = r.get("outer")
        if "error" in r:
            flat.append((r["param"], outer, None, None, None, None, r["error"]))
        else:
            flat.append((r["param"], outer, r["mode"], r["track_id"], r["shift"], r["gamma"], None))
    return _assemble(doc["param"], outer_param, flat), list(doc.get("notes", []))


def _green_columns(table):
    cols = ["separation"]
    for fam in table["families"]:
        cols += ["re" if fam == "" else f"re_{fam}", "im" if fam == "" else f"im_{fam}"]
    return cols


def green_table_to_csv(table, notes=(), precision=12):
    """Render a Green-function table.

    ``table`` has ``families`` (a list of column suffixes, ``""`` for a
    single unnamed family) and ``rows`` of ``(separation, [complex, ...])``.
    """
    out = io.StringIO()
    out.write(HEADER + "\n")
    for note in notes:
        out.write(f"# note: {_one_line(note)}\n")
    out.write(",".join(_green_columns(table)) + "\n")
    for sep, values in table["rows"]:
        fields = [fmt_float(sep, precision)]
        for v in values:
            fields += [fmt_float(v.real, precision), fmt_float(v.imag, precision)]
        out.write(",".join(fields) + "\n")
    return out.getvalue()


def green_table_to_json(table, notes=(), precision=12):
    cols = _green_columns(table)
    rows = []
    for sep, values in table["rows"]:
        flat = [sep]
        for v in values:
            flat += [v.real, v.imag]
        rows.append({c: _rounded(x, precision) for c, x in zip(cols, flat)})
    doc = {"version": __version__, "notes": list(notes), "rows": rows}
    return json.dumps(doc, indent=1) + "\n"
