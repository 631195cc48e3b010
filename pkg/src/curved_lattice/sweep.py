"""Single-point evaluation, parameter sweeps and mode tracking."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .collective import _to_spectrum, build_matrix, eigenvalues, match_modes
from .config import build_system
from .errors import CurvedLatticeError

__all__ = [
    "WORKERS_ENV",
    "default_workers",
    "SweepRow",
    "SweepResult",
    "sweep_values",
    "evaluate_point",
    "run_point",
    "run_sweep",
]

#: Environment variable holding the default worker count for sweeps.
WORKERS_ENV = "CURVED_LATTICE_WORKERS"


def default_workers():
    raw = os.environ.get(WORKERS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SweepRow:
    """One sweep point.

    ``modes`` holds ``(shift, gamma, track_id)`` triples sorted by descending
    ``gamma``; ``error`` is set instead when the point failed.
    """

    param: float
    modes: tuple = ()
    error: str | None = None
    outer: float | None = None

    @property
    def gammas(self):
        return np.array([m[1] for m in self.modes])

    @property
    def shifts(self):
        return np.array([m[0] for m in self.modes])

    @property
    def track_ids(self):
        return [m[2] for m in self.modes]


@dataclass(frozen=True)
class SweepResult:
    param: str
    rows: tuple
    outer_param: str | None = None

    @property
    def failed(self):
        return sum(1 for r in self.rows if r.error is not None)

    def track(self, track_id):
        """``(param, gamma)`` arrays along one tracked mode, skipping failures."""
        xs, ys = [], []
        for row in self.rows:
            for shift, gamma, tid in row.modes:
                if tid == track_id:
                    xs.append(row.param)
                    ys.append(gamma)
        return np.array(xs), np.array(ys)


def sweep_values(sweep):
    if sweep.scale == "log":
        return np.geomspace(sweep.start, sweep.stop, sweep.steps)
    return np.linspace(sweep.start, sweep.stop, sweep.steps)


def evaluate_point(task):
    """Worker entry point: ``(cfg, values)`` -> ``("ok", eigs)`` or ``("error", msg)``.

    Library errors are caught here so that one bad point never aborts a
    sweep, including across process boundaries.
    """
    cfg, values = task
    try:
        array, optics = build_system(cfg, **values)
        spec = _to_spectrum(eigenvalues(build_matrix(array, optics)))
    except CurvedLatticeError as exc:
        return "error", f"{type(exc).__name__}: {exc}"
    return "ok", spec.eigenvalues


def _rows_from_eigs(param_values, outcomes, outer=None):
    rows = []
    prev_eigs = None
    prev_ids = None
    for value, (status, payload) in zip(param_values, outcomes):
        if status == "error":
            rows.append(SweepRow(float(value), (), payload, outer))
            continue
        lam = payload
        gamma = np.maximum(2.0 * lam.imag, 0.0)
        if prev_eigs is None:
            ids = list(range(len(lam)))
        else:
            perm = match_modes(prev_eigs, lam)
            ids = [0] * len(lam)
            for i, j in enumerate(perm):
                ids[j] = prev_ids[i]
        modes = tuple(
            (float(lam[i].real), float(gamma[i]), int(ids[i])) for i in range(len(lam))
        )
        rows.append(SweepRow(float(value), modes, None, outer))
        prev_eigs, prev_ids = lam, ids
    return rows


def run_point(cfg):
    """Evaluate the configuration at its base parameters (no sweep).

    The row's ``param`` carries the ring spacing (NaN for explicit layouts).
    """
    status, payload = evaluate_point((cfg, {}))
    param = cfg.emitters.spacing if cfg.emitters.spacing is not None else float("nan")
    return SweepResult("spacing", tuple(_rows_from_eigs([param], [(status, payload)])))


def _evaluate_all(tasks, workers):
    if workers <= 1 or len(tasks) < 2:
        return [evaluate_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves input order
        return list(pool.map(evaluate_point, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def run_sweep(cfg, workers=None):
    """Run the sweep block of ``cfg``, tracking modes between adjacent points.

    With an ``outer`` sweep the inner sweep is repeated for each outer value
    and tracking restarts at the start of each inner sweep.
    """
    if cfg.sweep is None:
        raise ValueError("configuration has no sweep block")
    workers = default_workers() if workers is None else max(1, int(workers))
    inner = cfg.sweep
    inner_values = sweep_values(inner)
    outer_values = [None] if inner.outer is None else list(sweep_values(inner.outer))

    tasks = []
    for ov in outer_values:
        for v in inner_values:
            values = {inner.param: float(v)}
            if ov is not None:
                values[inner.outer.param] = float(ov)
            tasks.append((cfg, values))
    outcomes = _evaluate_all(tasks, workers)

    rows = []
    n_inner = len(inner_values)
    for block, ov in enumerate(outer_values):
        chunk = outcomes[block * n_inner:(block + 1) * n_inner]
        rows.extend(_rows_from_eigs(inner_values, chunk, None if ov is None else float(ov)))
    outer_param = inner.outer.param if inner.outer is not None else None
    return SweepResult(inner.param, tuple(rows), outer_param)
