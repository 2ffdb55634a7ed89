"""Reproducible Monte-Carlo trajectory ensembles and their statistics.

Trajectories are split into fixed-size chunks that are integrated as
``(chunk, n_points)`` stacks.  Every trajectory draws its own noise from
:class:`~framedrag.sse.NoiseStream`, and chunks are reassembled in index
order, so results do not depend on the number of worker threads.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError, ParameterError
from .observables import FIELDS, Moments, moments_array
from .sse import NoiseStream, advance, check_scheme, stability_violations
from .state import LEAK_LIMIT, boundary_mass

DEFAULT_CHUNK = 50
N_BOOT = 200


@dataclass
class TrajectoryBatch:
    """Recorded time series of an ensemble.

    ``moments[f]`` and ``norm_drift`` have shape ``(n_traj, n_records)``;
    rows of failed trajectories are NaN from the failure onward.
    ``probes`` holds any extra per-record quantities.
    """

    times: np.ndarray
    moments: dict
    norm_drift: np.ndarray
    failed: np.ndarray
    failures: list
    probes: dict = field(default_factory=dict)
    final: np.ndarray | None = None
    states: np.ndarray | None = None

    @property
    def n_traj(self):
        return self.failed.size

    def ok_rows(self):
        return ~self.failed


def _take(m, rows):
    return Moments(*(np.asarray(getattr(m, f))[rows] for f in FIELDS))


def _put(m, rows, part):
    for f in FIELDS:
        getattr(m, f)[rows] = getattr(part, f)


def _chunks(n_traj, size):
    return [np.arange(i, min(i + size, n_traj)) for i in range(0, n_traj, size)]


def run_batch(psi0, params, cfg, n_steps, *, n_traj, seed, dynamics="plain",
              record_every=1, substeps=1, kick="linear", ito_correction=False,
              probe=None, keep_final=False, keep_states=False, workers=1,
              chunk=DEFAULT_CHUNK, first_trajectory=0):
    """Integrate ``n_traj`` trajectories started from ``psi0``.

    ``probe(a, ctx)`` may return a dict of per-row arrays recorded alongside
    the moments; ``ctx`` carries the frame offset ``U`` and velocity ``V`` of
    composed drag runs and the accumulated classical drift ``x_drift``.
    Trajectory ``i`` uses ``NoiseStream(seed, first_trajectory + i)``.
    Stepper failures (stability, leakage, non-finite norm) mark the
    trajectory as failed and freeze it.  ``keep_states`` stores the
    amplitudes at every record, shape ``(n_traj, n_records, n_points)``.
    """
    grid = psi0.grid
    check_scheme(grid, params, cfg)
    n_rec = n_steps // record_every + 1
    times = np.arange(n_rec) * record_every * cfg.dt

    def run(ids):
        n = ids.size
        a = np.repeat(psi0.amplitudes[None, :], n, axis=0)
        noise = np.stack([NoiseStream(seed, first_trajectory + int(i), cfg.dt,
                                      substeps).draw(n_steps) for i in ids]) \
            if n else np.zeros((0, n_steps))
        mom = {f: np.full((n, n_rec), np.nan) for f in FIELDS}
        drift_rec = np.full((n, n_rec), np.nan)
        states = (np.full((n, n_rec, grid.n_points), np.nan, dtype=complex)
                  if keep_states else None)
        probes = {}
        alive = np.ones(n, dtype=bool)
        reasons = [None] * n
        ctx = {"U": np.zeros(n), "V": np.zeros(n), "x_drift": np.zeros(n)}

        def record(j, rows, amps, m, drift):
            for f in FIELDS:
                mom[f][rows, j] = getattr(m, f)
            drift_rec[rows, j] = drift
            if states is not None:
                states[rows, j] = amps
            if probe is not None:
                sub = {k: v[rows] for k, v in ctx.items()}
                for name, val in probe(amps, sub).items():
                    probes.setdefault(name, np.full((n, n_rec), np.nan))[rows, j] = val

        m_all = moments_array(a, grid, params.hbar)
        record(0, np.arange(n), a, m_all, 0.0)
        for s in range(n_steps):
            rows = np.flatnonzero(alive)
            if rows.size == 0:
                break
            sub = a[rows]
            m = _take(m_all, rows)
            msgs = stability_violations(grid, params, cfg, dynamics, m)
            bad = np.array([msg is not None for msg in msgs])
            new, _, drift, frame = advance(sub, grid, params, cfg, noise[rows, s],
                                           dynamics, kick=kick,
                                           ito_correction=ito_correction,
                                           m=m, check=False)
            leak = boundary_mass(new, grid)
            for i in np.flatnonzero(~bad):
                if not np.isfinite(drift[i]) or not leak[i] < LEAK_LIMIT:
                    bad[i] = True
                    msgs[i] = (f"boundary mass {leak[i]:.3g} >= {LEAK_LIMIT:g}"
                               if np.isfinite(drift[i]) else "non-finite norm")
            for i in np.flatnonzero(bad):
                reasons[rows[i]] = f"step {s + 1}: {msgs[i]}"
            ctx["x_drift"][rows] += m.mean_p * cfg.dt / params.mass
            if frame is not None:
                shift, dv = frame
                ctx["U"][rows] += ctx["V"][rows] * cfg.dt + shift
                ctx["V"][rows] += dv
            keep = ~bad
            alive[rows[bad]] = False
            rows, new = rows[keep], new[keep]
            a[rows] = new
            m_new = moments_array(new, grid, params.hbar)
            _put(m_all, rows, m_new)
            if (s + 1) % record_every == 0 and rows.size:
                record((s + 1) // record_every, rows, new, m_new, drift[keep])
        return (mom, drift_rec, probes, alive, reasons, (a if keep_final else None),
                states)

    parts = _chunks(n_traj, chunk)
    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(run, parts))
    else:
        outs = [run(ids) for ids in parts]

    if not outs:
        empty = np.zeros((0, n_rec))
        return TrajectoryBatch(times, {f: empty.copy() for f in FIELDS}, empty.copy(),
                               np.zeros(0, dtype=bool), [], {},
                               np.zeros((0, grid.n_points), complex) if keep_final else None,
                               np.zeros((0, n_rec, grid.n_points), complex) if keep_states else None)
    moments = {f: np.concatenate([o[0][f] for o in outs]) for f in FIELDS}
    names = sorted({k for o in outs for k in o[2]})
    probes = {k: np.concatenate([o[2].get(k, np.full((len(ids), n_rec), np.nan))
                                 for o, ids in zip(outs, parts)]) for k in names}
    return TrajectoryBatch(
        times, moments,
        np.concatenate([o[1] for o in outs]),
        ~np.concatenate([o[3] for o in outs]),
        [r for o in outs for r in o[4]],
        probes,
        np.concatenate([o[5] for o in outs]) if keep_final else None,
        np.concatenate([o[6] for o in outs]) if keep_states else None)


# ---------------------------------------------------------------------------
# statistics


def _bootstrap_weights(n, n_boot, seed):
    """Multinomial resampling counts, shape ``(n_boot, n)``."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(2**31,)))
    idx = rng.integers(0, n, size=(n_boot, n))
    return np.stack([np.bincount(row, minlength=n) for row in idx]).astype(float)


def _statistic(values, weights, statistic):
    """Weighted per-bin statistic; ``weights`` has shape ``(k, n_traj)``."""
    total = weights.sum(axis=1, keepdims=True)
    mean = weights @ values / total
    if statistic == "mean":
        return mean
    if statistic == "var":
        second = weights @ values**2 / total
        n = total
        return (second - mean**2) * n / np.maximum(n - 1, 1)
    raise ParameterError(f"unknown statistic {statistic!r}")


def _ols(t, y):
    """Slope and its residual standard error for each row of ``y``."""
    tc = t - t.mean()
    sxx = np.sum(tc**2)
    slope = (y - y.mean(axis=-1, keepdims=True)) @ tc / sxx
    resid = y - y.mean(axis=-1, keepdims=True) - slope[..., None] * tc
    dof = max(t.size - 2, 1)
    se = np.sqrt(np.sum(resid**2, axis=-1) / dof / sxx)
    return slope, se


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares slope with trajectory-bootstrap error.

    ``ols_stderr`` is the textbook residual error of the fit to the
    ensemble statistic; it ignores correlations between time bins and is
    reported for reference only.
    """

    slope: float
    stderr: float
    ols_stderr: float
    n_bins: int
    n_traj: int

    def within(self, expected, n_sigma=2.0):
        return abs(self.slope - expected) <= n_sigma * self.stderr

    def z(self, expected):
        if self.stderr == 0:
            return 0.0 if self.slope == expected else np.inf
        return (self.slope - expected) / self.stderr


def fit_slope(t, values, window=None, statistic="mean", n_boot=N_BOOT, seed=0):
    """Fit ``d statistic(values) / dt`` over ``window = (t0, t1)``.

    ``values`` is ``(n_traj, n_bins)`` (a 1-D series counts as a single
    trajectory).  The slope is the OLS slope of the per-bin ensemble
    ``statistic`` (``"mean"`` or ``"var"``); its standard error is the
    spread of the slope over ``n_boot`` trajectory resamples.
    """
    t = np.asarray(t, dtype=float)
    v = np.atleast_2d(np.asarray(values, dtype=float))
    if v.shape[-1] != t.size:
        raise ParameterError(f"{t.size} times but {v.shape[-1]} bins")
    sel = np.ones(t.size, dtype=bool)
    if window is not None:
        sel = (t >= window[0]) & (t <= window[1])
    v = v[:, sel][np.all(np.isfinite(v[:, sel]), axis=1)]
    t = t[sel]
    if t.size < 5:
        raise InsufficientDataError(f"need at least 5 time bins, got {t.size}")
    if v.shape[0] == 0 or (statistic == "var" and v.shape[0] < 2):
        raise InsufficientDataError("not enough trajectories")
    n = v.shape[0]
    point = _statistic(v, np.ones((1, n)), statistic)[0]
    slope, ols_se = _ols(t, point)
    if n > 1 and n_boot > 0:
        boot = _statistic(v, _bootstrap_weights(n, n_boot, seed), statistic)
        stderr = float(np.std(_ols(t, boot)[0], ddof=1))
    else:
        stderr = 0.0
    return SlopeFit(float(slope), stderr, float(ols_se), int(t.size), n)


def bin_statistics(values, statistic="mean", n_boot=N_BOOT, seed=0):
    """Per-bin ensemble statistic and trajectory-bootstrap standard error."""
    v = np.asarray(values, dtype=float)
    v = v[np.all(np.isfinite(v), axis=1)] if v.size else v
    if v.shape[0] == 0:
        nan = np.full(v.shape[-1], np.nan)
        return nan, nan
    n = v.shape[0]
    point = _statistic(v, np.ones((1, n)), statistic)[0]
    if n < 2:
        return point, np.zeros_like(point)
    boot = _statistic(v, _bootstrap_weights(n, n_boot, seed), statistic)
    return point, np.std(boot, axis=0, ddof=1)


# ---------------------------------------------------------------------------
# collapse classification

BRANCH1, BRANCH2, UNDECIDED = "branch1", "branch2", "undecided"
DECISION_LEVEL = 0.99


def half_space_populations(a, grid, split, offset=0.0):
    """Probability on either side of ``split`` in the frame ``x + offset``."""
    w = a.real**2 + a.imag**2
    xs = grid.x + np.asarray(offset, dtype=float)[..., None]
    left = np.sum(np.where(xs < split, w, 0.0), axis=-1)
    total = np.sum(w, axis=-1)
    return left / total, 1 - left / total


def classify_collapse(pop1, pop2, level=DECISION_LEVEL):
    """Outcome from terminal branch populations (scalars or arrays)."""
    p1, p2 = np.asarray(pop1), np.asarray(pop2)
    out = np.where(p1 > level, BRANCH1, np.where(p2 > level, BRANCH2, UNDECIDED))
    return str(out) if out.ndim == 0 else out


def decision_index(pop1, pop2, level=DECISION_LEVEL):
    """First record index where either population exceeds ``level`` (-1 if never)."""
    p = np.fmax(np.asarray(pop1), np.asarray(pop2))
    hit = p > level
    return np.where(hit.any(axis=-1), np.argmax(hit, axis=-1), -1)

