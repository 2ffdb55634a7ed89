"""Run configuration, result files and the run manifest.

Configuration is a flat ``key = value`` text (``#`` starts a comment) that
may be overridden by command-line ``key=value`` pairs.  Every key is typed
and validated before any computation starts.

A run directory holds

* ``results.csv``   one row per (trajectory, time bin)
* ``summary.json``  experiment summary, seeds and the full config echo
* ``plot_results.py``  a matplotlib script that reads the CSV
* ``manifest.json`` written last; a directory without it is incomplete
"""

import csv
import hashlib
import io
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, FrameDragError
from .oracle import CatSpec, GaussianSpec
from .state import GridSpec, ModelParams

SCHEMA_VERSION = 1
CSV_COLUMNS = ("trajectory", "t", "mean_x", "mean_p", "sigma2", "R", "mean_p2",
               "norm_drift")
OUTPUT_ENV = "FRAMEDRAG_OUTPUT_DIR"
COMMANDS = ("simulate", "ensemble", "verify-soliton", "cat-collapse",
            "master-compare", "order-check", "acceptance")


def _bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _int(text):
    if isinstance(text, bool):
        raise ValueError("not an integer")
    value = float(text) if not isinstance(text, int) else text
    if value != int(value):
        raise ValueError(f"not an integer: {text!r}")
    return int(value)


def _opt_float(text):
    if text is None or str(text).strip().lower() in ("", "none", "auto"):
        return None
    return float(text)


def _opt_bool(text):
    if text is None or str(text).strip().lower() in ("", "none", "auto"):
        return None
    return _bool(text)


def _formats(text):
    items = text if isinstance(text, (list, tuple)) else str(text).split(",")
    out = tuple(sorted({s.strip() for s in items if s.strip()}))
    for s in out:
        if s not in ("csv", "json"):
            raise ValueError(f"unknown format {s!r}")
    return out


# key -> (parser, default)
FIELD_TYPES = {
    "kind": (str, "energy_rate_plain"),
    "D": (float, 0.1),
    "mass": (float, 1.0),
    "hbar": (float, 1.0),
    "n_points": (_int, 256),
    "length": (float, 32.0),
    "center": (float, 0.0),
    "n_traj": (_int, 100),
    "horizon": (float, 1.0),
    "dt": (_opt_float, None),
    "seed": (_int, 0),
    "drag": (_opt_bool, None),
    "scheme": (str, "splitstep_em"),
    "n_bins": (_int, 50),
    "window_start": (float, 0.0),
    "window_end": (float, 1.0),
    "workers": (_int, 1),
    "chunk": (_int, 50),
    "x0": (float, 0.0),
    "p0": (float, 0.0),
    "sigma2": (_opt_float, None),
    "chirp": (float, 0.0),
    "alpha2": (float, 0.7),
    "x1": (float, 0.0),
    "x2": (float, 10.0),
    "branch_sigma2": (float, 0.25),
    "kick": (str, "matched"),
    "levels": (_int, 4),
    "pilot": (_int, 50),
    "horizon_factor": (float, 20.0),
    "n_boot": (_int, 200),
    "compare_drag": (_bool, False),
    "dynamics": (str, "plain"),
    "out_dir": (str, ""),
    "formats": (_formats, ("csv", "json")),
    "emit_plots": (_bool, True),
    "quick": (_bool, False),
}

COMMAND_DEFAULTS = {
    "verify-soliton": {"D": 0.125, "n_points": 512, "length": 240.0},
    "cat-collapse": {"kind": "cat_collapse", "D": 0.1, "mass": 20.0, "n_points": 256,
                     "length": 40.0, "center": 5.0, "n_traj": 500, "horizon": 2.0,
                     "dt": 0.002, "n_bins": 1000},
    "master-compare": {"kind": "master_compare", "n_points": 128, "length": 24.0,
                       "sigma2": 1.0, "n_traj": 2000, "dt": 0.002, "n_bins": 10,
                       "n_boot": 50},
    "order-check": {"kind": "composition_order", "D": 0.125, "n_points": 128,
                    "length": 24.0, "n_traj": 20, "dt": 1e-3, "p0": 0.5,
                    "sigma2": 1.0, "chirp": 0.6},
    "simulate": {"n_traj": 1, "horizon": 1.0},
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration; ``values`` holds every key, defaults included."""

    command: str
    values: dict = field(default_factory=dict)

    def __getattr__(self, name):
        try:
            return self.__dict__["values"][name]
        except KeyError:
            raise AttributeError(name) from None

    @property
    def params(self):
        return ModelParams(self.mass, self.D, self.hbar)

    @property
    def grid(self):
        return GridSpec.centered(self.n_points, self.length, self.center)

    @property
    def output_dir(self):
        if self.out_dir:
            return Path(self.out_dir)
        base = os.environ.get(OUTPUT_ENV, "runs")
        return Path(base) / self.command

    def echo(self):
        return {"command": self.command, **{k: _jsonable(v) for k, v in
                                             sorted(self.values.items())}}

    def initial(self):
        """Initial-state spec implied by the config (``None`` = kind default)."""
        v = self.values
        if self.kind == "cat_collapse" or self.command == "cat-collapse":
            a2 = v["alpha2"]
            return CatSpec(math.sqrt(a2), math.sqrt(1 - a2),
                           GaussianSpec(v["x1"], 0.0, v["branch_sigma2"]),
                           GaussianSpec(v["x2"], 0.0, v["branch_sigma2"]))
        if v["sigma2"] is None:
            return None
        return GaussianSpec(v["x0"], v["p0"], v["sigma2"], v["chirp"])

    def experiment_spec(self):
        from .experiments import ExperimentSpec
        opts = {"kick": self.kick, "levels": self.levels, "pilot": self.pilot,
                "horizon_factor": self.horizon_factor, "n_boot": self.n_boot,
                "compare_drag": self.compare_drag}
        return ExperimentSpec(
            kind=self.kind, params=self.params, grid=self.grid,
            initial=self.initial(), n_traj=self.n_traj, horizon=self.horizon,
            dt=self.dt, seed=self.seed, drag=self.drag, scheme=self.scheme,
            n_bins=self.n_bins, window=(self.window_start, self.window_end),
            workers=self.workers, chunk=self.chunk, options=opts)


def parse_text(text):
    """Parse ``key = value`` lines into a dict of raw strings."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        raw[key] = value
    return raw


def default_dt(values):
    """Step size heuristic for the splitting schemes.

    The smallest of ``horizon / 500``, a tenth of the relaxation time
    ``M sigma_inf^2 / hbar`` and half the collapse-term bound at the grid
    edge; the explicit scheme additionally respects ``dx^2 M / hbar``.
    """
    D, M, hbar, L = values["D"], values["mass"], values["hbar"], values["length"]
    candidates = [values["horizon"] / 500]
    if D > 0:
        s2 = math.sqrt(hbar**3 / (8 * D * M))
        candidates.append(0.1 * M * s2 / hbar)
        candidates.append(0.5 * hbar**2 / (D * L**2))
    if values["scheme"] == "euler_maruyama":
        dx = L / values["n_points"]
        candidates.append(0.5 * dx**2 * M / hbar)
    return float(min(candidates))


def parse_config(text=None, overrides=None, command="ensemble"):
    """Build a validated :class:`RunConfig`.

    ``text`` is a flat config file body and ``overrides`` a mapping (for
    example from ``key=value`` command-line pairs) applied on top.  Unknown
    keys, unparsable values and constraint violations raise
    :class:`ConfigError` naming the field.
    """
    if command not in COMMANDS:
        raise ConfigError("command", f"unknown command {command!r}")
    raw = {}
    if text:
        raw.update(parse_text(text))
    if overrides:
        raw.update(overrides)
    values = {k: d for k, (_, d) in FIELD_TYPES.items()}
    values.update(COMMAND_DEFAULTS.get(command, {}))
    for key, value in raw.items():
        if key not in FIELD_TYPES:
            raise ConfigError(key, "unknown key")
        parser = FIELD_TYPES[key][0]
        try:
            values[key] = parser(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(key, f"cannot parse {value!r}: {exc}") from None
    _validate(values, command)
    if values["dt"] is None:
        values["dt"] = default_dt(values)
    from .experiments import KINDS
    if values["kind"] not in KINDS:
        raise ConfigError("kind", f"unknown experiment kind {values['kind']!r}")
    cfg = RunConfig(command, values)
    if command in ("ensemble", "cat-collapse", "master-compare", "order-check"):
        try:
            cfg.experiment_spec()
        except FrameDragError as exc:
            raise ConfigError("spec", str(exc)) from None
    return cfg


def _validate(v, command):
    checks = [
        ("D", v["D"] >= 0, "must be non-negative"),
        ("mass", v["mass"] > 0, "must be positive"),
        ("hbar", v["hbar"] > 0, "must be positive"),
        ("n_points", v["n_points"] >= 8 and v["n_points"] & (v["n_points"] - 1) == 0,
         "must be a power of two >= 8"),
        ("length", v["length"] > 0, "must be positive"),
        ("n_traj", v["n_traj"] >= 0, "must be non-negative"),
        ("horizon", v["horizon"] > 0, "must be positive"),
        ("dt", v["dt"] is None or 0 < v["dt"] <= v["horizon"], "must lie in (0, horizon]"),
        ("n_bins", v["n_bins"] >= 1, "must be at least 1"),
        ("window_start", 0 <= v["window_start"] < v["window_end"], "must be in [0, window_end)"),
        ("window_end", v["window_end"] <= 1, "must be at most 1"),
        ("workers", v["workers"] >= 1, "must be at least 1"),
        ("chunk", v["chunk"] >= 1, "must be at least 1"),
        ("sigma2", v["sigma2"] is None or v["sigma2"] > 0, "must be positive"),
        ("alpha2", 0 <= v["alpha2"] <= 1, "must lie in [0, 1]"),
        ("branch_sigma2", v["branch_sigma2"] > 0, "must be positive"),
        ("scheme", v["scheme"] in ("euler_maruyama", "splitstep_em", "splitstep_milstein"),
         "unknown scheme"),
        ("kick", v["kick"] in ("matched", "linear"), "must be 'matched' or 'linear'"),
        ("dynamics", v["dynamics"] in ("plain", "drag_compact", "drag_composed"),
         "unknown dynamics"),
        ("levels", v["levels"] >= 2, "must be at least 2"),
        ("n_boot", v["n_boot"] >= 0, "must be non-negative"),
    ]
    for name, ok, message in checks:
        if not ok:
            raise ConfigError(name, f"{message} (got {v[name]!r})")
    if command == "verify-soliton" and not v["D"] > 0:
        raise ConfigError("D", "the soliton needs D > 0")


# ---------------------------------------------------------------------------
# serialization


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else repr(f)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


def dumps(obj):
    """Deterministic JSON text (sorted keys, full float precision)."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _series_csv(times, series, norm_drift):
    buf = io.StringIO(newline="")
    buf.write(f"# framedrag trajectory series, schema {SCHEMA_VERSION}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    names = ("mean_x", "mean_p", "sigma2", "corr_R", "mean_p2")
    n_traj = norm_drift.shape[0] if norm_drift.ndim == 2 else 0
    for i in range(n_traj):
        for j, t in enumerate(times):
            row = [i, repr(float(t))]
            row += [repr(float(series[f][i, j])) for f in names]
            row.append(repr(float(norm_drift[i, j])))
            writer.writerow(row)
    return buf.getvalue()


def read_series(path):
    """Read a results CSV back into ``{column: ndarray}``."""
    with open(path, newline="") as fh:
        header = fh.readline()
        if not header.startswith("# framedrag"):
            raise FrameDragError(f"{path}: missing schema header")
        rows = list(csv.reader(fh))
    cols = rows[0]
    data = np.array([[float(x) for x in r] for r in rows[1:]]).reshape(-1, len(cols))
    return {c: data[:, k] for k, c in enumerate(cols)}


def read_summary(path):
    with open(path) as fh:
        return json.load(fh)


PLOT_TEMPLATE = '''"""Plot ensemble means from {csv} (generated file)."""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

COLUMNS = {columns!r}

rows = defaultdict(list)
with open("{csv}", newline="") as fh:
    next(fh)
    reader = csv.DictReader(fh)
    for row in reader:
        rows[float(row["t"])].append(row)

times = sorted(rows)
fig, axes = plt.subplots(len(COLUMNS) - 2, 1, sharex=True, figsize=(6, 10))
for ax, name in zip(axes, COLUMNS[2:]):
    means = [sum(float(r[name]) for r in rows[t]) / len(rows[t]) for t in times]
    ax.plot(times, means)
    ax.set_ylabel(name)
axes[-1].set_xlabel("t")
fig.tight_layout()
fig.savefig("{stem}.png", dpi=120)
'''


@dataclass(frozen=True)
class ResultManifest:
    config: dict
    files: list
    code_version: str
    seed: int
    wall_clock: float
    checks: dict

    def to_dict(self):
        return {"complete": True, "config": self.config, "files": self.files,
                "code_version": self.code_version, "seed": self.seed,
                "wall_clock_seconds": self.wall_clock, "checks": self.checks}


def _write(path, text):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise FrameDragError(f"cannot write {path}: {exc}") from exc


def _file_entry(root, path):
    data = path.read_bytes()
    return {"path": path.relative_to(root).as_posix(),
            "sha256": hashlib.sha256(data).hexdigest(), "bytes": len(data)}


def write_result_files(result, directory, formats=("csv", "json"), emit_plots=True,
                       config_echo=None):
    """Write CSV, JSON and plot script for one result; returns written paths."""
    directory = Path(directory)
    written = []
    if "csv" in formats:
        path = directory / "results.csv"
        _write(path, _series_csv(result.times, result.series, result.norm_drift))
        written.append(path)
        if emit_plots:
            plot = directory / "plot_results.py"
            _write(plot, PLOT_TEMPLATE.format(csv="results.csv", stem="results",
                                              columns=CSV_COLUMNS))
            written.append(plot)
    if "json" in formats:
        path = directory / "summary.json"
        payload = {"schema": SCHEMA_VERSION, "summary": result.summary,
                   "seeds": {"base": result.spec.seed,
                             "trajectories": f"SeedSequence({result.spec.seed}, "
                                             f"spawn_key=(i,)) for i < {result.spec.n_traj}"},
                   "failures": [f for f in result.failures if f is not None],
                   "config": config_echo or {}}
        _write(path, dumps(payload))
        written.append(path)
    return written


def write_manifest(root, cfg, files, checks, wall_clock, seed):
    """Write ``manifest.json`` last and return the :class:`ResultManifest`."""
    from . import __version__
    root = Path(root)
    entries = [_file_entry(root, Path(p)) for p in sorted(files, key=str)]
    manifest = ResultManifest(cfg.echo() if cfg is not None else {}, entries,
                              __version__, seed, float(wall_clock),
                              {k: bool(v) for k, v in checks.items()})
    _write(root / "manifest.json", dumps(manifest.to_dict()))
    return manifest


def write_results(result, cfg, wall_clock=0.0):
    """Persist ``result`` under ``cfg.output_dir`` and finish with the manifest."""
    root = cfg.output_dir
    files = write_result_files(result, root, cfg.formats, cfg.emit_plots, cfg.echo())
    return write_manifest(root, cfg, files, {result.spec.kind: result.passed},
                          wall_clock, cfg.seed)
