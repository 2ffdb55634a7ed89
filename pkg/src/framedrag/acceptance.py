"""The acceptance suite: ten end-to-end checks with fixed tolerances.

``run_acceptance`` executes every criterion, writes each criterion's
artifacts to its own subdirectory and a one-line-per-criterion report.
``quick=True`` shrinks ensemble sizes (tolerances are unchanged; the
statistical bands widen with the smaller ensembles where they are derived
from the data).
"""

import filecmp
import tempfile
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import FrameDragError
from .experiments import ExperimentSpec, run_experiment
from .io import dumps, write_manifest, write_result_files
from .oracle import (CatSpec, GaussianSpec, check_identities, gaussian_amplitudes,
                     soliton_constants, soliton_spec)
from .state import GridSpec, ModelParams, WaveFunction, normalize


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    metrics: dict
    results: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number:2d}. {self.title} ({self.seconds:.1f} s)"


def _n(full, quick, is_quick):
    return quick if is_quick else full


def _soliton_tau(params):
    return params.mass * soliton_constants(params)[0] / params.hbar


# ---------------------------------------------------------------------------
# criteria


def energy_gain_plain(quick, seed):
    results, metrics, ok = {}, {}, True
    for D in (0.05, 0.5):
        params = ModelParams(D=D)
        tau = _soliton_tau(params)
        spec = ExperimentSpec("energy_rate_plain", params, GridSpec.centered(512, 40.0),
                              n_traj=_n(1000, 250, quick), horizon=tau, dt=0.002,
                              seed=seed, n_bins=50)
        r = run_experiment(spec)
        results[f"D_{D:g}"] = r
        metrics[f"D={D:g}"] = r.summary["energy_rate"]
        ok &= r.passed
    return ok, metrics, results


def energy_gain_drag(quick, seed):
    params = ModelParams(D=0.5)
    tau = _soliton_tau(params)
    spec = ExperimentSpec("energy_rate_drag", params, GridSpec.centered(128, 16.0),
                          n_traj=_n(100, 40, quick), horizon=20 * tau, dt=0.0025,
                          seed=seed, n_bins=100, window=(0.5, 1.0))
    r = run_experiment(spec)
    return r.passed, {"generator": r.summary["generator"],
                      "late_slope": r.summary["late_slope"]}, {"drag": r}


def classical_trajectory(quick, seed):
    spec = ExperimentSpec("trajectory_classical", ModelParams(D=0.125),
                          GridSpec.centered(128, 32.0), n_traj=_n(200, 50, quick),
                          horizon=1.0, dt=1e-3, seed=seed, drag=None,
                          scheme="splitstep_milstein", n_bins=50,
                          options={"levels": 3})
    r = run_experiment(spec)
    s = r.summary
    return r.passed, {"levels": s["levels"], "p_ratios": s["p_ratios"],
                      "x_ratios": s["x_ratios"], "band": s["ratio_band"]}, {"classical": r}


SOLITON_PAIRS = ((0.05, 1.0), (0.5, 1.0), (0.5, 10.0))


def soliton_constants_check(quick, seed):
    results, metrics, ok = {}, {}, True
    for D, M in SOLITON_PAIRS:
        params = ModelParams(mass=M, D=D)
        s2, _ = soliton_constants(params)
        tau = _soliton_tau(params)
        spec = ExperimentSpec("soliton_convergence", params,
                              GridSpec.centered(256, 48 * np.sqrt(s2)),
                              n_traj=_n(20, 10, quick), horizon=12 * tau, dt=tau / 200,
                              seed=seed, n_bins=120, window=(0.8, 1.0))
        r = run_experiment(spec)
        key = f"D={D:g},M={M:g}"
        results[f"D_{D:g}_M_{M:g}"] = r
        metrics[key] = {k: r.summary[k] for k in
                        ("sigma2", "sigma2_inf", "sigma2_relative_error", "corr_R",
                         "R_error")}
        ok &= r.passed
    return ok, metrics, results


def random_state(rng, grid, hbar=1.0):
    """Random superposition of one to three chirped, boosted Gaussians."""
    amp = np.zeros(grid.n_points, dtype=complex)
    for _ in range(rng.integers(1, 4)):
        spec = GaussianSpec(rng.uniform(-8, 8), rng.uniform(-2, 2),
                            rng.uniform(0.3, 2.0), rng.uniform(-1, 1))
        coeff = rng.normal() + 1j * rng.normal()
        amp += coeff * gaussian_amplitudes(spec, grid, hbar)
    return WaveFunction(grid, normalize(amp, grid))


SOLITON_DOMAIN = 240.0


def identities(quick, seed):
    params = ModelParams(D=0.125)
    rng = np.random.default_rng(seed)
    grid = GridSpec.centered(256, 40.0)
    general = [check_identities(random_state(rng, grid), params).general_max()
               for _ in range(100)]
    sol = {}
    for n in (256, 512, 1024):
        g = GridSpec.centered(n, SOLITON_DOMAIN)
        psi = WaveFunction(g, normalize(gaussian_amplitudes(soliton_spec(params), g), g))
        rep = check_identities(psi, params)
        sol[n] = {"kernel": rep.soliton_kernel, "eigen": rep.soliton_eigen,
                  "eigenvalue": rep.eigenvalue.real}
    worst = {n: max(v["kernel"], v["eigen"]) for n, v in sol.items()}
    decay = worst[1024] < 1e-2 * worst[512] and worst[512] < 1e-2 * worst[256]
    ok = max(general) < 1e-7 and worst[512] < 1e-6 and decay
    metrics = {"general_max_residual": max(general), "n_states": len(general),
               "soliton": {str(k): v for k, v in sol.items()},
               "spectral_decay": decay}
    return ok, metrics, {}


def _cat_spec(quick, seed):
    return ExperimentSpec(
        "cat_collapse", ModelParams(mass=20.0, D=0.1), GridSpec.centered(256, 40.0, 5.0),
        initial=CatSpec(np.sqrt(0.7), np.sqrt(0.3), GaussianSpec(0.0, 0.0, 0.25),
                        GaussianSpec(10.0, 0.0, 0.25)),
        n_traj=_n(500, 150, quick), horizon=2.0, dt=0.002, seed=seed, drag=True,
        n_bins=1000, options={"pilot": 50, "horizon_factor": 20})


def born_rule(quick, seed, cat=None):
    r = cat or run_experiment(_cat_spec(quick, seed))
    s = r.summary
    ok = s["in_band"] and s["undecided_fraction"] < 0.01
    keys = ("branch1_count", "branch2_count", "undecided_count", "born_expected",
            "branch1_frequency", "band", "in_band", "undecided_fraction", "pilot")
    return ok, {k: s[k] for k in keys}, {"cat": r}


def center_of_mass(quick, seed, cat=None):
    r = cat or run_experiment(_cat_spec(quick, seed))
    s = r.summary
    ok = bool(s["distinguishable"])
    return ok, {"plain": s["plain"], "drag": s["drag"],
                "center_of_mass": s["center_of_mass"],
                "separation": s["separation"]}, {}


def unraveling(quick, seed):
    spec = ExperimentSpec("master_compare", ModelParams(D=0.1), GridSpec.centered(128, 24.0),
                          initial=GaussianSpec(0.0, 0.0, 1.0, 0.0),
                          n_traj=_n(2000, 500, quick), horizon=1.0, dt=0.002, seed=seed,
                          n_bins=10, options={"n_boot": 50})
    r = run_experiment(spec)
    s = r.summary
    keys = ("max_distance", "bootstrap_band", "reference_band", "master_min_eigenvalue",
            "distances")
    return r.passed, {k: s[k] for k in keys}, {"master": r}


def composition_order(quick, seed):
    spec = ExperimentSpec("composition_order", ModelParams(D=0.125),
                          GridSpec.centered(128, 24.0),
                          initial=GaussianSpec(0.0, 0.5, 1.0, 0.6),
                          n_traj=20, horizon=1.0, dt=1e-3, seed=seed,
                          options={"levels": 4})
    r = run_experiment(spec)
    return r.passed, {"order": r.summary["order"], "levels": r.summary["levels"]}, \
        {"order": r}


def _determinism_subset(seed, workers):
    specs = {
        "energy": ExperimentSpec("energy_rate_plain", ModelParams(D=0.5),
                                 GridSpec.centered(128, 24.0), n_traj=60, horizon=0.2,
                                 dt=0.002, seed=seed, n_bins=10, workers=workers, chunk=16),
        "cat": replace(_cat_spec(True, seed), n_traj=40, workers=workers, chunk=16,
                       options={"pilot": 20, "horizon_factor": 5}),
    }
    return {k: run_experiment(v) for k, v in specs.items()}


def determinism(quick, seed):
    """Rerun a small subset with one and two workers; compare written bytes."""
    with tempfile.TemporaryDirectory() as tmp:
        dirs = []
        for workers in (1, 2):
            root = Path(tmp) / f"w{workers}"
            for name, r in _determinism_subset(seed, workers).items():
                write_result_files(r, root / name)
            dirs.append(root)
        mismatches = _compare_trees(*dirs)
    return not mismatches, {"mismatched_files": mismatches}, {}


def _compare_trees(a, b, ignore=("manifest.json",)):
    a, b = Path(a), Path(b)
    names_a = {p.relative_to(a) for p in a.rglob("*") if p.is_file() and p.name not in ignore}
    names_b = {p.relative_to(b) for p in b.rglob("*") if p.is_file() and p.name not in ignore}
    bad = sorted(str(p) for p in names_a ^ names_b)
    for rel in sorted(names_a & names_b):
        if not filecmp.cmp(a / rel, b / rel, shallow=False):
            bad.append(str(rel))
    return bad


compare_trees = _compare_trees

CRITERIA = (
    (1, "energy gain, plain SSE: slope 2D", energy_gain_plain),
    (2, "energy gain with drag: generator 2D(1-4R^2), late slope 0", energy_gain_drag),
    (3, "classical trajectory under drag: first-order convergence", classical_trajectory),
    (4, "soliton constants sigma^2 and R", soliton_constants_check),
    (5, "operator identities and soliton eigenproblem", identities),
    (6, "Born rule for a 0.7/0.3 cat", born_rule),
    (7, "center of mass: drag vs plain", center_of_mass),
    (8, "unraveling: ensemble vs master equation", unraveling),
    (9, "composition order of the drag step", composition_order),
    (10, "determinism across worker counts", determinism),
)


def run_acceptance(out_dir=None, quick=False, seed=0, only=None, echo=print):
    """Run the suite; returns the list of :class:`Outcome`.

    With ``out_dir`` every criterion's artifacts, ``acceptance.json`` and a
    final ``manifest.json`` are written there.  ``only`` restricts the run
    to the given criterion numbers.
    """
    start = time.perf_counter()
    outcomes = []
    cat = None
    for number, title, fn in CRITERIA:
        if only is not None and number not in only:
            continue
        t0 = time.perf_counter()
        try:
            if number in (6, 7):
                if cat is None:
                    cat = run_experiment(_cat_spec(quick, seed + 6))
                ok, metrics, results = fn(quick, seed + 6, cat)
            else:
                ok, metrics, results = fn(quick, seed + number)
        except FrameDragError as exc:
            ok, metrics, results = False, {"error": f"{type(exc).__name__}: {exc}"}, {}
        out = Outcome(number, title, bool(ok), metrics, results,
                      time.perf_counter() - t0)
        outcomes.append(out)
        if echo is not None:
            echo(out.line())
    if out_dir is not None:
        write_report(out_dir, outcomes, quick, seed, time.perf_counter() - start)
    return outcomes


def write_report(out_dir, outcomes, quick, seed, wall_clock):
    root = Path(out_dir)
    files = []
    for o in outcomes:
        for name, r in o.results.items():
            files += write_result_files(r, root / f"c{o.number:02d}_{name}")
    report = {"quick": quick, "seed": seed,
              "criteria": [{"number": o.number, "title": o.title, "passed": o.passed,
                            "metrics": o.metrics} for o in outcomes],
              "all_passed": all(o.passed for o in outcomes)}
    path = root / "acceptance.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(report))
    files.append(path)
    checks = {f"criterion_{o.number:02d}": o.passed for o in outcomes}
    return write_manifest(root, None, files, checks, wall_clock, seed)
