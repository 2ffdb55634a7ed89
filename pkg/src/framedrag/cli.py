"""Command-line entry point.

    framedrag <command> [--config FILE] [--out DIR] [key=value ...]

Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error,
3 numerical/runtime error.
"""

import argparse
import sys
import time

import numpy as np

from .errors import ConfigError, FrameDragError
from .io import (COMMANDS, dumps, parse_config, write_manifest,
                 write_result_files, write_results)

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

HELP = {
    "simulate": "integrate one trajectory and write its full time series",
    "ensemble": "run an experiment (key kind=...)",
    "verify-soliton": "check the operator identities on the soliton",
    "cat-collapse": "cat-state collapse with Born-band verdict",
    "master-compare": "ensemble average vs master-equation distance curve",
    "order-check": "composed vs compact drag step convergence order",
    "acceptance": "run the full acceptance suite",
}


def build_parser():
    parser = argparse.ArgumentParser(prog="framedrag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--out", help="output directory")
        p.add_argument("--seed", type=int, help="base seed")
        if name == "acceptance":
            p.add_argument("--quick", action="store_true", help="smaller ensembles")
        p.add_argument("overrides", nargs="*", metavar="key=value")
    return parser


def _overrides(args):
    out = {}
    for item in args.overrides:
        if "=" not in item:
            raise ConfigError(item, "expected key=value")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    if args.out:
        out["out_dir"] = args.out
    if args.seed is not None:
        out["seed"] = str(args.seed)
    if getattr(args, "quick", False):
        out["quick"] = "true"
    return out


def _load(args):
    text = None
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc}") from None
    return parse_config(text, _overrides(args), args.command)


def _run_simulate(cfg):
    from .ensemble import run_batch
    from .experiments import _default_gaussian
    from .oracle import make_gaussian
    from .sse import StepConfig
    from .experiments import EnsembleResult
    spec = cfg.experiment_spec()
    init = cfg.initial() or _default_gaussian(spec)
    psi = make_gaussian(init, cfg.grid, cfg.hbar)
    step = StepConfig(cfg.dt, cfg.scheme)
    n_steps = int(round(cfg.horizon / cfg.dt))
    batch = run_batch(psi, cfg.params, step, n_steps, n_traj=1, seed=cfg.seed,
                      dynamics=cfg.dynamics, kick=cfg.kick,
                      record_every=max(1, n_steps // cfg.n_bins))
    if batch.failed.any():
        raise FrameDragError(batch.failures[0])
    final = {f: float(v[0, -1]) for f, v in batch.moments.items()}
    result = EnsembleResult(spec, batch.times, batch.moments, batch.norm_drift,
                            batch.failed, batch.failures, {}, {},
                            {"kind": "simulate", "dynamics": cfg.dynamics,
                             "final_moments": final, "seed": cfg.seed, "passed": True})
    return result, True


def _run_verify_soliton(cfg):
    from .oracle import check_identities, make_soliton
    psi = make_soliton(cfg.params, cfg.grid)
    rep = check_identities(psi, cfg.params)
    ok = rep.passes(soliton=True)
    summary = {"general_max": rep.general_max(), "soliton_max": rep.soliton_max(),
               "anticommutator": rep.anticommutator, "pp_dissipator": rep.pp_dissipator,
               "x_noise": rep.x_noise, "p_noise": rep.p_noise,
               "soliton_kernel": rep.soliton_kernel, "soliton_eigen": rep.soliton_eigen,
               "eigenvalue": rep.eigenvalue, "passed": ok}
    return summary, ok


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        cfg = _load(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        ok = _dispatch(cfg, start)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FrameDragError as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK if ok else EXIT_CHECK


def _dispatch(cfg, start):
    out = cfg.output_dir
    if cfg.command == "acceptance":
        from .acceptance import run_acceptance
        outcomes = run_acceptance(out, quick=cfg.quick, seed=cfg.seed)
        ok = all(o.passed for o in outcomes)
        print(f"{sum(o.passed for o in outcomes)}/{len(outcomes)} criteria passed; "
              f"artifacts in {out}")
        return ok
    if cfg.command == "verify-soliton":
        summary, ok = _run_verify_soliton(cfg)
        path = out / "summary.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps({"summary": summary, "config": cfg.echo()}))
        write_manifest(out, cfg, [path], {"verify-soliton": ok},
                       time.perf_counter() - start, cfg.seed)
        print(f"soliton identities: max residual {summary['soliton_max']:.2e}, "
              f"general {summary['general_max']:.2e} -> {'PASS' if ok else 'FAIL'}")
        return ok
    if cfg.command == "simulate":
        result, ok = _run_simulate(cfg)
        files = write_result_files(result, out, cfg.formats, cfg.emit_plots, cfg.echo())
        write_manifest(out, cfg, files, {"simulate": ok}, time.perf_counter() - start,
                       cfg.seed)
        print(f"final moments: {result.summary['final_moments']}")
        return ok
    from .experiments import run_experiment
    result = run_experiment(cfg.experiment_spec())
    write_results(result, cfg, time.perf_counter() - start)
    _report(result)
    return result.passed


def _report(result):
    s = result.summary
    keys = [k for k in s if not isinstance(s[k], (list, dict, np.ndarray))]
    print(f"{s.get('kind')}: " + ", ".join(f"{k}={s[k]}" for k in keys if k != "kind"))


if __name__ == "__main__":
    sys.exit(main())
