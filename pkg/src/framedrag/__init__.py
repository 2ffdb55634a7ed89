"""Stochastic Schrödinger equations for spontaneous collapse with frame drag.

The package integrates the plain collapse SSE, its frame-dragged variant
(compact and composed forms) and the linear master equation on a periodic
1-D grid, and runs reproducible trajectory ensembles for the classic
experiments: energy gain, phase-space diffusion, soliton convergence, cat
collapse and the unraveling check.
"""

from .errors import (ConfigError, ExperimentFailedError, FitError,
                     FrameDragError, GridError, InsufficientDataError,
                     LeakageError, NormalizationError, ParameterError,
                     StabilityError, TraceDriftError)
from .state import (DensityMatrix, GridSpec, ModelParams, WaveFunction,
                    apply_momentum, apply_position, mix, pure_to_density)
from .observables import Moments, moments_of, moments_of_density
from .oracle import (CatSpec, GaussianSpec, check_identities, make_cat,
                     make_gaussian, make_soliton, soliton_constants,
                     soliton_energy)
from .sse import (NoiseStream, StepConfig, StepRecord, drag_increments,
                  record_signal, simulate, step_drag_compact,
                  step_drag_composed, step_plain)
from .master import (MasterConfig, compare_ensemble_to_master,
                     nonlinear_generator, step_master, trace_distance)
from .ensemble import classify_collapse, fit_slope
from .experiments import EnsembleResult, ExperimentSpec, run_experiment

__version__ = "0.1.0"

__all__ = [
    "CatSpec", "ConfigError", "DensityMatrix", "EnsembleResult",
    "ExperimentFailedError", "ExperimentSpec", "FitError", "FrameDragError",
    "GaussianSpec", "GridError", "GridSpec", "InsufficientDataError",
    "LeakageError", "MasterConfig", "ModelParams", "Moments", "NoiseStream",
    "NormalizationError", "ParameterError", "StabilityError", "StepConfig",
    "StepRecord", "TraceDriftError", "WaveFunction", "apply_momentum",
    "apply_position", "check_identities", "classify_collapse",
    "compare_ensemble_to_master", "drag_increments", "fit_slope", "make_cat",
    "make_gaussian", "make_soliton", "mix", "moments_of", "moments_of_density",
    "nonlinear_generator", "pure_to_density", "record_signal", "run_experiment",
    "simulate", "soliton_constants", "soliton_energy", "step_drag_compact",
    "step_drag_composed", "step_master", "step_plain", "trace_distance",
]
