import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from framedrag import (GaussianSpec, GridSpec, ModelParams, StepConfig,
                       make_gaussian, mix, moments_of, pure_to_density,
                       step_drag_compact, step_drag_composed, step_plain,
                       trace_distance)
from framedrag.master import nonlinear_generator
from framedrag.observables import moments_array
from framedrag.sse import displace, drag_unitary

# wide enough that packet tails never reach the periodic boundary
GRID = GridSpec.centered(256, 48.0)
# coarser grid for explicit steps: the compact drag drift stiffens with p_max
STEP_GRID = GridSpec.centered(128, 24.0)

centers = st.floats(-2.0, 2.0)
momenta = st.floats(-1.0, 1.0)
widths = st.floats(0.5, 2.0)
chirps = st.floats(-1.5, 1.5)
gaussians = st.builds(GaussianSpec, centers, momenta, widths, chirps)
kicks = st.floats(-3.0, 3.0)


@settings(max_examples=40, deadline=None)
@given(gaussians)
def test_gaussians_saturate_uncertainty(spec):
    m = moments_of(make_gaussian(spec, GRID))
    assert abs(m.sigma2 * m.var_p - m.corr_R**2 - 0.25) < 1e-8


@settings(max_examples=30, deadline=None)
@given(gaussians, kicks, st.sampled_from(["plain", "compact", "composed"]))
def test_steps_keep_states_normalized(spec, z, which):
    psi = make_gaussian(spec, STEP_GRID)
    p = ModelParams(D=0.1)
    dt = 5e-4
    step = {"plain": step_plain, "compact": step_drag_compact,
            "composed": step_drag_composed}[which]
    out = step(psi, p, StepConfig(dt), z * np.sqrt(dt))
    assert abs(out.norm() - 1) < 1e-12


@settings(max_examples=30, deadline=None)
@given(gaussians, kicks)
def test_compact_drag_momentum_conserved(spec, z):
    psi = make_gaussian(spec, STEP_GRID)
    dt = 5e-4
    m0 = moments_of(psi)
    m = moments_of(step_drag_compact(psi, ModelParams(D=0.1), StepConfig(dt), z * np.sqrt(dt)))
    assert abs(m.mean_p - m0.mean_p) < 1e-10
    assert abs(m.mean_x - m0.mean_x - m0.mean_p * dt) < 1e-10


@settings(max_examples=30, deadline=None)
@given(gaussians, st.floats(-0.5, 0.5))
def test_drag_unitary_is_unitary(spec, theta):
    # the factor order only commutes up to the grid's [x, p] error, which is
    # set by the amplitude at the box edge
    g = GRID
    a = make_gaussian(spec, g).amplitudes
    m = moments_array(a, g)
    out = drag_unitary(a, g, 1.0, m, theta)
    assert abs(np.sum(np.abs(out) ** 2) * g.dx - 1) < 1e-12
    back = drag_unitary(out, g, 1.0, m, -theta)
    assert np.max(np.abs(back - a)) < 1e-10


@settings(max_examples=30, deadline=None)
@given(gaussians, st.floats(-1.0, 1.0), st.floats(-0.5, 0.5))
def test_displacement_preserves_shape(spec, shift, boost):
    a = make_gaussian(spec, GRID).amplitudes
    m0 = moments_array(a, GRID)
    m = moments_array(displace(a, GRID, 1.0, shift, boost), GRID)
    assert abs(float(m.sigma2 - m0.sigma2)) < 1e-10
    assert abs(float(m.corr_R - m0.corr_R)) < 1e-10
    assert abs(float(m.mean_x - m0.mean_x) - shift) < 1e-10


@settings(max_examples=25, deadline=None)
@given(gaussians, gaussians, st.floats(0.0, 1.0))
def test_trace_distance_is_a_bounded_metric(s1, s2, w):
    a = pure_to_density(make_gaussian(s1, GRID))
    b = pure_to_density(make_gaussian(s2, GRID))
    c = mix([a, b], [w, 1 - w])
    dab = trace_distance(a, b)
    assert -1e-12 <= dab <= 1 + 1e-12
    assert abs(dab - trace_distance(b, a)) < 1e-12
    assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12
    # convexity: distance to the mixture scales with the weight of b
    assert abs(trace_distance(a, c) - (1 - w) * dab) < 1e-9


@settings(max_examples=20, deadline=None)
@given(gaussians, st.floats(0.01, 1.0))
def test_nonlinear_generator_preserves_trace_and_hermiticity(spec, D):
    g = GridSpec.centered(64, 24.0)
    gen = nonlinear_generator(make_gaussian(spec, g), ModelParams(D=D))
    assert abs(gen.trace()) < 1e-10
    assert gen.hermiticity_error() < 1e-10
