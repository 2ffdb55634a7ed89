import numpy as np
import pytest

from framedrag import (GaussianSpec, GridSpec, ModelParams, NoiseStream,
                       StepConfig, make_gaussian, make_soliton, moments_of,
                       record_signal, simulate, step_drag_compact,
                       step_drag_composed, step_plain)
from framedrag.errors import ParameterError, StabilityError
from framedrag.sse import advance, drag_unitary, displace, stability_violations

GRID = GridSpec.centered(128, 24.0)
PARAMS = ModelParams(D=0.1)


def packet():
    return make_gaussian(GaussianSpec(0.3, 0.5, 1.0, 0.4), GRID)


def test_step_config_validation():
    with pytest.raises(ParameterError):
        StepConfig(0.0)
    with pytest.raises(ParameterError):
        StepConfig(0.1, scheme="rk4")


def test_zero_noise_zero_D_is_free_evolution():
    psi = packet()
    p0 = ModelParams(D=0.0)
    cfg = StepConfig(0.01)
    a = step_plain(psi, p0, cfg, 0.0)
    b = step_drag_compact(psi, p0, cfg, 0.0)
    c = step_drag_composed(psi, p0, cfg, 0.7)
    np.testing.assert_allclose(b.amplitudes, a.amplitudes, atol=1e-14)
    np.testing.assert_allclose(c.amplitudes, a.amplitudes, atol=1e-14)


def test_plain_step_moment_laws():
    # d<x> = <p>/M dt + (sigma^2/hbar) sqrt(8D) dW,  d<p> = R sqrt(8D) dW
    psi = packet()
    m0 = moments_of(psi)
    for dt in (1e-3, 1e-4):
        dW = 0.5 * np.sqrt(dt)
        m = moments_of(step_plain(psi, PARAMS, StepConfig(dt), dW))
        kx = m0.mean_p * dt + m0.sigma2 * np.sqrt(8 * PARAMS.D) * dW
        kp = m0.corr_R * np.sqrt(8 * PARAMS.D) * dW
        assert abs(m.mean_x - m0.mean_x - kx) < 2 * dt**1.5 * 30
        assert abs(m.mean_p - m0.mean_p - kp) < 2 * dt**1.5 * 30


def test_compact_drag_step_has_no_stochastic_kick():
    psi = packet()
    m0 = moments_of(psi)
    dt = 1e-3
    m = moments_of(step_drag_compact(psi, PARAMS, StepConfig(dt), 0.9 * np.sqrt(dt)))
    assert m.mean_x - m0.mean_x == pytest.approx(m0.mean_p * dt, abs=1e-12)
    assert m.mean_p == pytest.approx(m0.mean_p, abs=1e-12)


def test_composed_drag_cancels_kick_on_soliton():
    p = ModelParams(D=0.125)
    psi = make_soliton(p, GridSpec.centered(128, 24.0))
    dt = 1e-3
    m = moments_of(step_drag_composed(psi, p, StepConfig(dt), 1.5 * np.sqrt(dt)))
    assert abs(m.mean_x) < 5 * dt
    assert abs(m.mean_p) < 5 * dt
    plain = moments_of(step_plain(psi, p, StepConfig(dt), 1.5 * np.sqrt(dt)))
    assert abs(plain.mean_x) > 10 * abs(m.mean_x)


def test_matched_kick_keeps_classical_path_exactly():
    psi = packet()
    m0 = moments_of(psi)
    dt = 1e-3
    out = step_drag_composed(psi, PARAMS, StepConfig(dt), 1.2 * np.sqrt(dt), kick="matched")
    m = moments_of(out)
    assert m.mean_x == pytest.approx(m0.mean_x + m0.mean_p * dt, abs=1e-12)
    assert m.mean_p == pytest.approx(m0.mean_p, abs=1e-12)


@pytest.mark.parametrize("dynamics", ["plain", "drag_compact"])
def test_norm_drift_is_second_order(dynamics):
    # expectation over dW by two-point Gauss-Hermite (dW = +-sqrt(dt))
    psi = packet()
    drifts = []
    for dt in (1e-3, 5e-4, 2.5e-4):
        cfg = StepConfig(dt, renormalize=False)
        d = [advance(psi.amplitudes, GRID, PARAMS, cfg, s * np.sqrt(dt), dynamics)[2]
             for s in (1, -1)]
        drifts.append(np.mean(d))
    assert drifts[0] / drifts[1] == pytest.approx(4.0, rel=1e-3)
    assert drifts[1] / drifts[2] == pytest.approx(4.0, rel=1e-3)


def test_composed_vs_compact_order():
    from framedrag.experiments import ExperimentSpec, run_experiment
    spec = ExperimentSpec("composition_order", params=ModelParams(D=0.125), grid=GRID,
                          initial=GaussianSpec(0.0, 0.5, 1.0, 0.6), n_traj=10,
                          horizon=1e-3, dt=1e-3, options={"levels": 4})
    s = run_experiment(spec).summary
    assert s["order"] >= 1.4


def test_composed_without_correction_is_first_order():
    psi = packet()
    gaps = []
    for dt in (1e-3, 5e-4, 2.5e-4):
        dW = 1.3 * np.sqrt(dt)
        a = step_drag_compact(psi, PARAMS, StepConfig(dt), dW)
        b = step_drag_composed(psi, PARAMS, StepConfig(dt), dW, ito_correction=False)
        gaps.append(np.sqrt(np.sum(np.abs(a.amplitudes - b.amplitudes) ** 2) * GRID.dx))
    order = np.polyfit(np.log([1e-3, 5e-4, 2.5e-4]), np.log(gaps), 1)[0]
    assert order == pytest.approx(1.0, abs=0.1)


def test_drag_unitary_preserves_norm_and_moves_moments():
    psi = packet()
    a = psi.amplitudes
    from framedrag.observables import moments_array
    m = moments_array(a, GRID)
    theta = 0.3
    out = drag_unitary(a, GRID, 1.0, m, theta)
    assert np.sum(np.abs(out) ** 2) * GRID.dx == pytest.approx(1.0, abs=1e-13)
    m1 = moments_array(out, GRID)
    # exp(-i theta G): <x> moves by -theta sigma^2 / hbar, <p> by -theta R
    assert float(m1.mean_x - m.mean_x) == pytest.approx(-theta * float(m.sigma2), rel=1e-9)
    assert float(m1.mean_p - m.mean_p) == pytest.approx(-theta * float(m.corr_R), rel=1e-9)


def test_displace_shifts_and_boosts():
    psi = packet()
    m0 = moments_of(psi)
    out = psi.with_amplitudes(displace(psi.amplitudes, GRID, 1.0, 0.7, -0.2))
    m = moments_of(out)
    assert m.mean_x == pytest.approx(m0.mean_x + 0.7, abs=1e-12)
    assert m.mean_p == pytest.approx(m0.mean_p - 0.2, abs=1e-12)
    assert m.sigma2 == pytest.approx(m0.sigma2, abs=1e-12)


def test_record_signal():
    m = moments_of(packet())
    assert record_signal(m, 0.0, 0.01, PARAMS) == m.mean_x
    assert record_signal(m, 0.01, 0.01, PARAMS) == pytest.approx(m.mean_x + 1 / np.sqrt(0.8))
    with pytest.raises(ParameterError):
        record_signal(m, 0.0, 0.01, ModelParams(D=0.0))


def test_signal_average_tracks_expectation():
    # time average of the signal over n steps: error shrinks like 1/sqrt(n)
    p = ModelParams(D=0.125)
    psi = make_soliton(p, GRID)
    dt = 1e-3
    recs = simulate(psi, p, StepConfig(dt), 4000, NoiseStream(3, 0, dt),
                    dynamics="drag_composed", signal=True, kick="matched")
    sig = np.array([r.signal for r in recs[1:]])
    x = np.array([r.moments.mean_x for r in recs[:-1]])
    err = np.mean(sig - x)
    # white-noise term has std hbar / sqrt(8 D dt n)
    assert abs(err) < 3 / np.sqrt(8 * p.D * dt * sig.size)


def test_stability_guard():
    g = GridSpec.centered(256, 200.0)
    p = ModelParams(D=1.0)
    psi = make_gaussian(GaussianSpec(0.0, 0.0, 1.0), g)
    with pytest.raises(StabilityError):
        step_plain(psi, p, StepConfig(0.01), 0.0)
    m = moments_of(psi)
    assert stability_violations(g, p, StepConfig(1e-5), "plain", m) == [None]


def test_euler_maruyama_grid_bound():
    psi = packet()
    with pytest.raises(StabilityError):
        step_plain(psi, PARAMS, StepConfig(0.1, scheme="euler_maruyama"), 0.0)


def test_noise_stream_reproducible_and_coarsens():
    a = NoiseStream(5, 2, 0.01).draw(10)
    b = NoiseStream(5, 2, 0.01).draw(10)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, NoiseStream(5, 3, 0.01).draw(10))
    fine = NoiseStream(5, 2, 0.01).draw(8)
    coarse = NoiseStream(5, 2, 0.04, substeps=4).draw(2)
    np.testing.assert_allclose(coarse, fine.reshape(2, 4).sum(axis=1), rtol=1e-14)


def test_simulate_records_and_determinism():
    psi = packet()
    run = lambda: simulate(psi, PARAMS, StepConfig(1e-3), 100, NoiseStream(1, 0, 1e-3),
                           record_every=10)
    r1, r2 = run(), run()
    assert len(r1) == 11
    assert r1[-1].time == pytest.approx(0.1)
    assert [r.moments for r in r1] == [r.moments for r in r2]


def _strong_errors(scheme, levels=(8, 16, 32, 64), n_ref=1024, T=0.2, paths=8):
    psi = packet()

    def run(n, path):
        a = psi.amplitudes
        noise = NoiseStream(9, path, T / n, substeps=n_ref // n)
        cfg = StepConfig(T / n, scheme if n < n_ref else "splitstep_milstein")
        for _ in range(n):
            a = advance(a, GRID, PARAMS, cfg, next(noise))[0]
        return a

    sq = {n: [] for n in levels}
    for path in range(paths):
        ref = run(n_ref, path)
        for n in levels:
            sq[n].append(np.sum(np.abs(run(n, path) - ref) ** 2) * GRID.dx)
    err = np.sqrt([np.mean(sq[n]) for n in levels])
    order = np.polyfit(np.log([T / n for n in levels]), np.log(err), 1)[0]
    return err, order


def test_milstein_beats_euler_maruyama_in_strong_error():
    em, em_order = _strong_errors("splitstep_em")
    mil, mil_order = _strong_errors("splitstep_milstein")
    assert np.all(mil < em)
    assert mil_order > 0.7
    assert mil_order > em_order + 0.3
