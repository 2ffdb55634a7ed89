import numpy as np
import pytest

from framedrag import (DensityMatrix, GaussianSpec, GridSpec, MasterConfig,
                       ModelParams, StepConfig, make_gaussian, make_soliton,
                       moments_of_density, nonlinear_generator,
                       pure_to_density, step_master, step_plain,
                       trace_distance)
from framedrag.ensemble import run_batch
from framedrag.errors import GridError, NormalizationError
from framedrag.master import (energy_rate, ensemble_density, evolve_master,
                              frozen_generator_iteration)

GRID = GridSpec.centered(64, 16.0)


def packet(chirp=0.2):
    return make_gaussian(GaussianSpec(0.0, 0.3, 1.0, chirp), GRID)


def test_energy_grows_at_2D():
    p = ModelParams(D=0.1)
    _, states = evolve_master(pure_to_density(packet()), p, MasterConfig(0.01), 50, 10)
    p2 = np.array([moments_of_density(r).mean_p2 for r in states])
    np.testing.assert_allclose(np.diff(p2) / 0.1, 0.2, atol=1e-8)


def test_heavy_particle_keeps_diagonal():
    # [x, [x, rho]] has a zero diagonal; the free part vanishes as M -> infinity
    p = ModelParams(mass=1e12, D=0.5)
    rho = pure_to_density(packet())
    out = step_master(rho, p, MasterConfig(0.05))
    np.testing.assert_allclose(np.diag(out.elements), np.diag(rho.elements), atol=1e-12)
    assert out.purity() < rho.purity()


def test_unitary_limit_matches_pure_state():
    p = ModelParams(D=0.0)
    psi = packet()
    _, states = evolve_master(pure_to_density(psi), p, MasterConfig(0.01), 50)
    for _ in range(5):
        psi = step_plain(psi, p, StepConfig(0.1), 0.0)
    assert trace_distance(states[-1], pure_to_density(psi)) < 1e-8


def test_positivity_and_trace_preserved():
    p = ModelParams(D=0.3)
    _, states = evolve_master(pure_to_density(packet()), p, MasterConfig(0.01), 100, 25)
    for r in states:
        assert r.min_eigenvalue() > -1e-10
        assert r.trace().real == pytest.approx(1.0, abs=1e-12)
    assert states[-1].purity() < 0.9


def test_master_grid_cap():
    g = GridSpec.centered(512, 40.0)
    rho = DensityMatrix(g, np.eye(512) / 512)
    with pytest.raises(GridError):
        step_master(rho, ModelParams(D=0.1), MasterConfig(0.01))


def test_evolve_rejects_invalid_density():
    with pytest.raises(NormalizationError):
        evolve_master(DensityMatrix(GRID, 2 * np.eye(64) / 64), ModelParams(D=0.1),
                      MasterConfig(0.01), 1)


def test_nonlinear_generator_traceless_and_hermitian():
    p = ModelParams(D=0.2)
    gen = nonlinear_generator(packet(0.7), p)
    assert abs(gen.trace()) < 1e-12
    assert gen.hermiticity_error() < 1e-12


@pytest.mark.parametrize("chirp", [0.0, 0.4, -1.0])
def test_drag_energy_rate_law(chirp):
    # d<p^2>/dt = 2D (1 - 4 R^2) with R = chirp / 2 for a Gaussian
    g = GridSpec.centered(256, 40.0)
    p = ModelParams(D=0.2)
    psi = make_gaussian(GaussianSpec(0.0, 0.0, 2.0, chirp), g)
    rate = energy_rate(nonlinear_generator(psi, p), p)
    assert rate == pytest.approx(2 * p.D * (1 - chirp**2), abs=1e-8)


def test_soliton_is_stationary_under_drag_generator():
    p = ModelParams(D=0.125)
    g = GridSpec.centered(256, 48.0)
    gen = nonlinear_generator(make_soliton(p, g), p)
    assert np.max(np.abs(gen.elements)) < 1e-10


def test_trace_distance_basics():
    g = GridSpec.centered(128, 32.0)
    a = pure_to_density(make_gaussian(GaussianSpec(-6.0, 0.0, 0.5), g))
    b = pure_to_density(make_gaussian(GaussianSpec(6.0, 0.0, 0.5), g))
    assert trace_distance(a, a) == pytest.approx(0.0, abs=1e-12)
    assert trace_distance(a, b) == pytest.approx(1.0, abs=1e-10)
    assert trace_distance(a, b) == pytest.approx(trace_distance(b, a))


def test_ensemble_average_approaches_master_solution():
    p = ModelParams(D=0.1)
    psi = packet()
    _, states = evolve_master(pure_to_density(psi), p, MasterConfig(0.01), 100)
    dist = []
    for n in (50, 800):
        b = run_batch(psi, p, StepConfig(0.01), 100, n_traj=n, seed=1, keep_final=True)
        dist.append(trace_distance(ensemble_density(b.final, GRID), states[-1]))
    # Monte-Carlo error falls like 1/sqrt(N): a factor of four for 16x more runs
    assert dist[1] < dist[0] / 2.5


def test_frozen_generator_iteration_stays_a_density_matrix():
    from framedrag import CatSpec, make_cat
    p = ModelParams(D=0.1)
    cat = make_cat(CatSpec(1.0, 1.0, GaussianSpec(-1.5, 0.0, 0.3),
                           GaussianSpec(1.5, 0.0, 0.3)), GRID)
    _, states = frozen_generator_iteration(cat, p, MasterConfig(0.002), 20, 10)
    assert states[-1].trace().real == pytest.approx(1.0)
    assert states[-1].hermiticity_error() < 1e-12
