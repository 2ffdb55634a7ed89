import numpy as np
import pytest

from framedrag import (CatSpec, GaussianSpec, GridSpec, ModelParams,
                       StepConfig, check_identities, make_cat, make_gaussian,
                       make_soliton, moments_of, soliton_constants,
                       soliton_energy, step_plain)
from framedrag.errors import FitError, ParameterError
from framedrag.oracle import free_gaussian_sigma2


def test_soliton_constants_closed_form():
    s2, R = soliton_constants(ModelParams(mass=2.0, D=0.25, hbar=1.0))
    assert s2 == pytest.approx(0.5)  # sqrt(1 / (8 * 0.25 * 2))
    assert R == 0.5
    with pytest.raises(ParameterError):
        soliton_constants(ModelParams(D=0.0))


def test_soliton_energy_is_kinetic_energy():
    p = ModelParams(mass=1.0, D=0.125, hbar=1.0)
    g = GridSpec.centered(512, 240.0)
    m = moments_of(make_soliton(p, g))
    assert soliton_energy(p) == pytest.approx(m.mean_p2 / 2, rel=1e-10)
    assert soliton_energy(p) == pytest.approx(0.25)


def test_gaussian_minimum_uncertainty_relation():
    # Robertson-Schroedinger equality sigma^2 var_p - (hbar R)^2 = hbar^2 / 4
    g = GridSpec.centered(512, 60.0)
    for chirp in (-1.5, 0.0, 0.4, 2.0):
        m = moments_of(make_gaussian(GaussianSpec(0.0, 0.2, 1.3, chirp), g))
        assert m.sigma2 * m.var_p - m.corr_R**2 == pytest.approx(0.25, abs=1e-8)


def test_fit_check_rejects_oversized_packets():
    g = GridSpec.centered(64, 10.0)
    with pytest.raises(FitError):
        make_gaussian(GaussianSpec(4.0, 0.0, 1.0), g)
    with pytest.raises(FitError):
        make_gaussian(GaussianSpec(0.0, 30.0, 0.1), g)


def test_cat_weights_and_center_of_mass():
    spec = CatSpec(np.sqrt(0.7), np.sqrt(0.3), GaussianSpec(0.0, 0.0, 0.25),
                   GaussianSpec(10.0, 0.0, 0.25))
    assert spec.weights() == pytest.approx((0.7, 0.3))
    assert spec.center_of_mass() == pytest.approx(3.0)
    g = GridSpec.centered(256, 40.0, center=5.0)
    m = moments_of(make_cat(spec, g))
    assert m.mean_x == pytest.approx(3.0, abs=1e-10)


def test_cat_with_vanishing_branch_is_a_gaussian():
    spec = CatSpec(1.0, 0.0, GaussianSpec(1.0, 0.0, 0.5), GaussianSpec(9.0, 0.0, 0.5))
    g = GridSpec.centered(128, 30.0)
    m = moments_of(make_cat(spec, g))
    assert m.mean_x == pytest.approx(1.0, abs=1e-12)


def test_free_spreading_matches_split_step():
    # at D = 0 the split-step scheme is the exact free propagator
    g = GridSpec.centered(512, 80.0)
    p = ModelParams(D=0.0)
    psi = make_gaussian(GaussianSpec(0.0, 0.0, 1.0), g)
    cfg = StepConfig(0.05)
    for _ in range(40):
        psi = step_plain(psi, p, cfg, 0.0)
    assert moments_of(psi).sigma2 == pytest.approx(free_gaussian_sigma2(1.0, 2.0), rel=1e-10)
    assert free_gaussian_sigma2(1.0, 2.0) == pytest.approx(2.0)


def test_identities_on_random_states():
    from framedrag.acceptance import random_state
    rng = np.random.default_rng(7)
    g = GridSpec.centered(256, 40.0)
    p = ModelParams(D=0.1)
    for _ in range(5):
        rep = check_identities(random_state(rng, g), p)
        assert rep.general_max() < 1e-7


def test_soliton_identities_and_spectral_decay():
    p = ModelParams(D=0.125)
    res = []
    for n in (512, 1024):
        rep = check_identities(make_soliton(p, GridSpec.centered(n, 240.0)), p)
        res.append(rep.soliton_max())
        assert rep.eigenvalue.real == pytest.approx(0.25, rel=1e-6)
    assert res[0] < 1e-6
    assert res[0] > 100 * res[1]


def test_every_gaussian_is_annihilated_but_only_the_soliton_is_stationary():
    p = ModelParams(D=0.125)
    g = GridSpec.centered(512, 240.0)
    rep = check_identities(make_gaussian(GaussianSpec(0.0, 0.0, 2.0, 0.0), g), p)
    assert rep.soliton_kernel < 1e-10
    assert rep.soliton_eigen > 0.1
    assert not rep.passes(soliton=True)
