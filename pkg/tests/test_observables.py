import numpy as np
import pytest

from framedrag import (GaussianSpec, GridSpec, make_gaussian, moments_of,
                       moments_of_density, pure_to_density)
from framedrag.errors import LeakageError
from framedrag.observables import moments_array


def test_gaussian_moments_closed_form():
    # chirped Gaussian: R = chirp / 2, var_p = hbar^2 (1 + chirp^2) / (4 sigma^2)
    g = GridSpec.centered(512, 60.0)
    hbar = 0.7
    spec = GaussianSpec(center=1.5, momentum=-0.8, sigma2=2.0, chirp=0.9)
    m = moments_of(make_gaussian(spec, g, hbar), hbar)
    assert m.mean_x == pytest.approx(1.5, abs=1e-12)
    assert m.mean_p == pytest.approx(-0.8, abs=1e-12)
    assert m.sigma2 == pytest.approx(2.0, rel=1e-12)
    assert m.corr_R == pytest.approx(0.45, rel=1e-12)
    assert m.var_p == pytest.approx(hbar**2 * (1 + 0.81) / 8.0, rel=1e-12)


def test_moments_shift_covariance():
    g = GridSpec.centered(256, 40.0)
    a = moments_of(make_gaussian(GaussianSpec(0.0, 0.3, 1.0, 0.2), g))
    b = moments_of(make_gaussian(GaussianSpec(2.0, 0.3, 1.0, 0.2), g))
    assert b.mean_x - a.mean_x == pytest.approx(2.0, abs=1e-12)
    assert b.sigma2 == pytest.approx(a.sigma2, abs=1e-12)
    assert b.corr_R == pytest.approx(a.corr_R, abs=1e-12)


def test_density_moments_match_pure_moments():
    g = GridSpec.centered(128, 24.0)
    psi = make_gaussian(GaussianSpec(0.5, 0.4, 1.2, -0.6), g)
    m = moments_of(psi)
    md = moments_of_density(pure_to_density(psi))
    for f in ("mean_x", "mean_p", "sigma2", "corr_R", "mean_p2"):
        assert getattr(md, f) == pytest.approx(getattr(m, f), abs=1e-10)


def test_batch_moments_rowwise():
    g = GridSpec.centered(128, 24.0)
    rows = np.stack([make_gaussian(GaussianSpec(c, 0.0, 1.0), g).amplitudes
                     for c in (-1.0, 0.0, 2.0)])
    m = moments_array(rows, g)
    np.testing.assert_allclose(m.mean_x, [-1.0, 0.0, 2.0], atol=1e-12)
    assert m.row(2).mean_x == pytest.approx(2.0)


def test_moments_refuse_leaking_state():
    g = GridSpec.centered(64, 8.0)
    from framedrag import WaveFunction
    psi = WaveFunction(g, np.ones(64)).normalized()
    with pytest.raises(LeakageError):
        moments_of(psi)
