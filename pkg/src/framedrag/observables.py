"""Moments of states: <x>, <p>, sigma^2, the correlation R and <p^2>."""

from dataclasses import asdict, dataclass

import numpy as np

from .state import (EDGE_FRACTION, LEAK_LIMIT, check_leakage, fft, ifft,
                    momentum_action, require_normalized)
from .errors import LeakageError

FIELDS = ("mean_x", "mean_p", "sigma2", "corr_R", "mean_p2")


@dataclass(frozen=True)
class Moments:
    """Expectation values entering the trajectory equations.

    ``sigma2`` is the position variance and ``corr_R`` is
    ``Re<(x-<x>)(p-<p>)> / hbar``.  Fields are floats for a single state and
    arrays for a batch.
    """

    mean_x: float
    mean_p: float
    sigma2: float
    corr_R: float
    mean_p2: float

    @property
    def var_p(self):
        return self.mean_p2 - self.mean_p**2

    def kinetic_energy(self, mass=1.0):
        return self.mean_p2 / (2 * mass)

    def as_dict(self):
        return asdict(self)

    def row(self, i):
        """Moments of the ``i``-th member of a batch."""
        return Moments(*(float(np.asarray(v)[i]) for v in
                         (self.mean_x, self.mean_p, self.sigma2,
                          self.corr_R, self.mean_p2)))


def moments_array(a, grid, hbar=1.0, a_hat=None):
    """Moments of each row of ``a`` (normalization is divided out).

    ``a_hat`` may pass a precomputed ``fft(a)`` to save one transform.
    """
    x = grid.x
    w = a.real**2 + a.imag**2
    n2 = np.sum(w, axis=-1)
    mean_x = np.sum(w * x, axis=-1) / n2
    xc = x - mean_x[..., None]
    sigma2 = np.sum(w * xc**2, axis=-1) / n2

    if a_hat is None:
        a_hat = fft(a)
    wk = a_hat.real**2 + a_hat.imag**2
    nk = np.sum(wk, axis=-1)
    pk = hbar * grid.k
    mean_p = np.sum(wk * pk, axis=-1) / nk
    mean_p2 = np.sum(wk * pk**2, axis=-1) / nk

    pa = ifft(pk * a_hat)
    re_xp = np.sum((np.conj(a) * xc * pa).real, axis=-1) / n2
    # <x_c p> = <x_c p_c> because <x_c> = 0
    corr_R = re_xp / hbar
    return Moments(mean_x, mean_p, sigma2, corr_R, mean_p2)


def moments_of(psi, hbar=1.0, leak_limit=LEAK_LIMIT, edge_fraction=EDGE_FRACTION):
    """Moments of a normalized wave function, guarding against leakage."""
    require_normalized(psi)
    check_leakage(psi, leak_limit, edge_fraction)
    m = moments_array(psi.amplitudes, psi.grid, hbar)
    return Moments(*(float(v) for v in (m.mean_x, m.mean_p, m.sigma2,
                                         m.corr_R, m.mean_p2)))


def _momentum_on_rows(rho, grid, hbar, power=1):
    # p acting from the left: transform along axis 0
    return np.swapaxes(momentum_action(np.swapaxes(rho, 0, 1), grid, hbar, power), 0, 1)


def moments_of_density(rho, hbar=1.0, leak_limit=LEAK_LIMIT,
                       edge_fraction=EDGE_FRACTION):
    """Moments via traces, ``tr(O rho)``, for a density matrix."""
    grid = rho.grid
    r = rho.elements
    diag = np.real(np.diag(r))
    edge = float(np.sum(diag[grid.edge_mask(edge_fraction)]))
    if edge >= leak_limit:
        raise LeakageError(edge, leak_limit)
    tr = np.sum(diag)
    x = grid.x
    mean_x = np.sum(diag * x) / tr
    sigma2 = np.sum(diag * (x - mean_x) ** 2) / tr
    p_r = _momentum_on_rows(r, grid, hbar, 1)
    p2_r = _momentum_on_rows(r, grid, hbar, 2)
    mean_p = float(np.real(np.trace(p_r)) / tr)
    mean_p2 = float(np.real(np.trace(p2_r)) / tr)
    re_xp = float(np.real(np.sum(x * np.diag(p_r))) / tr)
    corr_R = (re_xp - mean_x * mean_p) / hbar
    return Moments(float(mean_x), mean_p, float(sigma2), float(corr_R), mean_p2)


def correlation_action(a, grid, hbar, mean_x, mean_p):
    """Apply ``R_hat = (x_c p_c + p_c x_c) / (2 hbar)`` to ``a``.

    Symmetric ordering makes ``R_hat`` Hermitian; its expectation equals
    ``corr_R``.
    """
    mean_x = np.asarray(mean_x)[..., None]
    xc = grid.x - mean_x
    pc_a = momentum_action(a, grid, hbar, 1, mean_p)
    pc_xc_a = momentum_action(xc * a, grid, hbar, 1, mean_p)
    return (xc * pc_a + pc_xc_a) / (2 * hbar)
