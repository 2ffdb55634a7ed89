"""Closed-form states and executable versions of the drag-SSE identities.

Packets are chirped Gaussians

    psi(x) ~ exp(-(1 - i c)(x - x0)^2 / (4 sigma^2) + i p0 x / hbar)

whose moments are known exactly: <x> = x0, <p> = p0, variance sigma^2 and
R = c/2.  ``c = 1`` with ``sigma^2 = sqrt(hbar^3 / 8DM)`` is the asymptotic
soliton of the collapse equation.
"""

from dataclasses import dataclass

import numpy as np

from .errors import FitError, ParameterError
from .observables import moments_array
from .operators import drag_hamiltonian, free_hamiltonian, lindblad
from .state import (WaveFunction, inner, momentum_action, normalize,
                    require_normalized)

FIT_SIGMAS = 6.0


@dataclass(frozen=True)
class GaussianSpec:
    center: float = 0.0
    momentum: float = 0.0
    sigma2: float = 1.0
    chirp: float = 0.0

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ParameterError(f"sigma2 must be positive, got {self.sigma2}")


@dataclass(frozen=True)
class CatSpec:
    """Superposition ``alpha |branch1> + beta |branch2>``."""

    alpha: complex
    beta: complex
    branch1: GaussianSpec
    branch2: GaussianSpec

    def weights(self):
        """Normalized Born weights ``(|alpha|^2, |beta|^2)``."""
        a2, b2 = abs(self.alpha) ** 2, abs(self.beta) ** 2
        total = a2 + b2
        if total == 0:
            raise ParameterError("alpha and beta cannot both vanish")
        return a2 / total, b2 / total

    def center_of_mass(self):
        w1, w2 = self.weights()
        return w1 * self.branch1.center + w2 * self.branch2.center


def _check_fit(spec, grid, hbar):
    half = FIT_SIGMAS * np.sqrt(spec.sigma2)
    if spec.center - half < grid.x_min or spec.center + half > grid.x_max - grid.dx:
        raise FitError(
            f"packet at {spec.center} with sigma {np.sqrt(spec.sigma2):.3g} "
            f"does not fit in [{grid.x_min}, {grid.x_max})")
    sigma_p = hbar * np.sqrt(1 + spec.chirp**2) / (2 * np.sqrt(spec.sigma2))
    p_max = hbar * np.pi / grid.dx
    if abs(spec.momentum) + FIT_SIGMAS * sigma_p > p_max:
        raise FitError(
            f"momentum content {abs(spec.momentum) + FIT_SIGMAS * sigma_p:.3g} "
            f"exceeds the grid cutoff {p_max:.3g}")


def gaussian_amplitudes(spec, grid, hbar=1.0):
    """Continuum-normalized chirped Gaussian sampled on the grid."""
    x = grid.x
    s2 = spec.sigma2
    expo = (-(1 - 1j * spec.chirp) * (x - spec.center) ** 2 / (4 * s2)
            + 1j * spec.momentum * x / hbar)
    return (2 * np.pi * s2) ** -0.25 * np.exp(expo)


def make_gaussian(spec, grid, hbar=1.0):
    _check_fit(spec, grid, hbar)
    return WaveFunction(grid, normalize(gaussian_amplitudes(spec, grid, hbar), grid))


def soliton_constants(params):
    """Return ``(sigma2_inf, R_inf) = (sqrt(hbar^3 / 8 D M), 1/2)``."""
    if params.D <= 0:
        raise ParameterError("the soliton needs D > 0")
    return float(np.sqrt(params.hbar**3 / (8 * params.D * params.mass))), 0.5


def soliton_energy(params):
    """Eigenvalue of ``H + H_psi`` on the standing soliton.

    Equals the soliton's kinetic energy ``var_p / 2M = hbar^2 / (4 M sigma2)``
    because ``<H_psi> = 0``.
    """
    s2, _ = soliton_constants(params)
    return params.hbar**2 / (4 * params.mass * s2)


def soliton_spec(params, center=0.0, momentum=0.0):
    s2, R = soliton_constants(params)
    return GaussianSpec(center, momentum, s2, 2 * R)


def make_soliton(params, grid, center=0.0, momentum=0.0):
    """Standing or (boosted and shifted) traveling soliton."""
    return make_gaussian(soliton_spec(params, center, momentum), grid, params.hbar)


def make_cat(spec, grid, hbar=1.0):
    w1, w2 = spec.weights()
    amp = np.zeros(grid.n_points, dtype=complex)
    for w, coeff, branch in ((w1, spec.alpha, spec.branch1),
                             (w2, spec.beta, spec.branch2)):
        if w == 0:
            continue
        _check_fit(branch, grid, hbar)
        phase = coeff / abs(coeff)
        amp += np.sqrt(w) * phase * normalize(gaussian_amplitudes(branch, grid, hbar), grid)
    return WaveFunction(grid, normalize(amp, grid))


def free_gaussian_sigma2(sigma2_0, t, hbar=1.0, mass=1.0):
    """Variance of an unchirped free Gaussian after time ``t``."""
    return sigma2_0 + (hbar * t / (2 * mass * np.sqrt(sigma2_0))) ** 2


# ---------------------------------------------------------------------------
# identities


@dataclass(frozen=True)
class IdentityReport:
    """Scaled residuals of the drag-SSE identities on one state.

    ``anticommutator``   <{x_c, p}> = 2 hbar R
    ``pp_dissipator``    <2 A^+ p^2 A - {A^+A, p^2}> = 2hbar^2(1+4R^2) - 8 sigma^2 <p_c p>
    ``x_noise``          <x A + A^+ x> = 0
    ``p_noise``          <p A + A^+ p> = 0
    ``soliton_kernel``   ||A_c psi|| / sigma                       (soliton only)
    ``soliton_eigen``    ||(H + H_psi) psi - E psi|| / E           (soliton only)
    """

    anticommutator: float
    pp_dissipator: float
    x_noise: float
    p_noise: float
    soliton_kernel: float
    soliton_eigen: float
    eigenvalue: complex

    def general_max(self):
        return max(self.anticommutator, self.pp_dissipator, self.x_noise, self.p_noise)

    def soliton_max(self):
        return max(self.soliton_kernel, self.soliton_eigen)

    def passes(self, general_tol=1e-7, soliton_tol=1e-6, soliton=False):
        ok = self.general_max() < general_tol
        if soliton:
            ok = ok and self.soliton_max() < soliton_tol
        return ok


def check_identities(psi, params):
    """Evaluate every identity on ``psi``; see :class:`IdentityReport`."""
    require_normalized(psi)
    grid, hbar = psi.grid, params.hbar
    a = psi.amplitudes
    m = moments_array(a, grid, hbar)
    R, s2 = float(m.corr_R), float(m.sigma2)
    var_p = float(m.mean_p2 - m.mean_p**2)
    xc = grid.x - float(m.mean_x)

    p_a = momentum_action(a, grid, hbar, 1)
    p2_a = momentum_action(a, grid, hbar, 2)

    # (a) <{x_c, p}> = 2 Re <x_c psi | p psi>
    anti = 2 * inner(xc * a, p_a, grid).real
    res_a = abs(anti - 2 * hbar * R) / hbar

    # (b)
    A_a = lindblad(a, grid, hbar, m)
    A_p2a = lindblad(p2_a, grid, hbar, m)
    lhs_b = (2 * inner(A_a, momentum_action(A_a, grid, hbar, 2), grid)
             - 2 * inner(A_a, A_p2a, grid).real).real
    rhs_b = 2 * hbar**2 * (1 + 4 * R**2) - 8 * s2 * var_p
    res_b = abs(lhs_b - rhs_b) / (hbar**2 * (1 + 4 * R**2) + 8 * s2 * var_p)

    # (c) <x A + A^+ x> = 2 Re <x psi | A psi>
    x_noise = 2 * inner(grid.x * a, A_a, grid).real
    p_noise = 2 * inner(p_a, A_a, grid).real
    res_cx = abs(x_noise) / (s2 * (1 + abs(R)) + np.sqrt(s2) * abs(float(m.mean_x)))
    res_cp = abs(p_noise) / (hbar * (1 + abs(R)) + np.sqrt(s2) * abs(float(m.mean_p)))

    # (d) soliton kernel and eigenvector
    kernel = np.sqrt(np.sum(np.abs(A_a) ** 2) * grid.dx) / np.sqrt(s2)
    Ha = free_hamiltonian(a, grid, params) + drag_hamiltonian(a, grid, params, m)
    eig = complex(inner(a, Ha, grid))
    if params.D > 0:
        energy = soliton_energy(params)
        eigen = np.sqrt(np.sum(np.abs(Ha - energy * a) ** 2) * grid.dx) / energy
    else:
        eigen = np.inf
    return IdentityReport(float(res_a), float(res_b), float(res_cx),
                          float(res_cp), float(kernel), float(eigen), eig)
