"""Itô time steppers for the collapse SSE and its frame-drag variant.

Three equations share one driver:

* plain SSE
      dpsi = -(i/hbar) H psi dt - (D/hbar^2) x_c^2 psi dt + (sqrt(2D)/hbar) x_c psi dW
* drag SSE, compact form
      dpsi = -(i/hbar)(H + H_psi) psi dt - (D/hbar^2) A_c^+ A_c psi dt
             + (sqrt(2D)/hbar) A_c psi dW
* drag SSE as a composition: one plain step followed by the frame
  shift-and-boost unitary exp(-(i/hbar) G sqrt(8D) dW), G = R x_c - sigma^2 p_c/hbar.

All state-dependent coefficients are frozen at the pre-step state (Itô).
Schemes:

``euler_maruyama``      everything explicit, including the free Hamiltonian
``splitstep_em``        stochastic/dissipative part by Euler-Maruyama, then the
                        exact spectral free propagator (default)
``splitstep_milstein``  as above with the derivative-free (Platen) Milstein
                        correction; strong order one
"""

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, StabilityError
from .observables import Moments, moments_array
from .operators import (centered_x, drag_generator, drag_hamiltonian,
                        free_hamiltonian, lindblad, lindblad_dag)
from .state import (check_leakage, fft, free_propagator, ifft, norm_sq,
                    normalize, require_normalized)

SCHEMES = ("euler_maruyama", "splitstep_em", "splitstep_milstein")
DYNAMICS = ("plain", "drag_compact", "drag_composed")
DRAG_STABILITY_LIMIT = 0.4
COLLAPSE_STABILITY_LIMIT = 1.0


@dataclass(frozen=True)
class StepConfig:
    dt: float
    scheme: str = "splitstep_em"
    renormalize: bool = True

    def __post_init__(self):
        if not self.dt > 0:
            raise ParameterError(f"dt must be positive, got {self.dt}")
        if self.scheme not in SCHEMES:
            raise ParameterError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")


class NoiseStream:
    """Reproducible Wiener increments for one trajectory.

    The generator is seeded from ``SeedSequence(seed, spawn_key=(trajectory,))``
    so every trajectory owns an independent stream that does not depend on
    how trajectories are scheduled.  With ``substeps > 1`` each increment is
    the sum of ``substeps`` finer increments; streams with the same seed and
    ``dt / substeps`` therefore sample the same Brownian path at different
    resolutions.
    """

    def __init__(self, seed, trajectory=0, dt=1.0, substeps=1):
        if not dt > 0:
            raise ParameterError("dt must be positive")
        self.seed = int(seed)
        self.trajectory = int(trajectory)
        self.dt = float(dt)
        self.substeps = int(substeps)
        self.counter = 0
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.trajectory,))
        self._rng = np.random.Generator(np.random.PCG64(ss))

    def draw(self, n):
        h = self.dt / self.substeps
        fine = self._rng.standard_normal((n, self.substeps)) * np.sqrt(h)
        self.counter += n
        return fine.sum(axis=1) if self.substeps > 1 else fine[:, 0]

    def __next__(self):
        return float(self.draw(1)[0])

    def __iter__(self):
        return self


@dataclass(frozen=True)
class StepRecord:
    time: float
    moments: Moments
    norm_drift: float
    signal: float | None = None


# ---------------------------------------------------------------------------
# stability


def collapse_stability_number(grid, params, mean_x, dt):
    """``dt * D x_c^2 / hbar^2`` at the farthest grid point."""
    xc = np.maximum(np.abs(grid.x_min - mean_x), np.abs(grid.x_max - mean_x))
    return dt * params.D * xc**2 / params.hbar**2


def drag_stability_number(grid, params, m, dt):
    """``dt`` times the largest dissipation rate of the compact drag drift.

    The real part of the frozen drift symbol is
    ``-(D/hbar^2) (x_c^2 + 4 (R x_c - sigma^2 p_c / hbar)^2)``; its maximum
    over the grid box sits at a corner.  Explicit steps stay bounded while
    the returned number is below about 0.4.
    """
    hbar = params.hbar
    p_max = hbar * np.pi / grid.dx
    mean_x = np.asarray(m.mean_x)
    mean_p = np.asarray(m.mean_p)
    worst = 0.0
    for x_edge in (grid.x_min, grid.x_max):
        for p_edge in (-p_max, p_max):
            xc = x_edge - mean_x
            pc = p_edge - mean_p
            g = m.corr_R * xc - m.sigma2 * pc / hbar
            worst = np.maximum(worst, xc**2 + 4 * g**2)
    return dt * params.D / hbar**2 * worst


def check_scheme(grid, params, cfg):
    """Grid-level restriction of the fully explicit scheme."""
    limit = grid.dx**2 * params.mass / params.hbar
    if cfg.scheme == "euler_maruyama" and not cfg.dt < limit:
        raise StabilityError(
            f"euler_maruyama needs dt < dx^2 M / hbar = {limit:.3g}, got {cfg.dt}")


def stability_violations(grid, params, cfg, dynamics, m):
    """Per-row messages (``None`` when stable) for the state-dependent bounds."""
    n_rows = np.asarray(m.mean_x).size
    out = [None] * n_rows
    if params.D == 0:
        return out
    collapse = np.atleast_1d(collapse_stability_number(grid, params, m.mean_x, cfg.dt))
    drag = (np.atleast_1d(drag_stability_number(grid, params, m, cfg.dt))
            if dynamics == "drag_compact" else np.zeros(n_rows))
    for i in range(n_rows):
        if collapse[i] > COLLAPSE_STABILITY_LIMIT:
            out[i] = f"collapse term: dt D x_c^2 / hbar^2 = {collapse[i]:.3g} at the grid edge"
        elif drag[i] > DRAG_STABILITY_LIMIT:
            out[i] = (f"compact drag drift: stability number {drag[i]:.3g} > "
                      f"{DRAG_STABILITY_LIMIT}; reduce dt or coarsen the grid")
    return out


def _check_stability(grid, params, cfg, dynamics, m):
    check_scheme(grid, params, cfg)
    for msg in stability_violations(grid, params, cfg, dynamics, m):
        if msg is not None:
            raise StabilityError(msg)


# ---------------------------------------------------------------------------
# coefficient functions (free Hamiltonian excluded)

_Center = namedtuple("_Center", "mean_x")


def _center_of(a, grid):
    w = a.real**2 + a.imag**2
    return _Center(np.sum(w * grid.x, axis=-1) / np.sum(w, axis=-1))


def plain_coefficients(a, grid, params, m):
    """Drift and diffusion of the plain SSE without the free Hamiltonian."""
    xc_a = centered_x(a, grid, m)
    drift = -(params.D / params.hbar**2) * centered_x(xc_a, grid, m)
    return drift, np.sqrt(2 * params.D) / params.hbar * xc_a


def drag_coefficients(a, grid, params, m):
    """Drift and diffusion of the compact drag SSE without ``H``."""
    hbar = params.hbar
    A_a = lindblad(a, grid, hbar, m)
    drift = (-1j / hbar * drag_hamiltonian(a, grid, params, m)
             - params.D / hbar**2 * lindblad_dag(A_a, grid, hbar, m))
    return drift, np.sqrt(2 * params.D) / hbar * A_a


def _moments_for(dynamics, a, grid, hbar):
    if dynamics == "drag_compact":
        return moments_array(a, grid, hbar)
    return _center_of(a, grid)


def _coefficients(dynamics, a, grid, params, m):
    if dynamics == "drag_compact":
        return drag_coefficients(a, grid, params, m)
    return plain_coefficients(a, grid, params, m)


def _diffusion(dynamics, a, grid, params, m):
    k = np.sqrt(2 * params.D) / params.hbar
    if dynamics == "drag_compact":
        return k * lindblad(a, grid, params.hbar, m)
    return k * centered_x(a, grid, m)


def _sse_increment(dynamics, a, grid, params, cfg, dW, m):
    """Unnormalized state after one step (before any drag unitary)."""
    dt = cfg.dt
    dWc = np.asarray(dW, dtype=float)[..., None]
    drift, diff = _coefficients(dynamics, a, grid, params, m)
    if cfg.scheme == "euler_maruyama":
        drift = drift - 1j / params.hbar * free_hamiltonian(a, grid, params)
    new = a + drift * dt + diff * dWc
    if cfg.scheme == "splitstep_milstein" and params.D > 0:
        sq = np.sqrt(dt)
        support = a + drift * dt + diff * sq
        m_s = _moments_for(dynamics, support, grid, params.hbar)
        diff_s = _diffusion(dynamics, support, grid, params, m_s)
        new = new + (diff_s - diff) * (dWc**2 - dt) / (2 * sq)
    if cfg.scheme != "euler_maruyama":
        new = ifft(free_propagator(grid, params, dt) * fft(new))
    return new


# ---------------------------------------------------------------------------
# drag unitary


def drag_unitary(a, grid, hbar, m, theta):
    """Apply ``exp(-(i/hbar) theta (R x_c - sigma^2 p_c / hbar))`` exactly.

    Factorized as ``exp(X) exp(P) exp(-[X, P]/2)`` where the commutator of
    the x-phase ``X`` and the p-phase ``P`` is the c-number
    ``i theta^2 R sigma^2 / hbar^2``.  Both factors are pointwise phases in
    their own basis, so the result is unitary to rounding.
    """
    theta = np.asarray(theta, dtype=float)[..., None]
    R = np.asarray(m.corr_R)[..., None]
    s2 = np.asarray(m.sigma2)[..., None]
    mx = np.asarray(m.mean_x)[..., None]
    mp = np.asarray(m.mean_p)[..., None]
    p_phase = np.exp(1j * theta * s2 * (hbar * grid.k - mp) / hbar**2)
    x_phase = np.exp(-1j * theta * R * (grid.x - mx) / hbar)
    bch = np.exp(-0.5j * theta * theta * R * s2 / hbar**2)
    return bch * x_phase * ifft(p_phase * fft(a))


def displace(a, grid, hbar, shift, boost):
    """Translate by ``shift`` and then add momentum ``boost`` (per row)."""
    shift = np.asarray(shift, dtype=float)[..., None]
    boost = np.asarray(boost, dtype=float)[..., None]
    moved = ifft(np.exp(-1j * grid.k * shift) * fft(a))
    return np.exp(1j * boost * grid.x / hbar) * moved


def drag_increments(m, dW, params):
    """Stochastic frame shift and boost velocity of one drag step.

    Returns ``(du_noise, dv)`` with ``du_noise = (sigma^2/hbar) sqrt(8D) dW``
    and ``dv = (R/M) sqrt(8D) dW``; the full frame shift adds ``v dt``.
    """
    root = np.sqrt(8 * params.D) * np.asarray(dW)
    return m.sigma2 / params.hbar * root, m.corr_R / params.mass * root


def _ito_correction(a, grid, params, m, dW, dt):
    """Replace dW^2 by dt in the second-order terms of the composed step."""
    hbar = params.hbar
    G_a = drag_generator(a, grid, hbar, m)
    G_xa = drag_generator(centered_x(a, grid, m), grid, hbar, m)
    G2_a = drag_generator(G_a, grid, hbar, m)
    weight = 4 * params.D / hbar**2 * (np.asarray(dW, dtype=float) ** 2 - dt)
    return weight[..., None] * (G2_a + 1j * G_xa)


# ---------------------------------------------------------------------------
# batched step driver


def advance(a, grid, params, cfg, dW, dynamics="plain", kick="linear",
            ito_correction=True, m=None, check=True):
    """Advance a stack of amplitude rows by one step.

    Returns ``(new, m_pre, norm_drift, frame)`` where ``frame`` is the
    ``(shift, boost)`` applied by a composed drag step (``None`` otherwise)
    and ``norm_drift`` is ``|psi|^2 - 1`` before renormalization.

    ``kick`` selects the composed frame increments: ``"linear"`` uses the
    pre-step ``sigma^2`` and ``R`` with the realized ``dW``; ``"matched"``
    shifts and boosts by exactly the realized stochastic change of ``<x>``
    and ``<p>``, which keeps the classical trajectory exact to rounding.
    """
    if dynamics not in DYNAMICS:
        raise ParameterError(f"unknown dynamics {dynamics!r}")
    hbar = params.hbar
    need_full = dynamics != "plain"
    if m is None:
        m = moments_array(a, grid, hbar) if need_full else _center_of(a, grid)
    if check:
        _check_stability(grid, params, cfg, dynamics, m)

    inner_dyn = "drag_compact" if dynamics == "drag_compact" else "plain"
    new = _sse_increment(inner_dyn, a, grid, params, cfg, dW, m)

    frame = None
    if dynamics == "drag_composed":
        if kick == "linear":
            theta = np.sqrt(8 * params.D) * np.asarray(dW, dtype=float)
            new = drag_unitary(new, grid, hbar, m, theta)
            if ito_correction:
                new = new + _ito_correction(a, grid, params, m, dW, cfg.dt)
            frame = drag_increments(m, dW, params)
        elif kick == "matched":
            post = moments_array(new, grid, hbar)
            shift = post.mean_x - m.mean_x - m.mean_p * cfg.dt / params.mass
            boost = post.mean_p - m.mean_p
            new = displace(new, grid, hbar, -shift, -boost)
            frame = (shift, boost / params.mass)
        else:
            raise ParameterError(f"unknown kick {kick!r}")

    drift = norm_sq(new, grid) - 1.0
    if cfg.renormalize:
        new = normalize(new, grid)
    return new, m, drift, frame


# ---------------------------------------------------------------------------
# single-state API


def _step(psi, params, cfg, dW, dynamics, **kw):
    require_normalized(psi)
    check_leakage(psi)
    new, _, _, _ = advance(psi.amplitudes, psi.grid, params, cfg, float(dW),
                           dynamics, **kw)
    out = psi.with_amplitudes(new)
    if cfg.renormalize:
        check_leakage(out)
    return out


def step_plain(psi, params, cfg, dW):
    """One Itô step of the plain collapse SSE."""
    return _step(psi, params, cfg, dW, "plain")


def step_drag_compact(psi, params, cfg, dW):
    """One Itô step of the drag SSE written with ``H_psi`` and ``A_c``."""
    return _step(psi, params, cfg, dW, "drag_compact")


def step_drag_composed(psi, params, cfg, dW, kick="linear", ito_correction=True):
    """One plain step followed by the frame shift-and-boost unitary.

    With ``kick="linear"`` the unitary uses the realized ``dW``; the
    ``ito_correction`` then replaces ``dW^2`` by ``dt`` in the second-order
    cross terms so the composition agrees with :func:`step_drag_compact` up
    to ``O(dt^{3/2})`` on identical noise.  Without it the local difference
    is ``O(dt)`` (a zero-mean ``dW^2 - dt`` term).  The correction involves
    ``sigma^4 p^2`` and is as stiff as the compact drift; long runs should
    use ``ito_correction=False`` or ``kick="matched"``.
    """
    return _step(psi, params, cfg, dW, "drag_composed", kick=kick,
                 ito_correction=ito_correction)


def record_signal(m, dW, dt, params):
    """Monitored signal ``x_t = <x> + hbar/sqrt(8D) dW/dt``."""
    if params.D <= 0:
        raise ParameterError("the measurement signal needs D > 0")
    return m.mean_x + params.hbar / np.sqrt(8 * params.D) * np.asarray(dW) / dt


def simulate(psi, params, cfg, n_steps, noise, dynamics="plain",
             record_every=1, signal=False, **kw):
    """Integrate one trajectory and return its :class:`StepRecord` list.

    The first record is the initial state.  ``noise`` is a
    :class:`NoiseStream` (or any iterator of increments).
    """
    require_normalized(psi)
    grid, hbar = psi.grid, params.hbar
    a = psi.amplitudes
    records = [StepRecord(0.0, _scalar(moments_array(a, grid, hbar)), 0.0)]
    for i in range(1, n_steps + 1):
        dW = next(noise)
        m = moments_array(a, grid, hbar)
        sig = record_signal(m, dW, cfg.dt, params) if signal and params.D > 0 else None
        a, _, drift, _ = advance(a, grid, params, cfg, dW, dynamics, m=m, **kw)
        check_leakage(psi.with_amplitudes(a) if cfg.renormalize
                      else psi.with_amplitudes(normalize(a, grid)))
        if i % record_every == 0:
            rec_m = _scalar(moments_array(a, grid, hbar))
            records.append(StepRecord(i * cfg.dt, rec_m, float(drift),
                                      None if sig is None else float(sig)))
    return records


def _scalar(m):
    return Moments(*(float(v) for v in (m.mean_x, m.mean_p, m.sigma2,
                                         m.corr_R, m.mean_p2)))
