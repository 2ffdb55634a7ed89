"""Linear master equation for the noise-averaged plain SSE.

    d rho / dt = -(i/hbar) [H, rho] - (D/hbar^2) [x, [x, rho]]

Matrices use the trace-one convention of :class:`DensityMatrix`.  ``p``
acts on the row index through an FFT along axis 0; right multiplication is
obtained from ``rho p = (p rho^+)^+``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GridError, ParameterError, TraceDriftError
from .observables import moments_array, moments_of_density
from .operators import (drag_hamiltonian, free_hamiltonian, lindblad,
                        lindblad_dag)
from .state import (DensityMatrix, check_density, momentum_action,
                    require_normalized)

MAX_MASTER_POINTS = 256
TRACE_DRIFT_LIMIT = 1e-9


@dataclass(frozen=True)
class MasterConfig:
    dt: float

    def __post_init__(self):
        if not self.dt > 0:
            raise ParameterError(f"dt must be positive, got {self.dt}")


def _left(op, rho):
    """Apply a column-vector operator to every column of ``rho``."""
    return op(rho.T).T


def _right(op, rho):
    """``rho O`` for a Hermitian operator ``O``."""
    return _left(op, rho.conj().T).conj().T


def master_rhs(rho, grid, params):
    """Right-hand side of the master equation on a raw matrix."""
    hbar = params.hbar

    def H(v):
        return momentum_action(v, grid, hbar, 2) / (2 * params.mass)

    comm = _left(H, rho) - _right(H, rho)
    dx2 = (grid.x[:, None] - grid.x[None, :]) ** 2
    return -1j / hbar * comm - params.D / hbar**2 * dx2 * rho


def _rk4(f, y, dt):
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _finish(rho_new, trace_before):
    rho_new = 0.5 * (rho_new + rho_new.conj().T)
    tr = np.trace(rho_new).real
    if abs(tr - trace_before) > TRACE_DRIFT_LIMIT:
        raise TraceDriftError(f"trace changed by {tr - trace_before:.3e} in one step")
    return rho_new / tr


def step_master(rho, params, cfg):
    """One RK4 step; the result is re-symmetrized and trace-rescaled."""
    grid = rho.grid
    if grid.n_points > MAX_MASTER_POINTS:
        raise GridError(f"master runs are capped at {MAX_MASTER_POINTS} points")
    r = rho.elements
    new = _rk4(lambda y: master_rhs(y, grid, params), r, cfg.dt)
    return DensityMatrix(grid, _finish(new, np.trace(r).real))


def evolve_master(rho, params, cfg, n_steps, record_every=1):
    """Integrate ``n_steps`` and return ``(times, states)`` at record points."""
    check_density(rho)
    times, states = [0.0], [rho]
    for i in range(1, n_steps + 1):
        rho = step_master(rho, params, cfg)
        if i % record_every == 0:
            times.append(i * cfg.dt)
            states.append(rho)
    return np.array(times), states


# ---------------------------------------------------------------------------
# drag generator at a pure state


def _drag_lindblad_rhs(rho, grid, params, m):
    """Lindblad form with ``H + H_psi`` and ``L = sqrt(2D)/hbar A_c`` frozen at ``m``."""
    hbar = params.hbar

    def H(v):
        return (free_hamiltonian(v, grid, params)
                + drag_hamiltonian(v, grid, params, m))

    def A(v):
        return lindblad(v, grid, hbar, m)

    H_rho = _left(H, rho)
    rho_H = H_rho.conj().T
    A_rho = _left(A, rho)
    A_rho_Ad = _left(A, A_rho.conj().T).conj().T
    AdA_rho = _left(lambda v: lindblad_dag(v, grid, hbar, m), A_rho)
    rho_AdA = AdA_rho.conj().T
    k2 = 2 * params.D / hbar**2
    return (-1j / hbar * (H_rho - rho_H)
            + k2 * (A_rho_Ad - 0.5 * (AdA_rho + rho_AdA)))


def nonlinear_generator(psi, params):
    """Instantaneous ``d rho/dt`` of the drag dynamics at ``rho = |psi><psi|``.

    ``H_psi`` and ``A_c`` are built from ``psi``.  This is a single-time
    consistency object; the drag dynamics has no mixed-state law.
    """
    require_normalized(psi)
    grid = psi.grid
    a = psi.amplitudes
    m = moments_array(a, grid, params.hbar)
    rho = np.outer(a, a.conj()) * grid.dx
    return DensityMatrix(grid, _drag_lindblad_rhs(rho, grid, params, m))


def frozen_generator_iteration(psi, params, cfg, n_steps, record_every=1):
    """Iterate the drag generator as if it were a mixed-state law.

    The operators are rebuilt at every RK4 step from the moments of the
    current (mixed) matrix.  The result is deliberately naive: it exists to
    show that the trajectory ensemble does not close on such a law.
    """
    require_normalized(psi)
    grid = psi.grid
    a = psi.amplitudes
    rho = DensityMatrix(grid, np.outer(a, a.conj()) * grid.dx)
    times, states = [0.0], [rho]
    for i in range(1, n_steps + 1):
        m = moments_of_density(rho, params.hbar)
        r = rho.elements
        new = _rk4(lambda y: _drag_lindblad_rhs(y, grid, params, m), r, cfg.dt)
        rho = DensityMatrix(grid, _finish(new, np.trace(r).real))
        if i % record_every == 0:
            times.append(i * cfg.dt)
            states.append(rho)
    return np.array(times), states


# ---------------------------------------------------------------------------
# comparison


def trace_distance(rho_a, rho_b):
    """``0.5 * ||rho_a - rho_b||_1`` via the eigenvalues of the difference."""
    a = rho_a.elements if isinstance(rho_a, DensityMatrix) else np.asarray(rho_a)
    b = rho_b.elements if isinstance(rho_b, DensityMatrix) else np.asarray(rho_b)
    if a.shape != b.shape:
        raise GridError(f"shape mismatch {a.shape} vs {b.shape}")
    diff = a - b
    diff = 0.5 * (diff + diff.conj().T)
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def ensemble_density(amplitudes, grid):
    """``mean_i |psi_i><psi_i|`` from an ``(n_traj, n_points)`` stack."""
    a = np.asarray(amplitudes)
    return DensityMatrix(grid, a.T @ a.conj() * grid.dx / a.shape[0])


def compare_ensemble_to_master(rho_ens, rho_master):
    """Trace distance between an ensemble average and the master solution."""
    return trace_distance(rho_ens, rho_master)


def energy_rate(drho, params):
    """``tr(p^2 d rho/dt)`` for a matrix-valued time derivative."""
    d = drho.elements if isinstance(drho, DensityMatrix) else np.asarray(drho)
    grid = drho.grid
    p2 = _left(lambda v: momentum_action(v, grid, params.hbar, 2), d)
    return float(np.trace(p2).real)
