"""State-dependent operators of the frame-drag equation.

All functions act on amplitude arrays (batch axes first, grid axis last) and
take the *frozen* moments ``m`` of the state that defines the operators:

* ``lindblad``:           A_c = x_c - 2i (R x_c - sigma^2 p_c / hbar)
* ``lindblad_dag``:       A_c^dagger
* ``drag_hamiltonian``:   H_psi = (4D/hbar) (R x_c^2 - sigma^2 R_hat)
* ``drag_generator``:     G = R x_c - sigma^2 p_c / hbar, the generator of
                          the frame shift-and-boost unitary
"""

import numpy as np

from .observables import correlation_action
from .state import momentum_action


def _col(v):
    return np.asarray(v)[..., None]


def centered_x(a, grid, m, power=1):
    return (grid.x - _col(m.mean_x)) ** power * a


def centered_p(a, grid, hbar, m, power=1):
    return momentum_action(a, grid, hbar, power, m.mean_p)


def drag_generator(a, grid, hbar, m):
    return (_col(m.corr_R) * centered_x(a, grid, m)
            - _col(m.sigma2) / hbar * centered_p(a, grid, hbar, m))


def lindblad(a, grid, hbar, m):
    R = _col(m.corr_R)
    s2 = _col(m.sigma2)
    return ((1 - 2j * R) * centered_x(a, grid, m)
            + 2j * s2 / hbar * centered_p(a, grid, hbar, m))


def lindblad_dag(a, grid, hbar, m):
    R = _col(m.corr_R)
    s2 = _col(m.sigma2)
    return ((1 + 2j * R) * centered_x(a, grid, m)
            - 2j * s2 / hbar * centered_p(a, grid, hbar, m))


def drag_hamiltonian(a, grid, params, m):
    hbar = params.hbar
    R = _col(m.corr_R)
    s2 = _col(m.sigma2)
    r_hat_a = correlation_action(a, grid, hbar, m.mean_x, m.mean_p)
    return 4 * params.D / hbar * (R * centered_x(a, grid, m, 2) - s2 * r_hat_a)


def free_hamiltonian(a, grid, params):
    return momentum_action(a, grid, params.hbar, 2) / (2 * params.mass)


def lindblad_dag_lindblad(a, grid, hbar, m):
    """``A_c^+ A_c a``, the dissipative drift operator."""
    return lindblad_dag(lindblad(a, grid, hbar, m), grid, hbar, m)
