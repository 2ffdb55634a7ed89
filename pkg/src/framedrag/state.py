"""Pure states and density matrices on a uniform periodic 1-D grid.

Amplitudes follow the continuum convention: ``psi[j]`` is the value of the
wave function at ``x[j]`` and the norm is ``sum |psi|^2 dx``.  Density
matrices carry the ``dx`` inside, so ``trace(rho) = sum_j rho[j, j] = 1``.

Array-level helpers (``position_action``, ``momentum_action``, ...) accept any
number of leading batch dimensions; the grid axis is always the last one.
The ensemble runner uses them on ``(n_traj, n_points)`` stacks.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import fft as sfft

from .errors import (GridError, LeakageError, NormalizationError,
                     ParameterError)

NORM_TOL = 1e-9
LEAK_LIMIT = 1e-6
EDGE_FRACTION = 0.05


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid ``x_j = x_min + j*dx``, ``dx = (x_max-x_min)/n``."""

    n_points: int
    x_min: float
    x_max: float

    def __post_init__(self):
        n = self.n_points
        if int(n) != n or n < 8 or (n & (n - 1)) != 0:
            raise GridError(f"n_points must be a power of two >= 8, got {n}")
        if not self.x_max > self.x_min:
            raise GridError("x_max must exceed x_min")

    @classmethod
    def centered(cls, n_points, length, center=0.0):
        return cls(n_points, center - length / 2, center + length / 2)

    @property
    def length(self):
        return self.x_max - self.x_min

    @property
    def dx(self):
        return self.length / self.n_points

    @cached_property
    def x(self):
        x = self.x_min + self.dx * np.arange(self.n_points)
        x.flags.writeable = False
        return x

    @cached_property
    def k(self):
        """Angular wavenumbers in FFT order."""
        k = 2 * np.pi * sfft.fftfreq(self.n_points, self.dx)
        k.flags.writeable = False
        return k

    def edge_mask(self, fraction=EDGE_FRACTION):
        width = max(1, int(round(fraction * self.n_points)))
        mask = np.zeros(self.n_points, dtype=bool)
        mask[:width] = True
        mask[-width:] = True
        return mask


@dataclass(frozen=True)
class ModelParams:
    """Mass, collapse strength ``D`` (momentum^2/time) and hbar."""

    mass: float = 1.0
    D: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.mass > 0:
            raise ParameterError(f"mass must be positive, got {self.mass}")
        if not self.D >= 0:
            raise ParameterError(f"D must be non-negative, got {self.D}")
        if not self.hbar > 0:
            raise ParameterError(f"hbar must be positive, got {self.hbar}")


# ---------------------------------------------------------------------------
# array kernels


def fft(a):
    return sfft.fft(a, axis=-1)


def ifft(a):
    return sfft.ifft(a, axis=-1)


def norm_sq(a, grid):
    return np.sum(a.real**2 + a.imag**2, axis=-1) * grid.dx


def normalize(a, grid):
    return a / np.sqrt(norm_sq(a, grid))[..., None]


def position_action(a, grid, power=1, center=0.0):
    """``(x - center)**power * a``; ``center`` may be a per-row array."""
    xc = grid.x - np.asarray(center)[..., None]
    return xc**power * a


def momentum_action(a, grid, hbar, power=1, center=0.0):
    """``(p - center)**power * a`` applied spectrally."""
    pk = hbar * grid.k - np.asarray(center)[..., None]
    return ifft(pk**power * fft(a))


def inner(a, b, grid):
    """``<a|b>`` along the grid axis."""
    return np.sum(np.conj(a) * b, axis=-1) * grid.dx


def boundary_mass(a, grid, fraction=EDGE_FRACTION):
    w = a.real**2 + a.imag**2
    return np.sum(w[..., grid.edge_mask(fraction)], axis=-1) * grid.dx


def free_propagator(grid, params, dt):
    """Spectral factor ``exp(-i hbar k^2 dt / 2M)``."""
    return np.exp(-0.5j * params.hbar * grid.k**2 * dt / params.mass)


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Complex amplitudes ``psi(x_j)`` on ``grid``.

    Not every instance is a normalized state: operator actions such as
    :func:`apply_position` return plain vectors in the same container.
    """

    grid: GridSpec
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex)
        if amp.shape != (self.grid.n_points,):
            raise GridError(
                f"amplitudes shape {amp.shape} does not match grid "
                f"({self.grid.n_points},)")
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    def norm(self):
        return float(np.sqrt(norm_sq(self.amplitudes, self.grid)))

    def normalized(self):
        return WaveFunction(self.grid, normalize(self.amplitudes, self.grid))

    def boundary_mass(self, fraction=EDGE_FRACTION):
        return float(boundary_mass(self.amplitudes, self.grid, fraction))

    def with_amplitudes(self, amplitudes):
        return WaveFunction(self.grid, amplitudes)

    def __mul__(self, scalar):
        return WaveFunction(self.grid, self.amplitudes * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Matrix elements ``rho(x_j, x_k) dx`` so that the trace is one."""

    grid: GridSpec
    elements: np.ndarray

    def __post_init__(self):
        rho = np.array(self.elements, dtype=complex)
        n = self.grid.n_points
        if rho.shape != (n, n):
            raise GridError(f"density matrix shape {rho.shape} != ({n}, {n})")
        rho.flags.writeable = False
        object.__setattr__(self, "elements", rho)

    def trace(self):
        return complex(np.trace(self.elements))

    def purity(self):
        rho = self.elements
        return float(np.real(np.sum(rho * rho.T)))

    def hermiticity_error(self):
        rho = self.elements
        return float(np.max(np.abs(rho - rho.conj().T)))

    def min_eigenvalue(self):
        rho = self.elements
        return float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])


# ---------------------------------------------------------------------------
# checks


def require_normalized(psi, tol=NORM_TOL):
    n2 = psi.norm() ** 2
    if abs(n2 - 1.0) > tol:
        raise NormalizationError(f"norm^2 = {n2!r} deviates from 1 by more than {tol}")


def check_leakage(psi, limit=LEAK_LIMIT, fraction=EDGE_FRACTION):
    """Raise :class:`LeakageError` when the edge band holds too much mass."""
    mass = psi.boundary_mass(fraction)
    if mass >= limit:
        raise LeakageError(mass, limit)
    return mass


def check_density(rho, herm_tol=1e-10, trace_tol=1e-8):
    err = rho.hermiticity_error()
    if err >= herm_tol:
        raise NormalizationError(f"density matrix not Hermitian: {err:.2e}")
    tr = rho.trace()
    if abs(tr - 1) > trace_tol:
        raise NormalizationError(f"density matrix trace {tr} != 1")


# ---------------------------------------------------------------------------
# operations


def _check_power(power):
    if power not in (1, 2):
        raise ParameterError(f"power must be 1 or 2, got {power}")


def apply_position(psi, power=1):
    """Return ``x^power psi`` (an operator action, not renormalized)."""
    _check_power(power)
    return psi.with_amplitudes(position_action(psi.amplitudes, psi.grid, power))


def apply_momentum(psi, power=1, hbar=1.0):
    """Return ``p^power psi`` with ``p = -i hbar d/dx`` applied via FFT."""
    _check_power(power)
    return psi.with_amplitudes(
        momentum_action(psi.amplitudes, psi.grid, hbar, power))


def pure_to_density(psi):
    """Projector ``|psi><psi|`` in the trace-one grid convention."""
    require_normalized(psi)
    a = psi.amplitudes
    return DensityMatrix(psi.grid, np.outer(a, a.conj()) * psi.grid.dx)


def mix(states, weights=None):
    """Convex combination of pure states or density matrices."""
    mats = [s.elements if isinstance(s, DensityMatrix)
            else pure_to_density(s).elements for s in states]
    w = np.full(len(mats), 1 / len(mats)) if weights is None else np.asarray(weights, float)
    if np.any(w < 0) or not np.isclose(w.sum(), 1.0):
        raise ParameterError("mixture weights must be non-negative and sum to one")
    grid = states[0].grid
    return DensityMatrix(grid, np.tensordot(w, np.array(mats), axes=1))
