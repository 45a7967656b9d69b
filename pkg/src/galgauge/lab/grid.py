"""Periodic grids and sampled wave functions (hbar = 1)."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np


class UnderResolvedError(ValueError):
    pass


class IncommensurateError(ValueError):
    """A momentum or velocity is not compatible with the periodic box."""


def _per_axis(value, dim: int, name: str) -> tuple:
    if np.ndim(value) == 0:
        return (value,) * dim
    value = tuple(value)
    if len(value) != dim:
        raise ValueError(f"{name} needs {dim} components, got {len(value)}")
    return value


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on ``[-L/2, L/2)`` per axis."""

    dim: int
    n: tuple[int, ...]
    length: tuple[float, ...]

    def __init__(self, dim: int, n, length):
        if dim not in (1, 2):
            raise ValueError("only 1D and 2D grids are supported")
        n = tuple(int(k) for k in _per_axis(n, dim, "n"))
        length = tuple(float(x) for x in _per_axis(length, dim, "length"))
        for k in n:
            if k < 16 or k & (k - 1):
                raise ValueError(f"points per axis must be a power of two >= 16, got {k}")
        if min(length) <= 0:
            raise ValueError("box length must be positive")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "length", length)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple(L / k for L, k in zip(self.length, self.n))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @cached_property
    def axes(self) -> tuple[np.ndarray, ...]:
        return tuple(-L / 2 + d * np.arange(k) for L, d, k in zip(self.length, self.spacing, self.n))

    @cached_property
    def mesh(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*self.axes, indexing="ij"))

    @cached_property
    def wavenumbers(self) -> tuple[np.ndarray, ...]:
        return tuple(2 * np.pi * np.fft.fftfreq(k, d) for k, d in zip(self.n, self.spacing))

    @cached_property
    def k_mesh(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*self.wavenumbers, indexing="ij"))

    @cached_property
    def k_squared(self) -> np.ndarray:
        return sum(k * k for k in self.k_mesh)

    def fundamental(self, axis: int = 0) -> float:
        return 2 * np.pi / self.length[axis]


def check_commensurate(grid: Grid, values, what: str, scale: float = 1.0) -> tuple[float, ...]:
    """Require ``scale * value * L / (2 pi)`` to be an integer on every axis."""
    values = tuple(float(v) for v in _per_axis(values, grid.dim, what))
    for v, L in zip(values, grid.length):
        q = scale * v * L / (2 * np.pi)
        if abs(q - round(q)) > 1e-9 * max(1.0, abs(q)):
            raise IncommensurateError(
                f"{what} {v} is not commensurate with the box (multiplier {q:.6g} is not an integer)")
    return values


@dataclass(frozen=True)
class WaveField:
    psi: np.ndarray
    grid: Grid
    m: float = 1.0
    t: float = 0.0

    def __post_init__(self):
        if self.psi.shape != self.grid.shape:
            raise ValueError(f"samples have shape {self.psi.shape}, grid is {self.grid.shape}")
        if self.m <= 0:
            raise ValueError("mass must be positive")

    def norm(self) -> float:
        """Total probability, sum |psi|^2 dV."""
        return float(np.sum(np.abs(self.psi) ** 2) * self.grid.cell_volume)

    def density(self) -> np.ndarray:
        return np.abs(self.psi) ** 2

    def evolved(self, psi: np.ndarray, t: float) -> "WaveField":
        return replace(self, psi=psi, t=t)

    def mean_position(self) -> tuple[float, ...]:
        rho = self.density()
        total = rho.sum()
        return tuple(float((x * rho).sum() / total) for x in self.grid.mesh)

    def width_squared(self, axis: int = 0) -> float:
        """Position variance of |psi|^2 along ``axis``."""
        rho = self.density()
        x = self.grid.mesh[axis]
        total = rho.sum()
        mean = (x * rho).sum() / total
        return float(((x - mean) ** 2 * rho).sum() / total)

    def mean_momentum(self) -> tuple[float, ...]:
        spec = np.abs(np.fft.fftn(self.psi)) ** 2
        total = spec.sum()
        return tuple(float((k * spec).sum() / total) for k in self.grid.k_mesh)


def distance(a: WaveField, b: WaveField) -> float:
    """Discrete L2 distance sqrt(sum |a - b|^2 dV)."""
    return float(np.sqrt(np.sum(np.abs(a.psi - b.psi) ** 2) * a.grid.cell_volume))


def init_gaussian(grid: Grid, center=0.0, momentum=0.0, width=1.0, m: float = 1.0) -> WaveField:
    """Normalized Gaussian packet; ``width`` is the position standard deviation.

    Momenta must be multiples of 2 pi / L so the plane-wave factor is periodic.
    """
    center = tuple(float(c) for c in _per_axis(center, grid.dim, "center"))
    width = tuple(float(s) for s in _per_axis(width, grid.dim, "width"))
    momentum = check_commensurate(grid, momentum, "momentum")
    for s, d in zip(width, grid.spacing):
        if s <= 2 * d:
            raise UnderResolvedError(f"width {s} must exceed twice the grid spacing {d}")
    log_psi = np.zeros(grid.shape, dtype=complex)
    for x, x0, p, s in zip(grid.mesh, center, momentum, width):
        log_psi += -((x - x0) ** 2) / (4 * s * s) + 1j * p * x
    psi = np.exp(log_psi)
    psi /= np.sqrt(np.sum(np.abs(psi) ** 2) * grid.cell_volume)
    return WaveField(psi, grid, m=m)
