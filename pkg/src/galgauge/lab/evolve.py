"""Strang split-step Fourier integration of the linear and cubic Schrödinger equations.

    i dpsi/dt = -(1/2m) lap psi + V psi + g |psi|^2 psi

The kinetic step is exact in Fourier space; the potential/nonlinear half
steps are exact pointwise phase rotations (|psi| is unchanged by them).
"""

from __future__ import annotations

from typing import Callable, Iterator

import numpy as np

from .grid import WaveField

SCHEMES = ("linear", "cubic")


class NumericalAbort(RuntimeError):
    def __init__(self, step: int, message: str = "non-finite values"):
        super().__init__(f"{message} at step {step}")
        self.step = step


def _check_scheme(scheme: str, g: float) -> float:
    if scheme == "linear":
        return 0.0
    if scheme == "cubic":
        return float(g)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")


def laplacian(f: np.ndarray, grid) -> np.ndarray:
    out = np.fft.ifftn(-grid.k_squared * np.fft.fftn(f))
    return out.real if np.isrealobj(f) else out


def gradient(f: np.ndarray, grid) -> list[np.ndarray]:
    fk = np.fft.fftn(f)
    out = [np.fft.ifftn(1j * k * fk) for k in grid.k_mesh]
    return [o.real for o in out] if np.isrealobj(f) else out


def iter_evolve(w: WaveField, potential: np.ndarray | None = None, scheme: str = "linear",
                dt: float = 1e-3, steps: int = 1, g: float = 0.0) -> Iterator[WaveField]:
    """Yield the field after each of ``steps`` Strang steps."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    coupling = _check_scheme(scheme, g)
    grid = w.grid
    kinetic = np.exp(-1j * grid.k_squared / (2 * w.m) * dt)
    v = np.zeros(grid.shape) if potential is None else np.asarray(potential, dtype=float)
    if v.shape != grid.shape:
        raise ValueError("potential must be sampled on the grid")
    half = 0.5 * dt
    psi = w.psi.astype(complex, copy=True)
    t = w.t
    for step in range(1, steps + 1):
        if coupling:
            psi *= np.exp(-1j * (v + coupling * np.abs(psi) ** 2) * half)
        else:
            psi *= np.exp(-1j * v * half)
        psi = np.fft.ifftn(kinetic * np.fft.fftn(psi))
        if coupling:
            psi *= np.exp(-1j * (v + coupling * np.abs(psi) ** 2) * half)
        else:
            psi *= np.exp(-1j * v * half)
        if not np.all(np.isfinite(psi)):
            raise NumericalAbort(step)
        t = w.t + step * dt
        yield w.evolved(psi.copy(), t)


def evolve(w: WaveField, potential: np.ndarray | None = None, scheme: str = "linear",
           dt: float = 1e-3, steps: int = 1, g: float = 0.0,
           observer: Callable[[int, WaveField], None] | None = None) -> WaveField:
    out = w
    for k, out in enumerate(iter_evolve(w, potential, scheme, dt, steps, g), start=1):
        if observer is not None:
            observer(k, out)
    return out


def energy(w: WaveField, potential: np.ndarray | None = None, g: float = 0.0) -> float:
    """<H> with kinetic part from Parseval and the quartic term g/2 |psi|^4."""
    grid = w.grid
    psik = np.fft.fftn(w.psi)
    kin = np.sum(grid.k_squared / (2 * w.m) * np.abs(psik) ** 2) / w.psi.size
    rho = np.abs(w.psi) ** 2
    pot = 0.0 if potential is None else np.sum(potential * rho)
    quartic = 0.5 * g * np.sum(rho * rho)
    return float((kin + pot + quartic) * grid.cell_volume)
