"""Madelung variables from sampled wave functions, and the continuity check."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .evolve import gradient
from .grid import Grid, WaveField

NODE_FRACTION = 1e-8


class AllMaskedError(ValueError):
    pass


@dataclass(frozen=True)
class MadelungFields:
    """Density, unwrapped phase and node mask (True where excluded)."""

    rho: np.ndarray
    S: np.ndarray
    mask: np.ndarray
    grid: Grid
    m: float = 1.0
    t: float = 0.0

    @property
    def valid(self) -> np.ndarray:
        return ~self.mask

    def reconstruct(self) -> np.ndarray:
        return np.sqrt(self.rho) * np.exp(1j * self.S)


def _wrap(a):
    return (a + np.pi) % (2 * np.pi) - np.pi


def unwrap_1d(phase: np.ndarray, seed: int) -> np.ndarray:
    """Cumulative +-2 pi correction outward from ``seed``."""
    out = np.empty_like(phase)
    out[seed:] = np.unwrap(phase[seed:])
    out[: seed + 1] = np.unwrap(phase[seed::-1])[::-1]
    return out


def unwrap_2d(phase: np.ndarray, quality: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Region growing along a maximum-quality spanning tree.

    Starts from the highest-quality pixel and always integrates next into
    the best-quality unvisited neighbour of the grown region. Masked pixels
    keep their wrapped phase.
    """
    nx, ny = phase.shape
    out = phase.copy()
    visited = mask.copy()
    q = np.where(mask, -np.inf, quality)
    seed = np.unravel_index(int(np.argmax(q)), phase.shape)
    visited[seed] = True
    heap: list = []

    def push_neighbours(i, j):
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            a, b = i + di, j + dj
            if 0 <= a < nx and 0 <= b < ny and not visited[a, b]:
                heapq.heappush(heap, (-q[a, b], a, b, i, j))

    push_neighbours(*seed)
    while heap:
        _, a, b, i, j = heapq.heappop(heap)
        if visited[a, b]:
            continue
        visited[a, b] = True
        out[a, b] = out[i, j] + _wrap(phase[a, b] - out[i, j])
        push_neighbours(a, b)
    return out


def madelung_extract(w: WaveField, node_fraction: float = NODE_FRACTION) -> MadelungFields:
    amp = np.abs(w.psi)
    peak = amp.max()
    if not np.isfinite(peak) or peak == 0:
        raise AllMaskedError("field is numerically zero")
    mask = amp < node_fraction * peak
    phase = np.angle(w.psi)
    if w.grid.dim == 1:
        S = unwrap_1d(phase, int(np.argmax(amp)))
    else:
        S = unwrap_2d(phase, amp, mask)
    return MadelungFields(amp ** 2, S, mask, w.grid, w.m, w.t)


def probability_current(fields: MadelungFields) -> list[np.ndarray]:
    """(1/m) rho grad S, evaluated spectrally as (1/m) Im(psi* grad psi).

    The unwrapped phase is not periodic in general, so it is not
    differentiated directly.
    """
    psi = fields.reconstruct()
    return [np.imag(np.conj(psi) * d) / fields.m for d in gradient(psi, fields.grid)]


def divergence(components: Sequence[np.ndarray], grid: Grid) -> np.ndarray:
    out = np.zeros(grid.shape)
    for c, k in zip(components, grid.k_mesh):
        out += np.fft.ifftn(1j * k * np.fft.fftn(c)).real
    return out


def continuity_residuals(series: Sequence[MadelungFields], dt: float) -> np.ndarray:
    """Normalized ||d rho/dt + div j|| at each interior snapshot."""
    if len(series) < 3:
        raise ValueError("need at least three consecutive snapshots")
    out = []
    for prev, cur, nxt in zip(series, series[1:], series[2:]):
        mask = prev.mask | cur.mask | nxt.mask
        if mask.all():
            raise AllMaskedError("every sample is masked")
        drho = (nxt.rho - prev.rho) / (2 * dt)
        r = drho + divergence(probability_current(cur), cur.grid)
        valid = ~mask
        out.append(np.sqrt(np.sum(r[valid] ** 2)) / np.sqrt(np.sum(cur.rho[valid] ** 2)))
    return np.array(out)


def continuity_residual(series: Sequence[MadelungFields], dt: float) -> float:
    return float(continuity_residuals(series, dt).max())
