"""Diagnostic time series and CSV dumps."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .grid import WaveField
from .madelung import MadelungFields

METRICS = ("norm", "energy", "continuity_residual", "boost_mismatch", "schmidt_defect")


@dataclass
class Diagnostics:
    t: np.ndarray
    norm: np.ndarray | None = None
    energy: np.ndarray | None = None
    continuity_residual: np.ndarray | None = None
    boost_mismatch: np.ndarray | None = None
    schmidt_defect: np.ndarray | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        for name in METRICS:
            value = getattr(self, name)
            if value is None:
                continue
            value = np.asarray(value, dtype=float)
            if value.shape != self.t.shape:
                raise ValueError(f"{name} has {value.shape[0]} entries, expected {self.t.shape[0]}")
            if not np.all(np.isfinite(value)):
                raise ValueError(f"{name} contains non-finite values")
            setattr(self, name, value)

    def norm_drift(self) -> float:
        return float(np.max(np.abs(self.norm - self.norm[0])))

    def energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])))

    def final(self) -> dict[str, float]:
        out = {"t": float(self.t[-1])}
        for name in METRICS:
            value = getattr(self, name)
            if value is not None:
                out[name] = float(value[-1])
        out.update({k: float(v) for k, v in self.extra.items()})
        return out

    def to_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("t",) + METRICS)
            for k, t in enumerate(self.t):
                row = [repr(float(t))]
                for name in METRICS:
                    value = getattr(self, name)
                    row.append("" if value is None else repr(float(value[k])))
                writer.writerow(row)
        return path


def read_diagnostics_csv(path: str | Path) -> Diagnostics:
    with Path(path).open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    columns = {}
    for name in METRICS:
        cells = [r[name] for r in rows]
        columns[name] = None if all(c == "" for c in cells) else [float(c) for c in cells]
    return Diagnostics([float(r["t"]) for r in rows], **columns)


def write_snapshot(directory: str | Path, index: int, w: WaveField,
                   fields: MadelungFields | None = None) -> Path:
    """One CSV per snapshot: axis coordinates, Re psi, Im psi, rho, S, mask."""
    from .madelung import madelung_extract

    fields = fields or madelung_extract(w)
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"snapshot_{index:05d}.csv"
    names = ("x", "y")[: w.grid.dim]
    coords = [c.ravel() for c in w.grid.mesh]
    cols = [w.psi.real.ravel(), w.psi.imag.ravel(), fields.rho.ravel(), fields.S.ravel(),
            fields.mask.ravel().astype(int)]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names + ("re", "im", "rho", "S", "mask"))
        for row in zip(*coords, *cols):
            writer.writerow([repr(float(v)) for v in row[:-1]] + [int(row[-1])])
    return path
