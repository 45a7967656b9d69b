"""Numerical tolerances shared by the CLI and the test-suite.

Keys are stable; the CLI accepts ``--tol KEY=VALUE`` overrides.
"""

from __future__ import annotations

TOLERANCES: dict[str, float] = {
    # discrete norm of a freshly built Gaussian
    "normalization": 1e-12,
    # boosted linear evolution vs moving-frame evolution (L2)
    "boost_mismatch": 1e-8,
    # identical runs at zero velocity
    "boost_mismatch_zero": 1e-13,
    # lower bound the pure-gauge system must exceed to count as non-covariant
    "pure_gauge_mismatch_min": 1e-3,
    # |norm(t) - norm(0)| over 1000 linear steps
    "norm_drift": 1e-10,
    # normalized continuity residual at dt = 1e-3
    "continuity_residual": 1e-4,
    # accepted window for residual(dt) / residual(dt/2)
    "continuity_ratio_low": 3.5,
    "continuity_ratio_high": 4.5,
    # free-packet width^2 against the closed form
    "width_law": 1e-6,
    # Schmidt defect of the linear run
    "schmidt_linear": 1e-10,
    # Schmidt defect the cubic run must exceed
    "schmidt_cubic_min": 1e-3,
    # sqrt(rho) exp(iS) vs psi on unmasked points
    "madelung_roundtrip": 1e-12,
    "plane_wave_slope": 1e-10,
    "momentum_expectation": 1e-8,
    "inverse_boost": 1e-12,
    "scheme_degeneration": 1e-13,
}


def tolerance(name: str, overrides: dict[str, float] | None = None) -> float:
    if overrides and name in overrides:
        return overrides[name]
    return TOLERANCES[name]


def parse_override(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep or key not in TOLERANCES:
        raise ValueError(f"expected KEY=VALUE with KEY in {sorted(TOLERANCES)}, got {text!r}")
    return key, float(value)
