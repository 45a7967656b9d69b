"""Command-line interface: ``galgauge {list,derive,check,simulate}``.

Exit codes: 0 success (or the expected verdict), 1 usage error, 2 derivation
mismatch, 3 unexpected verdict or failed tolerance, 4 numerical abort.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import catalog
from .catalog import CATALOG_KEYS, CATALOG_VERSION, bilaplacian, build, equation, euler_lagrange, lagrangian
from .invariance import GAUGE_TARGETS, SYSTEMS, check_boost_covariance, check_named_gauge
from .symbolic import equals_modulo_cofactor, normalize, parse, print_canonical
from .tolerances import parse_override, tolerance
from .transforms import BoostSpec

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_VERDICT, EXIT_ABORT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- config


@dataclass(frozen=True)
class RunConfig:
    """Parsed command line: command, subject and every option value."""

    command: str
    subject: str | None
    options: tuple[tuple[str, object], ...] = field(default=())

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        values = vars(ns).copy()
        command = values.pop("command")
        subject = values.pop("subject", None)
        values.pop("handler", None)
        opts = []
        for k, v in sorted(values.items()):
            if isinstance(v, list):
                v = tuple(v)
            opts.append((k, v))
        return cls(command, subject, tuple(opts))

    def option(self, name: str, default=None):
        return dict(self.options).get(name, default)

    def to_argv(self) -> list[str]:
        argv = [self.command] + ([self.subject] if self.subject else [])
        for k, v in self.options:
            flag = "--" + k.replace("_", "-")
            if isinstance(v, bool):
                if v:
                    argv.append(flag)
            elif isinstance(v, tuple):
                for item in v:
                    argv += [flag, str(item)]
            elif v is not None:
                argv += [flag, repr(v) if isinstance(v, float) else str(v)]
        return argv


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="directory for report files")
    p.add_argument("--json", action="store_true", help="print the JSON result instead of text")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="galgauge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("list", help="catalog inventory")
    _common(p)

    p = sub.add_parser("derive", help="derive equations and compare with the catalog")
    p.add_argument("subject", choices=["madelung", "pg-split", "euler-lagrange"])
    p.add_argument("--lagrangian", choices=["se-polar", "staruszkiewicz"], default="se-polar")
    p.add_argument("--field", choices=["R", "S"], default="S")
    _common(p)

    p = sub.add_parser("check", help="boost covariance or gauge invariance")
    p.add_argument("subject", choices=["boost", "gauge"])
    p.add_argument("--system", choices=sorted(SYSTEMS), default="se")
    p.add_argument("--target", choices=sorted(GAUGE_TARGETS), default="minimal-coupling")
    p.add_argument("--velocity", choices=["symbolic", "zero"], default="symbolic")
    p.add_argument("--expect", choices=["covariant", "non-covariant", "invariant", "non-invariant"],
                   default="covariant")
    _common(p)

    p = sub.add_parser("simulate", help="numerical experiments")
    p.add_argument("subject", choices=["boost", "separability", "dispersion", "continuity"])
    p.add_argument("--scheme", choices=["linear", "cubic", "pure-gauge"], default="linear")
    p.add_argument("--n", type=int, default=None, help="points per axis")
    p.add_argument("--L", type=float, default=None, help="box length per axis")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--g", type=float, default=1.0, help="cubic coupling")
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--v-index", type=int, default=8, help="velocity in units of 2 pi / (m L)")
    p.add_argument("--norm", type=float, default=None, help="sum |psi|^2 dV of the separability state")
    p.add_argument("--tol", action="append", default=[], metavar="KEY=VALUE")
    _common(p)
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    return RunConfig.from_namespace(build_parser().parse_args(list(argv)))


# ---------------------------------------------------------------- outputs


def _emit(cfg: RunConfig, payload: dict, lines: list[str], filename: str) -> None:
    out = cfg.option("out")
    if out:
        path = Path(out)
        path.mkdir(parents=True, exist_ok=True)
        (path / filename).write_text(json.dumps(payload, indent=2) + "\n")
    if cfg.option("json"):
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------- commands


def cmd_list(cfg: RunConfig) -> int:
    entries = []
    for key in CATALOG_KEYS:
        item = build(key)
        kind = "lagrangian" if isinstance(item, catalog.LagrangianSpec) else "equation"
        entries.append({"key": key, "kind": kind, "description": item.description})
    payload = {"catalog_version": CATALOG_VERSION, "entries": entries,
               "boost_systems": sorted(SYSTEMS), "gauge_targets": sorted(GAUGE_TARGETS)}
    lines = [f"catalog {CATALOG_VERSION}"]
    lines += [f"  {e['key']:<28} {e['kind']:<10} {e['description']}" for e in entries]
    lines.append("boost systems: " + ", ".join(sorted(SYSTEMS)))
    lines.append("gauge targets: " + ", ".join(sorted(GAUGE_TARGETS)))
    _emit(cfg, payload, lines, "catalog.json")
    return EXIT_OK


def _comparison(name: str, derived, target: str, cofactor) -> dict:
    ok = equals_modulo_cofactor(derived, equation(target).residual, cofactor)
    return {"name": name, "derived": print_canonical(derived), "target": target,
            "cofactor": print_canonical(cofactor), "pass": ok}


def _euler_lagrange_expected(lag: str, fld: str):
    base = {"S": "madelung_continuity", "R": "madelung_hj"}[fld]
    expected = normalize(equation(base).residual).scale(-1)
    if lag == "staruszkiewicz" and fld == "S":
        expected = expected + normalize(parse("4*gamma") * bilaplacian("S"))
    return expected


def cmd_derive(cfg: RunConfig) -> int:
    what = cfg.subject
    checks: list[dict] = []
    if what == "madelung":
        split = catalog.polar_split(equation("se"))
        checks.append(_comparison("se.real", split.real.residual, split.targets[0], split.cofactors[0]))
        checks.append(_comparison("se.imag", split.imag.residual, split.targets[1], split.cofactors[1]))
    elif what == "pg-split":
        split = catalog.polar_split(catalog.pure_gauge(equation("minimal_coupling_se")))
        checks.append(_comparison("minimal_coupling_se+pure_gauge.real", split.real.residual,
                                  split.targets[0], split.cofactors[0]))
        checks.append(_comparison("minimal_coupling_se+pure_gauge.imag", split.imag.residual,
                                  split.targets[1], split.cofactors[1]))
    else:
        lag_name = cfg.option("lagrangian")
        fld = cfg.option("field")
        key = {"se-polar": "lagrangian_se_polar", "staruszkiewicz": "lagrangian_staruszkiewicz"}[lag_name]
        eq = euler_lagrange(lagrangian(key), fld)
        expected = _euler_lagrange_expected(lag_name, fld)
        derived = normalize(eq.residual)
        checks.append({"name": eq.name, "derived": print_canonical(derived),
                       "expected": print_canonical(expected), "pass": derived == expected})
    ok = all(c["pass"] for c in checks)
    payload = {"derive": what, "catalog_version": CATALOG_VERSION, "checks": checks, "pass": ok}
    lines = []
    for c in checks:
        target = c.get("target", "expected")
        lines.append(f"{'PASS' if c['pass'] else 'FAIL'} {c['name']} -> {target}")
        lines.append(f"    {c['derived']}")
    _emit(cfg, payload, lines, f"derive_{what}.json")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_check(cfg: RunConfig) -> int:
    expect = cfg.option("expect")
    want_good = expect in ("covariant", "invariant")
    if cfg.subject == "boost":
        b = BoostSpec.zero() if cfg.option("velocity") == "zero" else BoostSpec()
        report = check_boost_covariance(cfg.option("system"), b)
        stem = f"report_boost_{cfg.option('system')}"
    else:
        report = check_named_gauge(cfg.option("target"))
        stem = f"report_gauge_{cfg.option('target')}"
    payload = report.to_dict()
    payload["expect"] = expect
    matched = report.covariant == want_good
    lines = [f"{report.system}: {report.verdict} (expected {expect}) -> {'OK' if matched else 'UNEXPECTED'}"]
    for c in report.channels:
        lines.append(f"  [{c.name}] residual = {print_canonical(c.residual)}")
    _emit(cfg, payload, lines, stem + ".json")
    return EXIT_OK if matched else EXIT_VERDICT


def cmd_simulate(cfg: RunConfig) -> int:
    import numpy as np

    from .lab import (
        Grid,
        NumericalAbort,
        run_boost_experiment,
        run_continuity_experiment,
        run_dispersion_experiment,
        run_separability_experiment,
    )
    from .lab.experiments import SEPARABILITY_NORM

    try:
        overrides = dict(parse_override(t) for t in cfg.option("tol"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    tol = lambda name: tolerance(name, overrides)  # noqa: E731
    exp = cfg.subject
    scheme = cfg.option("scheme")
    m, g = cfg.option("m"), cfg.option("g")
    opt = lambda name, default: default if cfg.option(name) is None else cfg.option(name)  # noqa: E731
    try:
        if exp == "boost":
            n, L = opt("n", 256), opt("L", 40.0)
            grid = Grid(1, n, L)
            v = 2 * np.pi * cfg.option("v_index") / (m * L)
            diag = run_boost_experiment(grid, v, opt("T", 1.0), scheme, dt=opt("dt", 1e-2), g=g, m=m)
            value = float(diag.boost_mismatch.max())
            if scheme == "pure-gauge" and cfg.option("v_index") != 0:
                metric, passed = "boost_mismatch_final", float(diag.boost_mismatch[-1]) > tol("pure_gauge_mismatch_min")
                value = float(diag.boost_mismatch[-1])
            else:
                metric, passed = "boost_mismatch_max", value < tol("boost_mismatch")
        elif exp == "separability":
            if scheme == "pure-gauge":
                raise UsageError("separability supports the linear and cubic schemes")
            n, L = opt("n", 128), opt("L", 20.0)
            grid = Grid(2, n, L)
            diag = run_separability_experiment(grid, scheme, opt("T", 2.0), g=g, dt=opt("dt", 1e-2), m=m,
                                               norm=opt("norm", SEPARABILITY_NORM))
            if scheme == "cubic" and g != 0:
                metric, value = "schmidt_defect_final", float(diag.schmidt_defect[-1])
                passed = value > tol("schmidt_cubic_min")
            else:
                metric, value = "schmidt_defect_max", float(diag.schmidt_defect.max())
                passed = value < tol("schmidt_linear")
        elif exp == "dispersion":
            grid = Grid(1, opt("n", 256), opt("L", 40.0))
            diag = run_dispersion_experiment(grid, opt("T", 2.0), dt=opt("dt", 1e-2), m=m)
            metric, value = "width_error", diag.extra["width_error"]
            passed = value < tol("width_law")
        else:
            grid = Grid(1, opt("n", 256), opt("L", 40.0))
            diag = run_continuity_experiment(grid, opt("T", 0.4), dt=opt("dt", 1e-3), m=m)
            metric, value = "max_continuity_residual", diag.extra["max_continuity_residual"]
            passed = value < tol("continuity_residual")
    except NumericalAbort as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = cfg.option("out")
    csv_path = None
    if out:
        csv_path = str(diag.to_csv(Path(out) / f"diagnostics_{exp}.csv"))
    payload = {
        "experiment": exp, "scheme": scheme, "metric": metric, "value": value, "pass": passed,
        "final": diag.final(), "config": cfg.to_argv(), "diagnostics_csv": csv_path,
        "catalog_version": CATALOG_VERSION,
    }
    lines = [f"{'PASS' if passed else 'FAIL'} {exp} [{scheme}] {metric} = {value:.3e}"]
    _emit(cfg, payload, lines, f"summary_{exp}.json")
    return EXIT_OK if passed else EXIT_VERDICT


HANDLERS = {"list": cmd_list, "derive": cmd_derive, "check": cmd_check, "simulate": cmd_simulate}


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        return HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
