"""Command line: ``orbitnf analyze | verify | faces``.

Exit codes: 0 success, 1 invalid input, 2 a self-check or verification
check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .exactmath import ParseError, rat_parse, rat_to_json
from .normalform import (
    AccountingError,
    compute_C,
    compute_mgs,
    dimension_report,
    mgs_to_json,
)
from .oracle import (
    DEFAULT_RANK_TOL,
    Prng,
    eig_hermitian,
    isotropy_group_check,
    sample_KM_conjugate,
    symplectic_form_check,
    tangent_slice_dims,
)
from .pattern import (
    M_SHAPE,
    P_SHAPE,
    W_SHAPE,
    InterlacingError,
    SpectrumPair,
    build_pattern,
    multiset_stats,
    pattern_to_json,
    sum_identity_residual,
    validate_interlacing,
)
from .polytope import EnumerationBoundError, enumerate_faces, lattice_to_json
from .realization import (
    build_point_spec,
    factorization_check,
    membership_check,
    moment_projection,
    point_spec_to_json,
    reduced_identity_check,
    render_numeric,
)

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    lam: tuple[Fraction, ...] | None
    mu: tuple[Fraction, ...] | None
    input_path: str | None = None
    tolerance: float = 1e-8
    rank_tol: float = DEFAULT_RANK_TOL
    seed: int = 0
    samples: int = 10
    format: str = "json"
    timings: bool = False
    invariants: bool = True

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InputError("tolerance must be positive")
        if self.samples < 0:
            raise InputError("samples must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must fit in 64 unsigned bits")

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "lambda": None if self.lam is None else [rat_to_json(v) for v in self.lam],
            "mu": None if self.mu is None else [rat_to_json(v) for v in self.mu],
            "input_path": self.input_path,
        }
        if self.command == "verify":
            out.update(
                tolerance=self.tolerance, rank_tol=self.rank_tol, seed=self.seed, samples=self.samples
            )
        if self.command == "faces":
            out["invariants"] = self.invariants
        return out


def parse_spectrum(text: str) -> tuple[Fraction, ...]:
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise InputError(f"empty spectrum {text!r}")
    try:
        return tuple(rat_parse(t) for t in items)
    except ParseError as exc:
        raise InputError(str(exc)) from exc


def _json_spectrum(value) -> tuple[Fraction, ...]:
    if isinstance(value, str):
        return parse_spectrum(value)
    if not isinstance(value, list):
        raise InputError("spectra in JSON must be lists or comma-separated strings")
    out = []
    for v in value:
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise InputError(f"spectrum entries must be integers or rational strings, got {v!r}")
        try:
            out.append(rat_parse(v) if isinstance(v, str) else Fraction(v))
        except ParseError as exc:
            raise InputError(str(exc)) from exc
    return tuple(out)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    lam = parse_spectrum(args.lam) if args.lam else None
    mu = parse_spectrum(args.mu) if getattr(args, "mu", None) else None
    if args.input:
        try:
            data = json.loads(Path(args.input).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
        if not isinstance(data, dict):
            raise InputError("input JSON must be an object with 'lambda' and 'mu'")
        if lam is None and "lambda" in data:
            lam = _json_spectrum(data["lambda"])
        if mu is None and "mu" in data:
            mu = _json_spectrum(data["mu"])
    if lam is None:
        raise InputError("lambda is required (--lambda or --input)")
    if args.command != "faces" and mu is None:
        raise InputError("mu is required (--mu or --input)")
    return RunConfig(
        command=args.command,
        lam=lam,
        mu=mu if args.command != "faces" else None,
        input_path=args.input,
        tolerance=getattr(args, "tol", 1e-8),
        rank_tol=getattr(args, "rank_tol", DEFAULT_RANK_TOL),
        seed=getattr(args, "seed", 0),
        samples=getattr(args, "samples", 10),
        format=args.format,
        timings=getattr(args, "timings", False),
        invariants=not getattr(args, "no_invariants", False),
    )


def _header(config: RunConfig) -> dict:
    return {"tool": "orbitnf", "version": __version__, "config": config.to_json()}


# -- analyze ----------------------------------------------------------------


def exact_selfchecks(pair: SpectrumPair) -> list[dict]:
    pattern = build_pattern(pair)
    mgs = compute_mgs(pair, pattern)
    checks = []
    residual = sum_identity_residual(pair, pattern)
    checks.append({"name": "sum_identity", "passed": residual == 0, "residual": rat_to_json(residual)})

    c_values = {}
    c_ok = True
    for comp in pattern.components:
        if comp.shape == M_SHAPE:
            continue
        C = compute_C(pair, comp.label, pattern, mgs.r_squared)
        c_values[rat_to_json(comp.label)] = rat_to_json(C)
        c_ok &= (C == 0) == (comp.shape == W_SHAPE)
    checks.append({"name": "C_vanishing", "passed": c_ok, "C": c_values})

    r_ok = all((r > 0) == (mgs.shapes[v] == M_SHAPE) for v, r in mgs.r_squared.items())
    checks.append({"name": "r_squared_sign", "passed": r_ok})
    spec = build_point_spec(pair, pattern)
    checks.append({"name": "membership", "passed": membership_check(pair, spec)})
    checks.append({"name": "reduced_identity", "passed": reduced_identity_check(pair, pattern)})
    checks.append({"name": "factorization", "passed": factorization_check(pair, pattern)})
    return checks


def cmd_analyze(config: RunConfig) -> tuple[dict, int]:
    pair = validate_interlacing(config.lam, config.mu)
    pattern = build_pattern(pair)
    report = _header(config)
    report["pattern"] = pattern_to_json(pattern)
    report["shapes"] = {
        s: [rat_to_json(v) for v in pattern.labels(s)] for s in (W_SHAPE, M_SHAPE, P_SHAPE)
    }
    try:
        mgs = compute_mgs(pair, pattern)
        dims = dimension_report(mgs, multiset_stats(pair.lam))
        report["normal_form"] = mgs_to_json(mgs, dims)
        report["point"] = point_spec_to_json(build_point_spec(pair, pattern))
        checks = exact_selfchecks(pair)
    except AccountingError as exc:
        checks = [{"name": "accounting", "passed": False, "message": str(exc)}]
    report["selfchecks"] = checks
    ok = all(c["passed"] for c in checks)
    report["status"] = "pass" if ok else "fail"
    return report, EXIT_OK if ok else EXIT_CHECK


# -- verify -----------------------------------------------------------------


def _check(name: str, passed: bool, deviation: float | None, tolerance: float | None, **extra) -> dict:
    out = {
        "name": name,
        "status": "pass" if passed else "fail",
        "deviation": deviation,
        "tolerance": tolerance,
    }
    out.update(extra)
    return out


def cmd_verify(config: RunConfig) -> tuple[dict, int]:
    pair = validate_interlacing(config.lam, config.mu)
    pattern = build_pattern(pair)
    spec = build_point_spec(pair, pattern)
    lam = np.array([float(v) for v in pair.lam])
    mu_diag = np.diag([float(v) for v in pair.mu]).astype(complex)
    spec_tol = config.tolerance * (1 + float(np.max(np.abs(lam))))
    checks = []

    def timed(fn):
        t0 = time.perf_counter()
        out = fn()
        return out, time.perf_counter() - t0

    def add(entry: dict, seconds: float) -> None:
        if config.timings:
            entry["runtime_s"] = seconds
        checks.append(entry)

    eig, dt = timed(lambda: eig_hermitian(render_numeric(spec)))
    dev = float(np.max(np.abs(np.array(eig) - lam)))
    add(_check("spectrum", dev <= spec_tol, dev, spec_tol), dt)

    sl, dt = timed(lambda: tangent_slice_dims(pair, config.rank_tol))
    add(
        _check(
            "slice_dims",
            sl.matches_prediction() and sl.constraint_residual <= config.tolerance,
            sl.constraint_residual,
            config.tolerance,
            quotient_dims=sl.quotient_dims,
            predicted=sl.predicted,
            dim_U=[b.dim_U for b in sl.blocks],
            dim_V=[b.dim_V for b in sl.blocks],
            warnings=sl.warnings,
        ),
        dt,
    )

    if pattern.labels(P_SHAPE):
        dev, dt = timed(lambda: symplectic_form_check(pair, config.rank_tol))
        add(_check("symplectic_form", dev <= config.tolerance, dev, config.tolerance), dt)
    else:
        add({"name": "symplectic_form", "status": "skipped", "deviation": None,
             "tolerance": config.tolerance, "reason": "no parallelogram labels"}, 0.0)

    iso, dt = timed(lambda: isotropy_group_check(pair, config.rank_tol))
    add(
        _check("isotropy", iso.ok, iso.generator_residual, config.tolerance,
               dim=iso.dim, expected=iso.expected, message=iso.message),
        dt,
    )

    if config.samples:
        root = Prng(config.seed)
        worst_spec = worst_proj = 0.0
        t0 = time.perf_counter()
        for k in range(config.samples):
            p = sample_KM_conjugate(spec, root.fork(k))
            ev = eig_hermitian(p)
            worst_spec = max(worst_spec, float(np.max(np.abs(np.array(ev) - lam))))
            proj = moment_projection(p).entries
            worst_proj = max(worst_proj, float(np.max(np.abs(proj - mu_diag))))
        dt = time.perf_counter() - t0
        add(
            _check("sampled_points", worst_spec <= spec_tol and worst_proj <= 1e-12,
                   worst_spec, spec_tol, projection_deviation=worst_proj,
                   samples=config.samples, seed=config.seed),
            dt,
        )

    report = _header(config)
    report["checks"] = checks
    ok = all(c["status"] != "fail" for c in checks)
    report["status"] = "pass" if ok else "fail"
    return report, EXIT_OK if ok else EXIT_CHECK


# -- faces ------------------------------------------------------------------


def cmd_faces(config: RunConfig) -> tuple[dict, int]:
    lattice = enumerate_faces(config.lam)
    report = _header(config)
    report["lattice"] = lattice_to_json(lattice, invariants=config.invariants)
    report["status"] = "pass"
    return report, EXIT_OK


# -- output -----------------------------------------------------------------


def render_text(report: dict) -> str:
    lines = [f"orbitnf {report['version']} {report['config']['command']}: {report['status']}"]
    if "shapes" in report:
        for s, labels in report["shapes"].items():
            lines.append(f"  {s}-shapes: {', '.join(labels) or '-'}")
        nf = report.get("normal_form")
        if nf:
            lines.append(f"  c = {nf['c']}")
            lines.append("  L = " + " x ".join(b["group"] for b in nf["L_blocks"]))
            lines.append(f"  W = {nf['W']}")
            for s in nf["W_summands"]:
                lines.append(f"    C[{s['value']}] = {s['C']}")
            d = nf["dimensions"]
            lines.append(
                f"  dim orbit {d['dim_orbit']} = {d['dim_KmodL']} + {d['dim_mstar']} + {d['dim_W']}"
            )
        for c in report["selfchecks"]:
            lines.append(f"  [{'pass' if c['passed'] else 'FAIL'}] {c['name']}")
    for c in report.get("checks", []):
        dev = "" if c["deviation"] is None else f" deviation {c['deviation']:.3e} (tol {c['tolerance']:.1e})"
        lines.append(f"  [{c['status']}] {c['name']}{dev}")
    if "lattice" in report:
        lat = report["lattice"]
        lines.append(f"  f-vector: {tuple(lat['f_vector'])}")
        lines.append(f"  faces: {len(lat['faces'])}, Hasse edges: {len(lat['hasse'])}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitnf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"orbitnf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_mu: bool) -> None:
        p.add_argument("--lambda", dest="lam", help='comma-separated rationals, e.g. "6,6,5,3/2"')
        if with_mu:
            p.add_argument("--mu", help="comma-separated rationals")
        p.add_argument("--input", help="JSON file with 'lambda' (and 'mu') lists")
        p.add_argument("--format", choices=("json", "text"), default="json")

    common(sub.add_parser("analyze", help="pattern, normal form data and exact self-checks"), True)
    v = sub.add_parser("verify", help="numerical oracle checks")
    common(v, True)
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=10)
    v.add_argument("--timings", action="store_true", help="include wall-clock runtimes (not reproducible)")
    f = sub.add_parser("faces", help="face lattice of the interlacing polytope")
    common(f, False)
    f.add_argument("--no-invariants", action="store_true", help="skip per-face normal form data")
    return parser


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "faces": cmd_faces}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        report, code = COMMANDS[config.command](config)
    except (InputError, InterlacingError, EnumerationBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if config.format == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(render_text(report) + "\n")
    return code
