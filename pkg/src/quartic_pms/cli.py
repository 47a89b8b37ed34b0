"""Command-line interface: every command writes a CSV or JSON table.

Exit codes: 0 success, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace
from fractions import Fraction

import numpy as np

from . import __version__
from .baselines import (bf_partition, bf_temperature_energies, fk_ground_energy, fk_partition,
                        relative_error)
from .effective_frequency import OscillatorParams
from .errors import DomainError, QuarticError
from .oracle import (MIN_BETA, BasisSpec, exact_partition, exact_spectrum, exact_temperature_energies,
                     minimal_beta)
from .pms import (MODELS, classical_partition, harmonic_partition, partition_function, solve_pms,
                  zn_fan)
from .series import (EXACT_RSPT_COEFFS, EXACT_STRONG_COUPLING, bender_wu_ratio, strong_coupling_coeffs,
                     weak_coupling_energy)
from .spectrum import finite_temperature_energies, gap_quantities, temperature_gap

__all__ = ["main", "build_parser"]

MAX_BASIS = 3200


class UsageError(Exception):
    pass


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _nonneg_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (math.isfinite(value) and value >= 0):
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def _float_list(kind):
    def parse(text):
        items = [s for s in text.split(",") if s.strip()]
        if not items:
            raise argparse.ArgumentTypeError("empty list")
        return [kind(s.strip()) for s in items]
    return parse


def _model_list(text):
    models = [s.strip() for s in text.split(",") if s.strip()]
    bad = [m for m in models if m not in MODELS]
    if bad or not models:
        raise argparse.ArgumentTypeError(f"unknown model(s) {bad}; choose from {','.join(MODELS)}")
    return list(dict.fromkeys(models))


def _add_common(p, g_default=1.0):
    p.add_argument("--omega", type=_positive_float, default=1.0)
    p.add_argument("--g", type=_nonneg_float, default=g_default)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="write to this file instead of standard output")
    p.add_argument("--solver-tol", type=_positive_float, default=1e-12)
    p.add_argument("--basis-size", type=int, default=200, help="initial oracle basis size")


def _add_beta_range(p, default_min, default_max, default_steps):
    p.add_argument("--beta", type=_float_list(_positive_float), help="explicit comma-separated beta values")
    p.add_argument("--beta-min", type=_positive_float, default=default_min)
    p.add_argument("--beta-max", type=_positive_float, default=default_max)
    p.add_argument("--steps", type=int, default=default_steps)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quartic-pms", description="PMS partition function of the quartic oscillator")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("z", help="partition function and free energy per model")
    _add_common(p)
    _add_beta_range(p, 0.1, 10.0, 100)
    p.add_argument("--model", type=_model_list, default=["pms", "exact"])

    p = sub.add_parser("zn-scan", help="Z_n on a fan of trial frequencies")
    _add_common(p)
    p.add_argument("--beta", type=_positive_float, default=5.0)
    p.add_argument("--n-min", type=_positive_float, default=1.0)
    p.add_argument("--n-max", type=_positive_float, default=20.0)
    p.add_argument("--n-steps", type=int, default=60)
    p.add_argument("--fan-count", type=int, default=13)
    p.add_argument("--fan-width", type=float, default=0.3)

    p = sub.add_parser("energies", help="E0, E1 of the model and the oracle over a g grid")
    _add_common(p)
    p.add_argument("--g-list", type=_float_list(_nonneg_float), default=[0.0, 0.5, 1.0, 2.0, 5.0, 10.0])

    p = sub.add_parser("series", help="weak- or strong-coupling coefficients")
    _add_common(p)
    p.add_argument("--mode", choices=("weak", "strong"), default="weak")
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--convention", choices=("derived", "printed"), default="derived")

    p = sub.add_parser("compare", help="relative free-energy errors of BF, FK and the model")
    _add_common(p)
    p.add_argument("--beta-list", type=_float_list(_positive_float), default=[10.0, 5.0, 2.0, 1.0, 0.1])
    p.add_argument("--g-list", type=_float_list(_nonneg_float), default=[0.01, 1.0, 10.0])

    p = sub.add_parser("gap-scan", help="temperature-dependent gaps of all models")
    _add_common(p)
    _add_beta_range(p, 0.5, 20.0, 40)
    return parser


def _betas(args):
    if args.beta:
        values = args.beta
    else:
        if args.steps < 1:
            raise UsageError("--steps must be at least 1")
        if args.beta_min > args.beta_max:
            raise UsageError("--beta-min exceeds --beta-max")
        if args.steps == 1:
            values = [args.beta_min]
        else:
            values = [float(v) for v in np.linspace(args.beta_min, args.beta_max, args.steps)]
    return sorted(set(values))


def _oracle(params, betas, basis_size):
    """Oracle spectrum whose converged part covers the smallest requested beta."""
    if basis_size < 10:
        raise UsageError("--basis-size must be at least 10")
    basis = BasisSpec(size=basis_size)
    beta_lo = min(betas)
    while True:
        spec = exact_spectrum(params, basis)
        if beta_lo < MIN_BETA or minimal_beta(spec) <= beta_lo or 2 * basis.size > MAX_BASIS:
            return spec
        basis = replace(basis, size=2 * basis.size)


def cmd_z(args):
    params = OscillatorParams(args.omega, args.g)
    betas = _betas(args)
    models = args.model
    spec = _oracle(params, betas, args.basis_size) if "exact" in models else None
    rows = []
    for beta in betas:
        points = {}
        for m in models:
            if m == "pms":
                points[m] = partition_function(beta, params, args.solver_tol)
            elif m == "fk":
                points[m] = fk_partition(beta, params)
            elif m == "bf":
                points[m] = bf_partition(beta, params)
            elif m == "exact":
                points[m] = exact_partition(beta, spec)
            elif m == "classical":
                points[m] = classical_partition(beta, params)
            else:
                points[m] = harmonic_partition(beta, params.omega)
        for m in sorted(models):
            pt = points[m]
            row = {"beta": beta, "model": m, "Z": pt.z, "F": pt.free_energy}
            if "exact" in points:
                row["error"] = pt.z - points["exact"].z
            if "classical" in points:
                row["rel_classical"] = math.expm1(pt.log_z - points["classical"].log_z)
            rows.append(row)
    return rows


def cmd_zn_scan(args):
    params = OscillatorParams(args.omega, args.g)
    if args.fan_count < 1 or args.fan_count % 2 == 0:
        raise UsageError("--fan-count must be a positive odd integer")
    if args.n_steps < 2 or args.n_min >= args.n_max:
        raise UsageError("need --n-min < --n-max and --n-steps >= 2")
    if not 0 <= args.fan_width < 1:
        raise UsageError("--fan-width must lie in [0, 1)")
    ns = np.geomspace(args.n_min, args.n_max, args.n_steps)
    rows = [{"kind": "curve", "n": n, "offset": off, "omega_g": w, "Z_n": z}
            for n, off, w, z in zn_fan(args.beta, params, ns, args.fan_count, args.fan_width)]
    sol = solve_pms(args.beta, params, args.solver_tol)
    marker = partition_function(args.beta, params, args.solver_tol)
    rows.append({"kind": "pms", "n": sol.n_c, "offset": 0.0, "omega_g": sol.omega_g_star, "Z_n": marker.z})
    return rows


def cmd_energies(args):
    rows = []
    for g in sorted(set(args.g_list)):
        params = OscillatorParams(args.omega, g)
        s = gap_quantities(params)
        spec = exact_spectrum(params, BasisSpec(size=args.basis_size))
        rows.append({
            "g": g, "E0_model": s.e0, "E1_model": s.e1, "E0_exact": spec.e0, "E1_exact": spec.e1,
            "gap_model": s.gap, "gap_exact": spec.gap,
            "gap_error_pct": 100.0 * (s.gap - spec.gap) / spec.gap,
        })
    return rows


def cmd_series(args):
    if args.mode == "weak":
        if args.order < 0:
            raise UsageError("--order must be non-negative")
        coeffs = weak_coupling_energy(args.order, args.omega)
        rows = []
        for n, c in enumerate(coeffs):
            rows.append({
                "n": n, "coefficient": c, "decimal": float(c),
                "exact": EXACT_RSPT_COEFFS[n] if n < len(EXACT_RSPT_COEFFS) else None,
                "bender_wu_ratio": bender_wu_ratio(coeffs, n) if n >= 2 else None,
            })
        return rows
    sc = strong_coupling_coeffs(args.omega, args.convention)
    return [{"n": n, "alpha": a, "exact": EXACT_STRONG_COUPLING[n] if args.omega == 1 else None}
            for n, a in enumerate(sc.alpha_n)]


def cmd_compare(args):
    rows = []
    for g in sorted(set(args.g_list)):
        params = OscillatorParams(args.omega, g)
        betas = sorted(set(args.beta_list), reverse=True)
        spec = _oracle(params, betas, args.basis_size)
        for beta in betas:
            f_ex = exact_partition(beta, spec).free_energy
            rows.append({
                "g": g, "beta": beta, "F_exact": f_ex,
                "eps_bf": relative_error(bf_partition(beta, params).free_energy, f_ex),
                "eps_fk": relative_error(fk_partition(beta, params).free_energy, f_ex),
                "eps_model": relative_error(partition_function(beta, params, args.solver_tol).free_energy, f_ex),
            })
    return rows


def cmd_gap_scan(args):
    params = OscillatorParams(args.omega, args.g)
    betas = _betas(args)
    spec = _oracle(params, betas, args.basis_size)
    summary = gap_quantities(params)
    e0_fk = fk_ground_energy(params)
    rows = []
    for beta in betas:
        fk = temperature_gap(beta, fk_partition(beta, params).log_z, e0_fk, 0.0)
        rows.append({
            "beta": beta,
            "gap_model": finite_temperature_energies(beta, params, summary).gap_beta,
            "gap_bf": bf_temperature_energies(beta, params).gap_beta,
            "gap_fk": fk.gap_beta,
            "gap_exact": exact_temperature_energies(beta, spec).gap_beta,
        })
    return rows


COMMANDS = {
    "z": cmd_z, "zn-scan": cmd_zn_scan, "energies": cmd_energies,
    "series": cmd_series, "compare": cmd_compare, "gap-scan": cmd_gap_scan,
}


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def render(rows, fmt, meta) -> str:
    if fmt == "json":
        doc = {"meta": meta, "rows": [{k: _json_value(v) for k, v in r.items()} for r in rows]}
        return json.dumps(doc, indent=2) + "\n"
    columns = list(dict.fromkeys(k for r in rows for k in r))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _meta(args):
    return {
        "omega": args.omega,
        "g": getattr(args, "g_list", None) or args.g,
        "tolerances": {"solver": args.solver_tol, "oracle_basis_size": args.basis_size},
        "version": __version__,
        "command": args.command,
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows = COMMANDS[args.command](args)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (QuarticError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    text = render(rows, args.format, _meta(args))
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
