"""Command-line front end.

    wyskew skew --ghz 3 --axes zzz
    wyskew nonlocal --gen-ghz alpha=0.8
    wyskew classify --bell
    wyskew bounds 5
    wyskew sweep werner n=3 --points 11
    wyskew state --werner n=2,lambda=0.5 --out rho.json

Exit codes: 0 success, 2 validation error, 3 numerical failure. Errors are
printed as a JSON object ``{"error": {"type": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    bound_table,
    gen_ghz_value,
    lambda_bracket_check,
    lambda_threshold,
    reference_comparison,
    werner_closed_form,
    werner_separability_threshold,
    werner_value_at_separability_threshold,
)
from .classify import classify
from .errors import NumericalError, SkewError, ValidationError
from .io import digest, read_density, write_density
from .observables import local_sum_operator, observables_from_axes
from .optimize import OptimizerConfig, nonlocal_skew_information
from .skew import skew_information, skew_information_commutator
from .states import (
    DensityMatrix,
    WernerGhzParams,
    bell_state,
    generalized_ghz,
    ghz_state,
    product_pure,
    random_pure,
    werner_ghz,
)

SWEEP_COLUMNS = ["lambda", "closed_form", "direct_sigma_z", "lambda_n", "lambda_0", "exceeds_separable"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def parse_params(text: str) -> dict[str, str]:
    """``"n=3,lambda=0.5"`` -> ``{"n": "3", "lambda": "0.5"}``."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise ValidationError(f"expected key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _int(params, key):
    try:
        return int(params[key])
    except KeyError:
        raise ValidationError(f"missing parameter {key!r}") from None
    except ValueError:
        raise ValidationError(f"parameter {key!r} must be an integer") from None


def _float(params, key):
    try:
        value = float(params[key])
    except KeyError:
        raise ValidationError(f"missing parameter {key!r}") from None
    except ValueError:
        raise ValidationError(f"parameter {key!r} must be a number") from None
    if not math.isfinite(value):
        raise ValidationError(f"parameter {key!r} must be finite")
    return value


def resolve_state(args) -> tuple[DensityMatrix, dict]:
    """Build the state named on the command line; returns it with a spec echo."""
    if args.ghz is not None:
        return ghz_state(args.ghz).density(), {"kind": "ghz", "n": args.ghz}
    if args.bell:
        return bell_state().density(), {"kind": "bell", "n": 2}
    if args.gen_ghz is not None:
        alpha = _float(parse_params(args.gen_ghz), "alpha")
        if not 0 <= alpha <= 1:
            raise ValidationError(f"alpha must lie in [0, 1], got {alpha}")
        beta = math.sqrt(1 - alpha * alpha)
        return generalized_ghz(alpha, beta).density(), {"kind": "gen_ghz", "alpha": alpha, "beta": beta}
    if args.werner is not None:
        p = parse_params(args.werner)
        n, lam = _int(p, "n"), _float(p, "lambda")
        return werner_ghz(WernerGhzParams(n, lam)), {"kind": "werner", "n": n, "lambda": lam}
    if args.product is not None:
        n = _int(parse_params(args.product), "n")
        if n < 1:
            raise ValidationError(f"n must be >= 1, got {n}")
        rng = np.random.default_rng(args.seed)
        psi = product_pure([random_pure([2], rng) for _ in range(n)])
        return psi.density(), {"kind": "product", "n": n}
    if args.custom is not None:
        return read_density(args.custom), {"kind": "custom", "path": str(args.custom)}
    raise ValidationError("no state given; use one of --ghz, --gen-ghz, --werner, --product, --bell, --custom")


def _report(command, args, inputs, results, diagnostics=None) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "diagnostics": diagnostics or {},
        "version": __version__,
        "seed": args.seed,
    }


def _state_inputs(rho, spec) -> dict:
    return {"state": spec, "dims": list(rho.dims), "digest": digest(rho)}


def cmd_skew(args) -> dict:
    rho, spec = resolve_state(args)
    if not args.axes:
        raise ValidationError("--axes is required for skew")
    if len(args.axes) != rho.n_sites:
        raise ValidationError(f"--axes has {len(args.axes)} entries for {rho.n_sites} sites")
    a = local_sum_operator(observables_from_axes(args.axes), rho.dims)
    res = skew_information(rho, a)
    oracle = skew_information_commutator(rho, a)
    n = rho.n_sites
    return _report(
        "skew",
        args,
        {**_state_inputs(rho, spec), "axes": args.axes},
        {
            "value": res.value,
            "form_used": res.form_used,
            "separable_bound": n,
            "violates_separable_bound": res.value > n,
        },
        {"commutator_form": oracle.value, "form_difference": abs(oracle.value - res.value)},
    )


def _optimizer_config(args) -> OptimizerConfig:
    return OptimizerConfig(
        grid_resolution=args.grid_resolution,
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        seed=args.seed,
    )


def _run_optimizer(rho, args):
    config = _optimizer_config(args)
    res = nonlocal_skew_information(rho, config)
    diagnostics = {
        "converged": res.converged,
        "starts_evaluated": res.starts_evaluated,
        "direct_reevaluation": res.direct_value,
        "restart_values": res.trace,
        "config": {
            "grid_resolution": config.grid_resolution,
            "restarts": config.restarts,
            "max_iterations": config.max_iterations,
            "convergence_tolerance": config.convergence_tolerance,
        },
    }
    return res, diagnostics


def cmd_nonlocal(args) -> dict:
    rho, spec = resolve_state(args)
    res, diagnostics = _run_optimizer(rho, args)
    results = {
        "value": res.value,
        "best_bloch_vectors": [list(b.a) for b in res.best_observables],
        "best_angles": [float(x) for x in res.best_angles],
    }
    if spec["kind"] == "gen_ghz":
        results["closed_form"] = gen_ghz_value(spec["alpha"], spec["beta"])
    if spec["kind"] == "werner":
        results["closed_form"] = werner_closed_form(spec["n"], spec["lambda"])
    return _report("nonlocal", args, _state_inputs(rho, spec), results, diagnostics)


def cmd_classify(args) -> dict:
    rho, spec = resolve_state(args)
    res, diagnostics = _run_optimizer(rho, args)
    verdict = classify(res.value, rho.n_sites, args.margin)
    results = {
        "i_value": verdict.i_value,
        "certified_min_class": verdict.certified_min_class,
        "n": verdict.n,
        "fully_entangled_certified": verdict.fully_entangled_certified,
        "thresholds": list(verdict.thresholds.e),
        "margin": verdict.margin,
        "verdict": verdict.describe(),
    }
    return _report("classify", args, _state_inputs(rho, spec), results, diagnostics)


def cmd_bounds(args) -> dict:
    n = args.n
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    results = {
        "n": n,
        "E": list(bound_table(n).e),
        "lambda_n": lambda_threshold(n),
        "lambda_0": werner_separability_threshold(n),
        "werner_value_at_lambda_0": werner_value_at_separability_threshold(n),
    }
    if n >= 8:
        lo, hi, holds = lambda_bracket_check(n)
        results["lambda_n_bracket"] = {"lower": lo, "upper": hi, "holds": holds}
    if n == 3:
        ref = reference_comparison()
        results["table_I"] = {
            "classes": ["ES_1", "ES_2", "ES_3"],
            "MK": list(ref.mk),
            "BI2": list(ref.bi2),
            "WY": list(ref.wy),
            "note": "MK and BI2 rows are quoted reference constants",
        }
    return _report("bounds", args, {"n": n}, results)


def cmd_sweep(args) -> dict:
    if args.family != "werner":
        raise ValidationError(f"only the werner family can be swept, got {args.family!r}")
    n = _int(parse_params(args.params), "n")
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    if args.points < 2:
        raise ValidationError("--points must be >= 2")
    lam_n = lambda_threshold(n)
    lam_0 = werner_separability_threshold(n)
    a = local_sum_operator(observables_from_axes("z" * n))
    rows = []
    for lam in np.linspace(0.0, 1.0, args.points):
        lam = float(lam)
        closed = werner_closed_form(n, lam)
        direct = skew_information(werner_ghz(WernerGhzParams(n, lam)), a).value
        rows.append(
            {
                "lambda": lam,
                "closed_form": closed,
                "direct_sigma_z": direct,
                "lambda_n": lam_n,
                "lambda_0": lam_0,
                "exceeds_separable": closed > n,
            }
        )
    max_diff = max(abs(r["closed_form"] - r["direct_sigma_z"]) for r in rows)
    return _report(
        "sweep",
        args,
        {"family": "werner", "n": n, "points": args.points},
        {"rows": rows},
        {"max_abs_difference": max_diff},
    )


def cmd_state(args) -> dict:
    rho, spec = resolve_state(args)
    if args.out is None:
        raise ValidationError("state needs --out PATH")
    write_density(rho, args.out)
    args.out = None  # the report goes to stdout, the file holds the matrix
    return _report("state", args, _state_inputs(rho, spec), {"written": True})


def _add_state_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ghz", type=int, metavar="N")
    g.add_argument("--gen-ghz", metavar="alpha=A")
    g.add_argument("--werner", metavar="n=N,lambda=L")
    g.add_argument("--product", metavar="n=N", help="random pure product state drawn from --seed")
    g.add_argument("--bell", action="store_true")
    g.add_argument("--custom", type=Path, metavar="PATH")


def _add_output_flags(p, default_format="json"):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const="json")
    g.add_argument("--csv", dest="format", action="store_const", const="csv")
    p.set_defaults(format=default_format)
    p.add_argument("--out", type=Path, metavar="PATH")
    p.add_argument("--seed", type=int, default=0)


def _add_optimizer_flags(p):
    d = OptimizerConfig()
    p.add_argument("--restarts", type=int, default=d.restarts)
    p.add_argument("--grid-resolution", type=int, default=d.grid_resolution)
    p.add_argument("--max-iterations", type=int, default=d.max_iterations)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wyskew", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("skew", help="I(rho, A_1 + ... + A_n) for Pauli axes")
    _add_state_flags(p)
    p.add_argument("--axes", help="one of x|y|z per site, e.g. zzz")
    _add_output_flags(p)
    p.set_defaults(func=cmd_skew)

    p = sub.add_parser("nonlocal", help="maximize over local spin observables")
    _add_state_flags(p)
    _add_optimizer_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_nonlocal)

    p = sub.add_parser("classify", help="certified entanglement depth")
    _add_state_flags(p)
    _add_optimizer_flags(p)
    p.add_argument("--margin", type=float, default=1e-6)
    _add_output_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", help="E_k table, Werner thresholds, three-qubit comparison")
    p.add_argument("n", type=int)
    _add_output_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", help="Werner-GHZ closed form vs direct computation")
    p.add_argument("family")
    p.add_argument("params", metavar="n=N")
    p.add_argument("--points", type=int, default=21)
    _add_output_flags(p, default_format="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("state", help="write a state to a density-matrix file")
    _add_state_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_state)
    return parser


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(value) if isinstance(value, list) else value))


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report["command"] == "sweep":
        w.writerow(SWEEP_COLUMNS)
        for row in report["results"]["rows"]:
            w.writerow([repr(row[c]) if isinstance(row[c], float) else row[c] for c in SWEEP_COLUMNS])
    else:
        rows = []
        _flatten("", report["results"], rows)
        w.writerow(["field", "value"])
        w.writerows(rows)
    return buf.getvalue()


def _error(exc: Exception) -> str:
    return json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}) + "\n"


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report = args.func(args)
        text = render(report, args.format)
    except ValidationError as exc:
        sys.stdout.write(_error(exc))
        return 2
    except (NumericalError, np.linalg.LinAlgError) as exc:
        sys.stdout.write(_error(exc))
        return 3
    except SkewError as exc:  # pragma: no cover - every subclass is handled above
        sys.stdout.write(_error(exc))
        return 3
    if args.out is not None:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0
