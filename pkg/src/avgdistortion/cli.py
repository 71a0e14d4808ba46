"""Command-line front end.

Every command writes exactly one JSON document to stdout.  Errors go to
stderr as ``{"error": ..., "kind": ...}`` with exit code 2 for bad input and
3 for numerical failures.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .bounds import GAP_LIMIT, GAP_LIMIT_STATED, bound_gap, distortion_bounds
from .errors import DistortionError, NumericalFailure
from .estimate import McConfig, McMode, Method, QuadConfig, closed_form, mc_estimate, quad_estimate
from .lln import lln_scan
from .specfun import digamma_half, mean_log_coordinate, sphere_area, xi_paper
from .spectrum import singular_values, spectrum_from_values

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


class BoundsViolation(NumericalFailure):
    """A quadrature estimate fell outside the proven bounds."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _finite_or_str(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else "-inf" if x < 0 else "nan"
    if isinstance(x, dict):
        return {k: _finite_or_str(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_finite_or_str(v) for v in x]
    return x


def dumps(obj) -> str:
    """Single-line JSON; floats use Python's shortest round-trip repr."""
    return json.dumps(_finite_or_str(obj), separators=(",", ":"), allow_nan=False)


# ---------------------------------------------------------------------------
# Input parsing

def _parse_float(token, where):
    try:
        return float(token)
    except ValueError:
        raise UsageError(f"cannot parse {token!r} as a number ({where})") from None


def _detect_format(path: Path, fmt):
    if fmt:
        return fmt
    suffix = path.suffix.lower()
    if suffix in (".csv", ".txt", ""):
        return "csv"
    if suffix == ".json":
        return "json"
    raise UsageError(f"cannot infer format of {path}; pass --format")


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: Path, key):
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict) or key not in doc:
        raise UsageError(f'{path}: expected an object with key "{key}"')
    return doc[key]


def read_matrix(path, fmt=None):
    path = Path(path)
    if _detect_format(path, fmt) == "json":
        rows = _load_json(path, "matrix")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise UsageError(f"{path}: matrix must be a list of rows")
        return [[_parse_float(v, str(path)) for v in row] for row in rows]
    rows = []
    for lineno, line in enumerate(_read(path).splitlines(), start=1):
        if line.strip():
            rows.append([_parse_float(tok.strip(), f"{path}:{lineno}") for tok in line.split(",")])
    return rows


def read_sigmas(path, fmt=None):
    path = Path(path)
    if _detect_format(path, fmt) == "json":
        vals = _load_json(path, "sigmas")
        if not isinstance(vals, list):
            raise UsageError(f"{path}: sigmas must be a list")
        return [_parse_float(v, str(path)) for v in vals]
    vals = []
    for lineno, line in enumerate(_read(path).splitlines(), start=1):
        if line.strip():
            vals.append(_parse_float(line.strip(), f"{path}:{lineno}"))
    return vals


def _inline_values(text):
    try:
        return [float(tok) for tok in text.split(",")]
    except ValueError:
        return None


def resolve_sigmas(text, fmt=None):
    """``--sigmas`` accepts a comma list of numbers or a file path."""
    vals = _inline_values(text)
    if vals is not None:
        return vals
    return read_sigmas(text, fmt)


def _parse_dims(text):
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"--dims must be a comma list of integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# Commands

def constants_dict(n):
    out = {
        "n": n,
        "psi_half": digamma_half(n).to_dict(),
        "mean_log_coordinate": mean_log_coordinate(n).to_dict(),
        "xi_paper": None,
        "sphere_area": sphere_area(n),
        "bound_gap": None,
        "bound_gap_limit": GAP_LIMIT,
        "bound_gap_limit_stated": GAP_LIMIT_STATED,
        "agrees": None,
    }
    if n >= 2:
        out["xi_paper"] = xi_paper(n).to_dict()
        out["bound_gap"] = bound_gap(n)
        out["agrees"] = xi_paper(n) == mean_log_coordinate(n)
    return out


def cmd_constants(n):
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    return constants_dict(n)


def cmd_compute(sigmas=None, matrix=None, method="auto", mc=McConfig(), quad=QuadConfig()):
    if (sigmas is None) == (matrix is None):
        raise UsageError("exactly one of --matrix or --sigmas is required")
    s = singular_values(matrix) if matrix is not None else spectrum_from_values(sigmas)
    estimate = None
    if method == "auto":
        estimate = closed_form(s)
    if method == "mc":
        estimate = mc_estimate(s, mc)
    elif estimate is None:
        estimate = quad_estimate(s, quad)
    bounds = distortion_bounds(s)
    if estimate.method is Method.QUADRATURE:
        slack = 2 * quad.abs_tol
        if not bounds.lower - slack <= estimate.value <= bounds.upper + slack:
            raise BoundsViolation(
                f"quadrature value {estimate.value!r} outside [{bounds.lower!r}, {bounds.upper!r}]"
            )
    n = s.dim
    consts = constants_dict(n)
    return {
        "dim": n,
        "sigmas": list(s.sigmas),
        "estimate": estimate.to_dict(),
        "bounds": bounds.to_dict(),
        "constants": {
            "psi_half": consts["psi_half"],
            "mean_log_coordinate": consts["mean_log_coordinate"],
            "xi_paper": consts["xi_paper"],
            "sphere_area": consts["sphere_area"],
            "gap": consts["bound_gap"],
        },
        "provenance": {
            "method": estimate.method.value,
            "seed": mc.seed if estimate.method is Method.MONTE_CARLO else None,
            "samples": mc.samples if estimate.method is Method.MONTE_CARLO else None,
            "mode": mc.mode.value if estimate.method is Method.MONTE_CARLO else None,
            "abs_tol": quad.abs_tol,
            "max_subdivisions": quad.max_subdivisions,
            "version": __version__,
        },
    }


def cmd_lln(sigma_values, dims, quad=QuadConfig()):
    diag = lln_scan(sigma_values, dims, quad)
    out = diag.to_dict()
    out["abs_tol"] = quad.abs_tol
    out["version"] = __version__
    return out


# ---------------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="avgdistortion", allow_abbrev=False,
                     description="Average log-distortion of a linear map over the unit sphere.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", allow_abbrev=False, help="estimate I(A) with bounds")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", metavar="PATH")
    src.add_argument("--sigmas", metavar="LIST-or-PATH")
    p.add_argument("--method", choices=["mc", "quad", "auto"], default="auto")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["projection", "reduction"], default="projection")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=["csv", "json"], default=None)

    p = sub.add_parser("constants", allow_abbrev=False, help="exact constants for dimension n")
    p.add_argument("n", type=int)

    p = sub.add_parser("lln", allow_abbrev=False, help="law-of-large-numbers scan over prefixes")
    p.add_argument("--sigmas", metavar="PATH", required=True)
    p.add_argument("--dims", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=["csv", "json"], default=None)
    return parser


def _configs(args):
    try:
        quad = QuadConfig(abs_tol=args.tol)
        mc = McConfig(samples=getattr(args, "samples", 100_000), seed=getattr(args, "seed", 0),
                      mode=McMode(getattr(args, "mode", "projection")))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return mc, quad


def run(argv=None):
    """Parse ``argv`` and return ``(exit_code, stdout_text, stderr_text)``."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "constants":
            doc = cmd_constants(args.n)
        elif args.command == "compute":
            mc, quad = _configs(args)
            if args.matrix is not None:
                doc = cmd_compute(matrix=read_matrix(args.matrix, args.format), method=args.method,
                                  mc=mc, quad=quad)
            else:
                doc = cmd_compute(sigmas=resolve_sigmas(args.sigmas, args.format),
                                  method=args.method, mc=mc, quad=quad)
        else:
            _, quad = _configs(args)
            doc = cmd_lln(read_sigmas(args.sigmas, args.format), _parse_dims(args.dims), quad)
    except UsageError as exc:
        return EXIT_INPUT, "", dumps({"error": str(exc), "kind": "usage"})
    except NumericalFailure as exc:
        return EXIT_NUMERIC, "", dumps({"error": str(exc), "kind": type(exc).__name__})
    except (DistortionError, ValueError) as exc:
        return EXIT_INPUT, "", dumps({"error": str(exc), "kind": type(exc).__name__})
    return EXIT_OK, dumps(doc), ""


def main(argv=None):
    code, out, err = run(argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
