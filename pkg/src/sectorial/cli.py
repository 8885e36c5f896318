"""Batch command-line surface.

One command per invocation; data goes to --out (or stdout), diagnostics
to stderr.  Exit code 0 on success, 2 on negative classification verdicts
(not sectorial, not maximal, not a contraction, singular shift, degenerate
direction), 1 on any other error.  Identical configurations produce
byte-identical outputs; angles are radians unless suffixed 'deg'.
"""

import argparse
import math
import re
import sys

import numpy as np

from . import diffop, numlin, oprange, relcalc, serialize, spectheory
from ._version import VERSION
from .errors import (
    DegenerateDirection,
    NotContraction,
    NotHermitian,
    NotMaximal,
    NotNormal,
    NotSectorial,
    ParseError,
    SectorialError,
    SingularShift,
)

NEGATIVE = (NotSectorial, NotMaximal, NotContraction, SingularShift,
            DegenerateDirection, NotNormal, NotHermitian)


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        raise UsageError(message)


def parse_angle(text):
    """Radians by default; '30deg' (or trailing 'd') selects degrees."""
    text = text.strip().lower()
    m = re.fullmatch(r"(-?[0-9.eE+-]+)\s*(deg|d)?", text)
    if not m:
        raise UsageError(f"cannot parse angle {text!r}")
    value = float(m.group(1))
    return math.radians(value) if m.group(2) else value


def _read_json(path, name):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return serialize.load_json_text(fh.read(), name=name)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _load_matrix(path):
    return serialize.matrix_from_obj(_read_json(path, path), name=path)


def _load_relation(path):
    return serialize.relation_from_obj(_read_json(path, path), name=path)


def _parse_direction(text, dim):
    m = re.fullmatch(r"e([0-9]+)", text)
    if m:
        idx = int(m.group(1))
        if not 1 <= idx <= dim:
            raise UsageError(f"basis direction {text} out of range 1..{dim}")
        f = np.zeros(dim, dtype=np.complex128)
        f[idx - 1] = 1.0
        return f
    vec = _load_matrix(text).ravel()
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise UsageError("direction vector must be nonzero")
    return vec / norm


def _config_echo(args):
    skip = {"command", "diffop_action", "out", "func"}
    echo = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        echo[key.rstrip("_")] = value if isinstance(value, (int, float, bool)) \
            else str(value)
    return echo


def _envelope(args, result, tolerances=None):
    body = {
        "tool": "sectorial",
        "version": VERSION,
        "command": args.command if args.command != "diffop"
        else f"diffop.{args.diffop_action}",
        "config": _config_echo(args),
        "result": result,
    }
    if tolerances:
        body["tolerances"] = tolerances
    return serialize.dump_json(body)


def _csv_comments(args):
    cmd = args.command if args.command != "diffop" \
        else f"diffop.{args.diffop_action}"
    echo = " ".join(f"{k}={v}" for k, v in _config_echo(args).items())
    return (f"tool: sectorial {VERSION}", f"command: {cmd}", f"config: {echo}")


# -- command implementations -------------------------------------------------

def _cmd_gen(args):
    T = relcalc.random_sectorial_matrix(args.n, args.phi, args.seed)
    if args.as_ == "relation":
        obj = serialize.relation_to_obj(relcalc.relation_from_graph(T))
    else:
        obj = serialize.matrix_to_obj(T)
    return serialize.dump_json(obj), 0


def _cmd_classify(args):
    T = _load_matrix(args.in_)
    report = oprange.classify_operator(T, args.phi, args.tol)
    result = {
        "accretive_margin": report.accretive_margin,
        "is_accretive": report.is_accretive,
        "semi_angle": report.semi_angle,
        "class_flags": report.class_flags,
        "phi": args.phi,
    }
    code = 0 if report.class_flags["m_sectorial"] else 2
    return _envelope(args, result, {"tol": report.tol}), code


def _cmd_range(args):
    T = _load_matrix(args.in_)
    boundary = oprange.range_boundary(T, n_angles=args.angles)
    rows = serialize.boundary_rows(boundary)
    if args.format == "csv":
        return serialize.csv_text(("theta", "re", "im"), rows,
                                  comments=_csv_comments(args)), 0
    result = {"points": [{"theta": t, "re": re_, "im": im_}
                         for t, re_, im_ in rows]}
    return _envelope(args, result), 0


def _cmd_relation(args):
    if args.from_ == "graph":
        rel = relcalc.relation_from_graph(_load_matrix(args.in_))
    elif args.from_ == "contraction":
        rel = relcalc.relation_from_contraction(_load_matrix(args.in_))
    else:
        rel = _load_relation(args.in_)
    if args.rotate is not None:
        rel = relcalc.rotate_relation(rel, args.rotate)
    flags = relcalc.classify_relation(rel, args.tol)
    result = {
        "relation": serialize.relation_to_obj(rel),
        "flags": {
            "accretive": flags.accretive,
            "dissipative": flags.dissipative,
            "accumulative": flags.accumulative,
            "maximal": flags.maximal,
        },
    }
    return _envelope(args, result, {"tol": args.tol}), 0


def _cmd_cayley(args):
    if args.from_ == "graph":
        rel = relcalc.relation_from_graph(_load_matrix(args.in_))
    else:
        rel = _load_relation(args.in_)
    triple = relcalc.cayley_triple(rel, args.phi)
    norms = triple.norms()
    result = {
        "angle": triple.angle,
        "K": serialize.matrix_to_obj(triple.K),
        "V": serialize.matrix_to_obj(triple.V),
        "W": serialize.matrix_to_obj(triple.W),
        "norms": {"K": norms[0], "V": norms[1], "W": norms[2]},
        "sectorial_at_angle": bool(relcalc.is_m_sectorial(rel, abs(args.phi), args.tol)),
    }
    return _envelope(args, result, {"tol": args.tol}), 0


def _cmd_spectrum(args):
    T = _load_matrix(args.in_)
    report = spectheory.sector_spectrum_report(T, args.tol)
    rows = serialize.spectrum_rows(report)
    if args.format == "csv":
        return serialize.csv_text(("re", "im", "ratio", "in_sector"), rows,
                                  comments=_csv_comments(args)), 0
    result = {
        "semi_angle_used": report.semi_angle_used,
        "sector_violations": report.sector_violations,
        "eigenvalues": [{"re": r[0], "im": r[1], "ratio": r[2],
                         "in_sector": r[3] == "1"} for r in rows],
    }
    return _envelope(args, result, {"tol": args.tol}), 0


def _cmd_factorize(args):
    T = _load_matrix(args.in_)
    report = spectheory.factorize(T, args.alpha, probes=args.probes,
                                  seed=args.seed)
    result = {
        "alpha": report.alpha,
        "residual": report.residual,
        "p_min_real_quotient": report.p_min_real_quotient,
        "bracket_inverse_norm": report.bracket_inverse_norm,
        "P": serialize.matrix_to_obj(report.P),
    }
    return _envelope(args, result), 0


def _cmd_schatten(args):
    M = _load_matrix(args.in_)
    p = math.inf if args.p.strip().lower() in ("inf", "infinity") \
        else float(args.p)
    if args.alpha is not None:
        profile = spectheory.resolvent_schatten_profile(M, args.alpha, p)
        result = {"p": "inf" if p == math.inf else p, "alpha": args.alpha,
                  "lhs": profile["lhs"], "rhs": profile["rhs"]}
    else:
        result = {"p": "inf" if p == math.inf else p,
                  "norm": numlin.schatten_norm(M, p)}
    return _envelope(args, result), 0


def _build_problem(args):
    if args.in_ is not None:
        return serialize.problem_from_obj(_read_json(args.in_, args.in_))
    if args.a is None or args.b is None or args.A is None:
        raise UsageError("either --in problem.json or all of --a --b --A")
    return diffop.DiffOpProblem(
        a=args.a, b=args.b, A=_load_matrix(args.A),
        K=_load_matrix(args.K) if args.K else None,
        grid_points=args.grid, basis_size=args.m,
    )


def _cmd_diffop(args):
    prob = _build_problem(args)
    if args.diffop_action == "quotient":
        f = _parse_direction(args.f, prob.dim)
        analytic = diffop.analytic_quotient(prob, f, args.n)
        grid = max(prob.grid_points, diffop.GRID_RULE_FACTOR * args.n)
        resolved = diffop.DiffOpProblem(a=prob.a, b=prob.b, A=prob.A, K=prob.K,
                                        grid_points=grid,
                                        basis_size=prob.basis_size)
        quad = diffop.quadrature_quotient(resolved, f, args.n)
        result = {
            "n": args.n,
            "analytic": {"re": analytic.quotient.real,
                         "im": analytic.quotient.imag,
                         "ratio": analytic.im_re_ratio},
            "quadrature": {"re": quad.quotient.real, "im": quad.quotient.imag,
                           "ratio": quad.im_re_ratio},
            "difference": abs(analytic.quotient - quad.quotient),
        }
        return _envelope(args, result), 0
    if args.diffop_action == "sweep":
        f = _parse_direction(args.f, prob.dim)
        sweep = diffop.obstruction_sweep(prob, f, args.nmax,
                                         target_phi=args.phi)
        rows = serialize.sweep_rows(sweep)
        if args.format == "csv":
            return serialize.csv_text(
                ("n", "re", "im", "ratio", "phi_lb", "source"), rows,
                comments=_csv_comments(args)), 0
        result = {
            "phi_lb": list(sweep.phi_lb),
            "coefficient_hypothesis_met": sweep.coefficient_hypothesis_met,
            "target_phi": sweep.target_phi,
            "target_exceeded": sweep.target_exceeded,
            "conclusion": sweep.conclusion,
            "samples": [{"n": r[0], "re": r[1], "im": r[2], "ratio": r[3],
                         "phi_lb": r[4], "source": r[5]} for r in rows],
        }
        return _envelope(args, result), 0
    if args.diffop_action == "galerkin":
        M = diffop.galerkin_matrix(prob, m=args.m, adjoint=args.adjoint)
        return serialize.dump_json(serialize.matrix_to_obj(M)), 0
    if args.diffop_action == "check":
        flags = diffop.accretivity_equivalence_check(
            prob.A, prob.a, prob.b, args.m, tol=args.tol)
        return _envelope(args, flags, {"tol": args.tol}), 0
    raise UsageError(f"unknown diffop action {args.diffop_action!r}")


# -- parser -------------------------------------------------------------------

def build_parser():
    parser = Parser(prog="sectorial",
                    description="Sectorial operator and linear relation "
                                "toolkit (finite-dimensional)")
    parser.add_argument("--version", action="version",
                        version=f"sectorial {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, fmt=False):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--tol", type=float, default=1e-9)
        if fmt:
            p.add_argument("--format", choices=("json", "csv"),
                           default="json")

    p = sub.add_parser("gen", help="seeded random sectorial test matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--phi", type=parse_angle, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--as", dest="as_", choices=("matrix", "relation"),
                   default="matrix")
    add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("classify", help="sector classification of a matrix")
    p.add_argument("--in", dest="in_", required=True)
    p.add_argument("--phi", type=parse_angle, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("range", help="numerical range boundary sweep")
    p.add_argument("--in", dest="in_", required=True)
    p.add_argument("--angles", type=int, default=360)
    add_common(p, fmt=True)
    p.set_defaults(func=_cmd_range)

    p = sub.add_parser("relation", help="canonicalize and classify a relation")
    p.add_argument("--in", dest="in_", required=True)
    p.add_argument("--from", dest="from_",
                   choices=("graph", "contraction", "relation"),
                   default="graph")
    p.add_argument("--rotate", type=parse_angle, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_relation)

    p = sub.add_parser("cayley", help="contraction triple of a relation")
    p.add_argument("--in", dest="in_", required=True)
    p.add_argument("--from", dest="from_", choices=("graph", "relation"),
                   default="relation")
    p.add_argument("--phi", type=parse_angle, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_cayley)

    p = sub.add_parser("spectrum", help="eigenvalue sector report")
    p.add_argument("--in", dest="in_", required=True)
    add_common(p, fmt=True)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("factorize", help="shifted resolvent factorization")
    p.add_argument("--in", dest="in_", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--probes", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(func=_cmd_factorize)

    p = sub.add_parser("schatten", help="Schatten norm / resolvent profile")
    p.add_argument("--in", dest="in_", required=True)
    p.add_argument("--p", required=True, help="order >= 1, or 'inf'")
    p.add_argument("--alpha", type=float, default=None,
                   help="compare resolvent norms at this shift")
    add_common(p)
    p.set_defaults(func=_cmd_schatten)

    p = sub.add_parser("diffop", help="first-order expression experiments")
    p.add_argument("diffop_action",
                   choices=("quotient", "sweep", "galerkin", "check"))
    p.add_argument("--in", dest="in_", default=None,
                   help="problem JSON (alternative to --a/--b/--A)")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--A", default=None, help="coefficient matrix JSON path")
    p.add_argument("--K", default=None, help="boundary contraction JSON path")
    p.add_argument("--f", default="e1",
                   help="unit direction: e<k> or a vector JSON path")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--nmax", type=int, default=64)
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--phi", type=parse_angle, default=None,
                   help="target semi-angle for the sweep conclusion")
    p.add_argument("--adjoint", action="store_true",
                   help="galerkin: matrix of the formal adjoint expression")
    add_common(p, fmt=True)
    p.set_defaults(func=_cmd_diffop)

    return parser


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        text, code = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SectorialError as exc:
        print(f"{exc.qualified_name}: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, NEGATIVE) else 1
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write(args.out, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
