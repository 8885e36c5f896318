"""Wire formats.

Matrix JSON (bit-exact round trip):
    {"rows": R, "cols": C, "data": [[re, im], ...]}  row-major
Relation JSON:
    {"n": n, "basis": <matrix JSON, 2n x k>}         canonical basis
Problem JSON:
    {"a", "b", "A": <matrix>, "K": <matrix>, "grid_points", "basis_size"}

CSV output uses '.' decimals and 17 significant digits so every value
re-parses to the identical double; rows are newline-terminated with a
single header line, optionally preceded by '#' comment lines.
"""

import json
import math

import numpy as np

from .diffop import DiffOpProblem
from .errors import ParseError
from .numlin import as_matrix
from .relcalc import LinearRelation, from_basis


def fmt(x):
    """17-significant-digit decimal, locale-free; inf/nan spelled out."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def matrix_to_obj(M):
    M = as_matrix(M)
    rows, cols = M.shape
    flat = M.reshape(-1)
    return {
        "rows": int(rows),
        "cols": int(cols),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_obj(obj, name="matrix"):
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        data = obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{name}: expected keys rows/cols/data") from exc
    if rows < 0 or cols < 0 or len(data) != rows * cols:
        raise ParseError(
            f"{name}: data length {len(data)} != rows*cols = {rows * cols}"
        )
    out = np.empty(rows * cols, dtype=np.complex128)
    for idx, pair in enumerate(data):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ParseError(f"{name}: entry {idx} is not an [re, im] pair")
        out[idx] = complex(float(pair[0]), float(pair[1]))
    M = out.reshape(rows, cols)
    if M.size and not (np.all(np.isfinite(M.real)) and np.all(np.isfinite(M.imag))):
        raise ParseError(f"{name}: non-finite entries")
    return M


def relation_to_obj(rel):
    return {"n": int(rel.space_dim), "basis": matrix_to_obj(rel.basis)}


def relation_from_obj(obj, name="relation"):
    try:
        n = int(obj["n"])
        basis = matrix_from_obj(obj["basis"], name=f"{name}.basis")
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{name}: expected keys n/basis") from exc
    if basis.shape[0] != 2 * n:
        raise ParseError(f"{name}: basis must have 2n = {2 * n} rows")
    return from_basis(n, basis)


def problem_to_obj(prob):
    return {
        "a": float(prob.a),
        "b": float(prob.b),
        "A": matrix_to_obj(prob.A),
        "K": matrix_to_obj(prob.K),
        "grid_points": int(prob.grid_points),
        "basis_size": int(prob.basis_size),
    }


def problem_from_obj(obj, name="problem"):
    try:
        return DiffOpProblem(
            a=float(obj["a"]),
            b=float(obj["b"]),
            A=matrix_from_obj(obj["A"], name=f"{name}.A"),
            K=matrix_from_obj(obj["K"], name=f"{name}.K") if "K" in obj else None,
            grid_points=int(obj.get("grid_points", 256)),
            basis_size=int(obj.get("basis_size", 8)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{name}: {exc}") from exc


def dump_json(obj):
    """Deterministic JSON text: repr-exact floats, sorted keys, newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json_text(text, name="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: invalid JSON ({exc})") from exc


def csv_text(columns, rows, comments=()):
    """CSV with '#' comment lines, one header line, 17-digit numbers.
    Cells that are strings pass through unchanged."""
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(c if isinstance(c, str) else fmt(c) for c in row))
    return "\n".join(lines) + "\n"


def boundary_rows(boundary):
    return [(t, z.real, z.imag)
            for t, z in zip(boundary.angles, boundary.points)]


def spectrum_rows(report):
    near_half_pi = report.semi_angle_used >= 0.5 * math.pi - 1e-9
    rows = []
    for lam, ratio in zip(report.eigenvalues, report.ratio_stats):
        if near_half_pi:
            inside = lam.real >= 0.0
        else:
            inside = abs(lam.imag) <= math.tan(report.semi_angle_used) * lam.real + 1e-9
        rows.append((lam.real, lam.imag, ratio, "1" if inside else "0"))
    return rows


def sweep_rows(sweep):
    rows = []
    for sample in sweep.samples:
        q = sample.quotient
        phi = math.atan(sample.im_re_ratio) if math.isfinite(sample.im_re_ratio) \
            else 0.5 * math.pi
        rows.append((sample.n, q.real, q.imag, sample.im_re_ratio, phi,
                     sample.source))
    return rows
