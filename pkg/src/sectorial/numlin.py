"""Dense complex linear algebra substrate.

Matrices are plain ``numpy.ndarray`` values with dtype complex128; every
public function validates shape and finiteness on entry.  The inner
product convention is fixed globally and linear in the FIRST slot:

    inner(x, y) = sum_j x_j * conj(y_j)

so ``inner(T @ x, x)`` is the Rayleigh quotient form used everywhere.
Eigenvector phases are canonicalized (largest-magnitude component made
real positive) so repeated runs produce identical reports.
"""

from typing import NamedTuple

import numpy as np

from .errors import InvalidOrder, NoConvergence, NotHermitian, NotSquare

DEFAULT_SYMMETRY_TOL = 1e-10
DEFAULT_RANK_TOL = 1e-10
DEFAULT_RESIDUAL_TOL = 1e-9


class EigenPair(NamedTuple):
    value: complex
    vector: np.ndarray


def as_matrix(obj, name="matrix"):
    """Validate and return a 2-D finite complex128 array."""
    M = np.asarray(obj, dtype=np.complex128)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    if M.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {M.shape}")
    if M.size and not (np.all(np.isfinite(M.real)) and np.all(np.isfinite(M.imag))):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return M


def as_square(obj, name="matrix"):
    M = as_matrix(obj, name)
    if M.shape[0] != M.shape[1]:
        raise NotSquare(f"{name} must be square, got shape {M.shape}")
    return M


def inner(x, y):
    """Inner product linear in the first slot: sum_j x_j * conj(y_j)."""
    return complex(np.vdot(np.asarray(y), np.asarray(x)))


def quadratic_form(T, x):
    """(Tx, x) under the first-slot-linear convention, i.e. x^H T x."""
    x = np.asarray(x, dtype=np.complex128)
    return complex(np.vdot(x, np.asarray(T) @ x))


def operator_norm(M):
    """Spectral norm (largest singular value); 0.0 for empty input."""
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def _canonical_phase(vectors):
    """Rotate each column so its largest-magnitude entry is real positive."""
    V = np.array(vectors, dtype=np.complex128, copy=True)
    for j in range(V.shape[1]):
        col = V[:, j]
        k = int(np.argmax(np.abs(col)))
        a = col[k]
        if abs(a) > 0:
            V[:, j] = col * (np.conj(a) / abs(a))
    return V


def hermitian_eigs(M, tol=DEFAULT_SYMMETRY_TOL, residual_tol=DEFAULT_RESIDUAL_TOL):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises NotHermitian when ||M - M^H|| > tol * ||M||.  Eigenvectors are
    orthonormal with canonical phases; the reconstruction residual is
    checked against residual_tol * ||M||.
    """
    M = as_square(M)
    scale = operator_norm(M)
    if operator_norm(M - M.conj().T) > tol * max(scale, 1e-300):
        raise NotHermitian(f"symmetry defect exceeds {tol:g} * ||M||")
    try:
        values, vectors = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    vectors = _canonical_phase(vectors)
    residual = operator_norm(M @ vectors - vectors * values[np.newaxis, :])
    if residual > residual_tol * max(scale, 1e-300):
        raise NoConvergence(f"residual {residual:g} exceeds budget")
    return [EigenPair(complex(v), vectors[:, j]) for j, v in enumerate(values)]


def hermitian_eigenvalues(M):
    """Ascending real eigenvalues of a Hermitian matrix. No symmetry check;
    callers pass matrices Hermitian by construction."""
    return np.linalg.eigvalsh(M)


def general_eigs(M, residual_tol=DEFAULT_RESIDUAL_TOL):
    """All eigenpairs of a square matrix, sorted by ascending real part,
    ties by imaginary part, then original index."""
    M = as_square(M)
    scale = operator_norm(M)
    try:
        values, vectors = np.linalg.eig(M)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    order = np.lexsort((np.arange(values.size), values.imag, values.real))
    values = values[order]
    vectors = _canonical_phase(vectors[:, order])
    residual = operator_norm(M @ vectors - vectors * values[np.newaxis, :])
    if residual > residual_tol * max(scale, 1e-300):
        raise NoConvergence(f"residual {residual:g} exceeds budget")
    return [EigenPair(complex(v), vectors[:, j]) for j, v in enumerate(values)]


def general_eigenvalues(M):
    """Eigenvalues only, in the general_eigs order."""
    values = np.linalg.eigvals(as_square(M))
    order = np.lexsort((np.arange(values.size), values.imag, values.real))
    return values[order]


def singular_values(M):
    """Singular values in descending order (nonnegative)."""
    M = as_matrix(M)
    if M.size == 0:
        return np.zeros(min(M.shape))
    try:
        s = np.linalg.svd(M, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return np.maximum(s, 0.0)


def schatten_norm(M, p):
    """(sum_j s_j^p)^(1/p) over singular values; p = inf gives s_1."""
    if not (p == np.inf or p >= 1.0):
        raise InvalidOrder(f"Schatten order must be >= 1 or inf, got {p!r}")
    s = singular_values(M)
    if s.size == 0:
        return 0.0
    if p == np.inf:
        return float(s[0])
    if p == 1.0:
        return float(np.sum(s))
    top = float(s[0])
    if top == 0.0:
        return 0.0
    # factor out s_1 to avoid overflow for large p
    return top * float(np.sum((s / top) ** p) ** (1.0 / p))


def orthonormal_basis(columns, rank_tol=DEFAULT_RANK_TOL):
    """Orthonormal basis (as columns) of the column span of the input.

    Numerical rank is the count of singular values above
    ``rank_tol * s_1``; zero input yields a zero-column result.
    """
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    A = as_matrix(columns, "columns")
    if A.shape[1] == 0 or not np.any(A):
        return np.zeros((A.shape[0], 0), dtype=np.complex128)
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(s > rank_tol * s[0]))
    return _canonical_phase(U[:, :rank])
