"""Calculus of linear relations (subspaces of C^n + C^n).

A relation is stored only in canonical form: an orthonormal column basis
of the subspace, top n rows holding the x-components and bottom n rows
the x'-components.  Two relations are the same subspace exactly when
their orthogonal projectors coincide.

Classification restricts the Hermitian forms Re(x', x) and Im(x', x) to
the subspace; maximality in C^n is a pure dimension count (k = n), which
for the accretive/dissipative/accumulative classes is equivalent to the
absence of proper same-class extensions.  The contraction triple (K, V, W)
solves, pair by pair,

    K (x + x')                 = x' - x
    V (e^{i phi} x' + i x)     = e^{i phi} x' - i x
    W (e^{-i phi} x' - i x)    = e^{-i phi} x' + i x

and each is a contraction exactly when the corresponding rotated relation
is accretive-type; the norm defect identity
||x' - x||^2 = ||x + x'||^2 - 4 Re(x', x) is the reason.
"""

from dataclasses import dataclass

import numpy as np

from . import numlin, rand
from .errors import InvalidAngle, NotContraction, NotMaximal

DEFAULT_TOL = 1e-9
PROJECTOR_TOL = 1e-10
CAYLEY_SINGULARITY = 1e-8  # sigma_min/sigma_max below this means not maximal

HALF_PI = 0.5 * np.pi


@dataclass(frozen=True)
class LinearRelation:
    space_dim: int
    basis: np.ndarray  # 2n x k, orthonormal columns

    def __post_init__(self):
        if self.basis.shape[0] != 2 * self.space_dim:
            raise ValueError("basis must have 2n rows")
        k = self.basis.shape[1]
        if k > 2 * self.space_dim:
            raise ValueError("relation dimension cannot exceed 2n")
        gram = self.basis.conj().T @ self.basis
        if k and not np.allclose(gram, np.eye(k), atol=1e-12):
            raise ValueError("basis columns must be orthonormal; "
                             "use from_basis to canonicalize")
        self.basis.setflags(write=False)

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def x_block(self):
        return self.basis[: self.space_dim]

    @property
    def xprime_block(self):
        return self.basis[self.space_dim:]

    def projector(self):
        return self.basis @ self.basis.conj().T

    def close_to(self, other, tol=PROJECTOR_TOL):
        return projector_distance(self, other) <= tol


@dataclass(frozen=True)
class RelationFlags:
    accretive: bool
    dissipative: bool
    accumulative: bool
    maximal: bool


@dataclass(frozen=True)
class ContractionTriple:
    K: np.ndarray
    V: np.ndarray
    W: np.ndarray
    angle: float

    def norms(self):
        return tuple(numlin.operator_norm(M) for M in (self.K, self.V, self.W))


def projector_distance(rel_a, rel_b):
    """Spectral-norm distance between the orthogonal projectors; 0 iff the
    column spans coincide."""
    if rel_a.space_dim != rel_b.space_dim:
        raise ValueError("relations live on different spaces")
    return numlin.operator_norm(rel_a.projector() - rel_b.projector())


def from_basis(n, columns, rank_tol=numlin.DEFAULT_RANK_TOL):
    """Canonicalize arbitrary spanning columns into a LinearRelation."""
    cols = numlin.as_matrix(columns, "columns")
    if cols.shape[0] != 2 * n:
        raise ValueError(f"expected 2n = {2*n} rows, got {cols.shape[0]}")
    return LinearRelation(space_dim=n, basis=numlin.orthonormal_basis(cols, rank_tol))


def relation_from_graph(T):
    """Graph of an operator as a relation: span of [I; T]."""
    T = numlin.as_square(T)
    n = T.shape[0]
    stacked = np.vstack([np.eye(n, dtype=np.complex128), T])
    return from_basis(n, stacked)


def rotate_relation(rel, phi):
    """Multiply the x'-components by e^{i phi}.  The map is unitary on
    C^n + C^n, so orthonormality survives; dimension is preserved."""
    rotated = np.vstack([rel.x_block, np.exp(1j * phi) * rel.xprime_block])
    return LinearRelation(space_dim=rel.space_dim, basis=rotated)


def _pairing_forms(rel):
    """Hermitian k x k matrices of the forms Re(x', x) and Im(x', x)
    restricted to the relation's subspace."""
    X = rel.x_block
    Xp = rel.xprime_block
    G = X.conj().T @ Xp  # c^H G c = (x', x) for (x, x') = (Xc, X'c)
    form_re = 0.5 * (G + G.conj().T)
    form_im = (G - G.conj().T) / 2j
    return form_re, form_im


def classify_relation(rel, tol=DEFAULT_TOL):
    """Accretive / dissipative / accumulative / maximal flags.

    Each sign condition is an eigenvalue test on the restricted pairing
    form; maximality in C^n is the dimension count k = n.
    """
    if rel.dim == 0:
        return RelationFlags(True, True, True, rel.space_dim == 0)
    form_re, form_im = _pairing_forms(rel)
    re_eigs = numlin.hermitian_eigenvalues(form_re)
    im_eigs = numlin.hermitian_eigenvalues(form_im)
    return RelationFlags(
        accretive=float(re_eigs[0]) >= -tol,
        dissipative=float(im_eigs[0]) >= -tol,
        accumulative=float(im_eigs[-1]) <= tol,
        maximal=rel.dim == rel.space_dim,
    )


def is_m_sectorial(rel, phi, tol=DEFAULT_TOL):
    """Maximal-sectorial test at semi-angle phi: the relation is accretive
    and maximal, the +phi rotation is dissipative and the -phi rotation is
    accumulative."""
    if not (0.0 <= phi <= HALF_PI + 1e-15):
        raise InvalidAngle(f"phi must lie in [0, pi/2], got {phi!r}")
    base = classify_relation(rel, tol)
    if not (base.accretive and base.maximal):
        return False
    if not classify_relation(rotate_relation(rel, phi), tol).dissipative:
        return False
    return classify_relation(rotate_relation(rel, -phi), tol).accumulative


def _solve_cayley(numerator, denominator, which):
    s = numlin.singular_values(denominator)
    if s.size == 0 or s[-1] < CAYLEY_SINGULARITY * max(s[0], 1e-300):
        raise NotMaximal(
            f"Cayley denominator for {which} is singular: the relation is "
            f"not maximal {which}-type"
        )
    # solve M @ denominator = numerator for M
    return np.linalg.solve(denominator.conj().T, numerator.conj().T).conj().T


def cayley_triple(rel, phi):
    """Contraction triple (K, V, W) of a maximal sectorial relation.

    K maps x + x' to x' - x; V and W do the same for the +-phi rotations
    composed with the multiplication by -i / +i that turns the
    dissipative/accumulative sign conditions into accretive ones.  When
    the relation is maximal sectorial at phi, all three have norm <= 1;
    a singular denominator raises NotMaximal naming the failing class.

    The angle is not restricted to [0, pi/2]: evaluating V, W below the
    minimal semi-angle is how non-sectoriality shows up (some norm
    exceeds 1).
    """
    if rel.dim != rel.space_dim:
        raise NotMaximal(
            f"relation has dimension {rel.dim}, expected {rel.space_dim}"
        )
    X = rel.x_block
    Xp = rel.xprime_block
    rot = np.exp(1j * phi) * Xp
    rot_conj = np.exp(-1j * phi) * Xp
    K = _solve_cayley(Xp - X, X + Xp, "accretive")
    V = _solve_cayley(rot - 1j * X, rot + 1j * X, "dissipative")
    W = _solve_cayley(rot_conj + 1j * X, rot_conj - 1j * X, "accumulative")
    return ContractionTriple(K=K, V=V, W=W, angle=float(phi))


def relation_from_contraction(K, tol=1e-10):
    """Inverse Cayley map: the relation with pairs
    ((I - K)c / 2, (I + K)c / 2), which is maximal accretive for every
    contraction K.  Raises NotContraction when ||K|| > 1 + tol."""
    K = numlin.as_square(K)
    norm = numlin.operator_norm(K)
    if norm > 1.0 + tol:
        raise NotContraction(f"||K|| = {norm:.12g} exceeds 1 + {tol:g}")
    n = K.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    stacked = np.vstack([0.5 * (eye - K), 0.5 * (eye + K)])
    return from_basis(n, stacked)


def random_sectorial_matrix(n, phi, seed):
    """Deterministic random matrix with minimal semi-angle exactly phi.

    T = B^H (I + iX) B with B random invertible and X Hermitian scaled to
    ||X|| = tan(phi); then (Tx, x) = ||Bx||^2 + i (X Bx, Bx), so the
    quotient arguments sweep exactly [-phi, phi].
    """
    if not (0.0 <= phi < HALF_PI):
        raise InvalidAngle(f"generator needs phi in [0, pi/2), got {phi!r}")
    rng = rand.generator(seed)
    B = rand.invertible(rng, n)
    if phi == 0.0:
        X = np.zeros((n, n), dtype=np.complex128)
    else:
        X = rand.hermitian(rng, n)
        top = numlin.operator_norm(X)
        while top < 1e-8:
            X = rand.hermitian(rng, n)
            top = numlin.operator_norm(X)
        X = X * (np.tan(phi) / top)
    eye = np.eye(n, dtype=np.complex128)
    return B.conj().T @ (eye + 1j * X) @ B


def random_sectorial_relation(n, phi, seed):
    """Graph relation of random_sectorial_matrix; deterministic in seed."""
    return relation_from_graph(random_sectorial_matrix(n, phi, seed))
