"""Seeded random matrix generators used by the relation generator, probe
sampling and the test corpus. All draws are deterministic in the seed."""

import numpy as np

from . import numlin


def generator(seed):
    return np.random.default_rng(seed)


def complex_gaussian(rng, rows, cols=None):
    """Standard complex gaussian matrix (unit expected square magnitude)."""
    if cols is None:
        cols = rows
    return (rng.standard_normal((rows, cols))
            + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def unit_vector(rng, n):
    v = complex_gaussian(rng, n, 1).ravel()
    nrm = np.linalg.norm(v)
    while nrm < 1e-8:  # astronomically unlikely; keeps the draw total
        v = complex_gaussian(rng, n, 1).ravel()
        nrm = np.linalg.norm(v)
    return v / nrm


def hermitian(rng, n):
    G = complex_gaussian(rng, n)
    return 0.5 * (G + G.conj().T)


def unitary(rng, n):
    """Haar-ish unitary via QR with the R diagonal phase fixed."""
    Q, R = np.linalg.qr(complex_gaussian(rng, n))
    d = np.diag(R)
    ph = d / np.abs(np.where(np.abs(d) > 0, d, 1.0))
    return Q * ph[np.newaxis, :]


def contraction(rng, n, norm_cap=None):
    """Random matrix rescaled to operator norm <= 1 (norm uniform when
    norm_cap is None, exactly norm_cap otherwise)."""
    G = complex_gaussian(rng, n)
    top = numlin.operator_norm(G)
    if top == 0.0:
        return G
    target = rng.uniform(0.0, 1.0) if norm_cap is None else norm_cap
    return G * (target / top)


def invertible(rng, n, min_cond=1e-3):
    """Gaussian matrix redrawn until sigma_min >= min_cond * sigma_max."""
    while True:
        B = complex_gaussian(rng, n)
        s = numlin.singular_values(B)
        if s[-1] >= min_cond * s[0]:
            return B


def normal_matrix(rng, n, eigenvalues=None):
    """Normal matrix U diag(lambda) U^H with random unitary U."""
    if eigenvalues is None:
        eigenvalues = (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    U = unitary(rng, n)
    return (U * np.asarray(eigenvalues, dtype=np.complex128)[np.newaxis, :]) @ U.conj().T
