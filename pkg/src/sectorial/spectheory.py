"""Resolvent factorization, Schatten diagnostics and eigenvalue sector
reports for sectorial matrices.

The central identity, valid for every square T and every shift alpha with
T_R + alpha invertible, is

    T + alpha = (T_R + alpha) P (T_R + alpha),
    P = (T_R + alpha)^{-1} + i (T_R + alpha)^{-1} T_I (T_R + alpha)^{-1},

together with Re(Px, x) = (y, (T_R + alpha) y) for y = (T_R + alpha)^{-1} x.
For accretive T this gives Re(Px, x) >= alpha * ||y||^2 on every probe.
Note the bound controls Re(Px, x) relative to ||y||^2, not to ||x||^2, so
no sector inclusion for W(P) itself is asserted here; only the literally
derived quotient inequality is checked and reported.
"""

from dataclasses import dataclass

import numpy as np

from . import numlin, oprange, rand
from .errors import NoConvergence, NotNormal, NotSectorial, SingularShift

DEFAULT_TOL = 1e-9
DEFAULT_PROBES = 256
SHIFT_SINGULARITY = 1e-12


@dataclass(frozen=True)
class FactorizationReport:
    alpha: float
    P: np.ndarray
    residual: float
    p_min_real_quotient: float
    bracket_inverse_norm: float


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray  # ascending real part
    semi_angle_used: float
    sector_violations: int
    ratio_stats: np.ndarray  # |lambda| / Re(lambda), per eigenvalue


def _shifted_inverse(T_R, alpha):
    n = T_R.shape[0]
    S = T_R + alpha * np.eye(n, dtype=np.complex128)
    s = numlin.singular_values(S)
    if s.size and s[-1] < SHIFT_SINGULARITY * max(s[0], 1e-300):
        ratio = s[-1] / s[0] if s[0] > 0 else 0.0
        raise SingularShift(
            f"T_R + {alpha!r} I is numerically singular "
            f"(sigma_min/sigma_max = {ratio:.3e})"
        )
    return S, np.linalg.inv(S)


def factorize(T, alpha, probes=DEFAULT_PROBES, seed=0):
    """Factorization report for T + alpha at shift alpha > 0.

    The report carries the relative residual of the identity (an algebraic
    zero, so <= 1e-11 always), the minimum over probe vectors of
    Re(Px, x) / ||(T_R + alpha)^{-1} x||^2, and ||P^{-1}||.  Probes are
    `probes` seeded random unit vectors plus every eigenvector of the
    Hermitian part of P.
    """
    T = numlin.as_square(T)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    T_R = oprange.real_part(T)
    T_I = oprange.imag_part(T)
    S, S_inv = _shifted_inverse(T_R, alpha)
    P = S_inv + 1j * (S_inv @ T_I @ S_inv)

    shifted = T + alpha * np.eye(T.shape[0], dtype=np.complex128)
    residual = (numlin.operator_norm(shifted - S @ P @ S)
                / max(numlin.operator_norm(shifted), 1e-300))

    rng = rand.generator(seed)
    n = T.shape[0]
    probe_list = [rand.unit_vector(rng, n) for _ in range(probes)]
    probe_list += [pair.vector for pair in numlin.hermitian_eigs(oprange.real_part(P))]
    q_min = np.inf
    for x in probe_list:
        y = S_inv @ x
        denom = float(np.real(np.vdot(y, y)))
        if denom <= 0.0:
            continue
        q_min = min(q_min, np.real(numlin.quadratic_form(P, x)) / denom)

    s_P = numlin.singular_values(P)
    inv_norm = float("inf") if s_P[-1] == 0.0 else float(1.0 / s_P[-1])
    return FactorizationReport(
        alpha=float(alpha),
        P=P,
        residual=float(residual),
        p_min_real_quotient=float(q_min),
        bracket_inverse_norm=inv_norm,
    )


def resolvent_schatten_profile(T, alpha, p):
    """Schatten-p norms of (T + alpha)^{-1} (lhs) and (T_R + alpha)^{-1}
    (rhs), reported side by side for empirical comparison.  No comparison
    constant between the two is asserted."""
    T = numlin.as_square(T)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    T_R = oprange.real_part(T)
    _, S_inv = _shifted_inverse(T_R, alpha)
    eye = np.eye(T.shape[0], dtype=np.complex128)
    shifted = T + alpha * eye
    s = numlin.singular_values(shifted)
    if s.size and s[-1] < SHIFT_SINGULARITY * max(s[0], 1e-300):
        raise SingularShift(f"T + {alpha!r} I is numerically singular")
    lhs = numlin.schatten_norm(np.linalg.inv(shifted), p)
    rhs = numlin.schatten_norm(S_inv, p)
    return {"lhs": float(lhs), "rhs": float(rhs)}


def sector_spectrum_report(T, tol=DEFAULT_TOL):
    """Eigenvalues of T checked against the sector of its semi-angle.

    Each eigenpair must reproduce its eigenvalue as a Rayleigh quotient
    (real and imaginary parts separately, to 1e-8 relative); violations
    of |Im(lambda)| <= tan(phi) Re(lambda) + tol are counted.  Ratio
    statistics |lambda| / Re(lambda) lie in [1, sec(phi)] for a sectorial
    matrix; an eigenvalue at zero contributes ratio 1 (inside every
    sector, vertex included).
    """
    T = numlin.as_square(T)
    phi = oprange.semi_angle(T)
    if phi is None:
        raise NotSectorial("operator is not accretive: no semi-angle exists")
    scale = max(numlin.operator_norm(T), 1e-300)
    pairs = numlin.general_eigs(T)
    mismatch_budget = 1e-8 * max(scale, 1.0)
    violations = 0
    ratios = np.empty(len(pairs))
    eigenvalues = np.empty(len(pairs), dtype=np.complex128)
    near_half_pi = phi >= 0.5 * np.pi - 1e-9
    for idx, (lam, vec) in enumerate(pairs):
        eigenvalues[idx] = lam
        q = numlin.quadratic_form(T, vec)
        if (abs(q.real - lam.real) > mismatch_budget
                or abs(q.imag - lam.imag) > mismatch_budget):
            raise NoConvergence(
                f"eigenpair {idx} fails its Rayleigh identity by "
                f"{abs(q - lam):.3e}; eigenvector quality insufficient"
            )
        if near_half_pi:
            violated = lam.real < -tol
        else:
            violated = abs(lam.imag) > np.tan(phi) * lam.real + tol
        violations += int(violated)
        if abs(lam) <= 1e-14 * scale:
            ratios[idx] = 1.0
        elif lam.real <= 0.0:
            ratios[idx] = np.inf
        else:
            ratios[idx] = abs(lam) / lam.real
    return SpectrumReport(
        eigenvalues=eigenvalues,
        semi_angle_used=float(phi),
        sector_violations=int(violations),
        ratio_stats=ratios,
    )


def normal_asymptotics_check(T, tol=DEFAULT_TOL):
    """Multiset check spec(T_R) = Re spec(T) for a normal matrix.

    Both spectra are sorted ascending and compared elementwise; the
    maximum mismatch is returned along with the matched ratio list
    |lambda_n| / lambda_n(T_R) used in truncation studies.
    """
    T = numlin.as_square(T)
    scale = max(numlin.operator_norm(T), 1e-300)
    commutator = T @ T.conj().T - T.conj().T @ T
    if numlin.operator_norm(commutator) > tol * scale ** 2:
        raise NotNormal("||T T^H - T^H T|| exceeds tol * ||T||^2")
    lam_sorted = numlin.general_eigenvalues(T)  # ascending by real part
    re_spec = lam_sorted.real
    herm_spec = np.sort(numlin.hermitian_eigenvalues(oprange.real_part(T)))
    max_mismatch = float(np.max(np.abs(re_spec - herm_spec))) if re_spec.size else 0.0

    ratios = np.empty(lam_sorted.size)
    for idx in range(lam_sorted.size):
        denom = herm_spec[idx]
        num = abs(lam_sorted[idx])
        if abs(denom) <= 1e-14 * scale:
            ratios[idx] = 1.0 if num <= 1e-14 * scale else np.inf
        else:
            ratios[idx] = num / denom
    return {"max_mismatch": max_mismatch, "ratio_tail": ratios}
