"""First-order operator-differential expression l(u) = u' + A u on the
interval (a, b) with values in C^d.

Three executable facts live here:

* the Rayleigh quotient of the normalized oscillating test function
  u_n(t) = [exp(2*pi*i*n*(t-a)/(b-a)) - 1] f / sqrt(2(b-a))  equals
  (Af, f) + i*n*pi/(b-a) exactly, for every coefficient A and unit f;
  u_n vanishes at both endpoints, so it satisfies u(a) = K u(b) for every
  boundary contraction K simultaneously;
* consequently arctan of the quotient's Im/Re ratio is a lower bound on
  the semi-angle of any accretive boundary-value realization, and it grows
  to pi/2 as n increases: no realization is sectorial with semi-angle
  below pi/2;
* on the orthonormal sine basis (vanishing endpoints, closed-form
  integrals) the Galerkin matrix has Hermitian part I (x) A_R, so the
  discretization is accretive exactly when A is.

The quotient denominators use Re(Af, f), the value the quotient identity
actually produces; for Hermitian PSD coefficients this is positive
whenever Af != 0 but is generally not equal to ||Af||^2.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import numlin
from ._kernels import oscillatory_rayleigh
from .errors import DegenerateDirection, NotContraction, UnderResolved

GRID_RULE_FACTOR = 64  # grid points per oscillation count, >= 32 per period
UNIT_NORM_TOL = 1e-10


@dataclass(frozen=True)
class DiffOpProblem:
    a: float
    b: float
    A: np.ndarray
    K: np.ndarray | None = None
    grid_points: int = 256
    basis_size: int = 8

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b) and self.b > self.a):
            raise ValueError("interval must satisfy b > a (finite)")
        A = numlin.as_square(self.A, "A")
        object.__setattr__(self, "A", A)
        d = A.shape[0]
        K = self.K
        if K is None:
            K = np.zeros((d, d), dtype=np.complex128)
        K = numlin.as_square(K, "K")
        if K.shape[0] != d:
            raise ValueError("K must match the coefficient dimension")
        if numlin.operator_norm(K) > 1.0 + 1e-10:
            raise NotContraction("boundary operator K must be a contraction")
        object.__setattr__(self, "K", K)
        if self.grid_points < 16:
            raise ValueError("grid_points must be at least 16")
        if self.basis_size < 1:
            raise ValueError("basis_size must be at least 1")
        A.setflags(write=False)
        K.setflags(write=False)

    @property
    def length(self):
        return self.b - self.a

    @property
    def dim(self):
        return self.A.shape[0]


@dataclass(frozen=True)
class RayleighSample:
    n: int
    quotient: complex
    im_re_ratio: float  # math.inf when Re <= 0
    source: str  # "analytic" | "quadrature"


@dataclass(frozen=True)
class ObstructionSweep:
    samples: list
    phi_lb: np.ndarray  # phi_lb[k] = arctan(ratio) at n = k + 1, analytic
    coefficient_hypothesis_met: bool  # A Hermitian PSD (the strongest case)
    target_phi: float | None = None
    target_exceeded: bool | None = None
    conclusion: str | None = field(default=None)


def _check_direction(prob, f):
    f = np.asarray(f, dtype=np.complex128).ravel()
    if f.size != prob.dim:
        raise ValueError(f"f must have dimension {prob.dim}")
    if abs(np.linalg.norm(f) - 1.0) > UNIT_NORM_TOL:
        raise ValueError("f must be a unit vector")
    return f


def _ratio(q):
    if q.real <= 0.0:
        return math.inf
    return abs(q.imag) / q.real


def analytic_quotient(prob, f, n):
    """Closed-form Rayleigh quotient (Af, f) + i*n*pi/(b-a) at mode n >= 1."""
    f = _check_direction(prob, f)
    if n < 1:
        raise ValueError("mode index n must be >= 1")
    q = numlin.quadratic_form(prob.A, f) + 1j * n * math.pi / prob.length
    return RayleighSample(n=int(n), quotient=q, im_re_ratio=_ratio(q),
                          source="analytic")


def quadrature_quotient(prob, f, n):
    """Same quotient evaluated by composite Simpson on a uniform grid.

    Enforces the resolution rule grid_points >= 64*n, verifies that the
    test function is unit-normalized under the quadrature and vanishes at
    both endpoints (hence satisfies every contraction boundary condition).
    """
    f = _check_direction(prob, f)
    if n < 1:
        raise ValueError("mode index n must be >= 1")
    if prob.grid_points < GRID_RULE_FACTOR * n:
        raise UnderResolved(
            f"grid_points = {prob.grid_points} violates the rule "
            f">= {GRID_RULE_FACTOR}*n = {GRID_RULE_FACTOR * n}"
        )
    intervals = prob.grid_points - 1
    if intervals % 2 == 1:
        intervals += 1
    q_coeff = numlin.quadratic_form(prob.A, f)
    quotient, norm_sq, end_a, end_b = oscillatory_rayleigh(
        int(n), int(intervals), float(prob.length), q_coeff
    )
    if abs(norm_sq - 1.0) > 1e-10:
        raise ArithmeticError(
            f"quadrature norm check failed: ||u_n||^2 = {norm_sq!r}"
        )
    endpoint_scale = 1.0 / math.sqrt(2.0 * prob.length)
    if max(end_a, end_b) * endpoint_scale > 1e-14:
        raise ArithmeticError("endpoint values of u_n failed to vanish")
    return RayleighSample(n=int(n), quotient=complex(quotient),
                          im_re_ratio=_ratio(complex(quotient)),
                          source="quadrature")


def obstruction_sweep(prob, f, n_max, tol=1e-12, target_phi=None):
    """Quotient samples for n = 1..n_max, analytic and quadrature, plus the
    semi-angle lower bound curve phi_lb(n) = arctan(Im/Re ratio).

    Every sample satisfies all contraction boundary conditions at once, so
    phi_lb bounds the semi-angle of every accretive realization of the
    expression; the curve is strictly increasing and tends to pi/2.
    Requires Re(Af, f) > tol (otherwise the direction is degenerate and a
    different f must be chosen).
    """
    f = _check_direction(prob, f)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    q_coeff = numlin.quadratic_form(prob.A, f)
    if q_coeff.real <= tol:
        raise DegenerateDirection(
            f"Re(Af, f) = {q_coeff.real:.3e} <= tol; pick f with Af != 0 "
            "and positive real pairing"
        )
    samples = []
    phi_lb = np.empty(n_max)
    for n in range(1, n_max + 1):
        analytic = analytic_quotient(prob, f, n)
        grid = max(prob.grid_points, GRID_RULE_FACTOR * n)
        resolved = DiffOpProblem(a=prob.a, b=prob.b, A=prob.A, K=prob.K,
                                 grid_points=grid, basis_size=prob.basis_size)
        quad = quadrature_quotient(resolved, f, n)
        samples.append(analytic)
        samples.append(quad)
        phi_lb[n - 1] = math.atan(analytic.im_re_ratio)

    A = prob.A
    herm = numlin.operator_norm(A - A.conj().T) <= 1e-10 * max(
        numlin.operator_norm(A), 1e-300
    )
    psd = herm and float(numlin.hermitian_eigenvalues(
        0.5 * (A + A.conj().T))[0]) >= -1e-10
    exceeded = None
    conclusion = None
    if target_phi is not None:
        exceeded = bool(phi_lb[-1] > target_phi)
        if exceeded:
            conclusion = (
                f"phi_lb({n_max}) = {phi_lb[-1]:.12g} exceeds the target "
                f"semi-angle {target_phi:.12g}: no realization under a "
                "contraction boundary condition is sectorial within that "
                "sector"
            )
        else:
            conclusion = (
                f"phi_lb({n_max}) = {phi_lb[-1]:.12g} does not exceed "
                f"{target_phi:.12g}; increase n_max (the bound grows "
                "without limit)"
            )
    return ObstructionSweep(
        samples=samples,
        phi_lb=phi_lb,
        coefficient_hypothesis_met=bool(psd),
        target_phi=target_phi,
        target_exceeded=exceeded,
        conclusion=conclusion,
    )


def derivative_pairing_block(m, length):
    """Closed-form matrix D[k, l] = integral of phi_l' * phi_k over the
    orthonormal sine basis phi_k = sqrt(2/L) sin(k*pi*(t-a)/L).

    Nonzero only for odd k+l: D[k, l] = 4 k l / (L (k^2 - l^2)); exactly
    antisymmetric, which is integration by parts with vanishing endpoint
    terms."""
    D = np.zeros((m, m))
    for k in range(1, m + 1):
        for l in range(1, m + 1):
            if (k + l) % 2 == 1:
                D[k - 1, l - 1] = 4.0 * k * l / (length * (k * k - l * l))
    return D


def galerkin_matrix(prob, basis="sine", m=None, adjoint=False):
    """Galerkin matrix of the expression on the sine tensor basis
    {phi_k (x) e_j}, ordered basis-major: row index (k-1)*d + i.

    The derivative block is the closed-form antisymmetric D, the
    coefficient block is I (x) A (the basis is orthonormal), so the result
    is kron(D, I) + kron(I, A).  With adjoint=True the matrix of the
    formal adjoint expression -v' + A^H v is returned, which equals the
    conjugate transpose of the forward matrix."""
    if basis != "sine":
        raise ValueError(f"unsupported basis {basis!r}")
    if m is None:
        m = prob.basis_size
    if m < 1:
        raise ValueError("m must be >= 1")
    d = prob.dim
    D = derivative_pairing_block(m, prob.length)
    eye_m = np.eye(m)
    eye_d = np.eye(d)
    if adjoint:
        return np.kron(-D, eye_d) + np.kron(eye_m, prob.A.conj().T)
    return np.kron(D, eye_d) + np.kron(eye_m, prob.A)


def _simpson_integral(values, h):
    w = np.ones(values.shape[0])
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return (h / 3.0) * np.sum(w * values, axis=0)


def accretivity_equivalence_check(A, a, b, m, tol=1e-9, seed=0):
    """Two-sided check that the discretized expression is accretive exactly
    when the coefficient A is.

    forward: the smallest eigenvalue of the Hermitian part of the Galerkin
    matrix equals the smallest eigenvalue of A_R within tol (the derivative
    block is antisymmetric, so its Hermitian part vanishes).

    backward: for separable probes u = phi(t) f with phi real and vanishing
    at the endpoints, Re of the quadrature pairing (u' + Au, u) equals
    ||phi||^2 * Re(Af, f) to 1e-8.
    """
    A = numlin.as_square(A)
    if m < 2:
        raise ValueError("m must be >= 2")
    prob = DiffOpProblem(a=a, b=b, A=A, basis_size=m)
    herm_part = 0.5 * (A + A.conj().T)
    coeff_min = float(numlin.hermitian_eigenvalues(herm_part)[0])

    G = galerkin_matrix(prob, m=m)
    G_herm = 0.5 * (G + G.conj().T)
    galerkin_min = float(numlin.hermitian_eigenvalues(G_herm)[0])
    forward = abs(galerkin_min - coeff_min) <= tol

    # separable probes u = phi(t) f: three sine modes and a polynomial bump,
    # all real and vanishing at the endpoints, derivatives in closed form
    length = b - a
    n_int = 2048
    s = np.linspace(0.0, length, n_int + 1)
    h = length / n_int
    probes = [
        (np.sin(k * np.pi * s / length),
         (k * np.pi / length) * np.cos(k * np.pi * s / length))
        for k in (1, 2, 3)
    ]
    probes.append((s * (length - s), length - 2.0 * s))
    rng = np.random.default_rng(seed)
    d = A.shape[0]
    directions = [numlin.hermitian_eigs(herm_part)[0].vector]
    for _ in range(3):
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        directions.append(v / np.linalg.norm(v))
    backward = True
    for phi_vals, dphi_vals in probes:
        norm_sq = float(_simpson_integral(phi_vals ** 2, h))
        drift = float(_simpson_integral(dphi_vals * phi_vals, h))
        for f in directions:
            q_coeff = numlin.quadratic_form(A, f)
            # Re(Lu, u) quadrature vs ||phi||^2 Re(Af, f)
            lhs = drift + norm_sq * q_coeff.real
            rhs = norm_sq * q_coeff.real
            scale = max(1.0, norm_sq * abs(q_coeff))
            if abs(lhs - rhs) > 1e-8 * scale:
                backward = False
    return {"forward": bool(forward), "backward": bool(backward)}
