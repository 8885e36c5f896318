"""Numerical range computation and sector classification of matrix operators.

The numerical range W(T) is the set of Rayleigh quotients (Tx, x) over
unit vectors.  Sector membership is always decided through eigenvalues of
rotated Hermitian parts, never through pointwise arguments of sampled
quotients: W(T) lies in the closed sector of semi-angle phi exactly when
the Hermitian part of ``exp(i*(phi - pi/2))*T`` and of
``exp(i*(pi/2 - phi))*T`` are both positive semidefinite.
"""

from dataclasses import dataclass, field

import numpy as np

from . import numlin
from ._kernels import support_sweep
from .errors import InvalidAngle

HALF_PI = 0.5 * np.pi

DEFAULT_CLASS_TOL = 1e-9
DEFAULT_ANGLE_TOL = 1e-10
BISECTION_STEPS = 60  # resolves phi to ~1.4e-18 * pi, far below any tol


def real_part(T):
    """Hermitian part (T + T^H)/2."""
    T = numlin.as_square(T)
    return 0.5 * (T + T.conj().T)


def imag_part(T):
    """Skew part divided by i: (T - T^H)/(2i); Hermitian, and
    T = real_part(T) + 1j*imag_part(T)."""
    T = numlin.as_square(T)
    return (T - T.conj().T) / 2j


@dataclass(frozen=True)
class RangeBoundary:
    angles: np.ndarray
    points: np.ndarray

    def hull_vertices(self):
        """Indices of the convex hull of the stored points, by angle order."""
        return _hull_indices(self.points)


@dataclass(frozen=True)
class SectorReport:
    accretive_margin: float
    is_accretive: bool
    semi_angle: float | None
    class_flags: dict = field(default_factory=dict)
    tol: float = DEFAULT_CLASS_TOL


def range_boundary(T, n_angles=360):
    """Sample boundary points of W(T) at n_angles support directions.

    For each theta the top eigenvector of the Hermitian part of
    exp(i*theta)*T realizes the support function; its Rayleigh quotient is
    a boundary point.  The polygon on these points is an inner
    approximation of W(T), the supporting lines an outer one.
    """
    T = numlin.as_square(T)
    if n_angles < 8:
        raise ValueError("n_angles must be at least 8")
    thetas = np.arange(n_angles) * (2.0 * np.pi / n_angles)
    points = support_sweep(T, thetas)
    return RangeBoundary(angles=thetas, points=points)


def _min_eig_rotated(T, angle):
    """Smallest eigenvalue of the Hermitian part of exp(i*angle)*T."""
    H = real_part(np.exp(1j * angle) * T)
    return float(numlin.hermitian_eigenvalues(H)[0])


def _sector_ok(T, phi, threshold):
    half_plane_lo = _min_eig_rotated(T, phi - HALF_PI)
    if half_plane_lo < threshold:
        return False
    return _min_eig_rotated(T, HALF_PI - phi) >= threshold


def semi_angle(T, tol=DEFAULT_ANGLE_TOL):
    """Smallest phi in [0, pi/2] whose sector contains W(T), or None.

    tol is relative to ||T||: the rotated Hermitian parts may dip to
    -tol*||T|| and still count as nonnegative, which makes the result
    invariant under positive scaling of T.  Fixed-depth bisection keeps
    the computation deterministic.
    """
    T = numlin.as_square(T)
    scale = numlin.operator_norm(T)
    if scale == 0.0:
        return 0.0  # W = {0}, inside every sector
    threshold = -tol * scale
    if not _sector_ok(T, HALF_PI, threshold):
        return None
    if _sector_ok(T, 0.0, threshold):
        return 0.0
    lo, hi = 0.0, HALF_PI
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if _sector_ok(T, mid, threshold):
            hi = mid
        else:
            lo = mid
    return hi


def classify_operator(T, phi, tol=DEFAULT_CLASS_TOL):
    """Sector classification of T at candidate semi-angle phi.

    All four flags come from Hermitian eigenvalue tests: accretivity from
    the Hermitian part of T, dissipativity/accumulativity from the skew
    parts of the two rotated operators exp(+-i*phi)*T, sectoriality as
    their conjunction.  Matrices act on all of C^n, so each flag already
    carries maximality.
    """
    T = numlin.as_square(T)
    if not (0.0 <= phi <= HALF_PI + 1e-15):
        raise InvalidAngle(f"phi must lie in [0, pi/2], got {phi!r}")
    margin = float(numlin.hermitian_eigenvalues(real_part(T))[0])
    m_accretive = margin >= -tol
    rotated_plus = numlin.hermitian_eigenvalues(imag_part(np.exp(1j * phi) * T))
    rotated_minus = numlin.hermitian_eigenvalues(imag_part(np.exp(-1j * phi) * T))
    m_dissipative = float(rotated_plus[0]) >= -tol
    m_accumulative = float(rotated_minus[-1]) <= tol
    flags = {
        "m_accretive": m_accretive,
        "m_dissipative": m_dissipative,
        "m_accumulative": m_accumulative,
        "m_sectorial": m_accretive and m_dissipative and m_accumulative,
    }
    angle = semi_angle(T) if m_accretive else None
    return SectorReport(
        accretive_margin=margin,
        is_accretive=m_accretive,
        semi_angle=angle,
        class_flags=flags,
        tol=tol,
    )


def _hull_indices(points):
    """Convex hull (monotone chain) of complex points; indices in hull order.
    Collinear interior points are dropped."""
    pts = [(z.real, z.imag, i) for i, z in enumerate(points)]
    pts = sorted(set(pts), key=lambda p: (p[0], p[1]))
    if len(pts) <= 2:
        return [p[2] for p in pts]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return [p[2] for p in lower[:-1] + upper[:-1]]
