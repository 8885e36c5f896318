"""Hot numeric kernels, each in a numba and a pure-numpy variant.

Two loops dominate runtime in practice and live here:

* the composite-Simpson reduction of the oscillatory Rayleigh integrand
  used by the differential-operator quadrature, and
* the angle sweep extracting numerical-range boundary points (one
  Hermitian eigensolve per support direction).

Grid phases are computed from exact integer arithmetic
(``(n*j) mod N``), which makes the endpoint values of the oscillating
profile vanish exactly and keeps both variants in agreement to ~1e-14.
"""

import numpy as np

from ._backend import use_numba

_TWO_PI = 2.0 * np.pi


# -- pure numpy variants ----------------------------------------------------

def _simpson_weights(n_intervals):
    w = np.ones(n_intervals + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w


def _oscillatory_rayleigh_numpy(n, n_intervals, length, q_coeff):
    j = np.arange(n_intervals + 1)
    phase = _TWO_PI * (np.mod(n * j, n_intervals) / n_intervals)
    e = np.cos(phase) + 1j * np.sin(phase)
    omega = _TWO_PI * n / length
    profile = e - 1.0
    dprofile = 1j * omega * e
    sq = profile.real ** 2 + profile.imag ** 2
    integrand = np.conj(profile) * dprofile + sq * q_coeff
    w = _simpson_weights(n_intervals)
    scale = (1.0 / (2.0 * length)) * (length / n_intervals) / 3.0
    quotient = scale * np.sum(w * integrand)
    norm_sq = scale * np.sum(w * sq)
    return quotient, norm_sq, abs(profile[0]), abs(profile[-1])


def _support_sweep_numpy(T, thetas):
    n = T.shape[0]
    points = np.empty(thetas.shape[0], np.complex128)
    for k in range(thetas.shape[0]):
        M = np.exp(1j * thetas[k]) * T
        H = 0.5 * (M + M.conj().T)
        _, vecs = np.linalg.eigh(H)
        x = vecs[:, n - 1]
        points[k] = np.vdot(x, T @ x)
    return points


# -- numba variants (compiled lazily on first use) --------------------------

_compiled = {}


def _numba_kernels():
    if _compiled:
        return _compiled
    from numba import njit

    @njit(cache=True)
    def oscillatory_rayleigh(n, n_intervals, length, q_coeff):
        omega = _TWO_PI * n / length
        acc = 0.0 + 0.0j
        acc_norm = 0.0
        end_a = 0.0
        end_b = 0.0
        for j in range(n_intervals + 1):
            if j == 0 or j == n_intervals:
                w = 1.0
            elif j % 2 == 1:
                w = 4.0
            else:
                w = 2.0
            phase = _TWO_PI * ((n * j) % n_intervals) / n_intervals
            e = complex(np.cos(phase), np.sin(phase))
            profile = e - 1.0
            sq = profile.real ** 2 + profile.imag ** 2
            acc += w * (np.conj(profile) * (1j * omega * e) + sq * q_coeff)
            acc_norm += w * sq
            if j == 0:
                end_a = abs(profile)
            if j == n_intervals:
                end_b = abs(profile)
        scale = (1.0 / (2.0 * length)) * (length / n_intervals) / 3.0
        return scale * acc, scale * acc_norm, end_a, end_b

    @njit(cache=True)
    def support_sweep(T, thetas):
        n = T.shape[0]
        points = np.empty(thetas.shape[0], np.complex128)
        for k in range(thetas.shape[0]):
            M = np.exp(1j * thetas[k]) * T
            H = 0.5 * (M + np.conj(M.T))
            _, vecs = np.linalg.eigh(H)
            x = np.ascontiguousarray(vecs[:, n - 1])
            points[k] = np.vdot(x, T @ x)
        return points

    _compiled["oscillatory_rayleigh"] = oscillatory_rayleigh
    _compiled["support_sweep"] = support_sweep
    return _compiled


# -- dispatch ----------------------------------------------------------------

def oscillatory_rayleigh(n, n_intervals, length, q_coeff):
    """Simpson sums for the mode-n rotating-exponential profile on a grid
    of ``n_intervals`` panels over an interval of the given length.

    Returns ``(quotient_integral, norm_squared, |profile(a)|, |profile(b)|)``
    where the profile is ``exp(2*pi*i*n*(t-a)/length) - 1`` scaled by
    ``1/sqrt(2*length)`` and ``q_coeff`` is the coefficient quadratic form
    value attached to the zero-order term.
    """
    if n_intervals % 2 != 0:
        raise ValueError("composite Simpson needs an even interval count")
    if use_numba():
        k = _numba_kernels()["oscillatory_rayleigh"]
        return k(n, n_intervals, float(length), complex(q_coeff))
    return _oscillatory_rayleigh_numpy(n, n_intervals, float(length), complex(q_coeff))


def support_sweep(T, thetas):
    """Boundary points of the numerical range: for each angle theta the
    Rayleigh quotient of T at the top eigenvector of the Hermitian part
    of ``exp(i*theta)*T``. Result is ordered like ``thetas``."""
    T = np.ascontiguousarray(T, dtype=np.complex128)
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    if use_numba():
        return _numba_kernels()["support_sweep"](T, thetas)
    return _support_sweep_numpy(T, thetas)
