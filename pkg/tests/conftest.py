import numpy as np
import pytest

from sectorial import rand
from sectorial._kernels import oscillatory_rayleigh, support_sweep


def hausdorff(points_a, points_b):
    """Symmetric Hausdorff distance between two finite complex point sets."""
    a = np.asarray(points_a, dtype=np.complex128).ravel()
    b = np.asarray(points_b, dtype=np.complex128).ravel()
    d = np.abs(a[:, None] - b[None, :])
    return max(d.min(axis=1).max(), d.min(axis=0).max())


@pytest.fixture(scope="session")
def warm_kernels():
    """Trigger one-time JIT compilation so timed tests measure work only."""
    T = rand.complex_gaussian(rand.generator(0), 3)
    support_sweep(T, np.array([0.0, 1.0]))
    oscillatory_rayleigh(1, 64, 1.0, 1.0 + 0.0j)
    return True
