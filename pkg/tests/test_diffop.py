import math

import numpy as np
import pytest

from sectorial import diffop, numlin, rand, relcalc
from sectorial.errors import DegenerateDirection, NotContraction, UnderResolved


def scalar_problem(a=0.0, b=1.0, value=1.0, grid=256):
    return diffop.DiffOpProblem(a=a, b=b, A=np.array([[value]], dtype=complex),
                                grid_points=grid)


def test_problem_validation():
    with pytest.raises(ValueError):
        diffop.DiffOpProblem(a=1.0, b=0.0, A=np.eye(2))
    with pytest.raises(ValueError):
        diffop.DiffOpProblem(a=0.0, b=1.0, A=np.eye(2), grid_points=4)
    with pytest.raises(NotContraction):
        diffop.DiffOpProblem(a=0.0, b=1.0, A=np.eye(2), K=2.0 * np.eye(2))
    prob = diffop.DiffOpProblem(a=0.0, b=2.0, A=np.eye(3))
    assert prob.K.shape == (3, 3) and numlin.operator_norm(prob.K) == 0.0


def test_analytic_quotient_closed_form():
    prob = scalar_problem()
    s = diffop.analytic_quotient(prob, np.array([1.0]), 3)
    assert s.quotient == pytest.approx(1.0 + 3j * np.pi, abs=0)
    assert s.im_re_ratio == pytest.approx(3 * np.pi, abs=1e-14)
    # doubling n doubles the imaginary part, real part fixed
    s2 = diffop.analytic_quotient(prob, np.array([1.0]), 6)
    assert s2.quotient.real == s.quotient.real
    assert s2.quotient.imag == pytest.approx(2 * s.quotient.imag, rel=1e-15)


def test_analytic_quotient_hermitian_psd_exact_imag():
    rng = rand.generator(0)
    H = rand.hermitian(rng, 3)
    H = H @ H.conj().T  # PSD
    prob = diffop.DiffOpProblem(a=-1.0, b=3.0, A=H)
    f = rand.unit_vector(rng, 3)
    for n in (1, 4, 9):
        s = diffop.analytic_quotient(prob, f, n)
        assert s.quotient.imag == pytest.approx(n * np.pi / 4.0, rel=1e-14)


def test_analytic_quotient_infinity_encoding():
    prob = scalar_problem(value=-1.0)
    s = diffop.analytic_quotient(prob, np.array([1.0]), 1)
    assert s.im_re_ratio == math.inf


def test_quadrature_matches_analytic():
    prob = scalar_problem(grid=256)
    a = diffop.analytic_quotient(prob, np.array([1.0]), 3)
    q = diffop.quadrature_quotient(prob, np.array([1.0]), 3)
    assert abs(q.quotient - a.quotient) <= 1e-8
    assert q.source == "quadrature" and a.source == "analytic"


def test_quadrature_random_coefficients():
    rng = rand.generator(1)
    for d in (1, 2, 4):
        A = relcalc.random_sectorial_matrix(d, np.pi / 5, seed=d)
        prob = diffop.DiffOpProblem(a=0.3, b=2.7, A=A, grid_points=64 * 16)
        f = rand.unit_vector(rng, d)
        for n in (1, 5, 16):
            a = diffop.analytic_quotient(prob, f, n)
            q = diffop.quadrature_quotient(prob, f, n)
            assert abs(q.quotient - a.quotient) <= 1e-8


def test_quadrature_resolution_rule():
    prob = scalar_problem(grid=64)
    with pytest.raises(UnderResolved):
        diffop.quadrature_quotient(prob, np.array([1.0]), 2)


def test_quadrature_unit_norm_and_endpoints():
    # the endpoint checks run inside quadrature_quotient; reaching here
    # means profile(a) = profile(b) = 0 and ||u_n|| = 1 held
    prob = scalar_problem(a=0.5, b=3.5, grid=4096)
    for n in (1, 17, 64):
        q = diffop.quadrature_quotient(prob, np.array([1.0]), n)
        assert np.isfinite(q.quotient.real)


def test_obstruction_sweep_closed_form():
    prob = scalar_problem()
    sweep = diffop.obstruction_sweep(prob, np.array([1.0]), 100, target_phi=1.55)
    assert sweep.phi_lb[-1] == pytest.approx(math.atan(100 * math.pi), abs=1e-12)
    assert np.all(np.diff(sweep.phi_lb) > 0)  # strictly increasing
    assert sweep.target_exceeded is True
    assert sweep.coefficient_hypothesis_met is True
    analytic = [s for s in sweep.samples if s.source == "analytic"]
    quad = [s for s in sweep.samples if s.source == "quadrature"]
    assert len(analytic) == len(quad) == 100
    for sa, sq in zip(analytic, quad):
        assert abs(sa.quotient - sq.quotient) <= 1e-8


def test_obstruction_interval_scaling():
    f = np.array([1.0])
    r1 = diffop.analytic_quotient(scalar_problem(b=1.0), f, 10).im_re_ratio
    r2 = diffop.analytic_quotient(scalar_problem(b=2.0), f, 10).im_re_ratio
    assert r2 == pytest.approx(r1 / 2.0, rel=1e-14)


def test_obstruction_degenerate_direction():
    prob = diffop.DiffOpProblem(a=0.0, b=1.0, A=np.zeros((2, 2)))
    with pytest.raises(DegenerateDirection):
        diffop.obstruction_sweep(prob, np.array([1.0, 0.0]), 5)


def test_obstruction_nstar_rule():
    # n* = ceil(tan(phi) Re(Af,f) (b-a) / pi) + 1 pushes phi_lb past phi
    prob = diffop.DiffOpProblem(a=0.0, b=2.0, A=np.array([[3.0]], dtype=complex))
    f = np.array([1.0])
    re_q = 3.0
    for phi in (0.3, 1.0, 1.4):
        n_star = math.ceil(math.tan(phi) * re_q * 2.0 / math.pi) + 1
        sweep = diffop.obstruction_sweep(prob, f, n_star)
        assert sweep.phi_lb[-1] > phi


def test_obstruction_hypothesis_label():
    A = np.array([[1.0, 1.0], [0.0, 1.0]])  # accretive but not Hermitian
    prob = diffop.DiffOpProblem(a=0.0, b=1.0, A=A)
    sweep = diffop.obstruction_sweep(prob, np.array([1.0, 0.0]), 3)
    assert sweep.coefficient_hypothesis_met is False


def test_galerkin_examples():
    # zero coefficient: pure derivative block, Hermitian part vanishes
    prob = diffop.DiffOpProblem(a=0.0, b=1.0, A=np.zeros((1, 1)), basis_size=2)
    G = diffop.galerkin_matrix(prob)
    assert numlin.operator_norm(0.5 * (G + G.conj().T)) <= 1e-14
    assert np.allclose(G, -G.T)

    # real scalar coefficient: Hermitian part is c * I
    prob = diffop.DiffOpProblem(a=0.0, b=1.0, A=np.array([[2.5]]), basis_size=5)
    G = diffop.galerkin_matrix(prob)
    assert np.allclose(0.5 * (G + G.conj().T), 2.5 * np.eye(5), atol=1e-13)


def test_galerkin_derivative_block_quadrature_oracle():
    # independent check of the closed-form block by dense Simpson quadrature
    m, L = 6, 2.3
    D = diffop.derivative_pairing_block(m, L)
    n_int = 20000
    s = np.linspace(0.0, L, n_int + 1)
    w = np.ones(n_int + 1)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    h = L / n_int

    def phi(k):
        return np.sqrt(2.0 / L) * np.sin(k * np.pi * s / L)

    def dphi(k):
        return np.sqrt(2.0 / L) * (k * np.pi / L) * np.cos(k * np.pi * s / L)

    for k in range(1, m + 1):
        for l in range(1, m + 1):
            val = (h / 3.0) * np.sum(w * dphi(l) * phi(k))
            assert abs(val - D[k - 1, l - 1]) <= 1e-10


def test_galerkin_hermitian_part_and_adjoint():
    rng = rand.generator(3)
    for d, m in ((1, 4), (2, 6), (4, 3)):
        A = rand.complex_gaussian(rng, d)
        prob = diffop.DiffOpProblem(a=-0.5, b=1.7, A=A, basis_size=m)
        G = diffop.galerkin_matrix(prob)
        herm = 0.5 * (G + G.conj().T)
        target = np.kron(np.eye(m), 0.5 * (A + A.conj().T))
        assert numlin.operator_norm(herm - target) <= 1e-12
        G_adj = diffop.galerkin_matrix(prob, adjoint=True)
        assert numlin.operator_norm(G_adj - G.conj().T) <= 1e-12


def test_accretivity_equivalence_examples():
    out = diffop.accretivity_equivalence_check(np.eye(2), 0.0, 1.0, 6)
    assert out == {"forward": True, "backward": True}
    out = diffop.accretivity_equivalence_check(-np.eye(2), 0.0, 1.0, 6)
    assert out["forward"] and out["backward"]  # equality of minima still holds
    skew = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = diffop.accretivity_equivalence_check(skew, 0.0, 1.0, 6)
    assert out["forward"] and out["backward"]


def test_accretivity_flags_match_coefficient():
    rng = rand.generator(4)
    for _ in range(20):
        d = int(rng.integers(1, 5))
        A = rand.complex_gaussian(rng, d)
        G = diffop.galerkin_matrix(
            diffop.DiffOpProblem(a=0.0, b=1.3, A=A, basis_size=8))
        g_min = numlin.hermitian_eigenvalues(0.5 * (G + G.conj().T))[0]
        a_min = numlin.hermitian_eigenvalues(0.5 * (A + A.conj().T))[0]
        assert (g_min >= -1e-9) == (a_min >= -1e-9)
