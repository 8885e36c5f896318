import numpy as np
import pytest

from sectorial import numlin, oprange, rand, relcalc
from sectorial.errors import InvalidAngle, NotContraction, NotMaximal


def multivalued_part_relation(n, seed):
    """Relation with a genuine multivalued part: inverse Cayley image of a
    contraction with an eigenvalue pinned at 1."""
    rng = rand.generator(seed)
    U = rand.unitary(rng, n)
    d = np.ones(n, dtype=np.complex128)
    d[1:] = rng.uniform(0.1, 0.9, n - 1) * np.exp(1j * rng.uniform(0, 2 * np.pi, n - 1))
    K = (U * d[np.newaxis, :]) @ U.conj().T
    return relcalc.relation_from_contraction(K)


def sector_form_flags(rel, phi, tol=1e-9):
    """Independent maximal-sectorial oracle straight from the definition:
    the forms sin(phi) Re(x',x) +- cos(phi) Im(x',x) restricted to the
    subspace must both be PSD, plus accretivity and the dimension count."""
    n = rel.space_dim
    X, Xp = rel.x_block, rel.xprime_block
    G = X.conj().T @ Xp
    form_re = 0.5 * (G + G.conj().T)
    form_im = (G - G.conj().T) / 2j
    if rel.dim == 0:
        return n == 0
    accretive = numlin.hermitian_eigenvalues(form_re)[0] >= -tol
    plus = numlin.hermitian_eigenvalues(
        np.sin(phi) * form_re + np.cos(phi) * form_im)[0] >= -tol
    minus = numlin.hermitian_eigenvalues(
        np.sin(phi) * form_re - np.cos(phi) * form_im)[0] >= -tol
    return bool(accretive and plus and minus and rel.dim == n)


def test_relation_from_graph_examples():
    zero = relcalc.relation_from_graph(np.zeros((3, 3)))
    assert zero.dim == 3
    assert numlin.operator_norm(zero.xprime_block) <= 1e-14
    ident = relcalc.relation_from_graph(np.eye(3))
    assert np.allclose(ident.x_block, ident.xprime_block)


def test_canonical_basis_orthonormal():
    rng = rand.generator(0)
    rel = relcalc.relation_from_graph(rand.complex_gaussian(rng, 5))
    G = rel.basis.conj().T @ rel.basis
    assert numlin.operator_norm(G - np.eye(rel.dim)) <= 1e-12


def test_rotate_relation_properties():
    rng = rand.generator(1)
    rel = relcalc.relation_from_graph(rand.complex_gaussian(rng, 4))
    assert relcalc.projector_distance(relcalc.rotate_relation(rel, 0.0), rel) <= 1e-12
    back = relcalc.rotate_relation(relcalc.rotate_relation(rel, 0.7), -0.7)
    assert relcalc.projector_distance(back, rel) <= 1e-12
    gi = relcalc.relation_from_graph(np.eye(3))
    rotated = relcalc.rotate_relation(gi, np.pi / 2)
    expected = relcalc.relation_from_graph(1j * np.eye(3))
    assert relcalc.projector_distance(rotated, expected) <= 1e-12


def test_classify_relation_examples():
    flags = relcalc.classify_relation(relcalc.relation_from_graph(np.eye(3)))
    assert flags.accretive and flags.maximal
    assert flags.dissipative and flags.accumulative  # Im = 0 on the graph

    pure = relcalc.from_basis(3, np.vstack([np.zeros((3, 3)), np.eye(3)]))
    pflags = relcalc.classify_relation(pure)
    assert pflags.accretive and pflags.dissipative
    assert pflags.accumulative and pflags.maximal

    neg = relcalc.classify_relation(relcalc.relation_from_graph(-np.eye(2)))
    assert not neg.accretive


def test_is_m_sectorial_examples():
    T = np.diag([1.0, np.exp(1j * np.pi / 4)])
    rel = relcalc.relation_from_graph(T)
    assert relcalc.is_m_sectorial(rel, np.pi / 4)
    assert not relcalc.is_m_sectorial(rel, np.pi / 8)
    pure = relcalc.from_basis(2, np.vstack([np.zeros((2, 2)), np.eye(2)]))
    for phi in (0.0, 0.3, np.pi / 2):
        assert relcalc.is_m_sectorial(pure, phi)
    with pytest.raises(InvalidAngle):
        relcalc.is_m_sectorial(rel, -0.1)


def test_cayley_triple_examples():
    rel = relcalc.relation_from_graph(np.eye(3))
    triple = relcalc.cayley_triple(rel, 0.3)
    assert numlin.operator_norm(triple.K) <= 1e-12

    zero_graph = relcalc.relation_from_graph(np.zeros((3, 3)))
    assert numlin.operator_norm(relcalc.cayley_triple(zero_graph, 0.3).K + np.eye(3)) <= 1e-12
    pure = relcalc.from_basis(3, np.vstack([np.zeros((3, 3)), np.eye(3)]))
    assert numlin.operator_norm(relcalc.cayley_triple(pure, 0.3).K - np.eye(3)) <= 1e-12

    # scalar value of V on graph(I) at phi = pi/4: (e^{i phi} - i)/(e^{i phi} + i)
    triple = relcalc.cayley_triple(rel, np.pi / 4)
    v = (np.exp(1j * np.pi / 4) - 1j) / (np.exp(1j * np.pi / 4) + 1j)
    assert numlin.operator_norm(triple.V - v * np.eye(3)) <= 1e-12
    assert abs(v) == pytest.approx(np.sqrt(2) - 1, abs=1e-12)


def test_cayley_not_maximal():
    thin = relcalc.from_basis(3, np.vstack([np.eye(3), np.eye(3)])[:, :2])
    with pytest.raises(NotMaximal):
        relcalc.cayley_triple(thin, 0.2)


def test_relation_from_contraction_endpoints():
    eye = np.eye(2)
    assert relcalc.projector_distance(
        relcalc.relation_from_contraction(np.zeros((2, 2))),
        relcalc.relation_from_graph(eye)) <= 1e-12
    pure = relcalc.from_basis(2, np.vstack([np.zeros((2, 2)), eye]))
    assert relcalc.projector_distance(
        relcalc.relation_from_contraction(eye), pure) <= 1e-12
    assert relcalc.projector_distance(
        relcalc.relation_from_contraction(-eye),
        relcalc.relation_from_graph(np.zeros((2, 2)))) <= 1e-12
    with pytest.raises(NotContraction):
        relcalc.relation_from_contraction(2.0 * eye)


def test_round_trip_contraction():
    rng = rand.generator(2)
    for n in (1, 3, 6):
        for _ in range(10):
            K = rand.contraction(rng, n)
            rel = relcalc.relation_from_contraction(K)
            K2 = relcalc.cayley_triple(rel, 0.4).K
            assert numlin.operator_norm(K - K2) <= 1e-10
            flags = relcalc.classify_relation(rel)
            assert flags.accretive and flags.maximal


def test_round_trip_relation():
    for seed in range(10):
        rel = relcalc.random_sectorial_relation(5, np.pi / 4, seed)
        K = relcalc.cayley_triple(rel, np.pi / 4).K
        back = relcalc.relation_from_contraction(K)
        assert relcalc.projector_distance(rel, back) <= 1e-10


def test_contraction_defect_identity():
    # ||x' - x||^2 = ||x + x'||^2 - 4 Re(x', x) on every basis column
    for seed in range(5):
        rel = relcalc.random_sectorial_relation(6, np.pi / 3, seed)
        X, Xp = rel.x_block, rel.xprime_block
        for j in range(rel.dim):
            x, xp = X[:, j], Xp[:, j]
            lhs = np.linalg.norm(xp - x) ** 2
            rhs = np.linalg.norm(x + xp) ** 2 - 4 * numlin.inner(xp, x).real
            assert abs(lhs - rhs) <= 1e-12


def test_triple_contraction_iff_angle_reaches_minimal():
    for seed in range(5):
        phi_star = np.pi / 4
        rel = relcalc.random_sectorial_relation(5, phi_star, seed)
        for phi in (phi_star - 0.2, phi_star - 0.05):
            triple = relcalc.cayley_triple(rel, phi)
            assert max(triple.norms()[1:]) > 1.0 + 1e-6
        for phi in (phi_star, phi_star + 0.05, phi_star + 0.2):
            triple = relcalc.cayley_triple(rel, phi)
            assert max(triple.norms()) <= 1.0 + 1e-10


def test_rotation_equivalence_mixed_population():
    rng = rand.generator(9)
    disagreements = 0
    for case in range(120):
        kind = case % 4
        n = int(rng.integers(2, 7))
        if kind == 0:
            rel = relcalc.random_sectorial_relation(
                n, float(rng.uniform(0, np.pi / 2 - 0.1)), int(rng.integers(0, 2**31)))
        elif kind == 1:
            rel = relcalc.from_basis(n, rand.complex_gaussian(rng, 2 * n, n))
        elif kind == 2:
            k = int(rng.integers(0, 2 * n + 1))
            rel = relcalc.from_basis(n, rand.complex_gaussian(rng, 2 * n, k))
        else:
            rel = multivalued_part_relation(n, int(rng.integers(0, 2**31)))
        phi = float(rng.uniform(0, np.pi / 2))
        lhs = relcalc.is_m_sectorial(rel, phi)
        base = relcalc.classify_relation(rel)
        conj = (base.accretive and base.maximal
                and relcalc.classify_relation(relcalc.rotate_relation(rel, phi)).dissipative
                and relcalc.classify_relation(relcalc.rotate_relation(rel, -phi)).accumulative)
        if lhs != conj or lhs != sector_form_flags(rel, phi):
            disagreements += 1
    assert disagreements == 0


def test_generator_properties():
    rel0 = relcalc.random_sectorial_relation(4, 0.0, 3)
    T0 = relcalc.random_sectorial_matrix(4, 0.0, 3)
    assert numlin.operator_norm(oprange.imag_part(T0)) <= 1e-12
    assert oprange.semi_angle(T0) == 0.0
    assert relcalc.is_m_sectorial(rel0, 0.0)

    rel = relcalc.random_sectorial_relation(5, 0.6, 12)
    assert relcalc.is_m_sectorial(rel, 0.6)
    again = relcalc.random_sectorial_relation(5, 0.6, 12)
    assert relcalc.projector_distance(rel, again) == 0.0


def test_round_trip_graph_recovery():
    # graph relation with invertible x-block recovers T through the pairs
    rng = rand.generator(13)
    T = rand.complex_gaussian(rng, 4)
    rel = relcalc.relation_from_graph(T)
    X, Xp = rel.x_block, rel.xprime_block
    recovered = Xp @ np.linalg.inv(X)
    assert numlin.operator_norm(recovered - T) <= 1e-10 * max(1.0, numlin.operator_norm(T))
