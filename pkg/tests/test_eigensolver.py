import numpy as np
import pytest

from eigenloc import (
    WeightedGraph,
    generalized_laplacian_eigs,
    normalized_adjacency,
    normalized_square_spectrum,
    random_walk,
    spectrum_random_walk,
)
from eigenloc.errors import AllZeroSpectrum, InputError, IsolatedNode
from helpers import complete_graph, path_graph, random_connected_graph

INV_SQRT2 = 1.0 / np.sqrt(2.0)


def brute_force_rw_spectrum(g):
    """Independent oracle: eigendecompose the nonsymmetric P directly."""
    P = random_walk(g).dense()
    evals, vecs = np.linalg.eig(P)
    order = np.argsort(-evals.real)
    return evals.real[order], vecs.real[:, order]


def test_single_edge_spectrum_and_signs():
    basis = spectrum_random_walk(WeightedGraph.from_edges(2, [(0, 1, 1.0)]))
    assert np.allclose(basis.lambdas, [1.0, -1.0], atol=1e-12)
    assert np.allclose(basis.vectors[:, 0], [INV_SQRT2, INV_SQRT2], atol=1e-12)
    # sign rule: tied magnitudes resolve to the lowest index being positive
    assert np.allclose(basis.vectors[:, 1], [INV_SQRT2, -INV_SQRT2], atol=1e-12)


def test_complete_graph_spectrum():
    # oracle value: K4's walk matrix is (J - I)/3 with spectrum {1, -1/3 x3}
    g = complete_graph(4)
    basis = spectrum_random_walk(g)
    assert np.allclose(basis.lambdas, [1.0, -1 / 3, -1 / 3, -1 / 3], atol=1e-12)
    oracle, _ = brute_force_rw_spectrum(g)
    assert np.allclose(basis.lambdas, oracle, atol=1e-10)


def test_two_components_duplicate_top_eigenvalue():
    g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
    basis = spectrum_random_walk(g)
    assert np.allclose(basis.lambdas[:2], [1.0, 1.0], atol=1e-10)
    assert basis.degenerate[0] and basis.degenerate[1]


def test_generalized_path_eigenvalues():
    # oracle value: brute-force eig of the 3-path's P gives lambda = 1, 0, -1
    pairs = generalized_laplacian_eigs(path_graph(3))
    mus = [mu for mu, _ in pairs]
    assert np.allclose(mus, [0.0, 1.0, 2.0], atol=1e-12)
    assert mus == sorted(mus)


def test_generalized_smallest_mode_is_constant():
    rng = np.random.default_rng(11)
    g = random_connected_graph(rng, n_max=30)
    mu, x = generalized_laplacian_eigs(g)[0]
    assert abs(mu) <= 1e-10
    assert np.abs(x - x[0]).max() <= 1e-8


def test_generalized_residuals():
    rng = np.random.default_rng(12)
    g = random_connected_graph(rng, n_max=50)
    L = np.diag(g.degrees) - g.adjacency.toarray()
    D = np.diag(g.degrees)
    for mu, x in generalized_laplacian_eigs(g):
        assert np.linalg.norm(L @ x - mu * D @ x) <= 1e-8 * g.n * g.degrees.max()


def test_spectrum_rejects_isolated_nodes():
    with pytest.raises(IsolatedNode):
        spectrum_random_walk(WeightedGraph.from_edges(3, [(0, 1, 1.0)]))


def test_k_validation():
    g = path_graph(4)
    with pytest.raises(InputError):
        spectrum_random_walk(g, k=0)
    with pytest.raises(InputError):
        spectrum_random_walk(g, k=5)
    assert spectrum_random_walk(g, k=2).lambdas.size == 2


def test_top_k_matches_full_head():
    rng = np.random.default_rng(4)
    g = random_connected_graph(rng, n_max=40)
    full = spectrum_random_walk(g)
    head = spectrum_random_walk(g, k=3)
    assert np.array_equal(full.lambdas[:3], head.lambdas)


def test_spectrum_invariants_random_graphs():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = random_connected_graph(rng, n_max=80)
        basis = spectrum_random_walk(g)
        n = g.n
        P = random_walk(g).matrix
        resid = np.linalg.norm(P @ basis.vectors - basis.vectors * basis.lambdas, axis=0)
        assert resid.max() <= 1e-8 * n
        assert abs(basis.lambdas[0] - 1.0) <= 1e-10
        assert np.abs(basis.lambdas).max() <= 1.0 + 1e-10
        norms = np.sum(basis.vectors**2, axis=0)
        assert np.abs(norms - 1.0).max() <= 1e-10
        # D-orthogonality outside degenerate clusters
        G = basis.vectors.T @ (g.degrees[:, None] * basis.vectors)
        np.fill_diagonal(G, 0.0)
        separate = basis.clusters[:, None] != basis.clusters[None, :]
        assert np.abs(G[separate]).max() <= 1e-8 * g.degrees.max()


def test_recomposition_of_symmetric_transform():
    rng = np.random.default_rng(6)
    g = random_connected_graph(rng, n_max=60)
    basis = spectrum_random_walk(g)
    S = normalized_adjacency(g).dense()
    Y = np.sqrt(g.degrees)[:, None] * basis.vectors
    Y /= np.linalg.norm(Y, axis=0, keepdims=True)
    S_rec = (Y * basis.lambdas[None, :]) @ Y.T
    assert np.linalg.norm(S_rec - S) <= 1e-8 * np.linalg.norm(S)


def test_determinism_bitwise():
    rng = np.random.default_rng(8)
    g = random_connected_graph(rng, n_max=60)
    a = spectrum_random_walk(g)
    b = spectrum_random_walk(g)
    assert np.array_equal(a.lambdas, b.lambdas)
    assert np.array_equal(a.vectors, b.vectors)


def test_iterative_path_agrees_with_dense():
    rng = np.random.default_rng(9)
    g = random_connected_graph(rng, n_max=120)
    if g.n < 20:  # want a genuinely iterative-size case
        g = random_connected_graph(rng, n_max=120)
    dense = spectrum_random_walk(g, k=5)
    iterative = spectrum_random_walk(g, k=5, dense_limit=10)
    assert np.allclose(dense.lambdas, iterative.lambdas, atol=1e-9)
    for j in range(5):
        a, b = dense.vectors[:, j], iterative.vectors[:, j]
        assert min(np.abs(a - b).max(), np.abs(a + b).max()) <= 1e-7


def test_iterative_path_deterministic():
    rng = np.random.default_rng(10)
    g = random_connected_graph(rng, n_max=100)
    a = spectrum_random_walk(g, k=4, dense_limit=10)
    b = spectrum_random_walk(g, k=4, dense_limit=10)
    assert np.array_equal(a.lambdas, b.lambdas)
    assert np.array_equal(a.vectors, b.vectors)


def test_sign_convention_everywhere():
    rng = np.random.default_rng(13)
    g = random_connected_graph(rng, n_max=50)
    basis = spectrum_random_walk(g)
    for j in range(basis.k):
        v = basis.vectors[:, j]
        assert v[np.argmax(np.abs(v))] > 0


def test_gaps_and_clusters():
    basis = spectrum_random_walk(complete_graph(4))
    assert np.allclose(basis.gaps, [4 / 3, 0.0, 0.0], atol=1e-12)
    assert list(basis.clusters) == [0, 1, 1, 1]
    assert list(basis.degenerate) == [False, True, True, True]


def test_normalized_square_spectrum_examples():
    assert np.allclose(normalized_square_spectrum([1, 1]), [0.5, 0.5], atol=1e-12)
    assert np.allclose(normalized_square_spectrum([2, 0]), [1.0, 0.0], atol=1e-12)
    assert np.allclose(normalized_square_spectrum([3, 4]), [0.36, 0.64], atol=1e-12)
    assert abs(normalized_square_spectrum(np.arange(5)).sum() - 1.0) <= 1e-12


def test_normalized_square_spectrum_errors():
    with pytest.raises(AllZeroSpectrum):
        normalized_square_spectrum([0.0, 0.0])
    with pytest.raises(InputError):
        normalized_square_spectrum([])
