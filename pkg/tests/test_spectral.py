import random

import numpy as np
import pytest
from hypothesis import given, settings

from gtpt.graph import empty_graph, from_edges
from gtpt.spectral import (
    approx_eigenvalues,
    are_cospectral,
    char_poly,
    char_poly_matrix,
    cospectral_mask,
    eigen_product_check,
    newton_coefficients,
    power_sum_fingerprints,
)
from gtpt.transpose import partial_transpose
from helpers import all_adjacency, charpoly_values, graph_from_matrix, random_graph, random_shape, shuffled
from test_graph import clustered_graphs

K2 = from_edges(1, 2, [((1, 1), (1, 2))])


def test_k2():
    assert char_poly(K2).coefficients == (1, 0, -1)
    assert str(char_poly(K2)) == "x^2 - 1"
    assert approx_eigenvalues(K2) == pytest.approx([1.0, -1.0])


def test_eight_vertex_mismatch_spectra(fig1):
    G, T = fig1, partial_transpose(fig1)
    assert approx_eigenvalues(G) == pytest.approx([2, 1.618, 0.618, 0, 0, -0.618, -1.618, -2], abs=1e-3)
    assert approx_eigenvalues(T) == pytest.approx([2.149, 1.5434, 0, 0, 0, 0, -1.5434, -2.149], abs=1e-3)
    assert char_poly(G).degree == 8
    assert not are_cospectral(G, T)


def test_g3_cospectral(G3):
    assert char_poly(G3) == char_poly(partial_transpose(G3))
    assert are_cospectral(G3, G3)


def test_example1_transposes_not_cospectral(ex1):
    G, H = ex1
    a, b = approx_eigenvalues(partial_transpose(G)), approx_eigenvalues(partial_transpose(H))
    assert not np.allclose(a, b)
    assert not are_cospectral(partial_transpose(G), partial_transpose(H))


def test_order_mismatch():
    with pytest.raises(ValueError):
        are_cospectral(K2, empty_graph(1, 3))


def test_empty_graph_poly():
    assert char_poly(empty_graph(2, 2)).coefficients == (1, 0, 0, 0, 0)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_against_leibniz_oracle(N):
    A = all_adjacency(N)
    xs = list(range(-2, N + 1))
    want = charpoly_values(A, xs)
    for g in range(len(A)):
        p = char_poly_matrix(A[g])
        assert [p(x) for x in xs] == want[:, g].tolist()


@settings(max_examples=200, deadline=None)
@given(clustered_graphs())
def test_coefficient_identities(G):
    c = char_poly(G).coefficients
    assert c[0] == 1 and len(c) == G.order + 1
    if G.order >= 2:
        assert c[1] == 0 and c[2] == -G.size
    assert eigen_product_check(G) < 1e-6


@settings(max_examples=200, deadline=None)
@given(clustered_graphs())
def test_eigenvalues_match_power_sums(G):
    lam = np.array(approx_eigenvalues(G))
    A = G.adjacency()
    M = np.eye(G.order, dtype=object)
    for k in range(1, G.order + 1):
        M = M.dot(A.astype(object))
        exact = int(np.trace(M))
        assert abs(float(np.sum(lam**k)) - exact) <= 1e-9 * max(1.0, abs(exact)) * G.order**2
    assert list(lam) == sorted(lam, reverse=True)


def test_relabelled_graphs_are_cospectral():
    rng = random.Random(3)
    for _ in range(1000):
        G = random_graph(rng, *random_shape(rng))
        assert are_cospectral(G, shuffled(G, rng))


def test_power_sum_filter_agrees_with_charpoly():
    rng = random.Random(11)
    pairs = []
    for _ in range(300):
        n, m = random_shape(rng, 1, 3)
        G = random_graph(rng, n, m)
        H = partial_transpose(G) if rng.random() < 0.5 else random_graph(rng, n, m, G.size / max(1, G.order * (G.order - 1) / 2))
        pairs.append((G, H))
    for G, H in pairs:
        got = bool(cospectral_mask(G.adjacency(), H.adjacency())[0])
        assert got == are_cospectral(G, H)


def test_newton_recovers_charpoly():
    rng = random.Random(5)
    for _ in range(100):
        G = random_graph(rng, *random_shape(rng, 1, 3))
        A = G.adjacency().astype(object)
        M, sums = np.eye(G.order, dtype=object), []
        for _ in range(G.order):
            M = M.dot(A)
            sums.append(int(np.trace(M)))
        assert newton_coefficients(sums) == char_poly(G).coefficients


def test_fingerprint_shape():
    A = np.stack([K2.adjacency()] * 3)
    assert power_sum_fingerprints(A).shape[0] == 3


def test_matrix_entry_point_matches_graph():
    G = graph_from_matrix(all_adjacency(4)[37])
    assert char_poly_matrix(G.adjacency()) == char_poly(G)
