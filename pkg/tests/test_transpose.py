import random

from hypothesis import given, settings

from gtpt.graph import block_matrix, empty_graph, from_edges, induced_bipartite
from gtpt.transpose import is_partially_symmetric, partial_transpose, partial_transpose_blocks
from conftest import G2_EDGES
from helpers import random_graph, random_shape
from test_graph import clustered_graphs


def edge_set(G):
    return {tuple(map(tuple, e)) for e in G.edges}


def test_g1(G1):
    assert edge_set(partial_transpose(G1)) == {((1, 1), (2, 1)), ((1, 2), (2, 2)), ((1, 2), (2, 1))}


def test_g2():
    G2 = from_edges(2, 2, G2_EDGES)
    assert edge_set(partial_transpose(G2)) == {((1, 1), (1, 2)), ((1, 2), (2, 2)), ((1, 1), (2, 2))}


def test_edgeless_fixed():
    E = empty_graph(3, 3)
    assert partial_transpose(E) == E and is_partially_symmetric(E)


def test_g3_blocks(G3):
    A = block_matrix(G3)
    T = partial_transpose_blocks(A)
    assert T.block(1, 2) == tuple(zip(*A.block(1, 2)))
    T.check()


def test_partial_symmetry(G1, G3):
    assert not is_partially_symmetric(G1)
    assert not is_partially_symmetric(G3)
    # only k = l inter-cluster edges: nothing moves
    D = from_edges(3, 3, [((i, k), (j, k)) for i in (1, 2) for j in (3,) for k in (1, 3)])
    assert is_partially_symmetric(D)


def test_edge_and_block_paths_agree():
    rng = random.Random(7)
    for _ in range(1000):
        G = random_graph(rng, *random_shape(rng))
        assert block_matrix(partial_transpose(G)) == partial_transpose_blocks(block_matrix(G))


@settings(max_examples=300, deadline=None)
@given(clustered_graphs())
def test_involution_and_conservation(G):
    T = partial_transpose(G)
    assert partial_transpose(T) == G
    assert T.size == G.size
    for i in range(1, G.n + 1):
        assert induced_bipartite(T, i, i) == induced_bipartite(G, i, i)
