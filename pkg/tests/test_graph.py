import json

import pytest
from hypothesis import given, settings, strategies as st

from gtpt.graph import (
    GraphError,
    block_matrix,
    degree_sequence,
    empty_graph,
    from_adjacency,
    from_blocks,
    from_edges,
    induced_bipartite,
    load,
    loads,
    to_dot,
)
from conftest import G1_EDGES, G3_EDGES


@st.composite
def clustered_graphs(draw, max_n=4, max_m=4):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    V = [(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]
    pairs = [(u, v) for k, u in enumerate(V) for v in V[k + 1 :]]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_edges(n, m, chosen)


def test_from_edges_g1():
    G = from_edges(2, 2, G1_EDGES)
    assert (G.n, G.m, G.size, G.order) == (2, 2, 3, 4)


def test_from_edges_dedups_and_orders():
    G = from_edges(2, 2, [((2, 1), (1, 1)), ((1, 1), (2, 1)), ((1, 2), (1, 1))])
    assert [tuple(map(tuple, e)) for e in G.edges] == [((1, 1), (1, 2)), ((1, 1), (2, 1))]


def test_edgeless_single_cluster():
    G = from_edges(1, 3, [])
    assert G.size == 0 and G.order == 3


@pytest.mark.parametrize(
    "n, m, edges",
    [
        (2, 2, [((1, 1), (3, 1))]),
        (2, 2, [((1, 0), (2, 1))]),
        (2, 2, [((1, 1), (1, 1))]),
        (0, 2, []),
        (2, 0, []),
        (2, 2, [((1, 1),)]),
    ],
)
def test_from_edges_rejects(n, m, edges):
    with pytest.raises(GraphError):
        from_edges(n, m, edges)


def test_block_matrix_g3():
    A = block_matrix(from_edges(2, 3, G3_EDGES))
    assert A.block(1, 2) == ((1, 1, 0), (0, 1, 0), (0, 1, 1))
    assert A.block(2, 2) == ((0, 1, 0), (1, 0, 1), (0, 1, 0))
    assert A.block(1, 1) == ((0, 0, 0),) * 3


def test_block_matrix_example2(ex2):
    A = block_matrix(ex2)
    assert A.block(1, 2) == ((1, 1), (0, 0))
    assert A.block(2, 3) == ((1, 0), (0, 1))
    assert A.block(1, 3) == ((0, 0), (0, 0))


def test_block_matrix_edgeless():
    A = block_matrix(empty_graph(3, 2))
    assert all(x == 0 for B in A.distinct_blocks() for r in B for x in r)


def test_induced_bipartite_g3(G3):
    B = induced_bipartite(G3, 1, 2)
    assert B.size == 5 and all(u.cluster != v.cluster for u, v in B.edges)
    P = induced_bipartite(G3, 2, 2)
    assert (P.n, P.m) == (1, 3)
    assert [tuple(map(tuple, e)) for e in P.edges] == [((1, 1), (1, 2)), ((1, 2), (1, 3))]
    assert induced_bipartite(empty_graph(1, 3), 1, 1).size == 0
    with pytest.raises(GraphError):
        induced_bipartite(G3, 1, 3)


def test_degree_sequences(G1, G3):
    assert degree_sequence(G1) == [2, 2, 1, 1]
    assert degree_sequence(empty_graph(2, 2)) == [0, 0, 0, 0]
    # v_{2,2} meets five of the seven edges
    assert degree_sequence(G3) == [5, 2, 2, 2, 2, 1]


def test_json_round_trip(G3, tmp_path):
    text = G3.to_json()
    assert json.loads(text) == {"n": 2, "m": 3, "edges": [[list(u), list(v)] for u, v in G3.edges]}
    assert loads(text) == G3
    p = tmp_path / "g.json"
    p.write_text(text)
    assert load(p) == G3


@pytest.mark.parametrize("text", ["{", "[]", '{"n": 2}', '{"n": 2, "m": 2, "edges": [[[1, 1], [5, 1]]]}'])
def test_loads_rejects(text):
    with pytest.raises(GraphError):
        loads(text)


def test_dot_export(G1):
    dot = to_dot(G1)
    assert "v_1_1 -- v_2_1;" in dot and "rank=same" in dot
    assert dot.count("--") == G1.size


@settings(max_examples=200, deadline=None)
@given(clustered_graphs())
def test_block_round_trip(G):
    A = block_matrix(G)
    A.check()
    assert from_blocks(A) == G
    assert from_adjacency(G.n, G.m, G.adjacency()) == G


@settings(max_examples=200, deadline=None)
@given(clustered_graphs())
def test_bipartite_edge_counts(G):
    A = block_matrix(G)
    for i in range(1, G.n + 1):
        for j in range(1, G.n + 1):
            if i != j:
                assert induced_bipartite(G, i, j).size == sum(map(sum, A.block(i, j)))


@settings(max_examples=200, deadline=None)
@given(clustered_graphs())
def test_degree_sum(G):
    assert sum(degree_sequence(G)) == 2 * G.size
    assert sorted(G.adjacency().sum(axis=1).tolist(), reverse=True) == degree_sequence(G)
