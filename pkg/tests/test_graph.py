import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mutvis import constructions as C
from mutvis.graph import (
    DisconnectedGraphError,
    GraphError,
    all_pairs_distances,
    build_graph,
    canonical_form,
    cartesian_product,
    corona,
    find_isomorphism,
    fingerprint,
    is_isometric_subgraph,
    is_isomorphic,
    is_triangle_free,
    max_degree,
)


def test_build_path_and_cycle():
    P3 = build_graph(3, [(0, 1), (1, 2)])
    assert P3.m == 2 and all_pairs_distances(P3).diam == 2
    C4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert C4.degrees() == [2, 2, 2, 2]


def test_build_rejects_bad_edges():
    with pytest.raises(GraphError, match="self-loop"):
        build_graph(2, [(0, 0)])
    with pytest.raises(GraphError, match="out of range"):
        build_graph(2, [(0, 2)])


def test_duplicate_edges_collapse():
    G = build_graph(3, [(0, 1), (1, 0), (0, 1), (1, 2)])
    assert G.m == 2
    assert G.adjacency == ((1,), (0, 2), (1,))


def test_distances():
    assert all_pairs_distances(C.path(3)).d[0][2] == 2
    assert all_pairs_distances(C.cycle(6)).diam == 3
    K22, lab = cartesian_product(C.path(2), C.path(2))
    assert all_pairs_distances(K22).d[lab.forward(0, 0)][lab.forward(1, 1)] == 2


def test_disconnected_distance_error():
    with pytest.raises(DisconnectedGraphError):
        all_pairs_distances(build_graph(3, [(0, 1)]))


def test_product_basics():
    C4 = C.cycle(4)
    K22, _ = cartesian_product(C.complete(2), C.complete(2))
    assert is_isomorphic(K22, C4)
    grid, _ = cartesian_product(C.path(2), C.path(3))
    assert (grid.n, grid.m) == (6, 7)


SMALL_FACTORS = [C.path(1), C.path(2), C.path(3), C.complete(3), C.cycle(4), C.star(3), C.cycle(5)]


@pytest.mark.parametrize("G,H", list(itertools.product(SMALL_FACTORS, repeat=2)))
def test_product_distance_additivity(G, H):
    P, lab = cartesian_product(G, H)
    dG, dH, dP = (all_pairs_distances(X).d for X in (G, H, P))
    for u in range(P.n):
        g, h = lab.backward(u)
        for v in range(P.n):
            g2, h2 = lab.backward(v)
            assert dP[u][v] == dG[g][g2] + dH[h][h2]


@pytest.mark.parametrize("G,H", [(C.complete(3), C.path(3)), (C.star(3), C.cycle(5))])
def test_product_commutes_up_to_isomorphism(G, H):
    GH, _ = cartesian_product(G, H)
    HG, _ = cartesian_product(H, G)
    assert fingerprint(GH) == fingerprint(HG)
    assert is_isomorphic(GH, HG)


def test_labeling_bijection_and_layers():
    G, H = C.cycle(5), C.path(3)
    P, lab = cartesian_product(G, H)
    assert sorted(lab.forward(*lab.backward(v)) for v in range(P.n)) == list(range(P.n))
    for h in range(H.n):
        layer = lab.g_layer(h)
        sub, _ = P.induced_subgraph(layer)
        assert is_isomorphic(sub, G)
        assert is_isometric_subgraph(P, layer)
    for g in range(G.n):
        sub, _ = P.induced_subgraph(lab.h_layer(g))
        assert is_isomorphic(sub, H)
    with pytest.raises(GraphError):
        lab.backward(P.n)


def test_corona_shapes():
    G = corona(C.path(2), 1)
    assert sorted(G.degrees()) == [1, 1, 2, 2]
    assert corona(C.cycle(4), C.complete(2)).n == 12
    # a disconnected H still gives a connected corona
    assert corona(C.path(3), 3).is_connected()


def test_triangle_free_and_degree():
    assert is_triangle_free(C.cycle(5))
    assert not is_triangle_free(C.complete(3))
    assert is_triangle_free(C.petersen())
    assert max_degree(C.star(3)) == 3
    assert max_degree(C.cycle(7)) == 2
    assert max_degree(C.make_graph_h()) == 3


def test_petersen_triangle_free_by_triple_scan():
    P = C.petersen()
    triangles = [
        t for t in itertools.combinations(range(10), 3)
        if P.has_edge(t[0], t[1]) and P.has_edge(t[1], t[2]) and P.has_edge(t[0], t[2])
    ]
    assert triangles == [] and is_triangle_free(P)


def test_isometric_subgraph():
    assert is_isometric_subgraph(C.cycle(4), [0, 1, 2])
    assert not is_isometric_subgraph(C.cycle(5), [0, 1, 2, 3])
    frog = C.make_frog(6, 3, 2)
    assert is_isometric_subgraph(frog, range(6))
    with pytest.raises(DisconnectedGraphError):
        is_isometric_subgraph(C.path(4), [0, 3])


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    slots = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(slots), unique=True) if slots else st.just([]))
    return build_graph(n, chosen)


@settings(max_examples=60, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_canonical_form_is_relabelling_invariant(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = G.relabel(perm)
    assert canonical_form(G) == canonical_form(H)
    assert find_isomorphism(G, H) is not None


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_canonical_form_separates_non_isomorphic(G, H):
    assert (canonical_form(G) == canonical_form(H)) == is_isomorphic(G, H)


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=8))
def test_distance_matrix_metric(G):
    if not G.is_connected():
        return
    d = all_pairs_distances(G).d
    for u in range(G.n):
        assert d[u][u] == 0
        for v in range(G.n):
            assert d[u][v] == d[v][u]
            assert (d[u][v] == 1) == G.has_edge(u, v)
            assert (d[u][v] == 0) == (u == v)
            for w in range(G.n):
                assert abs(d[u][v] - d[u][w]) <= d[w][v]
