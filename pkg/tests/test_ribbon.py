import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import bouquet_feasible, bouquet_genus
from twistwidth import core
from twistwidth.core import make_set_system, twist
from twistwidth.errors import Disconnected, InvalidRibbonGraph, InvalidSubset, TooManyEdges
from twistwidth.oracle import random_ribbon_graph
from twistwidth.ribbon import (
    RibbonGraph,
    boundary_count,
    components,
    deficiency,
    delta_matroid_of,
    euler_genus,
    geometric_dual,
    isomorphic,
    max_pd_genus,
    partial_dual,
    pd_genus_formula,
    quasi_trees,
)

from conftest import R4_FAMILY

TWO_VERTEX_EDGE = RibbonGraph((False,), ((0,), (1,)))


def disjoint_union(G, H):
    shift = 2 * G.num_edges
    rots = G.vertices + tuple(tuple(h + shift for h in r) for r in H.vertices)
    return RibbonGraph(G.twisted + H.twisted, rots)


def flip_vertex(G, v):
    """Reverse rotation v and toggle the twist of each edge end there."""
    rots = list(G.vertices)
    rots[v] = tuple(reversed(rots[v]))
    tw = list(G.twisted)
    for h in G.vertices[v]:
        tw[h >> 1] ^= True
    return RibbonGraph(tuple(tw), tuple(rots))


# construction ---------------------------------------------------------------


def test_r4_rotation(r4):
    assert r4 == RibbonGraph.one_vertex([1, 3, 4, 1, 2, 3, 4, 2])
    assert r4.vertices == ((0, 4, 6, 1, 2, 5, 7, 3),)


@pytest.mark.parametrize(
    "twisted, vertices",
    [((False,), ((0,),)), ((False,), ((0, 1, 1),)), ((), ((0,),)), ((False, False), ((0, 1, 2),))],
)
def test_invalid_rotation_systems(twisted, vertices):
    with pytest.raises(InvalidRibbonGraph):
        RibbonGraph(twisted, vertices)


def test_rotation_normalization_makes_equal_graphs_compare_equal():
    assert RibbonGraph((False,), ((1, 0),)) == RibbonGraph((False,), ((0, 1),))
    assert RibbonGraph((False,), ((1,), (0,))) == TWO_VERTEX_EDGE


# boundaries -----------------------------------------------------------------


def test_boundary_count_examples(isolated, l0, l1, r4):
    assert boundary_count(isolated, []).count == 1
    assert boundary_count(l0, [1]).count == 2
    assert boundary_count(l1, [1]).count == 1
    # f = 2k - v + e - genus = 2 - 1 + 4 - 2
    assert boundary_count(r4, [1, 2, 3, 4]).count == 3


def test_boundary_report_walks(l0, r4):
    rep = boundary_count(l0, [1])
    assert len(rep.walks) == 2 and rep.bare_vertices == 0
    rep = boundary_count(r4, [])
    assert rep.walks == () and rep.bare_vertices == 1 and rep.count == 1


def test_boundary_count_rejects_bad_subset(r4):
    with pytest.raises(InvalidSubset):
        boundary_count(r4, [5])


def test_components(r4, l0, isolated):
    assert components(r4) == 1
    assert components(disjoint_union(l0, l0)) == 2
    assert components(isolated) == 1


# genus ----------------------------------------------------------------------


def test_euler_genus_fixtures(isolated, l1, t2, r4, l0):
    assert euler_genus(isolated) == 0
    assert euler_genus(l0) == 0
    assert euler_genus(l1) == 1
    assert euler_genus(t2) == 2
    assert euler_genus(r4) == 2


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 7).flatmap(lambda m: st.tuples(st.permutations([i // 2 + 1 for i in range(2 * m)]),
                                                    st.sets(st.integers(1, m)))))
def test_bouquets_match_interlacement_matrix(case):
    word, twisted = case
    G = RibbonGraph.one_vertex(list(word), twisted)
    expected = {frozenset(s) for s in bouquet_feasible(list(word), twisted)}
    assert {frozenset(q) for q in quasi_trees(G)} == expected
    assert euler_genus(G) == bouquet_genus(list(word), twisted)


# quasi-trees ----------------------------------------------------------------


def test_quasi_trees_fixtures(l0, l1, r4):
    assert quasi_trees(l0) == [[]]
    assert quasi_trees(l1) == [[], [1]]
    assert {frozenset(q) for q in quasi_trees(r4)} == {frozenset(s) for s in R4_FAMILY}


def test_delta_matroid_of_fixtures(r4, l1, isolated, d_r4fam, d_0):
    assert delta_matroid_of(r4) == d_r4fam
    assert delta_matroid_of(l1) == make_set_system(1, [[], [1]])
    assert delta_matroid_of(isolated) == d_0


def test_quasi_trees_disconnected(l0, l1):
    G = disjoint_union(l1, l1)
    assert quasi_trees(G) == [[], [1], [2], [1, 2]]
    G = disjoint_union(l0, l1)
    assert quasi_trees(G) == [[], [2]]


def test_enumeration_guard():
    G = RibbonGraph.one_vertex([i // 2 + 1 for i in range(42)])
    with pytest.raises(TooManyEdges):
        quasi_trees(G)


# partial duals --------------------------------------------------------------


def test_partial_dual_empty_is_identity(r4, l1, t2):
    for G in (r4, l1, t2, flip_vertex(random_ribbon_graph(3, 3, 5), 1)):
        assert partial_dual(G, []) == G


def test_partial_dual_of_plane_loop(l0):
    H = partial_dual(l0, [1])
    assert isomorphic(H, TWO_VERTEX_EDGE)
    assert H.num_vertices == 2
    assert euler_genus(H) == 0


def test_partial_dual_r4(r4, d_r4fam):
    H = partial_dual(r4, [1, 3])
    assert euler_genus(H) == 4
    assert delta_matroid_of(H) == twist(d_r4fam, [1, 3])


def test_geometric_duals(l0, t2, isolated):
    assert isomorphic(geometric_dual(l0), TWO_VERTEX_EDGE)
    H = geometric_dual(t2)
    assert (H.num_vertices, H.num_edges, H.face_count(H.all_edges), euler_genus(H)) == (1, 2, 1, 2)
    assert geometric_dual(isolated) == isolated


def test_pd_genus_formula_examples(r4, l0):
    assert pd_genus_formula(r4, []) == 2
    assert pd_genus_formula(r4, [1, 3]) == 4
    assert pd_genus_formula(l0, [1]) == 0


def test_max_pd_genus_examples(r4, l1, isolated):
    assert max_pd_genus(r4) == 4
    assert max_pd_genus(l1) == 1
    assert max_pd_genus(isolated) == 0


def test_deficiency_examples(r4, l1, isolated, l0):
    assert deficiency(r4) == 1
    assert deficiency(l1) == 1
    assert deficiency(isolated) == 1
    with pytest.raises(Disconnected):
        deficiency(disjoint_union(l0, l0))


# isomorphism ----------------------------------------------------------------


def test_isomorphism_allows_vertex_flips_and_end_swaps(r4):
    G = random_ribbon_graph(11, 3, 5)
    assert isomorphic(flip_vertex(G, 0), G)
    swapped = RibbonGraph(G.twisted, tuple(tuple(h ^ 1 if h >> 1 == 2 else h for h in r) for r in G.vertices))
    assert isomorphic(swapped, G)
    assert not isomorphic(RibbonGraph.one_vertex([1, 3, 4, 1, 2, 3, 4, 2], [1]), r4)
    assert not isomorphic(RibbonGraph.one_vertex([1, 1, 2, 2, 3, 3, 4, 4]), r4)


# random-graph laws ------------------------------------------------------------


graphs = st.builds(
    random_ribbon_graph,
    st.integers(0, 2**32),
    st.integers(1, 3),
    st.integers(0, 5),
)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_partial_dual_laws(G):
    D = delta_matroid_of(G)
    assert core.check_symmetric_exchange(D).holds
    assert core.width(D) == euler_genus(G)
    assert partial_dual(G, 0) == G
    for A in range(1 << G.num_edges):
        H = partial_dual(G, A)
        assert delta_matroid_of(H) == twist(D, A)
        assert euler_genus(H) == pd_genus_formula(G, A) == core.width(twist(D, A))
        assert isomorphic(partial_dual(H, A), G)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_single_boundary_implies_connected(G):
    if components(G) != 1:
        return
    for A in range(1 << G.num_edges):
        if G.face_count(A) == 1:
            assert G.component_count(A) == 1
