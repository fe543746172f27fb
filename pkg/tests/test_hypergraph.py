import itertools

import networkx as nx
import pytest

from bdhlattice.corpus import exhaustive_graphs
from bdhlattice.exceptions import GraphFormatError, NotBDHError, SizeLimitError
from bdhlattice.graph import X, Y, BipartiteGraph, find_domino
from bdhlattice.hypergraph import (GAMMA_ACYCLIC, NEITHER, TOTALLY_BALANCED_ONLY, CliqueLattice,
                                   FCopy, Hypergraph, bachman, check_bridge, classify_acyclicity,
                                   closure_and_maximal, describe_witness, format_hypergraph,
                                   incidence_graph, inessential_vertices, is_ptolemaic,
                                   lambda_map, maximal_cliques, mu_maps, parse_hypergraph,
                                   two_section)
from bdhlattice.lattice import hasse, is_tree_shaped
from bdhlattice.oracle import brute_maximal_cliques, brute_ptolemaic
from bdhlattice.pruning import generate_bdh, is_bdh


def H(*members):
    return Hypergraph.from_sets(members)


def family(h):
    return set(h.members)


def fs(s=()):
    return frozenset(s)


def test_incidence_graph_of_two_overlapping_pairs():
    g = incidence_graph(H({1, 2}, {2, 3}))
    assert g.edges() == [(0, 0), (1, 0), (1, 1), (2, 1)]
    assert g.y_labels == ("m1", "m2")


def test_incidence_graph_small_cases():
    h = Hypergraph((1, 2), (fs({1, 2}), fs()))
    g = incidence_graph(h)
    assert g.degree(g.vertex("m2")) == 0
    k2 = incidence_graph(H({1}))
    assert (k2.n_x, k2.n_y, k2.n_edges) == (1, 1, 1)


def test_two_sections():
    tri = nx.complete_graph([1, 2, 3])
    assert nx.utils.graphs_equal(two_section(H({1, 2, 3})), tri)
    assert set(two_section(H({1, 2}, {2, 3}, {1, 3})).edges) == set(tri.edges)
    assert two_section(H({1}, {2})).number_of_edges() == 0


def test_closure_and_maximal():
    closed, top = closure_and_maximal(H("ab", "bc"))
    assert family(closed) == {fs("ab"), fs("bc"), fs("b")}
    assert family(top) == {fs("ab"), fs("bc")}
    closed, _ = closure_and_maximal(H("ab", "cd"))
    assert family(closed) == {fs("ab"), fs("cd")}
    _, top = closure_and_maximal(H("a", "ab", "abc"))
    assert family(top) == {fs("abc")}


def test_classification_examples():
    tri = H({1, 2}, {2, 3}, {1, 3})
    v = classify_acyclicity(tri)
    assert v.kind == NEITHER and not v.totally_balanced
    assert "hole" in describe_witness(tri, v)
    f = H({1, 3}, {1, 2, 3}, {2, 3})
    v = classify_acyclicity(f)
    assert v.kind == TOTALLY_BALANCED_ONLY and isinstance(v.witness, FCopy)
    assert v.witness.rows[1] == 1 and "F copy" in describe_witness(f, v)
    v = classify_acyclicity(H("ab", "bc"))
    assert v.kind == GAMMA_ACYCLIC and v.gamma_acyclic and describe_witness(H("ab"), v) == ""


def test_bachman_examples():
    d = bachman(H("ab", "bc"))
    b = d.nodes.index(fs("b"))
    assert {(d.nodes[s], d.nodes[t]) for s, t in d.arcs} == {(fs("b"), fs("ab")), (fs("b"), fs("bc"))}
    assert d.is_tree and b == 0
    tri = bachman(H({1, 2}, {2, 3}, {1, 3}))
    assert len(tri.nodes) == 6 and not tri.is_tree and not tri.is_forest
    one = bachman(H({1, 2}))
    assert len(one.nodes) == 1 and one.is_tree
    two = bachman(H({1}, {2}))
    assert two.is_forest and not two.is_tree


def test_maximal_clique_examples():
    assert family(maximal_cliques(nx.complete_graph(3))) == {fs({0, 1, 2})}
    assert family(maximal_cliques(nx.path_graph("abc"))) == {fs("ab"), fs("bc")}
    assert family(maximal_cliques(nx.cycle_graph(4))) == {fs(e) for e in nx.cycle_graph(4).edges}


def test_clique_lattice_contains_bounds():
    lat = CliqueLattice.from_graph(nx.path_graph("abc"))
    assert lat.elements == {fs(), fs("abc"), fs("ab"), fs("bc"), fs("b")}


def test_ptolemaic_examples():
    assert is_ptolemaic(nx.complete_graph(3))
    assert not is_ptolemaic(nx.cycle_graph(4))
    assert is_ptolemaic(nx.path_graph("abc"))
    gem = nx.Graph([(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)])
    assert not is_ptolemaic(gem)


def test_ptolemaic_matches_distance_oracle_on_atlas():
    for g in nx.graph_atlas_g()[1:]:
        assert is_ptolemaic(g) == brute_ptolemaic(list(g.nodes), list(g.edges))


def test_clique_enumeration_matches_oracle_on_atlas():
    for g in nx.graph_atlas_g()[1:300]:
        want = set(brute_maximal_cliques(list(g.nodes), list(g.edges)))
        assert family(maximal_cliques(g)) == want


def test_lambda_examples():
    star = lambda_map(nx.complete_graph(3))
    assert (star.n_x, star.n_y, star.n_edges) == (3, 1, 3)
    path = lambda_map(nx.path_graph("abc"))
    assert (path.n_x, path.n_y, path.n_edges) == (3, 2, 4) and is_bdh(path)
    with pytest.raises(NotBDHError):
        lambda_map(nx.cycle_graph(4))


def test_mu_maps_small(k2, p4):
    m = mu_maps(k2)
    assert m.mu1.number_of_nodes() == 1 and m.mu2.number_of_nodes() == 1
    assert not m.i_x and not m.i_y
    m = mu_maps(p4)
    assert m.mu1.number_of_edges() == 1 and m.mu2.number_of_edges() == 1
    # N(x1) = {y1} is neither maximal nor a meet of maximal neighborhoods
    assert {v.index for v in m.i_x} == {0} and {v.index for v in m.i_y} == {1}


def test_mu_maps_reject_non_bdh(c6, domino):
    for g in (c6, domino):
        with pytest.raises(NotBDHError):
            mu_maps(g)


def test_inessential_vertices_of_a_fan():
    # x3 sees only y2, which is the meet of N(x1) and N(x2) -> not inessential;
    # x4 sees y1 alone, which is neither maximal nor an intersection
    g = BipartiteGraph(4, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 1), (3, 0)])
    assert {v.index for v in inessential_vertices(g, X)} == {3}


def test_bridge_examples(k2, p4):
    assert check_bridge(k2) and check_bridge(p4)


def test_bridge_on_generated_graphs():
    for n, seed in itertools.product(range(2, 15, 3), range(4)):
        g, _ = generate_bdh(n, seed, 0.5)
        assert check_bridge(g)


def test_bridge_size_limit():
    g, _ = generate_bdh(40, 1)
    with pytest.raises(SizeLimitError):
        check_bridge(g)


def test_conformality_of_totally_balanced_hypergraphs():
    ground = range(4)
    subsets = [fs(c) for r in range(1, 5) for c in itertools.combinations(ground, r)]
    checked = 0
    for k in (2, 3):
        for members in itertools.combinations(subsets, k):
            h = Hypergraph(tuple(ground), members)
            if not classify_acyclicity(h).totally_balanced:
                continue
            sec = two_section(h)
            sec.remove_nodes_from([v for v in ground if not any(v in m for m in members)])
            _, top = closure_and_maximal(h)
            assert family(maximal_cliques(sec)) == family(top)
            checked += 1
    assert checked > 100


def test_tree_shape_survives_dropping_inessential_vertices():
    # holds on every domino-free graph; the domino itself is a counterexample
    for g in exhaustive_graphs(9):
        if find_domino(g):
            continue
        both = all(is_tree_shaped(hasse(g.remove(inessential_vertices(g, side)))) for side in (X, Y))
        assert is_tree_shaped(hasse(g)) == both


def test_domino_breaks_tree_shape_equivalence(domino):
    ix = inessential_vertices(domino, X)
    iy = inessential_vertices(domino, Y)
    assert {domino.label(v) for v in ix} == {"a", "c"}
    assert {domino.label(v) for v in iy} == {"d", "f"}
    assert not is_tree_shaped(hasse(domino))
    assert is_tree_shaped(hasse(domino.remove(ix))) and is_tree_shaped(hasse(domino.remove(iy)))


def test_parse_and_format_round_trip():
    h = parse_hypergraph("c demo\np hyp 3 2\nm 1 2\nm 2 3\n")
    assert h.ground == (1, 2, 3) and family(h) == {fs({1, 2}), fs({2, 3})}
    assert parse_hypergraph(format_hypergraph(h)) == h


@pytest.mark.parametrize("text", [
    "m 1 2\n",
    "p hyp 2 1\nm 1 3\n",
    "p hyp 2 2\nm 1\n",
    "p hyp 2 1\nm 1 1\n",
    "p hyp 2 1\nz 1\n",
    "p hyp x 1\n",
    "",
])
def test_parse_rejects(text):
    with pytest.raises(GraphFormatError):
        parse_hypergraph(text)


def test_member_outside_ground():
    with pytest.raises(ValueError):
        Hypergraph((1,), (fs({2}),))


def test_size_limit():
    h = Hypergraph.from_sets([{i} for i in range(40)])
    with pytest.raises(SizeLimitError):
        classify_acyclicity(h)


def test_incidence_matrix_and_connectivity():
    h = H({1, 2}, {3})
    assert h.incidence_matrix().tolist() == [[1, 1, 0], [0, 0, 1]]
    assert not h.is_connected() and H({1, 2}, {2, 3}).is_connected()
    assert len(h) == 2 and h.distinct() == [fs({3}), fs({1, 2})]
