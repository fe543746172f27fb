import math

import numpy as np
import pytest

from bdhlattice.exceptions import GraphFormatError, UnknownVertexError
from bdhlattice.graph import (X, Y, BipartiteGraph, Vertex, distance, find_domino, find_forbidden,
                              find_hole, format_graph, parse_graph, star_extend, universal_vertices)

from conftest import labeled


def test_parse_single_edge():
    g = parse_graph("p bip 1 1 1\ne 1 1\n")
    assert (g.n_x, g.n_y, g.edges()) == (1, 1, [(0, 0)])


def test_parse_domino_degrees():
    text = "p bip 3 3 7\ne 1 1\ne 1 2\ne 2 1\ne 2 2\ne 2 3\ne 3 2\ne 3 3"
    g = parse_graph(text)
    assert [g.degree(v) for v in g.vertices(X)] == [2, 3, 2]
    assert [g.degree(v) for v in g.vertices(Y)] == [2, 3, 2]


def test_parse_comments_and_no_header():
    g = parse_graph("c a comment\ne 2 3\ne 1 1\n")
    assert (g.n_x, g.n_y) == (2, 3)


@pytest.mark.parametrize("text, line", [
    ("e 1 1\ne 1 1\n", 2),
    ("p bip 1 1 1\ne 1 2\n", 2),
    ("p bip 2 2 1\nq 1 2\n", 2),
    ("e x1 x2\n", 1),
    ("e 0 1\n", 1),
    ("e 1\n", 1),
    ("p bip 1 1\n", 1),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.lineno == line


def test_parse_edge_count_mismatch():
    with pytest.raises(GraphFormatError):
        parse_graph("p bip 2 2 3\ne 1 1\n")


def test_format_round_trip(domino):
    g = parse_graph(format_graph(domino))
    assert g.edges() == domino.edges()


def test_y_prefixed_endpoint_is_swapped():
    g = parse_graph("e y2 x1\n")
    assert g.edges() == [(0, 1)]


def test_neighbor_lists_sorted_and_symmetric(domino):
    for v in domino.vertices():
        nb = domino.neighbors(v)
        assert list(nb) == sorted(nb)
        assert all(v in domino.neighbors(u) for u in nb)


def test_duplicate_edge_rejected_in_constructor():
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, [(0, 0), (0, 0)])


def test_row_masks_match_edges():
    g = BipartiteGraph.from_row_masks([0b011, 0b110], 3)
    assert g.edges() == [(0, 0), (0, 1), (1, 1), (1, 2)]
    with pytest.raises(ValueError):
        BipartiteGraph.from_row_masks([0b1000], 3)


def test_biadjacency_round_trip(c6):
    a = c6.biadjacency()
    assert np.array_equal(BipartiteGraph.from_biadjacency(a).biadjacency(), a)


def test_distances(k2, c6):
    assert distance(k2, Vertex(X, 0), Vertex(Y, 0)) == 1
    a, b = c6.vertex("a"), c6.vertex("b")
    assert distance(c6, a, b) == 2
    two = BipartiteGraph(2, 2, [(0, 0), (1, 1)])
    assert distance(two, Vertex(X, 0), Vertex(Y, 1)) == math.inf


def test_distance_unknown_vertex(k2):
    with pytest.raises(UnknownVertexError):
        distance(k2, Vertex(X, 0), Vertex(Y, 5))


def test_universal_vertices(k2, star, domino):
    assert universal_vertices(k2) == {Vertex(X, 0), Vertex(Y, 0)}
    # X = {x1}, so every leaf is adjacent to the whole opposite class too
    assert universal_vertices(star) == {Vertex(X, 0)} | set(star.vertices(Y))
    # b is adjacent to d, e, f and e to a, b, c
    assert universal_vertices(domino) == {domino.vertex("b"), domino.vertex("e")}


def test_forbidden_certificates(domino, c6, p4):
    cert = find_forbidden(domino)
    assert cert.kind == "domino" and len(set(cert.vertices)) == 6
    hole = find_forbidden(c6)
    assert hole.kind == "hole" and set(hole.vertices) == set(c6.vertices())
    assert find_forbidden(p4) is None


def test_domino_certificate_induces_domino(domino):
    cert = find_domino(domino)
    sub = domino.subgraph(cert.vertices)
    assert sub.n_edges == 7


def test_hole_certificate_is_chordless_cycle():
    c8 = BipartiteGraph(4, 4, [(i, i) for i in range(4)] + [(i, (i + 1) % 4) for i in range(4)])
    cert = find_hole(c8)
    sub = c8.subgraph(cert.vertices)
    assert len(cert.vertices) == 8
    assert all(sub.degree(v) == 2 for v in sub.vertices())


def test_star_extend_cross_class_is_identity(p4):
    assert star_extend(p4, Vertex(X, 0), Vertex(Y, 1)) is p4


def test_star_extend_adds_common_neighbors(p4):
    g = star_extend(p4, Vertex(X, 0), Vertex(X, 1))
    assert g.n_x == 3
    assert g.adjacency(X)[2] == (0,)


def test_star_extend_same_vertex_adds_twin(p4):
    g = star_extend(p4, Vertex(Y, 0), Vertex(Y, 0))
    assert g.adjacency(Y)[2] == p4.adjacency(Y)[0]


def test_components_and_swap():
    g = BipartiteGraph(3, 2, [(0, 0), (1, 0), (2, 1)])
    assert len(g.components()) == 2 and not g.is_connected()
    s = g.swap()
    assert (s.n_x, s.n_y) == (2, 3) and s.swap().edges() == g.edges()


def test_labels_preserved_by_subgraph():
    g = labeled("ad ae bd")
    sub = g.subgraph([g.vertex("a"), g.vertex("d"), g.vertex("e")])
    assert sub.x_labels == ("a",) and sub.y_labels == ("d", "e")
