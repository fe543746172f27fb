"""Property-based checks of the structural invariants, via hypothesis."""
import itertools
import math

import networkx as nx
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from bdhlattice.encoding import encode, expand_interval, verify_encoding
from bdhlattice.graph import (X, Y, BipartiteGraph, Vertex, distance, find_forbidden, star_extend,
                              universal_vertices)
from bdhlattice.hypergraph import (Hypergraph, bachman, check_bridge, classify_acyclicity,
                                   closure_and_maximal, is_ptolemaic, lambda_map, maximal_cliques,
                                   mu_maps, two_section)
from bdhlattice.lattice import hasse, is_tree_shaped, maximal_bicliques
from bdhlattice.oracle import (brute_distance_hereditary, brute_intersection, brute_maximal_bicliques,
                               brute_ptolemaic)
from bdhlattice.pruning import generate_bdh, is_bdh, pruning_sequence
from bdhlattice.query import (QueryStats, enumerate_via_F, list_neighbors, neighbor_intersection,
                              polarity, step_bound)

SETTINGS = settings(max_examples=60, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])


@st.composite
def bipartite_graphs(draw, max_side=6, connected=True):
    n_x = draw(st.integers(1, max_side))
    n_y = draw(st.integers(1, max_side))
    cells = list(itertools.product(range(n_x), range(n_y)))
    edges = [c for c in cells if draw(st.booleans())]
    g = BipartiteGraph(n_x, n_y, edges)
    if connected:
        assume(g.is_connected())
    return g


@st.composite
def bdh_graphs(draw, max_n=40):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 2**31 - 1))
    bias = draw(st.sampled_from([0.1, 0.3, 0.5, 0.7, 0.9]))
    return generate_bdh(n, seed, bias)


@st.composite
def hypergraphs(draw, max_ground=6, max_members=6):
    n = draw(st.integers(1, max_ground))
    ground = tuple(range(n))
    members = draw(st.lists(st.frozensets(st.sampled_from(ground), min_size=1),
                            min_size=1, max_size=max_members))
    return Hypergraph(ground, tuple(members))


# -- graphs ------------------------------------------------------------------
@SETTINGS
@given(bipartite_graphs(connected=False), st.data())
def test_star_extend_vertex_count(g, data):
    v = data.draw(st.sampled_from(g.vertices()))
    w = data.draw(st.sampled_from(g.vertices()))
    out = star_extend(g, v, w)
    assert out.n_vertices == g.n_vertices + (v.side == w.side)


@SETTINGS
@given(bdh_graphs(max_n=20), st.data())
def test_star_extension_stays_bdh(gs, data):
    g, _ = gs
    side = data.draw(st.sampled_from([X, Y]))
    assume(g.size(side) > 0)
    i = data.draw(st.integers(0, g.size(side) - 1))
    j = data.draw(st.integers(0, g.size(side) - 1))
    assert find_forbidden(star_extend(g, Vertex(side, i), Vertex(side, j))) is None


@SETTINGS
@given(bipartite_graphs(connected=False))
def test_distance_is_a_metric(g):
    vs = g.vertices()
    for u, v in itertools.product(vs, vs):
        assert distance(g, u, v) == distance(g, v, u)
    for u, v, w in itertools.product(vs[:5], vs[:5], vs[:5]):
        if distance(g, u, w) < math.inf and distance(g, w, v) < math.inf:
            assert distance(g, u, v) <= distance(g, u, w) + distance(g, w, v)


@SETTINGS
@given(bipartite_graphs())
def test_certificate_iff_not_distance_hereditary(g):
    assert (find_forbidden(g) is None) == brute_distance_hereditary(g)


# -- recognition -------------------------------------------------------------
@SETTINGS
@given(bipartite_graphs())
def test_recognition_and_replay(g):
    seq = pruning_sequence(g)
    assert (seq is None) == (find_forbidden(g) is not None)
    if seq is not None:
        assert seq.replay().edges() == g.edges()


@SETTINGS
@given(bdh_graphs(max_n=60))
def test_generated_graphs_are_bdh(gs):
    g, seq = gs
    assert is_bdh(g) and seq.replay().edges() == g.edges()


# -- lattice -----------------------------------------------------------------
@SETTINGS
@given(bipartite_graphs())
def test_bicliques_match_oracle_and_satisfy_polarity(g):
    bs = maximal_bicliques(g)
    assert bs == brute_maximal_bicliques(g)
    xn = [set(n) for n in g.adjacency(X)]
    yn = [set(n) for n in g.adjacency(Y)]
    for b in bs:
        assert set.intersection(*(xn[i] for i in b.x_shore)) == b.y_shore
        assert set.intersection(*(yn[j] for j in b.y_shore)) == b.x_shore
    for a, b in itertools.combinations(bs, 2):
        assert not (a.x_shore <= b.x_shore and a.y_shore <= b.y_shore)


@SETTINGS
@given(bipartite_graphs())
def test_tree_shape_iff_bdh_without_universal(g):
    assume(g.n_vertices > 2 and not universal_vertices(g))
    assert is_tree_shaped(hasse(g)) == bool(is_bdh(g))


@SETTINGS
@given(bipartite_graphs())
def test_swap_gives_dual_order(g):
    h, hs = hasse(g), hasse(g.swap())
    arcs = {(h.nodes[s].swap(), h.nodes[t].swap()) for s, t in h.arcs}
    assert arcs == {(hs.nodes[t], hs.nodes[s]) for s, t in hs.arcs}


# -- encoding and queries ----------------------------------------------------
@SETTINGS
@given(bdh_graphs(max_n=60), st.sampled_from([X, Y]))
def test_encoding_paths_are_neighborhoods(gs, side):
    g, seq = gs
    enc = encode(g, seq, arc_side=side)
    other = Y if side == X else X
    for w in range(g.size(other)):
        assert sorted(expand_interval(enc, w)) == list(g.adjacency(other)[w])
    assert verify_encoding(g, enc)
    assert enc.storage_size() <= 12 * g.n_vertices


@SETTINGS
@given(bdh_graphs(max_n=30))
def test_debug_build_checks_every_step(gs):
    g, seq = gs
    encode(g, seq, arc_side=X, debug=True)
    encode(g, seq, arc_side=Y, debug=True)


@SETTINGS
@given(bdh_graphs(max_n=60), st.sampled_from([X, Y]), st.data())
def test_intersection_matches_oracle_within_step_bound(gs, side, data):
    g, seq = gs
    enc = encode(g, seq, arc_side=side)
    other = enc.interval_side
    subset = data.draw(st.lists(st.integers(0, g.size(other) - 1), min_size=1, max_size=5,
                                unique=True))
    stats = QueryStats()
    got = neighbor_intersection(enc, subset, stats)
    assert set(got) == brute_intersection(g, [Vertex(other, w) for w in subset])
    assert stats.steps <= step_bound(len(subset), len(got))
    w = subset[0]
    stats = QueryStats()
    nb = list_neighbors(enc, w, stats)
    assert stats.steps <= step_bound(1, len(nb))


@SETTINGS
@given(bdh_graphs(max_n=40), st.data())
def test_closure_is_idempotent(gs, data):
    g, seq = gs
    ex, ey = encode(g, seq, arc_side=X), encode(g, seq, arc_side=Y)
    subset = data.draw(st.lists(st.integers(0, g.n_x - 1), min_size=1, max_size=4, unique=True))
    x1, y0 = polarity(ex, ey, subset)
    if x1:
        x2, y1 = polarity(ex, ey, [v.index for v in x1])
        assert set(x2) == set(x1) and set(y1) == set(y0)


@SETTINGS
@given(bdh_graphs(max_n=24))
def test_pairwise_family_gives_all_bicliques(gs):
    g, seq = gs
    got = enumerate_via_F(encode(g, seq, arc_side=X), encode(g, seq, arc_side=Y))
    assert got == brute_maximal_bicliques(g)


# -- hypergraphs -------------------------------------------------------------
@SETTINGS
@given(hypergraphs(max_ground=7, max_members=7))
def test_gamma_acyclic_iff_bachman_forest(h):
    gamma = classify_acyclicity(h).gamma_acyclic
    assert gamma == bachman(h).is_forest
    closed, _ = closure_and_maximal(h)
    assert classify_acyclicity(closed).gamma_acyclic == gamma
    if h.is_connected():
        assert gamma == bachman(h).is_tree


@SETTINGS
@given(hypergraphs())
def test_totally_balanced_hypergraphs_are_conformal(h):
    assume(classify_acyclicity(h).totally_balanced)
    sec = two_section(h)
    sec.remove_nodes_from([v for v in h.ground if not any(v in m for m in h.members)])
    _, top = closure_and_maximal(h)
    assert set(maximal_cliques(sec).members) == set(top.members)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 8))
    edges = [e for e in itertools.combinations(range(n), 2) if draw(st.booleans())]
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


@SETTINGS
@given(small_graphs())
def test_ptolemaic_matches_oracle_and_lambda_is_bdh(g):
    pt = is_ptolemaic(g)
    assert pt == brute_ptolemaic(list(g.nodes), list(g.edges))
    if pt and g.number_of_edges():
        lam = lambda_map(g)
        for comp in lam.components():
            assert is_bdh(lam.subgraph(comp))


@SETTINGS
@given(bdh_graphs(max_n=16))
def test_mu_images_are_ptolemaic_and_bridge_holds(gs):
    g, _ = gs
    images = mu_maps(g)
    assert is_ptolemaic(images.mu1) and is_ptolemaic(images.mu2)
    assert check_bridge(g)
