"""Neighborhood and biclique queries answered from arborescence encodings.

Every query takes an optional :class:`QueryStats` that counts order tests
and LCA calls (``comparisons``) and tree nodes walked (``nodes_visited``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .encoding import ROOT_NODE, ArborescenceEncoding, _index_on
from .graph import X, Y, Vertex
from .lattice import Biclique

STEP_CONSTANT = 64
"""Documented constant ``c`` of the output-linear step bound."""


@dataclass
class QueryStats:
    comparisons: int = 0
    nodes_visited: int = 0

    @property
    def steps(self) -> int:
        return self.comparisons + self.nodes_visited

    def reset(self) -> None:
        self.comparisons = 0
        self.nodes_visited = 0


def _indices(enc: ArborescenceEncoding, subset: Iterable) -> list[int]:
    out = [_index_on(v, enc.interval_side, enc.n_other, "vertex") for v in subset]
    if not out:
        raise ValueError("subset must be nonempty")
    return out


def _walk(enc: ArborescenceEncoding, top: int, bottom: int, stats: QueryStats) -> list[Vertex]:
    parent, label = enc.tree.parent, enc.tree.arc_label
    side = enc.arc_side
    out = []
    node = bottom
    while True:
        stats.nodes_visited += 1
        out.append(Vertex(side, int(label[node])))
        if node == top:
            return out
        node = int(parent[node])


def list_neighbors(enc: ArborescenceEncoding, v, stats: QueryStats | None = None) -> list[Vertex]:
    """N(v) from the bottom arc of its path up to the top arc."""
    stats = stats if stats is not None else QueryStats()
    w = _indices(enc, [v])[0]
    a, b = (int(t) for t in enc.interval_nodes[w])
    if a < 0:
        return []
    return _walk(enc, a, b, stats)


def _intersection_path(enc: ArborescenceEncoding, idx: list[int], stats: QueryStats):
    """Top and bottom node of the common path, or None when it is empty."""
    iv = enc.interval_nodes
    a_max = int(iv[idx[0]][0])
    if a_max < 0:
        return None
    for w in idx[1:]:
        a = int(iv[w][0])
        stats.comparisons += 1
        if enc.node_leq(a, a_max):
            continue
        stats.comparisons += 1
        if enc.node_leq(a_max, a):
            a_max = a
        else:
            # two path tops on different branches
            return None
    b_min = int(iv[idx[0]][1])
    for w in idx[1:]:
        stats.comparisons += 1
        b_min = enc.node_lca(b_min, int(iv[w][1]))
        if b_min == ROOT_NODE:
            return None
    stats.comparisons += 1
    if enc.node_leq(a_max, b_min):
        return a_max, b_min
    return None


def neighbor_intersection(enc: ArborescenceEncoding, subset: Iterable,
                          stats: QueryStats | None = None) -> list[Vertex]:
    """Common neighbors of ``subset``, listed bottom-up along the common path."""
    stats = stats if stats is not None else QueryStats()
    path = _intersection_path(enc, _indices(enc, subset), stats)
    if path is None:
        return []
    return _walk(enc, path[0], path[1], stats)


def intersection_empty(enc: ArborescenceEncoding, subset: Iterable,
                       stats: QueryStats | None = None) -> bool:
    stats = stats if stats is not None else QueryStats()
    return _intersection_path(enc, _indices(enc, subset), stats) is None


def _check_pair(enc_x: ArborescenceEncoding, enc_y: ArborescenceEncoding) -> None:
    if enc_x.arc_side != X or enc_y.arc_side != Y:
        raise ValueError("expected the X-arc encoding first and the Y-arc encoding second")
    if enc_x.n_arcs != enc_y.n_other or enc_y.n_arcs != enc_x.n_other:
        raise ValueError("encodings describe graphs of different sizes")


def polarity(enc_x: ArborescenceEncoding, enc_y: ArborescenceEncoding, subset: Iterable,
             stats: QueryStats | None = None) -> tuple[list[Vertex], list[Vertex]]:
    """``(X1, Y0)`` with ``Y0`` the common neighbors of ``subset`` and ``X1`` those of ``Y0``."""
    _check_pair(enc_x, enc_y)
    y0 = neighbor_intersection(enc_y, subset, stats)
    if not y0:
        return [], []
    return neighbor_intersection(enc_x, y0, stats), y0


def is_maximal_biclique(enc_x: ArborescenceEncoding, enc_y: ArborescenceEncoding,
                        subset: Iterable, stats: QueryStats | None = None) -> bool:
    """``subset`` is the x-shore of a maximal biclique (False when it has no common neighbor)."""
    subset = list(subset)
    xs = {_index_on(v, X, enc_y.n_other, "vertex") for v in subset}
    x1, y0 = polarity(enc_x, enc_y, subset, stats)
    if not y0:
        return False
    return {v.index for v in x1} == xs


def enumerate_via_F(enc_x: ArborescenceEncoding, enc_y: ArborescenceEncoding) -> list[Biclique]:
    """Maximal bicliques from the neighborhoods and pairwise neighborhood intersections.

    Each candidate y-shore is a path ``(a, b)`` of the Y-arc tree; duplicates
    are removed by a sorted scan on ``(pre_lr(a), pre_lr(b))``.
    """
    _check_pair(enc_x, enc_y)
    stats = QueryStats()
    lr = enc_y.labels.pre_lr
    n = enc_y.n_other
    paths = []
    for i in range(n):
        a, b = (int(t) for t in enc_y.interval_nodes[i])
        if a >= 0:
            paths.append((a, b))
        for k in range(i + 1, n):
            p = _intersection_path(enc_y, [i, k], stats)
            if p is not None:
                paths.append(p)
    paths.sort(key=lambda p: (lr[p[0]], lr[p[1]]))
    out = []
    prev = None
    for a, b in paths:
        key = (lr[a], lr[b])
        if key == prev:
            continue
        prev = key
        y0 = _walk(enc_y, a, b, stats)
        x0 = neighbor_intersection(enc_x, y0, stats)
        out.append(Biclique(frozenset(v.index for v in x0), frozenset(v.index for v in y0)))
    return sorted(out, key=lambda bq: bq.key)


def step_bound(n_input: int, n_output: int, c: int = STEP_CONSTANT) -> int:
    return c * (n_input + n_output + 1)
