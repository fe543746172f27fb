"""Path-arborescence encoding of a BDH graph.

The vertices of one color class (the *arc side*) become the arcs of a rooted
tree; every vertex of the other class is adjacent exactly to the arcs of one
directed path ``[a, b]``.  Node 0 is the root and every other node is the
head of exactly one arc, so arcs and non-root nodes are identified.

The tree is grown by replaying a pendant/twin construction sequence:

* twin of an arc vertex: subdivide its arc, the copy goes below;
* pendant arc vertex: new leaf arc hung below the anchor's path end;
* pendant / twin on the interval side: a path of length one / a copied path.

Ancestor tests use two preorder ranks (children visited left-to-right and
right-to-left); LCA uses an Euler tour with a sparse table.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (DisconnectedGraphError, EncodingFormatError, InvalidSequenceError,
                         NotBDHError, UnknownVertexError)
from .graph import X, Y, BipartiteGraph, Vertex, other_side
from .pruning import INITIAL, PENDANT, PruningSequence, pruning_sequence

FORMAT_VERSION = 1
ROOT_NODE = 0
EXHAUSTIVE_VERIFY_LIMIT = 200


class _RootSentinel:
    __slots__ = ()

    def __repr__(self):
        return "ROOT"


ROOT = _RootSentinel()
"""Returned by :func:`lca` when the arcs share no common ancestor arc."""


@dataclass(frozen=True, eq=False)
class Arborescence:
    root: int
    parent: np.ndarray      # parent node per node, -1 at the root
    arc_label: np.ndarray   # arc-side vertex index per node, -1 at the root
    children: tuple[tuple[int, ...], ...]

    @property
    def n_nodes(self) -> int:
        return len(self.parent)


@dataclass(frozen=True, eq=False)
class OrderLabels:
    pre_lr: np.ndarray
    pre_rl: np.ndarray


@dataclass(frozen=True)
class PathInterval:
    """Top arc ``a`` and bottom arc ``b`` (arc-side vertex indices)."""

    a: int
    b: int


class _SparseTableLCA:
    """Euler tour plus range-minimum sparse table over depths."""

    def __init__(self, euler: np.ndarray, depth: np.ndarray, first: np.ndarray):
        self.first = first
        self.euler = euler
        levels = [euler]
        vals = depth[euler]
        level_depth = [vals]
        span = 1
        while 2 * span <= len(euler):
            prev, prev_d = levels[-1], level_depth[-1]
            left, right = prev[:-span], prev[span:]
            ld, rd = prev_d[:-span], prev_d[span:]
            take_right = rd < ld
            levels.append(np.where(take_right, right, left))
            level_depth.append(np.where(take_right, rd, ld))
            span *= 2
        self.levels = levels
        self.level_depth = level_depth

    def query(self, u: int, v: int) -> int:
        lo, hi = int(self.first[u]), int(self.first[v])
        if lo > hi:
            lo, hi = hi, lo
        k = (hi - lo + 1).bit_length() - 1
        d1 = self.level_depth[k][lo]
        j = hi - (1 << k) + 1
        d2 = self.level_depth[k][j]
        return int(self.levels[k][lo] if d1 <= d2 else self.levels[k][j])


class ArborescenceEncoding:
    """Immutable encoding of one orientation of a BDH graph.

    Attributes
    ----------
    arc_side : str
        Color class whose vertices label the arcs.
    tree : Arborescence
    labels : OrderLabels
    node_of : numpy.ndarray
        Node (arc head) of each arc-side vertex.
    depth : numpy.ndarray
        Node depth; root arcs have depth 1.
    interval_nodes : numpy.ndarray
        ``(n_other, 2)`` array of ``(a, b)`` node ids, ``-1`` for an empty path.
    """

    def __init__(self, arc_side: str, parent, arc_label, children, interval_nodes,
                 pre_lr=None, pre_rl=None):
        self.arc_side = arc_side
        self.interval_side = other_side(arc_side)
        parent = np.asarray(parent, dtype=np.int64)
        arc_label = np.asarray(arc_label, dtype=np.int64)
        n_nodes = len(parent)
        self.n_arcs = n_nodes - 1
        self.n_other = len(interval_nodes)
        node_of = np.full(self.n_arcs, -1, dtype=np.int64)
        node_of[arc_label[1:]] = np.arange(1, n_nodes)
        self.node_of = node_of
        self.interval_nodes = np.asarray(interval_nodes, dtype=np.int64).reshape(-1, 2)
        lr, rl, depth, euler, first = _traverse(children, n_nodes)
        if pre_lr is not None and (not np.array_equal(lr, pre_lr) or not np.array_equal(rl, pre_rl)):
            raise EncodingFormatError("stored preorder labels disagree with the child order")
        self.tree = Arborescence(ROOT_NODE, parent, arc_label, tuple(tuple(c) for c in children))
        self.labels = OrderLabels(lr, rl)
        self.depth = depth
        self._lca = _SparseTableLCA(euler, depth, first)
        for arr in (parent, arc_label, node_of, lr, rl, depth, self.interval_nodes):
            arr.flags.writeable = False

    # -- node-level primitives ---------------------------------------
    def node_leq(self, u: int, v: int) -> bool:
        """``u`` is an ancestor-or-self of ``v``, from the two preorders alone."""
        lr, rl = self.labels.pre_lr, self.labels.pre_rl
        return lr[u] <= lr[v] and rl[u] <= rl[v]

    def node_lca(self, u: int, v: int) -> int:
        return self._lca.query(u, v)

    def interval(self, w: int) -> PathInterval | None:
        a, b = self.interval_nodes[w]
        if a < 0:
            return None
        label = self.tree.arc_label
        return PathInterval(int(label[a]), int(label[b]))

    def arc_node(self, arc) -> int:
        idx = _index_on(arc, self.arc_side, self.n_arcs, "arc")
        return int(self.node_of[idx])

    # -- serialization -----------------------------------------------
    def to_dict(self) -> dict:
        return {
            "version": FORMAT_VERSION,
            "arc_side": self.arc_side,
            "root": ROOT_NODE,
            "parent": self.tree.parent.tolist(),
            "arc_label": self.tree.arc_label.tolist(),
            "pre_lr": self.labels.pre_lr.tolist(),
            "pre_rl": self.labels.pre_rl.tolist(),
            "intervals": [[w, int(a), int(b)] for w, (a, b) in enumerate(self.interval_nodes)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ArborescenceEncoding":
        try:
            if data["version"] != FORMAT_VERSION:
                raise EncodingFormatError(f"unsupported encoding version {data['version']!r}")
            side = data["arc_side"]
            if side not in (X, Y) or data["root"] != ROOT_NODE:
                raise EncodingFormatError("bad arc side or root id")
            parent = list(data["parent"])
            arc_label = list(data["arc_label"])
            pre_lr = np.asarray(data["pre_lr"], dtype=np.int64)
            pre_rl = np.asarray(data["pre_rl"], dtype=np.int64)
            rows = data["intervals"]
        except (KeyError, TypeError) as exc:
            raise EncodingFormatError(f"missing or malformed field: {exc}") from None
        n = len(parent)
        if n == 0 or parent[0] != -1 or len(arc_label) != n or len(pre_lr) != n or len(pre_rl) != n:
            raise EncodingFormatError("array lengths are inconsistent")
        if sorted(arc_label[1:]) != list(range(n - 1)) or arc_label[0] != -1:
            raise EncodingFormatError("arc labels are not a bijection onto the arc side")
        children: list[list[int]] = [[] for _ in range(n)]
        for v in sorted(range(1, n), key=lambda v: pre_lr[v]):
            p = parent[v]
            if not 0 <= p < n:
                raise EncodingFormatError(f"node {v} has invalid parent {p}")
            children[p].append(v)
        if [r[0] for r in rows] != list(range(len(rows))):
            raise EncodingFormatError("interval table must list every vertex once, in order")
        nodes = [(r[1], r[2]) for r in rows]
        if any(not (-1 <= a < n and -1 <= b < n) or (a < 0) != (b < 0) or a == 0 or b == 0
               for a, b in nodes):
            raise EncodingFormatError("interval endpoint outside the tree")
        return cls(side, parent, arc_label, children, nodes or np.zeros((0, 2)), pre_lr, pre_rl)

    def storage_size(self) -> int:
        """Integers in the serialized form: root, four per-node arrays, interval rows."""
        return 1 + 4 * self.tree.n_nodes + 3 * self.n_other

    def __repr__(self):
        return (f"ArborescenceEncoding(arc_side={self.arc_side!r}, arcs={self.n_arcs}, "
                f"intervals={self.n_other})")


def _index_on(v, side: str, size: int, what: str) -> int:
    if isinstance(v, tuple):
        if len(v) != 2 or v[0] != side:
            raise UnknownVertexError(f"{what} {v!r} is not on side {side}")
        v = v[1]
    if not isinstance(v, (int, np.integer)) or not 0 <= v < size:
        raise UnknownVertexError(f"unknown {what} {v!r}")
    return int(v)


def _traverse(children: Sequence[Sequence[int]], n_nodes: int):
    """Both preorders, depths, Euler tour and first occurrences, iteratively."""
    pre_lr = np.full(n_nodes, -1, dtype=np.int64)
    pre_rl = np.full(n_nodes, -1, dtype=np.int64)
    depth = np.zeros(n_nodes, dtype=np.int64)
    first = np.zeros(n_nodes, dtype=np.int64)
    euler: list[int] = []
    counter = 0
    stack = [(ROOT_NODE, 0)]
    while stack:
        node, k = stack.pop()
        if k == 0:
            pre_lr[node] = counter
            counter += 1
            first[node] = len(euler)
        euler.append(node)
        kids = children[node]
        if k < len(kids):
            stack.append((node, k + 1))
            child = kids[k]
            depth[child] = depth[node] + 1
            stack.append((child, 0))
    counter = 0
    stack = [ROOT_NODE]
    while stack:
        node = stack.pop()
        pre_rl[node] = counter
        counter += 1
        stack.extend(children[node])
    if counter != n_nodes or (pre_lr < 0).any():
        raise EncodingFormatError("child lists do not form a single tree")
    return pre_lr, pre_rl, depth, np.asarray(euler, dtype=np.int64), first


def encode(g: BipartiteGraph, seq: PruningSequence | None = None, arc_side: str = Y,
           validate: bool = True, debug: bool = False) -> ArborescenceEncoding:
    """Build the encoding whose arcs are the ``arc_side`` vertices of ``g``.

    ``seq`` defaults to the recognizer's sequence.  With ``validate`` the
    sequence is replayed and compared with ``g``; with ``debug`` every
    intermediate interval is checked against the partial graph.
    """
    other_side(arc_side)
    if not g.is_connected():
        raise DisconnectedGraphError("encoding requires a connected graph")
    if seq is None:
        seq = pruning_sequence(g)
        if seq is None:
            raise NotBDHError("graph is not bipartite distance-hereditary")
    elif validate:
        seq.validate()
        if seq.class_sizes() != (g.n_x, g.n_y) or sorted(seq.replay().edges()) != sorted(g.edges()):
            raise InvalidSequenceError("sequence does not rebuild the given graph")
    n_arcs = g.size(arc_side)
    n_other = g.size(other_side(arc_side))

    children: list[list[int]] = [[]]
    node_label: list[int] = [-1]
    node_of = [-1] * n_arcs
    a_node = [-1] * n_other
    bucket_of = [-1] * n_other
    bucket_node: list[int] = []
    node_bucket: dict[int, int] = {}

    def new_node(parent_node: int, label: int) -> int:
        m = len(children)
        children.append([])
        node_label.append(label)
        node_of[label] = m
        children[parent_node].append(m)
        return m

    def bucket_for(node: int) -> int:
        b = node_bucket.get(node)
        if b is None:
            b = len(bucket_node)
            bucket_node.append(node)
            node_bucket[node] = b
        return b

    for k, step in enumerate(seq):
        v = step.vertex
        if step.kind == INITIAL:
            if v.side == arc_side:
                new_node(ROOT_NODE, v.index)
            continue
        anchor = step.anchor
        if v.side == arc_side:
            if step.kind == PENDANT:
                w = anchor.index
                if a_node[w] < 0:
                    # deferred empty interval of the initial vertex
                    leaf = new_node(ROOT_NODE, v.index)
                    a_node[w] = leaf
                else:
                    leaf = new_node(bucket_node[bucket_of[w]], v.index)
                bucket_of[w] = bucket_for(leaf)
            else:
                n = node_of[anchor.index]
                m = len(children)
                children.append(children[n])
                node_label.append(v.index)
                node_of[v.index] = m
                children[n] = [m]
                b = node_bucket.pop(n, None)
                if b is not None:
                    bucket_node[b] = m
                    node_bucket[m] = b
        else:
            if step.kind == PENDANT:
                n = node_of[anchor.index]
                a_node[v.index] = n
                bucket_of[v.index] = bucket_for(n)
            else:
                a_node[v.index] = a_node[anchor.index]
                bucket_of[v.index] = bucket_of[anchor.index]
        if debug:
            _debug_check(arc_side, children, node_label, a_node, bucket_of, bucket_node,
                         seq.steps[: k + 1])

    parent = [-1] * len(children)
    for p, kids in enumerate(children):
        for c in kids:
            parent[c] = p
    intervals = [(a, bucket_node[bucket_of[w]]) if a >= 0 else (-1, -1)
                 for w, a in enumerate(a_node)]
    return ArborescenceEncoding(arc_side, parent, node_label, children,
                                intervals if intervals else np.zeros((0, 2)))


def _debug_check(arc_side, children, node_label, a_node, bucket_of, bucket_node, steps):
    parent = {c: p for p, kids in enumerate(children) for c in kids}
    nbrs: dict[Vertex, set[Vertex]] = {steps[0].vertex: set()}
    for s in steps[1:]:
        nbrs[s.vertex] = {s.anchor} if s.kind == PENDANT else set(nbrs[s.anchor])
        for u in nbrs[s.vertex]:
            nbrs[u].add(s.vertex)
    for v, nb in nbrs.items():
        if v.side == arc_side:
            continue
        want = {u.index for u in nb}
        a = a_node[v.index]
        got = set()
        if a >= 0:
            node = bucket_node[bucket_of[v.index]]
            while True:
                got.add(node_label[node])
                if node == a:
                    break
                node = parent.get(node, -1)
                if node <= 0:
                    raise AssertionError(f"interval of {v} is not a directed path")
        if got != want:
            raise AssertionError(f"interval of {v} spans {sorted(got)}, expected {sorted(want)}")


def leq_t(enc: ArborescenceEncoding, u, v) -> bool:
    """Arc ``u`` lies on the root path of arc ``v`` (reflexive)."""
    return bool(enc.node_leq(enc.arc_node(u), enc.arc_node(v)))


def lca(enc: ArborescenceEncoding, arcs: Iterable):
    """Deepest arc below-or-equal to all ``arcs`` under the tree order, or :data:`ROOT`."""
    nodes = [enc.arc_node(a) for a in arcs]
    if not nodes:
        raise ValueError("lca of an empty arc set")
    acc = nodes[0]
    for n in nodes[1:]:
        acc = enc.node_lca(acc, n)
        if acc == ROOT_NODE:
            return ROOT
    return int(enc.tree.arc_label[acc])


def expand_interval(enc: ArborescenceEncoding, w: int) -> list[int] | None:
    """Arc labels from ``b`` up to ``a``; None if the endpoints do not form a directed path."""
    a, b = (int(t) for t in enc.interval_nodes[w])
    if a < 0:
        return [] if b < 0 else None
    parent, label = enc.tree.parent, enc.tree.arc_label
    out = []
    node = b
    while node > 0:
        out.append(int(label[node]))
        if node == a:
            return out
        node = int(parent[node])
    return None


def verify_encoding(g: BipartiteGraph, enc: ArborescenceEncoding, seed: int = 0,
                    samples: int = 20000) -> bool:
    """Every interval spans exactly its neighborhood and the preorder test
    agrees with parent-walking ancestry (all pairs up to 200 vertices,
    ``samples`` random pairs beyond)."""
    try:
        side = enc.arc_side
        if enc.n_arcs != g.size(side) or enc.n_other != g.size(other_side(side)):
            return False
        parent = enc.tree.parent
        adj = g.adjacency(other_side(side))
        for w in range(enc.n_other):
            arcs = expand_interval(enc, w)
            if arcs is None or sorted(arcs) != list(adj[w]):
                return False
        n_nodes = enc.tree.n_nodes
        depth = enc.depth
        for v in range(1, n_nodes):
            if depth[v] != depth[parent[v]] + 1:
                return False

        def is_ancestor(u, v):
            while depth[v] > depth[u]:
                v = parent[v]
            return u == v

        if g.n_vertices <= EXHAUSTIVE_VERIFY_LIMIT:
            pairs = ((u, v) for u in range(n_nodes) for v in range(n_nodes))
        else:
            rng = random.Random(seed)
            pairs = ((rng.randrange(n_nodes), rng.randrange(n_nodes)) for _ in range(samples))
        return all(enc.node_leq(u, v) == is_ancestor(u, v) for u, v in pairs)
    except (IndexError, ValueError):
        return False
