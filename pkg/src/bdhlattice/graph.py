"""Bipartite graph representation, the edge-list file format and small
structural checks (distances, universal vertices, forbidden subgraphs).

Vertices are addressed by :class:`Vertex` ``(side, index)`` pairs with dense
0-based indices per color class.  Human-readable labels live in a side map
and survive re-indexing (subgraphs, vertex deletion).
"""
from __future__ import annotations

import math
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .exceptions import GraphFormatError, UnknownVertexError

X = "X"
Y = "Y"


def other_side(side: str) -> str:
    if side == X:
        return Y
    if side == Y:
        return X
    raise ValueError(f"side must be 'X' or 'Y', got {side!r}")


class Vertex(NamedTuple):
    side: str
    index: int

    def __str__(self):
        return f"{self.side.lower()}{self.index + 1}"


def iter_bits(mask: int):
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class BipartiteGraph:
    """Simple bipartite graph with color classes X and Y.

    Parameters
    ----------
    n_x, n_y : int
        Sizes of the two color classes.
    edges : iterable of (int, int)
        Pairs ``(i, j)`` joining ``x_i`` to ``y_j`` (0-based).
    x_labels, y_labels : sequence of str, optional
        Display labels; default ``x1..`` and ``y1..``.

    Raises
    ------
    ValueError
        On out-of-range endpoints or a repeated edge.
    """

    __slots__ = ("n_x", "n_y", "x_labels", "y_labels", "_x_adj", "_y_adj",
                 "_x_masks", "_y_masks", "_label_index", "_connected", "memo")

    def __init__(self, n_x: int, n_y: int, edges: Iterable[tuple[int, int]] = (),
                 x_labels: Sequence[str] | None = None,
                 y_labels: Sequence[str] | None = None):
        if n_x < 0 or n_y < 0:
            raise ValueError("class sizes must be non-negative")
        self.n_x = int(n_x)
        self.n_y = int(n_y)
        x_adj: list[list[int]] = [[] for _ in range(n_x)]
        y_adj: list[list[int]] = [[] for _ in range(n_y)]
        seen = set()
        for i, j in edges:
            if not (0 <= i < n_x and 0 <= j < n_y):
                raise ValueError(f"edge ({i}, {j}) out of range for {n_x}x{n_y} graph")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge x{i + 1}-y{j + 1}")
            seen.add((i, j))
            x_adj[i].append(j)
            y_adj[j].append(i)
        self._x_adj = tuple(tuple(sorted(a)) for a in x_adj)
        self._y_adj = tuple(tuple(sorted(a)) for a in y_adj)
        self._x_masks = None
        self._y_masks = None
        self.x_labels = tuple(x_labels) if x_labels is not None else tuple(
            f"x{i + 1}" for i in range(n_x))
        self.y_labels = tuple(y_labels) if y_labels is not None else tuple(
            f"y{j + 1}" for j in range(n_y))
        if len(self.x_labels) != n_x or len(self.y_labels) != n_y:
            raise ValueError("label count does not match class size")
        self._label_index = None
        self._connected = None
        self.memo: dict = {}  # derived values keyed by the computing function

    # -- constructors -------------------------------------------------
    @classmethod
    def from_neighborhoods(cls, x_neighborhoods: Sequence[Iterable[int]], n_y: int,
                           x_labels=None, y_labels=None) -> "BipartiteGraph":
        edges = [(i, j) for i, nb in enumerate(x_neighborhoods) for j in nb]
        return cls(len(x_neighborhoods), n_y, edges, x_labels, y_labels)

    @classmethod
    def from_row_masks(cls, rows: Sequence[int], n_y: int) -> "BipartiteGraph":
        """Build from per-x bitmasks over Y (bit ``j`` set iff ``x_i ~ y_j``)."""
        rows = [int(r) for r in rows]
        if any(r < 0 or r >> n_y for r in rows):
            raise ValueError("row mask has bits outside the Y class")
        g = cls(0, 0)
        g.n_x, g.n_y = len(rows), n_y
        ys = range(n_y)
        xs = range(len(rows))
        g._x_adj = tuple(tuple([j for j in ys if r >> j & 1]) for r in rows)
        g._y_adj = tuple(tuple([i for i in xs if rows[i] >> j & 1]) for j in ys)
        g._x_masks = tuple(rows)
        g._y_masks = tuple(sum(1 << i for i in a) for a in g._y_adj)
        g.x_labels = tuple(f"x{i + 1}" for i in range(g.n_x))
        g.y_labels = tuple(f"y{j + 1}" for j in range(n_y))
        return g

    @classmethod
    def from_biadjacency(cls, matrix, x_labels=None, y_labels=None) -> "BipartiteGraph":
        a = np.asarray(matrix)
        if a.ndim != 2:
            raise ValueError("biadjacency matrix must be 2-dimensional")
        ii, jj = np.nonzero(a)
        return cls(a.shape[0], a.shape[1], zip(ii.tolist(), jj.tolist()), x_labels, y_labels)

    @classmethod
    def from_labeled_edges(cls, edges: Iterable[tuple[str, str]]) -> "BipartiteGraph":
        """Build from ``(x_label, y_label)`` pairs; classes ordered by first appearance."""
        xs: dict[str, int] = {}
        ys: dict[str, int] = {}
        idx = []
        for a, b in edges:
            idx.append((xs.setdefault(a, len(xs)), ys.setdefault(b, len(ys))))
        return cls(len(xs), len(ys), idx, list(xs), list(ys))

    # -- basic accessors ---------------------------------------------
    @property
    def n_vertices(self) -> int:
        return self.n_x + self.n_y

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self._x_adj)

    def size(self, side: str) -> int:
        return self.n_x if side == X else self.n_y

    def adjacency(self, side: str) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor index lists for every vertex of ``side``."""
        return self._x_adj if side == X else self._y_adj

    def masks(self, side: str) -> tuple[int, ...]:
        """Neighborhoods of ``side`` as bitmasks over the opposite class."""
        if self._x_masks is None:
            self._x_masks = tuple(_mask_of(a) for a in self._x_adj)
            self._y_masks = tuple(_mask_of(a) for a in self._y_adj)
        return self._x_masks if side == X else self._y_masks

    def vertices(self, side: str | None = None) -> list[Vertex]:
        if side is None:
            return self.vertices(X) + self.vertices(Y)
        return [Vertex(side, i) for i in range(self.size(side))]

    def _check(self, v: Vertex) -> Vertex:
        if not isinstance(v, tuple) or len(v) != 2 or v[0] not in (X, Y) \
                or not 0 <= v[1] < self.size(v[0]):
            raise UnknownVertexError(v)
        return Vertex(*v)

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        v = self._check(v)
        side = other_side(v.side)
        return tuple(Vertex(side, j) for j in self.adjacency(v.side)[v.index])

    def degree(self, v: Vertex) -> int:
        v = self._check(v)
        return len(self.adjacency(v.side)[v.index])

    def has_edge(self, i: int, j: int) -> bool:
        nb = self._x_adj[i]
        k = bisect_left(nb, j)
        return k < len(nb) and nb[k] == j

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nb in enumerate(self._x_adj) for j in nb]

    def label(self, v: Vertex) -> str:
        v = self._check(v)
        return self.x_labels[v.index] if v.side == X else self.y_labels[v.index]

    def vertex(self, label: str) -> Vertex:
        if self._label_index is None:
            index = {lab: Vertex(Y, j) for j, lab in enumerate(self.y_labels)}
            index.update({lab: Vertex(X, i) for i, lab in enumerate(self.x_labels)})
            self._label_index = index
        try:
            return self._label_index[label]
        except KeyError:
            raise UnknownVertexError(label) from None

    def gid(self, v: Vertex) -> int:
        """Global index: X vertices first, then Y."""
        return v[1] if v[0] == X else self.n_x + v[1]

    def from_gid(self, g: int) -> Vertex:
        return Vertex(X, g) if g < self.n_x else Vertex(Y, g - self.n_x)

    def global_masks(self) -> list[int]:
        """Neighborhoods as bitmasks over global indices."""
        shift = self.n_x
        return [m << shift for m in self.masks(X)] + list(self.masks(Y))

    # -- derived graphs ----------------------------------------------
    def swap(self) -> "BipartiteGraph":
        """The same graph with the color classes exchanged."""
        return BipartiteGraph(self.n_y, self.n_x, [(j, i) for i, j in self.edges()],
                              self.y_labels, self.x_labels)

    def subgraph(self, keep: Iterable[Vertex]) -> "BipartiteGraph":
        """Induced subgraph on ``keep``, re-indexed in the original order."""
        keep = {self._check(v) for v in keep}
        xs = [i for i in range(self.n_x) if Vertex(X, i) in keep]
        ys = [j for j in range(self.n_y) if Vertex(Y, j) in keep]
        xpos = {i: k for k, i in enumerate(xs)}
        ypos = {j: k for k, j in enumerate(ys)}
        edges = [(xpos[i], ypos[j]) for i, j in self.edges() if i in xpos and j in ypos]
        return BipartiteGraph(len(xs), len(ys), edges,
                              [self.x_labels[i] for i in xs], [self.y_labels[j] for j in ys])

    def remove(self, vertices: Iterable[Vertex]) -> "BipartiteGraph":
        drop = {self._check(v) for v in vertices}
        return self.subgraph(v for v in self.vertices() if v not in drop)

    def biadjacency(self) -> np.ndarray:
        a = np.zeros((self.n_x, self.n_y), dtype=np.int8)
        for i, j in self.edges():
            a[i, j] = 1
        return a

    # -- connectivity ------------------------------------------------
    def _component_gids(self) -> list[list[int]]:
        """Breadth-first search over the neighbor lists, one gid list per component."""
        n_x = self.n_x
        seen = bytearray(self.n_vertices)
        comps = []
        for start in range(self.n_vertices):
            if seen[start]:
                continue
            seen[start] = 1
            comp = [start]
            for g in comp:
                nbrs = self._x_adj[g] if g < n_x else self._y_adj[g - n_x]
                shift = n_x if g < n_x else 0
                for u in nbrs:
                    u += shift
                    if not seen[u]:
                        seen[u] = 1
                        comp.append(u)
            comps.append(sorted(comp))
        return comps

    def components(self) -> list[list[Vertex]]:
        return [[self.from_gid(g) for g in c] for c in self._component_gids()]

    def is_connected(self) -> bool:
        if self._connected is None:
            self._connected = self.n_vertices > 0 and len(self._component_gids()) == 1
        return self._connected

    # -- equality ----------------------------------------------------
    def _key(self):
        return (self.n_x, self.n_y, self._x_adj, self.x_labels, self.y_labels)

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"BipartiteGraph(n_x={self.n_x}, n_y={self.n_y}, n_edges={self.n_edges})"


# -- text format ------------------------------------------------------

def _parse_endpoint(token: str, default_side: str, lineno: int) -> tuple[str, int]:
    side = default_side
    if token[:1] in ("x", "X", "y", "Y"):
        side = token[0].upper()
        token = token[1:]
    try:
        k = int(token)
    except ValueError:
        raise GraphFormatError(f"bad vertex token {token!r}", lineno) from None
    if k < 1:
        raise GraphFormatError("vertex indices are 1-based", lineno)
    return side, k - 1


def parse_graph(text: str) -> BipartiteGraph:
    """Parse the line-oriented edge-list format.

    ``p bip <nx> <ny> <m>`` header, ``e <x> <y>`` edges (1-based), ``c``
    comments.  Endpoints may carry an ``x``/``y`` prefix, which makes
    same-class edges expressible (and rejected).  Without a header the class
    sizes are inferred from the largest indices.
    """
    header = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise GraphFormatError("duplicate header", lineno)
            if edges:
                raise GraphFormatError("header must precede edges", lineno)
            if len(parts) != 5 or parts[1] != "bip":
                raise GraphFormatError("expected 'p bip <nx> <ny> <m>'", lineno)
            try:
                header = tuple(int(t) for t in parts[2:])
            except ValueError:
                raise GraphFormatError("non-integer header field", lineno) from None
            if min(header) < 0:
                raise GraphFormatError("negative header field", lineno)
        elif parts[0] == "e":
            if len(parts) != 3:
                raise GraphFormatError("expected 'e <x> <y>'", lineno)
            s1, a = _parse_endpoint(parts[1], X, lineno)
            s2, b = _parse_endpoint(parts[2], Y, lineno)
            if s1 == s2:
                raise GraphFormatError(f"edge joins two vertices of class {s1}", lineno)
            if s1 == Y:
                a, b = b, a
            if header is not None and (a >= header[0] or b >= header[1]):
                raise GraphFormatError("vertex index exceeds header class size", lineno)
            if (a, b) in seen:
                raise GraphFormatError(
                    f"duplicate edge x{a + 1}-y{b + 1} (first on line {seen[(a, b)]})", lineno)
            seen[(a, b)] = lineno
            edges.append((a, b))
        else:
            raise GraphFormatError(f"unknown line type {parts[0]!r}", lineno)
    if header is None:
        n_x = max((a for a, _ in edges), default=-1) + 1
        n_y = max((b for _, b in edges), default=-1) + 1
    else:
        n_x, n_y, m = header
        if m != len(edges):
            raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return BipartiteGraph(n_x, n_y, edges)


def format_graph(g: BipartiteGraph) -> str:
    lines = [f"p bip {g.n_x} {g.n_y} {g.n_edges}"]
    lines += [f"e {i + 1} {j + 1}" for i, j in g.edges()]
    return "\n".join(lines) + "\n"


# -- structural queries -----------------------------------------------

def distance(g: BipartiteGraph, u: Vertex, v: Vertex) -> float:
    """BFS shortest-path length; ``math.inf`` between components."""
    u = g._check(u)
    v = g._check(v)
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for z in g.neighbors(w):
            if z not in dist:
                dist[z] = dist[w] + 1
                if z == v:
                    return dist[z]
                queue.append(z)
    return math.inf


def universal_vertices(g: BipartiteGraph) -> set[Vertex]:
    """Vertices adjacent to every vertex of the (nonempty) opposite class."""
    out = set()
    for side in (X, Y):
        opp = g.size(other_side(side))
        if opp == 0:
            continue
        for i, nb in enumerate(g.adjacency(side)):
            if len(nb) == opp:
                out.add(Vertex(side, i))
    return out


@dataclass(frozen=True)
class Forbidden:
    """Certificate of non-membership: an induced domino or a hole."""

    kind: str  # "domino" or "hole"
    vertices: tuple[Vertex, ...]

    def describe(self, g: BipartiteGraph) -> str:
        return f"{self.kind} on vertices " + ", ".join(g.label(v) for v in self.vertices)


def find_domino(g: BipartiteGraph) -> Forbidden | None:
    """Search for an induced domino.

    The two degree-3 vertices of a domino are adjacent; with ``b`` in X and
    ``e`` in Y as that central edge and ``d, f`` the other neighbors of ``b``,
    the end vertices are ``a`` in N(d) & N(e) - N(f) and ``c`` in
    N(e) & N(f) - N(d).
    """
    ym = g.masks(Y)
    for b in range(g.n_x):
        nb = g.adjacency(X)[b]
        if len(nb) < 3:
            continue
        not_b = ~(1 << b)
        for e in nb:
            others = [y for y in nb if y != e]
            ne = ym[e] & not_b
            for p, d in enumerate(others):
                for f in others[p + 1:]:
                    a_set = ne & ym[d] & ~ym[f]
                    if not a_set:
                        continue
                    c_set = ne & ym[f] & ~ym[d]
                    if c_set:
                        a = (a_set & -a_set).bit_length() - 1
                        c = (c_set & -c_set).bit_length() - 1
                        return Forbidden("domino", (Vertex(X, a), Vertex(X, b), Vertex(X, c),
                                                    Vertex(Y, d), Vertex(Y, e), Vertex(Y, f)))
    return None


def find_hole(g: BipartiteGraph) -> Forbidden | None:
    """Search for an induced chordless cycle on at least six vertices.

    Exhaustive search over induced paths whose first vertex is the smallest
    of the cycle.  Exponential in the worst case; meant for small graphs.
    """
    gm = g.global_masks()
    n = g.n_vertices
    for s in range(n):
        above = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        ns = gm[s]
        # path = [s, v1, ..., vk]; blocked = path plus neighbors of path[1:-1]
        for v1 in iter_bits(ns & above):
            stack = [([s, v1], (1 << s) | (1 << v1))]
            while stack:
                path, blocked = stack.pop()
                last = path[-1]
                for u in iter_bits(gm[last] & above & ~blocked):
                    if (ns >> u) & 1:
                        if len(path) + 1 >= 6:
                            return Forbidden("hole", tuple(g.from_gid(w) for w in path + [u]))
                        continue
                    stack.append((path + [u], blocked | gm[last] | (1 << u)))
    return None


def find_forbidden(g: BipartiteGraph) -> Forbidden | None:
    """Return an induced domino or hole of ``g``, or ``None`` if neither exists."""
    return find_domino(g) or find_hole(g)


def star_extend(g: BipartiteGraph, v: Vertex, v2: Vertex) -> BipartiteGraph:
    """Add a vertex adjacent to ``N(v) & N(v2)`` when ``v, v2`` share a class."""
    v = g._check(v)
    v2 = g._check(v2)
    if v.side != v2.side:
        return g
    common = sorted(set(g.adjacency(v.side)[v.index]) & set(g.adjacency(v.side)[v2.index]))
    label = f"{g.label(v)}*{g.label(v2)}"
    taken = set(g.x_labels) | set(g.y_labels)
    while label in taken:
        label += "'"
    if v.side == X:
        new = g.n_x
        return BipartiteGraph(g.n_x + 1, g.n_y, g.edges() + [(new, j) for j in common],
                              g.x_labels + (label,), g.y_labels)
    new = g.n_y
    return BipartiteGraph(g.n_x, g.n_y + 1, g.edges() + [(i, new) for i in common],
                          g.x_labels, g.y_labels + (label,))
