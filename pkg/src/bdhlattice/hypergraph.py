"""Hypergraphs, acyclicity patterns, clique lattices and the maps between
Ptolemaic graphs and BDH graphs.

General (non-bipartite) graphs are :class:`networkx.Graph` objects.  The
intersection closure of a hypergraph never contains the empty set; the
clique lattice adds the empty set and the full vertex set explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import networkx as nx

from .exceptions import GraphFormatError, NotBDHError, SizeLimitError
from .graph import X, Y, BipartiteGraph, Forbidden, Vertex, find_hole
from .lattice import maximal_bicliques
from .pruning import is_bdh

MAX_MEMBERS = 32
MAX_GROUND = 32
MAX_GRAPH = 32

GAMMA_ACYCLIC = "gamma-acyclic"
TOTALLY_BALANCED_ONLY = "totally-balanced-only"
NEITHER = "neither"


@dataclass(frozen=True)
class Hypergraph:
    """Ordered ground set plus a list of members (repeats allowed)."""

    ground: tuple
    members: tuple[frozenset, ...]

    def __post_init__(self):
        gs = set(self.ground)
        if len(gs) != len(self.ground):
            raise ValueError("ground set has repeated vertices")
        for m in self.members:
            if not m <= gs:
                raise ValueError(f"member {sorted(m, key=str)} is not inside the ground set")

    @classmethod
    def from_sets(cls, members: Iterable[Iterable[Hashable]], ground: Sequence | None = None) -> "Hypergraph":
        members = tuple(frozenset(m) for m in members)
        if ground is None:
            seen: dict = {}
            for m in members:
                for v in sorted(m, key=_sort_key):
                    seen.setdefault(v, None)
            ground = tuple(seen)
        return cls(tuple(ground), members)

    def __len__(self):
        return len(self.members)

    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.ground)}

    def sort_key(self, member: frozenset):
        pos = self.position()
        return (len(member), sorted(pos[v] for v in member))

    def distinct(self) -> list[frozenset]:
        """Members with repeats removed, in canonical order."""
        return sorted(set(self.members), key=self.sort_key)

    def incidence_matrix(self):
        import numpy as np
        pos = self.position()
        a = np.zeros((len(self.members), len(self.ground)), dtype=np.int8)
        for i, m in enumerate(self.members):
            for v in m:
                a[i, pos[v]] = 1
        return a

    def is_connected(self) -> bool:
        """Nonempty members form exactly one block under shared vertices."""
        ms = [m for m in self.members if m]
        if not ms:
            return False
        reached = set(ms[0])
        pending = ms[1:]
        grew = True
        while grew:
            grew = False
            rest = []
            for m in pending:
                if m & reached:
                    reached |= m
                    grew = True
                else:
                    rest.append(m)
            pending = rest
        return not pending


def _sort_key(v):
    return (type(v).__name__, v) if isinstance(v, (int, str)) else (type(v).__name__, str(v))


def _check_size(h: Hypergraph) -> None:
    if len(h.members) > MAX_MEMBERS or len(h.ground) > MAX_GROUND:
        raise SizeLimitError(f"hypergraph with {len(h.ground)} vertices and {len(h.members)} "
                             f"members exceeds the limit ({MAX_GROUND}, {MAX_MEMBERS})")


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse ``p hyp <|V|> <k>`` followed by ``m v1 v2 ...`` lines (1-based ids)."""
    n_v = k = None
    members = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n_v is not None or members or len(parts) != 4 or parts[1] != "hyp":
                raise GraphFormatError(f"bad header {raw!r}", lineno)
            try:
                n_v, k = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"bad header {raw!r}", lineno) from None
            if n_v < 0 or k < 0:
                raise GraphFormatError("negative sizes in header", lineno)
        elif parts[0] == "m":
            if n_v is None:
                raise GraphFormatError("member line before the header", lineno)
            try:
                vs = [int(t) for t in parts[1:]]
            except ValueError:
                raise GraphFormatError(f"bad vertex id in {raw!r}", lineno) from None
            if any(not 1 <= v <= n_v for v in vs):
                raise GraphFormatError(f"vertex id out of range 1..{n_v}", lineno)
            if len(set(vs)) != len(vs):
                raise GraphFormatError("repeated vertex inside a member", lineno)
            members.append(frozenset(vs))
        else:
            raise GraphFormatError(f"unknown line type {parts[0]!r}", lineno)
    if n_v is None:
        raise GraphFormatError("missing 'p hyp' header")
    if len(members) != k:
        raise GraphFormatError(f"header announces {k} members, found {len(members)}")
    return Hypergraph(tuple(range(1, n_v + 1)), tuple(members))


def format_hypergraph(h: Hypergraph) -> str:
    pos = h.position()
    lines = [f"p hyp {len(h.ground)} {len(h.members)}"]
    for m in h.members:
        lines.append(" ".join(["m"] + [str(pos[v] + 1) for v in sorted(m, key=pos.get)]))
    return "\n".join(lines) + "\n"


# -- basic constructions ------------------------------------------------
def incidence_graph(h: Hypergraph) -> BipartiteGraph:
    """Ground vertices as X, members as Y, an edge for each containment."""
    pos = h.position()
    edges = [(pos[v], j) for j, m in enumerate(h.members) for v in m]
    return BipartiteGraph(len(h.ground), len(h.members), edges,
                          [str(v) for v in h.ground], [f"m{j + 1}" for j in range(len(h.members))])


def two_section(h: Hypergraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(h.ground)
    for m in h.members:
        g.add_edges_from(combinations(sorted(m, key=h.position().get), 2))
    return g


def intersection_closure(sets: Iterable[frozenset]) -> set[frozenset]:
    """All nonempty intersections of one or more of ``sets``."""
    base = {s for s in sets if s}
    closed = set(base)
    frontier = list(base)
    while frontier:
        fresh = []
        for s in frontier:
            for t in base:
                u = s & t
                if u and u not in closed:
                    closed.add(u)
                    fresh.append(u)
        frontier = fresh
    return closed


def maximal_sets(sets: Iterable[frozenset]) -> list[frozenset]:
    distinct = set(sets)
    return [s for s in distinct if not any(s < t for t in distinct)]


def closure_and_maximal(h: Hypergraph) -> tuple[Hypergraph, Hypergraph]:
    """The intersection closure (empty set dropped) and the clutter of maximal members."""
    closed = sorted(intersection_closure(h.members), key=h.sort_key)
    top = sorted(maximal_sets(h.members), key=h.sort_key)
    return Hypergraph(h.ground, tuple(closed)), Hypergraph(h.ground, tuple(top))


def is_laminar(sets: Iterable[frozenset]) -> bool:
    ss = sorted(set(sets), key=len)
    for i, s in enumerate(ss):
        for t in ss[i + 1:]:
            if s & t and not s <= t:
                return False
    return True


# -- acyclicity ---------------------------------------------------------
@dataclass(frozen=True)
class AcyclicityVerdict:
    kind: str
    witness: object = None

    @property
    def gamma_acyclic(self) -> bool:
        return self.kind == GAMMA_ACYCLIC

    @property
    def totally_balanced(self) -> bool:
        return self.kind != NEITHER


@dataclass(frozen=True)
class FCopy:
    """Rows ``(r1, r2, r3)`` and columns ``(c1, c2, c3)`` spanning a copy of F.

    Row ``r2`` contains all three columns, ``r1`` misses ``c2`` and ``r3``
    misses ``c1``.
    """

    rows: tuple[int, int, int]
    columns: tuple


def find_f_copy(h: Hypergraph) -> FCopy | None:
    """Scan member triples for a 3x3 submatrix equal to F up to permutation."""
    ms = h.members
    k = len(ms)
    for mid in range(k):
        rm = ms[mid]
        for r1 in range(k):
            if r1 == mid:
                continue
            for r3 in range(r1 + 1, k):
                if r3 == mid:
                    continue
                a, c = ms[r1], ms[r3]
                common = a & rm & c
                left = (a & rm) - c
                right = (c & rm) - a
                if common and left and right:
                    pick = lambda s: min(s, key=h.position().get)
                    return FCopy((r1, mid, r3), (pick(left), pick(right), pick(common)))
    return None


def classify_acyclicity(h: Hypergraph) -> AcyclicityVerdict:
    """Totally balanced means the incidence graph has no hole; gamma-acyclic
    additionally forbids a copy of F."""
    _check_size(h)
    hole = find_hole(incidence_graph(h))
    if hole is not None:
        return AcyclicityVerdict(NEITHER, hole)
    f = find_f_copy(h)
    if f is not None:
        return AcyclicityVerdict(TOTALLY_BALANCED_ONLY, f)
    return AcyclicityVerdict(GAMMA_ACYCLIC)


def describe_witness(h: Hypergraph, verdict: AcyclicityVerdict) -> str:
    w = verdict.witness
    if isinstance(w, Forbidden):
        return w.describe(incidence_graph(h))
    if isinstance(w, FCopy):
        rows = ",".join(f"m{r + 1}" for r in w.rows)
        cols = ",".join(str(c) for c in w.columns)
        return f"F copy on members {rows} and vertices {cols}"
    return ""


# -- Bachman diagrams -----------------------------------------------------
def cover_arcs(sets: Sequence[frozenset]) -> list[tuple[int, int]]:
    """Covering pairs of strict inclusion among distinct ``sets``."""
    arcs = []
    for i, s in enumerate(sets):
        ups = [j for j, t in enumerate(sets) if s < t]
        for j in ups:
            if not any(sets[l] < sets[j] for l in ups if l != j):
                arcs.append((i, j))
    return arcs


def _undirected_shape(n_nodes: int, arcs) -> tuple[bool, bool]:
    """(acyclic, connected) of the underlying undirected graph."""
    g = nx.Graph()
    g.add_nodes_from(range(n_nodes))
    g.add_edges_from(arcs)
    acyclic = nx.is_forest(g) if n_nodes else True
    connected = n_nodes > 0 and nx.is_connected(g)
    return acyclic, connected


@dataclass(frozen=True)
class BachmanDiagram:
    nodes: tuple[frozenset, ...]
    arcs: tuple[tuple[int, int], ...]
    is_tree: bool
    is_forest: bool


def bachman(h: Hypergraph) -> BachmanDiagram:
    """Transitive reduction of the nonempty intersection closure.

    ``is_tree`` asks for a connected acyclic diagram; ``is_forest`` drops
    connectivity, which is what a hypergraph with several blocks can reach
    once the empty intersection is left out.
    """
    _check_size(h)
    closed, _ = closure_and_maximal(h)
    nodes = closed.members
    arcs = cover_arcs(nodes)
    acyclic, connected = _undirected_shape(len(nodes), arcs)
    return BachmanDiagram(nodes, tuple(arcs), acyclic and connected, acyclic)


# -- clique structures on general graphs -----------------------------------
def _check_graph(g: nx.Graph) -> None:
    if g.number_of_nodes() > MAX_GRAPH:
        raise SizeLimitError(f"graph with {g.number_of_nodes()} vertices exceeds the limit {MAX_GRAPH}")


def maximal_cliques(g: nx.Graph) -> Hypergraph:
    _check_graph(g)
    cliques = [frozenset(c) for c in nx.find_cliques(g)]
    h = Hypergraph(tuple(g.nodes), ())
    return Hypergraph(h.ground, tuple(sorted(cliques, key=h.sort_key)))


@dataclass(frozen=True)
class CliqueLattice:
    """Nonempty clique intersections plus the empty set and the full vertex set."""

    ground: frozenset
    elements: frozenset

    @classmethod
    def from_graph(cls, g: nx.Graph) -> "CliqueLattice":
        k = maximal_cliques(g)
        v = frozenset(g.nodes)
        return cls(v, frozenset(intersection_closure(k.members) | {frozenset(), v}))


def clique_intersections(k: Hypergraph) -> set[frozenset]:
    """Nonempty intersections of two or more distinct maximal cliques."""
    return intersection_closure(k.members) - set(k.members)


def is_ptolemaic(g: nx.Graph) -> bool:
    """Decide two ways and insist they agree.

    * the clique hypergraph is gamma-acyclic (hole and F-pattern scan);
    * the inclusion order of the nonempty clique intersections is tree-like,
      i.e. its cover graph is a forest (a tree per connected component).

    Set-wise laminarity is too strong for the second test: on the path
    a-b-c the cliques {a,b} and {b,c} overlap without nesting.
    """
    k = maximal_cliques(g)
    by_gamma = classify_acyclicity(k).gamma_acyclic
    by_shape = bachman(k).is_forest
    if by_gamma != by_shape:
        raise AssertionError(f"Ptolemaic criteria disagree: gamma={by_gamma}, tree-like={by_shape}")
    return by_gamma


def lambda_map(g: nx.Graph) -> BipartiteGraph:
    """Vertex-clique incidence graph of a Ptolemaic graph (always BDH)."""
    if not is_ptolemaic(g):
        raise NotBDHError("input graph is not Ptolemaic")
    out = incidence_graph(maximal_cliques(g))
    for comp in out.components():
        sub = out.subgraph(comp)
        if not is_bdh(sub):  # pragma: no cover - would contradict Ptolemaic => BDH incidence
            raise AssertionError("vertex-clique graph of a Ptolemaic graph is not BDH")
    return out


# -- maps from BDH graphs -------------------------------------------------
def neighborhood_hypergraph(g: BipartiteGraph, ground_side: str) -> Hypergraph:
    """Neighborhoods of the other class as a hypergraph on ``ground_side``."""
    from_side = X if ground_side == Y else Y
    ground = tuple(g.vertices(ground_side))
    members = tuple(frozenset(g.neighbors(v)) for v in g.vertices(from_side))
    return Hypergraph(ground, members)


def inessential_vertices(g: BipartiteGraph, side: str) -> set[Vertex]:
    """Vertices of ``side`` whose neighborhood lies outside the intersection
    closure of the maximal neighborhoods of ``side``.

    These are the vertices whose deletion contracts arcs of the Hasse
    digraph without changing the shape of the lattice.
    """
    nbhd = {v: frozenset(g.neighbors(v)) for v in g.vertices(side)}
    closure = intersection_closure(maximal_sets(nbhd.values()))
    return {v for v, s in nbhd.items() if s not in closure}


@dataclass(frozen=True)
class MuImages:
    mu1: nx.Graph
    mu2: nx.Graph
    i_x: frozenset = field(default_factory=frozenset)
    i_y: frozenset = field(default_factory=frozenset)


def mu_maps(g: BipartiteGraph) -> MuImages:
    """2-sections of both neighborhood hypergraphs plus the two inessential sets."""
    if not g.is_connected() or not is_bdh(g):
        raise NotBDHError("mu maps need a connected BDH graph")
    mu1 = two_section(neighborhood_hypergraph(g, Y))
    mu2 = two_section(neighborhood_hypergraph(g, X))
    for img in (mu1, mu2):
        if not is_ptolemaic(img):  # pragma: no cover - would contradict BDH => Ptolemaic 2-sections
            raise AssertionError("2-section of a BDH neighborhood hypergraph is not Ptolemaic")
    return MuImages(mu1, mu2, frozenset(inessential_vertices(g, X)),
                    frozenset(inessential_vertices(g, Y)))


def _shore_family(g: BipartiteGraph, side: str) -> set[frozenset]:
    """Shores on ``side`` of all maximal bicliques of ``g`` plus the empty and full shore."""
    full = frozenset(g.vertices(side))
    fam = {frozenset(), full}
    for comp in g.components():
        sub_vertices = set(comp)
        sub = g.subgraph(comp)
        xs = [v for v in g.vertices(X) if v in sub_vertices]
        ys = [v for v in g.vertices(Y) if v in sub_vertices]
        if not xs or not ys:
            continue
        for b in maximal_bicliques(sub):
            shore = [xs[i] for i in b.x_shore] if side == X else [ys[j] for j in b.y_shore]
            fam.add(frozenset(shore))
    return fam


def _clique_family(g: nx.Graph) -> set[frozenset]:
    return set(CliqueLattice.from_graph(g).elements)


def check_bridge(g: BipartiteGraph) -> bool:
    """Check the lattice isomorphisms by shore-family identity, for both maps.

    * x-shores of the vertex-clique graph of ``mu(g)`` equal the clique
      lattice elements of ``mu(g)``;
    * y-shores of ``g - I_X`` equal the clique lattice elements of
      ``mu1(g)`` (and dually for ``mu2`` with ``I_Y``).
    """
    if g.n_vertices > MAX_GRAPH:
        raise SizeLimitError(f"bridge check limited to {MAX_GRAPH} vertices")
    images = mu_maps(g)
    ok = True
    for mu, drop, keep_side in ((images.mu1, images.i_x, Y), (images.mu2, images.i_y, X)):
        cliques = _clique_family(mu)
        lam = lambda_map(mu)
        # incidence graphs index their X class in the node order of ``mu``
        nodes = tuple(mu.nodes)
        lam_family = {frozenset(nodes[v.index] for v in f) for f in _shore_family(lam, X)}
        ok &= lam_family == cliques
        # deleting vertices of one class leaves the indices of the other untouched
        ok &= _shore_family(g.remove(drop), keep_side) == cliques
    return bool(ok)
