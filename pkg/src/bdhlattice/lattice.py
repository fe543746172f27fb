"""Maximal bicliques, the Galois lattice, its Hasse digraph and a
three-order realizer for BDH graphs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from .exceptions import DisconnectedGraphError, NotBDHError, UniversalVertexError
from .graph import X, Y, BipartiteGraph, iter_bits, universal_vertices
from .pruning import pruning_sequence

if TYPE_CHECKING:
    from .encoding import ArborescenceEncoding

LESS = "less"
GREATER = "greater"
EQUAL = "equal"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Biclique:
    """A biclique given by its two shores (index sets into X and Y)."""

    x_shore: frozenset[int]
    y_shore: frozenset[int]
    key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "key", (tuple(sorted(self.x_shore)), tuple(sorted(self.y_shore))))

    @classmethod
    def from_masks(cls, xm: int, ym: int) -> "Biclique":
        return cls(frozenset(iter_bits(xm)), frozenset(iter_bits(ym)))

    def swap(self) -> "Biclique":
        return Biclique(self.y_shore, self.x_shore)

    def format(self, g: BipartiteGraph | None = None) -> str:
        if g is None:
            xs = [f"x{i + 1}" for i in sorted(self.x_shore)]
            ys = [f"y{j + 1}" for j in sorted(self.y_shore)]
        else:
            xs = [g.x_labels[i] for i in sorted(self.x_shore)]
            ys = [g.y_labels[j] for j in sorted(self.y_shore)]
        return "{" + ",".join(xs) + "}|{" + ",".join(ys) + "}"


def _check_lattice_input(g: BipartiteGraph, strict: bool) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("lattice construction requires a connected graph")
    uv = universal_vertices(g) if strict else None
    if uv:
        raise UniversalVertexError("universal vertices present: "
                                   + ", ".join(g.label(v) for v in sorted(uv)))


def _f_family_bicliques(g: BipartiteGraph) -> list[Biclique]:
    # y-shores are N(x) and N(x) & N(x'); close each to its x-shore
    xm = g.masks(X)
    ym = g.masks(Y)
    shores = set(xm)
    for i in range(len(xm)):
        for k in range(i + 1, len(xm)):
            common = xm[i] & xm[k]
            if common:
                shores.add(common)
    out = []
    full_x = (1 << g.n_x) - 1
    for ys in shores:
        if not ys:
            continue
        xs = full_x
        for j in iter_bits(ys):
            xs &= ym[j]
        out.append(Biclique.from_masks(xs, ys))
    return out


def maximal_bicliques(g: BipartiteGraph, strict: bool = False) -> list[Biclique]:
    """All maximal bicliques of a connected graph, sorted by x-shore.

    BDH inputs use the pairwise-intersection family of neighborhoods; other
    graphs fall back to the exhaustive oracle.  Universal vertices are
    tolerated (the domino has two) unless ``strict`` is set.
    """
    _check_lattice_input(g, strict)
    if pruning_sequence(g) is not None:
        out = _f_family_bicliques(g)
    else:
        from .oracle import brute_maximal_bicliques
        out = brute_maximal_bicliques(g)
    return sorted(out, key=lambda b: b.key)


def compare(b1: Biclique, b2: Biclique) -> str:
    """Order two bicliques by x-shore inclusion and y-shore reverse inclusion.

    For maximal bicliques either test alone decides the order.  Both are
    checked so the dummy top ``(X, {})`` stays above a maximal biclique whose
    x-shore is all of X.
    """
    if b1 == b2:
        return EQUAL
    if leq(b1, b2):
        return LESS
    if leq(b2, b1):
        return GREATER
    return INCOMPARABLE


def leq(b1: Biclique, b2: Biclique) -> bool:
    return b1.x_shore <= b2.x_shore and b1.y_shore >= b2.y_shore


@dataclass(frozen=True)
class GaloisLattice:
    """Maximal bicliques of a graph plus the dummy bottom and top elements."""

    bicliques: tuple[Biclique, ...]
    bottom: Biclique
    top: Biclique

    @classmethod
    def from_graph(cls, g: BipartiteGraph, strict: bool = False) -> "GaloisLattice":
        return cls.from_bicliques(maximal_bicliques(g, strict), g.n_x, g.n_y)

    @classmethod
    def from_bicliques(cls, bicliques: Sequence[Biclique], n_x: int, n_y: int) -> "GaloisLattice":
        return cls(tuple(bicliques), Biclique(frozenset(), frozenset(range(n_y))),
                   Biclique(frozenset(range(n_x)), frozenset()))

    @property
    def elements(self) -> tuple[Biclique, ...]:
        return (self.bottom,) + self.bicliques + (self.top,)

    def __len__(self):
        return len(self.bicliques)

    def meet_join(self, b1: Biclique, b2: Biclique) -> tuple[Biclique, Biclique]:
        return meet_join(self, b1, b2)


def meet_join(lattice: GaloisLattice, b1: Biclique, b2: Biclique) -> tuple[Biclique, Biclique]:
    """Greatest lower and least upper bound, found by scanning every element."""
    elems = lattice.elements
    lower = [b for b in elems if leq(b, b1) and leq(b, b2)]
    upper = [b for b in elems if leq(b1, b) and leq(b2, b)]
    meet = [m for m in lower if all(leq(b, m) for b in lower)]
    join = [j for j in upper if all(leq(j, b) for b in upper)]
    if not meet or not join:
        raise ValueError("bicliques do not belong to one lattice")
    return meet[0], join[0]


@dataclass(frozen=True)
class HasseDigraph:
    """Covering relation of the maximal bicliques; arc ``(u, v)`` means v covers u."""

    nodes: tuple[Biclique, ...]
    arcs: tuple[tuple[int, int], ...]

    def in_degree(self, v: int) -> int:
        return sum(1 for _, t in self.arcs if t == v)

    def out_degree(self, v: int) -> int:
        return sum(1 for s, _ in self.arcs if s == v)

    def sources(self) -> list[int]:
        return [v for v in range(len(self.nodes)) if self.in_degree(v) == 0]

    def sinks(self) -> list[int]:
        return [v for v in range(len(self.nodes)) if self.out_degree(v) == 0]

    def flow_nodes(self) -> list[int]:
        return [v for v in range(len(self.nodes))
                if self.in_degree(v) > 0 and self.out_degree(v) > 0]

    def index(self, b: Biclique) -> int:
        return self.nodes.index(b)

    def to_dot(self, g: BipartiteGraph | None = None) -> str:
        lines = ["digraph H {"]
        for k, b in enumerate(self.nodes):
            lines.append(f'  n{k} [label="{b.format(g)}"];')
        for s, t in self.arcs:
            lines.append(f"  n{s} -> n{t};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def hasse_from_bicliques(bicliques: Sequence[Biclique]) -> HasseDigraph:
    """Transitive reduction of x-shore inclusion among ``bicliques``."""
    nodes = tuple(sorted(bicliques, key=lambda b: b.key))
    masks = [sum(1 << i for i in b.x_shore) for b in nodes]
    by_size = sorted(range(len(nodes)), key=lambda j: len(nodes[j].x_shore))
    arcs = []
    for i, mi in enumerate(masks):
        # strict supersets in size order; a superset is a cover iff no smaller cover sits inside it
        covers: list[int] = []
        for j in by_size:
            mj = masks[j]
            if mj == mi or mj & mi != mi:
                continue
            for c in covers:
                if masks[c] & mj == masks[c]:
                    break
            else:
                covers.append(j)
        arcs.extend((i, j) for j in covers)
    return HasseDigraph(nodes, tuple(sorted(arcs)))


def hasse(g: BipartiteGraph, strict: bool = False) -> HasseDigraph:
    """Hasse digraph of the maximal bicliques of ``g`` (bottom and top excluded)."""
    return hasse_from_bicliques(maximal_bicliques(g, strict))


def is_tree_shaped(h: HasseDigraph) -> bool:
    """True iff the underlying undirected graph is connected and acyclic."""
    k = len(h.nodes)
    if k == 0 or len(h.arcs) != k - 1:
        return False
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s, t in h.arcs:
        rs, rt = find(s), find(t)
        if rs == rt:
            return False
        parent[rs] = rt
    return True


def build_realizer(lattice: GaloisLattice, enc: "ArborescenceEncoding",
                   full: bool = False) -> tuple[list[Biclique], list[Biclique], list[Biclique]]:
    """Three linear extensions of the biclique order whose intersection is the order.

    Each y-shore is a directed path of the Y-arc arborescence.  A path is
    mapped to its deepest arc ``e`` and the depth ``d`` of its first arc;
    path ``p`` contains path ``q`` iff ``e(q)`` is an ancestor-or-equal of
    ``e(p)`` and ``d(q) >= d(p)``.  The two preorders realize the ancestor
    order, the depth chain is the third coordinate.
    """
    if enc.arc_side != Y:
        raise ValueError("realizer needs the encoding whose arcs are Y vertices")
    depth = enc.depth
    keys = {}
    for b in lattice.bicliques:
        nodes = [enc.node_of[y] for y in b.y_shore]
        if not nodes:
            raise NotBDHError("empty y-shore in the proper part of the lattice")
        top = min(nodes, key=lambda u: depth[u])
        low = max(nodes, key=lambda u: depth[u])
        if sorted(depth[u] for u in nodes) != list(range(depth[top], depth[low] + 1)) \
                or not all(enc.node_leq(u, low) and enc.node_leq(top, u) for u in nodes):
            raise NotBDHError("a y-shore is not a directed path of the arborescence")
        keys[b] = (low, depth[top])
    if len(set(keys.values())) != len(keys):
        raise AssertionError("distinct maximal bicliques mapped to the same path")
    lr = enc.labels.pre_lr
    rl = enc.labels.pre_rl
    bs = list(lattice.bicliques)
    orders = (
        sorted(bs, key=lambda b: (-lr[keys[b][0]], keys[b][1], b.key)),
        sorted(bs, key=lambda b: (-rl[keys[b][0]], keys[b][1], b.key)),
        sorted(bs, key=lambda b: (keys[b][1], -lr[keys[b][0]], b.key)),
    )
    if full:
        return tuple([lattice.bottom] + o + [lattice.top] for o in orders)
    return orders


def realizer_intersection_leq(orders: Sequence[Sequence[Biclique]], b1: Biclique, b2: Biclique) -> bool:
    """``b1`` precedes-or-equals ``b2`` in every order."""
    return all(o.index(b1) <= o.index(b2) for o in orders)
