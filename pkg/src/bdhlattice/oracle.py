"""Brute-force reference implementations.

Nothing here shares code with the fast paths; everything works on plain
Python sets or int bit vectors and favours obviousness over speed.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Sequence

from .exceptions import SizeLimitError
from .graph import X, BipartiteGraph, Vertex
from .lattice import Biclique

MAX_SHORE = 24
MAX_POSET = 10
MAX_DH = 14


def brute_maximal_bicliques(g: BipartiteGraph) -> list[Biclique]:
    """Close the X-neighborhoods under intersection, then apply polarity to each.

    Every maximal biclique with nonempty shores has a y-shore equal to the
    intersection of the neighborhoods of its x-shore, so the closure family
    reaches all of them.  Sets are Python ints used as bit vectors.
    """
    if g.n_x > MAX_SHORE:
        raise SizeLimitError(f"|X| = {g.n_x} exceeds the oracle limit {MAX_SHORE}")
    rows = [sum(1 << j for j in nb) for nb in g.adjacency(X)]
    family = {r for r in rows if r}
    frontier = list(family)
    while frontier:
        fresh = []
        for s in frontier:
            for r in rows:
                u = s & r
                if u and u not in family:
                    family.add(u)
                    fresh.append(u)
        frontier = fresh
    out = []
    for y0 in family:
        xs = [x for x in range(g.n_x) if rows[x] & y0 == y0]
        ys = (1 << g.n_y) - 1
        for x in xs:
            ys &= rows[x]
        # y0 is an intersection of rows, so closing it again must not move it
        assert ys == y0
        out.append(Biclique(frozenset(xs), frozenset(j for j in range(g.n_y) if ys >> j & 1)))
    return sorted(out, key=lambda b: b.key)


def brute_intersection(g: BipartiteGraph, subset: Iterable[Vertex]) -> set[Vertex]:
    """Intersection of neighborhoods by folding sorted lists."""
    subset = list(subset)
    if not subset:
        raise ValueError("empty subset")
    acc = list(g.neighbors(subset[0]))
    for v in subset[1:]:
        other = g.neighbors(v)
        merged, i, j = [], 0, 0
        while i < len(acc) and j < len(other):
            if acc[i] == other[j]:
                merged.append(acc[i])
                i += 1
                j += 1
            elif acc[i] < other[j]:
                i += 1
            else:
                j += 1
        acc = merged
    return set(acc)


def brute_closure(g: BipartiteGraph, subset: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Double polarity of an x-index set: (closed x-set, common y-set)."""
    nx_sets = [frozenset(nb) for nb in g.adjacency(X)]
    ys = frozenset(range(g.n_y))
    for x in subset:
        ys &= nx_sets[x]
    xs = frozenset(x for x in range(g.n_x) if ys <= nx_sets[x])
    return xs, ys


def find_realizer(leq: Sequence[Sequence[bool]], d: int) -> list[list[int]] | None:
    """Search for ``d`` linear extensions whose intersection is the order ``leq``.

    Each incomparable ordered pair (a, b) needs one extension placing b
    below a.  Pairs are assigned to extensions by backtracking; an
    assignment is feasible iff the order plus the reversed pairs of each
    class stays acyclic.  Returns the extensions, or None.
    """
    k = len(leq)
    if k > MAX_POSET:
        raise SizeLimitError(f"poset of {k} elements exceeds the oracle limit {MAX_POSET}")
    if d < 1:
        raise ValueError("d must be positive")
    for a in range(k):
        if not leq[a][a]:
            raise ValueError("relation is not reflexive")
        for b in range(k):
            if a != b and leq[a][b] and leq[b][a]:
                raise ValueError("relation is not antisymmetric")
            if leq[a][b] and any(leq[b][c] and not leq[a][c] for c in range(k)):
                raise ValueError("relation is not transitive")
    # up[v]: bitmask of elements >= v in one extension-in-progress
    base_up = [sum(1 << b for b in range(k) if leq[a][b]) for a in range(k)]
    pairs = [(a, b) for a in range(k) for b in range(k)
             if a != b and not leq[a][b] and not leq[b][a]]
    classes: list[list[int]] = []

    def place(up, lo, hi):
        # force lo < hi and close transitively
        new = list(up)
        above = up[hi]
        for u in range(k):
            if up[u] >> lo & 1:
                new[u] |= above
        return new

    def solve(idx):
        while idx < len(pairs):
            a, b = pairs[idx]
            if any(up[b] >> a & 1 for up in classes):
                idx += 1
                continue
            break
        else:
            return True
        a, b = pairs[idx]
        for c, up in enumerate(classes):
            if up[a] >> b & 1:
                continue
            classes[c] = place(up, b, a)
            if solve(idx + 1):
                return True
            classes[c] = up
        if len(classes) < d:
            classes.append(place(base_up, b, a))
            if solve(idx + 1):
                return True
            classes.pop()
        return False

    if not pairs:
        classes.append(base_up)
    elif not solve(0):
        return None
    out = []
    for up in classes:
        # number of elements below v orders any linear extension of a total closure
        rank = [sum(1 for u in range(k) if up[u] >> v & 1) for v in range(k)]
        out.append(sorted(range(k), key=lambda v: rank[v]))
    while len(out) < d:
        out.append(out[0])
    return out


def brute_order_dimension_leq(leq: Sequence[Sequence[bool]], d: int) -> bool:
    """True iff the poset has a realizer of at most ``d`` linear extensions."""
    return find_realizer(leq, d) is not None


def _bfs(adj: dict[int, set[int]], src: int, allowed: frozenset[int]) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w in allowed and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _plain_adjacency(g: BipartiteGraph) -> dict[int, set[int]]:
    n_x = g.n_x
    adj = {v: set() for v in range(g.n_vertices)}
    for i, j in g.edges():
        adj[i].add(n_x + j)
        adj[n_x + j].add(i)
    return adj


def brute_distance_hereditary(g: BipartiteGraph) -> bool:
    """Every connected induced subgraph keeps all pairwise distances of ``g``."""
    n = g.n_vertices
    if n > MAX_DH:
        raise SizeLimitError(f"n = {n} exceeds the oracle limit {MAX_DH}")
    adj = _plain_adjacency(g)
    everything = frozenset(range(n))
    full = {v: _bfs(adj, v, everything) for v in range(n)}
    for size in range(3, n):
        for keep in combinations(range(n), size):
            allowed = frozenset(keep)
            first = _bfs(adj, keep[0], allowed)
            if len(first) != size:
                continue
            for v in keep:
                local = first if v == keep[0] else _bfs(adj, v, allowed)
                if any(local[w] != full[v][w] for w in keep):
                    return False
    return True


def brute_has_domino(g: BipartiteGraph) -> bool:
    """Some 3+3 vertex set induces exactly the domino."""
    adj = _plain_adjacency(g)
    xs = range(g.n_x)
    ys = range(g.n_x, g.n_vertices)
    for tx in combinations(xs, 3):
        for ty in combinations(ys, 3):
            sub = {v: adj[v] & set(tx + ty) for v in tx + ty}
            degs = sorted(len(s) for s in sub.values())
            if degs != [2, 2, 2, 2, 3, 3]:
                continue
            hubs = [v for v, s in sub.items() if len(s) == 3]
            # the two degree-3 vertices are adjacent; the rest form a path through them
            if hubs[1] in sub[hubs[0]] and _connected(sub):
                return True
    return False


def brute_has_hole(g: BipartiteGraph) -> bool:
    """Some vertex set of size >= 6 induces a cycle."""
    adj = _plain_adjacency(g)
    n = g.n_vertices
    for size in range(6, n + 1, 2):
        for keep in combinations(range(n), size):
            ks = set(keep)
            sub = {v: adj[v] & ks for v in keep}
            if all(len(s) == 2 for s in sub.values()) and _connected(sub):
                return True
    return False


def _connected(sub: dict[int, set[int]]) -> bool:
    start = next(iter(sub))
    seen = {start}
    stack = [start]
    while stack:
        for w in sub[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(sub)


def brute_maximal_cliques(vertices: Sequence, edges: Iterable[tuple]) -> list[frozenset]:
    """Maximal cliques of a small general graph by subset enumeration."""
    vertices = list(vertices)
    if len(vertices) > 16:
        raise SizeLimitError("too many vertices for subset enumeration")
    adj = {v: set() for v in vertices}
    for u, w in edges:
        adj[u].add(w)
        adj[w].add(u)
    cliques = []
    for size in range(len(vertices), 0, -1):
        for cand in combinations(vertices, size):
            cs = frozenset(cand)
            if any(cs <= c for c in cliques):
                continue
            if all(w in adj[u] for u, w in combinations(cand, 2)):
                cliques.append(cs)
    return cliques


def brute_ptolemaic(vertices: Sequence, edges: Iterable[tuple]) -> bool:
    """Chordal and distance-hereditary, both by enumerating vertex subsets.

    A general graph is Ptolemaic iff it has no induced cycle on four or more
    vertices and every connected induced subgraph keeps all distances.
    """
    vertices = list(vertices)
    n = len(vertices)
    if n > MAX_DH:
        raise SizeLimitError(f"n = {n} exceeds the oracle limit {MAX_DH}")
    pos = {v: k for k, v in enumerate(vertices)}
    adj = {k: set() for k in range(n)}
    for u, w in edges:
        adj[pos[u]].add(pos[w])
        adj[pos[w]].add(pos[u])
    everything = frozenset(range(n))
    full = {v: _bfs(adj, v, everything) for v in range(n)}
    for size in range(3, n + 1):
        for keep in combinations(range(n), size):
            ks = set(keep)
            sub = {v: adj[v] & ks for v in keep}
            if not _connected(sub):
                continue
            if size >= 4 and all(len(s) == 2 for s in sub.values()):
                return False
            allowed = frozenset(keep)
            for v in keep:
                local = _bfs(adj, v, allowed)
                if any(local[w] != full[v][w] for w in keep):
                    return False
    return True
