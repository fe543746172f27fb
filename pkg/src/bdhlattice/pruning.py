"""Recognition of bipartite distance-hereditary graphs by pendant/twin pruning,
and a random generator driven by the same construction."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .exceptions import DisconnectedGraphError, GraphFormatError, InvalidSequenceError
from .graph import X, Y, BipartiteGraph, Forbidden, Vertex, find_forbidden, iter_bits, other_side

INITIAL = "initial"
PENDANT = "pendant"
TWIN = "twin"

_CODES = {INITIAL: "I", PENDANT: "P", TWIN: "T"}
_KINDS = {v: k for k, v in _CODES.items()}


@dataclass(frozen=True)
class PruningStep:
    kind: str
    vertex: Vertex
    anchor: Vertex | None = None

    def __str__(self):
        if self.kind == INITIAL:
            return f"I {self.vertex}"
        return f"{_CODES[self.kind]} {self.vertex} {self.anchor}"


@dataclass(frozen=True)
class PruningSequence:
    """Construction order of a BDH graph: one initial vertex, then pendants and twins."""

    steps: tuple[PruningStep, ...]

    def __iter__(self) -> Iterator[PruningStep]:
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, k):
        return self.steps[k]

    def class_sizes(self) -> tuple[int, int]:
        n_x = sum(1 for s in self.steps if s.vertex.side == X)
        return n_x, len(self.steps) - n_x

    def validate(self) -> None:
        """Check the sequence is structurally well formed (not tied to a graph)."""
        if not self.steps or self.steps[0].kind != INITIAL:
            raise InvalidSequenceError("sequence must start with exactly one initial step")
        n_x, n_y = self.class_sizes()
        seen: set[Vertex] = set()
        for k, step in enumerate(self.steps):
            v = step.vertex
            if v.side not in (X, Y) or not 0 <= v.index < (n_x if v.side == X else n_y):
                raise InvalidSequenceError(f"step {k}: vertex {v} outside dense index range")
            if v in seen:
                raise InvalidSequenceError(f"step {k}: vertex {v} inserted twice")
            if k > 0:
                if step.kind == INITIAL:
                    raise InvalidSequenceError(f"step {k}: second initial step")
                if step.anchor not in seen:
                    raise InvalidSequenceError(f"step {k}: anchor {step.anchor} not yet present")
                same = step.anchor.side == v.side
                if step.kind == PENDANT and same:
                    raise InvalidSequenceError(f"step {k}: pendant anchor must be in the other class")
                if step.kind == TWIN and not same:
                    raise InvalidSequenceError(f"step {k}: twin anchor must be in the same class")
            seen.add(v)

    def replay(self) -> BipartiteGraph:
        """Rebuild the graph the sequence describes (vertex ids are kept)."""
        self.validate()
        n_x, n_y = self.class_sizes()
        nbrs: dict[Vertex, set[Vertex]] = {}
        for step in self.steps:
            v = step.vertex
            if step.kind == INITIAL:
                nbrs[v] = set()
            elif step.kind == PENDANT:
                nbrs[v] = {step.anchor}
                nbrs[step.anchor].add(v)
            else:
                nbrs[v] = set(nbrs[step.anchor])
                for u in nbrs[v]:
                    nbrs[u].add(v)
        edges = [(v.index, u.index) for v, nb in nbrs.items() if v.side == X for u in nb]
        return BipartiteGraph(n_x, n_y, edges)

    def to_text(self) -> str:
        return "".join(f"{s}\n" for s in self.steps)

    @classmethod
    def from_text(cls, text: str) -> "PruningSequence":
        steps = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            parts = raw.split()
            if not parts or parts[0] == "c":
                continue
            kind = _KINDS.get(parts[0])
            if kind is None or len(parts) != (2 if kind == INITIAL else 3):
                raise GraphFormatError(f"bad sequence line {raw!r}", lineno)
            try:
                vs = [_parse_vertex(t) for t in parts[1:]]
            except ValueError:
                raise GraphFormatError(f"bad vertex token in {raw!r}", lineno) from None
            steps.append(PruningStep(kind, vs[0], vs[1] if len(vs) > 1 else None))
        seq = cls(tuple(steps))
        seq.validate()
        return seq


def _parse_vertex(token: str) -> Vertex:
    side = token[:1].upper()
    if side not in (X, Y):
        raise ValueError(token)
    k = int(token[1:])
    if k < 1:
        raise ValueError(token)
    return Vertex(side, k - 1)


def pruning_sequence(g: BipartiteGraph) -> PruningSequence | None:
    """Eliminate pendant vertices and twins until one vertex is left.

    Returns the construction order (reverse of elimination) when the graph
    reduces to a single vertex, otherwise ``None``.  Pendants are preferred
    over twins; ties go to the smallest vertex id.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("pruning requires a connected graph")
    if "pruning" not in g.memo:
        g.memo["pruning"] = _prune(g)
    return g.memo["pruning"]


def _prune(g: BipartiteGraph) -> PruningSequence | None:
    n_x = g.n_x
    gm = g.global_masks()
    alive = (1 << g.n_vertices) - 1
    eliminated: list[PruningStep] = []
    while alive & (alive - 1):
        step = None
        for v in iter_bits(alive):
            nb = gm[v] & alive
            if nb and nb & (nb - 1) == 0:
                step = PruningStep(PENDANT, g.from_gid(v), g.from_gid(nb.bit_length() - 1))
                break
        if step is None:
            first: dict[tuple[bool, int], int] = {}
            for v in iter_bits(alive):
                key = (v < n_x, gm[v] & alive)
                if key in first:
                    # v is the smallest vertex that has a smaller twin; drop the smaller one
                    step = PruningStep(TWIN, g.from_gid(first[key]), g.from_gid(v))
                    break
                first[key] = v
        if step is None:
            return None
        eliminated.append(step)
        alive &= ~(1 << g.gid(step.vertex))
    root = g.from_gid(alive.bit_length() - 1)
    return PruningSequence((PruningStep(INITIAL, root),) + tuple(reversed(eliminated)))


@dataclass(frozen=True)
class BDHVerdict:
    is_bdh: bool
    sequence: PruningSequence | None = None
    certificate: Forbidden | None = None

    def __bool__(self):
        return self.is_bdh


def is_bdh(g: BipartiteGraph) -> BDHVerdict:
    """Decide membership; yes-verdicts carry a sequence, no-verdicts a domino or hole."""
    seq = pruning_sequence(g)
    if seq is not None:
        return BDHVerdict(True, sequence=seq)
    cert = find_forbidden(g)
    if cert is None:  # pragma: no cover - would contradict the pendant/twin characterization
        raise AssertionError("pruning failed but no forbidden subgraph was found")
    return BDHVerdict(False, certificate=cert)


def generate_bdh(n: int, seed: int, pendant_bias: float = 0.5,
                 no_universal: bool = False) -> tuple[BipartiteGraph, PruningSequence]:
    """Random connected BDH graph on ``n`` vertices with its construction sequence.

    Each step picks a uniformly random anchor and adds a pendant neighbor with
    probability ``pendant_bias``, else a twin.  A twin of the lone initial
    vertex is forced to be a pendant.

    With ``no_universal`` the final graph has no universal vertex.  Steps are
    sampled freely while enough steps remain; once the remaining budget is
    within two of the current number of universal vertices, each step is
    resampled among the candidates that leave the fewest universal vertices.
    A pendant into the class opposite a universal vertex always removes at
    least one, and no step can create one in a graph that has none.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= pendant_bias <= 1.0:
        raise ValueError("pendant_bias must lie in [0, 1]")
    if no_universal and 2 <= n <= 5:
        raise ValueError("every connected bipartite graph on 2 to 5 vertices has a universal vertex")
    rng = random.Random(seed)
    side = [X]
    adj: list[set[int]] = [set()]
    raw_steps: list[tuple[str, int, int]] = []
    sizes = {X: 1, Y: 0}
    while len(side) < n:
        k = len(side)
        anchor = rng.randrange(k)
        pendant = k == 1 or rng.random() < pendant_bias
        if no_universal:
            current = _count_universal(side, adj, sizes)
            if current and n - k <= current + 2:
                pendant, anchor = _steer(rng, side, adj, sizes)
        s = other_side(side[anchor]) if pendant else side[anchor]
        nb = {anchor} if pendant else set(adj[anchor])
        side.append(s)
        adj.append(nb)
        for u in nb:
            adj[u].add(k)
        sizes[s] += 1
        raw_steps.append((PENDANT if pendant else TWIN, k, anchor))
    if no_universal and n > 1 and _count_universal(side, adj, sizes):  # pragma: no cover
        raise AssertionError("steering failed to remove every universal vertex")
    index = {X: 0, Y: 0}
    ids = []
    for s in side:
        ids.append(Vertex(s, index[s]))
        index[s] += 1
    steps = [PruningStep(INITIAL, ids[0])]
    steps += [PruningStep(kind, ids[v], ids[a]) for kind, v, a in raw_steps]
    edges = [(ids[v].index, ids[u].index) for v in range(n) if side[v] == X for u in adj[v]]
    g = BipartiteGraph(index[X], index[Y], edges)
    return g, PruningSequence(tuple(steps))


def _count_universal(side, adj, sizes, extra=None) -> int:
    """Universal vertices, optionally after adding a vertex ``extra = (side, nbrs)``."""
    sizes = dict(sizes)
    new_nb: set[int] = set()
    count = 0
    if extra is not None:
        new_side, new_nb = extra
        sizes[new_side] += 1
        opp = sizes[other_side(new_side)]
        count += bool(opp) and len(new_nb) == opp
    for v, nb in enumerate(adj):
        opp = sizes[other_side(side[v])]
        count += bool(opp) and len(nb) + (v in new_nb) == opp
    return count


def _steer(rng, side, adj, sizes) -> tuple[bool, int]:
    best, choices = None, []
    for anchor in range(len(side)):
        for pendant in (True, False):
            if not pendant and len(side) == 1:
                continue
            s = other_side(side[anchor]) if pendant else side[anchor]
            nb = {anchor} if pendant else adj[anchor]
            u = _count_universal(side, adj, sizes, (s, nb))
            if best is None or u < best:
                best, choices = u, []
            if u == best:
                choices.append((pendant, anchor))
    return rng.choice(choices)
