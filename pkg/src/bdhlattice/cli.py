"""Command-line front end.

Exit status: 0 success or a true verdict, 1 a false verdict, 2 usage error,
3 unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Callable, Sequence

from .encoding import ArborescenceEncoding, encode, verify_encoding
from .exceptions import BDHError
from .graph import X, Y, BipartiteGraph, find_forbidden, format_graph, other_side, parse_graph
from .hypergraph import bachman, classify_acyclicity, describe_witness, parse_hypergraph
from .lattice import GaloisLattice, build_realizer, hasse_from_bicliques, is_tree_shaped, leq, maximal_bicliques
from .oracle import (MAX_DH, MAX_SHORE, brute_distance_hereditary, brute_intersection,
                     brute_maximal_bicliques)
from .pruning import generate_bdh, is_bdh
from .query import (QueryStats, enumerate_via_F, intersection_empty, is_maximal_biclique,
                    neighbor_intersection, step_bound)
from .validation import check_side

OK, FALSE, USAGE, INPUT = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") or not text else text + "\n")


# -- subcommands ---------------------------------------------------------
def cmd_recognize(args) -> int:
    g = parse_graph(_read(args.file))
    verdict = is_bdh(g)
    if verdict:
        text = "YES\n" + (verdict.sequence.to_text() if args.sequence else "")
        payload = {"bdh": True, "sequence": [str(s) for s in verdict.sequence]}
        _emit(args, payload, text)
        return OK
    cert = verdict.certificate
    _emit(args, {"bdh": False, "kind": cert.kind, "vertices": [g.label(v) for v in cert.vertices]},
          f"NO: {cert.describe(g)}")
    return FALSE


def cmd_lattice(args) -> int:
    g = parse_graph(_read(args.file))
    bs = maximal_bicliques(g, strict=args.strict)
    h = hasse_from_bicliques(bs)
    tree = is_tree_shaped(h)
    verdict = "TREE" if tree else "NOT-TREE"
    if args.dot:
        text = h.to_dot(g) + verdict
    else:
        text = "".join(b.format(g) + "\n" for b in bs) + verdict
    payload = {
        "tree": tree,
        "bicliques": [b.format(g) for b in bs],
        "arcs": [list(a) for a in h.arcs],
        "sources": len(h.sources()),
        "sinks": len(h.sinks()),
    }
    _emit(args, payload, text)
    return OK if tree else FALSE


def cmd_encode(args) -> int:
    g = parse_graph(_read(args.file))
    enc = encode(g, arc_side=check_side(args.side))
    text = json.dumps(enc.to_dict(), sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def _parse_ids(tokens: Sequence[str]) -> list[int]:
    out = []
    for tok in tokens:
        for part in tok.split(","):
            part = part.strip()
            if not part:
                continue
            try:
                k = int(part)
            except ValueError:
                raise _InputError(f"bad vertex id {part!r}") from None
            if k < 1:
                raise _InputError("vertex ids are 1-based")
            out.append(k - 1)
    if not out:
        raise _InputError("no query vertices given")
    return out


def load_encoding(path: str) -> ArborescenceEncoding:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}: not JSON ({exc.msg})") from None
    return ArborescenceEncoding.from_dict(data)


def cmd_query(args) -> int:
    enc = load_encoding(args.encoding)
    if args.side is not None and check_side(args.side) != enc.interval_side:
        raise _InputError(f"encoding answers queries on side {enc.interval_side}, not {args.side}")
    ids = _parse_ids((args.set or []) + args.ids)
    bad = [k + 1 for k in ids if k >= enc.n_other]
    if bad:
        raise _InputError(f"vertex id {bad[0]} outside 1..{enc.n_other}")
    stats = QueryStats()
    side = enc.interval_side
    if args.empty:
        empty = intersection_empty(enc, ids, stats)
        footer = f"# comparisons={stats.comparisons} nodes={stats.nodes_visited}"
        _emit(args, {"empty": empty, "side": side, "comparisons": stats.comparisons,
                     "nodes_visited": stats.nodes_visited},
              ("EMPTY" if empty else "NONEMPTY") + ("\n" + footer if args.stats else ""))
        return OK if empty else FALSE
    common = sorted(v.index + 1 for v in neighbor_intersection(enc, ids, stats))
    footer = f"# comparisons={stats.comparisons} nodes={stats.nodes_visited}"
    lines = [str(k) for k in common] + ([footer] if args.stats else [])
    _emit(args, {"intersection": common, "side": other_side(side),
                 "comparisons": stats.comparisons, "nodes_visited": stats.nodes_visited},
          "\n".join(lines) + ("\n" if lines else ""))
    return OK


def cmd_gen(args) -> int:
    if args.n < 1:
        raise _InputError("--n must be positive")
    try:
        g, seq = generate_bdh(args.n, args.seed, args.bias, no_universal=args.no_universal)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    sys.stdout.write(format_graph(g))
    if args.sequence_out:
        with open(args.sequence_out, "w", encoding="utf-8") as fh:
            fh.write(seq.to_text())
    return OK


def cmd_hyper(args) -> int:
    h = parse_hypergraph(_read(args.file))
    if args.bachman:
        d = bachman(h)
        names = ["{" + ",".join(str(v) for v in sorted(s, key=h.position().get)) + "}"
                 for s in d.nodes]
        lines = [f"{names[s]} -> {names[t]}" for s, t in d.arcs]
        lines.append("TREE" if d.is_tree else "NOT-TREE")
        _emit(args, {"tree": d.is_tree, "forest": d.is_forest, "nodes": names,
                     "arcs": [list(a) for a in d.arcs]}, "\n".join(lines))
        return OK if d.is_tree else FALSE
    verdict = classify_acyclicity(h)
    witness = describe_witness(h, verdict)
    _emit(args, {"kind": verdict.kind, "witness": witness},
          verdict.kind + (f": {witness}" if witness else ""))
    return OK if verdict.gamma_acyclic else FALSE


def _bench_rows(sizes: Sequence[int], instances: int, queries: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    rows = []
    for n in sizes:
        worst = 0.0
        storage = 0.0
        build = 0.0
        steps = 0
        for _ in range(instances):
            g, seq = generate_bdh(n, rng.randrange(2 ** 31), rng.choice((0.3, 0.5, 0.7)))
            t0 = time.perf_counter()
            enc = encode(g, seq, arc_side=Y, validate=False)
            build += time.perf_counter() - t0
            storage = max(storage, enc.storage_size() / g.n_vertices)
            for _ in range(queries):
                size = rng.randint(1, max(1, min(8, enc.n_other)))
                subset = rng.sample(range(enc.n_other), size)
                stats = QueryStats()
                out = neighbor_intersection(enc, subset, stats)
                steps += stats.steps
                worst = max(worst, stats.steps / (size + len(out) + 1))
        rows.append({"n": n, "instances": instances, "queries": instances * queries,
                     "total_steps": steps, "max_steps_ratio": round(worst, 3),
                     "storage_per_vertex": round(storage, 3),
                     "build_seconds": round(build / instances, 6)})
    return rows


def cmd_bench(args) -> int:
    rows = _bench_rows(args.sizes, args.instances, args.queries, args.seed)
    header = f"{'n':>8} {'queries':>8} {'steps':>10} {'max ratio':>10} {'ints/n':>7} {'build s':>10}"
    lines = [header]
    for r in rows:
        lines.append(f"{r['n']:>8} {r['queries']:>8} {r['total_steps']:>10} "
                     f"{r['max_steps_ratio']:>10.3f} {r['storage_per_vertex']:>7.3f} "
                     f"{r['build_seconds']:>10.6f}")
    _emit(args, {"rows": rows}, "\n".join(lines))
    return OK


def verify_instance(g: BipartiteGraph, seed: int = 0, subsets: int = 100) -> list[tuple[str, bool]]:
    """Run every fast path on ``g`` against its oracle; returns ``(check, passed)`` pairs."""
    checks: list[tuple[str, bool]] = []
    verdict = is_bdh(g)
    checks.append(("certificate", bool(verdict) == (find_forbidden(g) is None)))
    if g.n_vertices <= MAX_DH:
        checks.append(("distance-hereditary oracle", bool(verdict) == brute_distance_hereditary(g)))
    bs = maximal_bicliques(g)
    if g.n_x <= MAX_SHORE:
        oracle = brute_maximal_bicliques(g)
        checks.append(("maximal bicliques", set(bs) == set(oracle)))
    checks.append(("tree shape", is_tree_shaped(hasse_from_bicliques(bs)) == bool(verdict)))
    if not verdict:
        return checks
    enc_y = encode(g, verdict.sequence, arc_side=Y)
    enc_x = encode(g, verdict.sequence, arc_side=X)
    checks.append(("encoding Y arcs", verify_encoding(g, enc_y, seed)))
    checks.append(("encoding X arcs", verify_encoding(g, enc_x, seed)))
    checks.append(("serialization", all(
        ArborescenceEncoding.from_dict(e.to_dict()).to_dict() == e.to_dict() for e in (enc_x, enc_y))))
    rng = random.Random(seed)
    xs = list(range(g.n_x))
    samples = [[a, b] for a in xs for b in xs if a < b]
    samples += [rng.sample(xs, rng.randint(1, len(xs))) for _ in range(subsets)] if xs else []
    agree = bounded = maximal_ok = True
    for s in samples:
        stats = QueryStats()
        got = {v.index for v in neighbor_intersection(enc_y, s, stats)}
        want = {v.index for v in brute_intersection(g, [g.vertices(X)[i] for i in s])}
        agree &= got == want and intersection_empty(enc_y, s) == (not want)
        bounded &= stats.steps <= step_bound(len(s), len(got))
        closed = {i for i in range(g.n_x) if want and want <= set(g.adjacency(X)[i])}
        maximal_ok &= is_maximal_biclique(enc_x, enc_y, s) == (bool(want) and closed == set(s))
    checks.append(("neighbor intersection", agree))
    checks.append(("step bound", bounded))
    checks.append(("maximality", maximal_ok))
    checks.append(("pairwise-intersection family", set(enumerate_via_F(enc_x, enc_y)) == set(bs)))
    lattice = GaloisLattice.from_bicliques(bs, g.n_x, g.n_y)
    orders = build_realizer(lattice, enc_y)
    pos = [{b: k for k, b in enumerate(o)} for o in orders]
    checks.append(("three-order realizer", all(
        all(p[b1] <= p[b2] for p in pos) == leq(b1, b2) for b1 in bs for b2 in bs)))
    return checks


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.file))
    checks = verify_instance(g, args.seed, args.subsets)
    ok = all(passed for _, passed in checks)
    _emit(args, {"passed": ok, "checks": {name: passed for name, passed in checks}},
          "\n".join(f"{'ok' if passed else 'FAIL'} {name}" for name, passed in checks))
    return OK if ok else FALSE


# -- parser ----------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    p = argparse.ArgumentParser(prog="bdhlattice",
                                description="Bipartite distance-hereditary graphs and their biclique lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("recognize", parents=[common], help="decide BDH membership with a certificate")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--sequence", action="store_true", help="print the pruning sequence on YES")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("lattice", parents=[common], help="maximal bicliques and Hasse digraph")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--dot", action="store_true", help="emit the Hasse digraph in DOT")
    s.add_argument("--strict", action="store_true", help="reject universal vertices")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("encode", parents=[common], help="build an arborescence encoding")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--side", default=Y, help="class labelling the arcs (default Y)")
    s.add_argument("--out", help="write the encoding here instead of stdout")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("query", parents=[common], help="common neighbors from a saved encoding")
    s.add_argument("encoding")
    s.add_argument("ids", nargs="*", help="1-based vertex ids, comma or space separated")
    s.add_argument("--set", action="append", help="comma-separated 1-based vertex ids")
    s.add_argument("--side", help="class of the query vertices (checked against the encoding)")
    s.add_argument("--empty", action="store_true", help="only test for an empty intersection")
    s.add_argument("--stats", action="store_true", help="print a step-count footer")
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("gen", parents=[common], help="random BDH graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--bias", type=float, default=0.5, help="probability of a pendant step")
    s.add_argument("--no-universal", action="store_true")
    s.add_argument("--sequence-out", help="also write the construction sequence here")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("hyper", parents=[common], help="hypergraph acyclicity")
    s.add_argument("file", nargs="?", default="-")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--classify", action="store_true", help="default")
    mode.add_argument("--bachman", action="store_true")
    s.set_defaults(func=cmd_hyper)

    s = sub.add_parser("bench", parents=[common], help="query step counts and storage")
    s.add_argument("--sizes", type=int, nargs="+", default=[100, 1000, 10000])
    s.add_argument("--instances", type=int, default=3)
    s.add_argument("--queries", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("verify", parents=[common], help="compare every fast path with its oracle")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--subsets", type=int, default=100)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # query ids may follow its options; anything else left over is an error
        if extra and (args.command != "query" or any(t.startswith("-") for t in extra)):
            parser.error("unrecognized arguments: " + " ".join(extra))
        if extra:
            args.ids = args.ids + extra
    except SystemExit as exc:
        return USAGE if exc.code else OK
    handler: Callable = args.func
    try:
        return handler(args)
    except (_InputError, BDHError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
