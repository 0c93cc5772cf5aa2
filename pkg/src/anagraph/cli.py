"""Command-line interface.

One executable, subcommand per task: gen, color, verify, verify-witness,
attack, posa, words, experiment, bounds.  All randomness flows from --seed;
identical invocations write byte-identical artifacts (experiment CSVs add a
wall-clock column, documented there).  Exit codes: 0 success, 1 malformed
input, 2 budget or retry exhaustion, 3 internal assertion (a witness failed
re-verification; must never happen).

The ANAGRAPH_BUDGET environment variable overrides default step budgets.
"""
from __future__ import annotations

import argparse
import csv
import random
import sys
import time
from pathlib import Path

from . import attack as attack_mod
from . import color as color_mod
from . import construct, detect, posa, rrg, serialize, words
from .core import BudgetExhausted, Coloring, Graph, verify_witness
from .util import default_budget, derive_seed, env_budget


class InputError(ValueError):
    pass


def _read(path):
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_graph(path) -> Graph:
    data = _read(path)
    if str(path).endswith(".dot"):
        return serialize.graph_from_dot(data.decode("utf-8"))
    return serialize.graph_from_obj(serialize.load_json(data))


def _load_coloring(path) -> Coloring:
    return serialize.coloring_from_obj(serialize.load_json(_read(path)))


def _write(path, data: bytes):
    Path(path).write_bytes(data)


def _emit(obj, out=None):
    data = serialize.dump_json(obj)
    if out:
        _write(out, data)
    sys.stdout.write(data.decode())


# -- gen -------------------------------------------------------------------------

def cmd_gen(args) -> int:
    fam = args.family
    if fam == "tree":
        graph = construct.perfect_binary_tree(args.h).graph()
    elif fam == "sibling":
        graph, _ = construct.sibling_tree(args.n)
    elif fam == "ladder":
        graph = construct.circular_ladder(args.m)
    elif fam == "composite":
        graph, _ = construct.composite_four_regular(args.k)
    elif fam == "rrg":
        graph = construct.random_regular(args.n, args.d, args.seed)
    elif fam == "matching":
        graph = construct.random_matching(args.n, args.seed)
    else:
        raise InputError(f"unknown family {fam!r}")
    if args.dot:
        text = serialize.graph_to_dot(graph)
        if args.out:
            _write(args.out, text.encode())
        sys.stdout.write(text)
    else:
        _emit(serialize.graph_to_obj(graph), args.out)
    return 0


# -- color -----------------------------------------------------------------------

def _bfs_depth_coloring(graph: Graph) -> Coloring:
    from .core import bfs_layers, is_connected

    if not is_connected(graph):
        raise InputError("depth coloring needs a connected graph")
    layers = bfs_layers(graph, 0)
    colors = [0] * graph.n
    for depth, layer in enumerate(layers):
        for v in layer:
            colors[v] = depth
    return Coloring(tuple(colors), len(layers))


def cmd_color(args) -> int:
    graph = _load_graph(args.graph)
    if args.budget is None:
        args.budget = env_budget()
    if args.algo == "depth":
        coloring = _bfs_depth_coloring(graph)
        extra = {}
    elif args.algo == "separator":
        coloring = color_mod.separator_coloring(graph)
        extra = {}
    elif args.algo == "indep":
        s = color_mod.greedy_independent_set(graph, args.seed)
        coloring = color_mod.independent_set_coloring(graph, s)
        extra = {"independent_set": list(s)}
    elif args.algo == "exact":
        result = color_mod.exact_anagram_chromatic(graph, budget=args.budget)
        if not result.exact:
            sys.stderr.write(
                f"budget exhausted: bracket [{result.lower}, {result.upper}]\n")
            return 2
        coloring = result.coloring
        extra = {"value": result.value,
                 "search_nodes": result.stats.nodes,
                 "search_prunes": result.stats.prunes,
                 "nodes_per_palette": {str(k): v for k, v in
                                       result.stats.per_palette.items()}}
    else:
        raise InputError(f"unknown algorithm {args.algo!r}")
    _emit(serialize.coloring_to_obj(coloring), args.out)
    if extra:
        sys.stdout.write(serialize.dump_json(extra).decode())
    return 0


# -- verify ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    graph = _load_graph(args.graph)
    coloring = _load_coloring(args.coloring)
    if len(coloring) != graph.n:
        raise InputError("coloring length does not match graph")
    budget = args.budget if args.budget is not None else default_budget(10_000_000)
    if args.mode == "exhaustive":
        cert = detect.certify_anagram_free(graph, coloring, budget=budget)
    elif args.mode == "tree":
        witness = detect.find_anagram(graph, coloring, mode="tree")
        cert = detect.Certificate("witness" if witness else "free", witness, "forest-scan")
    elif args.mode == "randomized":
        witness = detect.find_anagram(graph, coloring, mode="randomized",
                                      budget=budget, seed=args.seed)
        status = "witness" if witness else "inconclusive"
        cert = detect.Certificate(status, witness, "randomized")
    else:
        raise InputError(f"unknown mode {args.mode!r}")
    obj = {"status": cert.status, "method": cert.method}
    if cert.witness is not None:
        obj["witness"] = serialize.witness_to_obj(cert.witness)
    _emit(obj, args.out)
    return 2 if cert.status == "inconclusive" else 0


def cmd_verify_witness(args) -> int:
    graph = _load_graph(args.graph)
    coloring = _load_coloring(args.coloring)
    witness = serialize.witness_from_obj(serialize.load_json(_read(args.witness)))
    ok = verify_witness(graph, coloring, witness)
    _emit({"valid": ok})
    return 0 if ok else 1


# -- attack ----------------------------------------------------------------------

def _recover_tree_handle(graph: Graph) -> construct.BinaryTreeHandle:
    n = graph.n
    h = (n + 1).bit_length() - 2
    if n != (1 << (h + 1)) - 1:
        raise InputError("graph is not a heap-indexed perfect binary tree")
    handle = construct.BinaryTreeHandle(h)
    if set(graph.edges()) != set(handle.graph().edges()):
        raise InputError("graph edges do not match the perfect-tree layout")
    return handle


def _recover_sibling(graph: Graph):
    n = graph.n
    h = (n + 1).bit_length() - 2
    if n != (1 << (h + 1)) - 1 or h < 1:
        raise InputError("graph is not a heap-indexed sibling tree")
    expected, handle = construct.sibling_tree(1 << h)
    if set(graph.edges()) != set(expected.edges()):
        raise InputError("graph edges do not match the sibling-tree layout")
    return handle


def _recover_composite(graph: Graph):
    n = graph.n
    k = int((n + 0.25) ** 0.5 - 0.5 + 1e-9)
    if (k + 1) * k != n:
        raise InputError("vertex count does not fit the composite layout")
    expected, descriptor = construct.composite_four_regular(k)
    if set(graph.edges()) != set(expected.edges()):
        raise InputError("graph edges do not match the composite layout")
    return descriptor


def cmd_attack(args) -> int:
    graph = _load_graph(args.graph)
    coloring = _load_coloring(args.coloring)
    if len(coloring) != graph.n:
        raise InputError("coloring length does not match graph")
    if args.strategy == "tree":
        handle = _recover_tree_handle(graph)
        witness = attack_mod.tree_attack(handle, coloring)
    elif args.strategy == "sibling":
        handle = _recover_sibling(graph)
        witness = attack_mod.sibling_tree_attack(graph, handle, coloring)
    elif args.strategy == "composite":
        descriptor = _recover_composite(graph)
        witness = attack_mod.composite_attack(graph, descriptor, coloring)
    else:
        raise InputError(f"unknown strategy {args.strategy!r}")
    if witness is None:
        _emit({"witness": None})
        return 0
    if not verify_witness(graph, coloring, witness):
        sys.stderr.write("internal error: attack produced an invalid witness\n")
        return 3
    _emit(serialize.witness_to_obj(witness), args.out)
    return 0


# -- posa ------------------------------------------------------------------------

def cmd_posa(args) -> int:
    graph = _load_graph(args.graph)
    if args.budget is None:
        args.budget = env_budget()
    op = args.op
    if op == "longest-path":
        mode = "exact" if args.exact else "rotation"
        path = posa.longest_path(graph, mode=mode, budget=args.budget, seed=args.seed)
        _emit({"edges": path.edge_count, "mode": mode, "path": list(path.vertices)})
    elif op == "boosters":
        mode = "exact" if args.exact else "rotation"
        out = posa.boosters(graph, mode=mode, budget=args.budget, seed=args.seed)
        _emit({"mode": out.mode, "pairs": sorted(list(p) for p in out.pairs)})
    elif op == "expander":
        if args.p is None:
            raise InputError("expander requires --p")
        mode = "exact" if args.exact else "sampled"
        ok = posa.is_p_expander(graph, args.p, mode=mode, seed=args.seed)
        _emit({"p": args.p, "expander": ok, "mode": mode})
    elif op == "hamilton":
        result = posa.hamilton_cycle(graph, seed=args.seed, budget=args.budget)
        _emit({"cycle": list(result.cycle) if result.cycle else None,
               "proven_absent": result.proven_absent, "method": result.method})
    elif op == "hconn":
        ok = posa.is_hamilton_connected(graph, budget=args.budget)
        _emit({"hamilton_connected": ok})
    else:
        raise InputError(f"unknown posa operation {op!r}")
    return 0


# -- words -----------------------------------------------------------------------

def cmd_words(args) -> int:
    if args.op == "max-length":
        result = words.max_anagram_free_length(args.k, cap=args.cap)
        _emit({"k": args.k, "length": result.length, "exact": result.exact,
               "witness": str(result.witness), "nodes": result.nodes})
        return 0
    if args.op == "generate":
        budget = args.budget if args.budget is not None else default_budget(10**8)
        result = words.generate_anagram_free_word(args.k, args.target,
                                                  budget=budget, seed=args.seed)
        obj = {"k": args.k, "target": args.target, "ok": result.ok,
               "steps": result.steps,
               "word": str(result.word) if result.ok else None,
               "longest": str(result.longest)}
        _emit(obj, args.out)
        return 0 if result.ok else 2
    raise InputError(f"unknown words operation {args.op!r}")


# -- experiment --------------------------------------------------------------------

def cmd_experiment(args) -> int:
    if args.kind != "rrg":
        raise InputError(f"unknown experiment {args.kind!r}")
    params = rrg.SplitParams.relaxed() if args.preset == "relaxed" else rrg.SplitParams()
    rows = []
    for trial in range(args.trials):
        seed = derive_seed(args.seed, "experiment", trial)
        started = time.perf_counter()
        if args.union_split:
            d2 = max(2, 2 * ((args.d // 300) or 1))
            graph, _, _ = rrg.union_regular_pair(args.n, args.d - d2, d2, seed)
        else:
            graph = construct.random_regular(args.n, args.d, seed)
        rng = random.Random(derive_seed(seed, "coloring"))
        coloring = Coloring.normalize([rng.randrange(args.colors)
                                       for _ in range(args.n)])
        result = rrg.anagram_pipeline(graph, coloring, params, seed=seed)
        wall_ms = int(1000 * (time.perf_counter() - started))
        rows.append({
            "seed": trial,
            "stage_reached": result.stage,
            "witness_found": int(result.witness is not None),
            "v1_size": len(result.v1),
            "cycle_lengths": ";".join(str(c) for c in result.cycle_lengths),
            "wall_ms": wall_ms,
        })
        if result.witness is not None and not verify_witness(graph, coloring, result.witness):
            sys.stderr.write("internal error: pipeline witness failed verification\n")
            return 3
    fieldnames = ["seed", "stage_reached", "witness_found", "v1_size",
                  "cycle_lengths", "wall_ms"]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(rows)
    successes = sum(r["witness_found"] for r in rows)
    _emit({"trials": args.trials, "witnesses": successes,
           "stages": {r["seed"]: r["stage_reached"] for r in rows}})
    return 0


# -- bounds ----------------------------------------------------------------------

def cmd_bounds(args) -> int:
    graph = _load_graph(args.graph)
    s = color_mod.greedy_independent_set(graph, args.seed)
    obj = {
        "n": graph.n,
        "m": graph.m,
        "max_degree": max((graph.degree(v) for v in range(graph.n)), default=0),
        "trivial_upper": graph.n,
        "greedy_independent_set": len(s),
        "independent_set_upper": graph.n - len(s) + 1 if graph.n else 0,
    }
    if graph.n <= 12:
        obj["chromatic_lower"] = color_mod.chromatic_number(graph)
    if graph.n <= 10:
        result = color_mod.exact_anagram_chromatic(graph, budget=args.budget)
        if result.exact:
            obj["exact"] = result.value
        else:
            obj["exact_bracket"] = [result.lower, result.upper]
    _emit(obj, args.out)
    return 0


# -- parser ----------------------------------------------------------------------

def _budget_arg(text):
    return int(float(text))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anagraph",
                                     description="anagram-free graph coloring toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph family")
    p.add_argument("--family", required=True,
                   choices=["tree", "sibling", "ladder", "composite", "rrg", "matching"])
    p.add_argument("--h", type=int, default=3, help="tree depth")
    p.add_argument("--m", type=int, default=1, help="ladder parameter")
    p.add_argument("--k", type=int, default=6, help="composite block size")
    p.add_argument("--n", type=int, default=16, help="vertex/leaf/point count")
    p.add_argument("--d", type=int, default=3, help="regular degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("color", help="color a graph")
    p.add_argument("--algo", required=True,
                   choices=["depth", "separator", "indep", "exact"])
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=_budget_arg, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="find an anagram or certify freeness")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--mode", default="exhaustive",
                   choices=["exhaustive", "tree", "randomized"])
    p.add_argument("--budget", type=_budget_arg, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-witness", help="check a witness certificate")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("witness")
    p.set_defaults(func=cmd_verify_witness)

    p = sub.add_parser("attack", help="extract a witness from a weak coloring")
    p.add_argument("--strategy", required=True, choices=["tree", "sibling", "composite"])
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--out")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("posa", help="paths, boosters, expanders, Hamiltonicity")
    p.add_argument("op", choices=["longest-path", "boosters", "expander",
                                  "hamilton", "hconn"])
    p.add_argument("graph")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--budget", type=_budget_arg, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_posa)

    p = sub.add_parser("words", help="anagram-free words")
    p.add_argument("op", choices=["max-length", "generate"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=64)
    p.add_argument("--target", type=int, default=50)
    p.add_argument("--budget", type=_budget_arg, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("experiment", help="seeded experiment batches")
    p.add_argument("kind", choices=["rrg"])
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--d", type=int, default=24)
    p.add_argument("--colors", type=int, default=100)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--preset", default="relaxed", choices=["relaxed", "paper"])
    p.add_argument("--union-split", action="store_true",
                   help="build the graph as a union of two regular graphs")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bounds", help="quick bound summary for a graph")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=_budget_arg, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, serialize.SchemaError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (BudgetExhausted, rrg.CoreCollapsed, rrg.SplitRetriesExceeded) as exc:
        sys.stderr.write(f"exhausted: {exc}\n")
        return 2
    except AssertionError as exc:  # a witness failed verification: must not happen
        sys.stderr.write(f"internal assertion failed: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
