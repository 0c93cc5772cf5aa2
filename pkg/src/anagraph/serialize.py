"""Wire formats: canonical JSON for graphs, colorings, and witnesses, plus
DOT in both directions for the subset this package emits.

JSON round-trips are byte-identical for a fixed object: keys sorted, edges
normalized (u < v, lexicographic), one trailing newline.  Schema errors
carry the offending field.
"""
from __future__ import annotations

import json
import re

from .core import AnagramWitness, Coloring, Graph, MultiGraph, PathWitness


class SchemaError(ValueError):
    """Input file does not match the expected schema."""


def _require(obj, key, kind):
    if key not in obj:
        raise SchemaError(f"missing field {key!r}")
    val = obj[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise SchemaError(f"field {key!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise SchemaError(f"field {key!r} must be a list")
    return val


def _edge_list(obj, n, allow_loops):
    edges = []
    for idx, e in enumerate(_require(obj, "edges", list)):
        if (not isinstance(e, list)) or len(e) != 2 or \
                any(not isinstance(x, int) or isinstance(x, bool) for x in e):
            raise SchemaError(f"edges[{idx}] must be a pair of integers")
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise SchemaError(f"edges[{idx}] = {e} out of range for n={n}")
        if u == v and not allow_loops:
            raise SchemaError(f"edges[{idx}] is a loop; not allowed in a simple graph")
        edges.append((u, v))
    return edges


def graph_to_obj(graph: Graph) -> dict:
    return {"n": graph.n, "edges": [list(e) for e in sorted(graph.edges())]}


def graph_from_obj(obj) -> Graph:
    n = _require(obj, "n", int)
    try:
        return Graph.from_edges(n, _edge_list(obj, n, allow_loops=False))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def multigraph_to_obj(mg: MultiGraph) -> dict:
    return {"n": mg.n, "edges": [list(e) for e in mg.edges], "multigraph": True}


def multigraph_from_obj(obj) -> MultiGraph:
    n = _require(obj, "n", int)
    return MultiGraph.from_edges(n, _edge_list(obj, n, allow_loops=True))


def coloring_to_obj(coloring: Coloring) -> dict:
    return {"colors": list(coloring.colors)}


def coloring_from_obj(obj) -> Coloring:
    colors = _require(obj, "colors", list)
    if any(not isinstance(c, int) or isinstance(c, bool) or c < 0 for c in colors):
        raise SchemaError("colors must be non-negative integers")
    return Coloring.normalize(colors)


def witness_to_obj(witness: AnagramWitness) -> dict:
    return {"path": list(witness.path.vertices), "split": witness.split}


def witness_from_obj(obj) -> AnagramWitness:
    path = _require(obj, "path", list)
    split = _require(obj, "split", int)
    if any(not isinstance(v, int) or isinstance(v, bool) for v in path):
        raise SchemaError("path must hold integers")
    if len(path) % 2 != 0 or len(path) == 0:
        raise SchemaError("witness path length must be even and positive")
    if split * 2 != len(path):
        raise SchemaError("split must be half the path length")
    return AnagramWitness(PathWitness(tuple(path)), split)


def dump_json(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def load_json(data: bytes):
    try:
        return json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc


def graph_to_dot(graph: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    seen = set()
    for u, v in sorted(graph.edges()):
        lines.append(f"  {u} -- {v};")
        seen.update((u, v))
    for v in range(graph.n):
        if v not in seen:
            lines.append(f"  {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*;?\s*$")
_DOT_NODE = re.compile(r"^\s*(\d+)\s*;?\s*$")


def graph_from_dot(text: str) -> Graph:
    """Parse the plain numeric-vertex DOT emitted by graph_to_dot."""
    edges = []
    vertices = set()
    body = False
    for line in text.splitlines():
        stripped = line.strip()
        if not body:
            if stripped.startswith("graph") and stripped.endswith("{"):
                body = True
                continue
            if stripped == "":
                continue
            raise SchemaError(f"unexpected DOT line: {line!r}")
        if stripped == "}":
            body = False
            continue
        m = _DOT_EDGE.match(stripped)
        if m:
            u, v = int(m.group(1)), int(m.group(2))
            edges.append((u, v))
            vertices.update((u, v))
            continue
        m = _DOT_NODE.match(stripped)
        if m:
            vertices.add(int(m.group(1)))
            continue
        raise SchemaError(f"unsupported DOT syntax: {line!r}")
    n = max(vertices) + 1 if vertices else 0
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
