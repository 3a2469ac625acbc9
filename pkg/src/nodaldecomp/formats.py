"""Graph serialization: canonical JSON, plain edge lists and DOT."""

from __future__ import annotations

import json

from .graph import Graph, GraphError


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), separators=(",", ":"))


def graph_from_dict(data: dict) -> Graph:
    if "n" not in data or "edges" not in data:
        raise GraphError("graph JSON needs 'n' and 'edges'")
    return Graph(int(data["n"]), tuple(tuple(e) for e in data["edges"]))


def to_edgelist(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge list")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, tuple(edges))


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    out += [f"  {v};" for v in range(g.n)]
    out += [f"  {u} -- {v};" for u, v in g.edges]
    out.append("}")
    return "\n".join(out) + "\n"


def read_graph(text: str) -> Graph:
    """Parse either graph JSON or an edge list, whichever ``text`` looks like."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_dict(json.loads(stripped))
    return from_edgelist(text)
