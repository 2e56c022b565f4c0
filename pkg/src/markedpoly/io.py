"""Reading and writing graphs: the JSON schema and graph6."""

from __future__ import annotations

import json

import networkx as nx

from .graph import GraphError, Mark, MarkedGraph


def graph_from_json(text: str | dict) -> MarkedGraph:
    """``{"vertices": [{"id", "w", "d"}], "edges": [[u, v], ...]}``; ``w`` defaults to 1, ``d`` to 0."""
    data = json.loads(text) if isinstance(text, str) else text
    marks = {}
    for v in data.get("vertices", []):
        vid = int(v["id"])
        if vid in marks:
            raise GraphError(f"duplicate vertex id {vid}")
        marks[vid] = Mark(int(v.get("w", 1)), int(v.get("d", 0)))
    edges = {}
    for i, e in enumerate(data.get("edges", [])):
        if len(e) != 2:
            raise GraphError(f"edge {e!r} must have two endpoints")
        edges[i] = (int(e[0]), int(e[1]))
    return MarkedGraph(marks, edges)


def graph_to_json(G: MarkedGraph) -> str:
    return json.dumps({
        "vertices": [{"id": v, "w": m.w, "d": m.d} for v, m in G.marks.items()],
        "edges": [list(uv) for uv in G.edges.values()],
    })


def graph_from_graph6(text: str | bytes) -> MarkedGraph:
    if isinstance(text, str):
        text = text.strip().encode()
    else:
        text = text.strip()
    if text.startswith(b">>graph6<<"):
        text = text[len(b">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(text)
    except (nx.NetworkXError, ValueError) as exc:
        raise GraphError(f"bad graph6 input: {exc}") from None
    return MarkedGraph.unweighted(nxg.number_of_nodes(), sorted(tuple(sorted(e)) for e in nxg.edges()))


def graph_to_graph6(G: MarkedGraph) -> str:
    if not G.is_simple() or not G.is_unweighted():
        raise GraphError("graph6 holds simple unweighted graphs only")
    H = G.normalized()
    nxg = nx.Graph()
    nxg.add_nodes_from(range(H.n))
    nxg.add_edges_from(H.edges.values())
    return nx.to_graph6_bytes(nxg, header=False).decode().strip()


def read_graph(text: str, fmt: str | None = None) -> MarkedGraph:
    """Parse ``text``; the format is guessed from the first character when ``fmt`` is ``None``."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "graph6"
    if fmt == "json":
        return graph_from_json(text)
    if fmt == "graph6":
        return graph_from_graph6(text)
    raise ValueError(f"unknown graph format {fmt!r}")
