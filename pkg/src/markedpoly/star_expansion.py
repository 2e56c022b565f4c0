"""Chromatic symmetric functions in the star basis by deletion-near-contraction.

For a simple graph ``H`` and an internal edge ``e``::

    X_H = X_{H - e} + X_{(H near/ e)^s} - X_{(H near/ e)^s - l_e}

where ``l_e`` is the pendant edge created by the near-contraction.  Repeating
until no internal edge is left produces a ternary tree whose leaves are star
forests, and a star forest with star sizes ``lambda`` has ``X = st_lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import networkx as nx

from .graph import GraphError, MarkedGraph, canonical_form, delete_edge, internal_edges, near_contract, simplify
from .symfunc import SymFn

EdgeRule = Callable[[MarkedGraph], int]


def default_edge_rule(H: MarkedGraph) -> int:
    """Internal edge with lexicographically smallest ``(min endpoint, max endpoint)``."""
    return min(internal_edges(H), key=lambda e: (H.edges[e], e))


@dataclass
class DncNode:
    graph: MarkedGraph
    label: str = ""  # "+" or "-" on the edge from the parent; "" at the root
    edge: Optional[int] = None  # edge expanded at this node (internal nodes only)
    children: list["DncNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self, path: tuple["DncNode", ...] = ()) -> Iterator[tuple[tuple["DncNode", ...], "DncNode"]]:
        """Yield ``(root-to-leaf path, leaf)`` pairs."""
        path = path + (self,)
        if self.is_leaf:
            yield path, self
        else:
            for c in self.children:
                yield from c.leaves(path)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def render(self, indent: int = 0) -> str:
        g = self.graph
        es = " ".join(f"{u}-{v}" for u, v in g.edges.values())
        head = f"{'  ' * indent}{self.label or '*'} n={g.n} edges=[{es}]"
        if self.is_leaf:
            head += f" leaf {star_partition(g)}"
        else:
            head += f" expand {g.edges[self.edge]}"
        return "\n".join([head] + [c.render(indent + 1) for c in self.children])


DncTree = DncNode


def _check_simple_unweighted(G: MarkedGraph) -> None:
    if not G.is_simple():
        raise GraphError("star expansion needs a simple graph (no loops or parallel edges)")


def star_partition(H: MarkedGraph) -> tuple[int, ...]:
    """Partition of star sizes of a star forest (each component counted by vertices)."""
    return tuple(sorted((len(c) for c in H.components()), reverse=True))


def _children(H: MarkedGraph, e: int) -> list[tuple[str, MarkedGraph]]:
    nc, ell = near_contract(H, e)
    nc = simplify(nc)
    return [("+", delete_edge(H, e)), ("+", nc), ("-", delete_edge(nc, ell))]


def build_tree(G: MarkedGraph, edge_rule: EdgeRule = default_edge_rule) -> DncNode:
    """Materialise the full deletion-near-contraction tree (exponential in the internal edges)."""
    _check_simple_unweighted(G)
    root = DncNode(G)
    stack = [root]
    while stack:
        node = stack.pop()
        if not internal_edges(node.graph):
            continue
        node.edge = edge_rule(node.graph)
        for lab, child in _children(node.graph, node.edge):
            node.children.append(DncNode(child, lab))
        stack.extend(node.children)
    return root


def dnc_sign(path) -> int:
    """``(-1)`` to the number of minus-labelled edges on a root-to-leaf path.

    ``path`` may be a sequence of :class:`DncNode` or of edge labels.
    """
    labels = [p.label if isinstance(p, DncNode) else p for p in path]
    return -1 if sum(1 for lab in labels if lab == "-") % 2 else 1


def isolated_count(H: MarkedGraph) -> int:
    return sum(1 for v in H.vertices if H.degree(v) == 0)


def tree_expansion(root: DncNode) -> SymFn:
    """Sum of signed leaf contributions of a materialised tree."""
    acc: dict[tuple[int, ...], int] = {}
    for path, leaf in root.leaves():
        lam = star_partition(leaf.graph)
        acc[lam] = acc.get(lam, 0) + dnc_sign(path)
    return SymFn("st", acc)


# -- memoised evaluation ----------------------------------------------------------------------


class _IsoCache:
    """Values keyed by isomorphism class of small simple graphs."""

    def __init__(self) -> None:
        self.forests: dict[str, SymFn] = {}
        self.graphs: dict[str, list[tuple[nx.Graph, SymFn]]] = {}

    def _nx(self, H: MarkedGraph) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(H.vertices)
        g.add_edges_from(H.edges.values())
        return g

    def get(self, H: MarkedGraph):
        if H.is_forest():
            key = canonical_form(H)
            return key, self.forests.get(key)
        g = self._nx(H)
        h = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
        for other, val in self.graphs.get(h, ()):
            if nx.is_isomorphic(g, other):
                return (h, g), val
        return (h, g), None

    def put(self, key, H: MarkedGraph, val: SymFn) -> None:
        if isinstance(key, str):
            self.forests[key] = val
        else:
            h, g = key
            self.graphs.setdefault(h, []).append((g, val))


_CACHE = _IsoCache()


def clear_cache() -> None:
    global _CACHE
    _CACHE = _IsoCache()


def _x_connected(H: MarkedGraph, edge_rule: EdgeRule, cache: _IsoCache | None) -> SymFn:
    ies = internal_edges(H)
    if not ies:
        return SymFn.gen("st", (H.n,))
    if cache is not None:
        key, hit = cache.get(H)
        if hit is not None:
            return hit
    e = edge_rule(H)
    out = SymFn("st")
    for lab, child in _children(H, e):
        val = _x(child, edge_rule, cache)
        out = out + val if lab == "+" else out - val
    if cache is not None:
        cache.put(key, H, out)
    return out


def _x(H: MarkedGraph, edge_rule: EdgeRule, cache: _IsoCache | None) -> SymFn:
    out = SymFn.gen("st", ())
    for comp in H.connected_components():
        out = out * _x_connected(comp, edge_rule, cache)
    return out


def dnc_expand(G: MarkedGraph, emit_tree: bool = False, edge_rule: EdgeRule = default_edge_rule,
               memo: bool = True) -> tuple[Optional[DncNode], SymFn]:
    """Star-basis expansion of ``X_G``.

    With ``emit_tree`` the full computation tree is built and its signed leaves
    are summed.  Otherwise subresults are shared between isomorphic connected
    subgraphs (``memo``), which gives the same value because ``X`` is an
    isomorphism invariant and multiplicative over components.
    """
    _check_simple_unweighted(G)
    if not G.is_unweighted():
        raise GraphError("star expansion is implemented for unweighted graphs")
    if emit_tree:
        root = build_tree(G, edge_rule)
        return root, tree_expansion(root)
    cache = _CACHE if memo and edge_rule is default_edge_rule else (_IsoCache() if memo else None)
    return None, _x(G, edge_rule, cache)


def csf_star(G: MarkedGraph) -> SymFn:
    return dnc_expand(G)[1]


def sign_uniform(contributions: dict[tuple[int, ...], list[int]]) -> bool:
    """True when every partition receives contributions of a single sign."""
    return all(len({c > 0 for c in cs}) <= 1 for cs in contributions.values())


def leaf_contributions(root: DncNode) -> dict[tuple[int, ...], list[int]]:
    out: dict[tuple[int, ...], list[int]] = {}
    for path, leaf in root.leaves():
        out.setdefault(star_partition(leaf.graph), []).append(dnc_sign(path))
    return out
