"""Marked multigraphs and the edge operations used by every invariant engine.

A marked graph carries a :class:`Mark` ``(w, d)`` on every vertex.  Weighted
graphs are the ``d == 0`` case and plain graphs use the mark ``(1, 0)``
everywhere.  Edges have stable integer ids, so parallel edges stay
distinguishable and no operation renumbers surviving edges.

All values are immutable; every operation returns a new graph.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence


class GraphError(ValueError):
    """An operation was applied outside its precondition."""


@dataclass(frozen=True, order=True)
class Mark:
    """A vertex mark: weight ``w`` and number of dots ``d`` with ``w >= d + 1``."""

    w: int
    d: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.w, int) or not isinstance(self.d, int):
            raise TypeError(f"mark entries must be integers, got ({self.w!r}, {self.d!r})")
        if self.d < 0 or self.w < self.d + 1:
            raise ValueError(f"({self.w},{self.d}) is not a mark: need d >= 0 and w >= d + 1")

    @property
    def strict(self) -> bool:
        return self.w >= self.d + 2

    def dot_sum(self, other: Mark) -> Mark:
        return Mark(self.w + other.w, self.d + other.d + 1)

    def __str__(self) -> str:
        return f"({self.w},{self.d})"


UNIT = Mark(1, 0)

# A multiset of marks, stored sorted in decreasing order.
MPartition = tuple


def total_mark(marks: Iterable[Mark]) -> Mark:
    """Dot-sum of a non-empty collection of marks."""
    marks = list(marks)
    if not marks:
        raise ValueError("total mark of an empty vertex set is undefined")
    return reduce(Mark.dot_sum, marks)


def mpartition(marks: Iterable[Mark]) -> MPartition:
    return tuple(sorted(marks, reverse=True))


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


class MarkedGraph:
    """An immutable multigraph (loops and parallel edges allowed) with vertex marks.

    ``marks`` maps vertex id to :class:`Mark`; ``edges`` maps edge id to an
    endpoint pair ``(u, v)`` with ``u <= v`` (a loop has ``u == v``).
    """

    __slots__ = ("_marks", "_edges", "_adj", "_hash")

    def __init__(self, marks: Mapping[int, Mark], edges: Mapping[int, tuple[int, int]] | None = None):
        mk: dict[int, Mark] = {}
        for v in sorted(marks):
            m = marks[v]
            if not isinstance(m, Mark):
                m = Mark(*m)
            mk[int(v)] = m
        ed: dict[int, tuple[int, int]] = {}
        for e in sorted(edges or {}):
            u, v = edges[e]
            if u not in mk or v not in mk:
                raise GraphError(f"edge {e} has an endpoint that is not a vertex: {(u, v)}")
            ed[int(e)] = (u, v) if u <= v else (v, u)
        self._marks = mk
        self._edges = ed
        self._adj: dict[int, list[int]] | None = None
        self._hash: int | None = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_edge_list(cls, marks: Mapping[int, Mark] | Sequence[Mark],
                       edge_list: Iterable[tuple[int, int]]) -> MarkedGraph:
        """Build a graph whose edge ids follow the order of ``edge_list``."""
        if not isinstance(marks, Mapping):
            marks = dict(enumerate(marks))
        return cls(marks, dict(enumerate(edge_list)))

    @classmethod
    def unweighted(cls, n: int, edge_list: Iterable[tuple[int, int]] = ()) -> MarkedGraph:
        return cls.from_edge_list([UNIT] * n, edge_list)

    @classmethod
    def weighted(cls, weights: Sequence[int] | Mapping[int, int],
                 edge_list: Iterable[tuple[int, int]] = ()) -> MarkedGraph:
        if not isinstance(weights, Mapping):
            weights = dict(enumerate(weights))
        return cls.from_edge_list({v: Mark(w, 0) for v, w in weights.items()}, edge_list)

    # -- accessors -------------------------------------------------------------

    @property
    def marks(self) -> Mapping[int, Mark]:
        return MappingProxyType(self._marks)

    @property
    def edges(self) -> Mapping[int, tuple[int, int]]:
        return MappingProxyType(self._edges)

    @property
    def vertices(self) -> list[int]:
        return list(self._marks)

    @property
    def n(self) -> int:
        return len(self._marks)

    @property
    def m(self) -> int:
        return len(self._edges)

    def mark(self, v: int) -> Mark:
        return self._marks[v]

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"unknown edge id {e}") from None

    def _adjacency(self) -> dict[int, list[int]]:
        # vertex -> incident edge ids; a loop is listed twice
        if self._adj is None:
            adj: dict[int, list[int]] = {v: [] for v in self._marks}
            for e, (u, v) in self._edges.items():
                adj[u].append(e)
                adj[v].append(e)
            self._adj = adj
        return self._adj

    def incident(self, v: int) -> list[int]:
        return sorted(set(self._adjacency()[v]))

    def degree(self, v: int) -> int:
        return len(self._adjacency()[v])

    def neighbors(self, v: int) -> list[int]:
        out = set()
        for e in self._adjacency()[v]:
            a, b = self._edges[e]
            out.add(b if a == v else a)
        return sorted(out)

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def has_loops(self) -> bool:
        return any(u == v for u, v in self._edges.values())

    def is_simple(self) -> bool:
        pairs = list(self._edges.values())
        return not self.has_loops() and len(set(pairs)) == len(pairs)

    def is_unweighted(self) -> bool:
        return all(m == UNIT for m in self._marks.values())

    def total_weight(self) -> int:
        return sum(m.w for m in self._marks.values())

    def components(self) -> list[list[int]]:
        uf = _UnionFind(self._marks)
        for u, v in self._edges.values():
            uf.union(u, v)
        groups: dict[int, list[int]] = {}
        for v in self._marks:
            groups.setdefault(uf.find(v), []).append(v)
        return sorted(groups.values())

    def is_forest(self) -> bool:
        uf = _UnionFind(self._marks)
        return all(uf.union(u, v) for u, v in self._edges.values())

    def is_tree(self) -> bool:
        return self.n > 0 and self.is_forest() and self.m == self.n - 1

    def subgraph(self, vertices: Iterable[int]) -> MarkedGraph:
        """Induced subgraph, keeping vertex and edge ids."""
        keep = set(vertices)
        return MarkedGraph({v: self._marks[v] for v in keep},
                           {e: uv for e, uv in self._edges.items() if uv[0] in keep and uv[1] in keep})

    def connected_components(self) -> list[MarkedGraph]:
        return [self.subgraph(c) for c in self.components()]

    def relabel(self, mapping: Mapping[int, int]) -> MarkedGraph:
        """Rename vertices through an injective ``mapping``; edge ids are kept."""
        return MarkedGraph({mapping[v]: m for v, m in self._marks.items()},
                           {e: (mapping[u], mapping[v]) for e, (u, v) in self._edges.items()})

    def normalized(self) -> MarkedGraph:
        """Same graph with vertex ids ``0..n-1`` and edge ids ``0..m-1`` (order preserving)."""
        vmap = {v: i for i, v in enumerate(self._marks)}
        return MarkedGraph({vmap[v]: m for v, m in self._marks.items()},
                           {i: (vmap[u], vmap[v]) for i, (u, v) in enumerate(self._edges.values())})

    def with_marks(self, marks: Mapping[int, Mark]) -> MarkedGraph:
        new = dict(self._marks)
        new.update(marks)
        return MarkedGraph(new, self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarkedGraph):
            return NotImplemented
        return self._marks == other._marks and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self._marks.items()), tuple(self._edges.items())))
        return self._hash

    def __repr__(self) -> str:
        vs = ", ".join(f"{v}:{m}" for v, m in self._marks.items())
        es = ", ".join(f"{e}:{u}-{v}" for e, (u, v) in self._edges.items())
        return f"MarkedGraph([{vs}], [{es}])"


# -- edge operations -------------------------------------------------------------


def _next_id(ids: Iterable[int]) -> int:
    return max(ids, default=-1) + 1


def delete_edge(G: MarkedGraph, e: int) -> MarkedGraph:
    G.endpoints(e)
    return MarkedGraph(G._marks, {f: uv for f, uv in G._edges.items() if f != e})


def delete_edges(G: MarkedGraph, es: Iterable[int]) -> MarkedGraph:
    es = set(es)
    for e in es:
        G.endpoints(e)
    return MarkedGraph(G._marks, {f: uv for f, uv in G._edges.items() if f not in es})


def _merge(G: MarkedGraph, e: int, merged: Mark) -> tuple[MarkedGraph, int]:
    u, v = G.endpoints(e)
    if u == v:
        raise GraphError(f"edge {e} is a loop and cannot be contracted")
    keep, gone = u, v  # endpoints are stored with u <= v
    marks = {x: m for x, m in G._marks.items() if x != gone}
    marks[keep] = merged
    edges = {}
    for f, (a, b) in G._edges.items():
        if f == e:
            continue
        edges[f] = (keep if a == gone else a, keep if b == gone else b)
    return MarkedGraph(marks, edges), keep


def contract_edge(G: MarkedGraph, e: int) -> MarkedGraph:
    """Contract a non-loop edge; the merged vertex keeps the smaller endpoint id."""
    u, v = G.endpoints(e)
    if u == v:
        raise GraphError(f"edge {e} is a loop and cannot be contracted")
    return _merge(G, e, G.mark(u).dot_sum(G.mark(v)))[0]


def contract_edges(G: MarkedGraph, es: Iterable[int]) -> MarkedGraph:
    for e in sorted(es):
        G = contract_edge(G, e)
    return G


def near_contract(G: MarkedGraph, e: int) -> tuple[MarkedGraph, int]:
    """Near-contraction of ``e``.

    Returns the new graph and the id of the near-contracted edge: the pendant
    edge joining the contracted vertex to a fresh ``(1, 0)`` leaf.
    """
    u, v = G.endpoints(e)
    if u == v:
        raise GraphError(f"edge {e} is a loop and cannot be near-contracted")
    mu, mv = G.mark(u), G.mark(v)
    H, center = _merge(G, e, Mark(mu.w + mv.w - 1, mu.d + mv.d))
    leaf = _next_id(G._marks)
    ell = _next_id(G._edges)
    marks = dict(H._marks)
    marks[leaf] = UNIT
    edges = dict(H._edges)
    edges[ell] = (center, leaf)
    return MarkedGraph(marks, edges), ell


def simplify(G: MarkedGraph) -> MarkedGraph:
    """Drop loops and keep the lowest-id edge of every parallel class."""
    seen: set[tuple[int, int]] = set()
    edges = {}
    for f, (a, b) in G._edges.items():
        if a == b or (a, b) in seen:
            continue
        seen.add((a, b))
        edges[f] = (a, b)
    return MarkedGraph(G._marks, edges)


def is_absorbable(G: MarkedGraph, v: int) -> bool:
    return G.mark(v) == UNIT and G.degree(v) == 1


def absorbable_vertices(G: MarkedGraph) -> list[int]:
    return [v for v in G._marks if is_absorbable(G, v)]


def absorb(G: MarkedGraph, e: int) -> MarkedGraph:
    """Absorb the ``(1, 0)`` leaf at one end of ``e`` into its neighbour."""
    a, b = G.endpoints(e)
    if a == b:
        raise GraphError(f"edge {e} is a loop")
    if is_absorbable(G, b):
        leaf, keep = b, a
    elif is_absorbable(G, a):
        leaf, keep = a, b
    else:
        raise GraphError(f"edge {e} is not absorbable")
    m = G.mark(keep)
    marks = {x: mk for x, mk in G._marks.items() if x != leaf}
    marks[keep] = Mark(m.w + 1, m.d)
    return MarkedGraph(marks, {f: uv for f, uv in G._edges.items() if f != e})


def core(G: MarkedGraph, rng: random.Random | None = None) -> MarkedGraph:
    """Absorb absorbable edges until none remain.

    The absorption order is by vertex id unless ``rng`` is given, in which case
    a random absorbable vertex is picked at each step.
    """
    while True:
        cands = absorbable_vertices(G)
        if not cands:
            return G
        v = rng.choice(cands) if rng is not None else cands[0]
        G = absorb(G, G._adjacency()[v][0])


def spanning_partition(G: MarkedGraph, A: Iterable[int]) -> tuple[MPartition, int, int]:
    """Total marks of the components of ``G|_A``, together with ``|A|`` and the rank of ``A``."""
    A = set(A)
    uf = _UnionFind(G._marks)
    for e in A:
        u, v = G.endpoints(e)
        uf.union(u, v)
    blocks: dict[int, list[Mark]] = {}
    for v, m in G._marks.items():
        blocks.setdefault(uf.find(v), []).append(m)
    return mpartition(total_mark(b) for b in blocks.values()), len(A), G.n - len(blocks)


class GraphStats(NamedTuple):
    n: int
    m: int
    isolated: int
    internal_edges: tuple[int, ...]
    leaves: tuple[int, ...]
    components: int


def internal_edges(G: MarkedGraph) -> list[int]:
    return [e for e, (u, v) in G._edges.items() if u != v and G.degree(u) > 1 and G.degree(v) > 1]


def graph_stats(G: MarkedGraph) -> GraphStats:
    return GraphStats(
        n=G.n,
        m=G.m,
        isolated=sum(1 for v in G._marks if G.degree(v) == 0),
        internal_edges=tuple(internal_edges(G)),
        leaves=tuple(v for v in G._marks if G.degree(v) == 1),
        components=len(G.components()),
    )


def is_star_forest(G: MarkedGraph) -> bool:
    return G.is_simple() and not internal_edges(G)


def uncore(T: MarkedGraph) -> MarkedGraph:
    """Replace every ``(w, 0)`` vertex by a plain vertex carrying ``w - 1`` new leaves."""
    if any(m.d for m in T._marks.values()):
        raise GraphError("uncore needs every mark to have d == 0")
    marks = {v: UNIT for v in T._marks}
    edges = dict(T._edges)
    nv, ne = _next_id(T._marks), _next_id(T._edges)
    for v, m in T._marks.items():
        for _ in range(m.w - 1):
            marks[nv] = UNIT
            edges[ne] = (v, nv)
            nv += 1
            ne += 1
    return MarkedGraph(marks, edges)


# -- canonical forms of marked forests ---------------------------------------------


def _centroids(vertices: list[int], nbrs: dict[int, list[int]]) -> list[int]:
    n = len(vertices)
    root = vertices[0]
    parent = {root: None}
    order = [root]
    for x in order:
        for y in nbrs[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    size = {x: 1 for x in order}
    for x in reversed(order[1:]):
        size[parent[x]] += size[x]
    best, out = n + 1, []
    for x in order:
        heaviest = n - size[x]
        for y in nbrs[x]:
            if parent.get(y) == x:
                heaviest = max(heaviest, size[y])
        if heaviest < best:
            best, out = heaviest, [x]
        elif heaviest == best:
            out.append(x)
    return out


def _rooted_code(root: int, nbrs: dict[int, list[int]], label: dict[int, str]) -> str:
    parent = {root: None}
    order = [root]
    for x in order:
        for y in nbrs[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    code: dict[int, str] = {}
    for x in reversed(order):
        kids = sorted(code[y] for y in nbrs[x] if parent.get(y) == x)
        code[x] = label[x] + "[" + "".join(kids) + "]"
    return code[root]


def canonical_form(T: MarkedGraph) -> str:
    """Canonical string of a marked forest; equal strings iff mark-isomorphic."""
    if not T.is_forest():
        raise GraphError("canonical_form is only defined for forests")
    nbrs = {v: T.neighbors(v) for v in T._marks}
    label = {v: f"{m.w},{m.d}" for v, m in T._marks.items()}
    codes = []
    for comp in T.components():
        codes.append(min(_rooted_code(c, nbrs, label) for c in _centroids(comp, nbrs)))
    return "|".join(sorted(codes))


def mark_isomorphic(T1: MarkedGraph, T2: MarkedGraph) -> bool:
    return T1.n == T2.n and T1.m == T2.m and canonical_form(T1) == canonical_form(T2)


def mark_multiset(G: MarkedGraph) -> Counter:
    return Counter(G._marks.values())
