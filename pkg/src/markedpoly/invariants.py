"""Polynomial invariants of marked graphs: M (three routes), W, V and D."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .graph import GraphError, Mark, MarkedGraph, _UnionFind, canonical_form, core, spanning_partition
from .polyring import ZPoly, _zkey, forget_dots, undot
from .symfunc import BudgetExceeded

DEFAULT_MAX_EDGES = 22


def _y_minus_one_pow(k: int) -> dict[int, int]:
    """Coefficients of ``(y - 1)^k`` indexed by the power of ``y``."""
    return {j: comb(k, j) * (-1) ** (k - j) for j in range(k + 1)}


def _block_mark(members: Sequence[Mark]) -> tuple[int, int]:
    return (sum(m.w for m in members), sum(m.d for m in members) + len(members) - 1)


# -- M: states model ----------------------------------------------------------------------


def m_poly_states(G: MarkedGraph, max_edges: int = DEFAULT_MAX_EDGES) -> ZPoly:
    """``sum_A z_lambda(A) (y-1)^(|A| - r(A))``.

    The sum is aggregated by a transfer over the edges: the state after each
    edge is the vertex partition of the chosen subset together with its
    nullity, and subsets reaching the same state are merged.
    """
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceeds the subset budget of {max_edges}")
    verts = G.vertices
    index = {v: i for i, v in enumerate(verts)}
    marks = [G.mark(v) for v in verts]
    states: dict[tuple[tuple[int, ...], int], int] = {(tuple(range(len(verts))), 0): 1}
    for u, v in G.edges.values():
        iu, iv = index[u], index[v]
        nxt: dict[tuple[tuple[int, ...], int], int] = {}
        for (labels, null), c in states.items():
            key = (labels, null)
            nxt[key] = nxt.get(key, 0) + c
            a, b = labels[iu], labels[iv]
            if a == b:
                key = (labels, null + 1)
            else:
                lo, hi = (a, b) if a < b else (b, a)
                key = (tuple(lo if x == hi else x for x in labels), null)
            nxt[key] = nxt.get(key, 0) + c
        states = nxt
    return _states_to_poly(states, marks)


def _states_to_poly(states, marks: Sequence[Mark]) -> ZPoly:
    acc: dict = {}
    for (labels, null), c in states.items():
        blocks: dict[int, list[Mark]] = {}
        for i, lab in enumerate(labels):
            blocks.setdefault(lab, []).append(marks[i])
        zs = _zkey(_block_mark(b) for b in blocks.values())
        for j, cy in _y_minus_one_pow(null).items():
            key = (zs, j)
            acc[key] = acc.get(key, 0) + c * cy
    return ZPoly._raw({k: c for k, c in acc.items() if c})


def m_poly_states_bruteforce(G: MarkedGraph, max_edges: int = 16) -> ZPoly:
    """Literal sum over all edge subsets, used as an oracle in tests."""
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceeds the subset budget of {max_edges}")
    out = ZPoly.zero()
    y1 = ZPoly.y() - 1
    es = list(G.edges)
    for r in range(len(es) + 1):
        for A in itertools.combinations(es, r):
            lam, size, rank = spanning_partition(G, A)
            out = out + ZPoly.monomial(lam) * y1 ** (size - rank)
    return out


m_poly = m_poly_states


# -- M: deletion-contraction --------------------------------------------------------------


def m_poly_dc(G: MarkedGraph, order: Sequence[int] | None = None) -> ZPoly:
    """M by its defining recursion.

    Edges are processed in ``order`` (edge ids; default increasing id).  Loops
    contribute a factor ``y``; a non-loop edge splits into deletion plus
    contraction.  Intermediate graphs are memoised by their exact state.
    """
    order = list(G.edges) if order is None else list(order)
    if sorted(order) != sorted(G.edges):
        raise GraphError("edge order must list every edge id exactly once")
    rank = {e: i for i, e in enumerate(order)}
    marks = {v: (m.w, m.d) for v, m in G.marks.items()}
    edges = tuple(sorted(((rank[e],) + G.edges[e] for e in G.edges)))
    memo: dict = {}
    return _dc(tuple(sorted(marks.items())), edges, memo)


def _dc(marks: tuple, edges: tuple, memo: dict) -> ZPoly:
    key = (marks, edges)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if not edges:
        res = ZPoly.monomial(m for _, m in marks)
    else:
        (_, u, v), rest = edges[0], edges[1:]
        if u == v:
            res = ZPoly.y() * _dc(marks, rest, memo)
        else:
            md = dict(marks)
            (wu, du), (wv, dv) = md[u], md.pop(v)
            md[u] = (wu + wv, du + dv + 1)
            moved = []
            for r, a, b in rest:
                a, b = (u if a == v else a), (u if b == v else b)
                moved.append((r, min(a, b), max(a, b)))
            res = _dc(marks, rest, memo) + _dc(tuple(sorted(md.items())), tuple(moved), memo)
    memo[key] = res
    return res


# -- M: bond lattice ------------------------------------------------------------------------


def _tutte_1y(G: MarkedGraph, block: frozenset, cache: dict) -> ZPoly:
    """``T(1, y)`` of the induced subgraph on ``block``: connected spanning subsets only."""
    if block in cache:
        return cache[block]
    es = [(a, b) for a, b in G.edges.values() if a in block and b in block]
    acc: dict[int, int] = {}
    for r in range(len(es) + 1):
        for A in itertools.combinations(es, r):
            uf = _UnionFind(block)
            comps = len(block)
            for a, b in A:
                if uf.union(a, b):
                    comps -= 1
            if comps == 1:
                k = r - len(block) + 1
                for j, c in _y_minus_one_pow(k).items():
                    acc[j] = acc.get(j, 0) + c
    res = ZPoly._raw({((), j): c for j, c in acc.items() if c})
    cache[block] = res
    return res


def _connected(G: MarkedGraph, block: frozenset, nbrs: dict) -> bool:
    start = next(iter(block))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in nbrs[x]:
            if y in block and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(block)


def connected_partitions(G: MarkedGraph) -> Iterable[list[frozenset]]:
    """Vertex partitions of ``G`` whose blocks induce connected subgraphs."""
    nbrs = {v: G.neighbors(v) for v in G.vertices}

    def rec(remaining: list[int]):
        if not remaining:
            yield []
            return
        first, rest = remaining[0], remaining[1:]
        for r in range(len(rest) + 1):
            for others in itertools.combinations(rest, r):
                block = frozenset((first,) + others)
                if not _connected(G, block, nbrs):
                    continue
                left = [x for x in rest if x not in block]
                for tail in rec(left):
                    yield [block] + tail

    yield from rec(G.vertices)


def m_poly_bond(G: MarkedGraph, max_vertices: int = 9) -> ZPoly:
    """Sum over connected partitions of ``prod_i z_m(V_i) T_{G[V_i]}(1, y)``."""
    if G.n > max_vertices:
        raise BudgetExceeded(f"{G.n} vertices exceeds the partition budget of {max_vertices}")
    cache: dict = {}
    out = ZPoly.zero()
    for blocks in connected_partitions(G):
        term = ZPoly.monomial(_block_mark([G.mark(v) for v in sorted(b)]) for b in blocks)
        for b in blocks:
            term = term * _tutte_1y(G, b, cache)
        out = out + term
    return out


# -- W and D ------------------------------------------------------------------------------


def _require_weighted(G: MarkedGraph) -> None:
    if any(m.d for m in G.marks.values()):
        raise GraphError("expected a weighted graph (every mark with d = 0)")


def w_poly(G: MarkedGraph) -> ZPoly:
    """W-polynomial in ``z[w]`` and ``y``: the M-polynomial with the dots forgotten."""
    _require_weighted(G)
    return forget_dots(m_poly(G))


def w_poly_states(G: MarkedGraph, max_edges: int = 16) -> ZPoly:
    """Direct weighted subset sum, independent of M."""
    _require_weighted(G)
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceeds the subset budget of {max_edges}")
    out = ZPoly.zero()
    y1 = ZPoly.y() - 1
    es = list(G.edges)
    for r in range(len(es) + 1):
        for A in itertools.combinations(es, r):
            lam, size, rank = spanning_partition(G, A)
            out = out + ZPoly.monomial((m.w, 0) for m in lam) * y1 ** (size - rank)
    return out


def d_poly(G: MarkedGraph) -> ZPoly:
    """D-polynomial, computed on the core."""
    return undot(m_poly(core(G)))


def w_from_d(G: MarkedGraph) -> ZPoly:
    """W of a strictly weighted graph read off its D-polynomial (``z[1] = 0``)."""
    _require_weighted(G)
    if any(m.w < 2 for m in G.marks.values()):
        raise GraphError("w_from_d needs every weight to be at least 2")
    D = d_poly(G)
    return ZPoly._raw({m: c for m, c in D.items() if (1, 0) not in m[0]})


def undot_gross_size(G: MarkedGraph, max_edges: int = 16) -> int:
    """Number of signed terms when undotting the states model of M term by term.

    Each subset ``A`` contributes ``2^(sum of block dots)`` terms from the
    undotting and ``2^nullity`` from ``(y-1)^nullity``.  The expansion is
    cancellation-free exactly when this equals the absolute coefficient sum
    of the D-polynomial.
    """
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceeds the subset budget of {max_edges}")
    total = 0
    es = list(G.edges)
    for r in range(len(es) + 1):
        for A in itertools.combinations(es, r):
            lam, size, rank = spanning_partition(G, A)
            total += 2 ** (sum(m.d for m in lam) + size - rank)
    return total


def undot_is_cancellation_free(G: MarkedGraph) -> bool:
    return undot_gross_size(G) == undot(m_poly(G)).abs_coeff_sum()


# -- V-polynomial over a commutative semigroup ------------------------------------------------


@dataclass(frozen=True)
class SemigroupSpec:
    """A commutative semigroup with a hashable, sortable key for each element."""

    name: str
    op: Callable[[Any, Any], Any]
    key: Callable[[Any], Hashable] = field(default=lambda s: s)

    def spot_check(self, samples: Sequence[Any]) -> bool:
        k = self.key
        for a, b, c in itertools.product(samples, repeat=3):
            if k(self.op(a, b)) != k(self.op(b, a)):
                return False
            if k(self.op(self.op(a, b), c)) != k(self.op(a, self.op(b, c))):
                return False
        return True


MARKS = SemigroupSpec("marks", Mark.dot_sum, lambda m: (m.w, m.d))
POSITIVE_INTEGERS = SemigroupSpec("positive integers", lambda a, b: a + b)

# A V-polynomial is stored as {(z-key tuple, gamma edge-id tuple): Fraction}.
VPoly = dict


def _vp_add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def v_poly_states(G: MarkedGraph, spec: SemigroupSpec = MARKS, labels: Mapping[int, Any] | None = None,
                  gamma: Mapping[int, Fraction | int] | None = None, max_edges: int = 16) -> VPoly:
    """``sum_A z_lambda(A) prod_{e in A} gamma_e``.

    ``labels`` assigns a semigroup element to each vertex (default: the marks).
    Edges missing from ``gamma`` keep a symbolic ``gamma_e``.
    """
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceeds the subset budget of {max_edges}")
    labels = dict(G.marks) if labels is None else dict(labels)
    gamma = dict(gamma or {})
    out: VPoly = {}
    es = list(G.edges)
    for r in range(len(es) + 1):
        for A in itertools.combinations(es, r):
            uf = _UnionFind(G.vertices)
            for e in A:
                uf.union(*G.edges[e])
            blocks: dict[int, Any] = {}
            for v in G.vertices:
                root = uf.find(v)
                blocks[root] = labels[v] if root not in blocks else spec.op(blocks[root], labels[v])
            zkey = tuple(sorted(spec.key(s) for s in blocks.values()))
            coeff = Fraction(1)
            sym = []
            for e in A:
                if e in gamma:
                    coeff *= Fraction(gamma[e])
                else:
                    sym.append(e)
            _vp_add(out, (zkey, tuple(sorted(sym))), coeff)
    return out


def v_poly_dc(G: MarkedGraph, spec: SemigroupSpec = MARKS, labels: Mapping[int, Any] | None = None,
              gamma: Mapping[int, Fraction | int] | None = None) -> VPoly:
    """V-polynomial by its deletion-contraction rules."""
    labels = dict(G.marks) if labels is None else dict(labels)
    gamma = {e: Fraction(g) for e, g in (gamma or {}).items()}
    edges = tuple((e,) + G.edges[e] for e in sorted(G.edges))
    return _vdc(labels, edges, spec, gamma)


def _vdc(labels: dict, edges: tuple, spec: SemigroupSpec, gamma: dict) -> VPoly:
    if not edges:
        return {(tuple(sorted(spec.key(s) for s in labels.values())), ()): Fraction(1)}
    (e, u, v), rest = edges[0], edges[1:]
    deleted = _vdc(labels, rest, spec, gamma)
    if u == v:
        other = deleted
    else:
        merged = {x: s for x, s in labels.items() if x != v}
        merged[u] = spec.op(labels[u], labels[v])
        moved = tuple((f, u if a == v else a, u if b == v else b) for f, a, b in rest)
        other = _vdc(merged, moved, spec, gamma)
    out = dict(deleted)
    for (zk, gk), c in other.items():
        if e in gamma:
            _vp_add(out, (zk, gk), c * gamma[e])
        else:
            _vp_add(out, (zk, tuple(sorted(gk + (e,)))), c)
    return out


def recipe_eval(G: MarkedGraph, alpha: Mapping[int, Fraction], beta: Mapping[int, Fraction],
                spec: SemigroupSpec = MARKS, labels: Mapping[int, Any] | None = None) -> VPoly:
    """The function defined by ``f = alpha_e f(G - e) + beta_e f(G / e)`` and
    ``f = (alpha_e + beta_e) f(G - e)`` on loops, with ``prod z_s`` on edgeless graphs."""
    labels = dict(G.marks) if labels is None else dict(labels)
    edges = tuple((e,) + G.edges[e] for e in sorted(G.edges))
    al = {e: Fraction(a) for e, a in alpha.items()}
    be = {e: Fraction(b) for e, b in beta.items()}

    def rec(lab: dict, es: tuple) -> VPoly:
        if not es:
            return {(tuple(sorted(spec.key(s) for s in lab.values())), ()): Fraction(1)}
        (e, u, v), rest = es[0], es[1:]
        if u == v:
            return {k: c * (al[e] + be[e]) for k, c in rec(lab, rest).items() if c * (al[e] + be[e])}
        merged = {x: s for x, s in lab.items() if x != v}
        merged[u] = spec.op(lab[u], lab[v])
        moved = tuple((f, u if a == v else a, u if b == v else b) for f, a, b in rest)
        out: VPoly = {}
        for k, c in rec(lab, rest).items():
            _vp_add(out, k, al[e] * c)
        for k, c in rec(merged, moved).items():
            _vp_add(out, k, be[e] * c)
        return out

    return rec(labels, edges)


def recipe_from_v(G: MarkedGraph, alpha: Mapping[int, Fraction], beta: Mapping[int, Fraction],
                  spec: SemigroupSpec = MARKS, labels: Mapping[int, Any] | None = None) -> VPoly:
    """``prod alpha_e * V(gamma_e = beta_e / alpha_e)`` via the states model."""
    scale = Fraction(1)
    for e in G.edges:
        scale *= Fraction(alpha[e])
    gamma = {e: Fraction(beta[e]) / Fraction(alpha[e]) for e in G.edges}
    return {k: c * scale for k, c in v_poly_states(G, spec, labels, gamma).items() if c * scale}


def v_to_m_side(V: VPoly) -> ZPoly:
    """Substitute ``z_s -> (y-1) z_s`` and every symbolic ``gamma_e -> y - 1`` in a marks V-polynomial."""
    y1 = ZPoly.y() - 1
    out = ZPoly.zero()
    for (zk, gk), c in V.items():
        if c.denominator != 1:
            raise ValueError("expected integer coefficients")
        out = out + ZPoly.monomial(zk) * y1 ** (len(zk) + len(gk)) * int(c)
    return out


def format_vpoly(V: VPoly) -> str:
    """Text form: ``c*g[e1]*...*z[key]*...`` with rational coefficients."""
    if not V:
        return "0"

    def zfmt(k) -> str:
        if isinstance(k, tuple):
            w, d = k
            return f"z[{w}]" if d == 0 else f"z[{w},{d}]"
        return f"z[{k}]"

    items = sorted(V.items(), key=lambda t: (-len(t[0][0]), [(-a[0], -a[1]) if isinstance(a, tuple) else (-a,)
                                                           for a in sorted(t[0][0], reverse=True)], t[0][1]))
    chunks = []
    for i, ((zk, gk), c) in enumerate(items):
        body = "*".join([str(abs(c))] + [f"g[{e}]" for e in gk] + [zfmt(k) for k in sorted(zk, reverse=True)])
        if i == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(("+ " if c > 0 else "- ") + body)
    return " ".join(chunks)


# -- forests: memoised M by canonical form ---------------------------------------------------

_FOREST_CACHE: dict[str, ZPoly] = {}


def m_poly_forest(T: MarkedGraph) -> ZPoly:
    """M of a marked forest, cached on the canonical form of each component."""
    out = ZPoly.const(1)
    for comp in T.connected_components():
        key = canonical_form(comp)
        if key not in _FOREST_CACHE:
            _FOREST_CACHE[key] = m_poly_states(comp)
        out = out * _FOREST_CACHE[key]
    return out
