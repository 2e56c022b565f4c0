"""The M'-polynomial of marked forests.

M' follows the same split over pendant edges as M, except on a star whose
centre is ``(1, 0)``: there the pendant edge at the leaf with the largest mark
(under a chosen total order on marks) is left alone.  Undotting M' gives the
D-polynomial for every order.
"""

from __future__ import annotations

import itertools
from random import Random
from typing import Callable, Hashable

from .graph import GraphError, Mark, MarkedGraph, UNIT, absorbable_vertices, contract_edges, core, delete_edges
from .polyring import ZPoly, d_bullet, undot


class MarkOrder:
    """A total order on marks given by a sort key."""

    def __init__(self, key: Callable[[Mark], Hashable], name: str = "custom"):
        self.key = key
        self.name = name

    @classmethod
    def lex(cls) -> MarkOrder:
        return cls(lambda m: (m.w, m.d), "lex")

    @classmethod
    def reverse_lex(cls) -> MarkOrder:
        return cls(lambda m: (-m.w, -m.d), "revlex")

    @classmethod
    def random(cls, rng: Random) -> MarkOrder:
        """A random total order; ranks are drawn lazily and ties fall back to ``(w, d)``."""
        ranks: dict[Mark, float] = {}

        def key(m: Mark):
            if m not in ranks:
                ranks[m] = rng.random()
            return (ranks[m], m.w, m.d)

        return cls(key, "random")

    @classmethod
    def preferring(cls, top: Mark) -> MarkOrder:
        """Lexicographic order except that ``top`` is above every other mark."""
        return cls(lambda m: (m == top, m.w, m.d), f"top{top}")

    def less(self, a: Mark, b: Mark) -> bool:
        return self.key(a) < self.key(b)

    def __repr__(self) -> str:
        return f"MarkOrder({self.name})"


def _pendant_edges(T: MarkedGraph) -> list[int]:
    return [e for e, (u, v) in T.edges.items() if u != v and (T.degree(u) == 1 or T.degree(v) == 1)]


def _star_center(T: MarkedGraph) -> int | None:
    """Centre of a connected star with at least two leaves, else ``None``."""
    if T.n < 3:
        return None
    centres = [v for v in T.vertices if T.degree(v) == T.n - 1]
    if len(centres) == 1 and all(T.degree(v) == 1 for v in T.vertices if v != centres[0]):
        return centres[0]
    return None


def m_prime(T: MarkedGraph, order: MarkOrder | None = None, tie: str = "min") -> ZPoly:
    """M'-polynomial of a marked forest.

    ``tie`` chooses between equal largest leaves (``"min"`` or ``"max"`` vertex id);
    the result does not depend on it.
    """
    if not T.is_forest():
        raise GraphError("M' is defined for forests only")
    order = order or MarkOrder.lex()
    return _mp(T, order, tie)


def _mp(T: MarkedGraph, order: MarkOrder, tie: str) -> ZPoly:
    comps = T.components()
    if len(comps) > 1:
        out = ZPoly.const(1)
        for c in comps:
            out = out * _mp(T.subgraph(c), order, tie)
        return out
    if T.m == 0:
        (v,) = T.vertices
        m = T.mark(v)
        return ZPoly.z(m.w, m.d)
    if absorbable_vertices(T):
        return _mp(core(T), order, tie)
    pend = _pendant_edges(T)
    centre = _star_center(T)
    if centre is not None and T.mark(centre) == UNIT:
        def leaf_of(e):
            u, v = T.edges[e]
            return v if u == centre else u

        keyed = [(order.key(T.mark(leaf_of(e))), leaf_of(e), e) for e in pend]
        top = max(k for k, _, _ in keyed)
        cands = sorted((leaf, e) for k, leaf, e in keyed if k == top)
        skip = cands[0][1] if tie == "min" else cands[-1][1]
        pend = [e for e in pend if e != skip]
    out = ZPoly.zero()
    for bits in itertools.product((0, 1), repeat=len(pend)):
        a1 = [e for e, b in zip(pend, bits) if b]
        a2 = [e for e, b in zip(pend, bits) if not b]
        out = out + _mp(contract_edges(delete_edges(T, a2), a1), order, tie)
    return out


def m_prime_undot_check(T: MarkedGraph, order: MarkOrder | None = None) -> bool:
    from .invariants import d_poly

    return undot(m_prime(T, order)) == d_poly(T)


def undot_gross_size(f: ZPoly) -> int:
    """Number of signed terms produced by undotting ``f`` term by term without collecting."""
    total = 0
    for (zs, _), c in f.items():
        k = abs(c)
        for w, d in zs:
            k *= d_bullet(w, d).abs_coeff_sum()
        total += k
    return total


def undot_is_cancellation_free(f: ZPoly) -> bool:
    return undot_gross_size(f) == undot(f).abs_coeff_sum()


def is_almost_strict(T: MarkedGraph) -> bool:
    return all(m.strict or m == UNIT for m in T.marks.values())
