"""Least progress measures and the positional strategies they induce."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .graphs import Arena, ColoredGraph
from .monotone import MonotoneGraph, build
from .valuations import format_value


@dataclass(frozen=True)
class PositionalStrategy:
    """For each Eve vertex the retained outgoing edges ``(color, target)``;
    Adam vertices keep everything."""

    chosen: dict

    def subgraph(self, arena: Arena) -> ColoredGraph:
        g = arena.graph
        edges = []
        for v in range(g.n):
            succ = self.chosen[v] if v in arena.eve else g.out[v]
            edges.extend((v, c, t) for c, t in succ)
        return ColoredGraph(g.n, tuple(edges), g.names, g.pregraph)


@dataclass(frozen=True)
class SolveResult:
    values: tuple
    strategy: PositionalStrategy
    measure: tuple
    graph: MonotoneGraph

    def records(self, arena: Arena) -> list:
        g, spec = arena.graph, arena.valuation
        return [{"id": g.name(v), "rank": self.measure[v], "value": format_value(spec, self.values[v])}
                for v in range(g.n)]

    def strategy_edges(self, arena: Arena) -> list:
        g = arena.graph
        return [(g.name(v), str(c), g.name(t)) for v in sorted(self.strategy.chosen)
                for c, t in self.strategy.chosen[v]]


def _edge_tables(arena: Arena, L: MonotoneGraph):
    return [[(L.table(c), t) for c, t in arena.graph.out[v]] for v in range(arena.n)]


def _update(v, eve, tabs, phi, top):
    vals = [tab[phi[t]] for tab, t in tabs[v]]
    if eve:
        return min(vals) if vals else top
    return max(vals) if vals else 0


def upd(arena: Arena, L: MonotoneGraph, phi: Sequence[int]) -> tuple:
    """One application of the update operator: min of ``rho_c(phi(v'))`` at
    Eve vertices, max at Adam vertices."""
    tabs = _edge_tables(arena, L)
    return tuple(_update(v, v in arena.eve, tabs, phi, L.top) for v in range(arena.n))


def least_progress_measure(arena: Arena, L: MonotoneGraph, start: Optional[Sequence[int]] = None) -> tuple:
    """Worklist lifting from the all-zero measure (or ``start``, which must lie
    below the least fixpoint)."""
    n = arena.n
    tabs = _edge_tables(arena, L)
    preds = [[] for _ in range(n)]
    for s, _, t in arena.graph.edges:
        preds[t].append(s)
    phi = list(start) if start is not None else [0] * n
    queue = deque(range(n))
    queued = [True] * n
    eve = [v in arena.eve for v in range(n)]
    top = L.top
    while queue:
        v = queue.popleft()
        queued[v] = False
        new = _update(v, eve[v], tabs, phi, top)
        if new > phi[v]:
            phi[v] = new
            for u in preds[v]:
                if not queued[u]:
                    queued[u] = True
                    queue.append(u)
    return tuple(phi)


def kleene(arena: Arena, L: MonotoneGraph) -> tuple:
    """Naive iteration ``phi_{k+1} = upd(phi_k)`` from the bottom measure."""
    phi = (0,) * arena.n
    while True:
        nxt = upd(arena, L, phi)
        if nxt == phi:
            return phi
        phi = nxt


def is_prefixpoint(arena: Arena, L: MonotoneGraph, phi: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(upd(arena, L, phi), phi))


def extract_strategy(arena: Arena, L: MonotoneGraph, phi: Sequence[int]) -> PositionalStrategy:
    """Keep every edge of each Eve vertex that attains the minimum."""
    if not is_prefixpoint(arena, L, phi):
        raise ValueError("measure is not a prefixpoint of the update operator")
    chosen = {}
    for v in sorted(arena.eve):
        succ = arena.graph.out[v]
        scores = [L.rho(c, phi[t]) for c, t in succ]
        best = min(scores)
        chosen[v] = tuple(e for e, s in zip(succ, scores) if s == best)
    return PositionalStrategy(chosen)


def levels_for(arena: Arena) -> int:
    """Level budget large enough for every vertex of ``arena``."""
    spec, n = arena.valuation, arena.n
    if spec.kind == "energy" and spec.param is None:
        weights = [abs(c) for _, c, _ in arena.graph.edges if isinstance(c, int)]
        return n * max(weights, default=0) + 1
    return n + 1


def graph_for(arena: Arena) -> MonotoneGraph:
    return build(arena.valuation, levels_for(arena))


def solve(arena: Arena, L: Optional[MonotoneGraph] = None) -> SolveResult:
    L = L if L is not None else graph_for(arena)
    phi = least_progress_measure(arena, L)
    strategy = extract_strategy(arena, L, phi)
    return SolveResult(tuple(L.value(r) for r in phi), strategy, phi, L)
