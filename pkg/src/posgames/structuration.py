"""From a graph to a completely well-monotonic graph with a value-preserving map.

Pipeline: powerset game -> uniform positional witness -> eps-edge
enrichment -> eps-closure -> quotient by mutual eps-reachability -> completion.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graphs import Arena, ColoredGraph
from .monotone import MonotoneGraph, check_axioms, edges_from_table
from .oracle import (BudgetExceeded, OracleBudget, brute_force_solve, choice_edges, graph_values_from_out,
                     strategy_values)
from .valuations import EPS, SpecError, ValuationSpec

MAX_VERTICES = 4


class StructurationError(RuntimeError):
    pass


@dataclass(frozen=True)
class EpsEnrichedGraph:
    base: ColoredGraph
    added_eps: tuple  # (v, v') pairs


@dataclass(frozen=True)
class StructurationResult:
    graph: MonotoneGraph
    phi: tuple
    classes: tuple  # rank -> tuple of vertices of the closed graph
    enriched: EpsEnrichedGraph
    closed: ColoredGraph


def _subsets(n):
    return [tuple(v for v in range(n) if m >> v & 1) for m in range(1, 1 << n)]


def powerset_game(g: ColoredGraph, spec: ValuationSpec, max_vertices: int = MAX_VERTICES) -> Arena:
    """Adam keeps ``V``; every nonempty subset ``A`` becomes an Eve vertex
    reached from each member by an eps-edge and left by an eps-edge to any member."""
    if not spec.eps:
        raise SpecError("the powerset game needs an eps-extended objective")
    if g.n > max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceed the powerset cap {max_vertices}")
    subsets = _subsets(g.n)
    edges = list(g.edges)
    names = [g.name(v) for v in range(g.n)]
    for i, A in enumerate(subsets):
        a = g.n + i
        names.append("{" + ",".join(g.name(v) for v in A) + "}")
        edges.extend((v, EPS, a) for v in A)
        edges.extend((a, EPS, v) for v in A)
    eve = range(g.n, g.n + len(subsets))
    return Arena(ColoredGraph(g.n + len(subsets), tuple(edges), tuple(names)), frozenset(eve), spec)


def _members(arena: Arena, a: int) -> list:
    return [t for c, t in arena.graph.out[a]]


def solver_witness(arena: Arena, keep_all: bool = False) -> dict:
    """Positional strategy read off the least progress measure: the first
    minimizing edge, or every minimizing edge with ``keep_all``."""
    from .solver import solve

    res = solve(arena)
    if keep_all:
        return {v: res.strategy.chosen[v] for v in sorted(arena.eve)}
    return {v: res.strategy.chosen[v][0] for v in sorted(arena.eve)}


def find_witness(arena: Arena, method: str = "oracle", budget: Optional[OracleBudget] = None) -> dict:
    if method in ("solver", "solver-all"):
        return solver_witness(arena, keep_all=method == "solver-all")
    if method != "oracle":
        raise ValueError("witness method is 'oracle', 'solver' or 'solver-all'")
    budget = budget or OracleBudget(max_vertices=arena.n, strategy_cap=100_000)
    res = brute_force_solve(arena, budget)
    if res.witness is None:
        raise StructurationError(f"no uniform positional witness for {arena.valuation}")
    return res.witness


def enrich_eps(g: ColoredGraph, arena: Arena, witness: dict, check: bool = True) -> EpsEnrichedGraph:
    """Add ``v -eps-> v'`` whenever the witness answers some subset holding ``v`` with ``v'``.

    ``witness`` maps each subset vertex to one edge or a tuple of edges."""
    if check:
        # uniform optimality against the brute-force optimum
        opt = brute_force_solve(arena, OracleBudget(max_vertices=arena.n, strategy_cap=100_000)).values
        if tuple(strategy_values(arena, witness)) != tuple(opt):
            raise StructurationError("strategy is not uniformly optimal")
    added = []
    present = g.edge_set
    for a in sorted(arena.eve):
        for c, target in choice_edges(witness[a]):
            if c != EPS or target not in _members(arena, a):
                raise StructurationError(f"witness leaves subset vertex {a} by a non-member edge")
            for v in _members(arena, a):
                if (v, EPS, target) not in present and (v, target) not in added:
                    added.append((v, target))
    edges = g.edges + tuple((v, EPS, t) for v, t in added)
    return EpsEnrichedGraph(ColoredGraph(g.n, edges, g.names, g.pregraph), tuple(added))


def has_enough_eps(g: ColoredGraph) -> bool:
    """Every nonempty vertex set holds some v that all its members eps-reach in one step
    (counting eps self-loops as present)."""
    m = np.eye(g.n, dtype=bool)
    for s, c, t in g.edges:
        if c == EPS:
            m[s, t] = True
    for A in _subsets(g.n):
        if not any(m[list(A), v].all() for v in A):
            return False
    return True


def eps_reach(g: ColoredGraph) -> np.ndarray:
    """Reflexive-transitive closure of the eps-edges as a boolean matrix."""
    r = np.eye(g.n, dtype=bool)
    for s, c, t in g.edges:
        if c == EPS:
            r[s, t] = True
    while True:
        nxt = (r.astype(np.int64) @ r.astype(np.int64)) > 0
        if (nxt == r).all():
            return r
        r = nxt


def eps_closure(g) -> ColoredGraph:
    """``v -c-> v'`` whenever ``v ~eps~> u -c-> u' ~eps~> v'``; eps itself becomes
    the reflexive-transitive eps-reachability."""
    if isinstance(g, EpsEnrichedGraph):
        g = g.base
    r = eps_reach(g)
    n = g.n
    by_color = {}
    for s, c, t in g.edges:
        if c != EPS:
            by_color.setdefault(c, np.zeros((n, n), dtype=bool))[s, t] = True
    edges = []
    for c, m in by_color.items():
        closed = (r.astype(np.int64) @ m.astype(np.int64) @ r.astype(np.int64)) > 0
        edges.extend((int(s), c, int(t)) for s, t in zip(*np.nonzero(closed)))
    edges.extend((int(s), EPS, int(t)) for s, t in zip(*np.nonzero(r)))
    edges.sort(key=lambda e: (e[0], str(e[1]), e[2]))
    return ColoredGraph(n, tuple(edges), g.names, g.pregraph)


def eps_classes(g: ColoredGraph) -> list:
    """Mutual eps-reachability classes, least first: a class is below another
    when the other eps-reaches it.  Raises if the order is not total."""
    r = eps_reach(g)
    mutual = r & r.T
    classes, seen = [], set()
    for v in range(g.n):
        if v not in seen:
            cls = tuple(int(x) for x in np.flatnonzero(mutual[v]))
            seen.update(cls)
            classes.append(cls)
    below = [sum(bool(r[c[0], d[0]]) for d in classes) for c in classes]
    order = sorted(range(len(classes)), key=lambda i: below[i])
    ranked = [classes[i] for i in order]
    for i in range(len(ranked)):
        for j in range(i):
            if not r[ranked[i][0], ranked[j][0]]:
                raise StructurationError("eps order on classes is not total")
    return ranked


def quotient_and_complete(g1: ColoredGraph, spec: ValuationSpec, values=None):
    """Quotient of an eps-closed graph, completed with a top rank.

    Returns ``(graph, phi, classes)``.  Level values are the values of class
    representatives (``values`` per vertex, oracle-computed when omitted)."""
    classes = eps_classes(g1)
    rank = [0] * g1.n
    for i, cls in enumerate(classes):
        for v in cls:
            rank[v] = i
    size = len(classes)
    if values is None:
        values = graph_values_from_out(g1.out, spec)
    cls_values = [values[cls[0]] for cls in classes]
    for cls in classes:
        if len({values[v] for v in cls}) != 1:
            raise StructurationError("values differ inside an eps class")
    tables = {}
    for s, c, t in g1.edges:
        if c == EPS:
            continue
        tab = tables.setdefault(c, [size] * (size + 1))
        tab[rank[t]] = min(tab[rank[t]], rank[s])
    ident = tuple(range(size + 1))
    empty = tuple([size] * (size + 1))
    frozen = {c: tuple(t) for c, t in tables.items()}

    def rule(c):
        if c == EPS:
            return ident
        return frozen.get(c, empty)

    palette = tuple(frozen) + (EPS,)
    labels = tuple("{" + ",".join(g1.name(v) for v in cls) + "}" for cls in classes) + ("top",)
    out = MonotoneGraph(size, rule, tuple(cls_values) + (spec.worst,), labels, spec.accepts, palette, spec)
    return out, tuple(rank), tuple(classes)


def structurate(g: ColoredGraph, spec: ValuationSpec, witness: str = "oracle",
                max_vertices: int = MAX_VERTICES, verify: bool = True) -> StructurationResult:
    """Run the whole pipeline on ``g``; the returned ``phi`` maps each vertex of
    ``g`` to its rank in the output graph."""
    arena = powerset_game(g, spec, max_vertices)
    chosen = find_witness(arena, witness)
    enriched = enrich_eps(g, arena, chosen, check=False)
    closed = eps_closure(enriched)
    out, phi, classes = quotient_and_complete(closed, spec)
    if verify:
        if not check_axioms(edges_from_table(out)):
            raise StructurationError("output violates the monotonicity axioms")
        expected = graph_values_from_out(g.out, spec)
        got = [out.value(r) for r in phi]
        if list(expected) != got:
            raise StructurationError(f"values not preserved: {expected} vs {got}")
    return StructurationResult(out, phi, classes, enriched, closed)
