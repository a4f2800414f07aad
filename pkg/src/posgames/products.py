"""Lexicographic products of objectives and of monotonic graphs."""
from __future__ import annotations

from .monotone import MonotoneGraph, cobuchi_core, complete
from .valuations import LOSE, WIN, SpecError, ValuationSpec, rename_spec


def _check_disjoint(g1: MonotoneGraph, g2: MonotoneGraph):
    clash = [c for c in g1.palette if g2.accepts(c)] + [c for c in g2.palette if g1.accepts(c)]
    if clash:
        raise SpecError(f"alphabet collision on colors {sorted(set(map(str, clash)))}")


def lex_product_graphs(g1: MonotoneGraph, g2: MonotoneGraph) -> MonotoneGraph:
    """Product over the cores of ``g1`` and ``g2``; ``g2`` is the dominant
    coordinate.  A fresh top sits above all pairs."""
    _check_disjoint(g1, g2)
    n1, n2 = g1.size, g2.size
    top = n1 * n2

    def rule(c):
        out = []
        if g2.accepts(c):
            t2 = g2.table(c)
            for l2 in range(n2):
                p = t2[l2]
                out.extend([p * n1 if p < n2 else top] * n1)
        else:
            t1 = g1.table(c)
            for l2 in range(n2):
                for l1 in range(n1):
                    p = t1[l1]
                    if p < n1:
                        out.append(l2 * n1 + p)
                    else:
                        out.append((l2 + 1) * n1 if l2 + 1 < n2 else top)
        out.append(top)
        return out

    values, labels = [], []
    for l2 in range(n2):
        for l1 in range(n1):
            v1, v2 = g1.values[l1], g2.values[l2]
            values.append(max(v1, v2))
            labels.append(f"({g1.labels[l1]},{g2.labels[l2]})")
    qualitative = all(v in (WIN, LOSE) for v in g1.values + g2.values)
    values.append(LOSE if qualitative else max(g1.values[-1], g2.values[-1]))
    labels.append("top")
    spec = None
    if g1.spec is not None and g2.spec is not None:
        try:
            spec = ValuationSpec("product", factors=(g1.spec, g2.spec))
        except SpecError:
            spec = None
    return MonotoneGraph(top, rule, tuple(values), tuple(labels),
                         lambda c: g1.accepts(c) or g2.accepts(c), g1.palette + g2.palette, spec)


def rename_graph(g: MonotoneGraph, mapping: dict) -> MonotoneGraph:
    """Rename colors, ``mapping`` sends old colors to new ones."""
    inverse = {new: old for old, new in mapping.items()}

    def accepts(c):
        if c in inverse:
            return True
        return c not in mapping and g.accepts(c)

    palette = tuple(mapping.get(c, c) for c in g.palette)
    spec = rename_spec(g.spec, mapping) if g.spec is not None else None
    return MonotoneGraph(g.size, lambda c: g.table(inverse.get(c, c)), g.values, g.labels, accepts, palette, spec)


def lex_product_objectives(spec1: ValuationSpec, spec2: ValuationSpec) -> ValuationSpec:
    """Objective where ``spec2`` decides whenever its colors recur forever."""
    for s in (spec1, spec2):
        if not s.prefix_invariant:
            raise SpecError(f"lexicographic products need prefix-invariant factors, got {s}")
    return ValuationSpec("product", factors=(spec1, spec2))


def cobuchi_factor(i: int, alpha: int) -> MonotoneGraph:
    return rename_graph(complete(cobuchi_core(alpha)), {"safe": 2 * i, "bad": 2 * i + 1})


def parity_graph(h: int, alpha: int) -> MonotoneGraph:
    """Iterated product of ``h`` co-Buchi graphs over priorities ``2..2h+1``."""
    if h < 1:
        raise SpecError("parity needs h >= 1")
    g = cobuchi_factor(1, alpha)
    for i in range(2, h + 1):
        g = lex_product_graphs(g, cobuchi_factor(i, alpha))
    return MonotoneGraph(g.size, g.rule, g.values, g.labels, g.accepts, g.palette, ValuationSpec("parity", h))


def parity_objective(h: int) -> ValuationSpec:
    """Parity written as a lexicographic product of renamed co-Buchi objectives."""
    spec = rename_spec(ValuationSpec("cobuchi"), {"safe": 2, "bad": 3})
    for i in range(2, h + 1):
        spec = lex_product_objectives(spec, rename_spec(ValuationSpec("cobuchi"), {"safe": 2 * i, "bad": 2 * i + 1}))
    return spec
