"""Brute-force ground truth, kept independent of the progress-measure engine.

Values of one-player graphs come from explicit lasso enumeration (or an
explicit counter state space for counter valuations); games are solved by
enumerating Eve's positional strategies.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .graphs import Arena, ColoredGraph, Lasso, graph_as_arena
from .monotone import MonotoneGraph
from .valuations import EPS, INF, LOSE, WIN, Affine, SpecError, ValuationSpec


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 6
    max_cycle_len: Optional[int] = None  # None: |E| of the graph at hand
    sample_count: int = 2000
    strategy_cap: int = 5000

    def __post_init__(self):
        for name in ("max_vertices", "sample_count", "strategy_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.max_cycle_len is not None and self.max_cycle_len <= 0:
            raise ValueError("max_cycle_len must be positive")


DEFAULT_BUDGET = OracleBudget()


# ---------------------------------------------------------------------------
# lasso valuation


def eval_lasso(spec: ValuationSpec, w: Lasso):
    """Exact value of ``stem . cycle^omega``."""
    for c in w.stem + w.cycle:
        if not spec.accepts(c):
            raise SpecError(f"color {c!r} outside the alphabet of {spec}")
    return _eval(spec, w.stem, w.cycle)


def _eval(spec, stem, cycle):
    if spec.kind == "custom":
        return spec.evaluator(Lasso(stem, cycle))
    if spec.eps:
        stem = tuple(c for c in stem if c != EPS)
        cycle = tuple(c for c in cycle if c != EPS)
        base = spec.with_eps(False)
        if not cycle:
            return _best_continuation(base, stem)
        spec = base
    k = spec.kind
    if k == "safety":
        return LOSE if "bad" in stem or "bad" in cycle else WIN
    if k == "immvar":
        word = stem + cycle
        return WIN if word[0] == "imm" and "bad" not in word else LOSE
    if k == "reach":
        return WIN if "good" in stem or "good" in cycle else LOSE
    if k == "buchi":
        return WIN if "good" in cycle else LOSE
    if k == "cobuchi":
        return LOSE if "bad" in cycle else WIN
    if k == "parity":
        return WIN if max(cycle) % 2 == 0 else LOSE
    if k == "energy":
        if spec.param is None:
            if sum(cycle) > 0:
                return INF
            return _max_prefix(stem + cycle)
        return _backward_sup([_weight_map(t) for t in stem], [_weight_map(t) for t in cycle], spec.param)
    if k == "backsup":
        return _backward_sup(stem, cycle, spec.param)
    if k == "bounded":
        return _bounded(stem, cycle, spec.param)
    if k == "product":
        f1, f2 = spec.factors
        cyc2 = tuple(c for c in cycle if f2.accepts(c))
        if cyc2:
            return _eval(f2, tuple(c for c in stem if f2.accepts(c)), cyc2)
        return _eval(f1, tuple(c for c in stem if f1.accepts(c)), cycle)
    if k == "rename":
        back = {new: old for new, old in spec.renaming}
        return _eval(spec.factors[0], tuple(back[c] for c in stem), tuple(back[c] for c in cycle))
    raise SpecError(f"no lasso evaluator for {k!r}")


def _best_continuation(spec, u):
    """Infimum of ``val(u x)`` over all continuations ``x``."""
    k = spec.kind
    if k == "safety":
        return LOSE if "bad" in u else WIN
    if k == "immvar":
        if not u:
            return WIN
        return WIN if u[0] == "imm" and "bad" not in u else LOSE
    if k in ("reach", "buchi", "cobuchi", "parity", "product", "rename"):
        # every prefix can still be extended into a winning word
        return WIN
    if k == "energy":
        if spec.param is None:
            return _max_prefix(u)
        return _backward_sup([_weight_map(t) for t in u], None, spec.param)
    if k == "backsup":
        return _backward_sup(u, None, spec.param)
    if k == "bounded":
        n = 0
        for f in u:
            n = f(n)
            if n > spec.param:
                return LOSE
        return WIN
    raise SpecError(f"no continuation rule for {k!r}")


def _max_prefix(word):
    best = total = 0
    for t in word:
        total += t
        best = max(best, total)
    return best


def _weight_map(t):
    return Affine(1, t)


def _backward_sup(stem, cycle, cap):
    """Suffix-capped backward counter value: the supremum of the
    compositions ``f0(f1(...fk(0)))``, or INF as soon as any suffix of the
    word exceeds ``cap``.  ``cycle=None`` ends the word with constant zero."""
    if cycle is None:
        x = 0
    else:
        x = 0
        while True:
            y = x
            for f in reversed(cycle):
                y = f(y)
                if y > cap:
                    return INF
            if y == x:
                break
            x = y
        # the remaining cycle rotations
        y = x
        for f in reversed(cycle):
            y = f(y)
            if y > cap:
                return INF
    for f in reversed(stem):
        x = f(x)
        if x > cap:
            return INF
    return x


def _bounded(stem, cycle, bound):
    n = 0
    for f in stem:
        n = f(n)
        if n > bound:
            return LOSE
    seen = set()
    i = 0
    while (i, n) not in seen:
        seen.add((i, n))
        n = cycle[i](n)
        if n > bound:
            return LOSE
        i = (i + 1) % len(cycle)
    return WIN


# ---------------------------------------------------------------------------
# one-player graph values


def _live(out) -> list:
    """Vertices with an infinite path (everything, for sink-free graphs)."""
    n = len(out)
    alive = [True] * n
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if alive[v] and not any(alive[t] for _, t in out[v]):
                alive[v] = False
                changed = True
    return alive


def _prune(out):
    alive = _live(out)
    return [[(c, t) for c, t in out[v] if alive[t]] if alive[v] else [] for v in range(len(out))], alive


def _reach(out, v) -> set:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for _, t in out[x]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def rho_lassos(out, v) -> Iterator[Lasso]:
    """Lassos from ``v`` whose stem and cycle visit pairwise distinct vertices."""
    path, colors, index = [v], [], {v: 0}

    def dfs(x):
        for c, y in out[x]:
            k = index.get(y)
            if k is not None:
                yield Lasso(tuple(colors[:k]), tuple(colors[k:]) + (c,))
            else:
                index[y] = len(path)
                path.append(y)
                colors.append(c)
                yield from dfs(y)
                path.pop()
                colors.pop()
                del index[y]

    yield from dfs(v)


def all_lassos(out, v, max_stem: int, max_cycle: int) -> Iterator[Lasso]:
    """Every lasso from ``v`` read along a walk of bounded stem and cycle
    length (exponential; reference for small graphs only)."""
    def walks(x, k):
        if k == 0:
            yield (), x
            return
        yield (), x
        for c, y in out[x]:
            for w, end in walks(y, k - 1):
                yield (c,) + w, end

    def exact(x, k):
        if k == 0:
            yield (), x
            return
        for c, y in out[x]:
            for w, end in exact(y, k - 1):
                yield (c,) + w, end

    for stem, mid in walks(v, max_stem):
        for m in range(1, max_cycle + 1):
            for cyc, end in exact(mid, m):
                if end == mid:
                    yield Lasso(stem, cyc)


def simple_cycles(out) -> list:
    """Colored simple cycles as ``(vertex set, color tuple)`` pairs."""
    n = len(out)
    found = []
    for s in range(n):
        path, colors, on = [s], [], {s}

        def dfs(x):
            for c, y in out[x]:
                if y == s:
                    found.append((frozenset(path), tuple(colors) + (c,)))
                elif y > s and y not in on:
                    on.add(y)
                    path.append(y)
                    colors.append(c)
                    dfs(y)
                    path.pop()
                    colors.pop()
                    on.discard(y)

        dfs(s)
    return found


def _counter_maps(spec):
    """Counter view of a capped counter valuation: color -> monotone map."""
    if spec.kind == "energy":
        return lambda c: Affine(1, 0) if c == EPS else Affine(1, c)
    return lambda c: Affine(1, 0) if c == EPS else c


def _backsup_values(out, spec, cap):
    """Explicit state space (vertex, composed value up to cap+1)."""
    n = len(out)
    fmap = _counter_maps(spec)
    over = cap + 1
    states = [set([0]) for _ in range(n)]
    preds = [[] for _ in range(n)]
    for v in range(n):
        for c, t in out[v]:
            preds[t].append((v, fmap(c)))
    queue = deque((v, 0) for v in range(n))
    while queue:
        t, x = queue.popleft()
        for v, f in preds[t]:
            y = min(f(x), over)
            if y not in states[v]:
                states[v].add(y)
                queue.append((v, y))
    overflow = [over in states[v] for v in range(n)]
    values = []
    for v in range(n):
        if any(overflow[x] for x in _reach(out, v)):
            values.append(INF)
        else:
            values.append(max(states[v]))
    return values


def _bounded_values(out, spec):
    bound = spec.param
    fmap = _counter_maps(spec)
    values = []
    for v in range(len(out)):
        seen = {(v, 0)}
        queue = deque(seen)
        lost = False
        while queue and not lost:
            x, k = queue.popleft()
            for c, y in out[x]:
                m = fmap(c)(k)
                if m > bound:
                    lost = True
                    break
                if (y, m) not in seen:
                    seen.add((y, m))
                    queue.append((y, m))
        values.append(LOSE if lost else WIN)
    return values


def _method(spec) -> str:
    if spec.kind in ("backsup", "bounded") or (spec.kind == "energy" and spec.param is not None):
        return "states"
    if spec.prefix_invariant:
        return "cycles"
    return "lassos"


def graph_values_from_out(out, spec: ValuationSpec) -> list:
    out, alive = _prune(out)
    n = len(out)
    method = _method(spec)
    worst = spec.worst
    if method == "states":
        vals = _bounded_values(out, spec) if spec.kind == "bounded" else _backsup_values(out, spec, spec.param)
    elif method == "cycles":
        cyc_vals = [(vs, _eval(spec, (), cols)) for vs, cols in simple_cycles(out)]
        vals = []
        for v in range(n):
            r = _reach(out, v)
            best = spec.bottom
            for vs, val in cyc_vals:
                if val > best and not vs.isdisjoint(r):
                    best = val
                    if best == worst:
                        break
            vals.append(best)
    else:
        vals = []
        for v in range(n):
            best = spec.bottom
            for w in rho_lassos(out, v):
                val = _eval(spec, w.stem, w.cycle)
                if val > best:
                    best = val
                    if best == worst:
                        break
            vals.append(best)
    return [vals[v] if alive[v] else spec.bottom for v in range(n)]


def graph_value(g: ColoredGraph, spec: ValuationSpec, budget: OracleBudget = DEFAULT_BUDGET) -> list:
    """Per-vertex supremum valuation over infinite paths (Adam controls all)."""
    if g.n > budget.max_vertices:
        raise BudgetExceeded(f"graph has {g.n} vertices, budget allows {budget.max_vertices}")
    for _, c, _ in g.edges:
        if not spec.accepts(c):
            raise SpecError(f"color {c!r} outside the alphabet of {spec}")
    return graph_values_from_out(g.out, spec)


def lasso_reference_values(g: ColoredGraph, spec: ValuationSpec, max_stem=None, max_cycle=None) -> list:
    """Maximum of ``eval_lasso`` over *all* bounded lassos (slow cross-check)."""
    max_stem = g.n if max_stem is None else max_stem
    max_cycle = len(g.edges) if max_cycle is None else max_cycle
    out, alive = _prune(g.out)
    vals = []
    for v in range(g.n):
        best = spec.bottom
        if alive[v]:
            for w in all_lassos(out, v, max_stem, max_cycle):
                best = max(best, _eval(spec, w.stem, w.cycle))
        vals.append(best)
    return vals


# ---------------------------------------------------------------------------
# games


@dataclass(frozen=True)
class BruteForceResult:
    values: tuple
    witness: Optional[dict]  # Eve vertex -> (color, target), or None
    strategies: int


def eve_choices(arena: Arena) -> list:
    return [arena.graph.out[v] for v in sorted(arena.eve)]


def strategy_count(arena: Arena) -> int:
    return int(np.prod([len(c) for c in eve_choices(arena)], dtype=object)) if arena.eve else 1


def brute_force_solve(arena: Arena, budget: OracleBudget = DEFAULT_BUDGET) -> BruteForceResult:
    """Pointwise minimum over all single-choice positional strategies of Eve."""
    if arena.n > budget.max_vertices:
        raise BudgetExceeded(f"arena has {arena.n} vertices, budget allows {budget.max_vertices}")
    count = strategy_count(arena)
    if count > budget.strategy_cap:
        raise BudgetExceeded(f"{count} positional strategies exceed the cap {budget.strategy_cap}")
    spec = arena.valuation
    base = list(arena.graph.out)
    eves = sorted(arena.eve)
    results = []
    for pick in itertools.product(*eve_choices(arena)):
        out = list(base)
        for v, e in zip(eves, pick):
            out[v] = (e,)
        results.append((pick, graph_values_from_out(out, spec)))
    best = [min(r[1][v] for r in results) for v in range(arena.n)]
    witness = None
    for pick, vals in results:
        if vals == best:
            witness = dict(zip(eves, pick))
            break
    return BruteForceResult(tuple(best), witness, count)


def choice_edges(x) -> tuple:
    """A strategy entry is one edge ``(color, target)`` or a tuple of them."""
    return tuple(x) if x and isinstance(x[0], tuple) else (tuple(x),)


def strategy_values(arena: Arena, chosen: dict) -> list:
    """Oracle values of the one-player graph left after fixing Eve's edges."""
    out = [choice_edges(chosen[v]) if v in arena.eve else arena.graph.out[v] for v in range(arena.n)]
    return graph_values_from_out(out, arena.valuation)


# ---------------------------------------------------------------------------
# morphisms and universality


@dataclass(frozen=True)
class MorphismResult:
    phi: Optional[tuple]
    preserving: bool
    graph_values: tuple
    image_values: tuple


def find_min_morphism(g: ColoredGraph, L: MonotoneGraph, spec: Optional[ValuationSpec] = None,
                      budget: OracleBudget = DEFAULT_BUDGET) -> MorphismResult:
    """Pointwise-least morphism of ``g`` into ``L`` and whether it preserves values.

    ``phi`` is None when the least map has to use the top rank on a vertex
    whose value is finite (no value-preserving morphism exists)."""
    from .solver import least_progress_measure

    spec = spec if spec is not None else L.spec
    phi = least_progress_measure(graph_as_arena(g, spec), L)
    gv = tuple(graph_value(g, spec, budget))
    iv = tuple(L.value(r) for r in phi)
    ok = gv == iv
    return MorphismResult(phi if ok else None, ok, gv, iv)


def _least_core_morphism(g: ColoredGraph, L: MonotoneGraph, spec) -> Optional[tuple]:
    from .solver import least_progress_measure

    phi = least_progress_measure(graph_as_arena(g, spec), L)
    return None if any(r == L.top for r in phi) else phi


def _perm_tables(n, k):
    """For each vertex permutation, the slot permutation of the edge bitmask."""
    tables = []
    for p in itertools.permutations(range(n)):
        tables.append([(p[s] * k + ci) * n + p[t] for s in range(n) for ci in range(k) for t in range(n)])
    return tables


def enumerate_graphs(n: int, colors: Sequence, up_to_iso: bool = True) -> Iterator[ColoredGraph]:
    """All sink-free graphs on ``n`` vertices over ``colors``."""
    k = len(colors)
    slots = n * k * n
    if slots > 24:
        raise BudgetExceeded(f"{slots} edge slots is too many for exhaustive enumeration")
    masks = np.arange(1 << slots, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(slots, dtype=np.int64)) & 1
    per_vertex = bits.reshape(-1, n, k * n).any(axis=2)
    keep = per_vertex.all(axis=1)
    masks, bits = masks[keep], bits[keep]
    if up_to_iso and n > 1:
        weights = np.int64(1) << np.arange(slots, dtype=np.int64)
        canon = masks.copy()
        for table in _perm_tables(n, k):
            perm_mask = np.zeros_like(masks)
            perm_mask += (bits * weights[table]).sum(axis=1)
            canon = np.minimum(canon, perm_mask)
        sel = canon == masks
        masks, bits = masks[sel], bits[sel]
    for row in bits:
        edges = []
        for slot in np.flatnonzero(row):
            s, rest = divmod(int(slot), k * n)
            ci, t = divmod(rest, n)
            edges.append((s, colors[ci], t))
        yield ColoredGraph(n, tuple(edges))


def random_graph(rng: random.Random, n: int, colors: Sequence, max_out: int = 3) -> ColoredGraph:
    edges = []
    for v in range(n):
        for _ in range(rng.randint(1, max_out)):
            edges.append((v, rng.choice(colors), rng.randrange(n)))
    return ColoredGraph(n, tuple(edges))


@dataclass(frozen=True)
class UniversalityReport:
    passed: bool
    checked: int
    skipped: int
    counterexample: Optional[ColoredGraph]
    mode: str
    detail: str = ""


def universality_check(L: MonotoneGraph, spec: ValuationSpec, budget: OracleBudget = DEFAULT_BUDGET,
                       mode: str = "A", colors: Optional[Sequence] = None, seed: int = 0,
                       exhaustive: Optional[bool] = None) -> UniversalityReport:
    """Search for a graph with no value-preserving morphism into ``L``.

    Mode A checks the least morphism into the completed graph; mode B (for
    prefix-increasing objectives) only looks at graphs satisfying the
    objective and asks for a morphism avoiding the top rank."""
    if mode not in ("A", "B"):
        raise ValueError("mode is 'A' or 'B'")
    if mode == "B" and not (spec.qualitative and spec.prefix_increasing):
        raise ValueError("mode B needs a prefix-increasing objective")
    colors = tuple(colors) if colors is not None else spec.palette()
    if exhaustive is None:
        exhaustive = budget.max_vertices <= 3 and len(colors) <= 2

    def graphs():
        if exhaustive:
            for n in range(1, budget.max_vertices + 1):
                yield from enumerate_graphs(n, colors)
        else:
            rng = random.Random(seed)
            for _ in range(budget.sample_count):
                yield random_graph(rng, rng.randint(1, budget.max_vertices), colors)

    checked = skipped = 0
    for g in graphs():
        vals = graph_values_from_out(g.out, spec)
        if mode == "B":
            if any(x != WIN for x in vals):
                skipped += 1
                continue
            checked += 1
            if _least_core_morphism(g, L, spec) is None:
                return UniversalityReport(False, checked, skipped, g, mode, "no morphism into the core")
        else:
            checked += 1
            from .solver import least_progress_measure

            phi = least_progress_measure(graph_as_arena(g, spec), L)
            if any(L.value(r) != x for r, x in zip(phi, vals)):
                return UniversalityReport(False, checked, skipped, g, mode, "least morphism loses values")
    return UniversalityReport(True, checked, skipped, None, mode)
