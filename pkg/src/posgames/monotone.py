"""Completely well-monotonic graphs stored as min-predecessor tables.

A graph with ``size`` core ranks has ranks ``0..size`` where ``size`` is the
top.  For every color ``c`` the table ``rho_c`` maps a target rank to the
least rank having a ``c``-edge into it; the edge relation is recovered as
``r -c-> r'  iff  r >= rho_c(r')``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .graphs import ColoredGraph
from .valuations import EPS, INF, LOSE, WIN, SpecError, ValuationSpec, color_str, format_value, parse_color

Rule = Callable[[object], Sequence]


@dataclass(frozen=True, eq=False)
class CoreGraph:
    """Well-monotonic graph before completion; tables may hold ``None``
    where a rank has no predecessor."""

    size: int
    rule: Rule
    values: tuple
    labels: tuple
    accepts: Callable[[object], bool]
    palette: tuple = ()
    spec: Optional[ValuationSpec] = None


@dataclass(frozen=True, eq=False)
class MonotoneGraph:
    size: int
    rule: Rule
    values: tuple
    labels: tuple
    accepts: Callable[[object], bool]
    palette: tuple = ()
    spec: Optional[ValuationSpec] = None
    _tables: dict = field(default_factory=dict, repr=False)

    @property
    def top(self) -> int:
        return self.size

    @property
    def ranks(self) -> range:
        return range(self.size + 1)

    def table(self, c) -> tuple:
        t = self._tables.get(c)
        if t is None:
            if not self.accepts(c):
                raise KeyError(f"color {c!r} is not in the alphabet of this graph")
            t = tuple(self.rule(c))
            if len(t) != self.size + 1:
                raise ValueError(f"table for {c!r} has {len(t)} entries, expected {self.size + 1}")
            self._tables[c] = t
        return t

    def rho(self, c, r: int) -> int:
        return self.table(c)[r]

    def value(self, r: int):
        return self.values[r]

    def has_edge(self, r: int, c, r2: int) -> bool:
        return r >= self.table(c)[r2]

    def as_core(self) -> CoreGraph:
        return CoreGraph(self.size + 1, self.table, self.values, self.labels, self.accepts, self.palette, self.spec)


def from_tables(tables: dict, values: Sequence, labels: Optional[Sequence] = None, spec=None) -> MonotoneGraph:
    tables = {c: tuple(t) for c, t in tables.items()}
    size = len(values) - 1
    labels = tuple(labels) if labels is not None else tuple(map(str, range(size))) + ("top",)
    return MonotoneGraph(size, tables.__getitem__, tuple(values), labels, tables.__contains__, tuple(tables), spec)


def complete(core) -> MonotoneGraph:
    """Add a fresh top with every outgoing edge; missing predecessors become top."""
    if isinstance(core, MonotoneGraph):
        core = core.as_core()
    n = core.size
    rule = core.rule

    def completed(c):
        return [n if r is None else r for r in rule(c)] + [n]

    spec = core.spec
    worst = spec.worst if spec is not None else (INF if any(v not in (WIN, LOSE) for v in core.values) else LOSE)
    return MonotoneGraph(n, completed, tuple(core.values) + (worst,), tuple(core.labels) + ("top",),
                         core.accepts, core.palette, spec)


def with_eps(g: MonotoneGraph) -> MonotoneGraph:
    """Extend the alphabet with a neutral color whose table is the identity."""
    ident = tuple(g.ranks)
    rule, accepts = g.rule, g.accepts
    return MonotoneGraph(g.size, lambda c: ident if c == EPS else rule(c), g.values, g.labels,
                         lambda c: c == EPS or accepts(c), g.palette + (EPS,), g.spec)


# ---------------------------------------------------------------------------
# builders


def _qual_core(n, rules, spec, labels=None):
    def rule(c):
        return rules[c]

    return CoreGraph(n, rule, (WIN,) * n, tuple(labels or map(str, range(n))), rules.__contains__,
                     tuple(rules), spec)


def safety_core(spec=None) -> CoreGraph:
    return _qual_core(1, {"safe": [0], "bad": [None]}, spec or ValuationSpec("safety"))


def immvar_graph(spec=None) -> MonotoneGraph:
    # ranks: 0 = wins, 1 = never bad but not immediately imm, 2 = top (bad reachable)
    tables = {"imm": (0, 0, 2), "safe": (1, 1, 2), "bad": (2, 2, 2)}
    return from_tables(tables, (WIN, LOSE, LOSE), ("0", "1", "top"), spec or ValuationSpec("immvar"))


def reach_graph(alpha: int, spec=None) -> MonotoneGraph:
    tables = {"wait": tuple(min(r + 1, alpha) for r in range(alpha + 1)), "good": (0,) * (alpha + 1)}
    labels = tuple(map(str, range(alpha + 1)))
    return from_tables(tables, (WIN,) * alpha + (LOSE,), labels, spec or ValuationSpec("reach"))


def buchi_core(alpha: int, spec=None) -> CoreGraph:
    rules = {"good": [0] * alpha, "wait": [r + 1 if r + 1 < alpha else None for r in range(alpha)]}
    return _qual_core(alpha, rules, spec or ValuationSpec("buchi"))


def cobuchi_core(alpha: int, spec=None) -> CoreGraph:
    rules = {"safe": list(range(alpha)), "bad": [r + 1 if r + 1 < alpha else None for r in range(alpha)]}
    return _qual_core(alpha, rules, spec or ValuationSpec("cobuchi"))


def _counter_core(cap, fn, accepts, palette, spec):
    def rule(c):
        out = []
        for r in range(cap + 1):
            x = fn(c, r)
            out.append(x if x <= cap else None)
        return out

    return CoreGraph(cap + 1, rule, tuple(range(cap + 1)), tuple(map(str, range(cap + 1))), accepts, palette, spec)


def energy_core(cap: int, spec=None) -> CoreGraph:
    spec = spec or ValuationSpec("energy", cap)
    palette = tuple(range(-(cap + 1), cap + 2))
    return _counter_core(cap, lambda t, r: max(0, r + t), spec.accepts, palette, spec)


def backsup_core(cap: int, spec=None) -> CoreGraph:
    spec = spec or ValuationSpec("backsup", cap)
    return _counter_core(cap, lambda f, r: f(r), spec.accepts, spec.palette(), spec)


def bounded_core(bound: int, spec=None) -> CoreGraph:
    """Ranks list counter values from ``bound`` (rank 0, best) down to 0."""
    spec = spec or ValuationSpec("bounded", bound)

    def rule(f):
        out = []
        for r in range(bound + 1):
            target = bound - r
            preds = [x for x in range(bound + 1) if f(x) <= target]
            out.append(bound - max(preds) if preds else None)
        return out

    labels = tuple(f"counter {bound - r}" for r in range(bound + 1))
    return CoreGraph(bound + 1, rule, (WIN,) * (bound + 1), labels, spec.accepts, spec.palette(), spec)


def build(spec: ValuationSpec, levels: int = 4) -> MonotoneGraph:
    """Completed monotonic graph for ``spec``.

    ``levels`` is the ordinal budget (alpha) for reachability, Buchi,
    co-Buchi and each parity/product factor, and ``cap + 1`` for an energy
    spec without its own cap.  Counter specs carry their bound.
    """
    if levels < 1:
        raise SpecError("level budget must be >= 1")
    base = spec.with_eps(False)
    k = spec.kind
    if k == "safety":
        g = complete(safety_core(base))
    elif k == "immvar":
        g = immvar_graph(base)
    elif k == "reach":
        g = reach_graph(levels, base)
    elif k == "buchi":
        g = complete(buchi_core(levels, base))
    elif k == "cobuchi":
        g = complete(cobuchi_core(levels, base))
    elif k == "energy":
        g = complete(energy_core(spec.param if spec.param is not None else levels - 1, base))
    elif k == "backsup":
        g = complete(backsup_core(spec.param, base))
    elif k == "bounded":
        g = complete(bounded_core(spec.param, base))
    elif k == "parity":
        from .products import parity_graph
        g = parity_graph(spec.param, levels)
    elif k == "product":
        from .products import lex_product_graphs
        g = lex_product_graphs(build(spec.factors[0], levels), build(spec.factors[1], levels))
    elif k == "rename":
        from .products import rename_graph
        g = rename_graph(build(spec.factors[0], levels), {old: new for new, old in spec.renaming})
    else:
        raise SpecError(f"no monotonic graph construction for {k!r}")
    g = MonotoneGraph(g.size, g.rule, g.values, g.labels, g.accepts, g.palette, base)
    if spec.eps:
        g = with_eps(g)
        g = MonotoneGraph(g.size, g.rule, g.values, g.labels, g.accepts, g.palette, spec)
    return g


def level_value(g: MonotoneGraph, r: int):
    return g.values[r]


# ---------------------------------------------------------------------------
# checks


def edges_from_table(g: MonotoneGraph, colors: Optional[Sequence] = None) -> ColoredGraph:
    """Explicit edge relation ``{(r, c, r') | r >= rho_c(r')}`` over ``colors``."""
    colors = g.palette if colors is None else tuple(colors)
    edges = []
    for c in colors:
        t = g.table(c)
        for r2 in g.ranks:
            edges.extend((r, c, r2) for r in range(t[r2], g.size + 1))
    edges.sort(key=lambda e: (e[0], color_str(e[1]), e[2]))
    return ColoredGraph(g.size + 1, tuple(edges), g.labels)


def _matrices(g: ColoredGraph) -> dict:
    mats = {}
    for s, c, t in g.edges:
        m = mats.get(c)
        if m is None:
            m = mats[c] = np.zeros((g.n, g.n), dtype=bool)
        m[s, t] = True
    return mats


def check_axioms(g: ColoredGraph) -> bool:
    """Left- and right-composition with vertex index as the linear order."""
    n = g.n
    ge = np.greater_equal.outer(np.arange(n), np.arange(n))  # ge[a, b] = a >= b
    for m in _matrices(g).values():
        # left: l >= l' and l' -c-> l''  =>  l -c-> l''
        left = (ge[:, :, None] & m[None, :, :]).any(axis=1)
        # right: l -c-> l' and l' >= l''  =>  l -c-> l''
        right = (m[:, :, None] & ge[None, :, :]).any(axis=1)
        if (left & ~m).any() or (right & ~m).any():
            return False
    return True


def check_tables(g: MonotoneGraph, colors: Optional[Sequence] = None) -> list:
    """Violations of table monotonicity and value monotonicity."""
    colors = g.palette if colors is None else colors
    problems = []
    for c in colors:
        t = g.table(c)
        if any(t[i] > t[i + 1] for i in range(g.size)):
            problems.append(f"rho_{c} not monotone: {t}")
        if any(not 0 <= x <= g.size for x in t):
            problems.append(f"rho_{c} leaves the rank set: {t}")
    v = g.values
    if any(v[i] > v[i + 1] for i in range(g.size)):
        problems.append(f"level values not monotone: {v}")
    return problems


def top_absorbs(g: MonotoneGraph, colors: Optional[Sequence] = None) -> bool:
    colors = g.palette if colors is None else colors
    return all(g.rho(c, g.top) == g.top for c in colors)


# ---------------------------------------------------------------------------
# text dump / DOT


def dump(g: MonotoneGraph, colors: Optional[Sequence] = None) -> str:
    colors = g.palette if colors is None else colors
    spec = g.spec
    lines = []
    if spec is not None:
        lines.append(f"# spec {spec}")
    for r in g.ranks:
        v = format_value(spec, g.values[r]) if spec is not None else str(g.values[r])
        lines.append(f"rank {r} value {v} label {g.labels[r].replace(' ', '_')}")
    for c in colors:
        t = g.table(c)
        lines.extend(f"rho {c} {r2} -> {t[r2]}" for r2 in g.ranks)
    return "\n".join(lines) + "\n"


def _read_value(tok: str):
    if tok == "win":
        return WIN
    if tok == "lose":
        return LOSE
    if tok == "inf":
        return INF
    return int(tok)


def parse_dump(text: str) -> MonotoneGraph:
    from .valuations import parse_spec

    spec, values, labels, tables = None, {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("# spec "):
            spec = parse_spec(line[len("# spec "):])
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        p = line.split()
        try:
            if p[0] == "rank" and len(p) == 6 and p[2] == "value" and p[4] == "label":
                r = int(p[1])
                values[r] = _read_value(p[3])
                labels[r] = p[5]
            elif p[0] == "rho" and len(p) == 5 and p[3] == "->":
                c = parse_color(p[1], spec) if spec is not None else _loose_color(p[1])
                tables.setdefault(c, {})[int(p[2])] = int(p[4])
            else:
                raise ValueError("unrecognised line")
        except (ValueError, IndexError) as e:
            raise ValueError(f"line {lineno}: {e}") from None
    n = len(values)
    if sorted(values) != list(range(n)):
        raise ValueError("ranks must be 0..top without gaps")
    full = {}
    for c, t in tables.items():
        if sorted(t) != list(range(n)):
            raise ValueError(f"incomplete table for color {c}")
        full[c] = [t[r] for r in range(n)]
    return from_tables(full, [values[r] for r in range(n)], [labels[r] for r in range(n)], spec)


def _loose_color(lex: str):
    from .valuations import Affine
    import re

    if re.fullmatch(r"[+-]?\d+", lex):
        return int(lex)
    m = re.fullmatch(r"f:(\d+),([+-]?\d+)", lex)
    if m:
        return Affine(int(m.group(1)), int(m.group(2)))
    return lex


def to_dot(g: MonotoneGraph, colors: Optional[Sequence] = None, reduced: bool = True) -> str:
    """DOT rendering; ``reduced`` keeps only min-predecessor edges."""
    colors = g.palette if colors is None else colors
    lines = ["digraph monotone {", "  rankdir=LR;"]
    for r in g.ranks:
        lines.append(f'  r{r} [label="{g.labels[r]}"];')
    if reduced:
        for c in colors:
            t = g.table(c)
            lines.extend(f'  r{t[r2]} -> r{r2} [label="{c}"];' for r2 in g.ranks)
    else:
        for s, c, t in edges_from_table(g, colors).edges:
            lines.append(f'  r{s} -> r{t} [label="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
