"""Colored graphs, arenas, lassos and the game-file format."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .valuations import SpecError, ValuationSpec, format_spec, parse_color, parse_spec

EVE, ADAM = "Eve", "Adam"


@dataclass(frozen=True)
class ColoredGraph:
    """Finite directed graph whose edges are (source, color, target) triples.

    Vertices are the integers ``0..n-1``; ``names`` is an optional display
    table.  Duplicate edges are dropped, first occurrence order is kept.
    """

    n: int
    edges: tuple
    names: Optional[tuple] = None
    pregraph: bool = False

    def __post_init__(self):
        seen = dict.fromkeys((int(s), c, int(t)) for s, c, t in self.edges)
        object.__setattr__(self, "edges", tuple(seen))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))

    @cached_property
    def out(self) -> tuple:
        adj = [[] for _ in range(self.n)]
        for s, c, t in self.edges:
            adj[s].append((c, t))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @property
    def colors(self) -> tuple:
        return tuple(dict.fromkeys(c for _, c, _ in self.edges))

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def has_edge(self, s, c, t) -> bool:
        return (s, c, t) in self.edge_set


@dataclass(frozen=True)
class Arena:
    graph: ColoredGraph
    eve: frozenset
    valuation: ValuationSpec

    def __post_init__(self):
        object.__setattr__(self, "eve", frozenset(self.eve))
        bad = [v for v in self.eve if not 0 <= v < self.graph.n]
        if bad:
            raise ValueError(f"Eve vertices outside the graph: {bad}")

    @property
    def n(self) -> int:
        return self.graph.n

    def is_eve(self, v: int) -> bool:
        return v in self.eve


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic word ``stem . cycle^omega``."""

    stem: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    def prefix(self, k: int) -> tuple:
        out = list(self.stem[:k])
        i = 0
        while len(out) < k:
            out.append(self.cycle[i % len(self.cycle)])
            i += 1
        return tuple(out)


def validate_graph(g: ColoredGraph) -> list:
    """Return human-readable violations; empty when ``g`` is legal."""
    problems = []
    for s, c, t in g.edges:
        if not (0 <= s < g.n and 0 <= t < g.n):
            problems.append(f"edge out of range: {s} {c} {t}")
    if not g.pregraph:
        for v in range(g.n):
            if not g.out[v]:
                problems.append(f"sink at {g.name(v)}")
    return problems


def check_morphism(g: ColoredGraph, h: ColoredGraph, phi: Sequence[int]) -> bool:
    """True iff every edge ``v -c-> v'`` of g has ``phi(v) -c-> phi(v')`` in h."""
    if len(phi) != g.n:
        raise ValueError(f"map covers {len(phi)} vertices, source has {g.n}")
    if any(not 0 <= x < h.n for x in phi):
        raise ValueError("map leaves the target vertex set")
    es = h.edge_set
    return all((phi[s], c, phi[t]) in es for s, c, t in g.edges)


def compose(phi: Sequence[int], psi: Sequence[int]) -> tuple:
    """``psi after phi``."""
    return tuple(psi[x] for x in phi)


def induced_subgraph(g: ColoredGraph, keep: Sequence[bool]) -> tuple:
    """Restriction to kept vertices as a pregraph plus the old->new index map."""
    index = {}
    for v in range(g.n):
        if keep[v]:
            index[v] = len(index)
    edges = [(index[s], c, index[t]) for s, c, t in g.edges if s in index and t in index]
    names = [g.name(v) for v in index]
    return ColoredGraph(len(index), tuple(edges), tuple(names), pregraph=True), index


def disjoint_union(graphs: Sequence[ColoredGraph]) -> ColoredGraph:
    edges, names, off = [], [], 0
    for k, g in enumerate(graphs):
        edges.extend((s + off, c, t + off) for s, c, t in g.edges)
        names.extend(f"g{k}.{g.name(v)}" for v in range(g.n))
        off += g.n
    return ColoredGraph(off, tuple(edges), tuple(names))


# ---------------------------------------------------------------------------
# game files


class GameFormatError(ValueError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def parse_arena(text: str) -> Arena:
    spec = None
    names, owner, edges = [], {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        try:
            if head == "val":
                if len(parts) != 2:
                    raise GameFormatError("expected 'val <spec>'", lineno)
                if spec is not None:
                    raise GameFormatError("duplicate val header", lineno)
                spec = parse_spec(parts[1])
            elif head == "v":
                if len(parts) != 3 or parts[2] not in (EVE, ADAM):
                    raise GameFormatError("expected 'v <id> <Eve|Adam>'", lineno)
                if parts[1] in owner:
                    raise GameFormatError(f"duplicate vertex id {parts[1]}", lineno)
                owner[parts[1]] = parts[2]
                names.append(parts[1])
            elif head == "edge":
                if len(parts) != 4:
                    raise GameFormatError("expected 'edge <src> <color> <dst>'", lineno)
                if spec is None:
                    raise GameFormatError("edge before the val header", lineno)
                s, lex, t = parts[1:]
                for x in (s, t):
                    if x not in owner:
                        raise GameFormatError(f"undeclared vertex {x}", lineno)
                edges.append((s, parse_color(lex, spec), t))
            else:
                raise GameFormatError(f"unknown directive {head!r}", lineno)
        except SpecError as e:
            raise GameFormatError(str(e), lineno) from None
    if spec is None:
        raise GameFormatError("missing 'val <spec>' header")
    index = {name: i for i, name in enumerate(names)}
    g = ColoredGraph(len(names), tuple((index[s], c, index[t]) for s, c, t in edges), tuple(names))
    problems = validate_graph(g)
    if problems:
        raise GameFormatError("; ".join(problems))
    return Arena(g, frozenset(index[x] for x in names if owner[x] == EVE), spec)


def serialize_arena(a: Arena) -> str:
    g = a.graph
    lines = [f"val {format_spec(a.valuation)}"]
    lines += [f"v {g.name(v)} {EVE if v in a.eve else ADAM}" for v in range(g.n)]
    lines += [f"edge {g.name(s)} {c} {g.name(t)}" for s, c, t in g.edges]
    return "\n".join(lines) + "\n"


def graph_as_arena(g: ColoredGraph, spec: ValuationSpec, eve=()) -> Arena:
    if g.names is None:
        g = ColoredGraph(g.n, g.edges, tuple(f"v{i}" for i in range(g.n)), g.pregraph)
    return Arena(g, frozenset(eve), spec)
