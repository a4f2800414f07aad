"""Seeded random arenas and graphs for each built-in objective."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .graphs import Arena, ColoredGraph
from .valuations import COUNTER_PALETTE, EPS, ValuationSpec


@dataclass(frozen=True)
class GenConfig:
    max_vertices: int = 5
    max_out: int = 3
    weight_range: tuple = (-2, 2)
    priority_range: tuple = (2, 5)
    eps_rate: float = 0.0  # chance of an eps edge, only for eps-extended specs


def palette_for(spec: ValuationSpec, cfg: GenConfig = GenConfig()) -> tuple:
    k = spec.kind
    if k == "energy":
        lo, hi = cfg.weight_range
        return tuple(range(lo, hi + 1))
    if k == "parity":
        lo, hi = cfg.priority_range
        return tuple(p for p in range(lo, hi + 1) if p <= 2 * spec.param + 1)
    if k in ("backsup", "bounded"):
        return COUNTER_PALETTE
    return tuple(c for c in spec.palette() if c != EPS)


def random_graph(rng: random.Random, spec: ValuationSpec, n: Optional[int] = None,
                 cfg: GenConfig = GenConfig()) -> ColoredGraph:
    n = n if n is not None else rng.randint(1, cfg.max_vertices)
    colors = palette_for(spec, cfg)
    edges = []
    for v in range(n):
        for _ in range(rng.randint(1, cfg.max_out)):
            c = EPS if spec.eps and rng.random() < cfg.eps_rate else rng.choice(colors)
            edges.append((v, c, rng.randrange(n)))
    return ColoredGraph(n, tuple(edges), tuple(f"v{i}" for i in range(n)))


def random_arena(rng: random.Random, spec: ValuationSpec, n: Optional[int] = None,
                 cfg: GenConfig = GenConfig()) -> Arena:
    g = random_graph(rng, spec, n, cfg)
    eve = frozenset(v for v in range(g.n) if rng.random() < 0.5)
    return Arena(g, eve, spec)


def arenas(spec: ValuationSpec, count: int, seed: int = 0, cfg: GenConfig = GenConfig()):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_arena(rng, spec, cfg=cfg)


def _start_dependent(w):
    word = w.prefix(2)
    return 0 if word in (("c1", "p"), ("c2", "q")) else 1


START_DEPENDENT = ValuationSpec("custom", evaluator=_start_dependent)


def start_dependent_arena() -> Arena:
    """Eve's best move at ``x`` depends on where the play started, so no single
    positional strategy is optimal from every vertex."""
    names = ("s1", "s2", "x", "z")
    edges = ((0, "c1", 2), (1, "c2", 2), (2, "p", 3), (2, "q", 3), (3, "z", 3))
    return Arena(ColoredGraph(4, edges, names), frozenset({2}), START_DEPENDENT)
