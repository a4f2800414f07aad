"""Structurate a disjoint union of small graphs and test the result for universality.

Default union: every 1-vertex graph over wait/good/eps plus the wait-good 2-cycle,
checked against every graph on at most ``check_vertices`` vertices."""
import argparse
from dataclasses import dataclass, fields

from posgames.graphs import ColoredGraph, disjoint_union
from posgames.monotone import dump
from posgames.oracle import OracleBudget, enumerate_graphs, universality_check
from posgames.structuration import structurate
from posgames.valuations import parse_spec


@dataclass
class Config:
    spec: str = "buchi+eps"
    with_chain: bool = True
    check_vertices: int = 2
    show_graph: bool = False


def main(cfg: Config):
    spec = parse_spec(cfg.spec)
    colors = tuple(c for c in spec.palette())
    parts = list(enumerate_graphs(1, colors))
    if cfg.with_chain:
        parts.append(ColoredGraph(2, ((0, "wait", 1), (1, "good", 0))))
    union = disjoint_union(parts)
    res = structurate(union, spec, witness="solver", max_vertices=union.n)
    print(f"union of {len(parts)} graphs, {union.n} vertices -> {res.graph.size} levels + top")
    if cfg.show_graph:
        print(dump(res.graph), end="")
    rep = universality_check(res.graph, spec, OracleBudget(max_vertices=cfg.check_vertices), mode="A",
                             colors=colors, exhaustive=True)
    print(f"universal for <= {cfg.check_vertices} vertices: {rep.passed} ({rep.checked} graphs)")
    if rep.counterexample is not None:
        print("counterexample edges:", rep.counterexample.edges)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        kind = (lambda s: s.lower() in ("1", "true", "yes")) if isinstance(f.default, bool) else type(f.default)
        p.add_argument("--" + f.name.replace("_", "-"), type=kind, default=f.default)
    main(Config(**vars(p.parse_args())))
