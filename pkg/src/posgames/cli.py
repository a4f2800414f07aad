"""Command-line front end.

Exit status: 0 success, 1 a check failed, 2 usage or input error.
Every flag may also come from the environment as ``POSGAMES_<FLAG>``
(e.g. ``POSGAMES_LEVELS=6``); explicit flags win.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .graphs import Arena, GameFormatError, parse_arena, serialize_arena
from .monotone import build, check_axioms, check_tables, dump, edges_from_table, parse_dump, to_dot
from .oracle import BudgetExceeded, OracleBudget, brute_force_solve, universality_check
from .products import lex_product_graphs
from .solver import graph_for, solve
from .structuration import StructurationError, structurate
from .valuations import SpecError, ValuationSpec, color_str, format_value, parse_spec

ENV_PREFIX = "POSGAMES_"
ENV_NAMES = {"fmt": "format"}
COMMANDS = ("solve", "oracle", "check-monotone", "check-universal", "product", "structurate")


class UsageError(Exception):
    pass


@dataclass
class Command:
    name: str
    input: Optional[str]
    spec: Optional[str]
    levels: Optional[int]
    max_vertices: Optional[int]
    max_cycle: Optional[int]
    samples: int
    seed: int
    fmt: str
    mode: Optional[str] = None
    out: Optional[str] = None
    witness: str = "oracle"

    @property
    def budget(self) -> OracleBudget:
        default = 3 if self.name == "check-universal" else 8
        return OracleBudget(max_vertices=self.max_vertices or default, max_cycle_len=self.max_cycle,
                            sample_count=self.samples)


def _env(name, default, conv=str):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return default
    try:
        return conv(raw)
    except ValueError:
        raise UsageError(f"bad value {raw!r} in {ENV_PREFIX}{name.upper()}") from None


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="posgames", description="Solve games through monotonic graphs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="game file (solve, oracle, structurate) or graph dump (check-monotone)")
    p.add_argument("--spec", help="objective, e.g. buchi, parity:2, energy:5, product(buchi,parity:1), safety+eps")
    p.add_argument("--levels", type=int, help="ordinal budget of the monotonic graph")
    p.add_argument("--max-vertices", type=int, dest="max_vertices")
    p.add_argument("--max-cycle", type=int, dest="max_cycle")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", dest="fmt", choices=("text", "json", "dot"))
    p.add_argument("--mode", choices=("A", "B"), help="universality mode (default B when applicable)")
    p.add_argument("--out", help="where check-universal writes a counterexample")
    p.add_argument("--witness", choices=("oracle", "solver", "solver-all"), help="structurate: how the powerset strategy is found")
    return p


def to_command(ns) -> Command:
    def pick(name, default, conv=str):
        v = getattr(ns, name)
        return v if v is not None else _env(ENV_NAMES.get(name, name), default, conv)

    return Command(ns.command, ns.input, pick("spec", None), pick("levels", None, int),
                   pick("max_vertices", None, int), pick("max_cycle", None, int), pick("samples", 2000, int),
                   pick("seed", 0, int), pick("fmt", "text"), pick("mode", None), pick("out", None),
                   pick("witness", "oracle"))


# ---------------------------------------------------------------------------


def _read(path) -> str:
    if path is None:
        raise UsageError("missing input file")
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _arena(cmd) -> Arena:
    arena = parse_arena(_read(cmd.input))
    if cmd.spec is not None:
        spec = parse_spec(cmd.spec)
        if spec != arena.valuation:
            raise UsageError(f"--spec {spec} disagrees with the file header {arena.valuation}")
    return arena


def _spec(cmd) -> ValuationSpec:
    if cmd.spec is None:
        raise UsageError(f"{cmd.name} needs --spec")
    return parse_spec(cmd.spec)


def _emit(cmd, payload: dict, text: str, dot: Optional[str] = None):
    if cmd.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif cmd.fmt == "dot":
        if dot is None:
            raise UsageError(f"{cmd.name} has no DOT output")
        print(dot, end="")
    else:
        print(text, end="")


def _arena_dot(arena: Arena, keep=None) -> str:
    g = arena.graph
    lines = ["digraph arena {"]
    for v in range(g.n):
        shape = "circle" if v in arena.eve else "box"
        lines.append(f'  "{g.name(v)}" [shape={shape}];')
    for s, c, t in g.edges:
        bold = keep is not None and s in keep and (c, t) in keep[s]
        style = ", style=bold" if bold else ""
        lines.append(f'  "{g.name(s)}" -> "{g.name(t)}" [label="{color_str(c)}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_solve(cmd) -> int:
    arena = _arena(cmd)
    L = build(arena.valuation, cmd.levels) if cmd.levels else graph_for(arena)
    res = solve(arena, L)
    records = res.records(arena)
    strat = res.strategy_edges(arena)
    text = "".join(f"{r['id']} value {r['value']} rank {r['rank']}\n" for r in records)
    text += "".join(f"strategy {s} {c} {t}\n" for s, c, t in strat)
    payload = {"spec": str(arena.valuation), "levels": L.size, "vertices": records,
               "strategy": [list(e) for e in strat]}
    _emit(cmd, payload, text, _arena_dot(arena, res.strategy.chosen))
    return 0


def cmd_oracle(cmd) -> int:
    arena = _arena(cmd)
    res = brute_force_solve(arena, cmd.budget)
    g, spec = arena.graph, arena.valuation
    vals = [{"id": g.name(v), "value": format_value(spec, res.values[v])} for v in range(g.n)]
    wit = None if res.witness is None else [[g.name(v), color_str(c), g.name(t)] for v, (c, t) in res.witness.items()]
    text = "".join(f"{r['id']} value {r['value']}\n" for r in vals)
    text += "no uniform positional witness\n" if wit is None else "".join(f"witness {s} {c} {t}\n" for s, c, t in wit)
    _emit(cmd, {"spec": str(spec), "vertices": vals, "witness": wit, "strategies": res.strategies}, text)
    return 0 if wit is not None else 1


def cmd_check_monotone(cmd) -> int:
    if cmd.input is not None:
        L = parse_dump(_read(cmd.input))
    else:
        L = build(_spec(cmd), cmd.levels or 4)
    problems = check_tables(L)
    axioms = check_axioms(edges_from_table(L))
    if not axioms:
        problems.append("edge relation violates left/right composition")
    text = "ok\n" if not problems else "".join(f"violation: {p}\n" for p in problems)
    _emit(cmd, {"ok": not problems, "violations": problems, "ranks": L.size + 1}, text, to_dot(L))
    return 0 if not problems else 1


def cmd_check_universal(cmd) -> int:
    spec = _spec(cmd)
    levels = cmd.levels or 4
    mode = cmd.mode or ("B" if spec.qualitative and spec.prefix_increasing else "A")
    rep = universality_check(build(spec, levels), spec, cmd.budget, mode=mode, seed=cmd.seed)
    payload = {"spec": str(spec), "levels": levels, "mode": mode, "passed": rep.passed,
               "checked": rep.checked, "skipped": rep.skipped, "counterexample": None}
    text = f"{'universal' if rep.passed else 'NOT universal'}: {rep.checked} graphs checked, {rep.skipped} skipped\n"
    if rep.counterexample is not None:
        game = serialize_arena(Arena(_named(rep.counterexample), frozenset(), spec))
        payload["counterexample"] = game
        if cmd.out:
            Path(cmd.out).write_text(game)
            text += f"counterexample ({rep.detail}) written to {cmd.out}\n"
        else:
            text += f"counterexample ({rep.detail}):\n{game}"
    _emit(cmd, payload, text)
    return 0 if rep.passed else 1


def _named(g):
    from .graphs import ColoredGraph

    if g.names is not None:
        return g
    return ColoredGraph(g.n, g.edges, tuple(f"v{i}" for i in range(g.n)), g.pregraph)


def cmd_product(cmd) -> int:
    spec = _spec(cmd)
    if spec.kind != "product":
        raise UsageError("product needs --spec product(<s>,<s>)")
    levels = cmd.levels or 2
    a, b = spec.factors
    L = lex_product_graphs(build(a, levels), build(b, levels))
    payload = {"spec": str(spec), "ranks": [{"rank": r, "label": L.labels[r], "value": format_value(spec, L.values[r])}
                                            for r in L.ranks],
               "tables": {color_str(c): list(L.table(c)) for c in L.palette}}
    _emit(cmd, payload, dump(L), to_dot(L))
    return 0


def cmd_structurate(cmd) -> int:
    arena = _arena(cmd)
    spec = arena.valuation if arena.valuation.eps else arena.valuation.with_eps(True)
    res = structurate(arena.graph, spec, witness=cmd.witness)
    g = arena.graph
    mapping = {g.name(v): res.phi[v] for v in range(g.n)}
    text = dump(res.graph) + "".join(f"map {k} -> {r}\n" for k, r in mapping.items())
    payload = {"spec": str(spec), "map": mapping,
               "ranks": [{"rank": r, "label": res.graph.labels[r], "value": format_value(spec, res.graph.values[r])}
                         for r in res.graph.ranks],
               "tables": {color_str(c): list(res.graph.table(c)) for c in res.graph.palette}}
    _emit(cmd, payload, text, to_dot(res.graph))
    return 0


HANDLERS = {"solve": cmd_solve, "oracle": cmd_oracle, "check-monotone": cmd_check_monotone,
            "check-universal": cmd_check_universal, "product": cmd_product, "structurate": cmd_structurate}


def run(argv=None) -> int:
    parser = make_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        cmd = to_command(ns)
        if cmd.fmt not in ("text", "json", "dot"):
            raise UsageError(f"unknown format {cmd.fmt!r}")
        return HANDLERS[cmd.name](cmd)
    except (UsageError, GameFormatError, SpecError, BudgetExceeded, ValueError) as e:
        print(f"posgames: error: {e}", file=sys.stderr)
        return 2
    except StructurationError as e:
        print(f"posgames: structuration failed: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
