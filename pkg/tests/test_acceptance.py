"""Acceptance criteria, one test each.  Every test prints a single
``[PASS]``/``[FAIL]`` line; run the file directly to get just those lines."""
import itertools
import random
import time

import pytest

from posgames.generate import GenConfig, arenas, random_arena, random_graph
from posgames.monotone import build, check_axioms, check_tables, edges_from_table
from posgames.oracle import (OracleBudget, brute_force_solve, enumerate_graphs, graph_value, strategy_values,
                             universality_check)
from posgames.products import parity_graph
from posgames.solver import is_prefixpoint, kleene, least_progress_measure, solve, upd
from posgames.structuration import eps_reach, structurate
from posgames.valuations import EPS, parse_spec

S = parse_spec
BUILTIN_SPECS = ["safety", "immvar", "reach", "buchi", "cobuchi", "parity:2", "energy", "backsup:3", "bounded:3"]


_capsys = None


def report(k, ok, detail, t0):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail} ({time.time() - t0:.1f}s)"
    if _capsys is not None:
        # acceptance lines go straight to the terminal, even under capture
        with _capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return line


@pytest.fixture(autouse=True)
def _show(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def _builder_specs(budget):
    return [("safety", S("safety"), 1), ("immvar", S("immvar"), 1), ("reach", S("reach"), budget),
            ("buchi", S("buchi"), budget), ("cobuchi", S("cobuchi"), budget), ("parity:2", S("parity:2"), budget),
            ("energy", S(f"energy:{budget}"), 1), ("backsup", S(f"backsup:{budget}"), 1),
            ("bounded", S(f"bounded:{budget}"), 1)]


def test_1_axioms():
    t0 = time.time()
    bad = []
    for budget in (2, 4, 8, 16):
        for name, spec, levels in _builder_specs(budget):
            L = build(spec, levels)
            if check_tables(L) or not check_axioms(edges_from_table(L)):
                bad.append((name, budget))
    ok = not bad
    report(1, ok, f"axioms and rho-monotonicity for all builders at budgets 2,4,8,16; failures={bad}", t0)
    assert ok


def test_2_solver_matches_oracle():
    t0 = time.time()
    budget = OracleBudget(max_vertices=5, strategy_cap=10**6)
    cfg = GenConfig(max_vertices=5, max_out=3, weight_range=(-2, 2), priority_range=(2, 5))
    mismatches, count = [], 0
    for k, text in enumerate(BUILTIN_SPECS):
        for i, a in enumerate(arenas(S(text), 500, seed=1000 + k, cfg=cfg)):
            count += 1
            res = solve(a)
            if res.values != brute_force_solve(a, budget).values:
                mismatches.append((text, i, "value"))
            elif tuple(strategy_values(a, res.strategy.chosen)) != res.values:
                mismatches.append((text, i, "strategy"))
    ok = not mismatches
    report(2, ok, f"{count} arenas ({len(BUILTIN_SPECS)} specs x 500), exact mismatches={mismatches[:5]}", t0)
    assert ok


def test_3_energy_levels():
    t0 = time.time()
    spec = S("energy:20")
    L = build(spec)
    vals = graph_value(edges_from_table(L), spec, OracleBudget(max_vertices=L.size + 1))
    ok = vals[:21] == list(range(21)) and all(L.value(r) == r for r in range(21))
    report(3, ok, f"Energy(20) level values 0..20 by oracle: {vals[:21] == list(range(21))}", t0)
    assert ok


def test_4_universality():
    t0 = time.time()
    b3 = OracleBudget(max_vertices=3)
    runs = {
        "safety B": universality_check(build(S("safety")), S("safety"), b3, mode="B"),
        "cobuchi a=4 B": universality_check(build(S("cobuchi"), 4), S("cobuchi"), b3, mode="B"),
        "buchi a=4 B": universality_check(build(S("buchi"), 4), S("buchi"), b3, mode="B"),
        "reach a=4 A": universality_check(build(S("reach"), 4), S("reach"), b3, mode="A"),
    }
    negative = universality_check(build(S("buchi"), 2), S("buchi"), b3, mode="B")
    ok = all(r.passed for r in runs.values()) and not negative.passed and negative.counterexample is not None
    summary = ", ".join(f"{k}: {'pass' if r.passed else 'FAIL'} ({r.checked} graphs)" for k, r in runs.items())
    cex = negative.counterexample.edges if negative.counterexample is not None else None
    report(4, ok, f"{summary}; buchi a=2 negative control fails with {cex}", t0)
    assert ok


def _tuple_edges(h, alpha):
    tuples = sorted(itertools.product(range(alpha), repeat=h), key=lambda t: t[::-1])
    top = len(tuples)
    edges = set()
    for i, a in enumerate(tuples):
        for j, b in enumerate(tuples):
            for p in range(2, 2 * h + 2):
                k = p // 2 - 1
                ta, tb = a[k:][::-1], b[k:][::-1]
                if (ta >= tb) if p % 2 == 0 else (ta > tb):
                    edges.add((i, p, j))
    edges |= {(top, p, j) for p in range(2, 2 * h + 2) for j in range(top + 1)}
    return edges


def test_5_parity_assembly():
    t0 = time.time()
    P = parity_graph(2, 2)
    iso = P.size == 4 and set(edges_from_table(P, range(2, 6)).edges) == _tuple_edges(2, 2)
    bad = 0
    for a in arenas(S("parity:2"), 200, seed=55):
        if solve(a, parity_graph(2, a.n + 1)).values != brute_force_solve(a).values:
            bad += 1
    ok = iso and bad == 0
    report(5, ok, f"parity h=2 a=2 equals tuple construction: {iso}; 200 arenas, mismatches={bad}", t0)
    assert ok


def _lifts(L, phi, sub, v, max_len=6):
    """Every path of length <= max_len from v in sub maps to an L-path
    between the measure images with the same colors."""
    def dfs(x, ranks, depth):
        if phi[x] not in ranks:
            return False
        if depth == max_len:
            return True
        for c, y in sub.out[x]:
            nxt = {r2 for r2 in L.ranks if any(L.has_edge(r, c, r2) for r in ranks)}
            if not dfs(y, nxt, depth + 1):
                return False
        return True

    return dfs(v, {phi[v]}, 0)


def test_6_path_simulation():
    t0 = time.time()
    rng = random.Random(66)
    failures = 0
    for i in range(100):
        spec = S(BUILTIN_SPECS[i % len(BUILTIN_SPECS)])
        a = random_arena(rng, spec)
        res = solve(a)
        sub = res.strategy.subgraph(a)
        if not all(_lifts(res.graph, res.measure, sub, v) for v in range(a.n)):
            failures += 1
    ok = failures == 0
    report(6, ok, f"100 solved arenas, paths up to length 6 lift into L; failures={failures}", t0)
    assert ok


def _structurate_ok(g, spec):
    r = structurate(g, spec)
    L = r.graph
    axioms = check_axioms(edges_from_table(L)) and not check_tables(L)
    # the class order is the rank order; totality was enforced during the quotient
    reach = eps_reach(r.closed)
    total = all(reach[r.classes[i][0], r.classes[j][0]] for i in range(len(r.classes)) for j in range(i))
    preserved = [L.value(x) for x in r.phi] == graph_value(g, spec)
    return axioms and total and preserved


def test_7_structuration():
    t0 = time.time()
    spec = S("buchi+eps")
    colors = ("wait", "good", EPS)
    exhaustive = [g for n in (1, 2) for g in enumerate_graphs(n, colors, up_to_iso=False)]
    bad = sum(not _structurate_ok(g, spec) for g in exhaustive)
    rng = random.Random(77)
    rand = [random_graph(rng, spec, n=3, cfg=GenConfig(eps_rate=0.25)) for _ in range(50)]
    bad += sum(not _structurate_ok(g, spec) for g in rand)
    ok = bad == 0
    report(7, ok, f"{len(exhaustive)} exhaustive <=2-vertex + 50 random 3-vertex Buchi+eps graphs; failures={bad}", t0)
    assert ok


def test_8_fixpoints():
    t0 = time.time()
    rng = random.Random(88)
    fails = {"kleene": 0, "monotone": 0, "prefixpoint": 0, "least": 0}
    for i in range(500):
        spec = S(BUILTIN_SPECS[i % len(BUILTIN_SPECS)])
        a = random_arena(rng, spec)
        L = build(spec, a.n + 1)
        phi = least_progress_measure(a, L)
        fails["kleene"] += phi != kleene(a, L)
        fails["prefixpoint"] += not is_prefixpoint(a, L, phi)
        lo = [rng.randint(0, L.top) for _ in range(a.n)]
        hi = [rng.randint(x, L.top) for x in lo]
        fails["monotone"] += not all(x <= y for x, y in zip(upd(a, L, lo), upd(a, L, hi)))
        psi = [rng.randint(0, L.top) for _ in range(a.n)]
        while not is_prefixpoint(a, L, psi):
            psi = [max(x, y) for x, y in zip(psi, upd(a, L, psi))]
        fails["least"] += not all(x <= y for x, y in zip(phi, psi))
    ok = not any(fails.values())
    report(8, ok, f"500 instances each; failures={fails}", t0)
    assert ok


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
