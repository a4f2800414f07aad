import itertools
import random

import pytest

from posgames.generate import arenas
from posgames.graphs import Lasso
from posgames.monotone import build, check_axioms, cobuchi_core, complete, edges_from_table, safety_core
from posgames.oracle import brute_force_solve, eval_lasso, universality_check, OracleBudget
from posgames.products import (cobuchi_factor, lex_product_graphs, lex_product_objectives, parity_graph,
                               parity_objective, rename_graph)
from posgames.solver import solve
from posgames.valuations import SpecError, ValuationSpec, parse_spec, rename_spec

S = parse_spec


def test_two_safety_graphs():
    a = complete(safety_core())
    b = rename_graph(a, {"safe": "ok", "bad": "ko"})
    p = lex_product_graphs(a, b)
    assert p.size == 1
    assert p.has_edge(0, "safe", 0) and p.has_edge(0, "ok", 0)


def test_cobuchi_square_order():
    p = lex_product_graphs(cobuchi_factor(1, 2), cobuchi_factor(2, 2))
    assert p.labels[:4] == ("(0,0)", "(1,0)", "(0,1)", "(1,1)")
    assert check_axioms(edges_from_table(p))


def test_collision():
    with pytest.raises(SpecError, match="collision"):
        lex_product_graphs(complete(cobuchi_core(2)), complete(cobuchi_core(2)))
    with pytest.raises(SpecError):
        lex_product_objectives(S("buchi"), S("buchi"))
    with pytest.raises(SpecError):
        lex_product_objectives(S("safety"), S("parity:1"))


def test_parity_h1_is_cobuchi():
    p = parity_graph(1, 3)
    c = complete(cobuchi_core(3))
    assert p.table(2) == c.table("safe") and p.table(3) == c.table("bad")
    with pytest.raises(SpecError):
        parity_graph(0, 2)


def _tuple_graph(h, alpha):
    """Signature tuples with the highest component dominant, plus a top."""
    tuples = sorted(itertools.product(range(alpha), repeat=h), key=lambda t: t[::-1])
    edges = set()
    top = len(tuples)
    for i, a in enumerate(tuples):
        for j, b in enumerate(tuples):
            for p in range(2, 2 * h + 2):
                k = p // 2 - 1  # component of this priority
                ta, tb = a[k:][::-1], b[k:][::-1]
                if (ta >= tb) if p % 2 == 0 else (ta > tb):
                    edges.add((i, p, j))
    for p in range(2, 2 * h + 2):
        for j in range(top + 1):
            edges.add((top, p, j))
    return edges


def test_parity_matches_tuples():
    p = parity_graph(2, 2)
    assert p.size == 4
    assert set(edges_from_table(p, range(2, 6)).edges) == _tuple_graph(2, 2)
    p3 = parity_graph(2, 3)
    assert set(edges_from_table(p3, range(2, 6)).edges) == _tuple_graph(2, 3)


def test_associativity():
    f = [cobuchi_factor(i, 2) for i in (1, 2, 3)]
    left = lex_product_graphs(lex_product_graphs(f[0], f[1]), f[2])
    right = lex_product_graphs(f[0], lex_product_graphs(f[1], f[2]))
    assert left.size == right.size == 8
    assert set(edges_from_table(left, range(2, 8)).edges) == set(edges_from_table(right, range(2, 8)).edges)


def test_product_lasso_rules():
    spec = lex_product_objectives(S("buchi"), S("parity:1"))
    assert eval_lasso(spec, Lasso(("good",), ("wait", 2))) == 0
    assert eval_lasso(spec, Lasso((3,), ("good",))) == 0
    assert eval_lasso(spec, Lasso((), ("wait",))) == 1


def test_parity_product_evaluator_agrees():
    rng = random.Random(5)
    prod = parity_objective(2)
    par = S("parity:2")
    for _ in range(1000):
        stem = tuple(rng.randint(2, 5) for _ in range(rng.randint(0, 4)))
        cyc = tuple(rng.randint(2, 5) for _ in range(rng.randint(1, 4)))
        assert eval_lasso(prod, Lasso(stem, cyc)) == eval_lasso(par, Lasso(stem, cyc))


def test_parity_arenas_via_product_graph():
    for a in arenas(S("parity:2"), 50, seed=3):
        L = parity_graph(2, a.n + 1)
        assert solve(a, L).values == brute_force_solve(a).values


def test_product_universality():
    # co-Buchi renamed apart so the factor alphabets are disjoint
    spec = lex_product_objectives(S("buchi"), rename_spec(ValuationSpec("cobuchi"), {"safe": "s2", "bad": "b2"}))
    L = build(spec, 3)
    rep = universality_check(L, spec, OracleBudget(max_vertices=3, sample_count=400), mode="B", seed=2)
    assert rep.passed and rep.checked > 0
