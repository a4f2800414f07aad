"""Property-based checks over random arenas, measures and lassos."""
import random

from hypothesis import given, settings, strategies as st

from posgames.generate import random_arena
from posgames.graphs import Lasso
from posgames.monotone import build, check_axioms, edges_from_table
from posgames.oracle import eval_lasso
from posgames.solver import is_prefixpoint, kleene, least_progress_measure, upd
from posgames.valuations import EPS, parse_spec

SPECS = ["safety", "reach", "buchi", "cobuchi", "parity:2", "energy:4", "bounded:2", "immvar", "backsup:3"]
PREFIX_INVARIANT = ["buchi", "cobuchi", "parity:2", "product(buchi,parity:1)"]

spec_names = st.sampled_from(SPECS)
seeds = st.integers(0, 2**32 - 1)


def _setup(name, seed):
    spec = parse_spec(name)
    rng = random.Random(seed)
    a = random_arena(rng, spec)
    return spec, rng, a, build(spec, a.n + 1)


@settings(max_examples=150, deadline=None)
@given(spec_names, seeds)
def test_upd_monotone(name, seed):
    spec, rng, a, L = _setup(name, seed)
    phi = [rng.randint(0, L.top) for _ in range(a.n)]
    psi = [rng.randint(x, L.top) for x in phi]
    assert all(x <= y for x, y in zip(upd(a, L, phi), upd(a, L, psi)))


@settings(max_examples=150, deadline=None)
@given(spec_names, seeds)
def test_worklist_equals_kleene(name, seed):
    spec, rng, a, L = _setup(name, seed)
    phi = least_progress_measure(a, L)
    assert phi == kleene(a, L)
    assert is_prefixpoint(a, L, phi)


@settings(max_examples=150, deadline=None)
@given(spec_names, seeds)
def test_least_below_any_prefixpoint(name, seed):
    spec, rng, a, L = _setup(name, seed)
    psi = [rng.randint(0, L.top) for _ in range(a.n)]
    while not is_prefixpoint(a, L, psi):
        psi = [max(x, y) for x, y in zip(psi, upd(a, L, psi))]
    assert all(x <= y for x, y in zip(least_progress_measure(a, L), psi))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPECS + ["buchi+eps"]), st.integers(1, 12))
def test_builders_satisfy_axioms(name, levels):
    L = build(parse_spec(name), levels)
    assert check_axioms(edges_from_table(L))


def _word(spec, draw, lo, hi):
    return tuple(draw(st.lists(st.sampled_from(spec.palette()), min_size=lo, max_size=hi)))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PREFIX_INVARIANT), st.data())
def test_rotation_and_stem_growth(name, data):
    spec = parse_spec(name)
    stem = _word(spec, data.draw, 0, 4)
    cyc = _word(spec, data.draw, 1, 4)
    k = data.draw(st.integers(0, len(cyc) - 1))
    base = eval_lasso(spec, Lasso(stem, cyc))
    assert eval_lasso(spec, Lasso(stem, cyc[k:] + cyc[:k])) == base
    assert eval_lasso(spec, Lasso(stem + cyc[:k], cyc[k:] + cyc[:k])) == base


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["safety", "immvar", "reach", "buchi", "cobuchi", "parity:2", "energy", "bounded:2",
                        "backsup:3"]), st.data())
def test_eps_insertions_are_neutral(name, data):
    spec = parse_spec(name + "+eps")
    pal = tuple(c for c in spec.palette() if c != EPS)
    stem = tuple(data.draw(st.lists(st.sampled_from(pal), max_size=4)))
    cyc = tuple(data.draw(st.lists(st.sampled_from(pal), min_size=1, max_size=4)))

    def sprinkle(word):
        out = []
        for c in word:
            out.extend([EPS] * data.draw(st.integers(0, 2)))
            out.append(c)
        return tuple(out)

    assert eval_lasso(spec, Lasso(sprinkle(stem), sprinkle(cyc))) == eval_lasso(spec, Lasso(stem, cyc))
