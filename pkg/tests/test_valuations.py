import math

import pytest

from posgames.valuations import (EPS, INF, LOSE, WIN, Affine, SpecError, ValuationSpec, format_spec, format_value,
                                 parse_color, parse_spec, rename_spec)


@pytest.mark.parametrize("text", ["safety", "immvar", "reach", "buchi", "cobuchi", "parity:2", "energy", "energy:5",
                                  "backsup:3", "bounded:2", "product(buchi,parity:1)", "buchi+eps",
                                  "product(cobuchi,parity:2)+eps"])
def test_spec_round_trip(text):
    spec = parse_spec(text)
    assert parse_spec(format_spec(spec)) == spec


@pytest.mark.parametrize("bad", ["", "nope", "parity", "parity:0", "backsup", "bounded:-1", "product(buchi)",
                                 "product(cobuchi,cobuchi)", "buchi+", "safety extra"])
def test_spec_errors(bad):
    with pytest.raises(SpecError):
        parse_spec(bad)


def test_affine_maps():
    f = Affine(2, -3)
    assert f(0) == 0 and f(2) == 1 and f(5) == 7
    assert f(INF) == INF
    assert str(f) == "f:2,-3"
    with pytest.raises(ValueError):
        Affine(-1, 0)


def test_parse_color():
    assert parse_color("-2", parse_spec("energy")) == -2
    assert parse_color("f:1,1", parse_spec("bounded:2")) == Affine(1, 1)
    assert parse_color("eps", parse_spec("buchi+eps")) == EPS
    with pytest.raises(SpecError, match="unknown color"):
        parse_color("eps", parse_spec("buchi"))
    with pytest.raises(SpecError):
        parse_color("6", parse_spec("parity:2"))


def test_alphabets_and_classes():
    p = parse_spec("parity:2")
    assert p.palette() == (2, 3, 4, 5)
    assert p.prefix_invariant and p.qualitative
    e = parse_spec("energy")
    assert not e.qualitative and not e.prefix_increasing and e.worst == INF
    assert parse_spec("bounded:2").prefix_increasing
    assert not parse_spec("reach").prefix_increasing
    r = rename_spec(ValuationSpec("cobuchi"), {"safe": 2, "bad": 3})
    assert r.accepts(3) and not r.accepts("bad")


def test_format_value():
    assert format_value(parse_spec("safety"), WIN) == "win"
    assert format_value(parse_spec("safety"), LOSE) == "lose"
    assert format_value(parse_spec("energy"), math.inf) == "inf"
    assert format_value(parse_spec("energy"), 3) == "3"
