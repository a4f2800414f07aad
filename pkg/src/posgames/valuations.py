"""Valuation specs, color alphabets and value conventions.

Values are ordered so that Eve prefers smaller ones.  Objectives use
``WIN = 0`` and ``LOSE = 1``; quantitative valuations use non-negative
integers with ``INF`` for divergence.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

WIN = 0
LOSE = 1
INF = math.inf

EPS = "eps"


@dataclass(frozen=True, order=True)
class Affine:
    """Counter update ``n -> max(0, a*n + b)`` with ``a >= 0``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0:
            raise ValueError(f"counter map needs a >= 0, got {self.a}")

    def __call__(self, n):
        if n == INF:
            return INF if self.a > 0 else max(0, self.b)
        return max(0, self.a * n + self.b)

    def __str__(self):
        return f"f:{self.a},{self.b}"


Color = Union[str, int, Affine]

_TOKENS = {
    "safety": ("safe", "bad"),
    "immvar": ("imm", "safe", "bad"),
    "reach": ("wait", "good"),
    "buchi": ("wait", "good"),
    "cobuchi": ("safe", "bad"),
}
QUALITATIVE = {"safety", "immvar", "reach", "buchi", "cobuchi", "parity", "bounded", "product", "custom"}
KINDS = set(_TOKENS) | {"parity", "energy", "backsup", "bounded", "product", "rename", "custom"}

# Small sample of counter maps used when an infinite alphabet must be enumerated.
COUNTER_PALETTE = (Affine(0, 0), Affine(0, 1), Affine(1, -1), Affine(1, 0), Affine(1, 1), Affine(2, 0), Affine(2, 1))


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class ValuationSpec:
    kind: str
    param: Optional[int] = None
    eps: bool = False
    factors: tuple = ()
    # pairs (new color, old color) for kind == "rename"
    renaming: tuple = ()
    evaluator: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unsupported spec kind {self.kind!r}")
        if self.kind == "parity" and (self.param is None or self.param < 1):
            raise SpecError("parity needs h >= 1")
        if self.kind in ("backsup", "bounded") and (self.param is None or self.param < 0):
            raise SpecError(f"{self.kind} needs a non-negative bound")
        if self.kind == "energy" and self.param is not None and self.param < 0:
            raise SpecError("energy cap must be non-negative")
        if self.kind == "product":
            if len(self.factors) != 2:
                raise SpecError("product takes exactly two factors")
            a, b = self.factors
            clash = [c for c in a.palette() if b.accepts(c)] + [c for c in b.palette() if a.accepts(c)]
            if clash or (a.kind == b.kind == "energy"):
                raise SpecError(f"alphabet collision between {format_spec(a)} and {format_spec(b)}")

    # -- alphabet -------------------------------------------------------
    def accepts(self, c) -> bool:
        if self.eps and c == EPS:
            return True
        k = self.kind
        if k in _TOKENS:
            return isinstance(c, str) and c in _TOKENS[k]
        if k == "parity":
            return _is_int(c) and 2 <= c <= 2 * self.param + 1
        if k == "energy":
            return _is_int(c)
        if k in ("backsup", "bounded"):
            return isinstance(c, Affine)
        if k == "product":
            return any(f.accepts(c) for f in self.factors)
        if k == "rename":
            return any(new == c for new, _ in self.renaming)
        return True  # custom

    def palette(self) -> tuple:
        """Finite list of representative colors (the full alphabet when finite)."""
        k = self.kind
        if k in _TOKENS:
            base = _TOKENS[k]
        elif k == "parity":
            base = tuple(range(2, 2 * self.param + 2))
        elif k == "energy":
            base = (-2, -1, 0, 1, 2)
        elif k in ("backsup", "bounded"):
            base = COUNTER_PALETTE
        elif k == "product":
            base = self.factors[0].palette() + self.factors[1].palette()
        elif k == "rename":
            base = tuple(new for new, _ in self.renaming)
        else:
            base = ()
        return base + ((EPS,) if self.eps else ())

    @property
    def finite_alphabet(self) -> bool:
        if self.kind in ("energy", "backsup", "bounded", "custom"):
            return False
        return all(f.finite_alphabet for f in self.factors)

    # -- classification -------------------------------------------------
    @property
    def qualitative(self) -> bool:
        if self.kind == "rename":
            return self.factors[0].qualitative
        return self.kind in QUALITATIVE

    @property
    def prefix_invariant(self) -> bool:
        if self.kind in ("buchi", "cobuchi", "parity", "product"):
            return True
        if self.kind == "rename":
            return self.factors[0].prefix_invariant
        return False

    @property
    def prefix_increasing(self) -> bool:
        # energy and backward-sup are not: a negative weight or a resetting map lowers the value
        return self.prefix_invariant or self.kind in ("safety", "bounded")

    @property
    def bottom(self):
        return WIN if self.qualitative else 0

    @property
    def worst(self):
        return LOSE if self.qualitative else INF

    def with_eps(self, on: bool = True) -> "ValuationSpec":
        return ValuationSpec(self.kind, self.param, on, self.factors, self.renaming, self.evaluator)

    def __str__(self):
        return format_spec(self)


def _is_int(c) -> bool:
    return isinstance(c, int) and not isinstance(c, bool)


def rename_spec(spec: ValuationSpec, mapping: dict) -> ValuationSpec:
    """Spec over renamed colors; ``mapping`` sends old colors to new ones."""
    return ValuationSpec("rename", factors=(spec,), renaming=tuple((new, old) for old, new in mapping.items()))


def format_value(spec: ValuationSpec, value) -> str:
    if spec.qualitative:
        return "win" if value == WIN else "lose"
    return "inf" if value == INF else str(int(value))


# ---------------------------------------------------------------------------
# spec grammar:  safety | immvar | reach | buchi | cobuchi | parity:<h>
#                | energy[:<cap>] | backsup:<cap> | bounded:<N>
#                | product(<s>,<s>)   each with an optional +eps suffix

_ATOM = re.compile(r"([a-z]+)(?::(-?\d+))?")


def parse_spec(text: str) -> ValuationSpec:
    text = text.replace(" ", "")
    spec, rest = _parse(text, 0)
    if rest != len(text):
        raise SpecError(f"trailing input in spec {text!r} at {rest}")
    return spec


def _parse(text, i):
    if text.startswith("product(", i):
        a, i = _parse(text, i + len("product("))
        if not text.startswith(",", i):
            raise SpecError(f"expected ',' at {i} in {text!r}")
        b, i = _parse(text, i + 1)
        if not text.startswith(")", i):
            raise SpecError(f"expected ')' at {i} in {text!r}")
        spec = ValuationSpec("product", factors=(a, b))
        i += 1
    else:
        m = _ATOM.match(text, i)
        if not m:
            raise SpecError(f"cannot parse spec at {i} in {text!r}")
        name, arg = m.group(1), m.group(2)
        if name not in KINDS or name in ("product", "rename", "custom"):
            raise SpecError(f"unknown spec kind {name!r}")
        if name in ("parity", "backsup", "bounded") and arg is None:
            raise SpecError(f"{name} needs a parameter, e.g. {name}:2")
        if name in _TOKENS and arg is not None:
            raise SpecError(f"{name} takes no parameter")
        spec = ValuationSpec(name, None if arg is None else int(arg))
        i = m.end()
    if text.startswith("+eps", i):
        spec = spec.with_eps()
        i += len("+eps")
    return spec, i


def format_spec(spec: ValuationSpec) -> str:
    k = spec.kind
    if k == "product":
        s = f"product({format_spec(spec.factors[0])},{format_spec(spec.factors[1])})"
    elif k == "rename":
        pairs = ",".join(f"{old}>{new}" for new, old in spec.renaming)
        s = f"rename({format_spec(spec.factors[0])};{pairs})"
    elif spec.param is not None:
        s = f"{k}:{spec.param}"
    else:
        s = k
    return s + ("+eps" if spec.eps else "")


_INT = re.compile(r"[+-]?\d+$")
_AFFINE = re.compile(r"f:(\d+),([+-]?\d+)$")


def parse_color(lexeme: str, spec: ValuationSpec) -> Color:
    """Read a color lexeme and check it against the alphabet of the objective."""
    if _INT.match(lexeme):
        c = int(lexeme)
    elif lexeme.startswith("f:"):
        m = _AFFINE.match(lexeme)
        if not m:
            raise SpecError(f"bad counter map {lexeme!r}")
        c = Affine(int(m.group(1)), int(m.group(2)))
    else:
        c = lexeme
    if not spec.accepts(c):
        raise SpecError(f"unknown color {lexeme!r} for valuation {format_spec(spec)}")
    return c


def color_str(c) -> str:
    return str(c)
