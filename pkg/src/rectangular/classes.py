"""Structure classes as pair-colorings.

Every binary language is reduced to a single coloring ``c`` of ordered pairs of
distinct points.  Order classes use directional tags: ``c(x, y) == "lt"`` iff
``x < y``, and the reversed pair carries ``"gt"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable

from .errors import MalformedInput

Color = Hashable

KINDS = ("graph", "digraph", "tournament", "linear_order", "partial_order", "metric", "matching")

_TAGS = {
    "graph": ("non", "edge"),
    "matching": ("non", "edge"),
    "digraph": ("none", "to", "from", "both"),
    "tournament": ("to", "from"),
    "linear_order": ("lt", "gt"),
    "partial_order": ("lt", "gt", "inc"),
}

_REVERSE = {"to": "from", "from": "to", "lt": "gt", "gt": "lt"}


def as_rational(value) -> Fraction:
    """Exact rational from an int, Fraction or ``p/q`` string; floats are refused."""
    if isinstance(value, float):
        raise MalformedInput(f"distances must be exact rationals, got float {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise MalformedInput(f"not a rational: {value!r}") from None


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ClassSpec:
    """One of the built-in classes together with its finite color set.

    ``matching`` (graphs of maximum degree one) is a negative control: it is
    hereditary but fails the splitting property.
    """

    kind: str
    color_set: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MalformedInput(f"unknown class kind {self.kind!r}")
        if self.kind == "metric":
            ks = tuple(sorted({as_rational(k) for k in self.color_set}))
            if not ks:
                raise MalformedInput("metric class needs a nonempty distance set K")
            if ks[0] <= 0:
                raise MalformedInput("metric distances must be positive")
            object.__setattr__(self, "color_set", ks)
        else:
            if self.color_set and tuple(self.color_set) != _TAGS[self.kind]:
                raise MalformedInput(f"{self.kind} colors are fixed to {_TAGS[self.kind]}")
            object.__setattr__(self, "color_set", _TAGS[self.kind])

    # constructors -------------------------------------------------------

    @classmethod
    def graph(cls) -> ClassSpec:
        return cls("graph")

    @classmethod
    def digraph(cls) -> ClassSpec:
        return cls("digraph")

    @classmethod
    def tournament(cls) -> ClassSpec:
        return cls("tournament")

    @classmethod
    def linear_order(cls) -> ClassSpec:
        return cls("linear_order")

    @classmethod
    def partial_order(cls) -> ClassSpec:
        return cls("partial_order")

    @classmethod
    def matching(cls) -> ClassSpec:
        return cls("matching")

    @classmethod
    def metric(cls, K: Iterable) -> ClassSpec:
        return cls("metric", tuple(K))

    # color algebra ------------------------------------------------------

    @property
    def colors(self) -> tuple:
        return self.color_set

    @property
    def symmetric(self) -> bool:
        return self.kind in ("graph", "matching", "metric")

    @property
    def is_order(self) -> bool:
        return self.kind in ("linear_order", "partial_order")

    def reverse(self, color: Color) -> Color:
        """Color of ``(y, x)`` given the color of ``(x, y)``."""
        if self.kind == "metric":
            return color
        return _REVERSE.get(color, color)

    def color_index(self, color: Color) -> int:
        return self.color_set.index(color)

    def parse_color(self, token: str) -> Color:
        if self.kind == "metric":
            q = as_rational(token)
            if q not in self.color_set:
                raise MalformedInput(f"distance {token} not in K")
            return q
        if token not in self.color_set:
            raise MalformedInput(f"color {token!r} not one of {', '.join(self.color_set)}")
        return token

    def format_color(self, color: Color) -> str:
        if self.kind == "metric":
            return format_rational(color)
        return str(color)

    def header(self) -> str:
        if self.kind == "metric":
            return "class metric K=" + ",".join(format_rational(k) for k in self.color_set)
        return f"class {self.kind}"

    def __str__(self) -> str:
        return self.header()[len("class "):]
