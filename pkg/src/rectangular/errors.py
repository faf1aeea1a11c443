"""Exception hierarchy shared by every module."""

from __future__ import annotations

import os

#: Environment variable holding the search-node cap for exhaustive searches.
RESOURCE_CAP_ENV = "RECTANGULAR_RESOURCE_CAP"
DEFAULT_RESOURCE_CAP = 5_000_000


def resource_cap() -> int:
    raw = os.environ.get(RESOURCE_CAP_ENV)
    if raw is None:
        return DEFAULT_RESOURCE_CAP
    try:
        value = int(raw)
    except ValueError:
        raise MalformedInput(f"{RESOURCE_CAP_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise MalformedInput(f"{RESOURCE_CAP_ENV} must be positive")
    return value


class RectangularError(Exception):
    """Base class for all library errors."""


class MalformedInput(RectangularError):
    pass


class UnknownPoint(RectangularError):
    pass


class ClassMismatch(RectangularError):
    pass


class ResourceLimit(RectangularError):
    pass


class NoAmalgamExists(RectangularError):
    pass


class InvalidDiagram(RectangularError):
    pass


class ArityMismatch(RectangularError):
    pass


class TuplesNotDisjoint(RectangularError):
    pass


class ShapeMismatch(RectangularError):
    pass


class RootNotContained(RectangularError):
    pass


class NotInjective(RectangularError):
    pass


class NoRealizer(RectangularError):
    pass


class DensityFailure(RectangularError):
    def __init__(self, spec):
        super().__init__(f"no extension into dense set {spec!r}")
        self.spec = spec


class Budget:
    """Counts search nodes and raises ResourceLimit past the cap."""

    __slots__ = ("cap", "used", "what")

    def __init__(self, what: str, cap: int | None = None):
        self.cap = resource_cap() if cap is None else cap
        self.used = 0
        self.what = what

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.cap:
            raise ResourceLimit(f"{self.what}: exceeded cap of {self.cap} search nodes")
