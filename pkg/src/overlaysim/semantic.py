"""Resource descriptions and the matchmaking arithmetic on them.

A description is a point in ``{0..4}^3``.  Distances are Manhattan (L1) and
therefore integers in ``[0, 12]``; similarity is the distance mapped linearly
onto a percentage.
"""
from __future__ import annotations

import random

from .errors import ConfigurationError

DIMENSIONS = 3
MAX_LEVEL = 4
LEVELS = MAX_LEVEL + 1
MAX_DISTANCE = DIMENSIONS * MAX_LEVEL
NUM_DESCRIPTIONS = LEVELS**DIMENSIONS


class ResourceDescription(tuple):
    """Immutable triple of integer resource levels, each in ``[0, 4]``.

    >>> ResourceDescription(1, 2, 3)
    ResourceDescription(1, 2, 3)
    """

    __slots__ = ()

    def __new__(cls, *elements: int) -> "ResourceDescription":
        if len(elements) == 1 and not isinstance(elements[0], int):
            elements = tuple(elements[0])
        if len(elements) != DIMENSIONS:
            raise ConfigurationError(
                f"a description has exactly {DIMENSIONS} elements, got {len(elements)}"
            )
        for e in elements:
            if isinstance(e, bool) or not isinstance(e, int) or not 0 <= e <= MAX_LEVEL:
                raise ConfigurationError(f"description element {e!r} not an integer in [0, {MAX_LEVEL}]")
        return super().__new__(cls, elements)

    def __repr__(self) -> str:
        return f"ResourceDescription{tuple.__repr__(self)}"

    @property
    def code(self) -> int:
        """Dense index in ``range(NUM_DESCRIPTIONS)``, used for table lookups."""
        c = 0
        for e in self:
            c = c * LEVELS + e
        return c

    @classmethod
    def from_code(cls, code: int) -> "ResourceDescription":
        elements = []
        for _ in range(DIMENSIONS):
            code, e = divmod(code, LEVELS)
            elements.append(e)
        return cls(*reversed(elements))

    def label(self) -> str:
        return "<" + ",".join(str(e) for e in self) + ">"


def distance(a: ResourceDescription, b: ResourceDescription) -> int:
    """Manhattan distance between two descriptions, in ``[0, 12]``."""
    return sum(abs(x - y) for x, y in zip(a, b))


def similarity_from_distance(d: int) -> float:
    return (MAX_DISTANCE - d) / MAX_DISTANCE * 100.0


def similarity(a: ResourceDescription, b: ResourceDescription) -> float:
    """Similarity percentage: 100 for identical descriptions, 0 at distance 12."""
    return similarity_from_distance(distance(a, b))


def check_allowable_error(allowable_error: float) -> float:
    allowable_error = float(allowable_error)
    if not 0.0 <= allowable_error <= MAX_DISTANCE:
        raise ConfigurationError(f"allowable_error {allowable_error} outside [0, {MAX_DISTANCE}]")
    return allowable_error


def matches(request_desc: ResourceDescription, node_desc: ResourceDescription, allowable_error: float) -> bool:
    """True when the node is within ``allowable_error`` of the request."""
    return distance(request_desc, node_desc) <= check_allowable_error(allowable_error)


def random_description(rng: random.Random) -> ResourceDescription:
    """Draw each element independently and uniformly from ``{0..4}``."""
    return ResourceDescription(*(rng.randrange(LEVELS) for _ in range(DIMENSIONS)))


def _build_distance_table() -> tuple[tuple[int, ...], ...]:
    descs = [ResourceDescription.from_code(c) for c in range(NUM_DESCRIPTIONS)]
    return tuple(tuple(distance(a, b) for b in descs) for a in descs)


# DISTANCE_TABLE[a.code][b.code] == distance(a, b); the search loops index this
# instead of recomputing sums.
DISTANCE_TABLE = _build_distance_table()
