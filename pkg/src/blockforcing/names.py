"""Name families: deferred descriptions of increasing sequences.

A name does not hold its sequence; it says how to read one off the
shared state (Cohen bit prefixes and per-coordinate t-sequences) that a
workspace carries.  Four families cover everything the engine needs:

- ground(start, step): the fixed arithmetic sequence, independent of state
- coordinate(a): whatever t_a currently is
- diagonal(pattern, rank): the positions where the Cohen prefix at that
  rank disagrees with the pattern
- merge(left, right): the coarsest sequence each of whose blocks contains
  a whole block of each child

Anything else can participate by exposing ``next_block(ws, lo)``
returning the first determined block [B, E) with B >= lo, or None when
the state (which it may grow through ``ws`` when ``ws.extend`` is set)
cannot yet produce one.
"""

from dataclasses import dataclass

from .patterns import GroundReal


@dataclass(frozen=True)
class GroundName:
    start: int
    step: int = 1

    def __post_init__(self):
        if self.start < 0 or self.step < 1:
            raise ValueError(f"need start >= 0 and step >= 1, got ({self.start}, {self.step})")


@dataclass(frozen=True)
class CoordinateName:
    element: str


@dataclass(frozen=True)
class DiagonalName:
    pattern: GroundReal
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError(f"rank must be a natural number, got {self.rank}")


@dataclass(frozen=True)
class MergeName:
    left: object
    right: object


def descriptor(nm):
    """A JSON-ready structural tag for a name."""
    if isinstance(nm, GroundName):
        return {"kind": "ground", "start": nm.start, "step": nm.step}
    if isinstance(nm, CoordinateName):
        return {"kind": "coordinate", "element": nm.element}
    if isinstance(nm, DiagonalName):
        return {
            "kind": "diagonal",
            "pattern": nm.pattern.spec,
            "seed": nm.pattern.seed,
            "rank": nm.rank,
        }
    if isinstance(nm, MergeName):
        return {"kind": "merge", "left": descriptor(nm.left), "right": descriptor(nm.right)}
    return {"kind": "custom", "detail": repr(nm)}


def diagonal_ranks(nm):
    """All rank tags of diagonal names inside nm."""
    if isinstance(nm, DiagonalName):
        return {nm.rank}
    if isinstance(nm, MergeName):
        return diagonal_ranks(nm.left) | diagonal_ranks(nm.right)
    return set()


def coordinate_elements(nm):
    """All coordinates whose t-sequences nm reads."""
    if isinstance(nm, CoordinateName):
        return {nm.element}
    if isinstance(nm, MergeName):
        return coordinate_elements(nm.left) | coordinate_elements(nm.right)
    return set()
