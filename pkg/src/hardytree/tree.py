"""Addressing and level combinatorics for the (q+1)-homogeneous rooted tree.

The tree is never materialized. A vertex is the pair ``(level, index)``. The
root's children are ``(1, 0) .. (1, q)`` and the children of ``(n, i)`` for
``n >= 1`` form the contiguous block ``(n + 1, i*q) .. (n + 1, i*q + q - 1)``,
so parent and child lookups are integer arithmetic.
"""
from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import LevelTooLarge, RootHasNoParent

DEFAULT_CAP = 10**7

_cap: contextvars.ContextVar[int] = contextvars.ContextVar("enumeration_cap", default=DEFAULT_CAP)


def enumeration_cap() -> int:
    """Largest level that dense enumeration will visit in the current context."""
    return _cap.get()


@contextlib.contextmanager
def enumeration_limit(cap: int):
    """Temporarily change the enumeration cap (context-local, so thread safe)."""
    if cap < 1:
        raise ValueError(f"cap must be positive, got {cap}")
    token = _cap.set(cap)
    try:
        yield cap
    finally:
        _cap.reset(token)


class VertexId(NamedTuple):
    level: int
    index: int


ROOT = VertexId(0, 0)


def leftmost_path_vertex(n: int) -> VertexId:
    """Vertex ``(n, 0)``; consecutive ones form an infinite path from the root."""
    if n < 0:
        raise ValueError(f"level must be nonnegative, got {n}")
    return VertexId(n, 0)


@dataclass(frozen=True)
class TreeGeometry:
    q: int

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 1:
            raise ValueError(f"branching parameter q must be an integer >= 1, got {self.q!r}")

    def level_size(self, n: int) -> int:
        """Exact number of vertices at distance ``n`` from the root."""
        if n < 0:
            raise ValueError(f"level must be nonnegative, got {n}")
        if n == 0:
            return 1
        return (self.q + 1) * self.q ** (n - 1)

    def log_level_size(self, n: int) -> float:
        if n < 0:
            raise ValueError(f"level must be nonnegative, got {n}")
        if n == 0:
            return 0.0
        return math.log(self.q + 1) + (n - 1) * math.log(self.q)

    def contains(self, v) -> bool:
        level, index = v
        return level >= 0 and 0 <= index < self.level_size(level)

    def vertex(self, level: int, index: int) -> VertexId:
        """Validated constructor."""
        v = VertexId(int(level), int(index))
        if not self.contains(v):
            raise ValueError(f"{tuple(v)} is not a vertex of the tree with q={self.q}")
        return v

    def parent(self, v) -> VertexId:
        level, index = v
        if level == 0:
            raise RootHasNoParent("the root has no parent")
        if level == 1:
            return ROOT
        return VertexId(level - 1, index // self.q)

    def children(self, v) -> list[VertexId]:
        level, index = v
        if level == 0:
            return [VertexId(1, j) for j in range(self.q + 1)]
        first = index * self.q
        return [VertexId(level + 1, first + j) for j in range(self.q)]

    def check_enumerable(self, n: int, cap: int | None = None) -> int:
        size = self.level_size(n)
        cap = enumeration_cap() if cap is None else cap
        if size > cap:
            raise LevelTooLarge(n, size, cap)
        return size

    def enumerate_level(self, n: int, cap: int | None = None) -> Iterator[VertexId]:
        """Yield ``(n, 0) .. (n, level_size(n) - 1)``.

        Raises LevelTooLarge eagerly, before the first vertex is produced.
        """
        size = self.check_enumerable(n, cap)
        return (VertexId(n, i) for i in range(size))
