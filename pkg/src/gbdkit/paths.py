"""Exact finite-path counting, enumeration, and backward reachability.

Counting runs target-rooted: rows of the incidence matrices are finite
and exact, so the recursion from the target terminates even though
columns may be infinite.  Counts are plain Python integers, hence exact
at any magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .diagram import DiagramHandle
from .errors import InvalidEdgeError


class Edge(NamedTuple):
    level: int
    source: int
    target: int
    copy: int = 0


@dataclass(frozen=True)
class FinitePath:
    """Edge chain from start_vertex at start_level downward."""

    start_level: int
    start_vertex: int
    edges: tuple = ()

    def __post_init__(self):
        lvl, at = self.start_level, self.start_vertex
        for e in self.edges:
            if e.level != lvl or e.source != at:
                raise InvalidEdgeError(f"edge {e} does not chain at level {lvl}, vertex {at}")
            if e.copy < 0:
                raise InvalidEdgeError(f"negative copy index in {e}")
            lvl, at = e.level + 1, e.target

    def __len__(self):
        return len(self.edges)

    @property
    def end_level(self) -> int:
        return self.start_level + len(self.edges)

    @property
    def end_vertex(self) -> int:
        return self.edges[-1].target if self.edges else self.start_vertex

    def vertex_trace(self) -> list:
        return [self.start_vertex] + [e.target for e in self.edges]

    def validate(self, d: DiagramHandle):
        """Re-check every edge against the diagram's rows."""
        d.indexing.check(self.start_vertex)
        for e in self.edges:
            mult = d.entry(e.level, e.target, e.source)
            if e.copy >= mult:
                raise InvalidEdgeError(
                    f"edge {e} absent: multiplicity {mult} at "
                    f"({e.level}, {e.target}, {e.source})")
        return True

    def describe(self):
        return {"start_level": self.start_level,
                "vertices": self.vertex_trace(),
                "copies": [e.copy for e in self.edges]}


def count_paths(d: DiagramHandle, w: int, n: int, v: int, m: int) -> int:
    """Exact number of finite paths from w at level n to v at level m."""
    if m < n:
        raise ValueError(f"levels out of order: {n} > {m}")
    d.indexing.check(w)
    d.indexing.check(v)
    if m == n:
        return 1 if v == w else 0
    memo: dict = {}

    def rec(level: int, vert: int) -> int:
        if level == n:
            return 1 if vert == w else 0
        key = (level, vert)
        got = memo.get(key)
        if got is None:
            got = sum(mult * rec(level - 1, src)
                      for src, mult in d.in_edges(level - 1, vert))
            memo[key] = got
        return got

    return rec(m, v)


def backward_reach_set(d: DiagramHandle, v: int, m: int, n: int) -> set:
    """All vertices at level n with at least one path to v at level m."""
    if n > m:
        raise ValueError(f"levels out of order: {n} > {m}")
    d.indexing.check(v)
    reach = {v}
    for level in range(m, n, -1):
        reach = {src for u in reach for src, _ in d.in_edges(level - 1, u)}
    return reach


def backward_reach_profile(d: DiagramHandle, v: int, m: int, n: int) -> list:
    """Reach sets from v@m at levels m, m-1, ..., n (in that order)."""
    sets = [{v}]
    for level in range(m, n, -1):
        sets.append({src for u in sets[-1] for src, _ in d.in_edges(level - 1, u)})
    return sets


def enumerate_paths(d: DiagramHandle, w: int, n: int, v: int, m: int,
                    cap: Optional[int] = None):
    """Distinct paths w@n -> v@m in lexicographic edge order.

    Returns (paths, truncated); truncated is True when more than cap
    paths exist.  cap=None enumerates everything.
    """
    if m < n:
        raise ValueError(f"levels out of order: {n} > {m}")
    d.indexing.check(w)
    d.indexing.check(v)
    if cap is not None and cap < 1:
        raise ValueError("cap must be positive")
    if m == n:
        paths = [FinitePath(n, w)] if v == w else []
        return paths, False

    profile = backward_reach_profile(d, v, m, n)  # levels m..n
    reach_at = {m - i: s for i, s in enumerate(profile)}
    if w not in reach_at[n]:
        return [], False

    out: list = []
    truncated = False

    def extend(level: int, at: int, acc: list):
        nonlocal truncated
        if truncated:
            return
        if level == m:
            if cap is not None and len(out) == cap:
                truncated = True
                return
            out.append(FinitePath(n, w, tuple(acc)))
            return
        nxt = sorted(u for u in reach_at[level + 1] if d.entry(level, u, at) > 0)
        for u in nxt:
            mult = d.entry(level, u, at)
            for copy in range(mult):
                acc.append(Edge(level, at, u, copy))
                extend(level + 1, u, acc)
                acc.pop()
                if truncated:
                    return

    extend(n, w, [])
    return out, truncated
