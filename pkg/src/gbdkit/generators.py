"""Infinite-path rules and finite prefixes.

A generator is a deterministic rule producing the vertex trace s(x_m)
and the edge choice at every level on demand.  Edges are validated
lazily against the diagram's rows.  For certificate purposes a
generator can report an *eventual trace*: a start level, period and
step such that the trace is provably periodic-with-shift from there on.
The proof obligations are checked, never assumed: either the rule never
consults the diagram (vertical, alternating), or the rule's state
recurs on a stationary diagram, or the diagram is stationary banded so
the stepping rule commutes with translation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import BandedFlag, DiagramHandle
from .errors import InvalidEdgeError, InvariantError, UnknownKindError
from .paths import Edge, FinitePath

DEFAULT_HORIZON = 512

PathPrefix = FinitePath  # a prefix anchored at level 0 names a cylinder set


def cylinder_at(d: DiagramHandle, vertex: int) -> FinitePath:
    """Zero-length cylinder: all paths starting at this level-0 vertex."""
    d.indexing.check(vertex)
    return FinitePath(0, vertex)


def prefix_from_trace(d: DiagramHandle, trace) -> FinitePath:
    """Cylinder prefix along the given vertex trace (first copies), validated."""
    trace = list(trace)
    edges = tuple(Edge(i, trace[i], trace[i + 1], 0) for i in range(len(trace) - 1))
    p = FinitePath(0, trace[0], edges)
    p.validate(d)
    return p


@dataclass(frozen=True)
class EventualTrace:
    """trace(m + period) = trace(m) + step for all m >= start (certified),
    or at least for all scanned m (not certified)."""

    start: int
    period: int
    step: int
    certified: bool
    base_vertices: tuple  # trace values on [start, start + period)

    def value(self, m: int) -> int:
        if m < self.start:
            raise ValueError(f"level {m} below eventual start {self.start}")
        k, r = divmod(m - self.start, self.period)
        return self.base_vertices[r] + k * self.step

    @property
    def slope_num(self) -> int:
        return self.step

    @property
    def slope_den(self) -> int:
        return self.period


class PathGenerator:
    """Evaluable infinite path: kind + parameters + backing diagram."""

    def __init__(self, d: DiagramHandle, kind: str, params: dict):
        self.d = d
        self.kind = kind
        self.params = dict(params)
        self._trace: list = []
        self._init_trace()

    def _init_trace(self):
        if self.kind in ("vertical", "leftmost_slant", "rightmost_slant",
                         "alternating", "climbing"):
            v0 = int(self.params["vertex"])
            self.d.indexing.check(v0)
            self._trace = [v0]
        elif self.kind == "eventually_vertical":
            prefix = [int(v) for v in self.params.get("prefix", [])]
            v = int(self.params["vertex"])
            self.d.indexing.check(v)
            if prefix and prefix[-1] == v:
                self._trace = list(prefix)
            else:
                self._trace = prefix + [v]
        elif self.kind == "table_then_rule":
            prefix = [int(v) for v in self.params["table"]]
            if not prefix:
                raise InvariantError("table_then_rule needs a nonempty table")
            self._trace = list(prefix)
            tail = dict(self.params["tail"])
            tail.setdefault("vertex", prefix[-1])
            kind = tail.pop("kind")
            if kind not in ("vertical", "leftmost_slant", "rightmost_slant",
                            "alternating", "climbing"):
                raise UnknownKindError(f"unsupported tail rule {kind!r}")
            self._tail = PathGenerator(self.d, kind, tail)
        else:
            raise UnknownKindError(f"unknown generator kind {self.kind!r}")

    # -- trace ----------------------------------------------------------

    def _next_vertex(self, m: int, v: int) -> int:
        kind = self.kind
        if kind == "vertical" or kind == "eventually_vertical":
            return v
        if kind == "alternating":
            return v if m % 2 == 0 else v - 1
        if kind == "climbing":
            if self.d.indexing.contains(v + 1) and self.d.entry(m, v + 1, v) > 0:
                return v + 1
            out = self.d.out_edges_exact(m, v)
            if out is None:
                raise InvariantError(
                    f"climbing fallback needs exact column support at {v}")
            return out[0][0]
        if kind in ("leftmost_slant", "rightmost_slant"):
            out = self.d.out_edges_exact(m, v)
            if out is not None:
                return out[0][0] if kind == "leftmost_slant" else out[-1][0]
            sup = self.d.column_support(m, v)
            if sup is not None and sup.kind == "all" and \
                    kind == "leftmost_slant" and \
                    self.d.indexing.mode == "one_sided":
                return self.d.indexing.base  # full column: base is leftmost
            raise InvariantError(
                f"{kind} needs exact column support at vertex {v}")
        if kind == "table_then_rule":
            k = len(self.params["table"]) - 1
            return self._tail._next_vertex(m - k, v)
        raise UnknownKindError(self.kind)

    def vertex_at(self, m: int) -> int:
        """s(x_m): the vertex the path passes through on level m."""
        if m < 0:
            raise ValueError("negative level")
        while len(self._trace) <= m:
            lvl = len(self._trace) - 1
            self._trace.append(self._next_vertex(lvl, self._trace[-1]))
        return self._trace[m]

    def edge_at(self, m: int) -> Edge:
        """x_m, validated against the diagram's rows."""
        src, tgt = self.vertex_at(m), self.vertex_at(m + 1)
        if self.d.entry(m, tgt, src) < 1:
            raise InvalidEdgeError(
                f"generator {self.kind} emits missing edge {src}->{tgt} "
                f"at level {m}")
        return Edge(m, src, tgt, 0)

    def prefix(self, length: int) -> FinitePath:
        return FinitePath(0, self.vertex_at(0),
                          tuple(self.edge_at(i) for i in range(length)))

    def validate_to(self, horizon: int):
        for m in range(horizon):
            self.edge_at(m)
        return True

    # -- eventual behavior -----------------------------------------------

    def eventual(self, horizon: int = DEFAULT_HORIZON) -> Optional[EventualTrace]:
        """Detect and, where provable, certify eventual linearity of the trace."""
        trace = [self.vertex_at(m) for m in range(horizon + 2)]
        found = None
        for q in (1, 2):
            for start in range(0, horizon // 2):
                step = trace[start + q] - trace[start]
                if all(trace[m + q] - trace[m] == step
                       for m in range(start, horizon + 2 - q)):
                    found = (start, q, step)
                    break
            if found:
                break
        if not found:
            return None
        start, q, step = found
        certified = self._certify_eventual(start, q, step, trace)
        return EventualTrace(start, q, step, certified,
                             tuple(trace[start:start + q]))

    def _certify_eventual(self, start, q, step, trace) -> bool:
        kind = self.kind if self.kind != "table_then_rule" else self._tail.kind
        if kind in ("vertical", "eventually_vertical", "alternating"):
            # the rule never consults the diagram; the pattern is forced
            return True
        if not self.d.stationary:
            return False
        if step == 0:
            # the stepping rule is a function of the vertex alone on a
            # stationary diagram, and its state recurs
            return True
        if self.d.get_flag(BandedFlag) is not None \
                and self.d.indexing.mode == "two_sided":
            # stationary banded on two-sided levels: the stepping rule
            # commutes with translation, so one observed period persists
            return True
        return False

    def describe(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}


class PushedGenerator:
    """Image of a generator under a bijection sequence, living in the
    relabeled diagram.  Duck-types the PathGenerator probe surface."""

    def __init__(self, x, g, d2: DiagramHandle):
        self.base = x
        self.g = g
        self.d = d2
        self.kind = f"pushed({x.kind},{g.kind})"
        self.params = {"base": x.describe(), "bijection": g.kind}

    def vertex_at(self, m: int) -> int:
        return self.g.forward(m, self.base.vertex_at(m))

    def edge_at(self, m: int) -> Edge:
        src, tgt = self.vertex_at(m), self.vertex_at(m + 1)
        if self.d.entry(m, tgt, src) < 1:
            raise InvalidEdgeError(
                f"pushed generator emits missing edge {src}->{tgt} at {m}")
        return Edge(m, src, tgt, 0)

    def validate_to(self, horizon: int):
        for m in range(horizon):
            self.edge_at(m)
        return True

    def prefix(self, length: int) -> FinitePath:
        return FinitePath(0, self.vertex_at(0),
                          tuple(self.edge_at(i) for i in range(length)))

    def eventual(self, horizon: int = DEFAULT_HORIZON):
        ev = self.base.eventual(horizon)
        if ev is None:
            return None
        if self.g.is_shift_family and self.g.delta_rule is not None \
                and self.g.delta_rule.kind == "const":
            dg = self.g.delta_rule.value
            return EventualTrace(
                ev.start, ev.period, ev.step + ev.period * dg, ev.certified,
                tuple(self.vertex_at(m)
                      for m in range(ev.start, ev.start + ev.period)))
        return None

    def describe(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}


def pushed_generator(x, g, d2: DiagramHandle) -> PushedGenerator:
    return PushedGenerator(x, g, d2)


def make_generator(d: DiagramHandle, kind: str, **params) -> PathGenerator:
    return PathGenerator(d, kind, params)


def parse_generator(d: DiagramHandle, spec) -> PathGenerator:
    """Generator from a spec mapping {kind, ...params}."""
    spec = dict(spec)
    kind = spec.pop("kind", None)
    if kind is None:
        raise UnknownKindError("generator spec needs a 'kind'")
    return PathGenerator(d, kind, spec)


def vertical_from(d, i):
    return make_generator(d, "vertical", vertex=i)


def leftmost_slant_from(d, i):
    return make_generator(d, "leftmost_slant", vertex=i)


def rightmost_slant_from(d, i):
    return make_generator(d, "rightmost_slant", vertex=i)


def alternating_from(d, i):
    return make_generator(d, "alternating", vertex=i)


def climbing(d, i):
    return make_generator(d, "climbing", vertex=i)


def eventually_vertical(d, prefix, i):
    return make_generator(d, "eventually_vertical", prefix=list(prefix), vertex=i)
