"""Per-level vertex bijections and diagram relabeling.

A bijection sequence g assigns to every level n an invertible map from
the source diagram's vertex ids to the target ids.  Relabeling rewrites
the incidence rule through g; the relabeled handle's row at v' equals
the source row at g_{n+1}^{-1}(v') with sources pushed through g_n.
Structural flags of the result are recomputed from what the bijection
kind provably preserves, never inherited blindly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import indexing as ix
from .diagram import (
    BandedFlag,
    BoundedSizeFlag,
    ColumnSupport,
    DiagramHandle,
    ExplicitLevelsFlag,
    FullOutColumnFlag,
    InfiniteOutDegreesFlag,
    LevelRule,
    TriangularFlag,
)
from .errors import (
    IndexingMismatchError,
    InvariantError,
    UnknownKindError,
    WindowTooSmallError,
)
from .indexing import VertexIndexing


# --- level maps --------------------------------------------------------------

class AffineMap:
    def __init__(self, c: int):
        self.c = c

    def forward(self, v: int) -> int:
        return v + self.c

    def inverse(self, x: int) -> int:
        return x - self.c


class InterleaveMap:
    """Fold the integers onto the nonnegatives: v >= 0 -> 2v, v < 0 -> -2v-1."""

    def forward(self, v: int) -> int:
        return 2 * v if v >= 0 else -2 * v - 1

    def inverse(self, x: int) -> int:
        return x // 2 if x % 2 == 0 else -(x + 1) // 2


class InterleaveInvMap:
    def forward(self, v: int) -> int:
        return v // 2 if v % 2 == 0 else -(v + 1) // 2

    def inverse(self, x: int) -> int:
        return 2 * x if x >= 0 else -2 * x - 1


class FillMap:
    """Finite pin table completed to a total bijection by canonical fill.

    Pinned sources take their table labels; remaining sources, in
    canonical enumeration order, take the smallest unused labels in the
    target's canonical order.  Deterministic and invertible at every
    vertex.
    """

    def __init__(self, src: VertexIndexing, tgt: VertexIndexing, pins: dict):
        self.src = src
        self.tgt = tgt
        self.pins = dict(pins)
        if len(set(self.pins.values())) != len(self.pins):
            raise InvariantError(f"pin table is not injective: {pins}")
        self._by_label = {lab: v for v, lab in self.pins.items()}
        self._src_ranks = sorted(src.canonical_rank(v) for v in self.pins)
        self._tgt_ranks = sorted(tgt.canonical_rank(l) for l in self.pins.values())

    def forward(self, v: int) -> int:
        if v in self.pins:
            return self.pins[v]
        r = self.src.canonical_rank(v)
        r -= sum(1 for pr in self._src_ranks if pr < r)
        for pr in self._tgt_ranks:
            if pr <= r:
                r += 1
        return self.tgt.from_rank(r)

    def inverse(self, x: int) -> int:
        if x in self._by_label:
            return self._by_label[x]
        r = self.tgt.canonical_rank(x)
        r -= sum(1 for pr in self._tgt_ranks if pr < r)
        for pr in self._src_ranks:
            if pr <= r:
                r += 1
        return self.src.from_rank(r)


class PartialMap:
    """Table-only map; raises WindowTooSmallError outside the table."""

    def __init__(self, table: dict):
        self.table = dict(table)
        self._inv = {x: v for v, x in self.table.items()}
        if len(self._inv) != len(self.table):
            raise InvariantError("partial table is not injective")

    def forward(self, v: int) -> int:
        if v not in self.table:
            raise WindowTooSmallError(f"vertex {v} outside the bijection table")
        return self.table[v]

    def inverse(self, x: int) -> int:
        if x not in self._inv:
            raise WindowTooSmallError(f"label {x} outside the bijection table")
        return self._inv[x]


# --- bijection sequences ------------------------------------------------------

class VertexBijectionSeq:
    """Level-indexed family of vertex bijections, evaluable both ways."""

    def __init__(self, kind: str, source_indexing: VertexIndexing,
                 target_indexing: VertexIndexing,
                 map_at: Callable[[int], object],
                 *, level_const: bool = False,
                 delta_rule: Optional[LevelRule] = None,
                 params: Optional[dict] = None):
        self.kind = kind
        self.source_indexing = source_indexing
        self.target_indexing = target_indexing
        self._map_at = map_at
        self._cache: dict = {}
        self.level_const = level_const
        # delta_rule(n) = offset(n+1) - offset(n) for pure-shift families
        self.delta_rule = delta_rule
        self.params = dict(params or {})

    def map_at(self, n: int):
        m = self._cache.get(n)
        if m is None:
            m = self._map_at(n)
            self._cache[n] = m
        return m

    def forward(self, n: int, v: int) -> int:
        self.source_indexing.check(v)
        x = self.map_at(n).forward(v)
        self.target_indexing.check(x, "image vertex")
        return x

    def inverse(self, n: int, x: int) -> int:
        self.target_indexing.check(x, "image vertex")
        v = self.map_at(n).inverse(x)
        self.source_indexing.check(v)
        return v

    @property
    def is_shift_family(self) -> bool:
        return self.kind in ("identity", "level_shift", "cone_shift", "affine")

    def shift_at(self, n: int) -> int:
        if not self.is_shift_family:
            raise ValueError(f"{self.kind} is not a shift family")
        return self.map_at(n).c

    def inverted(self) -> "VertexBijectionSeq":
        if self.is_shift_family:
            delta = None
            if self.delta_rule is not None and self.delta_rule.kind == "const":
                delta = LevelRule.const(-self.delta_rule.value)
            return VertexBijectionSeq(
                "affine", self.target_indexing, self.source_indexing,
                lambda n: AffineMap(-self.shift_at(n)),
                level_const=self.level_const, delta_rule=delta,
                params={"inverse_of": self.kind, **self.params})
        if self.kind == "interleave":
            return VertexBijectionSeq(
                "interleave_inv", self.target_indexing, self.source_indexing,
                lambda n: InterleaveInvMap(), level_const=True)
        if self.kind == "interleave_inv":
            return interleave()
        if self.kind in ("table_fill", "partial"):
            outer = self

            def inv_map(n):
                m = outer.map_at(n)
                if isinstance(m, FillMap):
                    return FillMap(outer.target_indexing, outer.source_indexing,
                                   {lab: v for v, lab in m.pins.items()})
                return PartialMap({x: v for v, x in m.table.items()})

            return VertexBijectionSeq(
                outer.kind, outer.target_indexing, outer.source_indexing,
                inv_map, level_const=outer.level_const,
                params={"inverse_of": outer.kind})
        raise UnknownKindError(f"cannot invert bijection kind {self.kind}")

    def __repr__(self):
        return f"<VertexBijectionSeq {self.kind} {self.params or ''}>"


def identity(indexing: VertexIndexing) -> VertexBijectionSeq:
    return VertexBijectionSeq("identity", indexing, indexing,
                              lambda n: AffineMap(0), level_const=True,
                              delta_rule=LevelRule.const(0))


def interleave() -> VertexBijectionSeq:
    return VertexBijectionSeq("interleave", ix.two_sided(), ix.one_sided(0),
                              lambda n: InterleaveMap(), level_const=True)


def level_shift(step: int) -> VertexBijectionSeq:
    """g_n(i) = i + step*n on two-sided levels."""
    return VertexBijectionSeq("level_shift", ix.two_sided(), ix.two_sided(),
                              lambda n: AffineMap(step * n),
                              level_const=(step == 0),
                              delta_rule=LevelRule.const(step),
                              params={"step": step})


def cone_shift(t_rule) -> VertexBijectionSeq:
    """g_n(v) = v - sum of t over levels below n; straightens width-t slants."""
    rule = t_rule if isinstance(t_rule, LevelRule) else LevelRule.const(int(t_rule))
    delta = LevelRule.const(-rule.value) if rule.kind == "const" else None
    zero = rule.kind == "const" and rule.value == 0
    return VertexBijectionSeq("cone_shift", ix.two_sided(), ix.two_sided(),
                              lambda n: AffineMap(-rule.partial_sum(0, n)),
                              level_const=zero, delta_rule=delta,
                              params={"t": rule.value if rule.kind == "const" else list(rule.table)})


def affine_levels(offsets: Callable[[int], int], source: VertexIndexing,
                  target: VertexIndexing, *, delta_rule=None,
                  params=None) -> VertexBijectionSeq:
    return VertexBijectionSeq("affine", source, target,
                              lambda n: AffineMap(offsets(n)),
                              delta_rule=delta_rule, params=params)


def fill_sequence(src: VertexIndexing, tgt: VertexIndexing,
                  pins_at: Callable[[int], dict], *, params=None) -> VertexBijectionSeq:
    """Finite-table-plus-canonical-fill bijections, pins supplied per level."""
    return VertexBijectionSeq("table_fill", src, tgt,
                              lambda n: FillMap(src, tgt, pins_at(n)),
                              params=params)


def partial_sequence(src: VertexIndexing, tgt: VertexIndexing,
                     tables: dict) -> VertexBijectionSeq:
    """Window-restricted tables, e.g. an isomorphism-search witness."""
    tbl = {int(n): dict(t) for n, t in tables.items()}

    def map_at(n):
        if n not in tbl:
            raise WindowTooSmallError(f"no bijection table at level {n}")
        return PartialMap(tbl[n])

    return VertexBijectionSeq("partial", src, tgt, map_at)


def builtin_bijection(kind: str, params: Optional[dict] = None) -> VertexBijectionSeq:
    """Named bijection constructors usable from spec files."""
    params = dict(params or {})
    if kind == "identity":
        mode = params.get("mode", "two_sided")
        base = int(params.get("base", 1))
        idx = ix.two_sided() if mode == "two_sided" else ix.one_sided(base)
        return identity(idx)
    if kind == "interleave":
        return interleave()
    if kind == "level_shift":
        return level_shift(int(params.get("step", 1)))
    if kind == "cone_shift":
        t = params.get("t", 0)
        rule = LevelRule("table", int(params.get("tail", 0)),
                         tuple(int(x) for x in t)) if isinstance(t, (list, tuple)) \
            else LevelRule.const(int(t))
        return cone_shift(rule)
    if kind == "table_fill":
        src = _indexing_from(params.get("source", {"mode": "two_sided"}))
        tgt = _indexing_from(params.get("target", {"mode": "one_sided", "base": 0}))
        tables = {int(n): {int(v): int(lab) for v, lab in t.items()}
                  for n, t in dict(params.get("tables", {})).items()}
        return fill_sequence(src, tgt, lambda n: tables.get(n, {}),
                             params={"tables": tables})
    raise UnknownKindError(f"unknown bijection kind {kind!r}")


def _indexing_from(desc: dict) -> VertexIndexing:
    mode = desc.get("mode", "two_sided")
    if mode == "two_sided":
        return ix.two_sided()
    return ix.one_sided(int(desc.get("base", 1)))


# --- relabeling ---------------------------------------------------------------

def _check_compatible(d: DiagramHandle, g: VertexBijectionSeq):
    si = g.source_indexing
    if si.mode != d.indexing.mode or (
            si.mode == ix.ONE_SIDED and si.base != d.indexing.base):
        raise IndexingMismatchError(
            f"bijection source indexing {si} does not match diagram {d.indexing}")
    if g.is_shift_family and d.indexing.mode == ix.ONE_SIDED:
        if any(g.shift_at(n) != 0 for n in range(6)):
            raise IndexingMismatchError(
                "nonzero level shifts would move a one-sided base per level")


def _relabeled_flags(d: DiagramHandle, g: VertexBijectionSeq) -> tuple:
    flags = []
    banded = d.get_flag(BandedFlag)
    bsize = d.get_flag(BoundedSizeFlag)
    const_delta = (g.delta_rule.value
                   if g.delta_rule is not None and g.delta_rule.kind == "const"
                   else None)
    if g.is_shift_family and const_delta is not None:
        delta = const_delta
        if banded is not None:
            flags.append(BandedFlag(tuple(sorted(
                (o - delta, m) for o, m in banded.offsets))))
        if bsize is not None and bsize.t_rule.kind == "const":
            t = bsize.t_rule.value
            flags.append(BoundedSizeFlag(LevelRule.const(t + abs(delta)),
                                         bsize.l_rule))
            if -t - delta >= 0:
                flags.append(TriangularFlag("upper", -t - delta))
            if t - delta <= 0:
                flags.append(TriangularFlag("lower", t - delta))
        for tf in d.get_flags(TriangularFlag):
            flags.append(TriangularFlag(tf.direction, tf.slack - delta))
    elif g.kind == "interleave":
        if bsize is not None and bsize.t_rule.kind == "const":
            flags.append(BoundedSizeFlag(LevelRule.const(2 * bsize.t_rule.value),
                                         bsize.l_rule))
    if g.level_const:
        for f in d.get_flags(FullOutColumnFlag):
            flags.append(FullOutColumnFlag(g.forward(0, f.vertex)))
    if d.get_flag(InfiniteOutDegreesFlag) is not None:
        flags.append(InfiniteOutDegreesFlag())
    exp = d.get_flag(ExplicitLevelsFlag)
    if exp is not None:
        flags.append(exp)
    # drop triangular flags made vacuous or duplicated
    seen, out = set(), []
    for f in flags:
        key = repr(f)
        if key not in seen:
            seen.add(key)
            out.append(f)
    return tuple(out)


def _relabeled_stationary(d: DiagramHandle, g: VertexBijectionSeq) -> bool:
    if not d.stationary:
        return False
    if g.level_const:
        return True
    if g.is_shift_family and g.delta_rule is not None \
            and g.delta_rule.kind == "const" and d.get_flag(BandedFlag) is not None:
        return True
    return False


def relabel(d: DiagramHandle, g: VertexBijectionSeq) -> DiagramHandle:
    """Diagram carrying the same edges under relabeled vertex ids."""
    _check_compatible(d, g)
    tgt = g.target_indexing

    def rows(n, v_new):
        v = g.inverse(n + 1, v_new)
        return sorted((g.forward(n, w), m) for w, m in d.in_edges(n, v))

    def cols(n, w_new):
        w = g.inverse(n, w_new)
        sup = d.column_support(n, w)
        if sup is None:
            return None
        if sup.is_finite:
            return ColumnSupport.finite(
                (g.forward(n + 1, v), m) for v, m in sup.entries)
        return sup

    probe_vertex = d.indexing.base if d.indexing.mode == ix.ONE_SIDED else 0
    has_cols = d.column_support(0, probe_vertex) is not None
    return DiagramHandle(
        tgt, rows,
        stationary=_relabeled_stationary(d, g),
        flags=_relabeled_flags(d, g),
        col_rule=cols if has_cols else None,
        name=f"relabel({d.name},{g.kind})",
        params={"base": d.name, "bijection": g.kind, **g.params})
