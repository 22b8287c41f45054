"""Diagram handles: lazily evaluable incidence rules with structural flags.

A generalized Bratteli diagram is determined by its incidence matrices
F_n, one per level, with entry (v, w) counting the edges from vertex w at
level n to vertex v at level n+1.  Rows (in-edges of a fixed target) are
finite and nonempty; columns (out-edges of a fixed source) may be
infinite.  A handle therefore takes the row rule as the primitive and
optionally carries an exact column-support rule where the family's
definition pins it down.

Edges are identified as (level, source, target, copy_index) with
copy_index ranging over 0..multiplicity-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InvalidVertexError, InvariantError, UnsupportedLevelError
from .indexing import VertexIndexing
from .windows import LevelWindow

FLAG_VERIFY_LEVELS = 4
FLAG_VERIFY_RADIUS = 16


@dataclass(frozen=True)
class LevelRule:
    """Integer-valued function of the level: constant, or table with constant tail."""

    kind: str = "const"
    value: int = 0
    table: tuple = ()

    def __call__(self, n: int) -> int:
        if self.kind == "const":
            return self.value
        if n < len(self.table):
            return self.table[n]
        return self.value

    @classmethod
    def const(cls, value: int) -> "LevelRule":
        return cls("const", value)

    def partial_sum(self, lo: int, hi: int) -> int:
        """Sum of rule values over levels lo..hi-1."""
        if hi <= lo:
            return 0
        if self.kind == "const":
            return self.value * (hi - lo)
        return sum(self(k) for k in range(lo, hi))


# --- structural flags -------------------------------------------------------

@dataclass(frozen=True)
class BandedFlag:
    """f(v, w) = offsets[w - v], level-independent; zero elsewhere."""

    offsets: tuple  # sorted tuple of (offset, value)

    @classmethod
    def from_dict(cls, d) -> "BandedFlag":
        items = tuple(sorted((int(o), int(m)) for o, m in dict(d).items()))
        return cls(items)

    def as_dict(self):
        return dict(self.offsets)

    @property
    def width(self) -> int:
        return max(abs(o) for o, _ in self.offsets)

    @property
    def row_sum(self) -> int:
        return sum(m for _, m in self.offsets)


@dataclass(frozen=True)
class TriangularFlag:
    """Support bound on every row: each source w of target v satisfies
    w <= v + slack ('lower') or w >= v + slack ('upper')."""

    direction: str  # "lower" | "upper"
    slack: int = 0


@dataclass(frozen=True)
class FullOutColumnFlag:
    """The column of this vertex covers every vertex on the next level."""

    vertex: int


@dataclass(frozen=True)
class InfiniteOutDegreesFlag:
    """Every vertex has infinitely many outgoing edges."""


@dataclass(frozen=True)
class BoundedSizeFlag:
    """Row support within distance t_rule(n) of the target; row sums
    bounded by l_rule(n) when a sum bound is known."""

    t_rule: LevelRule
    l_rule: Optional[LevelRule] = None


@dataclass(frozen=True)
class ExplicitLevelsFlag:
    """Rows come from finitely many explicit matrices plus an extension policy."""

    extension: str = "error_beyond"
    declared_levels: int = 0


# --- column support ---------------------------------------------------------

@dataclass(frozen=True)
class ColumnSupport:
    """Exact knowledge about one column of an incidence matrix.

    kind 'finite': entries is the complete list of (target, mult).
    kind 'all': the column covers every vertex of the next level.
    kind 'infinite': infinitely many targets, not further described.
    """

    kind: str
    entries: tuple = ()

    @classmethod
    def finite(cls, entries) -> "ColumnSupport":
        return cls("finite", tuple(sorted((int(v), int(m)) for v, m in entries)))

    @classmethod
    def all_targets(cls) -> "ColumnSupport":
        return cls("all")

    @classmethod
    def infinite(cls) -> "ColumnSupport":
        return cls("infinite")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"


# --- the handle -------------------------------------------------------------

class DiagramHandle:
    """Immutable evaluable incidence rule for a generalized Bratteli diagram.

    All queries are pure; the only internal state is a transparent row
    cache, safe under concurrent reads.
    """

    def __init__(
        self,
        indexing: VertexIndexing,
        row_rule: Callable[[int, int], list],
        *,
        stationary: bool = False,
        flags: tuple = (),
        col_rule: Optional[Callable[[int, int], Optional[ColumnSupport]]] = None,
        name: str = "custom",
        params: Optional[dict] = None,
        verify_flags: bool = True,
    ):
        self.indexing = indexing
        self.stationary = stationary
        self.flags = tuple(flags)
        self.name = name
        self.params = dict(params or {})
        self._row_rule = row_rule
        self._col_rule = col_rule
        self._row_cache: dict = {}
        if verify_flags:
            self._verify_flags()

    # -- basic queries --------------------------------------------------

    def level_known(self, n: int) -> bool:
        """Whether level n's incidence is defined (explicit specs may end)."""
        exp = self.get_flag(ExplicitLevelsFlag)
        if exp is None or exp.extension == "repeat_last":
            return n >= 0
        return 0 <= n < exp.declared_levels

    def in_edges(self, n: int, v: int) -> list:
        """Complete row of F_n at target v: [(source, mult), ...], sources ascending."""
        if n < 0:
            raise InvalidVertexError(f"negative level {n}")
        self.indexing.check(v)
        exp = self.get_flag(ExplicitLevelsFlag)
        if exp is not None and n >= exp.declared_levels:
            if exp.extension == "error_beyond":
                raise UnsupportedLevelError(
                    f"level {n} beyond the {exp.declared_levels} declared levels")
            n = exp.declared_levels - 1
        key = (0 if self.stationary else n, v)
        row = self._row_cache.get(key)
        if row is None:
            row = self._validated_row(n, v)
            self._row_cache[key] = row
        return list(row)

    def _validated_row(self, n: int, v: int) -> tuple:
        raw = self._row_rule(n, v)
        row = sorted((int(w), int(m)) for w, m in raw)
        if not row:
            raise InvariantError(f"empty incidence row at level {n}, vertex {v}")
        seen = set()
        for w, m in row:
            if m < 1:
                raise InvariantError(f"nonpositive multiplicity {m} at ({n}, {v}, {w})")
            if w in seen:
                raise InvariantError(f"duplicate source {w} in row ({n}, {v})")
            seen.add(w)
            self.indexing.check(w, "source")
        return tuple(row)

    def in_sources(self, n: int, v: int) -> list:
        return [w for w, _ in self.in_edges(n, v)]

    def entry(self, n: int, v: int, w: int) -> int:
        """Single matrix entry f^(n)_{vw}."""
        for src, m in self.in_edges(n, v):
            if src == w:
                return m
        return 0

    def out_edges_in_window(self, n: int, w: int, win) -> list:
        """All (target, mult) with target in win; complete within win only."""
        self.indexing.check(w)
        if win is None:
            raise ValueError("window required: columns may be infinite")
        lo, hi = self.indexing.clamp(*win)
        out = []
        for v in range(lo, hi + 1):
            m = self.entry(n, v, w)
            if m:
                out.append((v, m))
        return out

    def incidence_window(self, n: int, row_win, col_win) -> list:
        """Dense matrix M[v][w] = f^(n)_{vw} for v in row_win, w in col_win."""
        rlo, rhi = row_win
        clo, chi = col_win
        for v in (rlo, rhi):
            self.indexing.check(v, "row vertex")
        for w in (clo, chi):
            self.indexing.check(w, "column vertex")
        mat = []
        for v in range(rlo, rhi + 1):
            rowmap = dict(self.in_edges(n, v))
            mat.append([rowmap.get(w, 0) for w in range(clo, chi + 1)])
        return mat

    def column_support(self, n: int, w: int) -> Optional[ColumnSupport]:
        """Exact column knowledge when the defining rule provides it, else None."""
        self.indexing.check(w)
        if self._col_rule is None:
            return None
        return self._col_rule(n, w)

    def out_edges_exact(self, n: int, w: int) -> Optional[list]:
        """Complete out-edge list when the column is known finite, else None."""
        sup = self.column_support(n, w)
        if sup is not None and sup.is_finite:
            return list(sup.entries)
        return None

    # -- flags ------------------------------------------------------------

    def get_flag(self, cls):
        for f in self.flags:
            if isinstance(f, cls):
                return f
        return None

    def get_flags(self, cls):
        return [f for f in self.flags if isinstance(f, cls)]

    def t_rule(self) -> Optional[LevelRule]:
        """Row-width bound per level, from a BoundedSize or Banded flag."""
        bs = self.get_flag(BoundedSizeFlag)
        if bs is not None:
            return bs.t_rule
        banded = self.get_flag(BandedFlag)
        if banded is not None:
            return LevelRule.const(banded.width)
        return None

    def _try_row(self, n: int, v: int):
        """Row, or None when v is outside the declared vertex universe."""
        try:
            return self.in_edges(n, v)
        except InvalidVertexError:
            return None

    def _verify_flags(self):
        """Spot-verify every declared flag on a default window; reject failures.

        Flags remain assumptions beyond the verified window; certificate
        consumers report them as such.  Window vertices without declared
        rows (explicit specs) are skipped.
        """
        levels = FLAG_VERIFY_LEVELS
        lo, hi = self.indexing.default_interval(FLAG_VERIFY_RADIUS)
        for flag in self.flags:
            for n in range(levels + 1):
                if not self.level_known(n):
                    break
                if isinstance(flag, BandedFlag):
                    offs = flag.offsets
                    for v in range(lo, hi + 1):
                        row = self._try_row(n, v)
                        want = sorted(
                            (v + o, m) for o, m in offs if self.indexing.contains(v + o))
                        if row is not None and row != want:
                            raise InvariantError(
                                f"Banded flag fails at level {n}, vertex {v}")
                elif isinstance(flag, TriangularFlag):
                    for v in range(lo, hi + 1):
                        for w, _ in self._try_row(n, v) or ():
                            ok = (w <= v + flag.slack if flag.direction == "lower"
                                  else w >= v + flag.slack)
                            if not ok:
                                raise InvariantError(
                                    f"Triangular({flag.direction}) flag fails at "
                                    f"level {n}: source {w} of target {v}")
                elif isinstance(flag, FullOutColumnFlag):
                    self.indexing.check(flag.vertex, "full-out column vertex")
                    for v in range(lo, hi + 1):
                        row = self._try_row(n, v)
                        if row is not None and dict(row).get(flag.vertex, 0) == 0:
                            raise InvariantError(
                                f"FullOutColumn({flag.vertex}) misses target {v} "
                                f"at level {n}")
                elif isinstance(flag, InfiniteOutDegreesFlag):
                    slo, shi = self.indexing.default_interval(4)
                    for w in range(slo, shi + 1):
                        out = [(v, dict(self._try_row(n, v) or {}).get(w, 0))
                               for v in range(lo, hi + 1)]
                        out = [(v, m) for v, m in out if m]
                        if len(out) < 3 or max(v for v, _ in out) < w + 8:
                            raise InvariantError(
                                f"InfiniteOutDegrees flag implausible at vertex {w}, "
                                f"level {n}")
                elif isinstance(flag, BoundedSizeFlag):
                    t = flag.t_rule(n)
                    for v in range(lo, hi + 1):
                        row = self._try_row(n, v)
                        if row is None:
                            continue
                        if any(abs(w - v) > t for w, _ in row):
                            raise InvariantError(
                                f"BoundedSize t={t} fails at level {n}, vertex {v}")
                        if flag.l_rule is not None:
                            if sum(m for _, m in row) > flag.l_rule(n):
                                raise InvariantError(
                                    f"BoundedSize row-sum bound fails at level {n}, "
                                    f"vertex {v}")
        if self._col_rule is not None:
            self._verify_col_rule(levels, (lo, hi))

    def _verify_col_rule(self, levels: int, win):
        lo, hi = win
        slo, shi = self.indexing.default_interval(8)
        for n in range(levels + 1):
            if not self.level_known(n):
                break
            for w in range(slo, shi + 1):
                try:
                    sup = self._col_rule(n, w)
                except InvalidVertexError:
                    continue
                if sup is None:
                    continue
                windowed = []
                for v in range(lo, hi + 1):
                    m = dict(self._try_row(n, v) or {}).get(w, 0)
                    if m:
                        windowed.append((v, m))
                if sup.is_finite:
                    claimed = [(v, m) for v, m in sup.entries if lo <= v <= hi]
                    if claimed != windowed:
                        raise InvariantError(
                            f"column rule disagrees with rows at level {n}, "
                            f"source {w}")
                    for v, m in sup.entries:
                        row = self._try_row(n, v)
                        if row is not None and dict(row).get(w, 0) != m:
                            raise InvariantError(
                                f"column rule claims ({v},{m}) missing from rows "
                                f"at level {n}, source {w}")
                elif sup.kind == "all":
                    for v in range(lo, hi + 1):
                        row = self._try_row(n, v)
                        if row is not None and dict(row).get(w, 0) == 0:
                            raise InvariantError(
                                f"column rule 'all' fails at level {n}, source {w}")

    # -- misc -------------------------------------------------------------

    def default_window(self, levels: int, radius: int) -> LevelWindow:
        return LevelWindow.uniform(self.indexing, levels, radius)

    def fingerprint(self) -> str:
        import hashlib
        import json

        payload = json.dumps(
            {"name": self.name, "params": self.params,
             "indexing": [self.indexing.mode, self.indexing.base]},
            sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __repr__(self):
        return f"<DiagramHandle {self.name} {self.params or ''}>"
