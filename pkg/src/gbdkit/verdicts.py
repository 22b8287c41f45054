"""Three-valued probe results and non-reachability invariants.

Finite search can never prove a global negative on an infinite diagram,
so a No verdict always carries an invariant: a pattern verified
exhaustively on a window and backed beyond it by a structural flag of
the handle.  Certificates record both the verified window and the flags
assumed, and every exclusion they license is a one-line arithmetic
consequence of the pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .diagram import (
    BandedFlag,
    BoundedSizeFlag,
    DiagramHandle,
    TriangularFlag,
)
from .windows import LevelWindow

TRIANGULAR = "triangular_support"
RESIDUE = "residue_class"
CLOPEN = "clopen_partition"
CONE = "cone_bound"

ALL_KINDS = (TRIANGULAR, RESIDUE, CLOPEN, CONE)

# fixed search space: covers every band pattern in the catalog and keeps
# the scan instantaneous
MAX_MODULUS = 6
MAX_LEVEL_COEFF = 2
MAX_SLACK = 2


@dataclass(frozen=True)
class NonReachInvariant:
    kind: str
    params: tuple
    window: tuple = ()          # ((level, lo, hi), ...) where verified
    verified: bool = False
    global_via: tuple = ()      # flag descriptions backing it beyond the window

    @property
    def is_global(self) -> bool:
        return bool(self.global_via)

    def describe(self) -> dict:
        names = {TRIANGULAR: ("direction", "slack"),
                 RESIDUE: ("modulus", "level_coeff"),
                 CLOPEN: ("modulus", "level_coeff"),
                 CONE: ("t",)}
        return {"kind": self.kind,
                "params": dict(zip(names[self.kind], self.params)),
                "window": [list(w) for w in self.window],
                "verified": self.verified,
                "structural_assumptions": list(self.global_via)}

    # -- exclusion logic ----------------------------------------------

    def excludes_pair(self, i: int, j: int) -> bool:
        """No path from i (any level) to j at any strictly later level."""
        if not self.is_global:
            return False
        if self.kind == TRIANGULAR:
            direction, c = self.params
            if direction == "lower" and c <= 0:
                return j < i - c
            if direction == "upper" and c >= 0:
                return j > i - c
            return False
        if self.kind in (RESIDUE, CLOPEN):
            p, a = self.params
            g = gcd(a % p, p) or p
            return (j - i) % g != 0
        if self.kind == CONE:
            (t,) = self.params
            return t == 0 and j != i
        return False

    def step_bounds(self) -> tuple:
        """Per-step change (lo, hi) of vertex ids along one edge, with
        None for an unbounded side."""
        if self.kind == TRIANGULAR:
            direction, c = self.params
            # edge from source w to target v; lower: w <= v + c means v >= w - c
            if direction == "lower":
                return (-c, None)
            return (None, -c)
        if self.kind == CONE:
            (t,) = self.params
            return (-t, t)
        return (None, None)


@dataclass(frozen=True)
class Verdict:
    value: str                       # "yes" | "no" | "unknown"
    witness: object = None
    certificate: object = None
    depth: Optional[int] = None
    windows: object = None
    detail: dict = field(default_factory=dict)

    @property
    def is_yes(self) -> bool:
        return self.value == "yes"

    @property
    def is_no(self) -> bool:
        return self.value == "no"

    @property
    def is_unknown(self) -> bool:
        return self.value == "unknown"

    @classmethod
    def yes(cls, witness=None, **detail):
        return cls("yes", witness=witness, detail=detail)

    @classmethod
    def no(cls, certificate=None, **detail):
        return cls("no", certificate=certificate, detail=detail)

    @classmethod
    def unknown(cls, depth=None, windows=None, **detail):
        return cls("unknown", depth=depth, windows=windows, detail=detail)

    def describe(self) -> dict:
        out = {"verdict": self.value}
        if self.is_yes and self.witness is not None:
            w = self.witness
            out["witness"] = w.describe() if hasattr(w, "describe") else w
        if self.is_no and self.certificate is not None:
            c = self.certificate
            out["certificate"] = c.describe() if hasattr(c, "describe") else c
        if self.is_unknown:
            out["searched_depth"] = self.depth
            if self.windows is not None:
                out["searched_windows"] = (
                    self.windows.describe() if hasattr(self.windows, "describe")
                    else self.windows)
        if self.detail:
            out["detail"] = _plain(self.detail)
        return out


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "describe"):
        return obj.describe()
    return obj


# --- search and verification --------------------------------------------------


def _window_rows(d: DiagramHandle, window: LevelWindow):
    for n in window.levels:
        if n + 1 not in window.levels:
            continue
        if not d.level_known(n):
            continue
        lo, hi = d.indexing.clamp(*window.interval(n + 1))
        for v in range(lo, hi + 1):
            yield n, v, d.in_edges(n, v)


def _verify_triangular(d, window, direction, c) -> bool:
    for n, v, row in _window_rows(d, window):
        for w, _ in row:
            ok = w <= v + c if direction == "lower" else w >= v + c
            if not ok:
                return False
    return True


def _verify_residue(d, window, p, a) -> bool:
    for n, v, row in _window_rows(d, window):
        for w, _ in row:
            if (v + a * (n + 1) - w - a * n) % p != 0:
                return False
    return True


def _triangular_global_via(d: DiagramHandle, direction, c):
    via = []
    for f in d.get_flags(TriangularFlag):
        if f.direction == direction and (
                f.slack <= c if direction == "lower" else f.slack >= c):
            via.append(f"TriangularFlag({f.direction},{f.slack})")
    banded = d.get_flag(BandedFlag)
    if banded is not None:
        offs = [o for o, _ in banded.offsets]
        if direction == "lower" and max(offs) <= c:
            via.append("BandedFlag")
        if direction == "upper" and min(offs) >= c:
            via.append("BandedFlag")
    return tuple(via)


def _residue_global_via(d: DiagramHandle, p, a):
    banded = d.get_flag(BandedFlag)
    if banded is not None and all((a - o) % p == 0 for o, _ in banded.offsets):
        return ("BandedFlag",)
    return ()


def window_desc(window: LevelWindow) -> tuple:
    return tuple((n,) + tuple(window.interval(n)) for n in window.levels)


def find_invariants(d: DiagramHandle, window: LevelWindow,
                    kinds=ALL_KINDS, include_slope_only: bool = False) -> list:
    """All invariants of the requested kinds that verify exhaustively on
    the window.

    By default only patterns that exclude some vertex pair outright are
    returned (lower slack <= 0, upper slack >= 0).  With
    include_slope_only, weak triangular bounds (the other sign) are
    added too: they exclude no pair on their own but bound the per-step
    drift, which trace-separation arguments exploit.
    """
    found = []
    wdesc = window_desc(window)
    if TRIANGULAR in kinds:
        lo_slacks = range(-MAX_SLACK, (MAX_SLACK if include_slope_only else 0) + 1)
        up_slacks = range(MAX_SLACK, (-MAX_SLACK if include_slope_only else 0) - 1, -1)
        # strongest slack first: most negative for lower, largest for upper
        for c in lo_slacks:
            if _verify_triangular(d, window, "lower", c):
                found.append(NonReachInvariant(
                    TRIANGULAR, ("lower", c), wdesc, True,
                    _triangular_global_via(d, "lower", c)))
                break
        for c in up_slacks:
            if _verify_triangular(d, window, "upper", c):
                found.append(NonReachInvariant(
                    TRIANGULAR, ("upper", c), wdesc, True,
                    _triangular_global_via(d, "upper", c)))
                break
    if RESIDUE in kinds or CLOPEN in kinds:
        seen = set()
        for p in range(2, MAX_MODULUS + 1):
            for a in range(-MAX_LEVEL_COEFF, MAX_LEVEL_COEFF + 1):
                a_canon = a % p
                if (p, a_canon) in seen:
                    continue
                if _verify_residue(d, window, p, a_canon):
                    seen.add((p, a_canon))
                    via = _residue_global_via(d, p, a_canon)
                    if RESIDUE in kinds:
                        found.append(NonReachInvariant(
                            RESIDUE, (p, a_canon), wdesc, True, via))
                    if CLOPEN in kinds and p == 2:
                        found.append(NonReachInvariant(
                            CLOPEN, (p, a_canon), wdesc, True, via))
    if CONE in kinds:
        t_rule = d.t_rule()
        if t_rule is not None and t_rule.kind == "const":
            t = t_rule.value
            ok = all(abs(w - v) <= t
                     for _, v, row in _window_rows(d, window) for w, _ in row)
            if ok:
                found.append(NonReachInvariant(
                    CONE, (t,), wdesc, True, ("BoundedSizeFlag",)))
    return found


def residue_coloring(inv: NonReachInvariant, window: LevelWindow) -> dict:
    """Materialize a residue invariant as a class table on a window."""
    p, a = inv.params
    return {(n, v): (v + a * n) % p
            for n in window.levels for v in window.vertices(n)}
