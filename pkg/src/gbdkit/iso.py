"""Windowed isomorphism checking and search.

A bijection table on a window is a permutation matrix restricted to that
window; verifying the relabeling identity row by row checks the
permutation-conjugation identity between the two incidence sequences
exactly, with no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bijections import VertexBijectionSeq, partial_sequence
from .diagram import DiagramHandle
from .errors import WindowTooSmallError
from .windows import LevelWindow


def verify_permutation_identity(dA: DiagramHandle, dB: DiagramHandle,
                                g: VertexBijectionSeq, levels: int,
                                windows: LevelWindow | None = None,
                                radius: int = 12) -> bool:
    """Exact row-by-row equality of dB against the g-relabeled dA.

    For each level n <= levels and each target vertex v' in the window
    at level n+1, the complete in-edge row of dB at v' must equal the
    g-pushed row of dA at g_{n+1}^{-1}(v').  Raises WindowTooSmallError
    when g is table-restricted and a needed vertex is missing, so a
    too-small window can never masquerade as a negative.
    """
    if windows is None:
        windows = LevelWindow.uniform(dB.indexing, levels + 1, radius)
    for n in range(levels + 1):
        if (n + 1) not in windows.levels:
            continue
        for v_new in windows.vertices(n + 1):
            if not dB.indexing.contains(v_new):
                continue
            v = g.inverse(n + 1, v_new)
            expected = sorted((g.forward(n, w), m) for w, m in dA.in_edges(n, v))
            if dB.in_edges(n, v_new) != expected:
                return False
    # spot-check invertibility on the window (the permutation property)
    for n in windows.levels:
        for v_new in windows.vertices(n):
            if not dB.indexing.contains(v_new):
                continue
            v = g.inverse(n, v_new)
            if g.forward(n, v) != v_new:
                raise WindowTooSmallError(
                    f"bijection at level {n} is not invertible at {v_new}")
    return True


@dataclass
class IsoWitness:
    """Per-level bijection tables found on windows, plus what was verified."""

    tables: dict  # level -> {vertex: image}
    depth: int
    windows: LevelWindow
    verified_rows: dict = field(default_factory=dict)  # level -> [target vertices]
    nodes_explored: int = 0

    def describe(self):
        return {n: sorted(t.items()) for n, t in self.tables.items()}


@dataclass
class NoneWithinBudget:
    """Bounded-search report; not a proof of non-isomorphism."""

    nodes_explored: int
    budget: int
    depth: int


def _row_multiset(d: DiagramHandle, n: int, v: int) -> tuple:
    return tuple(sorted(m for _, m in d.in_edges(n, v)))


def iso_search(dA: DiagramHandle, dB: DiagramHandle, depth: int,
               windows_a: LevelWindow, windows_b: LevelWindow,
               budget: int = 100_000):
    """Backtracking search for per-level bijection tables on the windows.

    Variables are window vertices; assignment starts at level 0 near the
    window center and spreads along edges, so row constraints bind as
    early as possible.  Candidates must have the same full-row
    multiplicity multiset (exact rows, an isomorphism invariant) and are
    tried in ascending |vertex| order.  Exhausting the node budget is a
    result, not an error.
    """
    variables = []
    for n in range(depth + 1):
        vs = [v for v in windows_a.vertices(n) if dA.indexing.contains(v)]
        variables.extend((n, v) for v in sorted(vs, key=lambda x: (abs(x), x)))
    cand_pool = {
        n: [v for v in windows_b.vertices(n) if dB.indexing.contains(v)]
        for n in range(depth + 1)}
    for n in cand_pool:
        cand_pool[n].sort(key=lambda x: (abs(x), x))

    assignment: dict = {}
    used = {n: set() for n in range(depth + 1)}
    nodes = 0

    in_window_a = {(n, v) for n, v in variables}

    def neighbors_assigned(n, v):
        out = []
        if n > 0:
            for w, m in dA.in_edges(n - 1, v):
                if (n - 1, w) in assignment:
                    out.append((n - 1, w, m, "src"))
        if n < depth:
            lo, hi = windows_a.interval(n + 1)
            lo, hi = dA.indexing.clamp(lo, hi)
            for u in range(lo, hi + 1):
                if (n + 1, u) in assignment and dA.entry(n, u, v) > 0:
                    out.append((n + 1, u, dA.entry(n, u, v), "tgt"))
        return out

    def consistent(n, v, v_img):
        # all already-assigned vertices at the adjacent levels must agree
        if n > 0:
            lo, hi = windows_a.interval(n - 1)
            lo, hi = dA.indexing.clamp(lo, hi)
            row = dict(dA.in_edges(n - 1, v))
            for w in range(lo, hi + 1):
                got = assignment.get((n - 1, w))
                if got is not None and row.get(w, 0) != dB.entry(n - 1, v_img, got):
                    return False
        if n < depth:
            lo, hi = windows_a.interval(n + 1)
            lo, hi = dA.indexing.clamp(lo, hi)
            for u in range(lo, hi + 1):
                got = assignment.get((n + 1, u))
                if got is not None and dA.entry(n, u, v) != dB.entry(n, got, v_img):
                    return False
        return True

    def pick_variable():
        best = None
        for n, v in variables:
            if (n, v) in assignment:
                continue
            touched = bool(neighbors_assigned(n, v))
            key = (0 if touched else 1, n, abs(v), v)
            if best is None or key < best[0]:
                best = (key, (n, v))
        return None if best is None else best[1]

    def backtrack():
        nonlocal nodes
        var = pick_variable()
        if var is None:
            return True
        n, v = var
        sig = _row_multiset(dA, n, v) if n > 0 else None
        for v_img in cand_pool[n]:
            if v_img in used[n]:
                continue
            nodes += 1
            if nodes > budget:
                return False
            if n > 0 and _row_multiset(dB, n, v_img) != sig:
                continue
            if not consistent(n, v, v_img):
                continue
            assignment[(n, v)] = v_img
            used[n].add(v_img)
            if backtrack():
                return True
            del assignment[(n, v)]
            used[n].discard(v_img)
            if nodes > budget:
                return False
        return False

    found = backtrack()
    if not found:
        return NoneWithinBudget(nodes_explored=nodes, budget=budget, depth=depth)

    tables = {n: {} for n in range(depth + 1)}
    for (n, v), v_img in assignment.items():
        tables[n][v] = v_img
    witness = IsoWitness(tables=tables, depth=depth, windows=windows_a,
                         nodes_explored=nodes)
    # record which rows are fully checkable inside the tables
    for n in range(depth):
        rows = []
        for v in tables.get(n + 1, ()):
            if all((n, w) in in_window_a for w, _ in dA.in_edges(n, v)):
                rows.append(v)
        witness.verified_rows[n + 1] = sorted(rows)
    return witness


def verify_witness(dA: DiagramHandle, dB: DiagramHandle, witness: IsoWitness) -> bool:
    """Check a search witness row-by-row on its verified rows."""
    g = partial_sequence(dA.indexing, dB.indexing, witness.tables)
    for n_plus in sorted(witness.verified_rows):
        n = n_plus - 1
        for v in witness.verified_rows[n_plus]:
            expected = sorted((g.forward(n, w), m) for w, m in dA.in_edges(n, v))
            if dB.in_edges(n, g.forward(n_plus, v)) != expected:
                return False
    return True


def row_col_sum(d: DiagramHandle, n: int, mode: str, index: int, win=None):
    """Row sums are exact; column sums are windowed unless a flag bounds
    the column support inside the window."""
    if mode == "row":
        row = d.in_edges(n, index)
        return sum(m for _, m in row), True
    if mode != "col":
        raise ValueError(f"mode must be 'row' or 'col', got {mode!r}")
    if win is None:
        raise ValueError("column sums need a finite window")
    entries = d.out_edges_in_window(n, index, win)
    total = sum(m for _, m in entries)
    exact = False
    sup = d.column_support(n, index)
    if sup is not None and sup.is_finite:
        lo, hi = win
        exact = all(lo <= v <= hi for v, _ in sup.entries)
    else:
        t = d.t_rule()
        if t is not None:
            lo, hi = win
            exact = lo <= index - t(n) and index + t(n) <= hi
    return total, exact
