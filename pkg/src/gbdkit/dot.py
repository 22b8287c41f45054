"""Deterministic DOT rendering of windowed diagram truncations."""

from __future__ import annotations

from .diagram import DiagramHandle
from .windows import LevelWindow


def _node_id(n: int, v: int) -> str:
    tag = f"m{-v}" if v < 0 else str(v)
    return f"L{n}_{tag}"


def render_dot(d: DiagramHandle, levels: int, window=None, radius: int = 4) -> str:
    """One node per (level, vertex) in the window, one edge per
    multiplicity unit; byte-identical across runs."""
    if window is None:
        window = LevelWindow.uniform(d.indexing, levels, radius) \
            if levels >= 0 else LevelWindow({})
    lines = ["digraph diagram {", "  rankdir=TB;", "  node [shape=circle];"]
    lvls = [n for n in window.levels if n <= levels]
    for n in lvls:
        lo, hi = d.indexing.clamp(*window.interval(n))
        names = [f'"{_node_id(n, v)}" [label="{v}"];' for v in range(lo, hi + 1)]
        lines.append("  { rank=same; " + " ".join(names) + " }")
    for n in lvls:
        if n + 1 not in lvls:
            continue
        rlo, rhi = d.indexing.clamp(*window.interval(n + 1))
        clo, chi = d.indexing.clamp(*window.interval(n))
        for v in range(rlo, rhi + 1):
            for w, mult in d.in_edges(n, v):
                if not clo <= w <= chi:
                    continue
                for _ in range(mult):
                    lines.append(
                        f'  "{_node_id(n, w)}" -> "{_node_id(n + 1, v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
