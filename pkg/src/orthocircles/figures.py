"""Matplotlib rendering of arrangements for the CLI report commands.

Each report command can drop a figure next to its delimited output. The
deterministic vector export lives in the CLI module; these figures are for
eyeballing, not for byte-stable golden files.
"""

from __future__ import annotations

from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle as MplCircle

from .arrangement import Arrangement
from .analysis import Classification
from .cells import FaceCensus
from .graph import IntersectionGraph

_CLASS_COLORS = {"red": "#d62728", "black": "#1a1a1a", "green": "#2ca02c"}
_NEUTRAL = "#7f7f7f"


def _circle_color(cid: str, cls: Optional[Classification]) -> str:
    if cls is None:
        return _NEUTRAL
    if cid == cls.red:
        return _CLASS_COLORS["red"]
    if cid in cls.black:
        return _CLASS_COLORS["black"]
    if cid in cls.green:
        return _CLASS_COLORS["green"]
    return _NEUTRAL


def _draw_arrangement(ax, arr: Arrangement, cls: Optional[Classification]) -> None:
    for c in arr.circles:
        ax.add_patch(
            MplCircle(
                (c.center.x, c.center.y),
                c.radius,
                fill=False,
                edgecolor=_circle_color(c.id, cls),
                linewidth=0.8,
            )
        )
    xs = [c.center.x for c in arr.circles]
    ys = [c.center.y for c in arr.circles]
    rs = [c.radius for c in arr.circles]
    if xs:
        pad = 0.05 * max(max(r for r in rs), 1e-9)
        ax.set_xlim(min(x - r for x, r in zip(xs, rs)) - pad, max(x + r for x, r in zip(xs, rs)) + pad)
        ax.set_ylim(min(y - r for y, r in zip(ys, rs)) - pad, max(y + r for y, r in zip(ys, rs)) + pad)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])


def _draw_graph(ax, g: IntersectionGraph) -> None:
    for u, v in sorted(g.edges):
        pu, pv = g.positions[u], g.positions[v]
        ax.plot([pu.x, pv.x], [pu.y, pv.y], color="#1f77b4", linewidth=0.9, zorder=3)
    ax.plot(
        [p.x for p in g.positions.values()],
        [p.y for p in g.positions.values()],
        "o",
        color="#1f77b4",
        markersize=2.5,
        zorder=4,
    )


def render_arrangement(
    path: str,
    arr: Arrangement,
    classification: Optional[Classification] = None,
    graph: Optional[IntersectionGraph] = None,
    census: Optional[FaceCensus] = None,
    title: Optional[str] = None,
) -> None:
    """Write a figure of the arrangement (with optional embedded graph
    overlay or face-census histogram) to ``path``."""
    if census is not None:
        fig, (ax, axh) = plt.subplots(1, 2, figsize=(10, 5))
        sides = sorted(census.by_sides)
        axh.bar([str(s) for s in sides], [census.by_sides[s] for s in sides], color=_NEUTRAL)
        axh.set_xlabel("bounding arcs")
        axh.set_ylabel("bounded faces")
    else:
        fig, ax = plt.subplots(figsize=(6, 6))
    _draw_arrangement(ax, arr, classification)
    if graph is not None:
        _draw_graph(ax, graph)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
