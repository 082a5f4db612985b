"""Support diagrams: ASCII grids and SVG files laid out on the quiver chart."""

from __future__ import annotations

from collections import defaultdict
from typing import IO

import matplotlib

matplotlib.use("Agg")

from matplotlib.backends.backend_svg import FigureCanvasSVG  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Circle, FancyArrowPatch  # noqa: E402

from .quiver import QSupport, QVertex, arrows_from  # noqa: E402

PITCH = 48  # px per chart step; SVG user units are points at 72 dpi
RADIUS = 0.3


def _by_component(support: QSupport) -> dict[int, list[QVertex]]:
    out: dict[int, list[QVertex]] = defaultdict(list)
    for v in support:
        out[v.offset].append(v)
    return dict(sorted(out.items()))


def ascii_grid(support: QSupport) -> str:
    """Chart picture with rows from top to bottom.

    'o' marks a vertex of multiplicity 1, a digit a larger multiplicity and
    '.' an empty cell of the bounding box. Each chart component gets its
    own block, headed by the lowest-left vertex of the box.
    """
    if not support:
        return "(empty support)"
    blocks = []
    for off, vs in _by_component(support).items():
        cells = {(v.x, v.y): support.mult[v] for v in vs}
        xs = [x for x, _ in cells]
        ys = [y for _, y in cells]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        lines = []
        for y in range(y1, y0 - 1, -1):
            row = []
            for x in range(x0, x1 + 1):
                m = cells.get((x, y))
                row.append("." if m is None else "o" if m == 1 else str(m) if m < 10 else "+")
            lines.append(" ".join(row))
        corner = QVertex.from_chart(x0, y0, off) if x0 >= y0 else None
        head = f"lowest-left cell {corner.label()}" if corner else f"component offset {off}"
        blocks.append(head + "\n" + "\n".join(lines))
    return "\n\n".join(blocks)


def support_figure(support: QSupport, title: str | None = None) -> Figure:
    """A matplotlib figure with one circle per vertex and the arrows between them."""
    matplotlib.rcParams["svg.hashsalt"] = "p2bundles"
    comps = _by_component(support)
    # components are drawn side by side, separated by two empty columns
    shift: dict[int, int] = {}
    cursor = 0
    spans = []
    for off, vs in comps.items():
        x0 = min(v.x for v in vs)
        shift[off] = cursor - x0
        width = max(v.x for v in vs) - x0
        spans.append(width)
        cursor += width + 3
    ys = [v.y for v in support] or [0]
    width_steps = max(cursor - 3, 0) + 1
    height_steps = max(ys) - min(ys) + 1
    margin = 0.8
    w_in = (width_steps + 2 * margin) * PITCH / 72
    h_in = (height_steps + 2 * margin + (0.4 if title else 0)) * PITCH / 72
    fig = Figure(figsize=(w_in, h_in), dpi=72)
    FigureCanvasSVG(fig)
    ax = fig.add_axes((0, 0, 1, 1))
    ax.set_xlim(-margin, width_steps - 1 + margin)
    ax.set_ylim(min(ys) - margin, max(ys) + margin + (0.4 if title else 0))
    ax.set_aspect("equal")
    ax.axis("off")

    def pos(v: QVertex) -> tuple[float, float]:
        return v.x + shift[v.offset], v.y

    for v in support:
        for a in arrows_from(v):
            if a.target in support:
                (x0, y0), (x1, y1) = pos(v), pos(a.target)
                ax.add_patch(
                    FancyArrowPatch(
                        (x0, y0), (x1, y1), arrowstyle="-|>", mutation_scale=10,
                        shrinkA=RADIUS * PITCH, shrinkB=RADIUS * PITCH, color="0.35", lw=1,
                    )
                )
    for v, m in support.mult.items():
        x, y = pos(v)
        ax.add_patch(Circle((x, y), RADIUS, facecolor="white", edgecolor="black", lw=1.2))
        ax.text(x, y, f"S^{v.l}Q({v.t})", ha="center", va="center", fontsize=6.5)
        if m > 1:
            ax.add_patch(Circle((x + 0.26, y + 0.26), 0.12, facecolor="black"))
            ax.text(x + 0.26, y + 0.26, str(m), ha="center", va="center", fontsize=6, color="white")
    if title:
        ax.text((width_steps - 1) / 2, max(ys) + margin * 0.6, title, ha="center", va="center", fontsize=9)
    return fig


def write_support_svg(support: QSupport, target: str | IO, title: str | None = None) -> None:
    """Write the support diagram as SVG; byte-identical for identical input."""
    fig = support_figure(support, title)
    fig.savefig(target, format="svg", metadata={"Date": None})


def write_sweep_figure(rows: list[dict], name: str, target: str | IO, example: QSupport | None = None, title: str = "") -> None:
    """SVG for a sweep report: its example support, or a pass/fail tally bar."""
    if example is not None and len(example):
        write_support_svg(example, target, title or name)
        return
    matplotlib.rcParams["svg.hashsalt"] = "p2bundles"
    fig = Figure(figsize=(4, 1.6), dpi=72)
    FigureCanvasSVG(fig)
    ax = fig.add_subplot()
    good = sum(1 for r in rows if r.get("ok"))
    bad = len(rows) - good
    ax.barh([0], [good], color="0.6", label="pass")
    ax.barh([0], [bad], left=[good], color="black", label="fail")
    ax.set_yticks([])
    ax.set_xlabel("cases")
    ax.set_title(f"{name}: {good} pass, {bad} fail", fontsize=9)
    fig.tight_layout()
    fig.savefig(target, format="svg", metadata={"Date": None})
