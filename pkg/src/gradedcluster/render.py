"""Fixed-width text and SVG renderings of frieze values on ZA_n.

Vertex ``(p, q)`` is drawn at column ``2p + q`` and row ``q`` (top row
``q = n``), so each mesh appears as a diamond.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

from .cluster import Degree
from .frieze import StripVertex


def format_degree(d: Degree) -> str:
    if len(d) == 0:
        return "."
    if len(d) == 1:
        return str(d[0])
    return "(" + ",".join(map(str, d)) + ")"


def render_text(values: Mapping[StripVertex, Degree], n: int) -> str:
    if not values:
        return ""
    labels = {(v.p, v.q): format_degree(d) for v, d in values.items()}
    width = max(len(s) for s in labels.values()) + 1
    xs = [2 * p + q for p, q in labels]
    x_lo, x_hi = min(xs), max(xs)
    lines = []
    for q in range(n, 0, -1):
        cells = []
        for x in range(x_lo, x_hi + 1):
            label = None
            if (x - q) % 2 == 0:
                label = labels.get(((x - q) // 2, q))
            cells.append((label or "").rjust(width))
        lines.append("".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def render_svg(values: Mapping[StripVertex, Degree], n: int, path: str | Path, title: str = "") -> Path:
    """Draw the labelled quiver with matplotlib and save it as SVG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    pts = {(v.p, v.q): d for v, d in values.items()}
    xs = [2 * p + q for p, q in pts]
    fig_w = max(4.0, 0.45 * (max(xs) - min(xs) + 2))
    fig, ax = plt.subplots(figsize=(fig_w, 0.6 * n + 1.2))
    for (p, q) in pts:
        x = 2 * p + q
        for tp, tq in ((p, q + 1), (p + 1, q - 1)):
            if (tp, tq) in pts:
                ax.annotate(
                    "", xy=(2 * tp + tq, tq), xytext=(x, q),
                    arrowprops=dict(arrowstyle="->", color="0.6", lw=0.8, shrinkA=9, shrinkB=9),
                )
    for (p, q), d in pts.items():
        ax.text(2 * p + q, q, format_degree(d), ha="center", va="center", fontsize=9)
    ax.set_xlim(min(xs) - 1, max(xs) + 1)
    ax.set_ylim(0.4, n + 0.6)
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
