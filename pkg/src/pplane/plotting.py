"""Matplotlib rendering of figure data to PNG/SVG files.

Rendering is a verification artifact, not publication graphics: one axes
per figure, series drawn in declaration order, log scales as requested by
the figure data.  Output metadata that would vary between runs (dates,
tool version strings) is stripped so repeated runs produce identical
bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .figures import FigureData  # noqa: E402

__all__ = ["render_figure"]

_EPS_FLOOR = 1e-40  # log-scale clipping floor for zero-adjacent values


def render_figure(fd: FigureData, path: str, fmt: str = "png") -> None:
    plt.rcParams["svg.hashsalt"] = "pplane"
    fig, ax = plt.subplots(figsize=(7.0, 5.6), dpi=120)
    for s in fd.series:
        x, y = s.x, s.y
        if fd.xscale == "log":
            x = x.clip(min=_EPS_FLOOR)
        if fd.yscale == "log":
            y = y.clip(min=_EPS_FLOOR)
        if s.style == "points":
            ax.plot(x, y, marker="o", markersize=3, linestyle="none", label=s.name)
        else:
            ax.plot(x, y, linewidth=1.0, label=s.name)
    ax.set_xscale(fd.xscale)
    ax.set_yscale(fd.yscale)
    ax.set_xlabel(fd.xlabel)
    ax.set_ylabel(fd.ylabel)
    ax.set_title(fd.title, fontsize=10)
    if len(fd.series) <= 14:
        ax.legend(fontsize=6, loc="best")
    fig.tight_layout()
    metadata = {"Date": None} if fmt == "svg" else {"Software": None}
    fig.savefig(path, format=fmt, metadata=metadata)
    plt.close(fig)
