"""Figures for the search and simulate reports.

Both functions read the same payload that goes to stdout and write a PNG;
they return the path written. The Agg backend keeps this headless.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STATUS_COLORS = {
    "counterexample": "#b2182b",
    "hk_holds": "#2166ac",
    "inconclusive": "#999999",
}

# no timestamps or version strings, so reruns give identical files
_METADATA = {"Software": None}

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 120,
}


def _save(fig, path: str) -> str:
    fig.savefig(path, metadata=_METADATA)
    plt.close(fig)
    return path


def search_figure(payload: dict, directory: str) -> str:
    """Bar chart of decisions per status."""
    counts = payload["counts"]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.0))
        names = list(counts)
        bars = ax.bar(names, [counts[s] for s in names], color=[STATUS_COLORS.get(s, "k") for s in names])
        for bar, s in zip(bars, names):
            ax.annotate(
                str(counts[s]),
                (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                ha="center",
                va="bottom",
                xytext=(0, 2),
                textcoords="offset points",
            )
        ax.set_ylabel("matrices")
        ax.set_title(f"dimension {payload['dimension']}: {payload['analyzed']} Bott matrices")
        fig.tight_layout()
        return _save(fig, os.path.join(directory, f"search_dim{payload['dimension']}.png"))


def simulate_figure(payload: dict, permutations: list[list[int]], directory: str) -> str:
    """One panel per generator: point index against the index of its image."""
    n = len(permutations)
    cols = min(n, 4)
    rows = (n + cols - 1) // cols
    size = payload["points"]
    marker = max(1.0, 40.0 / size**0.5)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(rows, cols, figsize=(2.6 * cols, 2.6 * rows), squeeze=False)
        for idx, perm in enumerate(permutations):
            ax = axes[idx // cols][idx % cols]
            ax.scatter(range(size), perm, s=marker, color="#2166ac", linewidths=0)
            ax.set_title(f"s{idx + 1}")
            ax.set_xlim(-0.5, size - 0.5)
            ax.set_ylim(-0.5, size - 0.5)
            ax.set_aspect("equal")
            ax.set_xlabel("u")
            if idx % cols == 0:
                ax.set_ylabel("s . u")
        for idx in range(n, rows * cols):
            axes[idx // cols][idx % cols].axis("off")
        m = payload["cover"]["m"]
        fig.suptitle(f"level {payload['level']}, m = {m}, {size} points")
        fig.tight_layout()
        name = f"simulate_n{len(payload['matrix'])}_m{m}_level{payload['level']}.png"
        return _save(fig, os.path.join(directory, name))


__all__ = ["search_figure", "simulate_figure"]
