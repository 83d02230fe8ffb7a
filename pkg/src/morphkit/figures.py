"""Report figures rendered next to the delimited outputs.

Uses the non-interactive Agg backend and strips the default software tag
from PNG metadata so identical inputs produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_SAVE_KW = {"dpi": 150, "metadata": {"Software": None}}


def _finish(fig, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_det_figure(
    points: Sequence[tuple[float, float, float]],
    path: str | Path,
    title: str,
    xlabel: str = "false match rate",
    ylabel: str = "false non-match rate",
    operating_point: tuple[float, float] | None = None,
) -> None:
    """Error trade-off curve from (x_rate, y_rate, threshold) triples."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    ax.plot(xs, ys, color="tab:blue", lw=1.5)
    for ref in (0.05, 0.1):
        ax.axhline(ref, color="gray", ls=":", lw=0.8)
        ax.axvline(ref, color="gray", ls=":", lw=0.8)
    if operating_point is not None:
        ax.plot([operating_point[0]], [operating_point[1]], "o", color="tab:red", ms=5)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    _finish(fig, path)


def save_ecdf_figure(
    curves: Mapping[str, Sequence[tuple[float, float]]],
    path: str | Path,
    title: str,
    thresholds: Mapping[str, float] | None = None,
    xlabel: str = "distance score",
) -> None:
    """Overlaid empirical CDFs, one step curve per labeled score set."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label in sorted(curves):
        pts = curves[label]
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        ax.step(xs, ys, where="post", label=label, lw=1.4)
    if thresholds:
        for label in sorted(thresholds):
            ax.axvline(thresholds[label], color="black", ls=":", lw=0.9)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("cumulative fraction")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    _finish(fig, path)


def save_map_figure(
    values: np.ndarray,
    path: str | Path,
    title: str,
) -> None:
    """Annotated attempts-by-systems heatmap of attack potential fractions."""
    values = np.asarray(values, dtype=np.float64)
    attempts, systems = values.shape
    fig, ax = plt.subplots(figsize=(1.2 * systems + 2.0, 0.8 * attempts + 1.5))
    im = ax.imshow(values, cmap="viridis", vmin=0.0, vmax=1.0, aspect="auto")
    for i in range(attempts):
        for j in range(systems):
            shade = "black" if values[i, j] > 0.6 else "white"
            ax.text(j, i, f"{values[i, j]:.2f}", ha="center", va="center",
                    color=shade, fontsize=9)
    ax.set_xticks(range(systems), [f">={j + 1}" for j in range(systems)])
    ax.set_yticks(range(attempts), [f">={i + 1}" for i in range(attempts)])
    ax.set_xlabel("systems fooled")
    ax.set_ylabel("successful attempts")
    ax.set_title(title)
    fig.colorbar(im, ax=ax, shrink=0.85)
    fig.tight_layout()
    _finish(fig, path)
