"""Stationary and convergence reports: delimited tables plus rendered figures.

For one chain this writes, into a chosen directory:

* stationary.csv / stationary.png: the exact stationary law (and, when a
  walk is requested, the empirical occupancy on top of it);
* convergence.csv / convergence.png: how fast the rows of the matrix
  powers flatten onto the stationary law, and for the standard chain the
  exact entry sequence whose limit is a reciprocal Stirling number.

Figures are numeric-precision UX; every exact claim stays in the CSVs.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .chains import (
    StationaryDistribution,
    TransitionMatrix,
    closed_form,
    distribution_to_csv,
    matrix_add_drop,
    matrix_annihilation,
    matrix_standard,
    matrix_tl,
    stationary_exact,
    stirling_convergence_report,
)
from .graphs import GraphKind
from .montecarlo import WalkReport, random_walk
from .states import DEFAULT_MAX_H

__all__ = ["render_report"]


def chain_matrix(
    kind: GraphKind, h: int, f: int | None, *, max_h: int = DEFAULT_MAX_H
) -> TransitionMatrix:
    """The transition matrix of any of the four chains."""
    if kind is GraphKind.STANDARD:
        return matrix_standard(h, f, max_h=max_h)
    if kind is GraphKind.TL:
        return matrix_tl(h, f, max_h=max_h)
    if kind is GraphKind.ADD_DROP:
        return matrix_add_drop(h, max_h=max_h)
    return matrix_annihilation(h, max_h=max_h)


def _residual_curve(m: TransitionMatrix, alpha: StationaryDistribution, l_max: int) -> list[float]:
    p = np.array([[float(x) for x in row] for row in m.rows])
    target = np.array([float(x) for x in alpha.probs])
    power = np.eye(m.n)
    curve = []
    for _ in range(l_max):
        power = power @ p
        curve.append(float(np.abs(power - target).sum(axis=1).max()))
    return curve


def _stationary_figure(
    path: Path,
    title: str,
    exact: StationaryDistribution,
    walk: WalkReport | None,
) -> None:
    names = [str(s) for s in exact.states]
    values = [float(p) for p in exact.probs]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.45 * len(names)), 4.0))
    ax.bar(range(len(names)), values, color="#4878a8", label="stationary (exact)")
    if walk is not None:
        ax.plot(
            range(len(names)),
            walk.empirical,
            "o",
            color="#c44e52",
            markersize=4,
            label=f"empirical ({walk.steps} steps, seed {walk.seed})",
        )
        title += f"  tv={walk.tv_distance:.2e}"
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=90, fontsize=7)
    ax.set_ylabel("probability")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _convergence_figure(
    path: Path,
    title: str,
    residuals: list[float],
    entries: list[Fraction] | None,
    limit: Fraction | None,
) -> None:
    ls = range(1, len(residuals) + 1)
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    ax.semilogy(ls, [max(r, 1e-18) for r in residuals], "s-", color="#4878a8",
                markersize=4, label="max row residual to stationary (L1)")
    if entries is not None and limit is not None:
        gaps = [abs(float(x - limit)) for x in entries]
        ax.semilogy(ls, [max(g, 1e-18) for g in gaps], "o-", color="#c44e52",
                    markersize=4, label=f"|entry - {limit}| (exact)")
    ax.set_xlabel("power l")
    ax.set_ylabel("distance")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report(
    kind: GraphKind,
    h: int,
    f: int | None,
    outdir: str | Path,
    *,
    steps: int = 0,
    seed: int = 0,
    l_max: int = 20,
    max_h: int = DEFAULT_MAX_H,
) -> list[Path]:
    """Write stationary and convergence tables and figures; returns the paths.

    With steps > 0 a random walk overlays its empirical occupancy on the
    stationary chart.  The convergence CSV lists float residuals; for the
    standard chain it also carries the exact entry sequence converging to
    1/S(h+1, f+1).
    """
    kind = GraphKind(kind)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    m = chain_matrix(kind, h, f, max_h=max_h)
    alpha = stationary_exact(m)
    walk = random_walk(m, m.states[0], steps, seed, reference=alpha) if steps > 0 else None

    label = f"{kind.value} h={h}" + (f" f={f}" if f is not None else "")
    written: list[Path] = []

    stationary_csv = out / "stationary.csv"
    stationary_csv.write_text(distribution_to_csv(alpha))
    written.append(stationary_csv)
    stationary_png = out / "stationary.png"
    _stationary_figure(stationary_png, label, alpha, walk)
    written.append(stationary_png)

    residuals = _residual_curve(m, alpha, l_max)
    entries: list[Fraction] | None = None
    limit: Fraction | None = None
    if kind is GraphKind.STANDARD:
        entries = stirling_convergence_report(h, f, m.states[0], l_max, max_h=max_h)
        limit = alpha.probs[-1]

    convergence_csv = out / "convergence.csv"
    lines = ["l,max_row_residual" + (",entry,entry_decimal" if entries else "")]
    for i, r in enumerate(residuals):
        row = f"{i + 1},{r!r}"
        if entries:
            row += f",{entries[i]},{float(entries[i])!r}"
        lines.append(row)
    convergence_csv.write_text("\n".join(lines) + "\n")
    written.append(convergence_csv)

    convergence_png = out / "convergence.png"
    _convergence_figure(convergence_png, label, residuals, entries, limit)
    written.append(convergence_png)
    return written
