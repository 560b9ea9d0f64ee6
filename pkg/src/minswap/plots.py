"""Figures rendered next to the benchmark CSV.

Two charts per report: the candidate-permutation totals of the reference vs
the limited strategy per benchmark (log scale; this is the deterministic
search-space reduction), and the measured wall times with the resulting
speedups. Timed-out runs are drawn hatched at the configured cap.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bench import BenchRow

_BAR_W = 0.38


def _grouped_bars(ax, rows, ref_vals, prop_vals, ref_label, prop_label):
    x = np.arange(len(rows))
    ax.bar(x - _BAR_W / 2, ref_vals, _BAR_W, label=ref_label, color="#9ecae1")
    ax.bar(x + _BAR_W / 2, prop_vals, _BAR_W, label=prop_label, color="#3182bd")
    ax.set_xticks(x)
    ax.set_xticklabels([r.name for r in rows], rotation=30, ha="right")
    ax.legend()


def save_permutation_figure(rows: list[BenchRow], path: str) -> str:
    fig, ax = plt.subplots(figsize=(max(4.0, 1.1 * len(rows)), 3.2))
    _grouped_bars(
        ax,
        rows,
        [r.pi_total for r in rows],
        [r.pi_prime_total for r in rows],
        "all permutations",
        "limited set",
    )
    ax.set_yscale("log")
    ax.set_ylabel("candidate permutations (total)")
    ax.set_title("Search-space reduction")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_runtime_figure(rows: list[BenchRow], path: str) -> str:
    fig, (ax_t, ax_s) = plt.subplots(
        1, 2, figsize=(max(6.0, 1.6 * len(rows)), 3.2), width_ratios=[3, 2]
    )
    x = np.arange(len(rows))
    floor = 1e-4
    ref = [max(r.t_ref or 0.0, floor) for r in rows]
    prop = [max(r.t_prop or 0.0, floor) for r in rows]
    bars_ref = ax_t.bar(x - _BAR_W / 2, ref, _BAR_W, label="reference", color="#fdae6b")
    bars_prop = ax_t.bar(x + _BAR_W / 2, prop, _BAR_W, label="limited", color="#e6550d")
    for r, bar in zip(rows, bars_ref):
        if r.t_ref is None:
            bar.set_hatch("//")
    for r, bar in zip(rows, bars_prop):
        if r.t_prop is None:
            bar.set_hatch("//")
    ax_t.set_yscale("log")
    ax_t.set_xticks(x)
    ax_t.set_xticklabels([r.name for r in rows], rotation=30, ha="right")
    ax_t.set_ylabel("wall time [s]")
    ax_t.set_title("Runtimes (hatched = timeout)")
    ax_t.legend()

    with_speedup = [(i, r.speedup) for i, r in enumerate(rows) if r.speedup is not None]
    if with_speedup:
        idx, vals = zip(*with_speedup)
        ax_s.bar(np.arange(len(idx)), vals, color="#31a354")
        ax_s.set_xticks(np.arange(len(idx)))
        ax_s.set_xticklabels([rows[i].name for i in idx], rotation=30, ha="right")
        ax_s.axhline(1.0, color="gray", lw=0.8, ls="--")
    ax_s.set_ylabel("speedup (t_ref / t_prop)")
    ax_s.set_title("Speedup")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_report_figures(rows: list[BenchRow], csv_path: str) -> list[str]:
    """Write the standard figures beside a CSV path; returns the file names."""
    stem = csv_path[:-4] if csv_path.endswith(".csv") else csv_path
    return [
        save_permutation_figure(rows, stem + "_permutations.png"),
        save_runtime_figure(rows, stem + "_runtimes.png"),
    ]
