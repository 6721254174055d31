"""Headless matplotlib figures rendered next to CLI report files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .constructions import KCBS_CLASSICAL_BOUND, umbrella_critical_angle


def scan_figure(rows: Sequence[tuple[float, float, float]], path) -> Path:
    """Overlap and five-term total versus the umbrella polar angle."""
    path = Path(path)
    thetas = [r[0] for r in rows]
    overlaps = [r[1] for r in rows]
    values = [r[2] for r in rows]

    fig, ax_value = plt.subplots(figsize=(7, 4.5))
    ax_value.plot(thetas, values, color="tab:blue", label="five-term total")
    ax_value.axhline(KCBS_CLASSICAL_BOUND, color="tab:gray", linestyle="--",
                     label="classical bound 2")
    ax_value.axvline(umbrella_critical_angle(), color="tab:green", linestyle=":",
                     label="critical angle")
    ax_value.set_xlabel("polar angle theta (rad)")
    ax_value.set_ylabel("five-term total", color="tab:blue")

    ax_overlap = ax_value.twinx()
    ax_overlap.plot(thetas, overlaps, color="tab:red", label="adjacent overlap")
    ax_overlap.axhline(0.0, color="tab:red", linestyle="--", linewidth=0.8)
    ax_overlap.set_ylabel("adjacent overlap", color="tab:red")

    handles, labels = ax_value.get_legend_handles_labels()
    more, more_labels = ax_overlap.get_legend_handles_labels()
    ax_value.legend(handles + more, labels + more_labels, loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def violation_figure(entries: Sequence[tuple[str, float, float]], path) -> Path:
    """Bar chart of scenario values against the classical bound."""
    path = Path(path)
    labels = [e[0] for e in entries]
    values = [e[1] for e in entries]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar(range(len(entries)), values, color="tab:blue")
    if entries:
        ax.axhline(entries[0][2], color="tab:gray", linestyle="--",
                   label=f"classical bound {entries[0][2]:g}")
        ax.legend(loc="best", fontsize=8)
    ax.set_xticks(range(len(entries)))
    ax.set_xticklabels(labels, rotation=20, ha="right", fontsize=8)
    ax.set_ylabel("pentagon value")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def campaign_figure(reports, path) -> Path:
    """Slack of every campaign check, grouped by check name."""
    path = Path(path)
    by_check: dict[str, list[float]] = {}
    for report in reports:
        by_check.setdefault(report.check, []).append(report.slack)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, slacks in sorted(by_check.items()):
        ax.plot(sorted(slacks), marker=".", linestyle="none", markersize=3,
                label=f"{name} (n={len(slacks)})")
    ax.axhline(0.0, color="tab:red", linestyle="--", linewidth=0.8)
    ax.set_xlabel("checks (sorted by slack)")
    ax.set_ylabel("slack = bound - value")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def hvm_figure(vertex_probs: Sequence[float], total: float, bound: float,
               path) -> Path:
    """Per-vertex probabilities of a hidden-variable model."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(vertex_probs)), vertex_probs, color="tab:blue")
    ax.set_xlabel("vertex")
    ax.set_ylabel("probability")
    ax.set_ylim(0.0, 1.05)
    ax.set_title(f"total = {total:.6f} (bound {bound:g})")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
