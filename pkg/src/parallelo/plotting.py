"""Figure rendering for the experiment commands.

Plots are diagnostics on top of the delimited output, never a data source:
every number shown here is also in the CSV/JSON emitted alongside.  Uses
the Agg backend so rendering works headless and writes straight to files.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .experiments import NSummary, ProfileRecord, RhoRecord, VISIBLE_DENSITY


def _band(ax):
    ax.axhspan(0.5, 0.75, color="tab:orange", alpha=0.12,
               label="conjectured open bounds (1/2, 3/4)")
    ax.axhline(VISIBLE_DENSITY, color="tab:red", linestyle="--", linewidth=1,
               label="6/pi^2")


def profile_figure(records: Sequence[ProfileRecord], path: str) -> str:
    if not records:
        raise ValueError("no records to plot")
    n = records[0].n
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot([r.a for r in records], [r.ratio_float for r in records],
            ".", markersize=3, color="tab:blue")
    _band(ax)
    ax.set_xlabel("a")
    ax.set_ylabel("V / n")
    ax.set_title(f"visible-point ratio profile, n = {n}")
    ax.legend(loc="lower center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def scan_figure(per_n: Sequence[NSummary], path: str) -> str:
    if not per_n:
        raise ValueError("no per-n summaries to plot; scan range was empty")
    ns = [s.n for s in per_n]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(ns, [float(s.min_ratio) for s in per_n], ".", markersize=2,
            color="tab:blue", label="min V/n over a")
    ax.plot(ns, [float(s.max_ratio) for s in per_n], ".", markersize=2,
            color="tab:green", label="max V/n over a")
    _band(ax)
    ax.set_xlabel("n")
    ax.set_ylabel("V / n")
    ax.set_title("per-n ratio extremes, slopes a not in {1, n-1}")
    ax.legend(loc="lower center", fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def rho_figure(records: Sequence[RhoRecord], path: str, rho_name: str) -> str:
    live = [r for r in records if not r.skipped]
    if not live:
        raise ValueError("every row was skipped; nothing to plot")
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot([r.n for r in live], [float(r.ratio) for r in live],
            ".", markersize=3, color="tab:blue")
    _band(ax)
    ax.set_xlabel("n")
    ax.set_ylabel("V / n")
    ax.set_title(f"ratios along a = ceil(rho * n), rho = {rho_name}")
    ax.legend(loc="lower center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
