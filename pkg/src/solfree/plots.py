"""Figure rendering for the report path. Headless-safe: Agg only."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)


def save_density_figure(curve, path: str) -> str:
    """One line per prime: eps on x, value/p on y. Failures drawn as x marks
    on the zero line so a partial grid is still visible at a glance.
    """
    primes = sorted({pt.p for pt in curve.points} | {f.p for f in curve.failures})
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for p in primes:
        pts = sorted((pt.eps, pt.value / p) for pt in curve.points if pt.p == p)
        if pts:
            ax.plot([e for e, _ in pts], [v for _, v in pts],
                    marker="o", label=f"p={p}")
        bad = [f.eps for f in curve.failures if f.p == p]
        if bad:
            ax.plot(bad, [0.0] * len(bad), linestyle="none", marker="x",
                    color="red")
    eq_label = curve.points[0].eq if curve.points else (
        curve.failures[0].eq if curve.failures else "?")
    kind = curve.points[0].kind if curve.points else "density"
    ax.set_xlabel("eps")
    ax.set_ylabel("value / p")
    ax.set_title(f"max solution-free density, eq {eq_label} ({kind})")
    ax.grid(True, alpha=0.3)
    if primes:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_construction_figure(report, path: str) -> str:
    """Member scatter over the residue line, with the size bound annotated."""
    fig, ax = plt.subplots(figsize=(7, 3.2))
    members = report.members
    ax.plot(members, [1] * len(members), linestyle="none", marker="|",
            markersize=14, label=f"|A| = {len(members)}")
    ax.set_xlim(-0.02 * report.p, 1.02 * report.p)
    ax.set_yticks([])
    ax.set_xlabel(f"residue mod {report.p}")
    bound = report.details.get("size_bound")
    title = f"{report.name} construction, p={report.p}, eq {report.eq}"
    if bound is not None:
        title += f", size bound {bound:.1f}"
    ax.set_title(title)
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
