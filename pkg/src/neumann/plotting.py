"""Figure rendering for reports and graph balls.

Everything writes straight to a file through the Agg backend; nothing here
opens a window.  Imported lazily by the CLI so that plain text runs never
pay the matplotlib import.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .gl2 import PVertex, vertices_up_to
from .graph import DistantGraph
from .structure import StructureReport
from .verify import FailureReason, NeumannReport


def render_distant_graph(g: DistantGraph, path: str) -> None:
    """Farey-style picture: finite vertices sit at p/q on the axis, edges
    are semicircular arcs, and infinity hangs above with vertical rays."""
    fig, ax = plt.subplots(figsize=(9, 5))
    finite = [v for v in g.vertices if not v.is_infinity]
    xs = [v.p / v.q for v in finite]
    arc = [math.pi * i / 59 for i in range(60)]
    top = 0.0
    for u, v in g.edges():
        if u.is_infinity or v.is_infinity:
            continue
        xu, xv = u.p / u.q, v.p / v.q
        mid, rad = (xu + xv) / 2, abs(xu - xv) / 2
        ax.plot([mid + rad * math.cos(t) for t in arc],
                [rad * math.sin(t) for t in arc], color="#4878a8", lw=0.9)
        top = max(top, rad)
    ray = top * 1.15 if top > 0 else 1.0
    for v in finite:
        if are_edge_to_infinity(g, v):
            ax.plot([v.p / v.q] * 2, [0, ray], color="#b0b0b0", lw=0.8, ls=":")
    ax.plot(xs, [0] * len(xs), "o", color="#203050", ms=4)
    for v in finite:
        ax.annotate(v.label(), (v.p / v.q, 0), textcoords="offset points",
                    xytext=(0, -14), ha="center", fontsize=7)
    if any(v.is_infinity for v in g.vertices):
        ax.annotate("∞", ((min(xs) + max(xs)) / 2 if xs else 0, ray),
                    ha="center", fontsize=11)
    ax.set_ylim(-0.6, ray * 1.2)
    ax.set_title(f"distant graph, height ≤ {g.height}")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def are_edge_to_infinity(g: DistantGraph, v: PVertex) -> bool:
    inf = PVertex(1, 0)
    return inf in g and v in g.neighbors(inf)


def render_structure_report(report: StructureReport, path: str) -> None:
    """Stacked bars, one per block, segments by factor kind."""
    kinds = ["C2", "C3", "inf det+1", "inf det-1"]
    colors = ["#d4804d", "#4878a8", "#60a060", "#a05080"]
    fig, ax = plt.subplots(figsize=(max(4, len(report.per_block) * 0.9 + 2), 4))
    xs = range(len(report.per_block))
    base = [0] * len(report.per_block)
    for ki in range(4):
        hs = [contrib[ki] for _, contrib in report.per_block]
        ax.bar(xs, hs, bottom=base, color=colors[ki], label=kinds[ki], width=0.7)
        base = [b + h for b, h in zip(base, hs)]
    ax.set_xticks(list(xs))
    ax.set_xticklabels([f"case {cid}" for cid, _ in report.per_block],
                       rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("free factors")
    c2 = "ok" if report.cond2_ok else "FAIL"
    c3 = "ok" if report.cond3_ok else "FAIL"
    ax.set_title(
        f"structure ({report.r2}, {report.r3}, {report.rinf_plus}, {report.rinf_minus})"
        f" — constraint2 {c2}, constraint3 {c3}"
    )
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_neumann_report(report: NeumannReport, path: str) -> None:
    """Scatter of the checked targets in the (p, q) plane, failures marked
    by reason."""
    targets = vertices_up_to(report.height_bound)
    failed = {}
    for f in report.failures:
        failed.setdefault(f.vertex, f.reason)
    ok = [v for v in targets if v not in failed]
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.scatter([v.p for v in ok], [v.q for v in ok], s=18, color="#4a9a5a",
               label=f"ok ({len(ok)})")
    marks = {
        FailureReason.OUT_OF_WINDOW: ("#d0a030", "s", "out of window"),
        FailureReason.MISSING: ("#c04040", "x", "missing"),
        FailureReason.DUPLICATE: ("#8040c0", "^", "duplicate"),
    }
    for reason, (color, mark, label) in marks.items():
        vs = [v for v, r in failed.items() if r is reason]
        if vs:
            ax.scatter([v.p for v in vs], [v.q for v in vs], s=30, color=color,
                       marker=mark, label=f"{label} ({len(vs)})")
    ax.set_xlabel("p")
    ax.set_ylabel("q")
    verdict = "verified" if report.verified else "FAILED"
    ax.set_title(
        f"neumann check, height ≤ {report.height_bound}: {verdict}\n"
        f"ball of {report.ball_size} words, length ≤ {report.oracle_len}"
        + ("" if report.oracle_cap == 0 else f", column cap {report.oracle_cap}")
    )
    ax.legend(fontsize=8)
    ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
