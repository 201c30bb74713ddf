"""Figure rendering for the report commands.

Each function takes the rows a command produced and writes one PNG
next to the delimited output. matplotlib is imported lazily with the
Agg backend so the library never needs a display.
"""

from __future__ import annotations

import math


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_convergence(records, path: str) -> str:
    """Gap series against its limit line."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ns = [r.n for r in records]
    ax.plot(ns, [r.gap for r in records], "o-", label="entropy gap")
    last = records[-1]
    if math.isfinite(last.target):
        # gap + residual reconstructs m * target, the limit value
        ax.axhline(last.gap + last.residual, color="C3", linestyle="--",
                   label="limit")
    ax.set_xlabel("n")
    ax.set_ylabel("nats")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_commuting(rows, path: str) -> str:
    """Closed-form gap series; adds the group-sum bound when singular."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ns = [r["n"] for r in rows]
    ax.plot(ns, [r["gap_formula"] for r in rows], "o-", label="gap")
    if rows and not rows[0]["regular_flag"]:
        ax.plot(ns, [r["singular_lower_bound"] for r in rows], "s--",
                label="group-sum lower bound")
    ax.set_xlabel("n")
    ax.set_ylabel("nats")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_stein(records, path: str) -> str:
    """alpha on a linear axis, beta against its guarantee on a log axis."""
    plt = _pyplot()
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.4, 6.0), sharex=True)
    ns = [r.n_copies for r in records]
    top.plot(ns, [r.alpha for r in records], "o-", color="C0")
    top.set_ylabel("alpha")
    top.grid(alpha=0.3)
    betas = [max(r.beta, 1e-300) for r in records]
    bound = [math.exp(-n * records[0].rate) for n in ns]
    bottom.semilogy(ns, betas, "o-", color="C1", label="beta")
    bottom.semilogy(ns, bound, "--", color="C3", label="exp(-N rate)")
    bottom.set_xlabel("N")
    bottom.set_ylabel("beta")
    bottom.grid(alpha=0.3, which="both")
    bottom.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_codesim(rows, path: str) -> str:
    """Holevo per codebook against the cost bound and the Fano floor."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ns = [r.n for r in rows]
    ax.plot(ns, [r.holevo for r in rows], "o-", label="codebook Holevo")
    ax.plot(ns, [r.cost_bound for r in rows], "--", color="C3",
            label="cost bound")
    ax.plot(ns, [r.fano_lower for r in rows], "s:", color="C2",
            label="Fano floor")
    ax.set_xlabel("n")
    ax.set_ylabel("nats")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
