"""Deterministic CSV/JSON emission and static plots.

Floats are serialized with ``repr`` (shortest round-trip), so identical
inputs give byte-identical files regardless of worker counts; writers sort
nothing themselves - callers pass rows already ordered by parameter.
"""

from __future__ import annotations

import json
import os
from typing import Iterable, Sequence

__all__ = [
    "format_cell",
    "write_csv",
    "write_json",
    "plot_convergence",
    "plot_beta_sweep",
]


def format_cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_cell(c) for c in row) + "\n")


def write_csv_dicts(path, header: Sequence[str], rows: Iterable[dict]) -> None:
    write_csv(path, header, ([r.get(k, "") for k in header] for r in rows))


def write_json(path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=_jsonable)
        fh.write("\n")


def _jsonable(x):
    try:
        import numpy as np

        if isinstance(x, (np.floating, np.integer)):
            return x.item()
        if isinstance(x, np.ndarray):
            return x.tolist()
    except ImportError:
        pass
    return str(x)


def _agg() -> None:
    import matplotlib

    matplotlib.use("Agg")


def plot_convergence(path, eps, norms, model_bound, title: str) -> None:
    """Log-log difference-norm decay with the closed-form bound shape."""
    _agg()
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.loglog(eps, norms, "o-", label="measured")
    ax.loglog(eps, model_bound, "s--", label="bound shape")
    ax.set_xlabel("eps")
    ax.set_ylabel("H^s difference")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def plot_beta_sweep(path, per_beta: dict, title: str) -> None:
    """Measured constants across the kernel-splitting parameter."""
    _agg()
    import matplotlib.pyplot as plt

    betas = sorted(per_beta)
    vals = [per_beta[b] for b in betas]
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.plot(betas, vals, "o-")
    ax.set_xlabel("beta")
    ax.set_ylabel("measured constant")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
