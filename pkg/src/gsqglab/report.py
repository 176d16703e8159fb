"""Report containers shared by the inequality verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["InequalityReport", "family_stats"]


@dataclass
class InequalityReport:
    """Measured left/right-hand sides of one inequality instance or sweep.

    ``ratio`` is ``lhs / rhs`` where ``rhs > 0`` (0 when both sides vanish).
    ``passed`` states whether every assertion attached to the check held;
    sweep-level statistics (per-parameter maxima, medians, proxies) live in
    ``extras``.
    """

    name: str
    parameters: dict
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    extras: dict = field(default_factory=dict)

    @classmethod
    def from_sides(cls, name: str, parameters: dict, lhs: float, rhs: float,
                   passed: bool = True, **extras) -> "InequalityReport":
        ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else float("inf"))
        return cls(name, parameters, float(lhs), float(rhs), float(ratio),
                   passed, dict(extras))


def family_stats(ratios) -> dict:
    """max / median / min over a family of measured ratios."""
    r = np.asarray(list(ratios), dtype=float)
    if r.size == 0:
        return {"max": 0.0, "median": 0.0, "min": 0.0, "count": 0}
    return {
        "max": float(np.max(r)),
        "median": float(np.median(r)),
        "min": float(np.min(r)),
        "count": int(r.size),
    }
