"""Smooth radial cutoff profiles built from the standard compactly
supported bump ``exp(-1/(1-t^2))``.

One profile family serves both the dyadic partition of unity (transition
on [1, 4/3]) and the kernel-splitting cutoff (transition on [1, 2],
max slope below 2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["smoothstep", "smoothstep_derivative", "RadialCutoff"]

# Gauss-Legendre rule for the bump mass and the reference table
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(96)


def _bump(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ti**2))
    return out


# total mass of the bump on [-1, 1]
_BUMP_MASS = float(np.sum(_GL_WEIGHTS * _bump(_GL_NODES)))

# cumulative integral tabulated once on a fine uniform grid; linear
# interpolation then evaluates the step to ~1e-11 absolute accuracy,
# cheap enough for the multi-million-point kernel quadratures
_TABLE_N = 200_001
_TABLE_U = np.linspace(-1.0, 1.0, _TABLE_N)
_h = _TABLE_U[1] - _TABLE_U[0]
_mid_vals = _bump(0.5 * (_TABLE_U[1:] + _TABLE_U[:-1]))
_end_vals = _bump(_TABLE_U)
# Simpson increments per subinterval
_increments = _h / 6.0 * (_end_vals[:-1] + 4.0 * _mid_vals + _end_vals[1:])
_TABLE_S = np.concatenate([[0.0], np.cumsum(_increments)])
_TABLE_S /= _TABLE_S[-1]


def smoothstep(u) -> np.ndarray:
    """C-infinity step: 0 for u <= -1, 1 for u >= 1, monotone in between.

    ``smoothstep(u) = int_{-1}^{u} bump / int_{-1}^{1} bump``.
    """
    u = np.asarray(u, dtype=float)
    return np.interp(u, _TABLE_U, _TABLE_S, left=0.0, right=1.0)


def smoothstep_derivative(u) -> np.ndarray:
    return _bump(np.asarray(u, dtype=float)) / _BUMP_MASS


@dataclass(frozen=True)
class RadialCutoff:
    """Radial profile equal to 1 on ``r <= r_inner``, 0 on ``r >= r_outer``."""

    r_inner: float
    r_outer: float

    def __post_init__(self):
        if not 0 < self.r_inner < self.r_outer:
            raise ValueError("cutoff radii must satisfy 0 < r_inner < r_outer")

    def __call__(self, r) -> np.ndarray:
        u = 2.0 * (np.abs(np.asarray(r, dtype=float)) - self.r_inner) / (
            self.r_outer - self.r_inner
        ) - 1.0
        return 1.0 - smoothstep(u)

    def derivative(self, r) -> np.ndarray:
        scale = 2.0 / (self.r_outer - self.r_inner)
        u = scale * (np.abs(np.asarray(r, dtype=float)) - self.r_inner) - 1.0
        return -scale * smoothstep_derivative(u)

    def max_slope(self, samples: int = 2001) -> float:
        """Numerically measured sup of |d cutoff / dr| over the transition."""
        r = np.linspace(self.r_inner, self.r_outer, samples)
        return float(np.max(np.abs(self.derivative(r))))
