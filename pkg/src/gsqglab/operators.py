"""Spectral-multiplier operators and norms on the periodic grid.

Fractional Laplacian, Bessel and Riesz potentials, the alpha-parametrized
Biot-Savart law, spectral derivatives, and the L^p / H^s / homogeneous-H^s
norms used by every verifier.  All operators are pure functions of
immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as gamma_fn

from .grid import (
    MultiplierSpec,
    RealField,
    apply_multiplier,
    fft_forward,
    fft_inverse,
    require_mean_zero,
)

__all__ = [
    "RieszParams",
    "fractional_laplacian",
    "bessel_potential",
    "riesz_potential",
    "biot_savart",
    "gradient",
    "divergence",
    "lp_norm",
    "sobolev_norm",
    "homogeneous_sobolev_norm",
    "sobolev_lp_norm",
    "spectral_product",
    "band_limit",
    "spectral_tail_fraction",
]

_DIM = 2  # all operators are specialised to the plane


@dataclass(frozen=True)
class RieszParams:
    """Order sigma in (0, 2) and the Gamma-function normalization gamma(sigma).

    ``1/gamma(sigma) = pi^(n/2) 2^sigma Gamma(sigma/2) / Gamma(n/2 - sigma/2)``
    with n = 2; gamma enters only when the potential is realised as a
    physical-space convolution (see :mod:`gsqglab.kernels`).
    """

    sigma: float

    def __post_init__(self):
        if not 0.0 < self.sigma < _DIM:
            raise ValueError(f"Riesz order must lie in (0, {_DIM}), got {self.sigma}")
        inv = (
            np.pi ** (_DIM / 2.0)
            * 2.0**self.sigma
            * gamma_fn(self.sigma / 2.0)
            / gamma_fn((_DIM - self.sigma) / 2.0)
        )
        object.__setattr__(self, "gamma", float(1.0 / inv))


def _apply_scalar(f: RealField, m: MultiplierSpec) -> RealField:
    return fft_inverse(apply_multiplier(fft_forward(f), m))


def fractional_laplacian(f: RealField, s: float) -> RealField:
    """``|k|^s`` multiplier; for s < 0 the input must be mean-zero."""
    if s < 0:
        require_mean_zero(f, f"fractional Laplacian of order {s}")
    zero_mode = 1.0 if s == 0 else 0.0
    m = MultiplierSpec(lambda kx, ky: (kx**2 + ky**2) ** (s / 2.0), zero_mode=zero_mode)
    return _apply_scalar(f, m)


def bessel_potential(f: RealField, s: float) -> RealField:
    """``(1 + |k|^2)^(s/2)`` multiplier; maps constants to themselves."""
    m = MultiplierSpec(
        lambda kx, ky: (1.0 + kx**2 + ky**2) ** (s / 2.0), zero_mode=1.0
    )
    return _apply_scalar(f, m)


def riesz_potential(f: RealField, p: RieszParams) -> RealField:
    """Inverse fractional Laplacian of order sigma on a mean-zero field."""
    require_mean_zero(f, "Riesz potential")
    return fractional_laplacian(f, -p.sigma)


def biot_savart(omega: RealField, alpha: float) -> tuple[RealField, RealField]:
    """Velocity from the transported scalar: ``u_hat = i k^perp |k|^(2 alpha - 2) w_hat``.

    ``k^perp = (-k2, k1)``; alpha in [0, 1/2]; omega must be mean-zero.  The
    output is divergence-free and its zero mode vanishes.
    """
    if not 0.0 <= alpha <= 0.5:
        raise ValueError(f"alpha must lie in [0, 1/2], got {alpha}")
    require_mean_zero(omega, "Biot-Savart inversion")
    F = fft_forward(omega)

    def symbol(kx, ky):
        mag = (kx**2 + ky**2) ** (alpha - 1.0)
        return np.stack([-1j * ky * mag, 1j * kx * mag])

    U1, U2 = apply_multiplier(F, MultiplierSpec(symbol, zero_mode=0.0, odd=True))
    return fft_inverse(U1), fft_inverse(U2)


def gradient(f: RealField) -> tuple[RealField, RealField]:
    """Spectral gradient with Nyquist modes zeroed (odd multiplier)."""
    F = fft_forward(f)

    def symbol(kx, ky):
        return np.stack([1j * kx + 0.0 * ky, 1j * ky + 0.0 * kx])

    D1, D2 = apply_multiplier(F, MultiplierSpec(symbol, zero_mode=0.0, odd=True))
    return fft_inverse(D1), fft_inverse(D2)


def divergence(u1: RealField, u2: RealField) -> RealField:
    if u1.grid is not u2.grid and u1.grid != u2.grid:
        raise ValueError("divergence requires both components on the same grid")
    m1 = MultiplierSpec(lambda kx, ky: 1j * kx + 0.0 * ky, zero_mode=0.0, odd=True)
    m2 = MultiplierSpec(lambda kx, ky: 1j * ky + 0.0 * kx, zero_mode=0.0, odd=True)
    D1 = apply_multiplier(fft_forward(u1), m1)
    D2 = apply_multiplier(fft_forward(u2), m2)
    return RealField(u1.grid, fft_inverse(D1).values + fft_inverse(D2).values)


def lp_norm(f: RealField, p: float) -> float:
    """L^p norm by uniform-grid quadrature; p = inf gives the sup norm."""
    if p < 1:
        raise ValueError(f"L^p norm requires p >= 1, got {p}")
    a = np.abs(f.values)
    if np.isinf(p):
        return float(a.max())
    return float((np.sum(a**p) * f.grid.cell_area) ** (1.0 / p))


def sobolev_norm(f: RealField, s: float) -> float:
    """H^s norm via Plancherel: ``sum (1+|k|^2)^s |f_hat|^2`` with quadrature weight."""
    F = np.fft.fft2(f.values)
    g = f.grid
    w = (1.0 + g.k2) ** s
    total = np.sum(w * np.abs(F) ** 2)
    return float(np.sqrt(total * g.length**2 / g.n**4))


def homogeneous_sobolev_norm(f: RealField, s: float) -> float:
    """Homogeneous counterpart, ``sum_{k != 0} |k|^(2s) |f_hat|^2``."""
    if s < 0:
        require_mean_zero(f, f"homogeneous Sobolev norm of order {s}")
    F = np.fft.fft2(f.values)
    g = f.grid
    with np.errstate(divide="ignore"):
        w = g.k2**s
    w[0, 0] = 0.0
    total = np.sum(w * np.abs(F) ** 2)
    return float(np.sqrt(total * g.length**2 / g.n**4))


def sobolev_lp_norm(f: RealField, s: float, p: float) -> float:
    """W^{s,p} norm, ``|| (1-Lap)^{s/2} f ||_{L^p}``."""
    return lp_norm(bessel_potential(f, s), p)


def band_limit(f: RealField, kmax: float, keep_mean: bool = True) -> RealField:
    """Project onto modes with ``|k| <= kmax``; ``keep_mean=False`` also
    annihilates the zero mode."""
    F = np.fft.fft2(f.values)
    mask = f.grid.kmag <= kmax
    mask[0, 0] = keep_mean
    return RealField(f.grid, np.fft.ifft2(F * mask).real)


def spectral_tail_fraction(f: RealField, kmin: float) -> float:
    """Fraction of the L^2 norm carried by modes with ``|k| > kmin``."""
    F = np.fft.fft2(f.values)
    total = np.sum(np.abs(F) ** 2)
    if total == 0.0:
        return 0.0
    tail = np.sum(np.abs(F[f.grid.kmag > kmin]) ** 2)
    return float(np.sqrt(tail / total))


# -- exact (de-aliased) pointwise products -----------------------------------
#
# Quadratic products are evaluated on a 3/2 zero-padded grid, so the retained
# coefficients equal the exact Galerkin truncation of the true product.
# Helpers work in the rfft2 layout; Nyquist rows/columns are dropped (the
# package zeroes them throughout).

def pad_rfft(F: np.ndarray, n: int, m: int) -> np.ndarray:
    half = n // 2
    out = np.zeros((m, m // 2 + 1), dtype=np.complex128)
    out[:half, :half] = F[:half, :half]
    out[m - half + 1 :, :half] = F[half + 1 :, :half]
    return out


def truncate_rfft(Fp: np.ndarray, n: int, m: int) -> np.ndarray:
    half = n // 2
    out = np.zeros((n, n // 2 + 1), dtype=np.complex128)
    out[:half, :half] = Fp[:half, :half]
    out[half + 1 :, :half] = Fp[m - half + 1 :, :half]
    return out


def padded_samples(F: np.ndarray, n: int, m: int) -> np.ndarray:
    """Physical samples of the band-limited interpolant on the m x m grid."""
    return np.fft.irfft2(pad_rfft(F, n, m), s=(m, m)) * (m / n) ** 2


def project_padded_product(values_m: np.ndarray, n: int, m: int) -> np.ndarray:
    """Galerkin truncation of an m-grid product back to the n-grid."""
    P = np.fft.rfft2(values_m) * (n / m) ** 2
    return np.fft.irfft2(truncate_rfft(P, n, m), s=(n, n))


def spectral_product(f: RealField, g: RealField) -> RealField:
    """Pointwise product computed alias-free via 3/2 zero padding."""
    if f.grid != g.grid:
        raise ValueError("spectral product requires matching grids")
    n = f.grid.n
    m = 3 * n // 2
    fp = padded_samples(np.fft.rfft2(f.values), n, m)
    gp = padded_samples(np.fft.rfft2(g.values), n, m)
    return RealField(f.grid, project_padded_product(fp * gp, n, m))
