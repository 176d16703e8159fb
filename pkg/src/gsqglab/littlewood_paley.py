"""Dyadic partition of unity, frequency blocks, Besov norms, and the
paraproduct decomposition of pointwise products.

The low-pass profile chi is a smooth radial step (1 on ``|xi| <= 1``, 0 on
``|xi| >= 4/3``); the annulus profile is ``phi(xi) = chi(xi/2) - chi(xi)``,
supported in ``[1, 8/3]``.  The partition identity and all block sums then
telescope exactly, so reconstruction holds to round-off on resolved fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cutoffs import RadialCutoff
from .errors import UnresolvedFieldError
from .grid import Grid2D, RealField
from .operators import lp_norm, padded_samples, project_padded_product, sobolev_norm
from .report import InequalityReport

__all__ = [
    "DyadicPartition",
    "LPBlocks",
    "BesovIndex",
    "BonyParts",
    "build_partition",
    "lp_block",
    "low_pass",
    "lp_decompose",
    "besov_norm",
    "bony_decompose",
    "bernstein_check",
    "verify_embedding_D1",
    "measure_bony_localization",
    "require_resolved",
]

_TAIL_TOL = 1e-8  # resolution guard: relative L^2 energy above the top annulus


@dataclass(frozen=True)
class DyadicPartition:
    """Profiles (chi, phi) and the largest block index usable on ``grid``."""

    grid: Grid2D
    chi: Callable[[np.ndarray], np.ndarray]
    phi: Callable[[np.ndarray], np.ndarray]
    j_max: int
    block_symbols: tuple = field(repr=False, default=())

    def symbol(self, q: int) -> np.ndarray:
        """Grid multiplier of the block ``Delta_q`` (q = -1 is the low pass)."""
        if q < -1 or q > self.j_max:
            raise ValueError(f"block index {q} outside [-1, {self.j_max}]")
        return self.block_symbols[q + 1]

    def lowpass_symbol(self, j: int) -> np.ndarray:
        if j < 0:
            raise ValueError(f"low-pass index must be >= 0, got {j}")
        return self.chi(self.grid.kmag / 2.0**j)

    @property
    def top_frequency(self) -> float:
        """Upper edge of the highest annulus, ``2^j_max * 8/3``."""
        return 2.0**self.j_max * 8.0 / 3.0


def build_partition(grid: Grid2D) -> DyadicPartition:
    """Construct the dyadic partition with the top annulus below Nyquist."""
    chi_profile = RadialCutoff(1.0, 4.0 / 3.0)

    def chi(r):
        return chi_profile(r)

    def phi(r):
        r = np.asarray(r, dtype=float)
        return chi_profile(r / 2.0) - chi_profile(r)

    j_max = int(np.floor(np.log2(grid.nyquist * 3.0 / 8.0)))
    if j_max < 1:
        raise ValueError(f"grid too small to host a dyadic partition (n={grid.n})")
    symbols = [chi(grid.kmag)]
    for q in range(j_max + 1):
        symbols.append(phi(grid.kmag / 2.0**q))
    return DyadicPartition(grid, chi, phi, j_max, tuple(symbols))


def require_resolved(f: RealField, part: DyadicPartition, what: str) -> None:
    """Refuse fields with non-negligible energy above the top annulus."""
    F = np.fft.fft2(f.values)
    total = np.sum(np.abs(F) ** 2)
    if total == 0.0:
        return
    tail = np.sum(np.abs(F[f.grid.kmag > part.top_frequency]) ** 2)
    frac = np.sqrt(tail / total)
    if frac > _TAIL_TOL:
        raise UnresolvedFieldError(
            f"{what}: relative spectral tail {frac:.3e} above |k| = "
            f"{part.top_frequency:.3g} exceeds {_TAIL_TOL:g}"
        )


def lp_block(f: RealField, part: DyadicPartition, q: int) -> RealField:
    """Frequency block ``Delta_q f`` (q = -1 gives the low-pass block)."""
    if q > part.j_max:
        raise ValueError(f"block index {q} exceeds j_max = {part.j_max}")
    F = np.fft.rfft2(f.values)
    sym = part.symbol(q)[:, : f.grid.n // 2 + 1]
    return RealField(f.grid, np.fft.irfft2(sym * F, s=f.values.shape))


def low_pass(f: RealField, part: DyadicPartition, j: int) -> RealField:
    """Low-frequency cut-off ``S_j f`` (chi at scale ``2^j``), j >= 0."""
    F = np.fft.rfft2(f.values)
    sym = part.lowpass_symbol(j)[:, : f.grid.n // 2 + 1]
    return RealField(f.grid, np.fft.irfft2(sym * F, s=f.values.shape))


@dataclass
class LPBlocks:
    """All blocks of a field plus its running low-pass partial sums."""

    field: RealField
    blocks: list
    partial_sums: list

    def reconstruction(self) -> RealField:
        total = np.zeros_like(self.field.values)
        for b in self.blocks:
            total += b.values
        return RealField(self.field.grid, total)


def lp_decompose(f: RealField, part: DyadicPartition) -> LPBlocks:
    blocks = [lp_block(f, part, q) for q in range(-1, part.j_max + 1)]
    sums = [low_pass(f, part, j) for j in range(0, part.j_max + 2)]
    return LPBlocks(f, blocks, sums)


@dataclass(frozen=True)
class BesovIndex:
    s: float
    p: float
    q: float

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("Besov integrability indices must be >= 1")


def besov_norm(f: RealField, part: DyadicPartition, idx: BesovIndex) -> float:
    """``( sum_j 2^{j s q} ||Delta_j f||_{L^p}^q )^{1/q}`` (sup over j for q = inf)."""
    require_resolved(f, part, "Besov norm")
    terms = []
    for j in range(-1, part.j_max + 1):
        bn = lp_norm(lp_block(f, part, j), idx.p)
        terms.append(2.0 ** (j * idx.s) * bn)
    terms = np.asarray(terms)
    if np.isinf(idx.q):
        return float(np.max(terms))
    return float(np.sum(terms**idx.q) ** (1.0 / idx.q))


@dataclass
class BonyParts:
    """Decomposition of a pointwise product into two paraproducts + remainder."""

    t_uv: RealField
    t_vu: RealField
    remainder: RealField

    def total(self) -> RealField:
        return RealField(
            self.t_uv.grid,
            self.t_uv.values + self.t_vu.values + self.remainder.values,
        )


def bony_decompose(u: RealField, v: RealField, part: DyadicPartition) -> BonyParts:
    """Split ``u v`` into paraproducts and remainder, alias-free.

    ``T_u v = sum_{j>=1} S_{j-1} u Delta_j v`` and the remainder pairs blocks
    at distance <= 1; every product is evaluated on the 3/2-padded grid so the
    three parts sum to the de-aliased product exactly.
    """
    if u.grid != v.grid:
        raise ValueError("Bony decomposition requires matching grids")
    require_resolved(u, part, "Bony decomposition (first factor)")
    require_resolved(v, part, "Bony decomposition (second factor)")
    g = u.grid
    n, m = g.n, 3 * g.n // 2
    half = n // 2
    jm = part.j_max

    Fu = np.fft.rfft2(u.values)
    Fv = np.fft.rfft2(v.values)

    def block_phys(F, q):
        sym = part.symbol(q)[:, : half + 1]
        return padded_samples(sym * F, n, m)

    def lowpass_phys(F, j):
        sym = part.lowpass_symbol(j)[:, : half + 1]
        return padded_samples(sym * F, n, m)

    ub = {q: block_phys(Fu, q) for q in range(-1, jm + 1)}
    vb = {q: block_phys(Fv, q) for q in range(-1, jm + 1)}
    su = {j: lowpass_phys(Fu, j) for j in range(0, jm)}
    sv = {j: lowpass_phys(Fv, j) for j in range(0, jm)}

    t_uv = np.zeros((m, m))
    t_vu = np.zeros((m, m))
    for j in range(1, jm + 1):
        t_uv += su[j - 1] * vb[j]
        t_vu += sv[j - 1] * ub[j]
    rem = np.zeros((m, m))
    for j in range(-1, jm + 1):
        near = np.zeros((m, m))
        for jj in (j - 1, j, j + 1):
            if -1 <= jj <= jm:
                near += vb[jj]
        rem += ub[j] * near

    def back(values_m):
        return RealField(g, project_padded_product(values_m, n, m))

    return BonyParts(back(t_uv), back(t_vu), back(rem))


def measure_bony_localization(
    u: RealField, v: RealField, part: DyadicPartition, energy_tol: float = 1e-10
) -> int:
    """Largest |q - j| with ``Delta_q(S_{j-1} u Delta_j v)`` carrying energy."""
    g = u.grid
    n, m = g.n, 3 * g.n // 2
    half = n // 2
    Fu = np.fft.rfft2(u.values)
    Fv = np.fft.rfft2(v.values)
    n0 = 0
    for j in range(1, part.j_max + 1):
        sp = padded_samples(part.lowpass_symbol(j - 1)[:, : half + 1] * Fu, n, m)
        bp = padded_samples(part.symbol(j)[:, : half + 1] * Fv, n, m)
        prod = project_padded_product(sp * bp, n, m)
        P = np.fft.fft2(prod)
        total = np.sqrt(np.sum(np.abs(P) ** 2))
        if total == 0.0:
            continue
        for q in range(-1, part.j_max + 1):
            blk = np.sqrt(np.sum(np.abs(part.symbol(q) * P) ** 2))
            if blk > energy_tol * total:
                n0 = max(n0, abs(q - j))
    return n0


def bernstein_check(
    f_block: RealField, q: int, k: int, a: float, b: float
) -> InequalityReport:
    """Measure the derivative-growth bound on an annulus-supported block.

    Reports ``sup_{|idx| = k} ||d^idx f||_{L^b}`` against the skeleton
    ``lambda^{k + 2(1/a - 1/b)} ||f||_{L^a}`` with ``lambda = 2^q``.  For
    a = b = 2, k = 1 the two-sided Plancherel bound
    ``||grad f|| / ||f|| in 2^q [3/4, 8/3]`` is asserted.
    """
    g = f_block.grid
    F = np.fft.fft2(f_block.values)
    total = np.sum(np.abs(F) ** 2)
    lam = 2.0**q
    if total > 0:
        inside = (g.kmag >= lam * 0.75) & (g.kmag <= lam * 8.0 / 3.0)
        outside = np.sum(np.abs(F[~inside]) ** 2)
        if outside > 1e-24 * total:
            raise ValueError(
                f"support violation: block energy outside 2^{q} * [3/4, 8/3]"
            )

    inv_a = 0.0 if np.isinf(a) else 1.0 / a
    inv_b = 0.0 if np.isinf(b) else 1.0 / b
    skeleton = lam ** (k + 2.0 * (inv_a - inv_b)) * lp_norm(f_block, a)

    lhs = 0.0
    for k1 in range(k + 1):
        k2 = k - k1
        sym = (1j * g.kx) ** k1 * (1j * g.ky) ** k2
        deriv = RealField(g, np.fft.ifft2(sym * F).real)
        lhs = max(lhs, lp_norm(deriv, b))
    ratio = lhs / skeleton if skeleton > 0 else 0.0

    extras = {}
    passed = True
    if a == 2 and b == 2 and k == 1:
        l2 = lp_norm(f_block, 2)
        if l2 > 0:
            gx = RealField(g, np.fft.ifft2(1j * g.kx * F).real)
            gy = RealField(g, np.fft.ifft2(1j * g.ky * F).real)
            grad_ratio = np.hypot(lp_norm(gx, 2), lp_norm(gy, 2)) / l2
            extras["gradient_ratio"] = grad_ratio
            passed = (
                lam * 0.75 * (1 - 1e-9) <= grad_ratio <= lam * 8.0 / 3.0 * (1 + 1e-9)
            )
    return InequalityReport.from_sides(
        "bernstein",
        {"q": q, "k": k, "a": a, "b": b},
        lhs,
        skeleton,
        passed=passed,
        **extras,
    )


def verify_embedding_D1(
    f: RealField, s: float, alpha: float, part: DyadicPartition
) -> InequalityReport:
    """Norm ratios along the chain H^s -> B^{1+2a}_{2,1} -> H^{1+2a}."""
    hs = sobolev_norm(f, s)
    if hs == 0.0:
        return InequalityReport.from_sides(
            "embedding_D1", {"s": s, "alpha": alpha}, 0.0, 0.0,
            passed=True, besov_over_hs=0.0, hlow_over_besov=0.0,
        )
    besov = besov_norm(f, part, BesovIndex(1.0 + 2.0 * alpha, 2.0, 1.0))
    hlow = sobolev_norm(f, 1.0 + 2.0 * alpha)
    r1 = besov / hs
    r2 = hlow / besov if besov > 0 else 0.0
    passed = np.isfinite(r1) and np.isfinite(r2)
    return InequalityReport.from_sides(
        "embedding_D1", {"s": s, "alpha": alpha}, besov, hs,
        passed=bool(passed), besov_over_hs=r1, hlow_over_besov=r2,
    )
