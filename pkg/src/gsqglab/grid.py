"""Periodic 2D grid, its Fourier dual, and the multiplier-application contract.

Conventions (used everywhere in the package, stated once):

* forward FFT is unnormalized, the inverse carries the 1/n^2 factor
  (numpy's default);
* per-axis wavenumbers are ``(2*pi/length) * {0, 1, ..., n/2-1, -n/2, ..., -1}``;
* integral norms carry the uniform quadrature weight ``(length/n)**2``;
* multipliers that are odd in the frequency variable zero the Nyquist
  row/column so the inverse transform stays real.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import ZeroModeError

__all__ = [
    "Grid2D",
    "RealField",
    "SpectralField",
    "MultiplierSpec",
    "make_grid",
    "fft_forward",
    "fft_inverse",
    "apply_multiplier",
    "hermitian_defect",
    "require_mean_zero",
]


@dataclass(frozen=True)
class Grid2D:
    """Uniform periodic grid on ``[0, length)^2`` with ``n`` points per axis.

    ``n`` must be a power of two, at least 16.  Derived spectral arrays are
    precomputed once: ``wavenumbers`` is the per-axis 1D array in FFT
    ordering, ``kx``/``ky`` the meshed 2D arrays (``indexing='ij'``:
    axis 0 is x1, axis 1 is x2), ``kmag`` the modulus.
    """

    n: int
    length: float = 2.0 * np.pi

    def __post_init__(self):
        n = self.n
        if n < 16 or (n & (n - 1)) != 0:
            raise ValueError(f"grid size must be a power of two >= 16, got {n}")
        if not self.length > 0:
            raise ValueError(f"grid length must be positive, got {self.length}")
        k1 = 2.0 * np.pi / self.length * np.fft.fftfreq(n, d=1.0 / n)
        kx, ky = np.meshgrid(k1, k1, indexing="ij")
        object.__setattr__(self, "wavenumbers", k1)
        object.__setattr__(self, "kx", kx)
        object.__setattr__(self, "ky", ky)
        object.__setattr__(self, "k2", kx**2 + ky**2)
        object.__setattr__(self, "kmag", np.sqrt(kx**2 + ky**2))
        object.__setattr__(self, "dx", self.length / n)
        object.__setattr__(self, "cell_area", (self.length / n) ** 2)

    @property
    def nyquist(self) -> float:
        """Per-axis Nyquist wavenumber magnitude."""
        return (self.n // 2) * 2.0 * np.pi / self.length

    def coordinates(self):
        """Physical coordinate arrays (X1, X2) with ``indexing='ij'``."""
        x = np.arange(self.n) * self.dx
        return np.meshgrid(x, x, indexing="ij")

    def nyquist_mask(self) -> np.ndarray:
        """Boolean mask selecting the Nyquist row/column."""
        m = np.zeros((self.n, self.n), dtype=bool)
        m[self.n // 2, :] = True
        m[:, self.n // 2] = True
        return m


def make_grid(n: int, length: float = 2.0 * np.pi) -> Grid2D:
    """Build a periodic grid; rejects non-power-of-two ``n`` and ``length <= 0``."""
    return Grid2D(int(n), float(length))


@dataclass
class RealField:
    """Real samples on a :class:`Grid2D`, row-major ``(n, n)``."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.grid.n, self.grid.n):
            raise ValueError(
                f"field shape {self.values.shape} does not match grid n={self.grid.n}"
            )

    def mean(self) -> float:
        return float(self.values.mean())

    def copy(self) -> "RealField":
        return RealField(self.grid, self.values.copy())


@dataclass
class SpectralField:
    """Complex Fourier coefficients on a :class:`Grid2D` (full fft2 layout)."""

    grid: Grid2D
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (self.grid.n, self.grid.n):
            raise ValueError(
                f"coefficient shape {self.coeffs.shape} does not match grid n={self.grid.n}"
            )

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs.copy())


def hermitian_defect(F: SpectralField) -> float:
    """Relative deviation from the symmetry ``coeffs(-k) == conj(coeffs(k))``."""
    c = F.coeffs
    mirrored = np.conj(c[::-1, ::-1])
    mirrored = np.roll(mirrored, (1, 1), axis=(0, 1))
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(c - mirrored)) / scale)


def fft_forward(f: RealField) -> SpectralField:
    return SpectralField(f.grid, np.fft.fft2(f.values))


def fft_inverse(F: SpectralField) -> RealField:
    w = np.fft.ifft2(F.coeffs)
    scale = np.max(np.abs(w))
    if scale > 0 and np.max(np.abs(w.imag)) > 1e-8 * scale:
        raise ValueError(
            "inverse transform is not real; coefficients break Hermitian symmetry "
            f"(relative imaginary part {np.max(np.abs(w.imag)) / scale:.3e})"
        )
    return RealField(F.grid, w.real)


@dataclass(frozen=True)
class MultiplierSpec:
    """Fourier multiplier: ``symbol(kx, ky)`` evaluated on the grid wavenumbers.

    ``zero_mode`` is the explicit factor applied to the k=0 coefficient
    (negative-power symbols are undefined there).  ``odd`` marks symbols
    odd in the frequency variable; their Nyquist row/column is zeroed so
    the output stays real-valued.
    """

    symbol: Callable[[np.ndarray, np.ndarray], np.ndarray]
    zero_mode: complex = 0.0
    odd: bool = False


def apply_multiplier(
    F: SpectralField, m: MultiplierSpec
) -> Union[SpectralField, tuple]:
    """Apply a multiplier; scalar symbols give one field, 2-vector symbols a pair."""
    with np.errstate(divide="ignore", invalid="ignore"):
        sym = np.asarray(m.symbol(F.grid.kx, F.grid.ky), dtype=np.complex128)
    if sym.shape == (F.grid.n, F.grid.n):
        components = [sym]
    elif sym.shape == (2, F.grid.n, F.grid.n):
        components = [sym[0], sym[1]]
    else:
        raise ValueError(f"symbol returned shape {sym.shape}; expected (n,n) or (2,n,n)")

    out = []
    for comp in components:
        comp = comp.copy()
        comp[0, 0] = m.zero_mode
        if not np.all(np.isfinite(comp)):
            raise ValueError("multiplier symbol is non-finite at an active wavenumber")
        coeffs = comp * F.coeffs
        if m.odd:
            half = F.grid.n // 2
            coeffs[half, :] = 0.0
            coeffs[:, half] = 0.0
        out.append(SpectralField(F.grid, coeffs))
    return out[0] if len(out) == 1 else tuple(out)


def require_mean_zero(f: RealField, what: str, tol: float = 1e-10) -> None:
    """Raise :class:`ZeroModeError` unless ``f`` has (numerically) zero mean."""
    scale = max(1.0, float(np.max(np.abs(f.values))))
    if abs(f.mean()) > tol * scale:
        raise ZeroModeError(
            f"zero-mode singularity: {what} requires a mean-zero field "
            f"(mean = {f.mean():.3e})"
        )
