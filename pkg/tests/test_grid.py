import numpy as np
import pytest

from gsqglab.grid import (
    MultiplierSpec,
    RealField,
    SpectralField,
    apply_multiplier,
    fft_forward,
    fft_inverse,
    hermitian_defect,
    make_grid,
)


class TestGridConstruction:
    def test_wavenumber_ordering(self):
        g = make_grid(16, 2 * np.pi)
        expected = np.array([0, 1, 2, 3, 4, 5, 6, 7, -8, -7, -6, -5, -4, -3, -2, -1],
                            dtype=float)
        assert np.allclose(g.wavenumbers, expected)

    def test_nyquist_present_once(self):
        g = make_grid(64)
        assert np.sum(g.wavenumbers == -32.0) == 1
        assert np.sum(np.abs(g.wavenumbers) == 32.0) == 1
        assert np.isclose(np.max(g.kmag), 32.0 * np.sqrt(2.0))

    def test_length_scaling(self):
        g = make_grid(32, 4 * np.pi)
        assert np.isclose(g.wavenumbers[1], 0.5)

    @pytest.mark.parametrize("n", [17, 20, 12, 8])
    def test_rejects_bad_sizes(self, n):
        with pytest.raises(ValueError):
            make_grid(n)

    def test_rejects_nonpositive_length(self):
        with pytest.raises(ValueError):
            make_grid(32, 0.0)
        with pytest.raises(ValueError):
            make_grid(32, -1.0)

    def test_field_shape_mismatch(self):
        g = make_grid(16)
        with pytest.raises(ValueError):
            RealField(g, np.zeros((8, 8)))
        with pytest.raises(ValueError):
            SpectralField(g, np.zeros((16, 8), dtype=complex))


class TestTransforms:
    def test_single_mode_support(self, grid64):
        x1, _ = grid64.coordinates()
        F = fft_forward(RealField(grid64, np.cos(x1)))
        mags = np.abs(F.coeffs)
        active = np.argwhere(mags > 1e-9 * mags.max())
        assert sorted(map(tuple, active)) == [(1, 0), (63, 0)]

    def test_constant_only_zero_mode(self, grid64):
        F = fft_forward(RealField(grid64, np.full((64, 64), 3.0)))
        coeffs = F.coeffs.copy()
        coeffs[0, 0] = 0.0
        assert np.max(np.abs(coeffs)) < 1e-10 * abs(F.coeffs[0, 0])

    def test_round_trip(self, random_field):
        back = fft_inverse(fft_forward(random_field))
        scale = np.max(np.abs(random_field.values))
        assert np.max(np.abs(back.values - random_field.values)) < 1e-12 * scale

    def test_parseval(self, random_field):
        g = random_field.grid
        F = fft_forward(random_field)
        spectral = np.sum(np.abs(F.coeffs) ** 2) * g.length**2 / g.n**4
        physical = np.sum(random_field.values**2) * g.cell_area
        assert abs(spectral - physical) < 1e-10 * physical

    def test_hermitian_symmetry(self, random_field):
        assert hermitian_defect(fft_forward(random_field)) < 1e-12


class TestMultipliers:
    def test_identity(self, random_field):
        out = apply_multiplier(
            fft_forward(random_field),
            MultiplierSpec(lambda kx, ky: np.ones_like(kx), zero_mode=1.0),
        )
        back = fft_inverse(out)
        assert np.allclose(back.values, random_field.values, atol=1e-12)

    def test_laplacian_on_unit_mode(self, grid64):
        x1, _ = grid64.coordinates()
        F = fft_forward(RealField(grid64, np.cos(x1)))
        out = fft_inverse(apply_multiplier(
            F, MultiplierSpec(lambda kx, ky: kx**2 + ky**2)
        ))
        assert np.max(np.abs(out.values - np.cos(x1))) < 1e-12

    def test_exact_spectral_derivative(self, grid64):
        x1, _ = grid64.coordinates()
        F = fft_forward(RealField(grid64, np.sin(x1)))
        out = fft_inverse(apply_multiplier(
            F, MultiplierSpec(lambda kx, ky: 1j * kx, odd=True)
        ))
        assert np.max(np.abs(out.values - np.cos(x1))) < 1e-12

    def test_nonfinite_symbol_rejected(self, random_field):
        F = fft_forward(random_field)
        with pytest.raises(ValueError, match="non-finite"):
            apply_multiplier(
                F, MultiplierSpec(lambda kx, ky: 1.0 / (kx - 3.0), zero_mode=0.0)
            )

    def test_vector_symbol_gives_pair(self, random_field):
        F = fft_forward(random_field)
        out = apply_multiplier(
            F,
            MultiplierSpec(lambda kx, ky: np.stack([1j * kx, 1j * ky]),
                           zero_mode=0.0, odd=True),
        )
        assert isinstance(out, tuple) and len(out) == 2

    def test_odd_multiplier_zeroes_nyquist(self, grid64):
        # data containing the Nyquist mode must stay real after ik
        vals = np.cos(32 * grid64.coordinates()[0])
        F = fft_forward(RealField(grid64, vals))
        out = apply_multiplier(F, MultiplierSpec(lambda kx, ky: 1j * kx, odd=True))
        assert np.max(np.abs(out.coeffs[32, :])) == 0.0
        fft_inverse(out)  # must not raise the realness guard
