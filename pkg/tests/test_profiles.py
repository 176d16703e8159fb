import numpy as np
import pytest

from gsqglab.profiles import make_profile


class TestProfiles:
    def test_two_mode_shape(self, grid64):
        f = make_profile("two_mode", grid64)
        x1, x2 = grid64.coordinates()
        assert np.allclose(f.values, np.cos(x1) + np.cos(2 * x2), atol=1e-14)
        assert abs(f.mean()) < 1e-14

    def test_random_bandlimited_reproducible(self, grid64):
        a = make_profile("random_bandlimited", grid64, seed=5, kmax=6)
        b = make_profile("random_bandlimited", grid64, seed=5, kmax=6)
        c = make_profile("random_bandlimited", grid64, seed=6, kmax=6)
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, c.values)
        assert abs(a.mean()) < 1e-14
        assert np.isclose(np.max(np.abs(a.values)), 1.0)

    def test_random_bandlimited_spectrum(self, grid64):
        f = make_profile("random_bandlimited", grid64, seed=2, kmax=5)
        F = np.fft.fft2(f.values)
        assert np.max(np.abs(F[grid64.kmag > 5.0])) < 1e-10 * np.max(np.abs(F))

    def test_gaussian_vortex_pair_mean_zero(self, grid64):
        f = make_profile("gaussian_vortex_pair", grid64, sigma=0.5, separation=2.0)
        assert abs(f.mean()) < 1e-15
        # antisymmetric about the mid-plane through the pair
        assert np.max(np.abs(f.values)) > 0.5

    def test_unknown_profile(self, grid64):
        with pytest.raises(ValueError, match="unknown initial-data profile"):
            make_profile("vortex_sheet", grid64)
