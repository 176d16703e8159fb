import numpy as np
import pytest

from gsqglab.errors import ConfigurationError
from gsqglab.kernels import (
    KERNEL_CUTOFF,
    KernelSplitParams,
    QuadratureMesh,
    convolve_T,
    convolve_T1,
    convolve_T1_grid,
    convolve_T2,
    convolve_T2_grid,
    default_family,
    fourier_K1,
    fourier_K1_batch,
    fourier_K1_radial_oracle,
    gaussian,
    gaussian_monomial,
    mesh_for_origin_kernel,
    mesh_for_support,
    offset_gaussian_pair,
    small_regime_envelope,
    t2_hs_beta_factor,
    t2_l2_beta_factor,
    verify_K1_uniform,
    verify_T1_bound,
    verify_T2_Hs_bound,
    verify_T2_L2_bound,
)


class TestCutoffAndParams:
    def test_cutoff_plateaus(self):
        s = np.linspace(0, 3, 3001)
        v = KERNEL_CUTOFF(s)
        assert np.all(np.abs(v[s <= 1.0] - 1.0) < 1e-14)
        assert np.all(np.abs(v[s >= 2.0]) < 1e-14)

    def test_cutoff_slope_bound(self):
        slope = KERNEL_CUTOFF.max_slope()
        assert slope <= 2.0
        print(f"\n[measured] kernel cutoff max |chi'| = {slope:.4f}")

    def test_beta_range(self):
        with pytest.raises(ValueError):
            KernelSplitParams(0.0)
        with pytest.raises(ValueError):
            KernelSplitParams(1.0)

    def test_variant_names(self):
        with pytest.raises(ValueError):
            KernelSplitParams(0.5, "diagonal")

    def test_cutoff_scale(self):
        p = KernelSplitParams(0.25)
        assert p.cutoff_scale == (4.0, 8.0)

    def test_kernel_directions(self):
        p_straight = KernelSplitParams(0.5, "straight")
        p_perp = KernelSplitParams(0.5, "perpendicular")
        x = np.array([[1.0, 0.0]])
        ks = p_straight.kernel_values(x)[0]
        kp = p_perp.kernel_values(x)[0]
        assert np.allclose(ks, [1.0, 0.0])
        assert np.allclose(kp, [0.0, 1.0])


class TestMesh:
    def test_grading_ratio_bounds(self):
        with pytest.raises(ValueError):
            QuadratureMesh(1e-8, 1.0, ratio=1.25)
        with pytest.raises(ValueError):
            QuadratureMesh(1e-8, 1.0, ratio=1.0)

    def test_inner_radius_invariant(self):
        with pytest.raises(ValueError):
            QuadratureMesh(0.1, 1.0)

    def test_angular_even(self):
        with pytest.raises(ValueError):
            QuadratureMesh(1e-8, 1.0, n_angular=33)

    def test_disk_area(self):
        mesh = QuadratureMesh(1e-7, 1.0, n_angular=16)
        _, w = mesh.nodes()
        assert np.isclose(np.sum(w), np.pi, rtol=1e-10)

    def test_refined_halves_grading(self):
        mesh = QuadratureMesh(1e-8, 1.0, ratio=1.12, n_angular=32)
        fine = mesh.refined()
        assert np.isclose(fine.ratio - 1.0, 0.06)
        assert fine.n_angular == 64


class TestTestFunctions:
    def test_gaussian_norms_by_quadrature(self):
        f = gaussian(1.3, amplitude=0.8)
        mesh = mesh_for_support(f, gl_order=4)
        pts, w = mesh.nodes()
        vals = f.evaluate(pts)
        l1 = np.sum(w * np.abs(vals))
        l2 = np.sqrt(np.sum(w * vals**2))
        assert abs(l1 - f.l1_exact) < 1e-6 * f.l1_exact
        assert abs(l2 - f.l2_exact) < 1e-6 * f.l2_exact

    def test_decay_certificate(self):
        for f in default_family():
            theta = np.linspace(0, 2 * np.pi, 17)
            ring = f.decay_radius * np.stack([np.cos(theta), np.sin(theta)], -1)
            assert np.max(np.abs(f.evaluate(ring))) < 1e-14

    def test_monomial_and_pair_shapes(self):
        m = gaussian_monomial(1.0, (1, 1))
        assert m.evaluate(np.array([[0.0, 0.0]]))[0] == 0.0
        p = offset_gaussian_pair(1.0, 2.0)
        v = p.evaluate(np.array([[2.0, 0.0], [-2.0, 0.0]]))
        assert np.isclose(v[0], -v[1])


class TestConvolutions:
    def test_odd_kernel_radial_function_origin(self):
        out = convolve_T(gaussian(1.0), KernelSplitParams(0.3), [[0.0, 0.0]])
        assert np.max(np.abs(out)) < 1e-12

    def test_antisymmetry_for_radial_input(self):
        params = KernelSplitParams(0.4, "straight")
        xs = np.array([[1.2, 0.7], [-1.2, -0.7]])
        out = convolve_T(gaussian(1.0), params, xs)
        assert np.allclose(out[0], -out[1], atol=1e-10)

    def test_split_identity(self):
        params = KernelSplitParams(0.3)
        g1 = gaussian(1.0)
        xs = np.stack(np.meshgrid(np.linspace(-2, 2, 5), np.linspace(-2, 2, 5),
                                  indexing="ij"), -1).reshape(-1, 2)
        T = convolve_T(g1, params, xs)
        total = convolve_T1(g1, params, xs) + convolve_T2(g1, params, xs)
        err = np.max(np.abs(total - T)) / np.max(np.abs(T))
        assert err < 1e-6
        print(f"\n[measured] split identity relative error at beta=0.3: {err:.2e}")

    def test_t1_mesh_must_cover_support(self):
        params = KernelSplitParams(0.2)  # support radius 10
        small = QuadratureMesh(1e-7 * 5.0, 5.0, n_angular=64)
        with pytest.raises(ConfigurationError, match="cutoff support"):
            convolve_T1(gaussian(1.0), params, [[0.0, 0.0]], small)

    def test_near_endpoint_refinement_agreement(self):
        # beta -> 1 sanity for the velocity-type kernel: two quadrature levels
        params = KernelSplitParams(0.95, "perpendicular")
        f = gaussian(1.0)
        xs = np.array([[0.6, 0.1], [1.5, -0.9]])
        mesh = mesh_for_origin_kernel(f.decay_radius + 2.0, f.scale)
        a = convolve_T(f, params, xs, mesh)
        b = convolve_T(f, params, xs, mesh.refined())
        assert np.max(np.abs(a - b)) / np.max(np.abs(a)) < 1e-4

    def test_t1_grid_matches_pointwise(self):
        params = KernelSplitParams(0.5)
        f = offset_gaussian_pair(1.0, 2.0)
        x1d = np.linspace(-8.0, 8.0, 33)
        grid_vals = convolve_T1_grid(f, params, x1d)
        pts = np.array([[x1d[4], x1d[20]], [x1d[16], x1d[16]]])
        direct = convolve_T1(f, params, pts)
        assert np.allclose(grid_vals[4, 20], direct[0], rtol=1e-8, atol=1e-12)
        assert np.allclose(grid_vals[16, 16], direct[1], rtol=1e-8, atol=1e-12)

    def test_t2_grid_matches_direct(self):
        params = KernelSplitParams(0.3)
        f = gaussian(1.0)
        hw = 10.0 / 0.3 + f.decay_radius
        n = 512
        samples, h = convolve_T2_grid(f, params, n, hw)
        idx = [(n // 2 + 3, n // 2 - 5), (n // 2 + 40, n // 2 + 22)]
        xs = np.array([[(i - n // 2) * h, (j - n // 2) * h] for i, j in idx])
        direct = convolve_T2(f, params, xs)
        scale = np.max(np.abs(direct))
        for k, (i, j) in enumerate(idx):
            assert np.max(np.abs(samples[i, j] - direct[k])) < 1e-5 * scale


class TestFourierK1:
    def test_zero_frequency(self):
        v = fourier_K1(np.array([0.0, 0.0]), KernelSplitParams(0.5, "straight"))
        assert np.max(np.abs(v)) < 1e-12

    def test_purely_imaginary(self):
        params = KernelSplitParams(0.5, "straight")
        for y in ([0.3, 0.0], [1.0, 2.0], [4.0, 0.0]):
            v = fourier_K1(np.array(y), params)
            assert max(abs(v[0].real), abs(v[1].real)) < 1e-8

    def test_tabulated_magnitudes_two_mesh_levels(self):
        params = KernelSplitParams(0.5, "straight")
        for rho in (0.1, 1.0, 10.0):
            y = np.array([[rho, 0.0]])
            coarse = fourier_K1_batch(y, params)
            from gsqglab.kernels import _mesh_for_fourier

            fine = fourier_K1_batch(y, params, _mesh_for_fourier(params, rho).refined())
            mc = np.sqrt(np.sum(np.abs(coarse) ** 2))
            mf = np.sqrt(np.sum(np.abs(fine) ** 2))
            assert abs(mc - mf) < 1e-4 * mf
            oracle = fourier_K1_radial_oracle(rho, params)
            assert abs(mc - oracle) < 1e-4 * oracle
            print(f"\n[measured] |K1_hat| at beta=0.5, |y|={rho:g}: {mc:.6f}")

    def test_angular_resolution_guard(self):
        params = KernelSplitParams(0.5)
        coarse = QuadratureMesh(1e-7 * 4.0, 4.0, n_angular=16)
        with pytest.raises(ConfigurationError, match="insufficient angular resolution"):
            fourier_K1(np.array([50.0, 0.0]), params, coarse)

    def test_perpendicular_same_magnitude(self):
        y = np.array([1.3, -0.4])
        a = fourier_K1(y, KernelSplitParams(0.4, "straight"))
        b = fourier_K1(y, KernelSplitParams(0.4, "perpendicular"))
        assert np.isclose(np.sum(np.abs(a) ** 2), np.sum(np.abs(b) ** 2), rtol=1e-10)


class TestBetaFactors:
    def test_hs_factor_small_beta_limit(self):
        assert abs(t2_hs_beta_factor(1e-6) - np.log(2.0)) < 1e-4

    def test_l2_factor_values(self):
        assert np.isclose(t2_l2_beta_factor(0.5), 0.25 / np.sqrt(1.0) * 2.0, rtol=1e-12)
        # explicit: beta^{1} / sqrt(2 - 2 beta) at n = 2
        assert np.isclose(t2_l2_beta_factor(0.3), 0.3 / np.sqrt(1.4), rtol=1e-12)


class TestSweepVerifiers:
    def test_t1_single_beta_finite(self):
        rep = verify_T1_bound([gaussian(1.0)], 1.0, [0.5])
        assert rep.passed and np.isfinite(rep.lhs)
        print(f"\n[measured] T1 H^1 ratio at beta=0.5: {rep.lhs:.4f}")

    def test_t1_zero_function(self):
        zero = gaussian(1.0, amplitude=0.0)
        rep = verify_T1_bound([zero], 1.0, [0.4])
        assert rep.extras["per_beta"][0.4] == 0.0

    def test_t2_l2_small_grid(self):
        rep = verify_T2_L2_bound([gaussian(1.0)], [0.1, 0.2, 0.4])
        assert rep.passed
        lhs = rep.extras["lhs_by_beta"]
        assert lhs[0.1] < lhs[0.4]

    def test_t2_l2_window_must_reach_tail(self):
        with pytest.raises(ConfigurationError, match="10/beta"):
            verify_T2_L2_bound([gaussian(1.0)], [0.2], window_scale=5.0)

    def test_t2_zero_function(self):
        zero = gaussian(1.0, amplitude=0.0)
        rep = verify_T2_L2_bound([zero], [0.2, 0.4])
        assert rep.extras["per_beta"][0.2] == 0.0 and rep.passed
        rep_hs = verify_T2_Hs_bound([zero], 1.0, [0.3])
        assert rep_hs.extras["per_beta"][0.3] == 0.0

    def test_t2_hs_small_grid(self):
        rep = verify_T2_Hs_bound([gaussian(1.0)], 1.0, [0.3, 0.6, 0.9])
        assert rep.passed

    def test_k1_uniform_and_envelope(self):
        rep = verify_K1_uniform([0.1, 0.5, 0.9])
        assert rep.passed and rep.extras["small_regime_envelope_ok"]

    def test_k1_y_grid_must_span_regimes(self):
        with pytest.raises(ValueError, match="three regimes"):
            verify_K1_uniform([0.5], y_factors=(2.0, 3.0))

    def test_beta_grid_validation(self):
        with pytest.raises(ValueError):
            verify_T1_bound([gaussian(1.0)], 1.0, [0.5, 1.2])

    def test_small_regime_envelope_formula(self):
        # (2 pi)^2 |y| (2/beta)^{beta+1} / (beta+1)
        v = small_regime_envelope(0.1, 0.5)
        assert np.isclose(v, (2 * np.pi) ** 2 * 0.1 * 4.0**1.5 / 1.5, rtol=1e-12)
