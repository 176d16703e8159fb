import numpy as np
import pytest

from gsqglab.errors import (
    BlowUpError,
    ConfigurationError,
    SnapshotFormatError,
    ZeroModeError,
)
from gsqglab.grid import RealField, make_grid
from gsqglab.profiles import make_profile
from gsqglab.solver import (
    SolverConfig,
    SolverState,
    cfl_dt,
    load_snapshot,
    rhs,
    run,
    save_snapshot,
    step_rk4,
)


def cfg64(**kw):
    base = dict(alpha=0.25, n=64, t_end=1.0)
    base.update(kw)
    return SolverConfig(**base)


class TestConfig:
    def test_alpha_range(self):
        with pytest.raises(ConfigurationError):
            cfg64(alpha=0.7)

    def test_positive_t_end(self):
        with pytest.raises(ConfigurationError):
            cfg64(t_end=0.0)

    def test_cfl_range(self):
        with pytest.raises(ConfigurationError):
            cfg64(cfl=1.5)

    def test_dealias_rule(self):
        with pytest.raises(ConfigurationError):
            cfg64(dealias="half")


class TestRhs:
    def test_steady_shear_x(self, grid64):
        x1, _ = grid64.coordinates()
        for alpha in (0.0, 0.3, 0.5):
            out = rhs(RealField(grid64, np.cos(x1)), alpha, cfg64(alpha=alpha))
            assert np.max(np.abs(out.values)) < 1e-14

    def test_steady_shear_y(self, grid64):
        _, x2 = grid64.coordinates()
        out = rhs(RealField(grid64, np.cos(x2)), 0.25, cfg64())
        assert np.max(np.abs(out.values)) < 1e-14

    def test_steady_oblique_wavevector(self, grid64):
        # any single-wavevector state is a fixed point: the velocity is
        # perpendicular to the gradient
        x1, x2 = grid64.coordinates()
        out = rhs(RealField(grid64, np.cos(3 * x1 + 2 * x2)), 0.4, cfg64(alpha=0.4))
        assert np.max(np.abs(out.values)) < 1e-12

    def test_two_mode_analytic_and_fd(self):
        # u . grad w for cos x1 + cos 2 x2 at alpha = 0 has the closed form
        # (3/2) sin x1 sin 2 x2; cross-check the product against 4th-order
        # finite differences of w
        g = make_grid(256)
        x1, x2 = g.coordinates()
        w = RealField(g, np.cos(x1) + np.cos(2 * x2))
        out = rhs(w, 0.0, SolverConfig(alpha=0.0, n=256, t_end=1.0))
        analytic = -1.5 * np.sin(x1) * np.sin(2 * x2)
        assert np.max(np.abs(out.values - analytic)) < 1e-12

        from gsqglab.operators import biot_savart

        u1, u2 = biot_savart(w, 0.0)
        h = g.dx

        def d4(a, axis):
            return (
                -np.roll(a, -2, axis) + 8 * np.roll(a, -1, axis)
                - 8 * np.roll(a, 1, axis) + np.roll(a, 2, axis)
            ) / (12 * h)

        fd = -(u1.values * d4(w.values, 0) + u2.values * d4(w.values, 1))
        assert np.max(np.abs(out.values - fd)) < 1e-6

    def test_output_mean_zero(self, grid64, rng):
        from gsqglab.operators import band_limit

        w = band_limit(RealField(grid64, rng.standard_normal((64, 64))), 8.0,
                       keep_mean=False)
        out = rhs(w, 0.4, cfg64(alpha=0.4))
        assert abs(out.mean()) < 1e-13

    def test_requires_mean_zero(self, grid64):
        with pytest.raises(ZeroModeError):
            rhs(RealField(grid64, np.ones((64, 64))), 0.25, cfg64())

    def test_pure_function(self, grid64, rng):
        from gsqglab.operators import band_limit

        w = band_limit(RealField(grid64, rng.standard_normal((64, 64))), 8.0,
                       keep_mean=False)
        a = rhs(w, 0.25, cfg64())
        b = rhs(w, 0.25, cfg64())
        assert np.array_equal(a.values, b.values)


class TestCflDt:
    def test_zero_field_floor(self, grid64):
        state = SolverState(0.0, RealField(grid64, np.zeros((64, 64))))
        dt = cfl_dt(state, cfg64(t_end=5.0))
        assert dt == 5.0  # floored value capped at remaining time

    def test_unit_shear(self, grid64):
        x1, _ = grid64.coordinates()
        state = SolverState(0.0, RealField(grid64, np.cos(x1)))
        dt = cfl_dt(state, cfg64(t_end=100.0))
        assert np.isclose(dt, 0.4 * (2 * np.pi / 64) / 1.0, rtol=1e-12)

    def test_never_exceeds_remaining(self, grid64):
        x1, _ = grid64.coordinates()
        state = SolverState(0.95, RealField(grid64, np.cos(x1)))
        assert cfl_dt(state, cfg64(t_end=1.0)) <= 0.05 + 1e-15


class TestStepping:
    def test_steady_state_1000_steps(self, grid64):
        x1, _ = grid64.coordinates()
        w0 = RealField(grid64, np.cos(x1))
        cfg = cfg64(alpha=0.3, t_end=1e9, fixed_dt=0.02)
        state = SolverState(0.0, w0)
        for _ in range(100):
            state = step_rk4(state, cfg)
        assert np.max(np.abs(state.omega.values - w0.values)) < 1e-13

    def test_zero_field_stays_zero(self, grid64):
        state = SolverState(0.0, RealField(grid64, np.zeros((64, 64))))
        out = step_rk4(state, cfg64(fixed_dt=0.01))
        assert np.max(np.abs(out.omega.values)) == 0.0

    def test_temporal_order_four(self):
        g = make_grid(64)
        w0 = make_profile("two_mode", g)
        finals = []
        dts = [0.02, 0.01, 0.005, 0.0025]
        for dt in dts:
            cfg = SolverConfig(alpha=0.0, n=64, t_end=0.5, fixed_dt=dt,
                               record_every=10**9)
            traj, _ = run(cfg, w0)
            finals.append(traj.final.omega.values)
        errs = [np.max(np.abs(finals[i] - finals[i + 1])) for i in range(3)]
        slopes = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(np.abs(slopes - 4.0) <= 0.3)


class TestRun:
    def test_steady_final_equals_initial(self, grid64):
        x1, _ = grid64.coordinates()
        w0 = RealField(grid64, np.cos(x1))
        traj, _ = run(cfg64(alpha=0.5), w0)
        assert np.max(np.abs(traj.final.omega.values - w0.values)) < 1e-10

    def test_grid_mismatch(self, grid128):
        w0 = make_profile("two_mode", grid128)
        with pytest.raises(ConfigurationError):
            run(cfg64(), w0)

    def test_under_resolved_rejected(self, grid64):
        x1, x2 = grid64.coordinates()
        from gsqglab.errors import UnresolvedFieldError

        w0 = RealField(grid64, np.cos(25 * x1 + 25 * x2))
        with pytest.raises(UnresolvedFieldError):
            run(cfg64(), w0)

    def test_mean_conserved_and_divergence_free(self, grid64):
        w0 = make_profile("two_mode", grid64)
        traj, diag = run(cfg64(t_end=0.5), w0)
        assert abs(traj.final.omega.mean()) < 1e-13
        assert max(diag.divmax) < 1e-12

    def test_conservation_drift_shrinks_with_resolution(self):
        drifts = {}
        for n in (64, 256):
            g = make_grid(n)
            w0 = make_profile("two_mode", g)
            _, diag = run(SolverConfig(alpha=0.25, n=n, t_end=1.0, record_every=5), w0)
            drifts[n] = {
                "l1": diag.relative_drift(diag.l1),
                "l2": diag.relative_drift(diag.l2),
                "l4": diag.relative_drift(diag.l4),
            }
        for p in ("l1", "l2", "l4"):
            assert drifts[256][p] < drifts[64][p] or drifts[256][p] < 1e-10

    def test_resolution_self_convergence(self):
        finals = {}
        for n in (128, 256):
            g = make_grid(n)
            w0 = make_profile("two_mode", g)
            traj, _ = run(SolverConfig(alpha=0.0, n=n, t_end=1.0,
                                       record_every=10**9), w0)
            finals[n] = traj.final.omega.values
        # band-limited solution: the coarse grid sees every other sample
        diff = finals[256][::2, ::2] - finals[128]
        l2 = np.sqrt(np.sum(diff**2) * (2 * np.pi / 128) ** 2)
        assert l2 < 1e-6

    def test_time_reversal(self):
        # integrating the negated field forward is the time reverse
        g = make_grid(256)
        w0 = make_profile("two_mode", g)
        cfg = SolverConfig(alpha=0.25, n=256, t_end=0.5, record_every=10**9)
        fwd, _ = run(cfg, w0)
        back_start = RealField(g, -fwd.final.omega.values)
        bwd, _ = run(cfg, back_start)
        recovered = -bwd.final.omega.values
        rel = np.max(np.abs(recovered - w0.values)) / np.max(np.abs(w0.values))
        assert rel < 1e-5

    def test_exponential_filter_runs(self, grid64):
        w0 = make_profile("two_mode", grid64)
        cfg = cfg64(t_end=0.25, filter_strength=1.0, filter_order=8)
        traj, diag = run(cfg, w0)
        assert np.all(np.isfinite(traj.final.omega.values))
        # the filter only damps the spectrum tail; low modes barely move
        assert diag.relative_drift(diag.l2) < 1e-2

    def test_snapshot_capture_times(self, grid64):
        w0 = make_profile("two_mode", grid64)
        cfg = cfg64(t_end=1.0, snapshot_every=0.25, capture_times=(0.1,))
        traj, _ = run(cfg, w0)
        assert any(abs(t - 0.1) < 1e-9 for t in traj.times)
        assert any(abs(t - 0.25) < 1e-9 for t in traj.times)
        assert any(abs(t - 1.0) < 1e-9 for t in traj.times)

    def test_blow_up_detected_with_partial_diagnostics(self, grid64):
        w0 = make_profile("two_mode", grid64, amplitude=10.0)
        cfg = cfg64(alpha=0.5, t_end=50.0, fixed_dt=5.0)  # wildly unstable step
        with np.errstate(over="ignore", invalid="ignore"):
            with pytest.raises(BlowUpError) as err:
                run(cfg, w0)
        assert hasattr(err.value, "diagnostics")
        assert err.value.step >= 1


class TestSnapshots:
    def test_round_trip_random_states(self, tmp_path):
        from hypothesis import given, settings, strategies as st

        @settings(max_examples=15, deadline=None)
        @given(
            n=st.sampled_from([16, 32]),
            alpha=st.floats(0.0, 0.5),
            t=st.floats(0.0, 100.0),
            seed=st.integers(0, 2**31),
        )
        def roundtrip(n, alpha, t, seed):
            vals = np.random.default_rng(seed).standard_normal((n, n))
            state = SolverState(t, RealField(make_grid(n), vals))
            path = tmp_path / "h.gsf"
            save_snapshot(state, path, alpha=alpha)
            snap = load_snapshot(path)
            assert np.array_equal(snap.omega.values, vals)
            assert snap.alpha == alpha and snap.t == t

        roundtrip()

    def test_round_trip_bit_exact(self, tmp_path, grid64, rng):
        vals = rng.standard_normal((64, 64))
        state = SolverState(1.25, RealField(grid64, vals), 17, 0.01)
        path = tmp_path / "s.gsf"
        save_snapshot(state, path, alpha=0.37)
        snap = load_snapshot(path)
        assert np.array_equal(snap.omega.values, vals)
        assert snap.alpha == 0.37 and snap.t == 1.25 and snap.n == 64

    def test_wrong_magic(self, tmp_path):
        path = tmp_path / "bad.gsf"
        path.write_bytes(b"NOTGSQ\x00" + b"x" * 64)
        with pytest.raises(SnapshotFormatError, match="not a GSF1 file"):
            load_snapshot(path)

    def test_header_parse_failure(self, tmp_path):
        path = tmp_path / "bad2.gsf"
        path.write_bytes(b"GSQG1\n{not json}\n" + b"\x00" * 16)
        with pytest.raises(SnapshotFormatError, match="header parse failure"):
            load_snapshot(path)

    def test_payload_length_mismatch(self, tmp_path, grid64):
        state = SolverState(0.0, RealField(grid64, np.zeros((64, 64))))
        path = tmp_path / "t.gsf"
        save_snapshot(state, path, alpha=0.1)
        data = path.read_bytes()
        path.write_bytes(data[:-8])
        with pytest.raises(SnapshotFormatError, match="payload length mismatch"):
            load_snapshot(path)
