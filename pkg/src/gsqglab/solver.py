"""Pseudo-spectral time integration of the inviscid alpha-family transport
equation ``w_t + u . grad w = 0``, ``u = perp-grad (-Lap)^(alpha - 1) w``.

Classical RK4 in time (fixed or CFL-limited steps), two-thirds dealiasing of
the quadratic term, optional exponential high-wavenumber filter (off by
default so parameter-difference measurements stay uncontaminated).  State is
advanced in the half-complex rfft layout; fields cross the API as
:class:`~gsqglab.grid.RealField`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BlowUpError, ConfigurationError, SnapshotFormatError, UnresolvedFieldError
from .grid import Grid2D, RealField, make_grid, require_mean_zero

__all__ = [
    "SolverConfig",
    "SolverState",
    "Snapshot",
    "Diagnostics",
    "Trajectory",
    "rhs",
    "cfl_dt",
    "step_rk4",
    "run",
    "save_snapshot",
    "load_snapshot",
]

_GSF1_MAGIC = b"GSQG1\n"
_UMAX_FLOOR = 1e-12


@dataclass
class SolverConfig:
    alpha: float
    n: int
    t_end: float
    length: float = 2.0 * np.pi
    cfl: float = 0.4
    dealias: str = "two_thirds"  # or "none"
    filter_strength: float = 0.0
    filter_order: int = 8
    snapshot_every: Optional[float] = None
    capture_times: tuple = ()
    sobolev_orders: tuple = (3.0,)
    fixed_dt: Optional[float] = None
    record_every: int = 1

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 0.5:
            raise ConfigurationError(f"alpha must lie in [0, 1/2], got {self.alpha}")
        if not self.t_end > 0:
            raise ConfigurationError("t_end must be positive")
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigurationError("cfl must lie in (0, 1]")
        if self.dealias not in ("two_thirds", "none"):
            raise ConfigurationError(f"unknown dealias rule {self.dealias!r}")
        if self.filter_strength < 0:
            raise ConfigurationError("filter strength must be >= 0")

    def grid(self) -> Grid2D:
        return make_grid(self.n, self.length)


@dataclass
class SolverState:
    t: float
    omega: RealField
    step_count: int = 0
    dt_last: float = 0.0


@dataclass
class Snapshot:
    """Persisted field state (GSF1 file contents)."""

    n: int
    length: float
    alpha: float
    t: float
    omega: RealField

    @property
    def state(self) -> SolverState:
        return SolverState(self.t, self.omega)


class Diagnostics:
    """Per-step norm and velocity records."""

    def __init__(self, sobolev_orders):
        self.sobolev_orders = tuple(sobolev_orders)
        self.t = []
        self.l1 = []
        self.l2 = []
        self.l4 = []
        self.hs = {s: [] for s in self.sobolev_orders}
        self.umax = []
        self.divmax = []

    def append(self, t, omega_vals, hat_norms, umax, divmax, cell_area):
        a = np.abs(omega_vals)
        self.t.append(float(t))
        self.l1.append(float(np.sum(a) * cell_area))
        self.l2.append(float(np.sqrt(np.sum(a**2) * cell_area)))
        self.l4.append(float((np.sum(a**4) * cell_area) ** 0.25))
        for s, v in hat_norms.items():
            self.hs[s].append(float(v))
        self.umax.append(float(umax))
        self.divmax.append(float(divmax))

    def header(self):
        return ["t", "l1", "l2", "l4"] + [f"hs_{s:g}" for s in self.sobolev_orders] + [
            "umax",
            "divmax",
        ]

    def rows(self):
        for i in range(len(self.t)):
            row = [self.t[i], self.l1[i], self.l2[i], self.l4[i]]
            row += [self.hs[s][i] for s in self.sobolev_orders]
            row += [self.umax[i], self.divmax[i]]
            yield row

    def relative_drift(self, series) -> float:
        v = np.asarray(series)
        if v[0] == 0:
            return float(np.max(np.abs(v)))
        return float(np.max(np.abs(v - v[0])) / abs(v[0]))


@dataclass
class Trajectory:
    times: list
    states: list  # RealField at each captured time
    final: SolverState


class _Spectral:
    """Precomputed rfft-layout multipliers for one (grid, alpha, dealias) triple."""

    def __init__(self, grid: Grid2D, alpha: float, dealias: str):
        n = grid.n
        half = n // 2
        k1 = grid.wavenumbers
        kx = k1[:, None]
        ky = k1[None, : half + 1]
        k2 = kx**2 + ky**2
        with np.errstate(divide="ignore"):
            g = k2 ** (alpha - 1.0)
        g[0, 0] = 0.0
        self.grid = grid
        self.shape = (n, n)
        self.ikx = 1j * kx * np.ones_like(k2)
        self.iky = 1j * ky * np.ones_like(k2)
        self.bs1 = -1j * ky * g
        self.bs2 = 1j * kx * g
        # odd multipliers: zero the Nyquist row/column
        for arr in (self.ikx, self.iky, self.bs1, self.bs2):
            arr[half, :] = 0.0
            arr[:, half] = 0.0
        if dealias == "two_thirds":
            kc = int(np.ceil(n / 3.0)) - 1
            idx = np.abs(np.fft.fftfreq(n, d=1.0 / n))
            keep_x = idx[:, None] <= kc
            keep_y = idx[None, : half + 1] <= kc
            self.mask = keep_x & keep_y
        else:
            self.mask = np.ones((n, half + 1), dtype=bool)

    def forward(self, values):
        return np.fft.rfft2(values)

    def inverse(self, hat):
        return np.fft.irfft2(hat, s=self.shape)

    def project(self, hat):
        out = hat * self.mask
        out[0, 0] = 0.0
        return out

    def velocity(self, w_hat):
        return self.inverse(self.bs1 * w_hat), self.inverse(self.bs2 * w_hat)

    def advection_hat(self, w_hat, uv=None):
        """Spectrum of the dealiased transport term ``u . grad w``."""
        u1, u2 = uv if uv is not None else self.velocity(w_hat)
        wx = self.inverse(self.ikx * w_hat)
        wy = self.inverse(self.iky * w_hat)
        a = np.fft.rfft2(u1 * wx + u2 * wy)
        a *= self.mask
        a[0, 0] = 0.0
        return a

    def rk4(self, w_hat, dt, sign=1.0):
        k1 = -sign * self.advection_hat(w_hat)
        k2 = -sign * self.advection_hat(w_hat + 0.5 * dt * k1)
        k3 = -sign * self.advection_hat(w_hat + 0.5 * dt * k2)
        k4 = -sign * self.advection_hat(w_hat + dt * k3)
        return w_hat + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def measured_divergence_max(self, u1, u2):
        d = self.inverse(self.ikx * np.fft.rfft2(u1) + self.iky * np.fft.rfft2(u2))
        return float(np.max(np.abs(d)))

    def hat_norms(self, w_hat, orders):
        """L^2-type norms straight from the half-complex spectrum."""
        n = self.grid.n
        half = n // 2
        weight = np.full(half + 1, 2.0)
        weight[0] = 1.0
        weight[half] = 1.0
        power = np.abs(w_hat) ** 2 * weight[None, :]
        k1 = self.grid.wavenumbers
        k2 = k1[:, None] ** 2 + k1[None, : half + 1] ** 2
        out = {}
        for s in orders:
            total = np.sum((1.0 + k2) ** s * power)
            out[s] = np.sqrt(total * self.grid.length**2 / n**4)
        return out


def _check_resolved_for_run(omega0, w_hat, mask):
    total = np.sum(np.abs(w_hat) ** 2)
    if total == 0:
        return
    removed = np.sum(np.abs(w_hat[~mask]) ** 2)
    if np.sqrt(removed / total) > 1e-8:
        raise UnresolvedFieldError(
            "initial data carries more than 1e-8 of its energy above the "
            "dealiasing cutoff; refine the grid or smooth the data"
        )


def rhs(omega: RealField, alpha: float, config: SolverConfig, sign: float = 1.0) -> RealField:
    """Tendency ``-dealias(u . grad w)``; mean-zero is asserted on the output."""
    require_mean_zero(omega, "transport tendency")
    ws = _Spectral(omega.grid, alpha, config.dealias)
    w_hat = ws.forward(omega.values)
    a = ws.advection_hat(w_hat)
    out = ws.inverse(-sign * a)
    if not np.all(np.isfinite(out)):
        raise BlowUpError(t=0.0, step=0)
    scale = max(1.0, float(np.max(np.abs(out))))
    assert abs(out.mean()) <= 1e-12 * scale
    return RealField(omega.grid, out)


def cfl_dt(state: SolverState, config: SolverConfig) -> float:
    """``cfl * dx / max(|u|_inf, 1e-12)``, capped at the remaining time."""
    ws = _Spectral(state.omega.grid, config.alpha, config.dealias)
    u1, u2 = ws.velocity(ws.forward(state.omega.values))
    umax = max(float(np.max(np.hypot(u1, u2))), _UMAX_FLOOR)
    dt = config.cfl * state.omega.grid.dx / umax
    return min(dt, config.t_end - state.t)


def step_rk4(state: SolverState, config: SolverConfig) -> SolverState:
    """Advance one RK4 step (CFL step size unless ``fixed_dt`` is set)."""
    ws = _Spectral(state.omega.grid, config.alpha, config.dealias)
    dt = config.fixed_dt if config.fixed_dt is not None else cfl_dt(state, config)
    w_hat = ws.forward(state.omega.values)
    w_new = ws.rk4(w_hat, dt)
    vals = ws.inverse(w_new)
    if not np.all(np.isfinite(vals)):
        raise BlowUpError(state.t + dt, state.step_count + 1)
    return SolverState(state.t + dt, RealField(state.omega.grid, vals),
                       state.step_count + 1, dt)


def _event_times(config: SolverConfig):
    events = set()
    if config.snapshot_every:
        k = 1
        while k * config.snapshot_every < config.t_end - 1e-12:
            events.add(round(k * config.snapshot_every, 12))
            k += 1
    for t in config.capture_times:
        if 0.0 < t <= config.t_end + 1e-12:
            events.add(float(t))
    events.add(config.t_end)
    return sorted(events)


def run(config: SolverConfig, omega0: RealField):
    """Integrate to ``t_end``; returns ``(Trajectory, Diagnostics)``.

    Snapshots are captured at multiples of ``snapshot_every`` and at every
    entry of ``capture_times`` (steps land on these instants exactly).  On
    blow-up the partial diagnostics are attached to the raised error.
    """
    grid = omega0.grid
    if grid.n != config.n or abs(grid.length - config.length) > 1e-12:
        raise ConfigurationError("initial data grid does not match the configuration")
    require_mean_zero(omega0, "initial data")
    ws = _Spectral(grid, config.alpha, config.dealias)
    w_hat = ws.forward(omega0.values)
    _check_resolved_for_run(omega0, w_hat, ws.mask)
    w_hat = ws.project(w_hat)

    if config.filter_strength > 0:
        half = grid.n // 2
        k1 = grid.wavenumbers
        kmag = np.hypot(k1[:, None], k1[None, : half + 1])
        filt_profile = (kmag / grid.nyquist) ** config.filter_order
    else:
        filt_profile = None

    diag = Diagnostics(config.sobolev_orders)
    events = _event_times(config)
    captured_times, captured_states = [], []
    capture_wanted = set(round(t, 12) for t in config.capture_times)

    def record(t, w_hat):
        vals = ws.inverse(w_hat)
        u1, u2 = ws.velocity(w_hat)
        umax = float(np.max(np.hypot(u1, u2)))
        divmax = ws.measured_divergence_max(u1, u2)
        diag.append(t, vals, ws.hat_norms(w_hat, config.sobolev_orders),
                    umax, divmax, grid.cell_area)
        return vals, umax

    t = 0.0
    step = 0
    vals, umax = record(t, w_hat)
    if 0.0 in capture_wanted:
        captured_times.append(0.0)
        captured_states.append(RealField(grid, vals.copy()))
    try:
        for t_next in events:
            while t < t_next - 1e-12:
                dt = config.fixed_dt if config.fixed_dt is not None else \
                    config.cfl * grid.dx / max(umax, _UMAX_FLOOR)
                dt = min(dt, t_next - t)
                w_hat = ws.rk4(w_hat, dt)
                if filt_profile is not None:
                    w_hat = w_hat * np.exp(-config.filter_strength * dt * filt_profile)
                t += dt
                step += 1
                if not np.all(np.isfinite(w_hat)):
                    raise BlowUpError(t, step)
                if step % config.record_every == 0 or t >= t_next - 1e-12:
                    vals, umax = record(t, w_hat)
                else:
                    if config.fixed_dt is None:
                        u1, u2 = ws.velocity(w_hat)
                        umax = float(np.max(np.hypot(u1, u2)))
                    vals = None
            if vals is None:
                vals, umax = record(t, w_hat)
            key = round(t_next, 12)
            if key in capture_wanted or (
                config.snapshot_every
                and abs(t_next / config.snapshot_every - round(t_next / config.snapshot_every)) < 1e-9
            ) or t_next == events[-1]:
                captured_times.append(t)
                captured_states.append(RealField(grid, vals.copy()))
    except BlowUpError as err:
        err.diagnostics = diag
        raise

    final = SolverState(t, RealField(grid, vals), step, dt if step else 0.0)
    return Trajectory(captured_times, captured_states, final), diag


# -- GSF1 snapshot persistence ------------------------------------------------

def save_snapshot(state: SolverState, path, alpha: float) -> None:
    """Write the GSF1 layout: magic, one JSON header line, raw f64le payload."""
    grid = state.omega.grid
    header = {
        "n": grid.n,
        "length": grid.length,
        "alpha": alpha,
        "t": state.t,
        "field": "omega",
        "dtype": "f64le",
        "order": "row-major",
    }
    with open(path, "wb") as fh:
        fh.write(_GSF1_MAGIC)
        fh.write(json.dumps(header).encode("utf-8"))
        fh.write(b"\n")
        fh.write(np.ascontiguousarray(state.omega.values, dtype="<f8").tobytes())


def load_snapshot(path) -> Snapshot:
    with open(path, "rb") as fh:
        magic = fh.read(len(_GSF1_MAGIC))
        if magic != _GSF1_MAGIC:
            raise SnapshotFormatError("not a GSF1 file")
        header_bytes = bytearray()
        while True:
            b = fh.read(1)
            if not b:
                raise SnapshotFormatError("header parse failure: unterminated header")
            if b == b"\n":
                break
            header_bytes.extend(b)
        try:
            header = json.loads(header_bytes.decode("utf-8"))
            n = int(header["n"])
            length = float(header["length"])
            alpha = float(header["alpha"])
            t = float(header["t"])
        except (ValueError, KeyError, UnicodeDecodeError) as exc:
            raise SnapshotFormatError(f"header parse failure: {exc}") from exc
        payload = fh.read()
    expected = 8 * n * n
    if len(payload) != expected:
        raise SnapshotFormatError(
            f"payload length mismatch: expected {expected} bytes, got {len(payload)}"
        )
    values = np.frombuffer(payload, dtype="<f8").reshape(n, n).copy()
    return Snapshot(n, length, alpha, t, RealField(make_grid(n, length), values))
