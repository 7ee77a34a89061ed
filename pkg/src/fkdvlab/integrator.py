"""Time integration: integrating-factor RK4 with exact linear propagation.

The linear symbol of every registry equation is purely imaginary, so its
stiffness is oscillatory rather than dissipative; conjugating by the exact
multiplier exponential removes it entirely and classical RK4 handles the
slow nonlinear dynamics.  A zero-nonlinearity step is exactly
u_hat(t+dt) = exp(dt*L) u_hat(t), unitary to round-off.

Blow-up is a first-class halt reason (the shock study consumes it): a step
that produces non-finite values is rejected and the last finite state is
preserved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .equations import EquationSpec, nonlinearity
from .errors import ConfigurationError
from .spectral import SpectralField, hermitian_defect, hermitize, inverse_transform

#: Guard against division by zero in the CFL rule for the zero field.
CFL_FLOOR = 1e-12

#: Overflow guard: amplitudes beyond this are treated as blow-up even
#: before they reach inf.
BLOWUP_AMPLITUDE = 1e12

#: Default geometric snapshot ratio; eight nodes per octave keeps the
#: log-time quadrature of the phase correction second-order accurate.
SNAPSHOT_RATIO = 2.0 ** 0.125


@dataclass(frozen=True)
class SolverConfig:
    dt_max: float = 0.1
    cfl_coefficient: float = 0.5
    t_end: float = 1.0
    snapshot_times: tuple = ()
    dealias_degree: int | None = None   # informational; set by the equation

    def __post_init__(self):
        if self.dt_max <= 0:
            raise ConfigurationError(f"dt_max must be positive, got {self.dt_max}")
        if not (0.0 < self.cfl_coefficient <= 1.0):
            raise ConfigurationError(
                f"cfl_coefficient must lie in (0, 1], got {self.cfl_coefficient}")
        if self.t_end < 0:
            raise ConfigurationError(f"t_end must be nonnegative, got {self.t_end}")
        times = tuple(float(t) for t in self.snapshot_times)
        if any(t < 0 or t > self.t_end + 1e-12 for t in times):
            raise ConfigurationError("snapshot times must lie within [0, t_end]")
        if list(times) != sorted(times):
            raise ConfigurationError("snapshot times must be sorted")
        object.__setattr__(self, "snapshot_times", times)


@dataclass
class SolverState:
    t: float
    u_hat: SpectralField
    hermitian_defect_max: float = 0.0


@dataclass(frozen=True)
class HaltReason:
    kind: str          # "completed" | "blowup" | "nan"
    t: float

    @property
    def completed(self) -> bool:
        return self.kind == "completed"


def geometric_snapshots(t_end: float, t_start: float = 1.0,
                        ratio: float = SNAPSHOT_RATIO,
                        include_zero: bool = True) -> tuple:
    """t_start * ratio^j up to t_end, plus the endpoints."""
    times = [0.0] if include_zero and t_end > 0 else []
    t = t_start
    while t < t_end * (1.0 - 1e-12):
        times.append(t)
        t *= ratio
    times.append(t_end)
    return tuple(sorted(set(times)))


def cfl_dt(state: SolverState, eq: EquationSpec, config: SolverConfig) -> float:
    """dt = min(dt_max, cfl * dx / max(floor, max|u|^p)).

    The exactly-propagated linear part contributes no restriction; only the
    nonlinear transport speed |u|^p does.
    """
    u = inverse_transform(state.u_hat)
    speed = float(np.max(np.abs(u))) ** eq.nonlinearity_degree
    dx = state.u_hat.grid.dx
    return min(config.dt_max, config.cfl_coefficient * dx / max(CFL_FLOOR, speed))


def step_ifrk4(state: SolverState, dt: float, eq: EquationSpec) -> SolverState:
    """One integrating-factor RK4 step of u_t = L u + N(u).

    Stage values live in the original (unconjugated) spectral variable; the
    conjugation enters only through the exact exponentials exp(theta*dt*L).
    """
    if dt == 0.0:
        return state
    grid = state.u_hat.grid
    lin = eq.linear_values(grid)
    e_full = np.exp(dt * lin)
    e_half = np.exp(0.5 * dt * lin)

    v = state.u_hat
    k1 = nonlinearity(eq, v).coeffs
    k2 = nonlinearity(eq, SpectralField(grid, e_half * (v.coeffs + 0.5 * dt * k1))).coeffs
    k3 = nonlinearity(eq, SpectralField(grid, e_half * v.coeffs + 0.5 * dt * k2)).coeffs
    k4 = nonlinearity(eq, SpectralField(grid, e_full * v.coeffs + dt * e_half * k3)).coeffs

    new_coeffs = e_full * v.coeffs + (dt / 6.0) * (
        e_full * k1 + 2.0 * e_half * (k2 + k3) + k4)
    raw = SpectralField(grid, new_coeffs)
    defect = hermitian_defect(raw)
    return SolverState(state.t + dt, hermitize(raw),
                       max(state.hermitian_defect_max, defect))


def _state_bad(state: SolverState) -> str | None:
    c = state.u_hat.coeffs
    if np.any(np.isnan(c)):
        return "nan"
    if np.any(np.isinf(c)) or np.max(np.abs(c)) > BLOWUP_AMPLITUDE:
        return "blowup"
    return None


def run_simulation(u0: SpectralField, eq: EquationSpec, config: SolverConfig,
                   observer: Callable[[SolverState], None] | None = None,
                   ) -> tuple[SolverState, HaltReason]:
    """Advance from t=0 to t_end, landing exactly on every snapshot time.

    Each inter-snapshot segment is covered by equal substeps planned from the
    CFL bound (replanned if the bound tightens mid-segment), so the elapsed
    time seen by the exact linear exponentials matches the snapshot label to
    round-off.  The observer is invoked at each scheduled snapshot (including
    t=0 when scheduled).  Returns the final (or last finite) state and a halt
    reason: completed, blowup(t) or nan(t) -- never a silent failure.
    """
    state = SolverState(0.0, hermitize(u0))
    snapshot_set = set(config.snapshot_times)
    events = sorted(snapshot_set | {config.t_end})
    if observer is not None and events and abs(events[0]) < 1e-14:
        observer(state)
    events = [t for t in events if t > 1e-14]

    for target in events:
        seg_start = state.t
        seg_len = target - seg_start
        done = 0
        n_steps = max(1, int(np.ceil(seg_len / cfl_dt(state, eq, config) - 1e-12)))
        dt = seg_len / n_steps
        while done < n_steps:
            allowed = cfl_dt(state, eq, config)
            if dt > allowed * (1.0 + 1e-9):
                remaining = seg_len - done * dt
                extra = max(1, int(np.ceil(remaining / allowed - 1e-12)))
                seg_start, seg_len, done, n_steps = state.t, remaining, 0, extra
                dt = seg_len / n_steps
            new_state = step_ifrk4(state, dt, eq)
            done += 1
            new_state.t = seg_start + done * dt
            bad = _state_bad(new_state)
            if bad is not None:
                return state, HaltReason(bad, new_state.t)
            state = new_state
        state.t = target
        if observer is not None and target in snapshot_set:
            observer(state)
    return state, HaltReason("completed", state.t)
