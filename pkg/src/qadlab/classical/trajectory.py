"""Trajectory container, the public integrate() front end, and Poincare
sections of the slow phase plane."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..constants import QuarticConstants, classical_constants
from . import integrator
from .drive import DriveParams
from .hamiltonian import ClassicalState, wrap_angle

__all__ = ["StepPolicy", "Trajectory", "IntegrationError", "integrate",
           "poincare_section", "theta1_crossing_times"]

_STATUS_MSG = {
    integrator.STATUS_DOMAIN: "oscillator action reached zero",
    integrator.STATUS_STEP_UNDERFLOW: "step size underflow",
    integrator.STATUS_MAX_STEPS: "step budget exhausted",
}


class IntegrationError(RuntimeError):
    def __init__(self, status: int, t: float, y: np.ndarray):
        self.status = status
        self.t = t
        self.y = y
        super().__init__(f"{_STATUS_MSG.get(status, 'failure')} at t={t:.6g}, "
                         f"state (I1, th1, I2, th2)={np.array2string(y, precision=6)}")


@dataclass(frozen=True)
class StepPolicy:
    """Integrator policy: adaptive 5(4) at `rtol`, or fixed-step when
    `fixed_step` > 0 (bit-reproducible)."""

    rtol: float = 1e-10
    fixed_step: float = 0.0
    sample_dt: float | None = None  # defaults to one sample per drive period
    max_steps: int = 4_000_000_000
    poincare_cap: int = 0
    crossing_cap: int = 0


@dataclass
class Trajectory:
    """Sampled history of one run.

    Angles are wrapped to (-pi, pi] in the stored samples; energy is the
    full time-dependent Hamiltonian at the sample instants.
    """

    params: DriveParams
    times: np.ndarray
    I1: np.ndarray
    theta1: np.ndarray
    I2: np.ndarray
    theta2: np.ndarray
    H: np.ndarray
    sample_dt: float
    final_state: ClassicalState
    n_steps: int
    poincare_points: np.ndarray | None = None  # columns t, theta1, I1, I2
    theta1_crossings: np.ndarray | None = None
    constants: QuarticConstants = field(default_factory=classical_constants)

    def block_means(self, block_exponent: int) -> np.ndarray:
        """Energy averaged over consecutive intervals of length 10^n * T."""
        block_len = 10 ** block_exponent * self.params.T
        per_block = int(round(block_len / self.sample_dt))
        if per_block < 1:
            raise ValueError("sampling stride exceeds the block length")
        n_blocks = len(self.H) // per_block
        if n_blocks == 0:
            return np.empty(0)
        return self.H[: n_blocks * per_block].reshape(n_blocks, per_block).mean(axis=1)

    def to_rows(self):
        for k in range(len(self.times)):
            yield (self.times[k], self.I1[k], self.theta1[k], self.I2[k],
                   self.theta2[k], self.H[k])


def integrate(state0: ClassicalState, params: DriveParams, t_end: float,
              step_policy: StepPolicy | None = None,
              constants: QuarticConstants | None = None) -> Trajectory:
    """Integrate Hamilton's equations from state0 for time t_end.

    t_end should be a multiple of the drive period so block averages line
    up; sampling happens at least once per period.

    Raises
    ------
    IntegrationError
        On domain failure (action reaching zero) or step-size underflow,
        carrying the failing time and state as diagnostics.
    """
    policy = step_policy or StepPolicy()
    consts = constants or classical_constants()
    sample_dt = policy.sample_dt if policy.sample_dt is not None else params.T
    if sample_dt > params.T:
        sample_dt = params.T

    y0 = state0.as_array()
    (status, n_samp, samples, n_poinc, poincare, n_cross, crossings,
     y_fin, t_fin, n_steps) = integrator.integrate_core(
        y0, state0.t, state0.t + t_end, sample_dt,
        consts.A, params.mu, params.f0, params.Omega1, params.Omega2,
        policy.rtol, policy.fixed_step, policy.max_steps,
        policy.poincare_cap, policy.crossing_cap)
    if status != integrator.STATUS_OK:
        raise IntegrationError(status, t_fin, y_fin)

    s = samples[:n_samp]
    pp = poincare[:n_poinc].copy() if policy.poincare_cap else None
    if pp is not None:
        pp[:, 1] = wrap_angle(pp[:, 1])
    return Trajectory(
        params=params,
        times=s[:, 0].copy(),
        I1=s[:, 1].copy(),
        theta1=np.asarray(wrap_angle(s[:, 2])),
        I2=s[:, 3].copy(),
        theta2=np.asarray(wrap_angle(s[:, 4])),
        H=s[:, 5].copy(),
        sample_dt=sample_dt,
        final_state=ClassicalState(I1=y_fin[0], theta1=float(wrap_angle(y_fin[1])),
                                   I2=y_fin[2], theta2=float(wrap_angle(y_fin[3])),
                                   t=t_fin),
        n_steps=n_steps,
        poincare_points=pp,
        theta1_crossings=crossings[:n_cross].copy() if policy.crossing_cap else None,
        constants=consts,
    )


def poincare_section(trajectory: Trajectory, I2_bins: np.ndarray) -> list[np.ndarray]:
    """Assign section points (theta2 = 0 mod 2pi crossings) to I2 slices.

    Returns one (n, 2) array of (theta1, I1) per bin; empty slices come
    back as empty arrays, not errors.  The trajectory must have been run
    with a nonzero poincare_cap.
    """
    if trajectory.poincare_points is None:
        raise ValueError("trajectory was integrated without section recording; "
                         "set StepPolicy.poincare_cap")
    pts = trajectory.poincare_points
    bins = np.asarray(I2_bins, dtype=float)
    out = []
    if len(pts) == 0:
        return [np.empty((0, 2)) for _ in bins]
    which = np.argmin(np.abs(pts[:, 3][:, None] - bins[None, :]), axis=1)
    for b in range(len(bins)):
        sel = pts[which == b]
        out.append(sel[:, 1:3].copy())
    return out


def theta1_crossing_times(trajectory: Trajectory) -> np.ndarray:
    if trajectory.theta1_crossings is None:
        raise ValueError("trajectory was integrated without crossing recording; "
                         "set StepPolicy.crossing_cap")
    return trajectory.theta1_crossings


def oscillation_frequency(trajectory: Trajectory) -> float:
    """Frequency of the slow-phase oscillation from theta1 = 0 crossing times.

    Two crossings per oscillation, so omega = 2 pi / (2 * mean interval).
    """
    tc = theta1_crossing_times(trajectory)
    if len(tc) < 3:
        raise ValueError(f"need at least 3 crossings, got {len(tc)}")
    mean_interval = float(np.mean(np.diff(tc)))
    return math.pi / mean_interval
