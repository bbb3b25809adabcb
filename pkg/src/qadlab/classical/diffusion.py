"""Diffusion-coefficient measurement from block-averaged energies, the
initial-phase scan, and the direct chaotic-layer width measurement."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..constants import QuarticConstants, classical_constants
from . import integrator
from .drive import DriveParams
from .hamiltonian import ClassicalState
from .trajectory import StepPolicy, Trajectory, integrate

__all__ = ["DiffusionEstimate", "measure_diffusion", "diffusion_from_block_means",
           "scan_initial_phase", "resonance_center_action", "separatrix_state",
           "LayerScanResult", "measure_layer_width", "mean_layer_period"]


@dataclass(frozen=True)
class DiffusionEstimate:
    """D_n from adjacent-block energy averages.

    value = mean((Delta H_bar)^2) / (10^n T); std_err is the standard
    error of that mean over the block differences.
    """

    value: float
    std_err: float
    n_blocks: int
    block_exponent: int


def diffusion_from_block_means(block_means: np.ndarray, block_len: float,
                               block_exponent: int) -> DiffusionEstimate:
    if len(block_means) < 5:
        raise ValueError(f"need at least 5 blocks, got {len(block_means)}")
    d = np.diff(block_means)
    sq = d * d
    value = float(np.mean(sq)) / block_len
    std_err = float(np.std(sq, ddof=1) / math.sqrt(len(sq))) / block_len
    return DiffusionEstimate(value=value, std_err=std_err,
                             n_blocks=len(block_means), block_exponent=block_exponent)


def measure_diffusion(trajectory: Trajectory, block_exponent: int) -> DiffusionEstimate:
    """Energy diffusion coefficient D_n over blocks of length 10^n T.

    The trajectory should cover at least 30 blocks; fewer than 5 is an
    error.
    """
    block_len = 10 ** block_exponent * trajectory.params.T
    means = trajectory.block_means(block_exponent)
    return diffusion_from_block_means(means, block_len, block_exponent)


def resonance_center_action(params: DriveParams,
                            constants: QuarticConstants | None = None) -> float:
    """I2 at the coupling-resonance center between the driving resonances:
    omega(I2) = (Omega1 + Omega2)/2, i.e. I2 = omega^3/(3 beta^4)."""
    c = constants or classical_constants()
    w = params.omega_mid
    return w ** 3 / (3.0 * c.beta ** 4)


def separatrix_state(params: DriveParams, theta1: float = -math.pi,
                     constants: QuarticConstants | None = None) -> ClassicalState:
    """Initial condition on the coupling-resonance separatrix: I1 = 0,
    theta2 = 0, I2 at the resonance center, theta1 = +-pi by default."""
    return ClassicalState(I1=0.0, theta1=theta1,
                          I2=resonance_center_action(params, constants), theta2=0.0)


def _h_block_means(h_samples: np.ndarray, samples_per_block: int) -> np.ndarray:
    n_blocks = len(h_samples) // samples_per_block
    return h_samples[: n_blocks * samples_per_block].reshape(
        n_blocks, samples_per_block).mean(axis=1)


def _scan(y0s: np.ndarray, params: DriveParams, t_end: float,
          policy: StepPolicy, constants: QuarticConstants,
          exponents: tuple[int, int]) -> list[dict]:
    """Run a batch of trajectories and estimate D_n for both exponents."""
    sample_dt = policy.sample_dt if policy.sample_dt is not None else params.T
    status, h = integrator.batch_h_samples(
        np.ascontiguousarray(y0s), t_end, sample_dt,
        constants.A, params.mu, params.f0, params.Omega1, params.Omega2,
        policy.rtol, policy.fixed_step, policy.max_steps)
    out = []
    for j in range(len(y0s)):
        if status[j] != integrator.STATUS_OK:
            out.append({"status": int(status[j])})
            continue
        rec = {"status": 0}
        for n in exponents:
            block_len = 10 ** n * params.T
            per_block = int(round(block_len / sample_dt))
            est = diffusion_from_block_means(_h_block_means(h[j], per_block),
                                             block_len, n)
            rec[f"D{n}"] = est.value
            rec[f"D{n}_err"] = est.std_err
        out.append(rec)
    return out


def scan_initial_phase(params: DriveParams, theta1_grid: np.ndarray,
                       t_end: float | None = None,
                       step_policy: StepPolicy | None = None,
                       exponents: tuple[int, int] = (2, 3),
                       constants: QuarticConstants | None = None) -> list[dict]:
    """D_n versus the initial slow phase, from I1 = theta2 = 0 and I2 at
    the resonance center.

    Each grid point yields a dict with theta1, D<n>, D<n>_err for both
    block exponents.  Default run length covers 30 blocks of the larger
    exponent.
    """
    consts = constants or classical_constants()
    policy = step_policy or StepPolicy()
    grid = np.asarray(theta1_grid, dtype=float)
    if np.any(grid <= -math.pi) or np.any(grid > math.pi):
        raise ValueError("theta1 grid must lie in (-pi, pi]")
    if t_end is None:
        t_end = 30 * 10 ** max(exponents) * params.T
    i2 = resonance_center_action(params, consts)
    y0s = np.zeros((len(grid), 4))
    y0s[:, 0] = 0.0
    y0s[:, 1] = grid
    y0s[:, 2] = i2
    y0s[:, 3] = 0.0
    recs = _scan(y0s, params, t_end, policy, consts, exponents)
    for th, rec in zip(grid, recs):
        rec["theta1"] = float(th)
    return recs


@dataclass
class LayerScanResult:
    """Outcome of the direct layer-width measurement at theta1 = pi.

    half_width_energy is the half-width of the chaotic band in pendulum
    energy units; relative_width is that divided by the resonance depth
    V = mu a^2 / 2.
    """

    pendulum_energies: np.ndarray  # probe offsets E - V
    chaotic: np.ndarray            # bool per probe
    half_width_energy: float
    V: float
    records: list[dict]

    @property
    def relative_width(self) -> float:
        return self.half_width_energy / self.V


def measure_layer_width(params: DriveParams, n_probes: int = 10,
                        rel_energy_range: tuple[float, float] = (3e-3, 1.0),
                        t_end: float | None = None,
                        step_policy: StepPolicy | None = None,
                        exponents: tuple[int, int] = (2, 3),
                        ratio_band: tuple[float, float] = (1.0 / 3.0, 3.0),
                        constants: QuarticConstants | None = None) -> LayerScanResult:
    """Chaotic-layer half-width from a scan of initial I1 at theta1 = pi.

    Probes start on the rotation side of the separatrix at pendulum
    energies E - V = V * logspace over rel_energy_range; a probe is
    flagged chaotic when its D_2 and D_3 agree within ratio_band (true
    diffusion) rather than collapsing with block length (regular motion).
    The half-width is the largest flagged offset.
    """
    consts = constants or classical_constants()
    policy = step_policy or StepPolicy()
    if params.mu <= 0:
        raise ValueError("layer width needs mu > 0")
    if t_end is None:
        t_end = 30 * 10 ** max(exponents) * params.T
    i2 = resonance_center_action(params, consts)
    a = (4.0 * consts.A) ** 0.25 * i2 ** (1.0 / 3.0)
    V = 0.5 * params.mu * a * a
    B = (8.0 / 9.0) * consts.A * i2 ** (-2.0 / 3.0)
    offsets = V * np.logspace(math.log10(rel_energy_range[0]),
                              math.log10(rel_energy_range[1]), n_probes)
    i1s = np.sqrt(2.0 * offsets / B)
    y0s = np.zeros((n_probes, 4))
    y0s[:, 0] = i1s
    y0s[:, 1] = math.pi
    y0s[:, 2] = i2
    y0s[:, 3] = 0.0
    recs = _scan(y0s, params, t_end, policy, consts, exponents)
    lo, hi = ratio_band
    n_lo, n_hi = min(exponents), max(exponents)
    chaotic = np.zeros(n_probes, dtype=bool)
    for j, rec in enumerate(recs):
        rec["pendulum_energy_offset"] = float(offsets[j])
        rec["I1"] = float(i1s[j])
        if rec["status"] != 0:
            continue
        d_lo, d_hi = rec[f"D{n_lo}"], rec[f"D{n_hi}"]
        if d_hi > 0 and lo <= d_lo / d_hi <= hi:
            chaotic[j] = True
        rec["chaotic"] = bool(chaotic[j])
    half_width = float(offsets[chaotic].max()) if chaotic.any() else 0.0
    return LayerScanResult(pendulum_energies=offsets, chaotic=chaotic,
                           half_width_energy=half_width, V=V, records=recs)


def mean_layer_period(params: DriveParams, t_end: float | None = None,
                      step_policy: StepPolicy | None = None,
                      constants: QuarticConstants | None = None) -> float:
    """Mean interval between theta1 = 0 crossings for a separatrix-layer
    trajectory; the time scale entering the analytic diffusion estimate."""
    consts = constants or classical_constants()
    if t_end is None:
        t_end = 2000 * params.T
    policy = step_policy or StepPolicy()
    cap = int(t_end * params.mu ** 0.5) + 64
    policy = StepPolicy(rtol=policy.rtol, fixed_step=policy.fixed_step,
                        sample_dt=policy.sample_dt, max_steps=policy.max_steps,
                        poincare_cap=policy.poincare_cap, crossing_cap=cap)
    traj = integrate(separatrix_state(params, constants=consts), params, t_end,
                     policy, consts)
    tc = traj.theta1_crossings
    if tc is None or len(tc) < 3:
        raise ValueError("trajectory produced too few slow-phase crossings")
    return float(np.mean(np.diff(tc)))
