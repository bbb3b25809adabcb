"""Resonance widths, the overlap criterion, and the analytic estimate of
the diffusion rate along the coupling resonance."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..constants import QuarticConstants, classical_constants
from .drive import DriveParams

__all__ = ["ResonanceWidths", "resonance_widths", "check_overlap",
           "theoretical_diffusion", "chaotic_layer_half_width"]


@dataclass(frozen=True)
class ResonanceWidths:
    """Frequency scales of the three first-order resonances.

    omega_tilde : small-oscillation frequency of the slow phase,
        beta * sqrt(mu).
    delta_omega : half-width of the coupling resonance, beta * sqrt(2 mu).
    delta_omega_drive : half-width of each driving resonance,
        beta * sqrt(2 f0 / a).
    lam : adiabaticity parameter delta_Omega / (2 omega_tilde).
    """

    omega_tilde: float
    delta_omega: float
    delta_omega_drive: float
    lam: float


def resonance_widths(params: DriveParams, a: float,
                     constants: QuarticConstants | None = None) -> ResonanceWidths:
    """Width set at drive amplitude a; requires mu > 0 and a > 0."""
    if params.mu <= 0 or a <= 0:
        raise ValueError("resonance widths need mu > 0 and amplitude a > 0")
    beta = (constants or classical_constants()).beta
    wt = beta * math.sqrt(params.mu)
    return ResonanceWidths(
        omega_tilde=wt,
        delta_omega=beta * math.sqrt(2.0 * params.mu),
        delta_omega_drive=beta * math.sqrt(2.0 * params.f0 / a),
        lam=params.delta_Omega / (2.0 * wt),
    )


def check_overlap(params: DriveParams, a: float,
                  constants: QuarticConstants | None = None) -> tuple[bool, float]:
    """First-order resonance overlap test.

    margin = delta_Omega/(2 beta) - [sqrt(2 f0/a) + sqrt(mu)]; the three
    resonances overlap (global chaos, no slow diffusion regime) when the
    margin is <= 0.
    """
    beta = (constants or classical_constants()).beta
    margin = (params.delta_Omega / (2.0 * beta)
              - (math.sqrt(2.0 * params.f0 / a) + math.sqrt(params.mu)))
    return margin <= 0.0, margin


def chaotic_layer_half_width(lam: float, nu: float) -> float:
    """Half-width of the destroyed-separatrix layer, w_s = 4 pi nu lam^2
    exp(-pi lam / 2).  nu is an undetermined O(1) layer prefactor supplied
    by the caller; results are meaningful relative to it."""
    return 4.0 * math.pi * nu * lam * lam * math.exp(-math.pi * lam / 2.0)


def theoretical_diffusion(params: DriveParams, a: float, nu: float,
                          T_a: float,
                          constants: QuarticConstants | None = None) -> tuple[float, float]:
    """Analytic action-diffusion estimate along the coupling resonance.

    D_I = (a f0 / (T_a omega_tilde)) * w_s^2 / lam^4 with w_s the layer
    half-width.  T_a is the mean period of motion inside the layer,
    measured from a trajectory (see diffusion.mean_layer_period); it is
    not predicted here.

    Returns (D_I, w_s).
    """
    w = resonance_widths(params, a, constants)
    ws = chaotic_layer_half_width(w.lam, nu)
    d_i = (a * params.f0 / (T_a * w.omega_tilde)) * ws * ws / w.lam ** 4
    return d_i, ws
