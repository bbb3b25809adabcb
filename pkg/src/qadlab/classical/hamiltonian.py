"""Hamiltonian of the driven coupled quartic oscillators in slow/fast
resonance variables (I1, theta1, I2, theta2).

The first-harmonic representation x ~ a(I_x) cos(Theta_x) gives

    H = A (I_x^{4/3} + I_y^{4/3})
        - (mu/2) a(I_x) a(I_y) (cos theta1 + cos theta2)
        - a(I_x) cos((theta1 + theta2)/2) f(t)

with I_x = I2 + I1, I_y = I2 - I1, theta1/theta2 the slow/fast phases.
Derivatives are exact partials (Hamilton's equations), no differencing.
"""

from __future__ import annotations

import math

import numpy as np

from ..constants import QuarticConstants
from .drive import DriveParams

__all__ = ["ClassicalState", "hamiltonian_and_derivatives", "energy"]

from dataclasses import dataclass


def wrap_angle(theta):
    """Wrap to (-pi, pi]."""
    w = np.mod(-np.asarray(theta) + math.pi, 2.0 * math.pi)
    return -(w - math.pi)


@dataclass(frozen=True)
class ClassicalState:
    """Phase point in resonance variables at time t.

    Validity requires I2 > 0 and I2 > |I1| so both oscillator actions
    I_x = I2 + I1 and I_y = I2 - I1 stay positive.
    """

    I1: float
    theta1: float
    I2: float
    theta2: float
    t: float = 0.0

    def __post_init__(self):
        if not (self.I2 > 0 and self.I2 > abs(self.I1)):
            raise ValueError(
                f"invalid resonance variables: need I2 > |I1| >= 0, got I1={self.I1}, I2={self.I2}")

    def as_array(self) -> np.ndarray:
        return np.array([self.I1, self.theta1, self.I2, self.theta2])


def _force(params: DriveParams, t: float) -> float:
    return params.f0 * (math.cos(params.Omega1 * t) + math.cos(params.Omega2 * t))


def energy(y, params: DriveParams, constants: QuarticConstants, t: float) -> float:
    """Total H at phase point y = (I1, theta1, I2, theta2)."""
    I1, th1, I2, th2 = y
    A = constants.A
    Ix, Iy = I2 + I1, I2 - I1
    if Ix <= 0 or Iy <= 0:
        raise ValueError(f"oscillator action nonpositive: I_x={Ix}, I_y={Iy}")
    c = (4.0 * A) ** 0.25
    ax, ay = c * Ix ** (1.0 / 3.0), c * Iy ** (1.0 / 3.0)
    return (A * (Ix ** (4.0 / 3.0) + Iy ** (4.0 / 3.0))
            - 0.5 * params.mu * ax * ay * (math.cos(th1) + math.cos(th2))
            - ax * math.cos(0.5 * (th1 + th2)) * _force(params, t))


def hamiltonian_and_derivatives(y, params: DriveParams, constants: QuarticConstants,
                                t: float) -> tuple[float, np.ndarray]:
    """H and the Hamiltonian vector field (dI1, dtheta1, dI2, dtheta2)/dt.

    Raises
    ------
    ValueError
        If either oscillator action is nonpositive (the amplitude has an
        infinite derivative there).
    """
    I1, th1, I2, th2 = y
    A = constants.A
    Ix, Iy = I2 + I1, I2 - I1
    if Ix <= 0 or Iy <= 0:
        raise ValueError(f"oscillator action nonpositive: I_x={Ix}, I_y={Iy}")
    c = (4.0 * A) ** 0.25
    cbx, cby = Ix ** (1.0 / 3.0), Iy ** (1.0 / 3.0)
    ax, ay = c * cbx, c * cby
    dax, day = ax / (3.0 * Ix), ay / (3.0 * Iy)
    wx, wy = (4.0 * A / 3.0) * cbx, (4.0 * A / 3.0) * cby
    f = _force(params, t)
    thx = 0.5 * (th1 + th2)
    cos1, cos2 = math.cos(th1), math.cos(th2)
    ccc = 0.5 * (cos1 + cos2)  # cos(Theta_x) cos(Theta_y)
    cthx, sthx = math.cos(thx), math.sin(thx)

    h = (A * (Ix ** (4.0 / 3.0) + Iy ** (4.0 / 3.0))
         - params.mu * ax * ay * ccc - ax * cthx * f)

    dh_dth1 = 0.5 * params.mu * ax * ay * math.sin(th1) + 0.5 * ax * sthx * f
    dh_dth2 = 0.5 * params.mu * ax * ay * math.sin(th2) + 0.5 * ax * sthx * f
    dh_dI1 = wx - wy - params.mu * (dax * ay - ax * day) * ccc - dax * cthx * f
    dh_dI2 = wx + wy - params.mu * (dax * ay + ax * day) * ccc - dax * cthx * f

    return h, np.array([-dh_dth1, dh_dI1, -dh_dth2, dh_dI2])
