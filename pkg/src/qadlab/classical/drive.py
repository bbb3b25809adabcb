"""Two-frequency drive parameters and the coupled-oscillator run setup."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["DriveParams", "paper_drive"]

_COMMENSURATE_TOL = 1e-12


@dataclass(frozen=True)
class DriveParams:
    """Drive f(t) = f0 (cos Omega1 t + cos Omega2 t) plus the xy coupling mu.

    The frequencies must be commensurate: m*Omega1 = n*Omega2 for small
    integers, giving the common period T = 2 pi n / Omega1 = 2 pi m / Omega2.
    Both cosines start at phase zero at t = 0.
    """

    f0: float
    mu: float
    Omega1: float
    Omega2: float
    n_harmonic: int
    m_harmonic: int

    def __post_init__(self):
        if self.f0 < 0 or self.mu < 0:
            raise ValueError("f0 and mu must be nonnegative")
        if self.Omega1 <= 0 or self.Omega2 <= 0:
            raise ValueError("drive frequencies must be positive")
        t1 = 2.0 * math.pi * self.n_harmonic / self.Omega1
        t2 = 2.0 * math.pi * self.m_harmonic / self.Omega2
        if abs(t1 - t2) > _COMMENSURATE_TOL * max(t1, t2):
            raise ValueError(
                f"frequencies not commensurate: 2*pi*{self.n_harmonic}/Omega1 = {t1!r} "
                f"but 2*pi*{self.m_harmonic}/Omega2 = {t2!r}")

    @classmethod
    def from_frequencies(cls, f0: float, mu: float, Omega1: float, Omega2: float,
                         max_harmonic: int = 64) -> "DriveParams":
        """Infer the smallest (n, m) with m Omega1 = n Omega2 and validate."""
        frac = Fraction(Omega2 / Omega1).limit_denominator(max_harmonic)
        return cls(f0=f0, mu=mu, Omega1=Omega1, Omega2=Omega2,
                   n_harmonic=frac.denominator, m_harmonic=frac.numerator)

    @property
    def T(self) -> float:
        """Common drive period."""
        return 2.0 * math.pi * self.n_harmonic / self.Omega1

    @property
    def delta_Omega(self) -> float:
        return abs(self.Omega1 - self.Omega2)

    @property
    def omega_mid(self) -> float:
        """Midpoint frequency (Omega1 + Omega2)/2, the coupling-resonance target."""
        return 0.5 * (self.Omega1 + self.Omega2)


def paper_drive(mu: float, f0: float | None = None, period: float = 150.0,
                n_harmonic: int = 5, m_harmonic: int = 6) -> DriveParams:
    """Default drive: Omega1 = 2 pi n/T, Omega2 = 2 pi m/T with T = 150.

    These round to Omega1 = 0.2094, Omega2 = 0.2513.  If f0 is omitted the
    standard ratio f0/mu = 0.01 is applied.
    """
    if f0 is None:
        f0 = 0.01 * mu
    return DriveParams(f0=f0, mu=mu,
                       Omega1=2.0 * math.pi * n_harmonic / period,
                       Omega2=2.0 * math.pi * m_harmonic / period,
                       n_harmonic=n_harmonic, m_harmonic=m_harmonic)
