"""Numba-compiled Dormand-Prince 5(4) integration of the resonance-variable
equations of motion.

Angles are kept unwrapped internally (wrapping only at output).  Error
control is per step against fixed characteristic scales (actions against
the initial total action, angles against 2 pi); a fixed-step mode with the
same tableau provides bit-reproducible runs.
"""

from __future__ import annotations

import math

import numba
import numpy as np

STATUS_OK = 0
STATUS_DOMAIN = 1      # oscillator action hit zero
STATUS_STEP_UNDERFLOW = 2
STATUS_MAX_STEPS = 3


@numba.njit(cache=True, inline="always")
def _rhs(t, y, out, A, mu, f0, W1, W2):
    """Hamiltonian vector field; returns H or NaN on domain failure."""
    I1 = y[0]
    th1 = y[1]
    I2 = y[2]
    th2 = y[3]
    Ix = I2 + I1
    Iy = I2 - I1
    if Ix <= 0.0 or Iy <= 0.0:
        return np.nan
    c = (4.0 * A) ** 0.25
    cbx = Ix ** (1.0 / 3.0)
    cby = Iy ** (1.0 / 3.0)
    ax = c * cbx
    ay = c * cby
    dax = ax / (3.0 * Ix)
    day = ay / (3.0 * Iy)
    wx = (4.0 * A / 3.0) * cbx
    wy = (4.0 * A / 3.0) * cby
    f = f0 * (math.cos(W1 * t) + math.cos(W2 * t))
    thx = 0.5 * (th1 + th2)
    ccc = 0.5 * (math.cos(th1) + math.cos(th2))
    cthx = math.cos(thx)
    sthx = math.sin(thx)
    h = A * (Ix * cbx + Iy * cby) - mu * ax * ay * ccc - ax * cthx * f
    maa = mu * ax * ay
    out[0] = -(0.5 * maa * math.sin(th1) + 0.5 * ax * sthx * f)
    out[1] = wx - wy - mu * (dax * ay - ax * day) * ccc - dax * cthx * f
    out[2] = -(0.5 * maa * math.sin(th2) + 0.5 * ax * sthx * f)
    out[3] = wx + wy - mu * (dax * ay + ax * day) * ccc - dax * cthx * f
    return h


# Dormand-Prince 5(4) tableau
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_A71, _A73, _A74, _A75, _A76 = (35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0,
                                -2187.0 / 6784.0, 11.0 / 84.0)
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


@numba.njit(cache=True)
def _dopri_step(t, y, h, k1, A, mu, f0, W1, W2, ynew, k7, err):
    """One 5(4) step using precomputed k1; fills ynew, k7 (FSAL), err.

    Returns False on domain failure inside a stage.
    """
    y2 = np.empty(4)
    k2 = np.empty(4)
    k3 = np.empty(4)
    k4 = np.empty(4)
    k5 = np.empty(4)
    k6 = np.empty(4)
    for i in range(4):
        y2[i] = y[i] + h * _A21 * k1[i]
    if np.isnan(_rhs(t + 0.2 * h, y2, k2, A, mu, f0, W1, W2)):
        return False
    for i in range(4):
        y2[i] = y[i] + h * (_A31 * k1[i] + _A32 * k2[i])
    if np.isnan(_rhs(t + 0.3 * h, y2, k3, A, mu, f0, W1, W2)):
        return False
    for i in range(4):
        y2[i] = y[i] + h * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i])
    if np.isnan(_rhs(t + 0.8 * h, y2, k4, A, mu, f0, W1, W2)):
        return False
    for i in range(4):
        y2[i] = y[i] + h * (_A51 * k1[i] + _A52 * k2[i] + _A53 * k3[i] + _A54 * k4[i])
    if np.isnan(_rhs(t + (8.0 / 9.0) * h, y2, k5, A, mu, f0, W1, W2)):
        return False
    for i in range(4):
        y2[i] = y[i] + h * (_A61 * k1[i] + _A62 * k2[i] + _A63 * k3[i]
                            + _A64 * k4[i] + _A65 * k5[i])
    if np.isnan(_rhs(t + h, y2, k6, A, mu, f0, W1, W2)):
        return False
    for i in range(4):
        ynew[i] = y[i] + h * (_A71 * k1[i] + _A73 * k3[i] + _A74 * k4[i]
                              + _A75 * k5[i] + _A76 * k6[i])
    if np.isnan(_rhs(t + h, ynew, k7, A, mu, f0, W1, W2)):
        return False
    for i in range(4):
        err[i] = h * (_E1 * k1[i] + _E3 * k3[i] + _E4 * k4[i]
                      + _E5 * k5[i] + _E6 * k6[i] + _E7 * k7[i])
    return True


@numba.njit(cache=True)
def integrate_core(y0, t0, t_end, sample_dt, A, mu, f0, W1, W2,
                   rtol, fixed_h, max_steps,
                   poincare_cap, crossing_cap):
    """Integrate from t0 to t_end sampling every sample_dt.

    Returns (status, n_samples, samples[:, 6], n_poincare, poincare[:, 4],
    n_crossings, crossings[:], final_y, final_t, n_steps).

    samples columns: t, I1, theta1, I2, theta2, H (angles unwrapped here).
    poincare columns: t, theta1, I1, I2 at crossings of theta2 = 0 mod 2pi.
    crossings: times of theta1 = 0 crossings (wrapped branch-safe).
    """
    n_samples_max = int((t_end - t0) / sample_dt + 1.5)
    samples = np.empty((n_samples_max, 6))
    poincare = np.empty((max(poincare_cap, 1), 4))
    crossings = np.empty(max(crossing_cap, 1))

    y = y0.copy()
    k1 = np.empty(4)
    k7 = np.empty(4)
    ynew = np.empty(4)
    err = np.empty(4)
    t = t0

    h0 = _rhs(t, y, k1, A, mu, f0, W1, W2)
    if np.isnan(h0):
        return (STATUS_DOMAIN, 0, samples, 0, poincare, 0, crossings, y, t, 0)

    # characteristic error scales: actions vs the initial total action,
    # angles per radian
    i_scale = rtol * max(y[2], 1e-30)
    th_scale = rtol

    samples[0, 0] = t
    samples[0, 1] = y[0]
    samples[0, 2] = y[1]
    samples[0, 3] = y[2]
    samples[0, 4] = y[3]
    samples[0, 5] = h0
    n_samp = 1
    next_sample = t0 + sample_dt

    n_poinc = 0
    n_cross = 0
    twopi = 2.0 * math.pi

    adaptive = fixed_h <= 0.0
    if adaptive:
        h = min(0.1, t_end - t0)
    else:
        h = fixed_h
    h_min = 1e-12 * (t_end - t0)

    n_steps = 0
    while t < t_end:
        if n_steps >= max_steps:
            return (STATUS_MAX_STEPS, n_samp, samples, n_poinc, poincare,
                    n_cross, crossings, y, t, n_steps)
        h_try = h
        hit_sample = False
        if t + h_try >= next_sample - 1e-9 * sample_dt:
            h_try = next_sample - t
            hit_sample = True
        if t + h_try > t_end:
            h_try = t_end - t
            hit_sample = False

        ok = _dopri_step(t, y, h_try, k1, A, mu, f0, W1, W2, ynew, k7, err)
        if not ok:
            return (STATUS_DOMAIN, n_samp, samples, n_poinc, poincare,
                    n_cross, crossings, y, t, n_steps)

        if adaptive:
            e = 0.0
            e = max(e, abs(err[0]) / i_scale)
            e = max(e, abs(err[1]) / th_scale)
            e = max(e, abs(err[2]) / i_scale)
            e = max(e, abs(err[3]) / th_scale)
            if e > 1.0:
                # reject
                h = max(h_try * max(0.2, 0.9 * e ** -0.2), h_min)
                if h <= h_min:
                    return (STATUS_STEP_UNDERFLOW, n_samp, samples, n_poinc,
                            poincare, n_cross, crossings, y, t, n_steps)
                n_steps += 1
                continue
            fac = 0.9 * (e + 1e-16) ** -0.2
            if fac > 5.0:
                fac = 5.0
            h_next = h_try * max(fac, 0.2)
        else:
            h_next = fixed_h

        n_steps += 1
        t_new = t + h_try

        # theta2 = 0 (mod 2pi) section crossing, at most one per step
        if poincare_cap > 0:
            kb_old = math.floor(y[3] / twopi)
            kb_new = math.floor(ynew[3] / twopi)
            if kb_new != kb_old and n_poinc < poincare_cap:
                kc = max(kb_old, kb_new)
                s = (twopi * kc - y[3]) / (ynew[3] - y[3])
                poincare[n_poinc, 0] = t + s * h_try
                poincare[n_poinc, 1] = y[1] + s * (ynew[1] - y[1])
                poincare[n_poinc, 2] = y[0] + s * (ynew[0] - y[0])
                poincare[n_poinc, 3] = y[2] + s * (ynew[2] - y[2])
                n_poinc += 1

        # theta1 = 0 (mod 2pi) crossing times (branch-safe on the circle)
        if crossing_cap > 0:
            w_old = y[1] - twopi * math.floor((y[1] + math.pi) / twopi)
            w_new = ynew[1] - twopi * math.floor((ynew[1] + math.pi) / twopi)
            if w_old * w_new < 0.0 and abs(w_new - w_old) < math.pi and n_cross < crossing_cap:
                s = -w_old / (w_new - w_old)
                crossings[n_cross] = t + s * h_try
                n_cross += 1

        y[0] = ynew[0]
        y[1] = ynew[1]
        y[2] = ynew[2]
        y[3] = ynew[3]
        for i in range(4):
            k1[i] = k7[i]  # FSAL
        t = t_new
        h = h_next

        if hit_sample and n_samp < n_samples_max:
            hval = _rhs(t, y, err, A, mu, f0, W1, W2)  # err reused as scratch
            samples[n_samp, 0] = t
            samples[n_samp, 1] = y[0]
            samples[n_samp, 2] = y[1]
            samples[n_samp, 3] = y[2]
            samples[n_samp, 4] = y[3]
            samples[n_samp, 5] = hval
            n_samp += 1
            next_sample = t0 + n_samp * sample_dt

    return (STATUS_OK, n_samp, samples, n_poinc, poincare, n_cross, crossings,
            y, t, n_steps)


@numba.njit(cache=True, parallel=True)
def batch_h_samples(y0s, t_end, sample_dt, A, mu, f0, W1, W2, rtol, fixed_h,
                    max_steps):
    """Integrate many initial states in parallel; keep only H(t) samples.

    Returns (statuses, H_samples[n_traj, n_samples]).
    """
    n_traj = y0s.shape[0]
    n_samples = int(t_end / sample_dt + 1.5)
    out = np.empty((n_traj, n_samples))
    status = np.zeros(n_traj, dtype=np.int64)
    for j in numba.prange(n_traj):
        res = integrate_core(y0s[j], 0.0, t_end, sample_dt, A, mu, f0, W1, W2,
                             rtol, fixed_h, max_steps, 0, 0)
        status[j] = res[0]
        ns = res[1]
        for i in range(n_samples):
            if i < ns:
                out[j, i] = res[2][i, 5]
            else:
                out[j, i] = np.nan
    return status, out
