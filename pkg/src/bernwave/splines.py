"""Cardinal B-splines and the semiorthogonal spline wavelet family.

Time-domain quantities (integer samples, wavelet coefficients,
Euler-Frobenius polynomials) are computed in exact rational arithmetic;
frequency-domain magnitudes are evaluated in the log domain so that orders
up to m = 40 stay well inside double-precision range.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import List

import numpy as np
from scipy.special import zeta as _hurwitz_zeta

__all__ = [
    "bspline_value",
    "bspline_integer_values",
    "bspline_ft_magnitude",
    "euler_frobenius",
    "autocorrelation_symbol",
    "spline_wavelet",
    "spline_wavelet_magnitude",
    "spline_wavelet_weighted_magnitude",
    "spline_wavelet_ft",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _check_order(m: int):
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ValueError(f"spline order must be a positive integer, got {m!r}")


# ---------------------------------------------------------------------------
# time domain
# ---------------------------------------------------------------------------


def bspline_value(m: int, x):
    """Cardinal B-spline of order m (support [0, m]) at x, vectorised.

    Uses the two-term order-raising recurrence, never the truncated-power
    expansion (which cancels catastrophically for large m).
    """
    _check_order(m)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    # triangle of shifted order-1 values
    cols = [np.where((x - j >= 0.0) & (x - j < 1.0), 1.0, 0.0) for j in range(m)]
    for order in range(2, m + 1):
        nxt = []
        for j in range(m - order + 1):
            t = x - j
            nxt.append((t * cols[j] + (order - t) * cols[j + 1]) / (order - 1))
        cols = nxt
    out = cols[0]
    return float(out[0]) if scalar else out


@lru_cache(maxsize=None)
def _integer_value_row(m: int):
    # exact values N_m(j), j = 0..m, by the same recurrence over the rationals
    prev = [Fraction(1 if j == 0 else 0) for j in range(m + 1)]
    for order in range(2, m + 1):
        cur = []
        for j in range(m + 1):
            left = Fraction(j) * prev[j]
            right = (Fraction(order) - Fraction(j)) * (prev[j - 1] if j >= 1 else Fraction(0))
            cur.append((left + right) / (order - 1))
        prev = cur
    return tuple(prev)


def bspline_integer_values(m: int) -> List[Fraction]:
    """Exact rational values N_m(1), ..., N_m(m-1)."""
    _check_order(m)
    if m == 1:
        return []
    row = _integer_value_row(m)
    return [row[j] for j in range(1, m)]


def euler_frobenius(m: int) -> List[int]:
    """Integer coefficient list (ascending) of the degree-(2m-2) polynomial
    (2m-1)! * sum_v N_{2m}(v+1) z^v.

    Its roots are simple, real, negative, and come in reciprocal pairs.
    """
    _check_order(m)
    vals = bspline_integer_values(2 * m)
    fact = math.factorial(2 * m - 1)
    out = []
    for v in vals:
        c = v * fact
        if c.denominator != 1:
            raise AssertionError("Euler-Frobenius coefficient not integral")
        out.append(int(c))
    return out


def spline_wavelet(m: int) -> List[Fraction]:
    """Exact wavelet coefficients q_v = (-1)^v 2^{1-m} N_{2m}(v+1), v = 0..2m-2.

    The compactly supported semiorthogonal spline wavelet of order m is
    sum_v q_v (d/dx)^m N_{2m} evaluated at (2x - v); everything downstream
    works with its Fourier transform, which these coefficients determine.
    """
    _check_order(m)
    scale = Fraction(2) ** (1 - m)
    vals = bspline_integer_values(2 * m)
    return [(-1) ** v * scale * vals[v] for v in range(2 * m - 1)]


# ---------------------------------------------------------------------------
# frequency domain
# ---------------------------------------------------------------------------


def _log_abs_sinc(u: np.ndarray) -> np.ndarray:
    # ln|sin(u)/u| with the removable singularity at 0 handled by np.sinc
    with np.errstate(divide="ignore"):
        return np.log(np.abs(np.sinc(u / np.pi)))


def bspline_ft_magnitude(m: int, omega):
    """|FT of N_m| = (2*pi)^{-1/2} |sin(w/2) / (w/2)|^m, evaluated stably."""
    _check_order(m)
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    out = np.exp(m * _log_abs_sinc(w / 2.0)) / _SQRT_2PI
    return float(out[0]) if scalar else out


def autocorrelation_symbol(m: int, omega):
    """The 2*pi-periodic autocorrelation symbol sum_k N_{2m}(m+k) cos(k w).

    Evaluated through its lattice representation
    sum_l [sin(u)/u]^{2m} at u = (w + 2*pi*l)/2, which is exact (the |l| >= 3
    part is a Hurwitz-zeta pair) and free of the cancellation that kills the
    cosine sum in double precision once m is large.  Strictly positive, with
    minimum at w = pi.
    """
    _check_order(m)
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    th = np.mod(w, 2.0 * np.pi)
    r = th / (2.0 * np.pi)
    s = 2 * m
    out = np.zeros_like(th)
    for l in (-2, -1, 0, 1, 2):
        out += np.sinc(r + l) ** s
    # remaining lattice points: (sin(pi r)/pi)^s * (zeta(s,3+r) + zeta(s,3-r))
    rem = (np.sin(np.pi * r) / np.pi) ** s
    out += rem * (_hurwitz_zeta(s, 3.0 + r) + _hurwitz_zeta(s, 3.0 - r))
    return float(out[0]) if scalar else out


def _wavelet_log_magnitude(m: int, w: np.ndarray) -> np.ndarray:
    """ln of the spline-wavelet FT magnitude at w (array, any sign)."""
    aw = np.abs(w)
    with np.errstate(divide="ignore"):
        logw = np.log(aw)
    logw = np.where(aw == 0.0, -np.inf, logw)
    A = autocorrelation_symbol(m, w / 2.0 + np.pi)
    return (
        m * logw
        - m * math.log(4.0)
        + 2.0 * m * _log_abs_sinc(w / 4.0)
        + np.log(A)
        - 0.5 * math.log(2.0 * math.pi)
    )


def spline_wavelet_magnitude(m: int, omega):
    """|FT of the order-m spline wavelet|:
    (2*pi)^{-1/2} |sin^2(w/4) / (w/4)|^m * (autocorrelation symbol at w/2 + pi).
    """
    _check_order(m)
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    out = np.exp(_wavelet_log_magnitude(m, w))
    return float(out[0]) if np.asarray(omega).ndim == 0 else out


def spline_wavelet_weighted_magnitude(m: int, k, omega):
    """|w|^{-k} * |FT of the order-m spline wavelet|, stable for 0 <= k <= m.

    The weight and the wavelet's m-fold zero at the origin are combined in
    the log domain, so the apparent singularities at w = 0 (and the lattice
    points of the autocorrelation symbol) cancel exactly.  w = 0 with k > 0
    is rejected for k > m only; for k <= m the limit is finite and returned.
    """
    _check_order(m)
    k = float(k)
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    if k > m and np.any(w == 0.0):
        raise ValueError(f"weight |w|^-{k} diverges at w = 0 for k > m = {m}")
    aw = np.abs(w)
    with np.errstate(divide="ignore"):
        logw = np.log(np.where(aw == 0.0, 1.0, aw))
    # (m - k) ln|w| handles the 0/0 at the origin in one shot
    pw = (m - k) * logw
    pw = np.where(aw == 0.0, (-np.inf if k < m else 0.0), pw)
    A = autocorrelation_symbol(m, w / 2.0 + np.pi)
    logmag = (
        pw
        - m * math.log(4.0)
        + 2.0 * m * _log_abs_sinc(w / 4.0)
        + np.log(A)
        - 0.5 * math.log(2.0 * math.pi)
    )
    out = np.exp(logmag)
    return float(out[0]) if scalar else out


def spline_wavelet_ft(m: int, omega):
    """Complex FT of the order-m spline wavelet (one fixed phase convention).

    (-1)^{m-1} (2*pi)^{-1/2} (i w/4)^m sinc(w/4)^{2m}
    * (autocorrelation symbol at w/2 + pi) * exp(-i (2m-1) w / 2).

    Intended for inner products at moderate m; magnitudes at large m should
    go through spline_wavelet_weighted_magnitude instead.
    """
    _check_order(m)
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    A = autocorrelation_symbol(m, w / 2.0 + np.pi)
    core = (1j * w / 4.0) ** m * np.sinc(w / (4.0 * np.pi)) ** (2 * m)
    out = (
        (-1.0) ** (m - 1)
        / _SQRT_2PI
        * core
        * A
        * np.exp(-1j * (2 * m - 1) * w / 2.0)
    )
    return complex(out[0]) if scalar else out
