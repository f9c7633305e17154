"""Certified weighted Fourier-side L_p norms and everything built on them:
coefficient constants (ratios of weighted to unweighted norms), the
derivative-inequality verifier for spline expansions, Fejer-kernel
near-extremal ratios, asymptotic sweeps with Richardson extrapolation,
and a directly checkable wavelet-coefficient bound.

The quadrature strategy is the same for both families: integrate
w^{alpha*p} |fhat(w)|^p over (0, Omega) with composite Gauss-Legendre
panels aligned to multiples of pi (all kinks of |sin|^q live there), a
dyadic stack of panels toward w = 0, and a rigorous bound on the tail
beyond Omega.  Spline transforms have elementary envelopes, so their
tails are closed-form.  For the orthonormal family the tail comes from a
certified symbol-product estimate: |phihat(w)|^2 equals
(2 pi)^{-1} sinc(w/2)^{2m} * prod_{j>=1} B(w/2^j) with B >= 1 a fixed
trigonometric polynomial, and grid-plus-Bernstein-inflation suprema of
the partial products give an explicit octave-by-octave envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import zeta as _zeta

from . import daubechies as _daub
from . import splines as _spl
from .constants import (
    predict_limit,
    predict_norm_leading,
    predict_rate,
    spline_bernstein_constant,
)
from .numerics import adaptive_integrate

__all__ = [
    "WeightedNormQuery",
    "NormResult",
    "CkpResult",
    "BernsteinCheckResult",
    "CoefficientBoundResult",
    "AsymptoticReport",
    "weighted_lp_norm",
    "ckp",
    "verify_bernstein_spline",
    "bernstein_violation_scan",
    "fejer_extremal_ratio",
    "vanishing_moment_order",
    "coefficient_bound_check",
    "asymptotic_sweep",
    "richardson_extrapolate",
]

SPLINE_ORDER_LIMIT = 40
_LN_2PI = math.log(2.0 * math.pi)

# Gauss-Legendre nodes for the composite rule (GL15 value, GL7 check).
_X15, _W15 = np.polynomial.legendre.leggauss(15)
_X7, _W7 = np.polynomial.legendre.leggauss(7)

_EVAL_CHUNK = 1 << 22


# ---------------------------------------------------------------------------
# queries and results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightedNormQuery:
    family: str          # "spline" | "daubechies"
    part: str            # "phi" | "psi"
    m: int
    alpha: float         # weight exponent: || |w|^alpha fhat ||_p
    p: float
    tol: float = 1e-8
    scale: float = 1.0   # evaluate fhat(scale * w) inside the norm

    def __post_init__(self):
        if self.family not in ("spline", "daubechies"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.part not in ("phi", "psi"):
            raise ValueError(f"unknown part {self.part!r}")
        if not (isinstance(self.m, (int, np.integer)) and self.m >= 1):
            raise ValueError("m must be a positive integer")
        if not self.p > 1.0:
            raise ValueError("p must exceed 1")
        if not (self.tol > 0.0 and self.scale > 0.0):
            raise ValueError("tol and scale must be positive")
        limit = SPLINE_ORDER_LIMIT if self.family == "spline" else _daub.MASK_ORDER_LIMIT
        if self.m > limit:
            raise ValueError(f"order m={self.m} beyond supported limit {limit} for {self.family}")


@dataclass(frozen=True)
class NormResult:
    query: WeightedNormQuery
    value: float
    certified_rel_error: float
    cutoff: float        # upper end of the quadrature window
    tail_bound: float    # rigorous bound on the discarded tail of the p-th power
    panels: int


@dataclass(frozen=True)
class CkpResult:
    family: str
    part: str
    m: int
    k: int
    p: float
    numerator: float
    denominator: float
    ratio: float
    certified_rel_error: float


@dataclass(frozen=True)
class BernsteinCheckResult:
    m: int
    k: int
    h: int
    p: float
    lhs: float
    rhs: float
    ratio: float   # lhs / rhs
    ok: bool


@dataclass(frozen=True)
class CoefficientBoundResult:
    family: str
    m: int
    j: int
    nu: int
    k: int
    p: float
    inner_product_abs: float
    stated_bound: float
    holder_bound: float
    coefficient_constant: float
    ok: bool


@dataclass(frozen=True)
class AsymptoticReport:
    target: str
    m_grid: tuple
    measured: tuple
    predicted: tuple
    rel_error: tuple
    fitted_decay_exponent: float
    richardson: float


# ---------------------------------------------------------------------------
# integrand construction
# ---------------------------------------------------------------------------


def _spline_phi_integrand(m, alpha, p, scale):
    lc = -0.5 * _LN_2PI

    def f(w):
        return np.exp(p * (alpha * np.log(w) + m * _spl._log_abs_sinc(0.5 * scale * w) + lc))

    # integrand <= coeff * w^expo near zero
    return f, alpha * p, math.exp(-0.5 * p * _LN_2PI)


def _spline_psi_integrand(m, alpha, p, scale):
    lc = m * math.log(scale) - m * math.log(4.0) - 0.5 * _LN_2PI
    ma = m + alpha

    def f(w):
        u = scale * w
        reg = 2.0 * m * _spl._log_abs_sinc(0.25 * u) + np.log(
            _spl.autocorrelation_symbol(m, 0.5 * u + math.pi)
        )
        ex = ma * np.log(w) if ma != 0.0 else 0.0
        return np.exp(p * (ex + lc + reg))

    # sinc and the autocorrelation factor never exceed 1
    return f, ma * p, math.exp(p * lc)


def _daub_phi_integrand(m, alpha, p, scale, mag_tol):
    lc = -0.5 * _LN_2PI

    def f(w):
        return np.exp(p * (alpha * np.log(w) + _daub._log_phi_hat(m, scale * w, mag_tol) + lc))

    return f, alpha * p, math.exp(-0.5 * p * _LN_2PI)


def _daub_psi_integrand(m, alpha, p, scale, mag_tol):
    pc = _daub._p_coeffs(m)
    lc = m * math.log(scale) - m * math.log(4.0) - 0.5 * _LN_2PI
    ma = m + alpha

    def f(w):
        u = scale * w
        y = np.cos(0.25 * u) ** 2
        acc = np.full_like(y, pc[-1])
        for c in pc[-2::-1]:
            acc = acc * y + c
        reg = (
            m * _spl._log_abs_sinc(0.25 * u)
            + 0.5 * np.log(acc)
            + _daub._log_phi_hat(m, 0.5 * u, mag_tol)
        )
        ex = ma * np.log(w) if ma != 0.0 else 0.0
        return np.exp(p * (ex + lc + reg))

    bmax = float(np.polyval(pc[::-1], 1.0))
    return f, ma * p, math.exp(p * lc) * bmax ** (0.5 * p)


def _make_integrand(q: WeightedNormQuery, mag_tol: float):
    """Return (vectorized integrand of the p-th power, small-w exponent g,
    coefficient C with integrand <= C * w^g near 0)."""
    if q.family == "spline":
        if q.part == "phi":
            return _spline_phi_integrand(q.m, q.alpha, q.p, q.scale)
        return _spline_psi_integrand(q.m, q.alpha, q.p, q.scale)
    if q.part == "phi":
        return _daub_phi_integrand(q.m, q.alpha, q.p, q.scale, mag_tol)
    return _daub_psi_integrand(q.m, q.alpha, q.p, q.scale, mag_tol)


# ---------------------------------------------------------------------------
# composite Gauss-Legendre with panel-splitting refinement
# ---------------------------------------------------------------------------


def _chunked(f, x):
    if x.size <= _EVAL_CHUNK:
        return f(x)
    out = np.empty_like(x)
    for i in range(0, x.size, _EVAL_CHUNK):
        out[i : i + _EVAL_CHUNK] = f(x[i : i + _EVAL_CHUNK])
    return out


def _gl_on_panels(f, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x15 = (mid[:, None] + half[:, None] * _X15[None, :]).ravel()
    v15 = _chunked(f, x15).reshape(-1, 15)
    i15 = (v15 @ _W15) * half
    x7 = (mid[:, None] + half[:, None] * _X7[None, :]).ravel()
    v7 = _chunked(f, x7).reshape(-1, 7)
    i7 = (v7 @ _W7) * half
    return i15, np.abs(i15 - i7)


def _composite_integrate(f, edges, rel_tol, node_budget=80_000_000, max_rounds=24):
    """Integrate f (vectorized, nonnegative) over the panels defined by
    `edges`, splitting the panels whose GL15-vs-GL7 discrepancy dominates
    until the summed discrepancy is below rel_tol * integral.

    Returns (integral, error_estimate, n_panels)."""
    lo = np.asarray(edges[:-1], dtype=float)
    hi = np.asarray(edges[1:], dtype=float)
    vals, errs = _gl_on_panels(f, lo, hi)
    used = 22 * lo.size
    for _ in range(max_rounds):
        total = float(vals.sum())
        err = float(errs.sum())
        target = rel_tol * abs(total)
        if err <= target or total == 0.0:
            return total, err, lo.size
        mask = errs > target / lo.size
        if not mask.any():
            order = np.argsort(errs)[-max(1, lo.size // 4):]
            mask = np.zeros(lo.size, dtype=bool)
            mask[order] = True
        nl, nh = lo[mask], hi[mask]
        mid = 0.5 * (nl + nh)
        slo = np.concatenate([nl, mid])
        shi = np.concatenate([mid, nh])
        used += 22 * slo.size
        if used > node_budget:
            raise RuntimeError("quadrature node budget exceeded; request a looser tolerance")
        svals, serrs = _gl_on_panels(f, slo, shi)
        lo = np.concatenate([lo[~mask], slo])
        hi = np.concatenate([hi[~mask], shi])
        vals = np.concatenate([vals[~mask], svals])
        errs = np.concatenate([errs[~mask], serrs])
    total = float(vals.sum())
    err = float(errs.sum())
    if err > 4.0 * rel_tol * abs(total):
        raise RuntimeError("panel refinement failed to converge")
    return total, err, lo.size


def _build_edges(omega, small_expo, small_coeff, abs_target):
    """Panel edges on (eps, omega]: pi/4-wide panels aligned so every
    multiple of pi is an edge, plus a dyadic stack shrinking toward 0.
    Returns (edges, head_bound) where head_bound >= integral over (0, eps)."""
    w0 = 0.25 * math.pi
    n = int(round(omega / w0))
    body = w0 * np.arange(1, n + 1)
    g1 = small_expo + 1.0
    if g1 <= 0.0:
        raise ValueError("weight exponent leaves the integrand non-integrable at 0")
    # pick eps = w0 * 2^-D with remaining mass below abs_target
    head_bound = lambda eps: small_coeff * eps ** g1 / g1
    depth = 1
    while depth < 6000 and head_bound(w0 * 2.0 ** (-depth)) > abs_target:
        depth += 1
    head = w0 * 2.0 ** (-np.arange(depth, 0, -1, dtype=float))
    return np.concatenate([head, body]), head_bound(w0 * 2.0 ** (-depth))


# ---------------------------------------------------------------------------
# tail certificates
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _spline_tail_mean(part: str, m: int, p: float) -> float:
    """Mean over one period of the oscillatory factor of |fhat(u)|^p u^{mp}.

    For the B-spline that factor is |sin(u/2)|^{mp} (exact Wallis mean);
    for the wavelet it is sin(u/4)^{2mp} A_m(u/2 + pi)^p, averaged by a
    trapezoid rule over its 4 pi period (the integrand is at least C^2,
    so 2^17 points leave an error far below what the tail can resolve).
    """
    q = m * p
    if part == "phi":
        return math.exp(math.lgamma(0.5 * (q + 1.0)) - math.lgamma(0.5 * q + 1.0)) / math.sqrt(math.pi)
    u = 4.0 * math.pi * np.arange(1 << 17) / (1 << 17)
    vals = np.abs(np.sin(0.25 * u)) ** (2.0 * q) * _spl.autocorrelation_symbol(m, 0.5 * u + math.pi) ** p
    return float(vals.mean())


def _spline_tail(part, m, alpha, p, scale, omega):
    """(estimate, uncertainty) for int_Omega^inf w^{alpha p}|fhat(scale w)|^p dw.

    In the substituted variable u = scale * w the integrand is exactly
    C u^{-s} P(u) with P periodic (period 2 pi for the spline, 4 pi for
    the wavelet), 0 <= P <= 1 and s = (m - alpha) p.  The mean of P gives
    the estimate C Pbar Omega^{1-s}/(s-1); the oscillatory remainder is
    bounded by Abel summation (integrals of P - Pbar over whole periods
    vanish) by 2 T C Omega^{-s} -- one power of Omega smaller, which is
    what keeps slowly decaying cases inside the cutoff budget."""
    s = (m - alpha) * p
    if s <= 1.0:
        raise ValueError(
            f"tail of the weighted norm diverges: need (m - alpha) * p > 1, "
            f"got m={m}, alpha={alpha}, p={p}"
        )
    om = scale * omega
    scale_fac = scale ** (-(alpha * p + 1.0))
    num = 2.0 if part == "phi" else 4.0
    c = math.exp(-0.5 * p * _LN_2PI) * num ** (m * p)
    period = 2.0 * math.pi if part == "phi" else 4.0 * math.pi
    est = scale_fac * c * _spline_tail_mean(part, m, p) * om ** (1.0 - s) / (s - 1.0)
    unc = scale_fac * 2.0 * period * c * om ** (-s)
    return est, unc


@dataclass(frozen=True)
class _DaubTailCertificate:
    m: int
    block: int            # R: octaves per block in the sup-product table
    log2_t: tuple         # log2 of certified sup of prod_{i<r} B(2^i nu), r=0..R
    bmax: float           # sup B = P(1)
    log_e: float          # log of the small-argument product bound E_m
    sigma: float          # certified decay: |phihat(w)|^2 <= C * w^-sigma


@lru_cache(maxsize=None)
def _daub_tail_certificate(m: int, block: int = 12, grid_pow: int = 22) -> _DaubTailCertificate:
    pc = np.asarray(_daub._p_coeffs(m))
    n = 1 << grid_pow
    delta = 2.0 * math.pi / n
    nu = delta * np.arange(n)
    y = np.square(np.sin(0.5 * nu))
    b = np.full(n, pc[-1])
    for c in pc[-2::-1]:
        b = b * y + c
    del y
    idx = np.arange(n, dtype=np.int64)
    cum = b.copy()
    log2_t = [0.0]
    for r in range(1, block + 1):
        if r > 1:
            cum = cum * b[(idx * (1 << (r - 1))) & (n - 1)]
        deg = (m - 1) * ((1 << r) - 1)
        inflate = 1.0 - 0.5 * deg * delta
        if inflate <= 0.5:
            raise RuntimeError("certificate grid too coarse for this block size")
        log2_t.append(math.log2(float(cum.max()) / inflate))
    bmax = float(np.polyval(pc[::-1], 1.0))
    # E_m = prod_{i>=1} B(pi / 2^i); terms reach 1 quadratically fast
    log_e = 0.0
    for i in range(1, 61):
        yi = math.sin(math.pi / 2 ** (i + 1)) ** 2
        log_e += math.log(float(np.polyval(pc[::-1], yi)))
    log_e += (bmax - 1.0) * (math.pi ** 2 / 4.0) * 4.0 ** (-61) * (4.0 / 3.0)
    sigma = 2.0 * m - log2_t[block] / block
    return _DaubTailCertificate(m, block, tuple(log2_t), bmax, log_e, sigma)


@lru_cache(maxsize=None)
def _daub_mean_table(m: int, n_max: int = 70):
    """log of Q_n = mean over [0, 2 pi) of prod_{i<n} B(2^i theta), n <= n_max.

    B maps cosine polynomials of degree < m into themselves under the
    weighted decimation (Tf)(w) = (B f)(w/2)/2 + (B f)(w/2 + pi)/2, and
    int Pi_n = int T^n 1 exactly, so the whole sequence of octave means
    follows from powers of one m-dimensional linear map.  Means decay a
    full Sobolev order faster than the sup table, which is what makes
    slowly decaying weighted L_2 tails computable."""
    pc = np.asarray(_daub._p_coeffs(m))
    # cosine coefficients of B: substitute y = (1 - c)/2, expand in Chebyshev
    q = np.polynomial.Polynomial(pc)(np.polynomial.Polynomial([0.5, -0.5]))
    b_cos = np.polynomial.chebyshev.poly2cheb(q.coef)
    kb = len(b_cos) - 1
    b_two = np.zeros(2 * kb + 1)
    b_two[kb] = b_cos[0]
    for j in range(1, kb + 1):
        b_two[kb + j] = b_two[kb - j] = 0.5 * b_cos[j]
    c = np.array([1.0])  # two-sided coefficients of T^n 1, centered
    log_q = [0.0]
    acc = 0.0
    for _ in range(n_max):
        h = np.convolve(c, b_two)
        center = len(h) // 2
        kmax = min(center // 2, m - 1)
        c = h[center - 2 * kmax : center + 2 * kmax + 1 : 2]
        mid = c[len(c) // 2]
        if not mid > 0.0:
            raise RuntimeError("octave-mean recursion lost positivity")
        c = c / mid
        acc += math.log(mid)
        log_q.append(acc)
    return tuple(log_q)


def _daub_tail_sup_route(cert: _DaubTailCertificate, alpha, p, om):
    """Upper bound on int_om^inf u^{alpha p} |phihat(u)|^p du from the
    sup-product table alone: valid for every p, decay 2^{alpha p + 1 - p sigma / 2}
    per octave."""
    m, r_blk = cert.m, cert.block
    log2_rho = r_blk * (alpha * p - m * p + 1.0) + 0.5 * p * cert.log2_t[r_blk]
    beta = (alpha - m) * p
    ln2 = math.log(2.0)
    l0 = math.floor(math.log2(om / math.pi) + 1e-12)
    pieces = []
    for jj in range(3 * r_blk):
        lj = l0 + jj
        w_lo = max(om, math.pi * 2.0 ** lj) if jj == 0 else math.pi * 2.0 ** lj
        w_hi = math.pi * 2.0 ** (lj + 1)
        nn = lj + 1
        log_pb = (nn // r_blk) * cert.log2_t[r_blk] * ln2 + cert.log2_t[nn % r_blk] * ln2 + cert.log_e
        if beta + 1.0 > 0.0:
            log_int = math.log((w_hi ** (beta + 1.0) - w_lo ** (beta + 1.0)) / (beta + 1.0))
        elif beta + 1.0 < 0.0:
            log_int = (beta + 1.0) * math.log(w_lo) + math.log(
                -math.expm1((beta + 1.0) * math.log(w_hi / w_lo))
            ) - math.log(-(beta + 1.0))
        else:
            log_int = math.log(math.log(w_hi / w_lo))
        lp = -0.5 * p * _LN_2PI + m * p * ln2 + 0.5 * p * log_pb + log_int
        pieces.append(math.exp(lp) if lp < 700.0 else math.inf)
    rho = 2.0 ** log2_rho
    remainder = sum(pieces[2 * r_blk :]) * rho / (1.0 - rho)
    return sum(pieces) + remainder


def _daub_tail_mean_route(cert: _DaubTailCertificate, alpha, om):
    """Upper bound on int_om^inf u^{2 alpha} |phihat(u)|^2 du through the
    exact octave means of the B-product (p = 2 only).

    On the octave [pi 2^n, pi 2^{n+1}) write w = 2^n theta: the product
    prod_{j>=1} B(w/2^j) splits exactly into Pi_n(theta) * prod_{l>=1}
    B(theta/2^l), and since B increases on [0, pi] the second factor is
    at most B(pi) E_m.  With sin^{2m} <= 1 the octave mass is bounded by
    2^{2m} w_lo^{2(alpha-m)} 2^n Q_n B_max E_m (2 pi the mean's period
    cancels the (2 pi)^{-1} of |phihat|^2).  The far remainder falls
    back to the sup route, astronomically small by then."""
    m = cert.m
    log_q = _daub_mean_table(m)
    beta = 2.0 * (alpha - m)
    ln2 = math.log(2.0)
    l0 = math.floor(math.log2(om / math.pi) + 1e-12)
    n_mean = len(log_q) - 1 - l0
    if n_mean < 1:
        return _daub_tail_sup_route(cert, alpha, 2.0, om)
    total = 0.0
    for jj in range(n_mean):
        lj = l0 + jj
        w_lo = max(om, math.pi * 2.0 ** lj) if jj == 0 else math.pi * 2.0 ** lj
        lp = (2.0 * m + lj) * ln2 + beta * math.log(w_lo) + log_q[lj] \
            + math.log(cert.bmax) + cert.log_e
        total += math.exp(lp) if lp < 700.0 else math.inf
    total += _daub_tail_sup_route(cert, alpha, 2.0, math.pi * 2.0 ** (l0 + n_mean))
    return total


def _daub_tail_bound(part, m, alpha, p, scale, omega):
    """Certified bound on int_Omega^inf w^{alpha p}|fhat(scale w)|^p dw for
    the orthonormal family.  The wavelet case reduces to the scaling case
    through |psihat(w)| <= |phihat(w/2)|."""
    if part == "psi":
        # |psihat(u)| <= |phihat(u/2)|; substitute u = 2v in the tail integral
        return 2.0 ** (alpha * p + 1.0) * _daub_tail_bound("phi", m, alpha, p, scale, omega / 2.0)
    cert = _daub_tail_certificate(m)
    # substitute u = scale * w once and for all
    om = scale * omega
    scale_fac = scale ** (-(alpha * p + 1.0))
    if om < 2.0 * math.pi:
        raise ValueError("tail cutoff below the certified range")
    # gate: the sup-route geometric ratio must be < 1, or even the far
    # remainder cannot be summed (for p = 2 that also rejects weights at
    # or beyond the true decay, e.g. m = 2 with alpha = 1)
    r_blk = cert.block
    log2_rho = r_blk * (alpha * p - m * p + 1.0) + 0.5 * p * cert.log2_t[r_blk]
    if log2_rho > -0.01:
        raise ValueError(
            f"cannot certify tail decay for family=daubechies part={part} m={m} "
            f"alpha={alpha} p={p}: certified decay exponent {cert.sigma:.3f} is "
            f"too small for this weight"
        )
    if p == 2.0:
        return scale_fac * _daub_tail_mean_route(cert, alpha, om)
    return scale_fac * _daub_tail_sup_route(cert, alpha, p, om)


def _tail(q: WeightedNormQuery, omega):
    """(estimate, uncertainty) of the integral beyond the cutoff.  The
    estimate is added to the computed integral; only the uncertainty
    enters the error budget.  The orthonormal certificate is a pure
    upper bound, so there the estimate is zero."""
    if q.family == "spline":
        return _spline_tail(q.part, q.m, q.alpha, q.p, q.scale, omega)
    return 0.0, _daub_tail_bound(q.part, q.m, q.alpha, q.p, q.scale, omega)


# ---------------------------------------------------------------------------
# the norm itself
# ---------------------------------------------------------------------------


def _validate_norm_query(q: WeightedNormQuery):
    if q.alpha * q.p <= -1.0 and q.part == "phi":
        raise ValueError("need alpha * p > -1: the weight is not integrable at 0")
    if q.part == "psi" and (q.m + q.alpha) * q.p <= -1.0:
        raise ValueError("weight exponent exceeds the wavelet's vanishing order at 0")
    if q.family == "spline" and (q.m - q.alpha) * q.p <= 1.0:
        raise ValueError("need (m - alpha) * p > 1 for a convergent spline norm")


def weighted_lp_norm(
    family: str,
    part: str,
    m: int,
    alpha: float,
    p: float,
    tol: float = 1e-8,
    scale: float = 1.0,
) -> NormResult:
    """Certified || |w|^alpha fhat(scale w) ||_{L_p(R)} for the spline or
    orthonormal scaling function (part="phi") or wavelet (part="psi") of
    order m.

    The result's certified_rel_error accounts for quadrature discrepancy,
    the rigorously bounded tail beyond the cutoff, and (for the
    orthonormal family) the truncation certificate of the infinite
    symbol product.  It is kept below tol or the call raises.
    """
    q = WeightedNormQuery(family, part, m, float(alpha), float(p), tol, float(scale))
    _validate_norm_query(q)
    mag_tol = tol / 8.0
    f, g, c0 = _make_integrand(q, mag_tol)
    if q.family == "daubechies":
        _daub_tail_certificate(m)  # raise early if the grid cannot certify

    # bootstrap estimate of the p-th power integral (underestimate: the
    # integrand is nonnegative, so truncation only loses mass)
    boot_edges, _ = _build_edges(64.0 * math.pi / q.scale, g, c0, 1e-280)
    i_boot, _, _ = _composite_integrate(f, boot_edges, 1e-3)
    if not (i_boot > 0.0) or not math.isfinite(i_boot):
        raise RuntimeError("bootstrap integral failed; the norm may underflow")

    tail_target = 0.25 * tol * i_boot
    lpow = max(6, int(math.ceil(math.log2(64.0 / q.scale))))
    tail_est = 0.0
    tail = math.inf
    while lpow <= 24:
        omega = math.pi * 2.0 ** lpow
        tail_est, tail = _tail(q, omega)
        if tail <= tail_target:
            break
        lpow += 1
    else:
        raise RuntimeError(
            f"tail cannot be certified below target within the cutoff budget "
            f"(family={family}, part={part}, m={m}, alpha={alpha}, p={p})"
        )

    omega = math.pi * 2.0 ** lpow
    edges, head = _build_edges(omega, g, c0, tail_target / 10.0)
    quad_rel = 0.5 * tol
    integral, quad_err, panels = _composite_integrate(f, edges, quad_rel)
    total = integral + tail_est
    cre = (quad_err + tail + head) / (q.p * total) + (mag_tol if family == "daubechies" else 1e-14)
    if cre > tol:
        integral, quad_err, panels = _composite_integrate(f, edges, quad_rel / 8.0)
        total = integral + tail_est
        cre = (quad_err + tail + head) / (q.p * total) + (mag_tol if family == "daubechies" else 1e-14)
        if cre > tol:
            raise RuntimeError(f"could not certify the norm to tol={tol} (achieved {cre:.2e})")
    value = (2.0 * total) ** (1.0 / q.p)
    return NormResult(q, value, cre, omega, tail, panels)


# ---------------------------------------------------------------------------
# coefficient constants
# ---------------------------------------------------------------------------


def ckp(family: str, part: str, m: int, k: int, p: float, tol: float = 1e-8) -> CkpResult:
    """Coefficient constant of order m at weight index k: the ratio of the
    weighted to the plain Fourier L_p norm.  The wavelet ratio uses the
    inverse weight |w|^{-k}; the scaling ratio uses |w|^{+k}, the form
    whose large-m limits the predictors describe.  k = 0 gives exactly 1.
    """
    if not (isinstance(k, (int, np.integer)) and k >= 0):
        raise ValueError("k must be a nonnegative integer")
    if part == "psi" and k > m:
        raise ValueError(
            f"k={k} exceeds the wavelet's vanishing-moment order m={m}; "
            "the weighted norm diverges at 0"
        )
    den = weighted_lp_norm(family, part, m, 0.0, p, tol)
    if k == 0:
        return CkpResult(family, part, m, 0, p, den.value, den.value, 1.0,
                         2.0 * den.certified_rel_error)
    alpha = -float(k) if part == "psi" else float(k)
    num = weighted_lp_norm(family, part, m, alpha, p, tol)
    return CkpResult(
        family, part, m, int(k), p, num.value, den.value, num.value / den.value,
        num.certified_rel_error + den.certified_rel_error,
    )


# ---------------------------------------------------------------------------
# periodized kernels: exact reduction of spline-expansion norms to (0, 2 pi)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _periodized_weight_kernel(m: int, k: int, p: float, n_grid: int = 1 << 14):
    """Grid values on theta_g = 2 pi g / N of
        G(theta) = sum_l |theta + 2 pi l|^{kp} |Nhat_m(theta + 2 pi l)|^p,
    so that int_R |w|^{kp} |chat(w)|^p |Nhat_m(w)|^p dw
          = int_0^{2pi} |chat|^p G  for any 2 pi-periodic chat.
    The lattice sum collapses to two Hurwitz zeta values plus the l = 0
    term; s = (m - k) p must exceed 1."""
    s = (m - k) * p
    if s <= 1.0:
        raise ValueError("periodized kernel needs (m - k) * p > 1")
    theta = 2.0 * math.pi * np.arange(n_grid) / n_grid
    r = theta / (2.0 * math.pi)
    with np.errstate(divide="ignore", invalid="ignore"):
        lattice = r ** (-s) + _zeta(s, 1.0 + r) + _zeta(s, 1.0 - r)
        core = np.abs(2.0 * np.sin(0.5 * theta)) ** (m * p)
        g = (2.0 * math.pi) ** (-0.5 * p + (k - m) * p) * core * lattice
    g[0] = (2.0 * math.pi) ** (-0.5 * p) if k == 0 else 0.0
    return g


@lru_cache(maxsize=4)
def _chat_basis(n_grid: int, max_len: int = 8):
    theta = 2.0 * math.pi * np.arange(n_grid) / n_grid
    return np.exp(-1j * np.outer(np.arange(max_len), theta))


def _coeff_symbol_power(coeffs, p, n_grid=1 << 14):
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("coefficient vector must be one-dimensional and nonempty")
    if c.size <= 8:
        chat = c @ _chat_basis(n_grid)[: c.size]
    else:
        theta = 2.0 * math.pi * np.arange(n_grid) / n_grid
        chat = c @ np.exp(-1j * np.outer(np.arange(c.size), theta))
    return np.abs(chat) ** p


def verify_bernstein_spline(
    coeffs: Sequence[float], m: int, k: int, h: int = 1, p: float = 2.0,
    slack: float = 1e-6,
) -> BernsteinCheckResult:
    """Check the derivative-side inequality for s(x) = sum_j c_j N_m(x/h - j):
    the weighted Fourier norm || w^k shat ||_p against
    (pi h)^k sqrt(K_{2(m-k)+1}/K_{2m+1}) times || shat ||_p.

    Both sides are computed exactly (up to the 2 pi-periodic trapezoid
    rule, spectrally accurate here) through the periodized kernel, so a
    reported violation is a property of the inequality, not of the
    quadrature."""
    if not 1 <= k < m:
        raise ValueError("need 1 <= k < m")
    if not (isinstance(h, (int, np.integer)) and h >= 1):
        raise ValueError("h must be a positive integer")
    cpow = _coeff_symbol_power(coeffs, p)
    gk = _periodized_weight_kernel(m, k, p)
    g0 = _periodized_weight_kernel(m, 0, p)
    num = float(cpow @ gk) * (2.0 * math.pi) / cpow.size
    den = float(cpow @ g0) * (2.0 * math.pi) / cpow.size
    hf = float(h)
    lhs = hf ** (1.0 - k - 1.0 / p) * num ** (1.0 / p)
    rhs = (
        spline_bernstein_constant(m, k, h)
        * hf ** (1.0 - 1.0 / p)
        * den ** (1.0 / p)
    )
    return BernsteinCheckResult(m, k, int(h), p, lhs, rhs, lhs / rhs, lhs <= rhs * (1.0 + slack))


def bernstein_violation_scan(
    n_vectors: int = 500,
    m_values: Sequence[int] = (2, 3, 4, 5, 6),
    h_values: Sequence[int] = (1, 2),
    p_values: Sequence[float] = (1.5, 2.0, 3.0),
    seed: int = 20260819,
    slack: float = 1e-6,
    max_len: int = 8,
):
    """Drive the inequality check over random coefficient vectors and every
    (m, k < m, h, p) combination.  Returns (n_checks, violations) where
    violations is a list of (m, k, h, p, vector_index, lhs/rhs)."""
    rng = np.random.default_rng(seed)
    vecs = []
    for _ in range(n_vectors):
        ln = int(rng.integers(1, max_len + 1))
        vecs.append(rng.uniform(-1.0, 1.0, size=ln))
    n_grid = 1 << 14
    basis = _chat_basis(n_grid)
    amp = np.stack([np.abs(v @ basis[: v.size]) for v in vecs])
    violations = []
    n_checks = 0
    for p in p_values:
        cpow = amp ** p
        for m in m_values:
            g0 = _periodized_weight_kernel(m, 0, p, n_grid)
            den = cpow @ g0
            for k in range(1, m):
                gk = _periodized_weight_kernel(m, k, p, n_grid)
                ratio = ((cpow @ gk) / den) ** (1.0 / p)
                for h in h_values:
                    # lhs <= rhs reduces to ratio <= pi^k h^{2k} sqrt(K ratio)
                    bound = spline_bernstein_constant(m, k, h) * float(h) ** k
                    bad = np.nonzero(ratio > bound * (1.0 + slack))[0]
                    n_checks += ratio.size
                    for idx in bad:
                        violations.append((m, k, h, p, int(idx), float(ratio[idx] / bound)))
    return n_checks, violations


def fejer_extremal_ratio(m: int, j: int, k: int = 1, p: float = 2.0, n_grid: int = 1 << 14) -> float:
    """Weighted-to-plain norm ratio for the coefficient profile whose
    squared symbol power is the order-j Fejer kernel centered at theta=pi
    (concentrating, as j grows, at the frequency where the inequality is
    tightest)."""
    if not 1 <= k < m:
        raise ValueError("need 1 <= k < m")
    theta = 2.0 * math.pi * np.arange(n_grid) / n_grid
    t = theta - math.pi
    sj = np.sin(0.5 * (j + 1) * t)
    s1 = np.sin(0.5 * t)
    with np.errstate(divide="ignore", invalid="ignore"):
        phi = np.where(np.abs(s1) > 1e-12, (sj / np.where(s1 == 0.0, 1.0, s1)) ** 2, (j + 1.0) ** 2)
    phi = phi / (j + 1.0)
    gk = _periodized_weight_kernel(m, k, p, n_grid)
    g0 = _periodized_weight_kernel(m, 0, p, n_grid)
    return float((phi @ gk) / (phi @ g0)) ** (1.0 / p)


# ---------------------------------------------------------------------------
# vanishing moments
# ---------------------------------------------------------------------------


def vanishing_moment_order(family: str, m: int) -> int:
    """Order of the zero of |psihat| at w = 0, measured by a log-log slope
    over two small frequencies and rounded to the nearest integer."""
    if family == "spline":
        mag = lambda w: _spl.spline_wavelet_magnitude(m, w)
    elif family == "daubechies":
        mag = lambda w: _daub.daub_psi_hat_magnitude(m, w)
    else:
        raise ValueError(f"unknown family {family!r}")
    w1, w2 = 1e-3, 1e-2
    v1 = float(np.atleast_1d(mag(w1))[0])
    v2 = float(np.atleast_1d(mag(w2))[0])
    slope = (math.log(v2) - math.log(v1)) / (math.log(w2) - math.log(w1))
    r = int(round(slope))
    if abs(slope - r) > 0.15:
        raise RuntimeError(f"ambiguous vanishing-moment slope {slope!r}")
    return r


# ---------------------------------------------------------------------------
# wavelet-coefficient bound, directly checked
# ---------------------------------------------------------------------------


def _adaptive_real_line(f, tol, omega0=32.0, scale=None):
    """Integrate a decaying function over R by doubling the symmetric
    window until the increment is negligible.

    `scale` sets the size against which convergence is judged; without it
    the integral's own magnitude is used, which never terminates when the
    true value is zero (an odd integrand, say) -- callers integrating a
    signed quantity should pass the scale of the unsigned mass instead.
    """
    omega = omega0
    ref = 0.0 if scale is None else abs(scale)
    val = adaptive_integrate(f, -omega, omega, tol=tol, abs_floor=tol * ref).value
    for _ in range(12):
        floor = tol * max(abs(val), ref) + 1e-300
        lo = adaptive_integrate(f, -2.0 * omega, -omega, tol=10 * tol, abs_floor=floor).value
        hi = adaptive_integrate(f, omega, 2.0 * omega, tol=10 * tol, abs_floor=floor).value
        val += lo + hi
        omega *= 2.0
        if abs(lo) + abs(hi) <= 4.0 * tol * max(abs(val), ref) + 1e-300:
            return val
    raise RuntimeError("real-line integral did not settle under window doubling")


def coefficient_bound_check(
    fhat: Callable[[np.ndarray], np.ndarray],
    family: str,
    m: int,
    j: int = 0,
    nu: int = 0,
    k: int = 1,
    p: float = 2.0,
    tol: float = 1e-8,
) -> CoefficientBoundResult:
    """Compare |<f, psi_{j,nu}>| (computed on the Fourier side) against the
    coefficient bound C_{k,p} 2^{-j(k + 1/p - 1/2)} ||psihat||_p
    ||w^k fhat||_{p'}, and against the raw Holder product it descends
    from.  fhat must be a vectorized callable on real frequencies."""
    if family == "spline":
        psihat = lambda w: _spl.spline_wavelet_ft(m, w)
    elif family == "daubechies":
        psihat = lambda w: _daub.daub_psi_hat_complex(m, w)
    else:
        raise ValueError(f"unknown family {family!r}")
    q = p / (p - 1.0)
    two_j = 2.0 ** (-j)

    def inner_re(w):
        z = fhat(w) * np.conj(2.0 ** (-0.5 * j) * np.exp(-1j * two_j * nu * w) * psihat(two_j * w))
        return np.real(z)

    def inner_im(w):
        z = fhat(w) * np.conj(2.0 ** (-0.5 * j) * np.exp(-1j * two_j * nu * w) * psihat(two_j * w))
        return np.imag(z)

    # unsigned mass of the coefficient integrand: the scale that makes the
    # signed re/im integrals well-posed even when symmetry kills one of them
    mass = _adaptive_real_line(
        lambda w: 2.0 ** (-0.5 * j) * np.abs(fhat(w)) * np.abs(psihat(two_j * w)), tol
    )
    re = _adaptive_real_line(inner_re, tol, scale=mass)
    im = _adaptive_real_line(inner_im, tol, scale=mass)
    lhs = math.hypot(re, im)

    fw = lambda w: np.abs(w) ** (k * q) * np.abs(fhat(w)) ** q
    f_weight = _adaptive_real_line(fw, tol) ** (1.0 / q)

    const = ckp(family, "psi", m, k, p, tol=max(tol, 1e-10))
    stated = const.ratio * 2.0 ** (-j * (k + 1.0 / p - 0.5)) * const.denominator * f_weight
    holder = 2.0 ** (j * (1.0 / p - k - 0.5)) * const.numerator * f_weight
    return CoefficientBoundResult(
        family, m, j, nu, k, p, lhs, stated, holder,
        const.ratio, lhs <= stated * (1.0 + 1e-6) + 1e-300,
    )


# ---------------------------------------------------------------------------
# asymptotic sweeps
# ---------------------------------------------------------------------------


def richardson_extrapolate(m_values: Sequence[float], values: Sequence[float], exponent: float = 0.5) -> float:
    """Eliminate a c * m^{-exponent} correction using the last two points."""
    if len(m_values) < 2 or len(m_values) != len(values):
        raise ValueError("need at least two (m, value) pairs")
    s1 = float(m_values[-2]) ** (-exponent)
    s2 = float(m_values[-1]) ** (-exponent)
    v1, v2 = float(values[-2]), float(values[-1])
    return (v2 * s1 - v1 * s2) / (s1 - s2)

_NORM_SWEEP_ALPHA = {
    "splinePhiNorm": ("spline", "phi", -1),
    "splinePsiNorm": ("spline", "psi", -1),
    "splineDiagNorm": ("spline", "psi", None),   # alpha = -m
    "daubPhiNorm": ("daubechies", "phi", +1),
    "daubPsiNorm": ("daubechies", "psi", -1),
}

_LIMIT_SWEEP = {
    "daubPhiMinusK": ("daubechies", "phi"),
    "daubPsiK": ("daubechies", "psi"),
    "splinePhiK": ("spline", "phi"),
    "splinePsiK": ("spline", "psi"),
}

_DEFAULT_GRIDS = {
    "spline": (5, 10, 15, 20, 25, 30, 35, 40),
    "daubechies": (4, 6, 8, 10, 12, 14, 16, 18),
    "spline_rate": (10, 15, 20, 25),
    "daub_rate": (10, 12, 14, 16),
}


def asymptotic_sweep(
    target: str,
    m_grid: Optional[Sequence[int]] = None,
    k: int = 1,
    p: float = 2.0,
    tol: float = 1e-6,
) -> AsymptoticReport:
    """Measure a norm, constant-ratio limit, or geometric rate over a grid
    of orders and compare with its predicted value.

    Norm targets compare weighted_lp_norm against predict_norm_leading
    (per-m predictions); limit targets compare ckp ratios against the
    fixed predict_limit value; rate targets compare per-order roots of
    diagonal constants against predict_rate.  The report carries
    pointwise relative errors, a log-log decay fit of those errors, and
    the m^{-1/2}-Richardson extrapolant of the measured sequence.
    """
    if target in _NORM_SWEEP_ALPHA:
        family, part, sgn = _NORM_SWEEP_ALPHA[target]
        grid = tuple(m_grid) if m_grid is not None else _DEFAULT_GRIDS[family]
        measured, predicted = [], []
        for m in grid:
            alpha = -float(m) if sgn is None else sgn * float(k)
            measured.append(weighted_lp_norm(family, part, m, alpha, p, tol).value)
            if target == "splineDiagNorm":
                predicted.append(predict_norm_leading(target, m=m, p=p))
            else:
                predicted.append(predict_norm_leading(target, m=m, k=k, p=p))
        rich = richardson_extrapolate(grid, [ms / ps for ms, ps in zip(measured, predicted)])
    elif target in _LIMIT_SWEEP:
        family, part = _LIMIT_SWEEP[target]
        grid = tuple(m_grid) if m_grid is not None else _DEFAULT_GRIDS[family]
        measured = [ckp(family, part, m, k, p, tol).ratio for m in grid]
        if target == "daubPhiMinusK":
            lim = predict_limit(target, k=k, p=p)
        elif target == "daubPsiK":
            lim = predict_limit(target, k=k, p=p)
        else:
            lim = predict_limit(target, k=k)
        predicted = [lim] * len(grid)
        rich = richardson_extrapolate(grid, measured)
    elif target in ("splineGeom", "daubGeom", "geomRatio", "fixedKRatio"):
        if target == "splineGeom":
            grid = tuple(m_grid) if m_grid is not None else _DEFAULT_GRIDS["spline_rate"]
            measured = [ckp("spline", "psi", m, m, p, tol).ratio ** (1.0 / m) for m in grid]
        elif target == "daubGeom":
            grid = tuple(m_grid) if m_grid is not None else _DEFAULT_GRIDS["daub_rate"]
            measured = [ckp("daubechies", "psi", m, m, p, tol).ratio ** (1.0 / m) for m in grid]
        elif target == "geomRatio":
            grid = tuple(m_grid) if m_grid is not None else _DEFAULT_GRIDS["daub_rate"]
            measured = [
                (ckp("spline", "psi", m, m, p, tol).ratio / ckp("daubechies", "psi", m, m, p, tol).ratio)
                ** (1.0 / m)
                for m in grid
            ]
        else:
            grid = tuple(m_grid) if m_grid is not None else _DEFAULT_GRIDS["daub_rate"]
            measured = [
                (ckp("spline", "psi", m, k, p, tol).ratio / ckp("daubechies", "psi", m, k, p, tol).ratio)
                ** (1.0 / k)
                for m in grid
            ]
        lim = predict_rate(target)
        predicted = [lim] * len(grid)
        rich = richardson_extrapolate(grid, measured)
    else:
        raise ValueError(f"unknown sweep target {target!r}")

    rel = [abs(ms - ps) / abs(ps) for ms, ps in zip(measured, predicted)]
    lm = np.log(np.asarray(grid, dtype=float))
    le = np.log(np.maximum(rel, 1e-300))
    slope = float(np.polyfit(lm, le, 1)[0]) if len(grid) >= 2 else math.nan
    return AsymptoticReport(
        target, tuple(grid), tuple(measured), tuple(predicted), tuple(rel), slope, rich
    )
