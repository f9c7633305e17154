"""Shared numerical kernels: adaptive quadrature, bracketed root finding,
polynomial root isolation in exact arithmetic, and series summation.

Everything in this module is wavelet-agnostic.  The family modules build on
these primitives, and the test suite exercises them directly against
elementary closed forms.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "Interval",
    "QuadratureResult",
    "PolynomialReal",
    "adaptive_integrate",
    "find_root_bracketed",
    "poly_real_roots",
    "poly_complex_roots",
    "sum_alternating_series",
]


@dataclass(frozen=True)
class Interval:
    """Nonempty finite interval [a, b]."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise ValueError(f"degenerate interval [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    panels: int


class PolynomialReal:
    """Dense real polynomial with coefficients in ascending degree order."""

    def __init__(self, coeffs: Sequence[float]):
        c = [float(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        self.coeffs = tuple(c) if c else (0.0,)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "PolynomialReal":
        if self.degree == 0:
            return PolynomialReal([0.0])
        return PolynomialReal([i * c for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        return f"PolynomialReal({list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# adaptive quadrature: nested Gauss-Legendre 7/15 pair, worst panel first
# ---------------------------------------------------------------------------

_GL7_X, _GL7_W = np.polynomial.legendre.leggauss(7)
_GL15_X, _GL15_W = np.polynomial.legendre.leggauss(15)


def _eval_vec(f, x: np.ndarray) -> np.ndarray:
    """Evaluate f on an array, falling back to a scalar loop if needed."""
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape != x.shape:
            raise ValueError
        return y
    except (TypeError, ValueError):
        return np.array([float(f(float(xi))) for xi in x])


def _panel_pair(f, a: float, b: float):
    h = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    y15 = _eval_vec(f, mid + h * _GL15_X)
    i15 = h * float(np.dot(_GL15_W, y15))
    y7 = _eval_vec(f, mid + h * _GL7_X)
    i7 = h * float(np.dot(_GL7_W, y7))
    return i15, abs(i15 - i7)


def adaptive_integrate(
    f: Callable,
    a: float,
    b: float,
    tol: float = 1e-10,
    budget: int = 100_000,
    breakpoints: Optional[Sequence[float]] = None,
    abs_floor: Optional[float] = None,
) -> QuadratureResult:
    """Integrate f over [a, b] by adaptive bisection of the worst panel.

    Each panel is estimated with a nested Gauss-Legendre 7/15 pair; the
    error indicator is |I15 - I7| summed over panels.  Refinement stops once
    the indicator drops below tol * |integral| + abs_floor; abs_floor
    defaults to tol, which treats tol as a relative target with an absolute
    floor of the same size.  Pass abs_floor=0.0 for a purely relative
    target (needed when the integral itself is many orders of magnitude
    below 1).  Exhausting the panel budget raises RuntimeError rather than
    returning a value that pretends to be converged.

    `breakpoints` seeds the initial partition (useful when the integrand has
    known kinks or scale changes); values outside (a, b) are ignored.
    """
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ValueError(f"bad integration interval [{a}, {b}]")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if abs_floor is None:
        abs_floor = tol

    pts = [a, b]
    if breakpoints is not None:
        pts = sorted({a, b, *(float(p) for p in breakpoints if a < p < b)})

    heap = []
    serial = 0
    for lo, hi in zip(pts, pts[1:]):
        v, e = _panel_pair(f, lo, hi)
        heapq.heappush(heap, (-e, serial, lo, hi, v))
        serial += 1

    while True:
        total = math.fsum(item[4] for item in heap)
        toterr = math.fsum(-item[0] for item in heap)
        if toterr <= tol * abs(total) + abs_floor:
            return QuadratureResult(total, toterr, len(heap))
        if len(heap) >= budget:
            raise RuntimeError(
                f"adaptive_integrate: panel budget {budget} exhausted "
                f"(error indicator {toterr:.3e})"
            )
        neg_e, _, lo, hi, _v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # interval at machine resolution; keep it and accept its estimate
            heapq.heappush(heap, (0.0, serial, lo, hi, _v))
            serial += 1
            continue
        for l2, h2 in ((lo, mid), (mid, hi)):
            v2, e2 = _panel_pair(f, l2, h2)
            heapq.heappush(heap, (-e2, serial, l2, h2, v2))
            serial += 1


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------


def find_root_bracketed(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-15,
    max_iter: int = 300,
) -> float:
    """Locate the root of f on a sign-changing bracket [a, b].

    Hybrid scheme: a secant step is taken whenever it lands strictly inside
    the current bracket, otherwise the bracket is bisected, so convergence
    is locally superlinear and globally monotone.  tol is relative to
    max(1, |root|).
    """
    fa, fb = float(f(a)), float(f(b))
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if not (a < b) or fa * fb > 0:
        raise ValueError(f"f has no sign change on [{a}, {b}]")
    lo, hi, flo, fhi = a, b, fa, fb
    for _ in range(max_iter):
        if hi - lo <= tol * max(1.0, abs(lo) + abs(hi)):
            break
        x = hi - fhi * (hi - lo) / (fhi - flo) if fhi != flo else 0.5 * (lo + hi)
        if not (lo < x < hi):
            x = 0.5 * (lo + hi)
        # avoid stalling at a bracket edge
        margin = 0.01 * (hi - lo)
        x = min(max(x, lo + margin), hi - margin)
        fx = float(f(x))
        if fx == 0.0:
            return x
        if flo * fx < 0:
            hi, fhi = x, fx
        else:
            lo, flo = x, fx
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# polynomial roots, companion-matrix free
# ---------------------------------------------------------------------------


def _as_fraction_coeffs(coeffs) -> list:
    if isinstance(coeffs, PolynomialReal):
        coeffs = coeffs.coeffs
    out = []
    for c in coeffs:
        if isinstance(c, Fraction):
            out.append(c)
        elif isinstance(c, int):
            out.append(Fraction(c))
        else:
            out.append(Fraction(float(c)))  # exact binary value of the float
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_eval_frac(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_deriv_frac(p):
    return [i * c for i, c in enumerate(p)][1:] or [Fraction(0)]


def _poly_divmod_frac(num, den):
    num = num[:]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    dlead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        coef = num[i + len(den) - 1] / dlead
        q[i] = coef
        for j, dc in enumerate(den):
            num[i + j] -= coef * dc
    rem = num[: len(den) - 1]
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return q, (rem or [Fraction(0)])


def _sturm_chain(p):
    chain = [p, _poly_deriv_frac(p)]
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        _, r = _poly_divmod_frac(chain[-2], chain[-1])
        if len(r) == 1 and r[0] == 0:
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval_frac(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _squarefree(p):
    # p / gcd(p, p'), gcd by Euclid over the rationals
    a, b = p[:], _poly_deriv_frac(p)
    while not (len(b) == 1 and b[0] == 0):
        _, r = _poly_divmod_frac(a, b)
        a, b = b, r
    if len(a) == 1:  # gcd is a constant: p already squarefree
        return p
    q, _ = _poly_divmod_frac(p, a)
    return q


def poly_real_roots(coeffs) -> list:
    """All real roots of a real polynomial, ascending, to near machine precision.

    Roots are isolated with an exact-arithmetic Sturm chain (so no root is
    missed and none is spurious) and then polished by bisection plus Newton
    steps on the original polynomial.  Multiple roots are reported once.
    """
    p = _as_fraction_coeffs(coeffs)
    if len(p) <= 1:
        raise ValueError("constant polynomial has no well-defined root set")
    p = _squarefree(p)
    if len(p) == 2:  # linear
        return [float(-p[0] / p[1])]

    chain = _sturm_chain(p)
    lead = abs(p[-1])
    bound = Fraction(1) + max(abs(c) for c in p[:-1]) / lead

    def count(lo: Fraction, hi: Fraction) -> int:
        return _sign_changes(chain, lo) - _sign_changes(chain, hi)

    isolated = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            isolated.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _poly_eval_frac(p, mid) == 0:
            isolated.append((mid, mid))
            eps = (hi - lo) / 4096
            stack.append((lo, mid - eps))
            stack.append((mid + eps, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))

    pf = PolynomialReal([float(c) for c in p])
    dpf = pf.derivative()
    roots = []
    for lo, hi in sorted(isolated):
        if lo == hi:
            roots.append(float(lo))
            continue
        # exact bisection until the bracket is tight enough for Newton
        flo = _poly_eval_frac(p, lo)
        for _ in range(90):
            if hi - lo < Fraction(1, 10**20) * max(1, abs(lo)):
                break
            mid = (lo + hi) / 2
            fmid = _poly_eval_frac(p, mid)
            if fmid == 0:
                lo = hi = mid
                break
            if (flo > 0) == (fmid > 0):
                lo, flo = mid, fmid
            else:
                hi = mid
        x = float((lo + hi) / 2)
        for _ in range(4):  # Newton polish in floating point
            d = dpf(x)
            if d == 0:
                break
            step = pf(x) / d
            if not math.isfinite(step):
                break
            x -= step
        roots.append(x)
    return sorted(roots)


def poly_complex_roots(coeffs) -> list:
    """All complex roots via Aberth-Ehrlich simultaneous iteration.

    Deterministic start: points spread on the Cauchy-bound circle.  Returned
    sorted by (real, imag).
    """
    if isinstance(coeffs, PolynomialReal):
        coeffs = coeffs.coeffs
    c = np.asarray([complex(v) for v in coeffs], dtype=complex)
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    n = len(c) - 1
    if n < 1:
        raise ValueError("constant polynomial has no well-defined root set")
    mon = c / c[-1]
    radius = 1.0 + max(abs(mon[:-1]))
    ang = 2.0 * np.pi * (np.arange(n) + 0.375) / n
    z = radius * np.exp(1j * ang)

    dmon = mon[1:] * np.arange(1, n + 1)

    def horner(cs, x):
        acc = np.zeros_like(x)
        for cc in cs[::-1]:
            acc = acc * x + cc
        return acc

    for _ in range(400):
        pz = horner(mon, z)
        dz = horner(dmon, z)
        w = np.where(dz != 0, pz / np.where(dz == 0, 1, dz), 0.0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w * s
        step = np.where(denom != 0, w / np.where(denom == 0, 1, denom), w)
        z = z - step
        if np.max(np.abs(step)) < 1e-15 * (1.0 + np.max(np.abs(z))):
            break
    # final Newton touch-up
    for _ in range(3):
        pz = horner(mon, z)
        dz = horner(dmon, z)
        z = z - np.where(dz != 0, pz / np.where(dz == 0, 1, dz), 0.0)
    return sorted((complex(v) for v in z), key=lambda v: (v.real, v.imag))


# ---------------------------------------------------------------------------
# series summation
# ---------------------------------------------------------------------------


def _term_block(term, lo: int, hi: int) -> np.ndarray:
    idx = np.arange(lo, hi)
    try:
        t = np.asarray(term(idx), dtype=float)
        if t.shape != idx.shape:
            raise ValueError
        return t
    except (TypeError, ValueError):
        return np.array([float(term(int(i))) for i in idx])


def _cvz_accelerate(avals: np.ndarray) -> float:
    # Chebyshev-based acceleration for alternating sums of totally monotone
    # terms; error shrinks like (3 + sqrt(8))^{-n}.
    n = len(avals)
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b, c, s = -1.0, -d, 0.0
    for k in range(n):
        c = b - c
        s += c * avals[k]
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0))
    return s / d


def sum_alternating_series(
    term: Callable, tol: float = 1e-14, max_terms: int = 30_000_000
) -> float:
    """Sum term(0) + term(1) + ... for terms of eventually constant |pattern|.

    Two regimes, chosen by inspecting the leading terms:

    * strictly alternating signs with decreasing magnitude: direct summation
      with the alternating-series remainder bound; if the bound cannot reach
      tol in a reasonable number of terms, a certified accelerated
      evaluation is used instead (two runs at different depths must agree).
    * all terms of one sign: direct block summation with geometric-ratio
      extrapolation of the partial-sum tail; stops when two successive
      extrapolants agree within tol.  This assumes a smoothly decaying
      (power-law or geometric) tail, which covers every series this package
      produces.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    probe = [float(term(i)) for i in range(8)]
    nz = [t for t in probe if t != 0.0]
    if len(nz) < 2:
        raise ValueError("cannot classify series from its leading terms")
    alternating = all(x * y < 0 for x, y in zip(nz, nz[1:]))

    if alternating:
        # direct pass with the remainder bound
        s = 0.0
        comp = 0.0
        for i in range(200_000):
            t = float(term(i))
            y = t - comp
            tt = s + y
            comp = (tt - s) - y
            s = tt
            if abs(t) <= tol:
                return s
        # magnitudes decay too slowly: accelerate
        sign0 = 1.0 if probe[0] >= 0 else -1.0
        a = np.abs(_term_block(term, 0, 96))
        v1 = _cvz_accelerate(a[:72])
        v2 = _cvz_accelerate(a[:96])
        if abs(v2 - v1) > max(tol, 1e-15 * abs(v2)):
            raise RuntimeError("accelerated alternating sum failed to stabilise")
        return sign0 * v2

    # same-sign branch
    s = 0.0
    n = 0
    nxt = 64
    snapshots = []
    prev_extrap = None
    while n < max_terms:
        block = _term_block(term, n, nxt)
        s = math.fsum((s, float(np.sum(block))))
        n = nxt
        nxt *= 2
        snapshots.append(s)
        if len(snapshots) >= 3:
            s0, s1, s2 = snapshots[-3:]
            d1, d2 = s1 - s0, s2 - s1
            if d2 == 0.0:
                return s2
            if d1 != 0.0:
                r = d2 / d1
                if 0.0 < r < 0.995:
                    e = s2 + d2 * r / (1.0 - r)
                    if prev_extrap is not None and abs(e - prev_extrap) <= 0.5 * tol * max(
                        1.0, abs(e)
                    ):
                        return e
                    prev_extrap = e
    raise RuntimeError(f"series did not converge within {max_terms} terms")
