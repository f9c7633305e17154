"""Closed-form constants: the Favard sequence, stationary-point constants of
the two spline profiles, sharp-inequality constants, and the predicted
limits / geometric rates / leading-order norm formulas that the measurement
side of the package is compared against.

Nothing in this module integrates anything: every value is a root of an
explicit equation or an explicit expression in such roots, so the whole
module evaluates in well under a second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.special import zeta as _zeta

from .numerics import find_root_bracketed

__all__ = [
    "FavardTable",
    "favard",
    "favard_table",
    "SplineProfileConstants",
    "spline_constants",
    "spline_bernstein_constant",
    "spline_wavelet_lower_bound",
    "predict_limit",
    "predict_rate",
    "predict_norm_leading",
    "LIMIT_TARGETS",
    "RATE_TARGETS",
    "NORM_TARGETS",
]

_FOUR_OVER_PI = 4.0 / math.pi


@lru_cache(maxsize=None)
def favard(j: int) -> float:
    """Favard constant K_j.

    K_0 = 1; odd j via the Dirichlet lambda function
    (4/pi)(1 - 2^{-(j+1)}) zeta(j+1); even j >= 2 via the Hurwitz-zeta
    difference (4/pi) 4^{-(j+1)} (zeta(j+1, 1/4) - zeta(j+1, 3/4)).
    Absolute accuracy is a few ulp for every j up to several hundred.
    """
    if not isinstance(j, (int, np.integer)) or j < 0:
        raise ValueError(f"Favard index must be a nonnegative integer, got {j!r}")
    if j == 0:
        return 1.0
    s = j + 1
    if j % 2 == 1:
        return _FOUR_OVER_PI * (1.0 - 2.0 ** (-s)) * float(_zeta(s))
    return _FOUR_OVER_PI * 4.0 ** (-s) * float(_zeta(s, 0.25) - _zeta(s, 0.75))


@dataclass(frozen=True)
class FavardTable:
    """K_0 .. K_{j_max} as a dense array."""

    j_max: int
    values: tuple

    @classmethod
    def build(cls, j_max: int = 200) -> "FavardTable":
        if j_max < 0:
            raise ValueError("j_max must be nonnegative")
        return cls(j_max, tuple(favard(j) for j in range(j_max + 1)))

    def __getitem__(self, j: int) -> float:
        return self.values[j]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values)


def favard_table(j_max: int = 200) -> FavardTable:
    return FavardTable.build(j_max)


# ---------------------------------------------------------------------------
# stationary-point constants of the two spline frequency profiles
# ---------------------------------------------------------------------------
#
# Scaling side: s(x) = sin(x)^2 / x on (0, pi), maximised where
# 2 cot(x) = 1/x.  Wavelet side: b(t) = sin(2t)^2 / ((pi - 2t) t^2) on
# (0, pi/2), maximised where (2 pi t - 4 t^2) cos(2t) + (3t - pi) sin(2t) = 0
# (that equation is exactly the stationarity of b cleared of denominators).
# The curvature constants are -(1/2) (ln profile)'' at the maximiser,
# differentiated analytically.


@dataclass(frozen=True)
class SplineProfileConstants:
    xi1: float   # maximiser of sin^2(x)/x
    lam1: float  # its maximum value
    Lam1: float  # half the negative log-curvature there
    xi2: float   # maximiser of the wavelet profile
    lam2: float  # half the wavelet profile's maximum value
    Lam2: float  # half the negative log-curvature there

    def as_dict(self) -> dict:
        return {
            "xi1": self.xi1,
            "lam1": self.lam1,
            "Lam1": self.Lam1,
            "xi2": self.xi2,
            "lam2": self.lam2,
            "Lam2": self.Lam2,
            "two_xi1": 2.0 * self.xi1,
            "psi_peak_scale": 2.0 * math.pi - 4.0 * self.xi2,
        }


@lru_cache(maxsize=1)
def spline_constants() -> SplineProfileConstants:
    xi1 = find_root_bracketed(lambda x: 2.0 / math.tan(x) - 1.0 / x, 0.5, 1.5)
    lam1 = math.sin(xi1) ** 2 / xi1
    Lam1 = 1.0 / math.sin(xi1) ** 2 - 1.0 / (2.0 * xi1 * xi1)

    def wavelet_stationarity(u: float) -> float:
        return (2.0 * math.pi * u - 4.0 * u * u) * math.cos(2.0 * u) + (
            3.0 * u - math.pi
        ) * math.sin(2.0 * u)

    xi2 = find_root_bracketed(wavelet_stationarity, 0.05, 0.6)
    lam2 = math.sin(2.0 * xi2) ** 2 / (2.0 * xi2 * xi2 * (math.pi - 2.0 * xi2))
    Lam2 = (
        4.0 / math.sin(2.0 * xi2) ** 2
        - 2.0 / (math.pi - 2.0 * xi2) ** 2
        - 1.0 / (xi2 * xi2)
    )
    return SplineProfileConstants(xi1, lam1, Lam1, xi2, lam2, Lam2)


# ---------------------------------------------------------------------------
# sharp-inequality constants and lower bounds
# ---------------------------------------------------------------------------


def spline_bernstein_constant(m: int, k: int, h: int = 1) -> float:
    """(pi h)^k sqrt(K_{2(m-k)+1} / K_{2m+1}), the derivative-inequality
    constant for splines of order m on the 1/h-step grid, 1 <= k < m."""
    if not (isinstance(m, (int, np.integer)) and isinstance(k, (int, np.integer))):
        raise ValueError("m and k must be integers")
    if not 1 <= k < m:
        raise ValueError(f"need 1 <= k < m, got k={k}, m={m}")
    if not (isinstance(h, (int, np.integer)) and h >= 1):
        raise ValueError(f"h must be a positive integer, got {h!r}")
    return (math.pi * h) ** k * math.sqrt(favard(2 * (m - k) + 1) / favard(2 * m + 1))


def spline_wavelet_lower_bound(m: int, k: int) -> float:
    """(2 pi)^{-k} sqrt(K_{2(m+k)+1} / K_{2m+1}): a floor under the measured
    wavelet coefficient constant of order m at weight exponent k."""
    if not (isinstance(m, (int, np.integer)) and m >= 1 and isinstance(k, (int, np.integer)) and k >= 0):
        raise ValueError("need integer m >= 1 and integer k >= 0")
    return (2.0 * math.pi) ** (-k) * math.sqrt(favard(2 * (m + k) + 1) / favard(2 * m + 1))


# ---------------------------------------------------------------------------
# predicted limits, rates, and leading-order norms
# ---------------------------------------------------------------------------

LIMIT_TARGETS = (
    "daubPhiMinusK",
    "daubPsiK",
    "splinePhiK",
    "splinePsiK",
    "phiPsiRatioDaub",
    "phiPsiRatioSpline",
)

RATE_TARGETS = ("daubGeom", "splineGeom", "geomRatio", "fixedKRatio")

NORM_TARGETS = (
    "splinePhiNorm",
    "splinePsiNorm",
    "splineDiagNorm",
    "daubPhiNorm",
    "daubPsiNorm",
    "daubPhiAlphaNorm",
)


def _need(value, name):
    if value is None:
        raise ValueError(f"this target requires parameter {name!r}")
    return value


def predict_limit(
    target: str,
    k: Optional[int] = None,
    p: Optional[float] = None,
    k1: Optional[int] = None,
    k2: Optional[int] = None,
) -> float:
    """Large-order limit of a coefficient-constant (or constant ratio).

    Targets: daubPhiMinusK(k, p), daubPsiK(k, p) [requires p*k > 1],
    splinePhiK(k), splinePsiK(k), phiPsiRatioDaub(k1, k2, p),
    phiPsiRatioSpline().
    """
    c = spline_constants()
    if target == "daubPhiMinusK":
        k, p = _need(k, "k"), _need(p, "p")
        if k < 0 or p <= 1:
            raise ValueError("need k >= 0 and p > 1")
        return math.pi ** k / (1.0 + p * k) ** (1.0 / p)
    if target == "daubPsiK":
        k, p = _need(k, "k"), _need(p, "p")
        if p <= 1:
            raise ValueError("need p > 1")
        if p * k <= 1.0:
            raise ValueError(
                f"the fixed-k limit for the orthonormal wavelet needs p*k > 1 "
                f"(got p*k = {p * k}); no value is defined at or below the pole"
            )
        return math.pi ** (-k) * (
            (1.0 - 2.0 ** (1.0 - p * k)) / (p * k - 1.0)
        ) ** (1.0 / p)
    if target == "splinePhiK":
        k = _need(k, "k")
        return (2.0 * c.xi1) ** (-k)
    if target == "splinePsiK":
        k = _need(k, "k")
        return (2.0 * math.pi - 4.0 * c.xi2) ** (-k)
    if target == "phiPsiRatioDaub":
        k1, k2, p = _need(k1, "k1"), _need(k2, "k2"), _need(p, "p")
        return predict_limit("daubPhiMinusK", k=k1, p=p) / predict_limit(
            "daubPsiK", k=k2, p=p
        )
    if target == "phiPsiRatioSpline":
        return math.sqrt(c.lam1 / (c.xi1 * c.lam2 ** 2))
    raise ValueError(f"unknown limit target {target!r}; choose from {LIMIT_TARGETS}")


def predict_rate(target: str) -> float:
    """Geometric rate (per unit order) of a diagonal-index constant."""
    c = spline_constants()
    if target == "daubGeom":
        return 0.5
    if target == "splineGeom":
        return 16.0 / (c.lam2 * math.pi ** 4)
    if target == "geomRatio":
        return 32.0 / (c.lam2 * math.pi ** 4)
    if target == "fixedKRatio":
        return math.pi / (2.0 * math.pi - 4.0 * c.xi2)
    raise ValueError(f"unknown rate target {target!r}; choose from {RATE_TARGETS}")


def predict_norm_leading(
    target: str,
    m: Optional[int] = None,
    k: Optional[int] = None,
    p: Optional[float] = None,
) -> float:
    """Predicted leading-order value of a weighted Fourier L_p norm.

    Spline targets depend on m (the prediction is an asymptotic formula in
    m); the orthonormal-family targets are the m -> infinity limits of the
    corresponding norms, so m is accepted and ignored there.
    """
    c = spline_constants()
    p = _need(p, "p")
    if p <= 1:
        raise ValueError("need p > 1")
    if target == "splinePhiNorm":
        m, k = _need(m, "m"), _need(k, "k")
        return (
            2.0 ** (3.0 / p)
            * (2.0 * math.pi) ** (-(1.0 - 1.0 / p) / 2.0)
            * (2.0 * c.xi1) ** (-k)
            * math.sqrt(c.Lam1 * m * p) ** (-1.0 / p)
            * (c.lam1 / c.xi1) ** (m / 2.0)
        )
    if target == "splinePsiNorm":
        m, k = _need(m, "m"), _need(k, "k")
        return (
            2.0 ** (3.0 / p)
            * (2.0 * math.pi) ** (-(1.0 - 1.0 / p) / 2.0)
            * (2.0 * math.pi - 4.0 * c.xi2) ** (-k)
            * math.sqrt(2.0 * c.Lam2 * m * p) ** (-1.0 / p)
            * c.lam2 ** m
        )
    if target == "splineDiagNorm":
        m = _need(m, "m")
        if k is not None and k != m:
            raise ValueError("the diagonal norm has k tied to m; pass k=None or k=m")
        return (
            2.0 ** (1.0 / p)
            * (2.0 * math.pi) ** (-(1.0 - 1.0 / p) / 2.0)
            * (math.pi / math.sqrt(math.pi ** 2 - 8.0)) ** (1.0 / p)
            * math.sqrt(2.0 * m * p) ** (-1.0 / p)
            * (16.0 / math.pi ** 4) ** m
        )
    if target in ("daubPhiNorm", "daubPhiAlphaNorm"):
        a = float(_need(k, "k"))
        if p * a <= -1.0:
            raise ValueError("need p*alpha > -1 for an integrable weight")
        return (2.0 * math.pi) ** -0.5 * (
            2.0 * math.pi ** (p * a + 1.0) / (p * a + 1.0)
        ) ** (1.0 / p)
    if target == "daubPsiNorm":
        k = _need(k, "k")
        if p * k <= 1.0:
            raise ValueError("need p*k > 1; the limit norm diverges otherwise")
        return (2.0 * math.pi) ** -0.5 * (
            2.0 * math.pi ** (1.0 - p * k) * (1.0 - 2.0 ** (1.0 - p * k)) / (p * k - 1.0)
        ) ** (1.0 / p)
    raise ValueError(f"unknown norm target {target!r}; choose from {NORM_TARGETS}")
