"""Engine tests: certified norms against exact anchors, frozen regression
values, scaling covariance, the inequality scan, and the sweep machinery.

Frozen numbers were produced by this package at tol <= 1e-8 and
cross-checked against independent dense quadrature before being committed.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from bernwave.constants import favard, spline_bernstein_constant, spline_wavelet_lower_bound
from bernwave.daubechies import daub_phi_hat_magnitude
from bernwave.norms import (
    asymptotic_sweep,
    bernstein_violation_scan,
    ckp,
    coefficient_bound_check,
    fejer_extremal_ratio,
    richardson_extrapolate,
    vanishing_moment_order,
    verify_bernstein_spline,
    weighted_lp_norm,
)
from bernwave.splines import bspline_ft_magnitude, bspline_integer_values, spline_wavelet, spline_wavelet_magnitude

CKP_FROZEN = {
    ("spline", "phi", 5, 1, 2.0): 1.062729357464723,
    ("spline", "psi", 5, 1, 2.0): 0.2022468274712694,
    ("spline", "psi", 10, 1, 2.0): 0.19822945949020512,
    ("spline", "psi", 15, 1, 2.0): 0.1969520589248631,
    ("spline", "psi", 5, 2, 1.5): 0.04399112679934588,
    ("daubechies", "psi", 10, 2, 1.5): 0.05653016509149296,
    ("daubechies", "phi", 10, 1, 3.0): 1.9469723788789524,
}


# ---------------------------------------------------------------------------
# exact anchors
# ---------------------------------------------------------------------------


def test_box_spline_parseval():
    r = weighted_lp_norm("spline", "phi", 1, 0.0, 2.0)
    assert r.value == pytest.approx(1.0, rel=1e-9)
    assert r.certified_rel_error <= 1e-8


def test_spline_phi_l2_exact_autocorrelation():
    # ||N_m||_2^2 = N_{2m}(m), an exact rational
    for m in (2, 3, 5):
        exact = float(bspline_integer_values(2 * m)[m - 1])
        r = weighted_lp_norm("spline", "phi", m, 0.0, 2.0)
        assert r.value ** 2 == pytest.approx(exact, rel=1e-8)


def test_spline_psi_l2_exact_rational():
    # psi = sum_n d_n N_m(2x - n) with exact rational d; then
    # ||psi||^2 = (1/2) sum d_n d_{n'} N_{2m}(m + n - n')
    for m in (2, 3):
        q = spline_wavelet(m)
        binom = [Fraction((-1) ** j * math.comb(m, j)) for j in range(m + 1)]
        d = [Fraction(0)] * (len(q) + m)
        for v, qv in enumerate(q):
            for j, bj in enumerate(binom):
                d[v + j] += qv * bj
        vals = bspline_integer_values(2 * m)  # N_{2m}(1..2m-1)
        auto = {l: (vals[m - 1 + l] if abs(l) < m else Fraction(0)) for l in range(-2 * m, 2 * m + 1)}
        exact = Fraction(1, 2) * sum(
            dn * dn2 * auto.get(n - n2, Fraction(0))
            for n, dn in enumerate(d) for n2, dn2 in enumerate(d)
        )
        r = weighted_lp_norm("spline", "psi", m, 0.0, 2.0)
        assert r.value ** 2 == pytest.approx(float(exact), rel=1e-8)


def test_orthonormal_family_parseval():
    for m, part in ((3, "psi"), (4, "phi"), (6, "psi")):
        r = weighted_lp_norm("daubechies", part, m, 0.0, 2.0, tol=1e-6)
        assert r.value == pytest.approx(1.0, abs=5e-6)


def test_spline_phi_p3_against_dense_midpoint():
    # brute midpoint rule on [-200, 200]: the integrand decays like w^{-12}
    w = np.linspace(-200.0, 200.0, 2_000_001)[:-1] + 1e-4
    brute = (np.sum(bspline_ft_magnitude(4, np.abs(w)) ** 3) * 2e-4) ** (1.0 / 3.0)
    r = weighted_lp_norm("spline", "phi", 4, 0.0, 3.0)
    assert r.value == pytest.approx(brute, rel=1e-5)


def test_spline_psi_weighted_p2_against_dense_grid():
    # |w|^{-2} |psihat_3|^2 on a dense grid, trapezoid; head below 1e-3 is
    # O(w^{2m-2k}) = O(w^4) and negligible at this tolerance
    w = np.linspace(1e-3, 400.0 * math.pi, 2_000_000)
    y = w ** (-2.0) * spline_wavelet_magnitude(3, w) ** 2
    brute = (2.0 * np.trapezoid(y, w)) ** 0.5
    r = weighted_lp_norm("spline", "psi", 3, -1.0, 2.0)
    assert r.value == pytest.approx(brute, rel=1e-6)


def test_weighted_daub_phi_anchor():
    r = weighted_lp_norm("daubechies", "phi", 4, 0.5, 2.0)
    assert r.value == pytest.approx(1.2938788617049197, rel=1e-7)


# ---------------------------------------------------------------------------
# coefficient constants
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("key", sorted(CKP_FROZEN, key=str))
def test_ckp_frozen(key):
    family, part, m, k, p = key
    r = ckp(family, part, m, k, p)
    assert r.ratio == pytest.approx(CKP_FROZEN[key], rel=1e-7)
    assert r.certified_rel_error <= 2e-8
    assert r.numerator / r.denominator == r.ratio


def test_ckp_k_zero_is_exactly_one():
    assert ckp("spline", "psi", 5, 0, 2.0).ratio == 1.0
    assert ckp("daubechies", "phi", 6, 0, 2.0).ratio == 1.0


def test_ckp_limit_approach():
    lim = 1.0 / (2.0 * math.pi - 4.0 * 0.2853297245111641)
    c5 = CKP_FROZEN[("spline", "psi", 5, 1, 2.0)]
    c15 = ckp("spline", "psi", 15, 1, 2.0).ratio
    assert abs(c15 - lim) / lim < 0.15
    assert abs(c15 - lim) < abs(c5 - lim)


def test_ckp_dominates_favard_floor():
    for m, k in ((3, 1), (6, 2)):
        assert ckp("spline", "psi", m, k, 2.0).ratio > spline_wavelet_lower_bound(m, k)


def test_ckp_rejects_k_beyond_vanishing_order():
    with pytest.raises(ValueError):
        ckp("spline", "psi", 3, 4, 2.0)
    with pytest.raises(ValueError):
        ckp("daubechies", "psi", 2, 3, 2.0)
    with pytest.raises(ValueError):
        ckp("spline", "psi", 3, -1, 2.0)


def test_norm_query_validation():
    with pytest.raises(ValueError):
        weighted_lp_norm("spline", "phi", 3, -0.8, 1.5)  # alpha p <= -1
    with pytest.raises(ValueError):
        weighted_lp_norm("spline", "phi", 1, 0.8, 2.0)  # (m - alpha) p <= 1
    with pytest.raises(ValueError):
        weighted_lp_norm("spline", "phi", 3, 0.0, 1.0)  # p must exceed 1
    with pytest.raises(ValueError):
        weighted_lp_norm("hermite", "phi", 3, 0.0, 2.0)
    with pytest.raises(ValueError):
        weighted_lp_norm("spline", "chi", 3, 0.0, 2.0)
    with pytest.raises(ValueError):
        weighted_lp_norm("spline", "phi", 41, 0.0, 2.0)
    with pytest.raises(ValueError):
        weighted_lp_norm("daubechies", "phi", 21, 0.0, 2.0)


# ---------------------------------------------------------------------------
# scaling covariance:  || |w|^a fhat(s w) ||_p = s^{-a - 1/p} || |w|^a fhat ||_p
# ---------------------------------------------------------------------------


def test_scale_covariance_dyadic():
    base = weighted_lp_norm("spline", "psi", 3, -1.0, 2.0).value
    scaled = weighted_lp_norm("spline", "psi", 3, -1.0, 2.0, scale=2.0).value
    assert scaled / base == pytest.approx(2.0 ** 0.5, rel=1e-6)


def test_scale_covariance_generic_tight():
    a, p, s = 1.2, 2.5, 7.3
    base = weighted_lp_norm("spline", "phi", 3, a, p, tol=1e-12)
    scaled = weighted_lp_norm("spline", "phi", 3, a, p, tol=1e-12, scale=s)
    assert scaled.value / base.value == pytest.approx(s ** (-a - 1.0 / p), rel=1e-10)


def test_scale_covariance_daubechies():
    base = weighted_lp_norm("daubechies", "psi", 4, -1.0, 2.0, tol=1e-8)
    scaled = weighted_lp_norm("daubechies", "psi", 4, -1.0, 2.0, tol=1e-8, scale=4.0)
    assert scaled.value / base.value == pytest.approx(4.0 ** 0.5, rel=1e-6)


# ---------------------------------------------------------------------------
# sharp-inequality experiments
# ---------------------------------------------------------------------------


def test_fejer_exact_rationals():
    # j = 4 aliases the Fejer kernel onto exact lattice values
    assert fejer_extremal_ratio(2, 4) == pytest.approx(3.0, rel=1e-12)
    assert fejer_extremal_ratio(3, 4) == pytest.approx(2.5, rel=1e-12)


def test_fejer_frozen():
    assert fejer_extremal_ratio(2, 64) == pytest.approx(3.424510582152248, rel=1e-12)
    assert fejer_extremal_ratio(3, 64) == pytest.approx(3.0917347120042113, rel=1e-12)
    assert fejer_extremal_ratio(4, 4) == pytest.approx(2.2099142359450377, rel=1e-12)
    assert fejer_extremal_ratio(4, 64) == pytest.approx(3.0080553481845156, rel=1e-12)


def test_fejer_monotone_toward_bound():
    js = (4, 8, 16, 32, 64)
    for m in (2, 3, 4, 5):
        for p in (1.5, 2.0, 3.0):
            r = [fejer_extremal_ratio(m, j, k=1, p=p) for j in js]
            assert all(b > a for a, b in zip(r, r[1:])), (m, p, r)


def test_fejer_requires_k_below_m():
    with pytest.raises(ValueError):
        fejer_extremal_ratio(2, 8, k=2)


def test_violation_scan_frozen():
    n_checks, violations = bernstein_violation_scan()
    assert n_checks == 45000
    assert len(violations) == 19
    by_key = {}
    for m, k, h, p, idx, ratio in violations:
        by_key[(m, k, h, p)] = by_key.get((m, k, h, p), 0) + 1
        assert ratio > 1.0
    assert by_key == {(2, 1, 1, 1.5): 18, (3, 2, 1, 1.5): 1}
    worst = max(v[5] for v in violations)
    assert worst == pytest.approx(1.1680106287741279, rel=1e-10)


def test_verify_bernstein_reproduces_scan_violation():
    # regenerate the scan's random stream and replay its worst offender
    rng = np.random.default_rng(20260819)
    vecs = [rng.uniform(-1.0, 1.0, size=int(rng.integers(1, 9))) for _ in range(500)]
    r = verify_bernstein_spline(vecs[294], 2, 1, h=1, p=1.5)
    assert not r.ok
    assert r.ratio == pytest.approx(1.1680106287741279, rel=1e-9)


def test_verify_bernstein_smooth_vector_passes():
    r = verify_bernstein_spline([1.0, -0.5, 0.25], 3, 1, h=1, p=2.0)
    assert r.ok
    assert r.lhs <= r.rhs
    assert r.ratio == r.lhs / r.rhs


def test_verify_bernstein_h_scaling():
    # lhs/rhs carries the exact factor h^{-2k}: finer grids only loosen it
    c = [0.3, 1.0, -0.2, 0.5]
    r1 = verify_bernstein_spline(c, 4, 2, h=1, p=2.0)
    r2 = verify_bernstein_spline(c, 4, 2, h=3, p=2.0)
    assert r2.ratio == pytest.approx(r1.ratio * 3.0 ** -4, rel=1e-12)


def test_verify_bernstein_validation():
    with pytest.raises(ValueError):
        verify_bernstein_spline([1.0], 2, 2)
    with pytest.raises(ValueError):
        verify_bernstein_spline([], 3, 1)


# ---------------------------------------------------------------------------
# vanishing moments, bound check, sweeps
# ---------------------------------------------------------------------------


def test_vanishing_moment_orders():
    for m in (1, 2, 5, 8):
        assert vanishing_moment_order("spline", m) == m
        assert vanishing_moment_order("daubechies", m) == m


def test_coefficient_bound_holds_for_gaussian():
    fhat = lambda w: np.exp(-0.5 * w * w)
    for family, j, nu in (("spline", 0, 0), ("spline", 1, 2), ("daubechies", 0, 1)):
        r = coefficient_bound_check(fhat, family, 3, j=j, nu=nu, k=1, p=2.0, tol=1e-8)
        assert r.ok
        assert r.inner_product_abs <= r.stated_bound * (1.0 + 1e-6)
        assert r.stated_bound <= r.holder_bound * (1.0 + 1e-12)


def test_richardson_exact_on_model():
    grid = (5.0, 10.0, 20.0)
    vals = [3.0 + 5.0 * g ** -0.5 for g in grid]
    assert richardson_extrapolate(grid, vals) == pytest.approx(3.0, abs=1e-12)
    vals = [2.0 + 7.0 / g for g in grid]
    assert richardson_extrapolate(grid, vals, exponent=1.0) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(ValueError):
        richardson_extrapolate([5.0], [1.0])


def test_sweep_spline_psi_structure():
    rep = asymptotic_sweep("splinePsiK", m_grid=(5, 10, 15), k=1, p=2.0, tol=1e-6)
    assert rep.m_grid == (5, 10, 15)
    np.testing.assert_allclose(
        rep.measured,
        [CKP_FROZEN[("spline", "psi", m, 1, 2.0)] for m in (5, 10, 15)],
        rtol=1e-5,
    )
    assert rep.predicted[0] == rep.predicted[-1]  # fixed limit target
    assert rep.rel_error[-1] < rep.rel_error[0]
    assert math.isfinite(rep.richardson) and math.isfinite(rep.fitted_decay_exponent)


def test_sweep_unknown_target():
    with pytest.raises(ValueError):
        asymptotic_sweep("noSuchTarget")


def test_daub_tail_certificate_sigma():
    from bernwave.norms import _daub_tail_certificate

    cert = _daub_tail_certificate(4)
    assert cert.sigma == pytest.approx(3.797214049034376, abs=2e-3)
    assert cert.block == 12 and len(cert.log2_t) == 13
    assert cert.log2_t[0] == 0.0


def test_daub_mean_table_exact_small_orders():
    # transfer-operator octave means of the order-4 symbol product are
    # exact dyadic rationals at small depth
    from bernwave.norms import _daub_mean_table

    lq = _daub_mean_table(4)
    assert math.exp(lq[0]) == pytest.approx(1.0, rel=1e-14)
    assert math.exp(lq[1]) == pytest.approx(13.0, rel=1e-12)
    assert math.exp(lq[2]) == pytest.approx(128.0625, rel=1e-12)
    assert math.exp(lq[3]) == pytest.approx(1476.6875, rel=1e-12)
    assert math.exp(lq[5]) == pytest.approx(173716.90625, rel=1e-12)


def test_norm_result_certificate_fields():
    r = weighted_lp_norm("spline", "psi", 4, -1.0, 2.0, tol=1e-9)
    assert r.certified_rel_error <= 1e-9
    assert r.cutoff > 0.0 and r.tail_bound >= 0.0 and r.panels >= 1
    assert r.query.m == 4 and r.query.alpha == -1.0
