import math

import numpy as np
import pytest

from bernwave.numerics import (
    PolynomialReal,
    adaptive_integrate,
    find_root_bracketed,
    poly_complex_roots,
    poly_real_roots,
    sum_alternating_series,
)


def test_adaptive_integrate_sin():
    r = adaptive_integrate(np.sin, 0.0, math.pi, tol=1e-12)
    assert abs(r.value - 2.0) < 1e-12
    assert r.error_estimate < 1e-12 * 2.0 * abs(r.value)  # indicator is relative
    assert r.panels >= 1


def test_adaptive_integrate_arctan_derivative():
    r = adaptive_integrate(lambda x: 4.0 / (1.0 + x * x), 0.0, 1.0, tol=1e-13)
    assert abs(r.value - math.pi) < 1e-12


def test_adaptive_integrate_kink_with_breakpoint():
    # |x - 1| on [0, 3]: exact area 0.5 + 2 = 2.5
    r = adaptive_integrate(lambda x: np.abs(x - 1.0), 0.0, 3.0, tol=1e-12, breakpoints=[1.0])
    assert abs(r.value - 2.5) < 1e-11


def test_adaptive_integrate_scalar_callable():
    r = adaptive_integrate(lambda x: math.exp(-x), 0.0, 10.0, tol=1e-12)
    assert abs(r.value - (1.0 - math.exp(-10.0))) < 1e-11


def test_find_root_cos():
    assert abs(find_root_bracketed(math.cos, 1.0, 2.0) - math.pi / 2.0) < 1e-14


def test_find_root_sqrt2():
    r = find_root_bracketed(lambda x: x * x - 2.0, 0.0, 2.0)
    assert abs(r - math.sqrt(2.0)) < 1e-14


def test_find_root_requires_bracket():
    with pytest.raises(ValueError):
        find_root_bracketed(lambda x: x * x + 1.0, -1.0, 1.0)


def test_poly_real_roots_cubic():
    # (x - 1)(x - 2)(x + 3) = 6 - 7x + 0x^2 + x^3
    roots = poly_real_roots([6.0, -7.0, 0.0, 1.0])
    np.testing.assert_allclose(roots, [-3.0, 1.0, 2.0], atol=1e-12)


def test_poly_real_roots_multiple_root_reported_once():
    roots = poly_real_roots([1.0, -2.0, 1.0])  # (x - 1)^2
    np.testing.assert_allclose(roots, [1.0], atol=1e-12)


def test_poly_real_roots_none():
    assert poly_real_roots([1.0, 0.0, 1.0]) == []


def test_poly_real_roots_close_pair():
    # roots at 1 and 1 + 1e-7: Sturm isolation must separate them.  The
    # coefficient rounding alone moves roots this close together by
    # ~1e-16 / 1e-7, so only ask for agreement well beyond that level.
    a, b = 1.0, 1.0 + 1e-7
    roots = poly_real_roots([a * b, -(a + b), 1.0])
    assert len(roots) == 2
    np.testing.assert_allclose(roots, [a, b], atol=1e-8)
    assert roots[1] - roots[0] == pytest.approx(1e-7, rel=0.1)


def test_poly_complex_roots_quadratic():
    roots = poly_complex_roots([1.0, 0.0, 1.0])
    np.testing.assert_allclose(roots, [-1j, 1j], atol=1e-12)


def test_poly_complex_roots_match_real():
    c = [6.0, -7.0, 0.0, 1.0]
    z = poly_complex_roots(c)
    np.testing.assert_allclose(sorted(r.real for r in z), [-3.0, 1.0, 2.0], atol=1e-10)
    assert max(abs(r.imag) for r in z) < 1e-10


def test_polynomial_real_eval_and_derivative():
    p = PolynomialReal([1.0, 0.0, -3.0, 2.0])
    assert p.degree == 3
    assert abs(p(2.0) - (1.0 - 12.0 + 16.0)) < 1e-14
    dp = p.derivative()
    assert dp.coeffs == (0.0, -6.0, 6.0)


def test_alternating_series_log2():
    s = sum_alternating_series(lambda n: (-1.0) ** n / (n + 1.0), tol=1e-13)
    assert abs(s - math.log(2.0)) < 1e-12


def test_alternating_series_leibniz():
    # slowly converging: forces the accelerated path
    s = sum_alternating_series(lambda n: (-1.0) ** n / (2.0 * n + 1.0), tol=1e-12)
    assert abs(s - math.pi / 4.0) < 1e-11


def test_same_sign_series_geometric():
    s = sum_alternating_series(lambda n: 0.5 ** n, tol=1e-13)
    assert abs(s - 2.0) < 1e-12
