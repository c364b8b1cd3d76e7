import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import erf

from inducedpoly import (
    DomainError,
    Freud,
    HalfLineFreud,
    InducedDistribution,
    Jacobi,
    UnsupportedMeasureError,
    approx_median,
    get_distribution,
    idist,
    idist_freud,
    idist_halffreud,
    idist_halffreud_comp,
    idist_jacobi,
    jacobi_error_bound,
    jacobi_modified_table,
    recurrence_table,
)
from inducedpoly.evaluation import _clamp, default_quadrature_size, mrs_interval
from inducedpoly.oracle import freud_table, halfline_freud_table, oracle_idist


def test_median_examples():
    assert approx_median(Jacobi(1.7, 1.7), 9) == 0.0
    assert approx_median(Jacobi(0, 1), 1) == pytest.approx(1 / 9, rel=1e-15)
    assert approx_median(Jacobi(3, 0.5), 0) == 0.0
    assert approx_median(HalfLineFreud(1, 2.0), 12) == 50.0
    assert approx_median(Freud(2, 1), 11) == 0.0
    lo, hi = mrs_interval(1.5, 0.5, 20)
    assert approx_median(HalfLineFreud(1.5, 0.5), 20) == \
        pytest.approx(0.5 * (lo + hi))


def test_default_sizes():
    assert default_quadrature_size(Jacobi(0, 0), 50) == 10
    assert default_quadrature_size(HalfLineFreud(1, 0), 50) == 25
    assert default_quadrature_size(HalfLineFreud(1.5, 0, halfline_freud_table(1.5, 0, 20)), 7) == 17


def test_jacobi_examples():
    xs = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(idist_jacobi(0, 0, 0, xs), (xs + 1) / 2, atol=1e-15)
    assert idist_jacobi(0, 0, 0, 0.0) == 0.5
    assert idist_jacobi(0, 0, 0, 0.2) == pytest.approx(0.6, abs=1e-15)
    assert idist_jacobi(0, 0, 1, 0.5) == pytest.approx(0.5625, abs=1e-14)
    assert idist_jacobi(-0.5, -0.5, 0, 0.5) == pytest.approx(2 / 3, abs=1e-14)
    assert idist_jacobi(math.e, -1 / 3, 2, -0.4) == pytest.approx(0.4468581980192342, abs=1e-10)
    assert idist_jacobi(0, 0, 5, -0.3) == pytest.approx(0.39705642793414064, abs=1e-12)
    d = get_distribution(Jacobi(2, 3), 4)
    assert idist(d, -1.0) == 0.0 and idist(d, 1.0) == 1.0


def test_bound_examples():
    # x0 = 0 and M = 1 leave C = 2 (1/4)^3
    assert jacobi_error_bound(0, 0, 4, 1, [1.0, 1.0]) == pytest.approx(1 / 32, rel=1e-14)
    assert jacobi_error_bound(0, 0, 4, 1, [2.0, 0.25]) == pytest.approx(1 / 64, rel=1e-14)
    b = np.full(12, 0.3)
    bounds = [jacobi_error_bound(0.5, 1.5, 3, M, b[:M + 1]) for M in range(1, 11)]
    assert np.all(np.diff(bounds) < 0)
    with pytest.raises(DomainError):
        jacobi_error_bound(0, 0, 1, 3, [1.0])


def test_bound_covers_measured_error():
    d = InducedDistribution(Jacobi(0, 0), 5, M=8)
    x = -0.3
    err = abs(d.cdf(x) - 0.39705642793414064)
    bound = float(d.error_bound(x)[0])
    tab = jacobi_modified_table(0, 0, 5, x, M=8)
    assert bound == pytest.approx(jacobi_error_bound(0, 0, 5, 8, tab.b[:9]), rel=1e-10)
    assert err <= bound


def test_large_jacobi_monotone():
    xs = np.linspace(-1, 1, 101)
    F = idist_jacobi(-1 / math.pi, 100 * math.pi, 875, xs)
    assert np.all(np.diff(F) >= 0)
    assert F[0] == 0.0 and F[-1] == 1.0


@pytest.mark.parametrize("a,b,n", [(0.0, 0.0, 3), (2.5, -0.7, 8), (math.e, -1 / 3, 2), (-0.5, 4.0, 17)])
def test_jacobi_reflection_symmetry(a, b, n):
    xs = np.linspace(-0.99, 0.99, 23)
    s = idist_jacobi(a, b, n, xs) + idist_jacobi(b, a, n, -xs)
    np.testing.assert_allclose(s, 1.0, atol=1e-12)


def test_jacobi_convergence_in_M():
    x = -0.4
    ref = 0.4468581980192342
    errs = [abs(idist_jacobi(math.e, -1 / 3, 2, x, M=M) - ref) for M in (2, 4, 6, 8)]
    for e0, e1 in zip(errs, errs[1:]):
        assert e1 <= 0.5 * e0 or e1 < 1e-13


def test_halfline_examples():
    xs = np.linspace(0, 8, 9)
    np.testing.assert_allclose(idist_halffreud(1, 0, 0, xs), 1 - np.exp(-xs), atol=1e-13)
    assert idist_halffreud_comp(1, 0, 0, 1.0) == pytest.approx(math.exp(-1), abs=1e-13)
    assert idist_halffreud(1, 0, 1, 1.0) == pytest.approx(1 - 2 / math.e, abs=1e-13)
    d = get_distribution(HalfLineFreud(1, 0), 3)
    assert d.cdf(2.5) == pytest.approx(0.26504711952586446, abs=1e-12)
    assert d.cdf(0.0) == 0.0 and d.cdf(math.inf) == 1.0
    with pytest.raises(DomainError):
        idist_halffreud(1, 0, 1, -0.1)


def test_halfline_large_case():
    d = get_distribution(HalfLineFreud(1, math.sqrt(1001)), 595, 25)
    assert d.cdf(50.0) == pytest.approx(0.09111147779989327, abs=1e-8)


def test_branches_agree_near_median():
    d = get_distribution(HalfLineFreud(1, 0.7), 9)
    xs = np.array([30.0, 40.0, 50.0])
    np.testing.assert_allclose(d.left_branch(xs) + d.right_branch(xs), 1.0, atol=1e-12)


def test_freud_examples():
    assert idist_freud(2, 0, 0, -1.0) == pytest.approx((1 - erf(1)) / 2, abs=1e-13)
    assert idist_freud(2, 0, 1, -1.0) == pytest.approx((1 - erf(1)) / 2 + math.exp(-1) / math.sqrt(math.pi),
                                                       abs=1e-13)
    for n in (0, 2, 8, 30):
        assert idist_freud(2, 1.5, n, 0.0) == 0.5
    assert idist_freud(2, 1.5, 7, -0.8) == pytest.approx(0.42974617860166336, abs=1e-12)
    assert idist_freud(2, 1.5, 7, 0.0) == pytest.approx(0.5, abs=1e-14)


@given(st.floats(0, 6), st.integers(0, 25), st.sampled_from([0.0, 1.5, 3.0]))
def test_freud_evenness(x, n, rho):
    assert idist_freud(2, rho, n, x) + idist_freud(2, rho, n, -x) == pytest.approx(1.0, abs=1e-12)


@given(st.floats(-1, 1), st.floats(-1, 1), st.sampled_from([(0.0, 0.0), (2.5, -0.7), (-0.5, 1.2)]),
       st.integers(0, 20))
def test_jacobi_range_and_monotone(x1, x2, ab, n):
    lo, hi = sorted((x1, x2))
    F = idist_jacobi(*ab, n, np.array([lo, hi]))
    # the two branches meet at x0 with a rounding-level seam
    assert 0 <= F[0] <= F[1] + 1e-14 and F[1] <= 1


def test_domain_and_unsupported():
    with pytest.raises(DomainError):
        idist_jacobi(0, 0, 2, 1.2)
    with pytest.raises(DomainError):
        idist_jacobi(0, 0, 2, math.nan)
    with pytest.raises(DomainError):
        InducedDistribution(Jacobi(0, 0), -1)
    with pytest.raises(UnsupportedMeasureError, match="table"):
        InducedDistribution(Freud(3, 0), 4)
    with pytest.raises(UnsupportedMeasureError):
        InducedDistribution(recurrence_table(Jacobi(0, 0), 5), 2)


def test_clamp_warns_only_on_real_excursions():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        np.testing.assert_array_equal(_clamp(np.array([-1e-12, 0.3, 1 + 1e-12])), [0.0, 0.3, 1.0])
    with pytest.warns(RuntimeWarning):
        _clamp(np.array([1.1]))


def test_non_unit_alpha_converges_slowly():
    # integrands with fractional powers converge only algebraically in M
    spec = HalfLineFreud(1.5, 0.5, halfline_freud_table(1.5, 0.5, 80), halfline_freud_table(1.5, 0.0, 80))
    n, xs = 6, np.array([0.5, 1.5, 3.0])
    ref = oracle_idist(spec, n, xs)
    err = [np.max(np.abs(InducedDistribution(spec, n, M).cdf(xs) - ref)) for M in (n + 10, 40, 60)]
    assert err[0] < 1e-3
    assert err[2] < err[1] < err[0]


def test_freud_custom_tables():
    spec = Freud(3.0, 0.0, freud_table(3.0, 0.0, 60), halfline_freud_table(1.5, 0.0, 60))
    xs = np.array([-1.2, -0.4, 0.0, 0.7])
    d = InducedDistribution(spec, 5)
    np.testing.assert_allclose(d.cdf(xs) + d.cdf(-xs), 1.0, atol=1e-12)
    np.testing.assert_allclose(d.cdf(xs), oracle_idist(spec, 5, xs), atol=1e-3)
