"""Evaluation of induced distribution functions F_n.

Each evaluation splits at an approximate median x0: below it the CDF is
computed directly, above it the complementary CDF is.  Both branches map
the integral to a fixed interval, absorb p_n^2 into the reference measure
by quadratic modifications and finish with an M-point Gauss rule.
"""

from functools import lru_cache
import math
import warnings

import numpy as np

from . import _kernels
from .errors import DomainError, NumericError, UnsupportedMeasureError
from .measures import (
    Custom,
    Freud,
    HalfLineFreud,
    Jacobi,
    halfline_images,
    jacobi_coefficients,
    log_normalization_constant,
    recurrence_table,
    support,
)
from .recurrence import log_leading_coeff, poly_zeros
from .special import log_beta, log_gamma

_CLAMP_GUARD = 1e-8


def approx_median(spec, n):
    """Potential-theoretic approximation x0 of the median of F_n."""
    if isinstance(spec, Jacobi):
        if n == 0:
            return 0.0
        a, b = spec.alpha, spec.beta
        return (b * b - a * a) / (2 * n + a + b) ** 2
    if isinstance(spec, HalfLineFreud):
        if spec.alpha == 1:
            return 50.0
        lo, hi = mrs_interval(spec.alpha, spec.rho, n)
        return 0.5 * (lo + hi)
    if isinstance(spec, Freud):
        return 0.0
    raise UnsupportedMeasureError(f"no median approximation for {spec!r}")


def mrs_interval(alpha, rho, n):
    """Approximate bulk support [a_-, a_+] of F_n for half-line Freud weights."""
    const = math.exp((0.5 * math.log(math.pi) + log_gamma(alpha) - math.log(2.0)
                      - log_gamma(alpha + 0.5)) / alpha)
    if n == 0:
        # degenerate interval; centre it on (rho + 1) so x0 stays positive
        c = (rho + 1.0) ** (1.0 / alpha)
        return const * c, const * c
    s = rho + 2 * n
    d = 2.0 * math.sqrt(n * n + n * rho)
    return const * max(s - d, 0.0) ** (1.0 / alpha), const * (s + d) ** (1.0 / alpha)


def _clamp(values):
    bad = (values < -_CLAMP_GUARD) | (values > 1 + _CLAMP_GUARD) | ~np.isfinite(values)
    if np.any(bad):
        warnings.warn(f"induced CDF produced {int(bad.sum())} values outside [0, 1]",
                      RuntimeWarning, stacklevel=3)
    return np.clip(np.nan_to_num(values, nan=0.5), 0.0, 1.0)


def _check_kernel(info):
    if info != 0:
        raise NumericError(f"Gauss rule QL iteration failed (eigenvalue {info - 1})")


class _JacobiSide:
    """Left-branch data for Jacobi(alpha, beta) at order n."""

    def __init__(self, alpha, beta, n, M):
        self.alpha, self.beta, self.n, self.M = alpha, beta, n, M
        self.A = int(math.floor(abs(alpha)))
        own = jacobi_coefficients(alpha, beta, n + 1)
        self.zeros = np.array(poly_zeros(own, n))
        self.log_gn2 = 2.0 * log_leading_coeff(own, n)
        base = jacobi_coefficients(0.0, beta, M + self.A + 2 * n)
        self.a_base = np.array(base.a)
        self.b_base = np.array(base.b)
        self.log_const = -(alpha * math.log(2.0) + math.log(beta + 1.0) + log_beta(beta + 1.0, alpha + 1.0))
        self.x0 = approx_median(Jacobi(alpha, beta), n)

    def evaluate(self, x):
        x = np.ascontiguousarray(x, dtype=float)
        out = np.empty(x.shape)
        logprod = np.empty(x.shape)
        info = _kernels.jacobi_left(x, self.alpha, self.beta, self.M, self.zeros, self.log_gn2,
                                    self.a_base, self.b_base, self.log_const, out, logprod)
        _check_kernel(info)
        return out, logprod

    def log_bound_constant(self):
        a, b, M = self.alpha, self.beta, self.M
        return ((b + 1 - self.A) * math.log(2.0) - math.log(b + 1) - log_beta(b + 1, a + 1)
                + (2 * M + b + 1) * math.log((self.x0 + 1) / 4))


_TINY_RATIO = 1e50


class _HalfFreudData:
    def __init__(self, spec, n, M):
        self.alpha, self.rho, self.n, self.M = spec.alpha, spec.rho, n, M
        own = recurrence_table(spec, n)
        self.zeros = np.array(poly_zeros(own, n))
        self.log_gn2 = 2.0 * log_leading_coeff(own, n)
        left = jacobi_coefficients(0.0, spec.rho, M + 2 * n)
        self.a_left, self.b_left = np.array(left.a), np.array(left.b)
        if spec.alpha == 1:
            right = recurrence_table(HalfLineFreud(1.0, 0.0), M + 2 * n)
        elif spec.rho == 0 and spec.table is not None:
            right = spec.table.truncate(M + 2 * n + 1)
        elif spec.base_table is not None:
            right = spec.base_table.truncate(M + 2 * n + 1)
        else:
            raise UnsupportedMeasureError(
                f"half-line Freud alpha={spec.alpha} needs base_table (rho = 0 coefficients)")
        self.a_right, self.b_right = np.array(right.a), np.array(right.b)
        lc = log_normalization_constant(spec)
        self.lc = lc
        self.log_const_left = (spec.rho + 1) * math.log(2.0) - math.log(spec.rho + 1) - lc
        self.log_const_right = log_normalization_constant(HalfLineFreud(spec.alpha, 0.0)) - lc

    def left(self, x):
        x = np.ascontiguousarray(x, dtype=float)
        out = np.empty(x.shape)
        # mapped zeros 2 z_j / x - 1 overflow the modification for tiny x; there
        # F_n(x) = p_n(0)^2 x^(rho+1) / ((rho+1) Z) holds to relative O(x / z_1)
        tiny = (x > 0) & (x * _TINY_RATIO < (self.zeros[-1] if self.n else 0.0))
        if tiny.any():
            log_p0 = self.log_gn2 + 2.0 * np.sum(np.log(self.zeros))
            out[tiny] = np.exp(log_p0 + (self.rho + 1) * np.log(x[tiny]) - math.log(self.rho + 1) - self.lc)
        rest = np.ascontiguousarray(x[~tiny])
        val = np.empty(rest.shape)
        _check_kernel(_kernels.halffreud_left(rest, self.alpha, self.rho, self.M, self.zeros, self.log_gn2,
                                              self.a_left, self.b_left, self.log_const_left, val))
        out[~tiny] = val
        return out

    def right(self, x):
        x = np.ascontiguousarray(x, dtype=float)
        out = np.empty(x.shape)
        _check_kernel(_kernels.halffreud_right(x, self.alpha, self.rho, self.M, self.zeros, self.log_gn2,
                                               self.a_right, self.b_right, self.log_const_right, out))
        return out


def default_quadrature_size(spec, n):
    if isinstance(spec, Jacobi):
        return 10
    if isinstance(spec, HalfLineFreud):
        return 25 if spec.alpha == 1 else n + 10
    if isinstance(spec, Freud):
        k = n // 2
        return 25 if spec.alpha == 2 else k + 10
    raise UnsupportedMeasureError(f"cannot evaluate induced distributions of {spec!r}")


class InducedDistribution:
    """The order-n induced distribution of a measure, with cached data.

    ``cdf`` accepts scalars or arrays and is safe to call concurrently once
    the object is built.
    """

    def __init__(self, spec, n, M=None):
        if isinstance(spec, Custom):
            raise UnsupportedMeasureError(
                "custom tables carry no weight function; wrap them in HalfLineFreud/Freud")
        if n < 0 or int(n) != n:
            raise DomainError(f"order n must be a nonnegative integer, got {n}")
        self.spec = spec
        self.n = n = int(n)
        self.M = int(M) if M is not None else default_quadrature_size(spec, n)
        if self.M < 1:
            raise DomainError(f"quadrature size must be positive, got {self.M}")
        self.support = support(spec)
        self._cache = {}
        self.x0 = approx_median(spec, n)
        self.table = recurrence_table(spec, n)
        self.zeros = poly_zeros(self.table, n)
        self.log_leading = log_leading_coeff(self.table, n)
        if isinstance(spec, Jacobi):
            self._left = _JacobiSide(spec.alpha, spec.beta, n, self.M)
            self._right = _JacobiSide(spec.beta, spec.alpha, n, self.M)
        elif isinstance(spec, HalfLineFreud):
            self._hf = _HalfFreudData(spec, n, self.M)
        else:
            even, odd = halfline_images(spec)
            image = even if n % 2 == 0 else odd
            self._half = InducedDistribution(image, n // 2, M)

    def __repr__(self):
        return f"InducedDistribution({self.spec!r}, n={self.n}, M={self.M})"

    def _check_domain(self, x):
        lo, hi = self.support
        if np.any(np.isnan(x)) or np.any(x < lo) or np.any(x > hi):
            raise DomainError(f"x outside the support [{lo}, {hi}]")

    def cdf(self, x):
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        self._check_domain(x)
        out = self._raw_cdf(x)
        lo, hi = self.support
        out = _clamp(out)
        out[x == lo] = 0.0
        out[x == hi] = 1.0
        return float(out[0]) if scalar else out

    def _raw_cdf(self, x):
        out = np.empty(x.shape)
        spec = self.spec
        if isinstance(spec, Jacobi):
            lo = x <= self.x0
            if lo.any():
                out[lo] = self._left.evaluate(x[lo])[0]
            if (~lo).any():
                out[~lo] = 1.0 - self._right.evaluate(-x[~lo])[0]
        elif isinstance(spec, HalfLineFreud):
            lo = np.isfinite(x) & (x <= self.x0)
            if lo.any():
                out[lo] = self._hf.left(x[lo])
            if (~lo).any():
                out[~lo] = 1.0 - self._hf_ccdf(x[~lo])
        else:
            neg = x <= 0
            if neg.any():
                out[neg] = 0.5 * self._half._hf_ccdf(x[neg] ** 2)
            if (~neg).any():
                out[~neg] = 1.0 - 0.5 * self._half._hf_ccdf(x[~neg] ** 2)
        return out

    def _hf_ccdf(self, x):
        out = np.empty(x.shape)
        fin = np.isfinite(x)
        out[~fin] = 0.0
        lo = fin & (x <= self.x0)
        hi = fin & ~lo
        if lo.any():
            out[lo] = 1.0 - self._hf.left(x[lo])
        if hi.any():
            out[hi] = self._hf.right(x[hi])
        return out

    def left_branch(self, x):
        """Raw F-hat from the left algorithm, without dispatch or clamping."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if isinstance(self.spec, Jacobi):
            return self._left.evaluate(x)[0]
        if isinstance(self.spec, HalfLineFreud):
            return self._hf.left(x)
        raise UnsupportedMeasureError("left branch exists only for Jacobi and half-line Freud")

    def right_branch(self, x):
        """Raw complementary F-hat^c from the right algorithm."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if isinstance(self.spec, Jacobi):
            return self._right.evaluate(-x)[0]
        if isinstance(self.spec, HalfLineFreud):
            return self._hf.right(x)
        raise UnsupportedMeasureError("right branch exists only for Jacobi and half-line Freud")

    def error_bound(self, x):
        """Jacobi a-priori quadrature error bound at each x."""
        if not isinstance(self.spec, Jacobi):
            raise UnsupportedMeasureError("error bound is available for Jacobi measures only")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        self._check_domain(x)
        out = np.empty(x.shape)
        lo = x <= self.x0
        for mask, side, xs in ((lo, self._left, x), (~lo, self._right, -x)):
            if mask.any():
                _, logprod = side.evaluate(xs[mask])
                out[mask] = np.exp(side.log_bound_constant() + logprod)
        return out


@lru_cache(maxsize=512)
def get_distribution(spec, n, M=None):
    """Cached :class:`InducedDistribution` constructor."""
    return InducedDistribution(spec, n, M)


def idist(distribution, x):
    return distribution.cdf(x)


def idist_jacobi(alpha, beta, n, x, M=10):
    return get_distribution(Jacobi(alpha, beta), n, M).cdf(x)


def jacobi_error_bound(alpha, beta, n, M, modified_b):
    """Quadrature error bound from b_0..b_M of the modified measure."""
    modified_b = np.asarray(modified_b, dtype=float)
    if modified_b.size != M + 1:
        raise DomainError(f"need b_0..b_M ({M + 1} values), got {modified_b.size}")
    side = _JacobiSide.__new__(_JacobiSide)
    side.alpha, side.beta, side.M = alpha, beta, M
    side.A = int(math.floor(abs(alpha)))
    side.x0 = approx_median(Jacobi(alpha, beta), n)
    return math.exp(side.log_bound_constant() + float(np.sum(np.log(modified_b))))


def jacobi_modified_table(alpha, beta, n, x, M=10):
    """Recurrence table (b_0 = true mass) of the left-branch modified measure.

    Exposed for :func:`jacobi_error_bound`; x must satisfy x <= x0.
    """
    from .modification import linear_modification, repeated_quadratic_log

    side = _JacobiSide(alpha, beta, n, M)
    if x > side.x0:
        raise DomainError(f"x = {x} exceeds the approximate median {side.x0}")
    half = 0.5 * (x + 1)
    base = jacobi_coefficients(0.0, beta, M + side.A + 2 * n)
    centers = (side.zeros + 1) / half - 1
    step = (side.log_gn2 / n + 2 * math.log(half)) if n else 0.0
    table, logm = repeated_quadratic_log(base, centers, step)
    for _ in range(side.A):
        table = linear_modification(table, (3 - x) / (1 + x))
        logm += math.log(table.mass) + math.log(half)
        table = table.with_mass(1.0)
    return table.with_mass(math.exp(logm))


def idist_halffreud(alpha, rho, n, x, M=None, table=None, base_table=None):
    """Left-branch F-hat_n(x) for x^rho exp(-x^alpha)."""
    spec = HalfLineFreud(alpha, rho, table, base_table)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("half-line Freud requires x >= 0")
    out = get_distribution(spec, n, M).left_branch(x)
    return float(out[0]) if x.ndim == 0 else out


def idist_halffreud_comp(alpha, rho, n, x, M=None, table=None, base_table=None):
    """Right-branch F-hat^c_n(x) for x^rho exp(-x^alpha)."""
    spec = HalfLineFreud(alpha, rho, table, base_table)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("half-line Freud requires x >= 0")
    out = get_distribution(spec, n, M).right_branch(x)
    return float(out[0]) if x.ndim == 0 else out


def idist_freud(alpha, rho, n, x, M=None, table=None, half_base_table=None):
    return get_distribution(Freud(alpha, rho, table, half_base_table), n, M).cdf(x)
