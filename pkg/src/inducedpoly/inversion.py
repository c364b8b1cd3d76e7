"""Inverse induced distributions: Markov-Stieltjes bracketing plus bisection."""

import math

import numpy as np

from .errors import DomainError, NumericError
from .measures import recurrence_table
from .modification import repeated_quadratic_log
from .recurrence import gauss_rule, log_leading_coeff, poly_zeros

_MAX_BISECT = 2000
_MAX_STEP_OUT = 200


def induced_recurrence(spec, n, N):
    """Recurrence table (length N+1) of the probability measure p_n^2 dmu."""
    base = recurrence_table(spec, N + 2 * n)
    if n == 0:
        return base
    zeros = poly_zeros(base, n)
    step = 2.0 * log_leading_coeff(base, n) / n
    table, logm = repeated_quadratic_log(base, zeros, step)
    return table.with_mass(math.exp(logm))


def default_bracket_size(n):
    return max(10, min(2 * n + 10, 200))


def _induced_rule(dist, N):
    cache = dist._cache
    key = ("ms_rule", N)
    if key not in cache:
        tab = induced_recurrence(dist.spec, dist.n, N)
        rule = gauss_rule(tab, N)
        lo, hi = dist.support
        # z_0 = s_-, z_{N+1} = s_+; cumulative weights padded to match
        nodes = np.concatenate(([lo], rule.nodes, [hi]))
        cum = np.concatenate(([0.0], np.cumsum(rule.weights) / np.sum(rule.weights)))
        cache[key] = (nodes, cum)
    return cache[key]


def markov_stiltjies_interval(u, dist, N=None):
    """Bracket (x_minus, x_plus) containing F_n^{-1}(u) for each u."""
    N = N if N is not None else default_bracket_size(dist.n)
    if N < 2:
        raise DomainError(f"bracket rule needs N >= 2, got {N}")
    scalar = np.ndim(u) == 0
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(~(u >= 0) | (u > 1)):
        raise DomainError("u must lie in [0, 1]")
    nodes, cum = _induced_rule(dist, N)
    # m (1-based) with cum[m-1] <= u <= cum[m]
    m = np.searchsorted(cum[1:], u, side="left") + 1
    m = np.clip(m, 1, N)
    lo, hi = nodes[m - 1], nodes[m + 1]
    if scalar:
        return float(lo[0]), float(hi[0])
    return lo, hi


def _step_out(dist, x, u, direction):
    """Move x by doubling steps until F(x) lies on the correct side of u."""
    x = x.copy()
    step = np.maximum(1.0, np.abs(x))
    todo = np.arange(x.size)
    for _ in range(_MAX_STEP_OUT):
        if todo.size == 0:
            return x
        x[todo] += direction * step[todo]
        f = np.atleast_1d(dist.cdf(x[todo]))
        crossed = (f <= u[todo]) if direction < 0 else (f >= u[todo])
        step[todo] *= 2.0
        todo = todo[~crossed]
    raise NumericError("could not bracket the inverse on unbounded support")


def idist_inverse(u, dist, tol=1e-12, N=None, xtol=None):
    """F_n^{-1}(u) by bisection from Markov-Stieltjes brackets.

    Bisection stops once |F_n(mid) - u| <= tol, once the midpoint can no
    longer be split in floating point, or (if ``xtol`` is given) once the
    bracket width falls below xtol * max(1, |x_minus| + |x_plus|).
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    scalar = np.ndim(u) == 0
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(~(u >= 0) | (u > 1)):
        raise DomainError("u must lie in [0, 1]")
    s_lo, s_hi = dist.support
    out = np.empty(u.shape)
    out[u == 0] = s_lo
    out[u == 1] = s_hi
    inner = (u > 0) & (u < 1)
    if inner.any():
        out[inner] = _bisect(u[inner], dist, tol, N, xtol)
    return float(out[0]) if scalar else out


def _bisect(u, dist, tol, N, xtol):
    lo, hi = markov_stiltjies_interval(u, dist, N)
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    nodes, _ = _induced_rule(dist, N if N is not None else default_bracket_size(dist.n))
    for side, arr, ref in ((-1, lo, nodes[1]), (1, hi, nodes[-2])):
        bad = ~np.isfinite(arr)
        if bad.any():
            arr[bad] = _step_out(dist, np.full(int(bad.sum()), ref), u[bad], side)
    mid = 0.5 * (lo + hi)
    active = np.arange(u.size)
    for _ in range(_MAX_BISECT):
        if active.size == 0:
            break
        a, b = lo[active], hi[active]
        m = 0.5 * (a + b)
        mid[active] = m
        f = np.atleast_1d(dist.cdf(m))
        r = f - u[active]
        done = (np.abs(r) <= tol) | (m <= a) | (m >= b)
        if xtol is not None:
            done |= (b - a) <= xtol * np.maximum(1.0, np.abs(a) + np.abs(b))
        below = r < 0
        lo[active] = np.where(below, m, a)
        hi[active] = np.where(below, b, m)
        active = active[~done]
    else:
        raise NumericError("bisection did not terminate")
    return mid
