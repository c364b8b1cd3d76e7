"""Brute-force reference computations used to validate the fast paths.

Nothing here touches the modification machinery.  ``oracle_idist``
integrates p_n^2 w directly with double-exponential quadrature on panels
split at the zeros of p_n; ``oracle_stieltjes`` runs the Stieltjes
procedure on a discretized measure.
"""

from functools import lru_cache
import math

import numpy as np
from numba import njit
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from .errors import DomainError, OracleAccuracyError
from .measures import (
    Freud,
    HalfLineFreud,
    Jacobi,
    log_normalization_constant,
    recurrence_table,
    support,
)
from .recurrence import RecurrenceTable

_FINITE, _RIGHT_INF, _LEFT_INF = 0, 1, 2
_MAX_LEVEL = 10
_H0 = 0.5


@njit(cache=True)
def _log_pn_sq(a, b, n, t, out):
    """log p_n(t)^2 with a rescaled three-term recurrence."""
    sb = np.sqrt(b[: n + 1])
    for q in range(t.shape[0]):
        x = t[q]
        pm = 0.0
        p = 1.0 / sb[0]
        logs = 0.0
        for k in range(n):
            pk = ((x - a[k]) * p - (sb[k] * pm if k > 0 else 0.0)) / sb[k + 1]
            m = max(abs(pk), abs(p))
            if m == 0.0 or not math.isfinite(m):
                break
            pm = p / m
            p = pk / m
            logs += math.log(m)
        out[q] = 2.0 * (math.log(abs(p)) + logs) if p != 0.0 else -np.inf


def _log_density(spec, t, dl, dh, c, d):
    """log w(t)/c_w; dl, dh are accurate distances of t to the panel ends."""
    lc = log_normalization_constant(spec)
    with np.errstate(divide="ignore", invalid="ignore"):
        if isinstance(spec, Jacobi):
            one_p = dl + (c + 1.0)
            one_m = dh + (1.0 - d)
            out = np.zeros(t.shape)
            if spec.alpha != 0:
                out += spec.alpha * np.log(one_m)
            if spec.beta != 0:
                out += spec.beta * np.log(one_p)
            return out - lc
        abs_t = np.where(c == 0.0, dl, np.where(d == 0.0, dh, np.abs(t)))
        out = -(abs_t ** spec.alpha)
        if spec.rho != 0:
            out = out + spec.rho * np.log(abs_t)
        return out - lc


def _panel_points(c, d, kind, s):
    """Nodes t, end distances and log Jacobians for each (panel, s)."""
    c = c[:, None]
    d = d[:, None]
    kind = kind[:, None]
    s = s[None, :]
    v = 0.5 * math.pi * np.sinh(s)
    logcosh = np.log(0.5 * math.pi * np.cosh(s))
    width = np.where(kind == _FINITE, d - c, 1.0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        logw_ = np.log(width)
        # finite panels: t = c + (d - c) sigma(2v)
        l_dl = logw_ - np.logaddexp(0.0, -2.0 * v)
        l_dh = logw_ - np.logaddexp(0.0, 2.0 * v)
        fin_jac = l_dl + l_dh - logw_ + np.log(2.0) + logcosh
        # half-infinite panels: distance to the finite end is exp(v)
        inf_jac = v + logcosh
        dl = np.where(kind == _FINITE, np.exp(l_dl), np.where(kind == _RIGHT_INF, np.exp(v), np.inf))
        dh = np.where(kind == _FINITE, np.exp(l_dh), np.where(kind == _LEFT_INF, np.exp(v), np.inf))
        t = np.where(kind == _LEFT_INF, d - dh,
                     np.where(l_dl <= l_dh, c + dl, d - dh))
        t = np.where(kind == _RIGHT_INF, c + dl, t)
        jac = np.where(kind == _FINITE, fin_jac, inf_jac)
    return t, dl, dh, jac


class _Integrand:
    def __init__(self, spec, n):
        self.spec = spec
        self.n = n
        tab = recurrence_table(spec, n)
        self.a = np.ascontiguousarray(tab.a)
        self.b = np.ascontiguousarray(tab.b)

    def log_values(self, c, d, kind, s):
        t, dl, dh, jac = _panel_points(c, d, kind, s)
        flat = np.ascontiguousarray(t, dtype=float).ravel()
        lp = np.empty(flat.size)
        fin = np.isfinite(flat)
        lp[~fin] = -np.inf
        tmp = np.empty(int(fin.sum()))
        _log_pn_sq(self.a, self.b, self.n, np.ascontiguousarray(flat[fin]), tmp)
        lp[fin] = tmp
        with np.errstate(invalid="ignore"):
            out = lp.reshape(t.shape) + _log_density(self.spec, t, dl, dh, c[:, None], d[:, None]) + jac
        return np.where(np.isnan(out), -np.inf, out)


def _s_limits(spec):
    """Half-width of the s-range; singular endpoints need a longer one."""
    expo = 1.0
    if isinstance(spec, Jacobi):
        expo = min(spec.alpha, spec.beta) + 1.0
    elif spec.rho < 0:
        expo = spec.rho + 1.0
    return max(4.5, math.asinh(45.0 / (math.pi * min(1.0, expo))))


def _integrate_panels(f, c, d, kind, S, tol):
    """Tanh-sinh / exp-sinh with level doubling.  Returns (values, errors)."""
    P = c.size
    J = int(math.ceil(S / _H0))
    s0 = _H0 * np.arange(-J, J + 1)
    smax = _H0 * J
    sums = np.exp(f.log_values(c, d, kind, s0)).sum(axis=1)
    est = _H0 * sums
    err = np.full(P, np.inf)
    active = np.arange(P)
    h = _H0
    for _ in range(_MAX_LEVEL):
        if active.size == 0:
            break
        h *= 0.5
        J = int(round(smax / h))
        odd = h * np.arange(1, J + 1, 2)
        s_new = np.concatenate((-odd[::-1], odd))
        add = np.exp(f.log_values(c[active], d[active], kind[active], s_new)).sum(axis=1)
        sums[active] += add
        new = h * sums[active]
        err[active] = np.abs(new - est[active])
        est[active] = new
        done = err[active] <= np.maximum(tol, 1e-13 * np.abs(new))
        active = active[~done]
    return est, err


class ReferenceDistribution:
    """Brute-force F_n for one (spec, n), with cached panel masses."""

    def __init__(self, spec, n, tol=None):
        if not isinstance(spec, (Jacobi, HalfLineFreud, Freud)):
            raise DomainError(f"oracle_idist needs a built-in measure, got {spec!r}")
        if n > 1000:
            raise DomainError("oracle_idist supports n <= 1000")
        self.spec = spec
        self.n = n
        self.target = tol if tol is not None else (1e-12 if n <= 200 else 1e-9)
        self._f = _Integrand(spec, n)
        self._S = _s_limits(spec)
        lo, hi = support(spec)
        pts = [lo] if math.isfinite(lo) else []
        if n > 0:
            pts.extend(eigvalsh_tridiagonal(self._f.a[:n], np.sqrt(self._f.b[1:n])))
        if isinstance(spec, Freud):
            pts.append(0.0)
        if math.isfinite(hi):
            pts.append(hi)
        pts = np.unique(np.clip(np.array(pts, dtype=float), lo, hi))
        self.lo, self.hi = lo, hi
        self.breaks = pts
        c, d, kind = list(pts[:-1]), list(pts[1:]), [_FINITE] * (pts.size - 1)
        if not math.isfinite(lo):
            c.insert(0, -math.inf)
            d.insert(0, pts[0])
            kind.insert(0, _LEFT_INF)
        if not math.isfinite(hi):
            c.append(pts[-1])
            d.append(math.inf)
            kind.append(_RIGHT_INF)
        self._c = np.array(c)
        self._d = np.array(d)
        self._kind = np.array(kind)
        tol_panel = self.target / (10.0 * max(1, len(c)))
        self.masses, errs = _integrate_panels(self._f, self._c, self._d, self._kind, self._S, tol_panel)
        self.total = float(self.masses.sum())
        self.error = float(errs.sum())
        if not (abs(self.total - 1.0) <= 100 * self.target) or self.error > self.target:
            raise OracleAccuracyError(
                f"oracle total mass {self.total!r} (error estimate {self.error:.2e}) "
                f"misses target {self.target:.0e}")
        self._below = np.concatenate(([0.0], np.cumsum(self.masses)))
        self._above = np.concatenate((np.cumsum(self.masses[::-1])[::-1], [0.0]))

    def cdf(self, x):
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(x < self.lo) or np.any(x > self.hi) or np.any(np.isnan(x)):
            raise DomainError(f"x outside the support [{self.lo}, {self.hi}]")
        k = np.searchsorted(self._d, x, side="left")
        k = np.minimum(k, self._c.size - 1)
        c, d, kind = self._c[k], self._d[k], self._kind[k]
        inner = (x > c) & (x < d)
        left = np.zeros(x.size)
        right = np.zeros(x.size)
        if inner.any():
            ci, di, xi, ki = c[inner], d[inner], x[inner], kind[inner]
            lk = np.where(ki == _LEFT_INF, _LEFT_INF, _FINITE)
            rk = np.where(ki == _RIGHT_INF, _RIGHT_INF, _FINITE)
            tol = self.target / 10.0
            lv, le = _integrate_panels(self._f, ci, xi, lk, self._S, tol)
            rv, re = _integrate_panels(self._f, xi, di, rk, self._S, tol)
            if max(le.max(), re.max()) > self.target:
                raise OracleAccuracyError("partial-panel integration did not converge")
            left[inner] = lv
            right[inner] = rv
        # x at or beyond a breakpoint: the partial panel is empty or full
        at_end = ~inner & (x >= d)
        left[at_end] = self.masses[k[at_end]]
        right[~inner & (x <= c)] = self.masses[k[~inner & (x <= c)]]
        L = self._below[k] + left
        R = self._above[k + 1] + right
        out = np.where(L <= 0.5, L, 1.0 - R)
        out = np.clip(out, 0.0, 1.0)
        return float(out[0]) if scalar else out


@lru_cache(maxsize=64)
def reference_distribution(spec, n):
    return ReferenceDistribution(spec, n)


def oracle_idist(spec, n, x):
    """F_n(x) by direct double-exponential quadrature of p_n^2 w."""
    return reference_distribution(spec, int(n)).cdf(x)


# -- Stieltjes procedure ----------------------------------------------------

def _gauss_nodes(table, Q):
    nodes, vecs = eigh_tridiagonal(table.a[:Q], np.sqrt(table.b[1:Q]))
    return nodes, table.b[0] * vecs[0] ** 2


def stieltjes(nodes, weights, N):
    """Orthonormal recurrence coefficients (length N) of a discrete measure."""
    w = np.asarray(weights, dtype=float)
    x = np.asarray(nodes, dtype=float)
    a = np.empty(N)
    b = np.empty(N)
    b[0] = w.sum()
    q_prev = np.zeros_like(x)
    q = np.full_like(x, 1.0 / math.sqrt(b[0]))
    basis = [q]
    for k in range(N):
        a[k] = np.dot(w, x * q * q)
        if k == N - 1:
            break
        r = (x - a[k]) * q - (math.sqrt(b[k]) * q_prev if k > 0 else 0.0)
        # one pass of reorthogonalization keeps the procedure stable
        for v in basis:
            r -= np.dot(w, r * v) * v
        nrm2 = np.dot(w, r * r)
        if not nrm2 > 0:
            raise OracleAccuracyError(f"Stieltjes lost positivity at b_{k + 1}")
        b[k + 1] = nrm2
        q_prev, q = q, r / math.sqrt(nrm2)
        basis.append(q)
    return RecurrenceTable(a, b)


def oracle_stieltjes(spec, factor, N, order=None):
    """Coefficients (length N) of |prod (x - c)^e| dmu by the Stieltjes procedure.

    ``factor`` is a sequence of (root, multiplicity) pairs; an empty factor
    reproduces the base table.  b_0 is the total mass relative to mu.
    """
    if N > 20:
        raise DomainError("oracle_stieltjes supports N <= 20")
    factor = [(float(c), int(e)) for c, e in factor]
    deg = sum(e for _, e in factor)
    Q = order or max(4 * N + deg + 10, 60)
    base = spec if isinstance(spec, RecurrenceTable) else recurrence_table(spec, Q)
    nodes, weights = _gauss_nodes(base, Q)
    fac = np.ones_like(nodes)
    for c, e in factor:
        fac *= np.abs(nodes - c) ** e
    return stieltjes(nodes, weights * fac, N)


def oracle_dense_specnorm(matrix):
    """Spectral norm of a symmetric matrix from its full eigendecomposition."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("need a square matrix")
    if m.shape[0] > 200:
        raise DomainError("oracle_dense_specnorm supports dimension <= 200")
    return float(np.max(np.abs(np.linalg.eigvalsh(m)))) if m.size else 0.0


# -- coefficient tables for exponents without closed forms ------------------

def _level(N, level):
    # finer steps for longer tables: the largest zeros grow with N
    return level if level is not None else max(7, math.ceil(math.log2(max(N, 2))) + 3)


def discretized_table(log_weight, lo, N, level=None, S=4.5):
    """Recurrence table (length N) of exp(log_weight(t)) dt on [lo, inf).

    The measure is discretized by exp-sinh quadrature at step 2^-level and
    normalized to a probability measure.  log_weight receives the distance
    t - lo so endpoint singularities stay accurate.
    """
    h = 2.0 ** -_level(N, level)
    s = h * np.arange(-int(S / h), int(S / h) + 1)
    v = 0.5 * math.pi * np.sinh(s)
    with np.errstate(over="ignore"):
        dist = np.exp(v)
        logw = v + np.log(0.5 * math.pi * np.cosh(s)) + log_weight(dist)
    keep = np.isfinite(logw) & (logw > -745.0) & np.isfinite(dist)
    w = h * np.exp(logw[keep])
    w /= w.sum()
    return stieltjes(lo + dist[keep], w, N)


def halfline_freud_table(alpha, rho, N, level=None):
    """Probability-normalized half-line Freud coefficients for any alpha, rho."""
    def lw(t):
        with np.errstate(divide="ignore"):
            return rho * np.log(t) - t ** alpha
    return discretized_table(lw, 0.0, N, level=level)


def freud_table(alpha, rho, N, level=None):
    """Freud coefficients via the symmetric discretization of |x|^rho exp(-|x|^alpha)."""
    def lw(t):
        with np.errstate(divide="ignore"):
            return rho * np.log(t) - t ** alpha
    h = 2.0 ** -_level(N, level)
    s = h * np.arange(-int(4.5 / h), int(4.5 / h) + 1)
    v = 0.5 * math.pi * np.sinh(s)
    dist = np.exp(v)
    logw = v + np.log(0.5 * math.pi * np.cosh(s)) + lw(dist)
    keep = np.isfinite(logw) & (logw > -745.0)
    x = np.concatenate((-dist[keep][::-1], dist[keep]))
    w = np.exp(np.concatenate((logw[keep][::-1], logw[keep])))
    w /= w.sum()
    tab = stieltjes(x, w, N)
    return RecurrenceTable(np.zeros(N), tab.b)
