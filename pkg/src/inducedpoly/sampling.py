"""Mixture sampling, optimal weighted least squares and the equilibrium experiment."""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy import linalg, special, stats

from .errors import DomainError, IllConditionedDesignError
from .evaluation import get_distribution
from .inversion import idist_inverse
from .measures import Freud, MeasureSpec, recurrence_table
from .special import reg_inc_beta


@dataclass(frozen=True, eq=False)
class MultiIndexSet:
    """Distinct multi-indices in N_0^d, stored as an (N, d) integer array."""

    indices: np.ndarray
    downward_closed: bool = False

    def __post_init__(self):
        idx = np.array(self.indices, dtype=np.int64)
        if idx.ndim == 1:
            idx = idx[:, None]
        if idx.ndim != 2 or idx.shape[0] == 0 or idx.shape[1] == 0:
            raise DomainError("need a nonempty (N, d) array of multi-indices")
        if np.any(idx < 0):
            raise DomainError("multi-index components must be nonnegative")
        rows = {tuple(r) for r in idx.tolist()}
        if len(rows) != idx.shape[0]:
            raise DomainError("multi-indices must be distinct")
        if self.downward_closed:
            for r in idx.tolist():
                for j, v in enumerate(r):
                    if v > 0:
                        lower = tuple(r[:j]) + (v - 1,) + tuple(r[j + 1:])
                        if lower not in rows:
                            raise DomainError(f"set is not downward closed: {lower} missing below {tuple(r)}")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @property
    def dimension(self):
        return self.indices.shape[1]

    def __len__(self):
        return self.indices.shape[0]

    @property
    def max_degree(self):
        return int(self.indices.max())


def total_degree_set(d, n):
    """All multi-indices with |lambda| <= n, in lexicographic order."""
    if d < 1 or n < 0:
        raise DomainError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    out = []

    def rec(prefix, budget, left):
        if left == 0:
            out.append(prefix)
            return
        for k in range(budget + 1):
            rec(prefix + (k,), budget - k, left - 1)

    rec((), n, d)
    return MultiIndexSet(np.array(out, dtype=np.int64), downward_closed=True)


@dataclass(frozen=True)
class TensorMeasure:
    marginals: tuple

    def __post_init__(self):
        m = tuple(self.marginals)
        if not m or not all(isinstance(s, MeasureSpec) for s in m):
            raise DomainError("marginals must be a nonempty sequence of measures")
        object.__setattr__(self, "marginals", m)

    @classmethod
    def uniform(cls, spec, d):
        return cls((spec,) * d)

    @property
    def dimension(self):
        return len(self.marginals)


@dataclass(frozen=True, eq=False)
class LSDesign:
    """Samples X, optimal weights w, design matrix V and W = diag(w) / M."""

    samples: np.ndarray
    weights: np.ndarray
    V: np.ndarray
    index_set: MultiIndexSet = field(repr=False)

    @property
    def W(self):
        return np.diag(self.weights / self.samples.shape[0])

    def gram(self):
        M = self.samples.shape[0]
        return (self.V * (self.weights / M)[:, None]).T @ self.V


def make_rng(seed, stream=0):
    """Counter-based generator; ``stream`` selects an independent substream."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream,))))


def open_uniforms(rng, size):
    """Uniform variates on the open interval (0, 1)."""
    return (rng.integers(0, 2 ** 53, size=size).astype(float) + 0.5) / 2.0 ** 53


def _check_pair(index_set, measures):
    if index_set.dimension != measures.dimension:
        raise DomainError(
            f"index set has dimension {index_set.dimension}, measure has {measures.dimension}")


def sample_mixture(index_set, measures, rng, count=None, tol=1e-12):
    """Draw from mu_Lambda = (1/N) sum_lambda p_lambda^2 dmu.

    Returns one point of shape (d,) or, with ``count``, an array (count, d).
    """
    _check_pair(index_set, measures)
    single = count is None
    m = 1 if single else int(count)
    d = index_set.dimension
    pick = rng.integers(0, len(index_set), size=m)
    u = open_uniforms(rng, (m, d))
    orders = index_set.indices[pick]
    X = np.empty((m, d))
    for j, spec in enumerate(measures.marginals):
        col = orders[:, j]
        for k in np.unique(col):
            sel = col == k
            X[sel, j] = idist_inverse(u[sel, j], get_distribution(spec, int(k)), tol=tol)
    return X[0] if single else X


def _poly_matrix(spec, x, n):
    """Orthonormal p_0..p_n at each x, shape (len(x), n+1)."""
    tab = recurrence_table(spec, n)
    a, sb = tab.a, np.sqrt(tab.b)
    P = np.empty((x.size, n + 1))
    P[:, 0] = 1.0 / sb[0]
    if n >= 1:
        P[:, 1] = (x - a[0]) * P[:, 0] / sb[1]
    for k in range(1, n):
        P[:, k + 1] = ((x - a[k]) * P[:, k] - sb[k] * P[:, k - 1]) / sb[k + 1]
    return P


def ls_design(index_set, measures, samples):
    _check_pair(index_set, measures)
    X = np.atleast_2d(np.asarray(samples, dtype=float))
    if X.shape[1] != index_set.dimension:
        raise DomainError("samples have the wrong dimension")
    V = np.ones((X.shape[0], len(index_set)))
    for j, spec in enumerate(measures.marginals):
        col = index_set.indices[:, j]
        P = _poly_matrix(spec, X[:, j], int(col.max()))
        V *= P[:, col]
    if not np.all(np.isfinite(V)):
        raise DomainError("design matrix has non-finite entries")
    s = np.sum(V * V, axis=1)
    assert np.all(s > 0), "sum of squared basis values vanished"
    w = len(index_set) / s
    return LSDesign(X, w, V, index_set)


def spectral_norm_sym(A, tol=1e-10, maxiter=10_000):
    """Spectral norm of a symmetric matrix by power iteration on A^2."""
    A = np.asarray(A, dtype=float)
    if not np.any(A):
        return 0.0
    v = make_rng(0).standard_normal(A.shape[0])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(maxiter):
        w = A @ (A @ v)
        new = float(v @ w)
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            return 0.0
        v = w / nrm
        if abs(new - lam) <= tol * new:
            lam = new
            break
        lam = new
    return math.sqrt(lam)


def gram_discrepancy(design):
    """||V^T W V - I|| in the spectral norm."""
    G = design.gram()
    return spectral_norm_sym(G - np.eye(G.shape[0]))


def least_squares(design, f_values):
    """Weighted least-squares coefficients in index-set order."""
    f = np.asarray(f_values, dtype=float)
    M, N = design.V.shape
    if f.shape != (M,):
        raise DomainError(f"need {M} function values, got shape {f.shape}")
    sw = np.sqrt(design.weights / M)
    A = design.V * sw[:, None]
    Q, R, perm = linalg.qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int(np.sum(diag > diag[0] * max(M, N) * np.finfo(float).eps)) if diag.size else 0
    if rank < N:
        disc = gram_discrepancy(design)
        raise IllConditionedDesignError(
            f"design has numerical rank {rank} < {N} (gram discrepancy {disc:.3g})", disc)
    y = linalg.solve_triangular(R, Q.T @ (sw * f))
    c = np.empty(N)
    c[perm] = y
    return c


def c_delta(delta):
    return delta + (1.0 - delta) * math.log1p(-delta)


def sample_count(N, r, delta):
    """Smallest M >= 3 with M / log M >= N (1 + r) / c_delta."""
    if not (0 < delta < 1) or not r > 0 or N < 1:
        raise DomainError(f"need 0 < delta < 1, r > 0, N >= 1; got {delta}, {r}, {N}")
    K = N * (1.0 + r) / c_delta(delta)
    # M / log M = K has the real root -K W_{-1}(-1/K) when K >= e; back off
    # a little so rounding in lambertw never skips the first valid integer
    M = 3
    if K > math.e:
        root = -K * special.lambertw(-1.0 / K, -1).real
        M = max(3, int(math.floor(root)) - 2)
    while M / math.log(M) < K:
        M += 1
    return M


def equilibrium_cdf(d, r):
    """G_d(r) = I_{r^2}(d/2, d/2 + 1)."""
    r = np.asarray(r, dtype=float)
    if np.any((r < 0) | (r > 1)):
        raise DomainError("r must lie in [0, 1]")
    out = reg_inc_beta(r * r, d / 2.0, d / 2.0 + 1.0)
    return float(out) if np.ndim(out) == 0 else out


def ks_distance(samples, cdf):
    return float(stats.kstest(np.asarray(samples, dtype=float), cdf).statistic)


def equilibrium_experiment(d, n, M, seed):
    """Sorted radii ||X||/sqrt(2n) of mu_{Lambda_n} samples and their KS distance to G_d."""
    if n < 1:
        raise DomainError("equilibrium experiment needs n >= 1")
    lam = total_degree_set(d, n)
    X = sample_mixture(lam, TensorMeasure.uniform(Freud(2.0, 0.0), d), make_rng(seed), count=M)
    radii = np.sort(np.linalg.norm(X, axis=1) / math.sqrt(2.0 * n))
    ks = ks_distance(radii, lambda r: equilibrium_cdf(d, np.clip(r, 0.0, 1.0)))
    return radii, ks
