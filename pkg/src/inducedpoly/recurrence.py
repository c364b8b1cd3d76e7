"""Three-term recurrence machinery for orthonormal polynomials.

Convention: ``x p_n = sqrt(b_n) p_{n-1} + a_n p_n + sqrt(b_{n+1}) p_{n+1}``
with ``p_{-1} = 0`` and ``p_0 = 1/sqrt(b_0)``, where ``b_0`` is the total
mass of the measure.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from .errors import DomainError, InsufficientCoefficientsError, NumericError


@dataclass(frozen=True, eq=False)
class RecurrenceTable:
    """Recurrence coefficients a_0..a_N and b_0..b_N."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(self.a, dtype=float)
        b = np.ascontiguousarray(self.b, dtype=float)
        if a.ndim != 1 or a.shape != b.shape:
            raise ValueError("a and b must be 1-d arrays of equal length")
        if a.size == 0:
            raise ValueError("empty recurrence table")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("recurrence coefficients must be finite")
        if np.any(b <= 0):
            raise ValueError("b coefficients must be positive")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __len__(self):
        return self.a.size

    @property
    def mass(self):
        return float(self.b[0])

    def truncate(self, length):
        _need(self, length - 1)
        return RecurrenceTable(self.a[:length], self.b[:length])

    def with_mass(self, mass):
        b = self.b.copy()
        b[0] = mass
        return RecurrenceTable(self.a, b)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return self.nodes.size

    def integrate(self, f):
        return float(np.dot(self.weights, f(self.nodes)))


def _need(table, n):
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    if n + 1 > len(table):
        raise InsufficientCoefficientsError(
            f"degree {n} needs {n + 1} coefficients, table has {len(table)}")


def eval_poly(table, x, n):
    """Values p_0(x), ..., p_n(x) by the three-term recurrence."""
    _need(table, n)
    return _kernels.poly_values(table.a, table.b, float(x), int(n))


def ratio_seq(table, x, n, check=False):
    """Ratios r_j = p_j(x)/p_{j-1}(x) for j = 1..n, plus r_0 = p_0.

    Valid for x outside the zero hull of p_{n-1}.  With ``check=True`` the
    ratios are required to share a sign, which by the Sturm sequence
    property is equivalent to that condition.
    """
    _need(table, n)
    out = np.empty(n + 1)
    _kernels.ratio_values(table.a, table.b, float(x), int(n), out)
    if check and n >= 2:
        r = out[1:n]
        if not (np.all(r > 0) or np.all(r < 0)):
            raise DomainError(f"x = {x} lies inside the zero hull of p_{n - 1}")
    return out


def normalized_seq(table, x, n):
    """C_j(x) = p_j(x) / sqrt(sum_{k<j} p_k(x)^2), j = 0..n (C_0 = p_0)."""
    _need(table, n)
    out = np.empty(n + 1)
    _kernels.normalized_values(table.a, table.b, float(x), int(n), out)
    return out


def reconstruct_poly(c_values, b0, log=False):
    """Recover p_n from C_0..C_n.

    With ``log=True`` returns ``(log|p_n|, sign)`` which stays finite where
    p_n itself would overflow.
    """
    c = np.asarray(c_values, dtype=float)
    n = c.size - 1
    if n == 0:
        val = 1.0 / math.sqrt(b0)
        return (math.log(val), 1.0) if log else val
    cn = c[n]
    if cn == 0.0:
        return (-math.inf, 0.0) if log else 0.0
    logabs = -0.5 * math.log(b0) + math.log(abs(cn)) + 0.5 * float(np.sum(np.log1p(c[1:n] ** 2)))
    sign = math.copysign(1.0, cn)
    if log:
        return logabs, sign
    return sign * math.exp(logabs)


def gauss_rule(table, N):
    """N-point Gauss rule of the measure encoded by ``table``."""
    if N < 1:
        raise DomainError(f"quadrature size must be positive, got {N}")
    if N > len(table):
        raise InsufficientCoefficientsError(
            f"{N}-point rule needs {N} coefficients, table has {len(table)}")
    nodes = np.empty(N)
    weights = np.empty(N)
    info = _kernels.gauss_ql(table.a, table.b, int(N), nodes, weights)
    if info != 0:
        raise NumericError(
            f"QL iteration did not converge for eigenvalue {info - 1} "
            f"of {N} after {_kernels._MAXIT} sweeps")
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights)


def poly_zeros(table, n):
    if n == 0:
        return np.empty(0)
    return gauss_rule(table, n).nodes


def log_leading_coeff(table, n):
    """log gamma_n, where p_n(x) = gamma_n x^n + ..."""
    _need(table, n)
    return -0.5 * float(np.sum(np.log(table.b[: n + 1])))
