"""Jacobi, half-line Freud and Freud probability measures.

Closed-form recurrence coefficients are available for every Jacobi
measure, for half-line Freud with alpha = 1 (generalized Laguerre) and for
Freud with alpha = 2 (generalized Hermite).  Other exponents must come
with a user-supplied coefficient table.
"""

from dataclasses import dataclass
import math
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    DomainError,
    InconsistentCoefficientsError,
    TableParseError,
    UnsupportedMeasureError,
)
from .recurrence import RecurrenceTable
from .special import log_beta, log_gamma

_CUSTOM_HINT = ("supply a coefficient table (MeasureSpec table=..., "
                "load_table(path), or --table on the command line)")


class MeasureSpec:
    """Base class of the measure variants."""

    family = "abstract"


@dataclass(frozen=True)
class Jacobi(MeasureSpec):
    alpha: float
    beta: float
    family = "jacobi"

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise DomainError(f"Jacobi needs alpha, beta > -1, got ({self.alpha}, {self.beta})")


@dataclass(frozen=True, eq=False)
class HalfLineFreud(MeasureSpec):
    """x^rho exp(-x^alpha) on [0, inf).

    ``table`` holds coefficients of this measure and ``base_table`` those of
    the rho = 0 measure; both are required unless alpha == 1.
    """

    alpha: float
    rho: float
    table: Optional[RecurrenceTable] = None
    base_table: Optional[RecurrenceTable] = None
    family = "halfline_freud"

    def __post_init__(self):
        if not (self.alpha > 0.5 and self.rho > -1):
            raise DomainError(
                f"half-line Freud needs alpha > 1/2, rho > -1, got ({self.alpha}, {self.rho})")

    def _key(self):
        return (self.alpha, self.rho, id(self.table), id(self.base_table))

    def __eq__(self, other):
        return isinstance(other, HalfLineFreud) and self._key() == other._key()

    def __hash__(self):
        return hash(("hf",) + self._key())


@dataclass(frozen=True, eq=False)
class Freud(MeasureSpec):
    """|x|^rho exp(-|x|^alpha) on the real line.

    ``table`` holds Freud coefficients for (alpha, rho); ``half_base_table``
    holds half-line Freud coefficients for (alpha/2, 0).  Both are required
    unless alpha == 2.
    """

    alpha: float
    rho: float
    table: Optional[RecurrenceTable] = None
    half_base_table: Optional[RecurrenceTable] = None
    family = "freud"

    def __post_init__(self):
        if not (self.alpha > 1 and self.rho > -1):
            raise DomainError(f"Freud needs alpha > 1, rho > -1, got ({self.alpha}, {self.rho})")

    def _key(self):
        return (self.alpha, self.rho, id(self.table), id(self.half_base_table))

    def __eq__(self, other):
        return isinstance(other, Freud) and self._key() == other._key()

    def __hash__(self):
        return hash(("f",) + self._key())


@dataclass(frozen=True, eq=False)
class Custom(MeasureSpec):
    support: tuple
    table: RecurrenceTable
    family = "custom"

    def __post_init__(self):
        lo, hi = (float(s) for s in self.support)
        if not lo < hi:
            raise DomainError(f"support endpoints must satisfy lo < hi, got ({lo}, {hi})")
        object.__setattr__(self, "support", (lo, hi))


class NormConst(NamedTuple):
    log: float
    value: float


def log_normalization_constant(spec):
    if isinstance(spec, Jacobi):
        a, b = spec.alpha, spec.beta
        return (a + b + 1) * math.log(2.0) + log_beta(b + 1, a + 1)
    if isinstance(spec, HalfLineFreud):
        return log_gamma((spec.rho + 1) / spec.alpha) - math.log(spec.alpha)
    if isinstance(spec, Freud):
        return math.log(2.0) + log_gamma((spec.rho + 1) / spec.alpha) - math.log(spec.alpha)
    raise UnsupportedMeasureError("normalization constants exist only for built-in families")


def normalization_constant(spec):
    lc = log_normalization_constant(spec)
    value = math.exp(lc) if lc < 709.0 else math.inf
    return NormConst(lc, value)


def support(spec):
    if isinstance(spec, Jacobi):
        return (-1.0, 1.0)
    if isinstance(spec, HalfLineFreud):
        return (0.0, math.inf)
    if isinstance(spec, Freud):
        return (-math.inf, math.inf)
    return spec.support


def h_squared(alpha, rho):
    return math.exp(log_gamma((rho + 1) / alpha) - log_gamma((rho + 3) / alpha))


def jacobi_coefficients(alpha, beta, N):
    """Orthonormal probability-normalized Jacobi coefficients, length N+1."""
    n = np.arange(N + 1, dtype=float)
    ab = alpha + beta
    a = np.empty(N + 1)
    b = np.empty(N + 1)
    a[0] = (beta - alpha) / (ab + 2.0)
    b[0] = 1.0
    if N >= 1:
        k = n[1:]
        s = 2.0 * k + ab
        a[1:] = (beta ** 2 - alpha ** 2) / (s * (s + 2.0))
        b[1] = 4.0 * (1 + alpha) * (1 + beta) / ((2.0 + ab) ** 2 * (3.0 + ab))
        if N >= 2:
            k = n[2:]
            s = 2.0 * k + ab
            b[2:] = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))
    return RecurrenceTable(a, b)


def laguerre_coefficients(rho, N):
    n = np.arange(N + 1, dtype=float)
    b = n * (n + rho)
    b[0] = 1.0
    return RecurrenceTable(2.0 * n + rho + 1.0, b)


def hermite_coefficients(rho, N):
    """Generalized Hermite coefficients via the half-line Laguerre image."""
    star = laguerre_coefficients((rho - 1.0) / 2.0, N // 2 + 1)
    return freud_from_halfline(star).truncate(N + 1)


def recurrence_table(spec, N):
    """Coefficients a_0..a_N, b_0..b_N of ``spec``."""
    if N < 0:
        raise DomainError(f"N must be nonnegative, got {N}")
    if isinstance(spec, Jacobi):
        return jacobi_coefficients(spec.alpha, spec.beta, N)
    if isinstance(spec, HalfLineFreud):
        if spec.table is not None:
            return spec.table.truncate(N + 1)
        if spec.alpha == 1:
            return laguerre_coefficients(spec.rho, N)
        raise UnsupportedMeasureError(
            f"no closed-form coefficients for half-line Freud alpha={spec.alpha}; {_CUSTOM_HINT}")
    if isinstance(spec, Freud):
        if spec.table is not None:
            return spec.table.truncate(N + 1)
        if spec.alpha == 2:
            return hermite_coefficients(spec.rho, N)
        raise UnsupportedMeasureError(
            f"no closed-form coefficients for Freud alpha={spec.alpha}; {_CUSTOM_HINT}")
    if isinstance(spec, Custom):
        return spec.table.truncate(N + 1)
    raise TypeError(f"not a measure: {spec!r}")


def halfline_from_freud(freud_table):
    """Half-line images (table_star, table_starstar) of a symmetric table.

    table_star encodes the even polynomials in t = x^2, table_starstar the
    odd ones divided by x.  Both carry the input's total mass b_0.
    """
    a, b = freud_table.a, freud_table.b
    if np.any(a != 0.0):
        raise DomainError("Freud coefficient table must have all a_j = 0")
    L = b.size
    if L < 2:
        raise DomainError("need at least two Freud coefficients")
    ns = L // 2
    a_s = np.empty(ns)
    b_s = np.empty(ns)
    a_s[0] = b[1]
    b_s[0] = b[0]
    for n in range(1, ns):
        a_s[n] = b[2 * n] + b[2 * n + 1]
        b_s[n] = b[2 * n] * b[2 * n - 1]
    nss = (L - 1) // 2
    a_ss = np.empty(nss)
    b_ss = np.empty(nss)
    for n in range(nss):
        a_ss[n] = b[2 * n + 1] + b[2 * n + 2]
        b_ss[n] = b[0] if n == 0 else b[2 * n] * b[2 * n + 1]
    star = RecurrenceTable(a_s, b_s)
    starstar = RecurrenceTable(a_ss, b_ss) if nss > 0 else None
    return star, starstar


def freud_from_halfline(table_star):
    """Inverse of the even half of :func:`halfline_from_freud`."""
    a_s, b_s = table_star.a, table_star.b
    K = a_s.size
    b = np.empty(2 * K)
    b[0] = b_s[0]
    b[1] = a_s[0]
    for n in range(1, K):
        b[2 * n] = b_s[n] / b[2 * n - 1]
        b[2 * n + 1] = a_s[n] - b[2 * n]
        if not (b[2 * n] > 0 and b[2 * n + 1] > 0):
            raise InconsistentCoefficientsError(
                f"induced Freud coefficient b_{2 * n + 1} = {b[2 * n + 1]:.6g} is not positive")
    return RecurrenceTable(np.zeros(2 * K), b)


def halfline_images(spec):
    """Half-line Freud measures behind even and odd orders of a Freud measure."""
    a2 = spec.alpha / 2.0
    rs, rss = (spec.rho - 1.0) / 2.0, (spec.rho + 1.0) / 2.0
    if spec.table is None:
        return HalfLineFreud(a2, rs), HalfLineFreud(a2, rss)
    star, starstar = halfline_from_freud(spec.table)
    base = spec.half_base_table
    if base is None and a2 != 1:
        raise UnsupportedMeasureError(
            f"Freud alpha={spec.alpha} needs half-line coefficients for alpha={a2}, rho=0; {_CUSTOM_HINT}")
    return HalfLineFreud(a2, rs, star, base), HalfLineFreud(a2, rss, starstar, base)


# -- coefficient-table files ----------------------------------------------

_HEADER = "# induced-table v1 support="


def _fmt(v):
    return repr(float(v)) if math.isfinite(v) else ("inf" if v > 0 else "-inf")


def save_table(table, path, support=(-math.inf, math.inf)):
    lo, hi = support
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{_HEADER}{_fmt(lo)},{_fmt(hi)}\n")
        for n, (a, b) in enumerate(zip(table.a, table.b)):
            fh.write(f"{n},{float(a)!r},{float(b)!r}\n")


def _parse_finite(tok, line):
    try:
        v = float(tok)
    except ValueError:
        raise TableParseError(f"not a number: {tok!r}", line) from None
    if not math.isfinite(v):
        raise TableParseError(f"non-finite value {tok!r} outside the header", line)
    return v


def load_table(path):
    """Read a coefficient-table CSV into a :class:`Custom` measure."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith(_HEADER):
        raise TableParseError(f"missing header {_HEADER!r}", 1)
    try:
        lo, hi = (float(t) for t in lines[0][len(_HEADER):].split(","))
    except ValueError:
        raise TableParseError("malformed support in header", 1) from None
    a, b = [], []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split(",")
        if len(parts) != 3:
            raise TableParseError(f"expected 3 fields, got {len(parts)}", lineno)
        try:
            idx = int(parts[0])
        except ValueError:
            raise TableParseError(f"bad index {parts[0]!r}", lineno) from None
        if idx != len(a):
            raise TableParseError(f"index {idx} out of sequence (expected {len(a)})", lineno)
        av = _parse_finite(parts[1], lineno)
        bv = _parse_finite(parts[2], lineno)
        if bv <= 0:
            raise TableParseError(f"b_{idx} = {bv} is not positive", lineno)
        a.append(av)
        b.append(bv)
    if not a:
        raise TableParseError("no coefficient rows", len(lines))
    try:
        return Custom((lo, hi), RecurrenceTable(np.array(a), np.array(b)))
    except DomainError as exc:
        raise TableParseError(str(exc), 1) from None
