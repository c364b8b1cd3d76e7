"""Special functions with explicit domain checks.

Thin wrappers over :mod:`scipy.special`; they exist so that callers get a
:class:`DomainError` instead of a silent ``nan``.
"""

import math

import numpy as np
from scipy import special as _sp

from .errors import DomainError


def log_gamma(x):
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return float(_sp.gammaln(x))


def log_beta(a, b):
    if not (a > 0 and b > 0):
        raise DomainError(f"beta requires a, b > 0, got ({a}, {b})")
    return float(_sp.betaln(a, b))


def beta(a, b):
    return math.exp(log_beta(a, b))


def reg_inc_beta(x, a, b):
    """Regularized incomplete beta function I_x(a, b)."""
    if not (a > 0 and b > 0):
        raise DomainError(f"reg_inc_beta requires a, b > 0, got ({a}, {b})")
    xa = np.asarray(x, dtype=float)
    if np.any(~((xa >= 0.0) & (xa <= 1.0))):
        raise DomainError(f"reg_inc_beta requires x in [0, 1], got {x}")
    out = _sp.betainc(a, b, xa)
    return float(out) if out.ndim == 0 else out


def erf(x):
    return float(_sp.erf(x))
