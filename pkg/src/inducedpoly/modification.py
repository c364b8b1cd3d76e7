"""Christoffel modifications of recurrence tables by (x - y) and (x - z)^2."""

import math

import numpy as np

from . import _kernels
from .errors import DomainError, InsufficientCoefficientsError
from .recurrence import RecurrenceTable


def _work(table):
    return np.array(table.a), np.array(table.b), np.empty(len(table))


def linear_modification(table, y0):
    """Table of the positive measure |x - y0| dmu; one coefficient shorter.

    ``y0`` must lie outside the zero hull of the highest-degree polynomial
    the table defines.
    """
    L = len(table)
    if L < 2:
        raise InsufficientCoefficientsError("linear modification needs at least 2 coefficients")
    a, b, work = _work(table)
    newL = _kernels.lin_mod_inplace(a, b, L, float(y0), work)
    if newL < 0:
        raise DomainError(f"y0 = {y0} lies inside the zero hull of p_{L - 1}")
    return RecurrenceTable(a[:newL], b[:newL])


def quadratic_modification(table, z0):
    """Table of (x - z0)^2 dmu; two coefficients shorter.  Any real z0."""
    L = len(table)
    if L < 3:
        raise InsufficientCoefficientsError("quadratic modification needs at least 3 coefficients")
    a, b, work = _work(table)
    newL = _kernels.quad_mod_inplace(a, b, L, float(z0), work)
    return RecurrenceTable(a[:newL], b[:newL])


def repeated_quadratic_log(table, centers, log_step=0.0):
    """Modify by prod (x - c)^2 keeping b_0 = 1; returns (table, log mass).

    ``log_step`` is added to the log mass after every modification.
    """
    centers = np.ascontiguousarray(centers, dtype=float)
    L = len(table)
    if L < 2 * centers.size + 1:
        raise InsufficientCoefficientsError(
            f"{centers.size} quadratic modifications need {2 * centers.size + 1} "
            f"coefficients, table has {L}")
    a, b, work = _work(table)
    newL, logm = _kernels.repeated_quad(a, b, L, centers, float(log_step), work)
    return RecurrenceTable(a[:newL], b[:newL]), logm


def repeated_quadratic(table, centers, log_scale=0.0):
    """Apply a quadratic modification per center, then scale b_0 by exp(log_scale)."""
    centers = np.ascontiguousarray(centers, dtype=float)
    if centers.size == 0:
        return table.with_mass(table.mass * math.exp(log_scale))
    out, logm = repeated_quadratic_log(table, centers)
    return out.with_mass(math.exp(logm + log_scale))
