"""Closed-form energy approximant for the Gaussian well.

The approximant interpolates between the harmonic level about the well
bottom and the continuum threshold::

    E_K = 1/2 * nu * sqrt(2 xi) - xi * exp(-1/2 * nu * sqrt(2 / xi)),   nu = 2n + l + 3/2

It is defined for the Gaussian well only.
"""
from __future__ import annotations

import math

from scipy.optimize import brentq

from .model import (
    DomainError,
    EnergyEstimate,
    Method,
    PotentialKind,
    QuantumNumbers,
    check_coupling,
)

CRITICAL_XTOL = 1e-8
MAX_BRACKET_DOUBLINGS = 200


class UnsupportedMethodError(DomainError):
    """The requested method has no formula for this potential."""


class BracketingError(RuntimeError):
    pass


def _require_gaussian(kind):
    if PotentialKind.parse(kind) is not PotentialKind.GAUSSIAN:
        raise UnsupportedMethodError("the empirical approximant is only defined for the Gaussian well")


def _bound(value: float, xi: float) -> bool:
    return -xi < value < 0.0


def harmonic_zeroth_energy(qn: QuantumNumbers, xi: float, kind=PotentialKind.GAUSSIAN) -> EnergyEstimate:
    """Well bottom plus the harmonic level: ``-xi + nu * sqrt(2 xi)``."""
    _require_gaussian(kind)
    xi = check_coupling(xi)
    value = -xi + qn.oscillator_index * math.sqrt(2.0 * xi)
    return EnergyEstimate(Method.HARMONIC_ZEROTH, value, _bound(value, xi))


def koksal_value(n: int, l: int, xi):
    """Raw formula, usable with any numeric type supporting ``**`` and ``exp``.

    ``xi`` may be a float or an ``mpmath.mpf``; the result has the same type.
    """
    nu = 2 * n + l + 1.5
    half_width = (2 * xi) ** 0.5 * nu / 2
    exponent = -nu * (2 / xi) ** 0.5 / 2
    return half_width - xi * _exp(exponent)


def _exp(x):
    if isinstance(x, float):
        return math.exp(x)
    # mpmath numbers carry their own context
    return x.context.exp(x)


def koksal_energy(qn: QuantumNumbers, xi: float, kind=PotentialKind.GAUSSIAN) -> EnergyEstimate:
    _require_gaussian(kind)
    xi = check_coupling(xi)
    value = koksal_value(qn.n, qn.l, xi)
    return EnergyEstimate(Method.KOKSAL, value, _bound(value, xi))


def koksal_critical(qn: QuantumNumbers, kind=PotentialKind.GAUSSIAN, xtol: float = CRITICAL_XTOL) -> float:
    """Coupling at which the approximant crosses zero from above.

    The bracket starts at ``xi = nu**2 / 2``, where the formula is positive,
    and doubles its upper end until the sign flips.
    """
    _require_gaussian(kind)
    nu = qn.oscillator_index
    lo = nu * nu / 2.0

    def f(xi):
        return koksal_value(qn.n, qn.l, xi)

    if not f(lo) > 0:
        raise BracketingError(f"approximant not positive at bracket start xi={lo} for {qn}")
    hi = 2.0 * lo
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if f(hi) < 0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise BracketingError(f"no sign change found for {qn}")
    return brentq(f, lo, hi, xtol=xtol, rtol=1e-15, maxiter=500)
