"""One-parameter variational estimates for the lowest state of each ``l``.

Trial functions (reduced radial, unnormalised):

* Gaussian well: ``u(r) = r**(l+1) * exp(-a r**2)``
* Yukawa well:   ``u(r) = r**(l+1) * exp(-a r)``

Their Rayleigh quotients are elementary::

    Gaussian  <H>(a) = a (2l+3)/2 - xi * (2a / (2a+1))**((2l+3)/2)
    Yukawa    <H>(a) = a**2/2   - xi * (2a)**(2l+3) / ((2l+2) (2a+1)**(2l+2))

Setting ``d<H>/da = 0`` and solving for ``xi`` gives a curve
``a -> (xi(a), E(a))``, the stationarity locus. ``xi(a)`` has a single
minimum at ``a_turn``; points with ``a > a_turn`` are local minima of
``<H>`` and give the variational energy, points below are local maxima.

The closed-form helpers only use arithmetic operators, so passing
``mpmath.mpf`` values evaluates them in extended precision.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .model import DomainError, EnergyEstimate, Method, PotentialKind, check_coupling


class Branch(str, enum.Enum):
    LOCAL_MAX = "local_max"
    LOCAL_MIN = "local_min"


@dataclass(frozen=True)
class VariationalStationaryPoint:
    a: float
    xi: float
    energy: float
    branch: Branch


@dataclass(frozen=True)
class VariationalResult:
    """Outcome of :func:`solve_variational`.

    ``point`` is ``None`` when ``xi`` is below the minimum of the locus; the
    Rayleigh quotient then has no stationary point and its infimum is the
    threshold value 0, which is what ``functional_value`` holds.
    """

    kind: PotentialKind
    l: int
    xi: float
    point: VariationalStationaryPoint | None
    functional_value: float
    bound: bool

    @property
    def energy(self) -> float:
        return self.point.energy if self.point is not None else 0.0

    def estimate(self) -> EnergyEstimate:
        return EnergyEstimate(Method.VARIATIONAL, self.energy, self.bound)


def _const(like, value):
    if isinstance(like, (int, float)):
        return float(value)
    return type(like)(value)


def _check_a(a):
    if not a > 0:
        raise DomainError(f"trial exponent must be positive, got {a!r}")


def stationary_locus(kind, l: int, a):
    """``(xi, E)`` at which ``a`` makes the Rayleigh quotient stationary."""
    kind = PotentialKind.parse(kind)
    _check_a(a)
    two = _const(a, 2)
    if kind is PotentialKind.GAUSSIAN:
        xi = (2 * a + 1) ** ((2 * l + 5) / two) / (two ** (l - 1 / two) * 4 * a ** ((2 * l + 1) / two))
        energy = a * (2 * l + 1 - 4 * a) / 2
    else:
        xi = (l + 1) * (2 * a + 1) ** (2 * l + 3) / (two ** (2 * (l + 1)) * a ** (2 * l + 1) * (2 * a + 2 * l + 3))
        energy = a * a * (2 * l + 1 - 2 * a) / (2 * (2 * a + 2 * l + 3))
    return xi, energy


def energy_functional(kind, l: int, xi, a):
    """Rayleigh quotient ``<H>`` of the trial function with exponent ``a``."""
    kind = PotentialKind.parse(kind)
    _check_a(a)
    if not xi > 0:
        raise DomainError(f"coupling xi must be positive, got {xi!r}")
    two = _const(a, 2)
    if kind is PotentialKind.GAUSSIAN:
        p = (2 * l + 3) / two
        return a * p - xi * (2 * a / (2 * a + 1)) ** p
    return a * a / 2 - xi * (2 * a) ** (2 * l + 3) / ((2 * l + 2) * (2 * a + 1) ** (2 * l + 2))


def energy_functional_derivative(kind, l: int, xi, a):
    """Analytic ``d<H>/da``."""
    kind = PotentialKind.parse(kind)
    _check_a(a)
    two = _const(a, 2)
    if kind is PotentialKind.GAUSSIAN:
        p = (2 * l + 3) / two
        return p - xi * p * (2 * a / (2 * a + 1)) ** (p - 1) * 2 / (2 * a + 1) ** 2
    # d/da (2a)^(k+1) (2a+1)^-k = 2 (2a)^k (2a+1)^-(k+1) (2a + k + 1),  k = 2l+2
    k = 2 * l + 2
    dpot = 2 * (2 * a) ** k * (2 * a + k + 1) / (2 * a + 1) ** (k + 1)
    return a - xi * dpot / k


def turning_exponent(kind, l: int) -> float:
    """``a`` at which the locus ``xi(a)`` is smallest (branch boundary)."""
    kind = PotentialKind.parse(kind)
    if kind is PotentialKind.GAUSSIAN:
        return (2 * l + 1) / 8.0
    # positive root of 4a^2 + (4l+8) a - (2l+1)(2l+3) = 0
    b = 4.0 * l + 8.0
    c = (2.0 * l + 1.0) * (2.0 * l + 3.0)
    return (-b + math.sqrt(b * b + 16.0 * c)) / 8.0


def threshold_exponent(kind, l: int, number=float):
    """``a`` at which the locus energy vanishes."""
    kind = PotentialKind.parse(kind)
    if kind is PotentialKind.GAUSSIAN:
        return number(2 * l + 1) / 4
    return number(2 * l + 1) / 2


def critical_coupling_closed_form(kind, l: int, number=float):
    """Variational estimate of the coupling at which the lowest ``l`` state binds."""
    kind = PotentialKind.parse(kind)
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    two = number(2)
    if kind is PotentialKind.GAUSSIAN:
        return (2 * l + 3) ** ((2 * l + 5) / two) / (8 * (2 * l + 1) ** ((2 * l + 1) / two))
    return two ** (2 * l) * number(l + 1) ** (2 * l + 3) / number(2 * l + 1) ** (2 * l + 1)


def minimum_coupling(kind, l: int) -> float:
    """Smallest ``xi`` for which the Rayleigh quotient has a stationary point."""
    return stationary_locus(kind, l, turning_exponent(kind, l))[0]


def solve_variational(kind, l: int, xi: float) -> VariationalResult:
    """Optimal trial exponent and energy at coupling ``xi``.

    Solves ``xi(a) = xi`` on the local-minimum branch by Brent's method on
    ``log xi(a)``; the bracket's upper end doubles until it encloses the root.
    """
    kind = PotentialKind.parse(kind)
    xi = check_coupling(xi)
    a_turn = turning_exponent(kind, l)
    xi_min = stationary_locus(kind, l, a_turn)[0]
    if xi < xi_min:
        return VariationalResult(kind, l, xi, None, 0.0, False)
    log_xi = math.log(xi)

    def g(a):
        return math.log(stationary_locus(kind, l, a)[0]) - log_xi

    if xi == xi_min:
        a = a_turn
    else:
        hi = 2.0 * a_turn
        while g(hi) < 0:
            hi *= 2.0
        a = brentq(g, a_turn, hi, xtol=1e-15 * a_turn, rtol=1e-15, maxiter=500)
    _, energy = stationary_locus(kind, l, a)
    point = VariationalStationaryPoint(a, xi, energy, Branch.LOCAL_MIN)
    return VariationalResult(kind, l, xi, point, energy_functional(kind, l, xi, a), energy < 0)
