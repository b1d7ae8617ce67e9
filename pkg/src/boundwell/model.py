"""Potentials, quantum numbers and the dimensional <-> dimensionless mapping.

Everything downstream works in natural units (hbar = m = 1) with a single
coupling ``xi``:

* Gaussian well  ``V(r) = -xi * exp(-r**2)``, length unit ``L = lambda**-1/2``.
* Yukawa well    ``V(r) = -xi * exp(-r) / r``, length unit ``L`` = screening length.

For both, ``E_dimensional = (gamma / xi) * E_dimensionless``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class DomainError(ValueError):
    """An argument lies outside the domain of the requested quantity."""


class PotentialKind(str, enum.Enum):
    GAUSSIAN = "gaussian"
    YUKAWA = "yukawa"

    @classmethod
    def parse(cls, value: "PotentialKind | str") -> "PotentialKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown potential kind {value!r}") from None


class Method(str, enum.Enum):
    HARMONIC_ZEROTH = "harmonic"
    KOKSAL = "koksal"
    VARIATIONAL = "variational"
    REFERENCE = "reference"


@dataclass(frozen=True)
class DimensionalParameters:
    """Physical parameters of the well.

    ``width`` is the Gaussian exponent ``lambda`` (inverse length squared) or,
    for the Yukawa well, the screening length. For the Yukawa well ``depth``
    is the strength ``gamma`` in ``-gamma * L * exp(-r/L) / r``, so that
    ``gamma`` keeps units of energy.
    """

    mass: float
    depth: float
    width: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("mass", "depth", "width", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    n: int = 0
    l: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or int(self.l) != self.l or self.n < 0 or self.l < 0:
            raise DomainError(f"quantum numbers must be non-negative integers, got n={self.n}, l={self.l}")

    @property
    def oscillator_index(self) -> float:
        """``2n + l + 3/2``, the harmonic-oscillator level factor."""
        return 2 * self.n + self.l + 1.5


@dataclass(frozen=True)
class EnergyEstimate:
    """A dimensionless energy tagged with the method that produced it.

    ``bound`` is only ever true for values strictly inside the bound-state
    window ``(lower, 0)`` where ``lower`` is the bottom of the spectrum
    (``-xi`` for the Gaussian well, the hydrogenic level for Yukawa).
    """

    method: Method
    value: float
    bound: bool
    error_estimate: float | None = None


def check_coupling(xi: float) -> float:
    xi = float(xi)
    if not (math.isfinite(xi) and xi > 0):
        raise DomainError(f"coupling xi must be positive and finite, got {xi!r}")
    return xi


def reduce_to_dimensionless(p: DimensionalParameters, kind: PotentialKind | str = PotentialKind.GAUSSIAN):
    """Map physical parameters onto ``(xi, energy_scale)``.

    Gaussian: ``L = width**-1/2`` and ``xi = m*gamma / (lambda*hbar**2)``.
    Yukawa: ``L = width`` and ``xi = m*gamma*L**2 / hbar**2``.

    In both cases the energy unit is ``hbar**2 / (m L**2) = gamma / xi``.
    """
    kind = PotentialKind.parse(kind)
    if kind is PotentialKind.GAUSSIAN:
        length_sq = 1.0 / p.width
    else:
        length_sq = p.width**2
    xi = p.mass * p.depth * length_sq / p.hbar**2
    return xi, p.depth / xi


def restore_energy(energy: float, energy_scale: float) -> float:
    """Dimensional energy from a dimensionless one."""
    return energy * energy_scale


def bottom_of_spectrum(kind: PotentialKind | str, xi: float, qn: QuantumNumbers | None = None) -> float:
    """Strict lower bound on any bound level of ``kind`` at coupling ``xi``.

    For the Yukawa well the potential is bounded below by the Coulomb one,
    so the hydrogenic level ``-xi**2 / (2 (n+l+1)**2)`` bounds the state.
    """
    kind = PotentialKind.parse(kind)
    if kind is PotentialKind.GAUSSIAN:
        return -xi
    principal = 1 if qn is None else qn.n + qn.l + 1
    return -(xi**2) / (2.0 * principal**2)


def potential_value(kind: PotentialKind | str, xi: float, r: float) -> float:
    kind = PotentialKind.parse(kind)
    if r < 0:
        raise DomainError(f"radius must be non-negative, got {r!r}")
    if kind is PotentialKind.GAUSSIAN:
        return -xi * math.exp(-r * r)
    if r == 0:
        raise DomainError("the Yukawa potential is singular at r = 0")
    return -xi * math.exp(-r) / r


def effective_radial_potential(kind: PotentialKind | str, xi: float, l: int, r: float) -> float:
    """``V(r) + l(l+1)/(2 r**2)``."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r!r}")
    return potential_value(kind, xi, r) + l * (l + 1) / (2.0 * r * r)
