"""Numerov shooting solver for the reduced radial equation.

The equation integrated is ``u'' = f(r) u`` with

    f(r) = l(l+1)/r**2 + 2 V(r) - 2 E

on the uniform grid ``r_i = i h``. Eigenvalues are located by bisection on
the node count of the outward solution combined with the sign of the
log-derivative mismatch at the outermost classical turning point, then
polished by a secant-type root search on that mismatch. Critical couplings
come from the zero-energy solution: each of its interior nodes is one bound
state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numba
import numpy as np
from scipy.optimize import brentq

from .model import (
    DimensionalParameters,
    DomainError,
    EnergyEstimate,
    Method,
    PotentialKind,
    QuantumNumbers,
    bottom_of_spectrum,
    check_coupling,
    reduce_to_dimensionless,
)

SERIES_TERMS = 40
# largest h**2 f / 12 tolerated at the first integrated point
START_T_MAX = 0.05
RESCALE_AT = 1e150
ZERO_ENERGY_RMAX = {PotentialKind.GAUSSIAN: 40.0, PotentialKind.YUKAWA: 60.0}
RMAX_FLOOR = 12.0
RMAX_CEILING = 5000.0


class SolverError(RuntimeError):
    pass


class BoundStateNotFound(SolverError):
    """No bound state with the requested quantum numbers exists."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass(frozen=True)
class SolverConfig:
    """Numerical settings. ``r_max=None`` selects the cutoff adaptively."""

    h: float = 1e-3
    r_max: float | None = None
    energy_tol: float = 1e-10
    max_iterations: int = 200
    critical_tol: float = 1e-6
    richardson: bool = True

    def __post_init__(self):
        if not self.h > 0:
            raise DomainError(f"step h must be positive, got {self.h}")
        if self.r_max is not None and not self.r_max > self.h:
            raise DomainError(f"r_max must exceed h, got r_max={self.r_max}, h={self.h}")
        if not self.energy_tol > 0 or not self.critical_tol > 0:
            raise DomainError("tolerances must be positive")
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be positive")


@dataclass
class RadialSolution:
    r: np.ndarray
    u: np.ndarray
    node_count: int
    matching_defect: float
    energy: float
    match_index: int = -1
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CriticalCouplingRecord:
    kind: PotentialKind
    l: int
    xi_crit: float
    bracket_width: float
    method: str = "zero_energy_node"
    n: int = 0


# ---------------------------------------------------------------------------
# kernels


@numba.njit(cache=True)
def _numerov_outward(t, y, start, stop):
    """Fill ``y[start+2 .. stop]`` from ``y[start], y[start+1]``.

    Returns the number of sign changes on ``[start, stop]``. Values are
    rescaled in place when they grow too large.
    """
    nodes = 0
    last = y[start]
    if y[start + 1] != 0.0:
        if last != 0.0 and (y[start + 1] > 0.0) != (last > 0.0):
            nodes += 1
        last = y[start + 1]
    for i in range(start + 1, stop):
        y[i + 1] = ((2.0 + 10.0 * t[i]) * y[i] - (1.0 - t[i - 1]) * y[i - 1]) / (1.0 - t[i + 1])
        v = y[i + 1]
        if v != 0.0:
            if last != 0.0 and (v > 0.0) != (last > 0.0):
                nodes += 1
            last = v
        if abs(v) > 1e150:
            for j in range(i + 2):
                y[j] *= 1e-150
            last *= 1e-150
    return nodes


@numba.njit(cache=True)
def _numerov_inward(t, y, start, stop):
    """Fill ``y[stop .. start-2]`` downward from ``y[start], y[start-1]``."""
    for i in range(start - 1, stop, -1):
        y[i - 1] = ((2.0 + 10.0 * t[i]) * y[i] - (1.0 - t[i + 1]) * y[i + 1]) / (1.0 - t[i - 1])
        if abs(y[i - 1]) > 1e150:
            for j in range(i - 1, start + 1):
                y[j] *= 1e-150


# ---------------------------------------------------------------------------
# helpers


def _w_coefficients(kind, xi, energy, terms=SERIES_TERMS):
    """Coefficients ``s_j`` of ``2V(r) - 2E = sum_j s_j r**(j-1)``."""
    s = np.zeros(terms)
    if kind is PotentialKind.GAUSSIAN:
        for k in range((terms - 1) // 2 + 1):
            j = 2 * k + 1
            if j < terms:
                s[j] += -2.0 * xi * (-1.0) ** k / math.factorial(k)
    else:
        for k in range(terms):
            s[k] += -2.0 * xi * (-1.0) ** k / math.factorial(k)
    s[1] += -2.0 * energy
    return s


def _series_coefficients(kind, xi, l, energy, terms=SERIES_TERMS):
    """Power series of the regular solution, ``u = r**(l+1) sum_k c_k r**k``."""
    s = _w_coefficients(kind, xi, energy, terms)
    c = np.zeros(terms)
    c[0] = 1.0
    for k in range(1, terms):
        acc = 0.0
        for j in range(k):
            acc += s[j] * c[k - 1 - j]
        c[k] = acc / (k * (2 * l + 1 + k))
    return c


def _start_index(l):
    # keep h^2 l(l+1) / (12 r^2) small where the recursion starts
    if l == 0:
        return 1
    return max(1, int(math.ceil(math.sqrt(l * (l + 1) / (12.0 * START_T_MAX)))))


def _grid(r_max, h):
    npts = int(round(r_max / h))
    return np.arange(npts + 1) * h, npts


def _f_values(kind, xi, l, energy, r):
    f = np.empty_like(r)
    rr = r[1:]
    if kind is PotentialKind.GAUSSIAN:
        pot = -xi * np.exp(-rr * rr)
    else:
        pot = -xi * np.exp(-rr) / rr
    f[1:] = l * (l + 1) / (rr * rr) + 2.0 * pot - 2.0 * energy
    f[0] = 0.0
    return f


def _outward(kind, xi, l, energy, r, h, stop, t=None):
    """Outward solution up to index ``stop`` plus its node count."""
    if t is None:
        t = h * h * _f_values(kind, xi, l, energy, r) / 12.0
    i0 = _start_index(l)
    c = _series_coefficients(kind, xi, l, energy)
    y = np.zeros(len(r))
    idx = np.arange(1, i0 + 2)
    # scaled so that y[i0] ~ 1 whatever l is
    y[idx] = (idx / i0) ** (l + 1) * np.polyval(c[::-1], r[idx])
    nodes = _numerov_outward(t, y, i0, stop)
    return y, nodes, t


def _turning_index(t):
    """Index of the outermost grid point in the classically allowed region."""
    allowed = np.nonzero(t[1:] < 0)[0]
    if allowed.size == 0:
        return -1
    return int(allowed[-1]) + 1


def _defect(y_out, y_in, t, m, h):
    """Log-derivative mismatch (outward minus inward) at index ``m``.

    ``y_in`` must already be scaled to agree with ``y_out`` at ``m``. The
    three-point Numerov residual is zero exactly when the merged function
    solves the discrete equation at ``m``.
    """
    s = (1.0 - t[m - 1]) * y_out[m - 1] + (1.0 - t[m + 1]) * y_in[m + 1] - (2.0 + 10.0 * t[m]) * y_out[m]
    return -s / (h * y_out[m])


def _inward(kind, xi, l, energy, r, h, m, t):
    npts = len(r) - 1
    kappa = math.sqrt(-2.0 * energy)
    y = np.zeros(len(r))
    y[npts] = 1.0
    y[npts - 1] = math.exp(kappa * h)
    _numerov_inward(t, y, npts, m - 1)
    return y


def _tail_extra_node(y, r, l, npts):
    """1 if the zero-energy solution would cross zero beyond ``r[npts]``.

    Past the range of the potential ``u = A r**(l+1) + B r**-l``; the
    asymptotic sign is that of ``A``.
    """
    j1 = int(round(0.75 * npts))
    r1, r2 = r[j1], r[npts]
    u1, u2 = y[j1], y[npts]
    a_coef = (u2 * r2**l - u1 * r1**l) / (r2 ** (2 * l + 1) - r1 ** (2 * l + 1))
    if u2 == 0.0 or a_coef == 0.0:
        return 0
    return int((a_coef > 0) != (u2 > 0))


# ---------------------------------------------------------------------------
# public operations


def integrate_radial(kind, xi: float, l: int, energy: float, cfg: SolverConfig | None = None,
                     r_max: float | None = None) -> RadialSolution:
    """Integrate the radial equation at a trial energy.

    For ``energy < 0`` outward and inward solutions are matched at the
    outermost classical turning point (or at ``r = min(1, r_max/2)`` when the
    energy lies below the whole effective potential). For ``energy >= 0``
    only the outward solution is returned and the defect is ``nan``.
    """
    kind = PotentialKind.parse(kind)
    xi = check_coupling(xi)
    cfg = cfg or SolverConfig()
    h = cfg.h
    r_max = r_max or cfg.r_max or _default_rmax(kind, xi, l, energy)
    r, npts = _grid(r_max, h)
    i0 = _start_index(l)
    if npts < i0 + 6:
        raise SolverError("grid too short for the requested l")
    if energy >= 0:
        y, nodes, _ = _outward(kind, xi, l, energy, r, h, npts)
        return RadialSolution(r, _normalise(y, h), nodes, math.nan, energy)

    t = h * h * _f_values(kind, xi, l, energy, r) / 12.0
    m = _turning_index(t)
    if m < 0 or m < i0 + 2:
        m = max(i0 + 2, int(round(min(1.0, r_max / 2) / h)))
    m = min(m, npts - 2)
    y, _, _ = _outward(kind, xi, l, energy, r, h, m + 1, t)
    y_in = _inward(kind, xi, l, energy, r, h, m, t)
    y_in *= y[m] / y_in[m]
    defect = _defect(y, y_in, t, m, h)
    merged = np.concatenate([y[: m + 1], y_in[m + 1:]])
    if not np.all(np.isfinite(merged)):
        raise SolverError("non-finite values in the radial solution")
    merged = _normalise(merged, h)
    return RadialSolution(r, merged, _count_nodes(merged), defect, energy, m)


def _normalise(y, h):
    if not np.all(np.isfinite(y)):
        raise SolverError("non-finite values in the radial solution")
    peak = np.max(np.abs(y))
    if peak == 0:
        return y
    y = y / peak
    norm = math.sqrt(np.sum(y * y) * h)
    y = y / norm
    first = y[np.nonzero(y)[0][0]]
    return y if first > 0 else -y


def _count_nodes(y):
    nz = y[y != 0.0]
    return int(np.count_nonzero(np.signbit(nz[1:]) != np.signbit(nz[:-1])))


def count_bound_states(kind, xi: float, l: int, cfg: SolverConfig | None = None) -> int:
    """Number of bound states with angular momentum ``l``.

    Counts the interior nodes of the zero-energy regular solution, including
    the one its asymptotic form would still produce beyond the cutoff.
    """
    kind = PotentialKind.parse(kind)
    xi = check_coupling(xi)
    cfg = cfg or SolverConfig()
    r, npts = _grid(ZERO_ENERGY_RMAX[kind], cfg.h)
    y, nodes, _ = _outward(kind, xi, l, 0.0, r, cfg.h, npts)
    return nodes + _tail_extra_node(y, r, l, npts)


def critical_coupling_reference(kind, l: int, cfg: SolverConfig | None = None, n: int = 0) -> CriticalCouplingRecord:
    """Coupling at which the state ``(n, l)`` reaches the threshold ``E = 0``.

    Bisection on ``xi`` of the predicate "the zero-energy solution has more
    than ``n`` nodes" down to ``cfg.critical_tol``.
    """
    kind = PotentialKind.parse(kind)
    cfg = cfg or SolverConfig()
    lo_limit, hi_limit = 1e-6, 1e6

    def binds(xi):
        return count_bound_states(kind, xi, l, cfg) > n

    lo = lo_limit
    if binds(lo):
        raise SolverError(f"state already bound at xi={lo}")
    hi = 1.0
    while not binds(hi):
        lo = hi
        hi *= 2.0
        if hi > hi_limit:
            raise SolverError(f"no critical coupling below xi={hi_limit} for n={n}, l={l}")
    for _ in range(cfg.max_iterations):
        if hi - lo <= cfg.critical_tol:
            break
        mid = 0.5 * (lo + hi)
        if binds(mid):
            hi = mid
        else:
            lo = mid
    if hi - lo > cfg.critical_tol:
        raise SolverError("critical-coupling bisection did not converge")
    return CriticalCouplingRecord(kind, l, 0.5 * (lo + hi), hi - lo, n=n)


def _default_rmax(kind, xi, l, energy):
    r_req = RMAX_FLOOR
    if energy < 0:
        r_req = max(r_req, 10.0 / math.sqrt(-2.0 * energy), 3.0 * _turning_radius(kind, xi, l, energy))
    return min(float(math.ceil(r_req)), RMAX_CEILING)


def _turning_radius(kind, xi, l, energy):
    """Outermost radius where the effective potential equals ``energy``."""
    from .model import effective_radial_potential

    def g(r):
        return effective_radial_potential(kind, xi, l, r) - energy

    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
        if hi > RMAX_CEILING:
            return RMAX_CEILING
    # g(hi) >= 0; step inward to find the allowed region
    lo = hi
    while lo > 1e-6 and g(lo) >= 0:
        lo /= 2.0
    if g(lo) >= 0:
        return 0.0
    return brentq(g, lo, hi, xtol=1e-10)


class _Shooter:
    """Eigenvalue search on a fixed grid."""

    def __init__(self, kind, xi, l, n, h, r_max):
        self.kind, self.xi, self.l, self.n, self.h = kind, xi, l, n, h
        self.r, self.npts = _grid(r_max, h)
        self.i0 = _start_index(l)

    def t(self, energy):
        return self.h * self.h * _f_values(self.kind, self.xi, self.l, energy, self.r) / 12.0

    def match_index(self, t):
        m = _turning_index(t)
        if m < 0:
            return -1
        return min(max(m, self.i0 + 2), self.npts - 2)

    def defect(self, energy, m):
        t = self.t(energy)
        y, nodes, _ = _outward(self.kind, self.xi, self.l, energy, self.r, self.h, m + 1, t)
        y_in = _inward(self.kind, self.xi, self.l, energy, self.r, self.h, m, t)
        y_in *= y[m] / y_in[m]
        return _defect(y, y_in, t, m, self.h), _count_nodes(y[: m + 1])

    def classify(self, energy):
        """+1 if ``energy`` lies above the n-th level, -1 if below."""
        t = self.t(energy)
        m = self.match_index(t)
        if m < 0:
            return -1, m
        d, nodes = self.defect(energy, m)
        if nodes > self.n:
            return 1, m
        if nodes < self.n:
            return -1, m
        return (1 if d < 0 else -1), m

    def solve(self, lo, hi, tol, max_iterations):
        iterations = 0
        polish_width = 1e-6 * max(1.0, abs(lo), abs(hi))
        while hi - lo > polish_width and iterations < max_iterations:
            mid = 0.5 * (lo + hi)
            side, _ = self.classify(mid)
            if side > 0:
                hi = mid
            else:
                lo = mid
            iterations += 1
        mid = 0.5 * (lo + hi)
        m = self.match_index(self.t(mid))
        if m >= 0:
            d_lo, n_lo = self.defect(lo, m)
            d_hi, n_hi = self.defect(hi, m)
            if n_lo == n_hi == self.n and d_lo > 0 > d_hi:
                energy = brentq(lambda e: self.defect(e, m)[0], lo, hi, xtol=tol, rtol=1e-15,
                                maxiter=max_iterations)
                return energy, iterations
        while hi - lo > tol and iterations < max_iterations:
            mid = 0.5 * (lo + hi)
            side, _ = self.classify(mid)
            if side > 0:
                hi = mid
            else:
                lo = mid
            iterations += 1
        return 0.5 * (lo + hi), iterations


def find_eigenvalue(kind, xi: float, qn: QuantumNumbers, h: float, r_max: float,
                    energy_tol: float = 1e-10, max_iterations: int = 200,
                    bracket: tuple[float, float] | None = None) -> float:
    """Discrete Numerov eigenvalue on the grid ``(h, r_max)``, no extrapolation."""
    kind = PotentialKind.parse(kind)
    shooter = _Shooter(kind, xi, qn.l, qn.n, h, r_max)
    lo, hi = bracket or (bottom_of_spectrum(kind, xi, qn), 0.0)
    energy, _ = shooter.solve(lo, hi, energy_tol, max_iterations)
    return energy


def _adaptive_rmax(kind, xi, qn, cfg, lo):
    """Grow the cutoff until it covers the decay length of the located state."""
    r_max = RMAX_FLOOR
    for _ in range(20):
        energy = find_eigenvalue(kind, xi, qn, cfg.h, r_max, 1e-8 * max(1.0, abs(lo)), cfg.max_iterations)
        if energy > -1e-7 * max(1.0, abs(lo)):
            # level pushed out of the box; widen and retry
            r_max = min(2.0 * r_max, RMAX_CEILING)
            continue
        needed = _default_rmax(kind, xi, qn.l, energy)
        if needed <= r_max or r_max >= RMAX_CEILING:
            return r_max
        r_max = needed
    return r_max


def solve_bound_state(kind, xi: float, qn: QuantumNumbers, cfg: SolverConfig | None = None) -> EnergyEstimate:
    """Reference energy of the state ``qn``.

    The returned value is the step-halving (Richardson) extrapolation of the
    Numerov eigenvalues at ``h`` and ``h/2``; ``error_estimate`` is
    ``|E(h) - E(h/2)| / 15``. With ``cfg.richardson=False`` the raw ``E(h)``
    is returned and no error estimate is made.
    """
    kind = PotentialKind.parse(kind)
    xi = check_coupling(xi)
    cfg = cfg or SolverConfig()
    available = count_bound_states(kind, xi, qn.l, cfg)
    if available <= qn.n:
        raise BoundStateNotFound(
            f"no bound state n={qn.n}, l={qn.l} at xi={xi} ({available} bound states with this l)",
            {"available": available, "xi": xi, "n": qn.n, "l": qn.l},
        )
    lo = bottom_of_spectrum(kind, xi, qn)
    r_max = cfg.r_max or _adaptive_rmax(kind, xi, qn, cfg, lo)
    e_h = find_eigenvalue(kind, xi, qn, cfg.h, r_max, cfg.energy_tol, cfg.max_iterations)
    if not e_h < 0:
        raise BoundStateNotFound(f"level n={qn.n}, l={qn.l} not resolved below threshold at xi={xi}",
                                 {"r_max": r_max, "energy": e_h})
    if not cfg.richardson:
        return EnergyEstimate(Method.REFERENCE, e_h, True)
    e_h2 = find_eigenvalue(kind, xi, qn, cfg.h / 2, r_max, cfg.energy_tol, cfg.max_iterations)
    value = e_h2 + (e_h2 - e_h) / 15.0
    return EnergyEstimate(Method.REFERENCE, value, value < 0, abs(e_h - e_h2) / 15.0)


def bound_state_solution(kind, xi: float, qn: QuantumNumbers, cfg: SolverConfig | None = None) -> RadialSolution:
    """Eigenfunction at the grid eigenvalue for ``cfg.h``."""
    kind = PotentialKind.parse(kind)
    cfg = replace(cfg or SolverConfig(), richardson=False)
    energy = solve_bound_state(kind, xi, qn, cfg).value
    lo = bottom_of_spectrum(kind, xi, qn)
    r_max = cfg.r_max or _adaptive_rmax(kind, xi, qn, cfg, lo)
    return integrate_radial(kind, xi, qn.l, energy, cfg, r_max=r_max)


def solve_dimensional(p: DimensionalParameters, kind, qn: QuantumNumbers, cfg: SolverConfig | None = None) -> float:
    """Reference energy in the units of ``p``."""
    xi, scale = reduce_to_dimensionless(p, kind)
    return solve_bound_state(kind, xi, qn, cfg).value * scale
