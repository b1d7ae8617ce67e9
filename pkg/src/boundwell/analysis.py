"""Method-comparison datasets and error metrics.

Four datasets are produced:

1. ground radial states ``n = 0`` across ``l`` at fixed ``xi`` (Gaussian);
2. the ``n = l = 0`` level across a grid of ``xi`` (Gaussian);
3. critical couplings across ``l`` for the Gaussian well (three methods);
4. critical couplings across ``l`` for the Yukawa well (variational and reference).
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .empirical import koksal_critical, koksal_energy
from .model import DomainError, PotentialKind, QuantumNumbers
from .solver import BoundStateNotFound, SolverConfig, count_bound_states, critical_coupling_reference, solve_bound_state
from .variational import critical_coupling_closed_form, solve_variational

FIG1_XI = 200.0
FIG1_L_MAX = 10
FIG2_XI = tuple(float(x) for x in range(2, 31, 2))
FIG34_L_MAX = 10


class SubcriticalWarning(UserWarning):
    pass


def _abs_err(value, ref):
    if value is None or ref is None:
        return None
    return abs(value - ref)


def _rel_err(value, ref):
    if value is None or ref is None or ref == 0:
        return None
    return abs(value - ref) / abs(ref)


@dataclass(frozen=True)
class ComparisonRow:
    kind: PotentialKind
    xi: float
    n: int
    l: int
    e_koksal: float | None
    e_variational: float | None
    e_reference: float | None
    reference_error: float | None = None

    @property
    def abs_err_koksal(self):
        return _abs_err(self.e_koksal, self.e_reference)

    @property
    def abs_err_variational(self):
        return _abs_err(self.e_variational, self.e_reference)

    @property
    def rel_err_koksal(self):
        return _rel_err(self.e_koksal, self.e_reference)

    @property
    def rel_err_variational(self):
        return _rel_err(self.e_variational, self.e_reference)

    @property
    def subcritical(self) -> bool:
        return self.e_reference is None

    def estimates(self):
        """``{method: (value, reference)}`` for the approximate methods."""
        return {"koksal": (self.e_koksal, self.e_reference),
                "variational": (self.e_variational, self.e_reference)}


@dataclass(frozen=True)
class CriticalRow:
    kind: PotentialKind
    l: int
    xi_koksal: float | None
    xi_variational: float
    xi_reference: float
    n: int = 0

    def __post_init__(self):
        # the variational value bounds the true critical coupling from above
        if not self.xi_variational >= self.xi_reference:
            raise AssertionError(
                f"variational critical coupling {self.xi_variational} below reference {self.xi_reference} (l={self.l})"
            )

    def estimates(self):
        return {"koksal": (self.xi_koksal, self.xi_reference),
                "variational": (self.xi_variational, self.xi_reference)}


def comparison_row(kind, xi: float, qn: QuantumNumbers, cfg: SolverConfig | None = None) -> ComparisonRow:
    """All available estimates for one state. Missing ones are ``None``."""
    kind = PotentialKind.parse(kind)
    cfg = cfg or SolverConfig()
    e_k = koksal_energy(qn, xi).value if kind is PotentialKind.GAUSSIAN else None
    e_v = solve_variational(kind, qn.l, xi).energy if qn.n == 0 else None
    try:
        ref = solve_bound_state(kind, xi, qn, cfg)
        e_ref, err = ref.value, ref.error_estimate
    except BoundStateNotFound:
        e_ref, err = None, None
    return ComparisonRow(kind, float(xi), qn.n, qn.l, e_k, e_v, e_ref, err)


def _comparison_job(args):
    return comparison_row(*args)


def _critical_job(args):
    kind, l, cfg = args
    ref = critical_coupling_reference(kind, l, cfg).xi_crit
    xi_k = koksal_critical(QuantumNumbers(0, l)) if kind is PotentialKind.GAUSSIAN else None
    return CriticalRow(kind, l, xi_k, critical_coupling_closed_form(kind, l), ref)


def _run(job, tasks, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, tasks))
    return [job(t) for t in tasks]


def figure1_data(l_max: int = FIG1_L_MAX, xi: float = FIG1_XI, cfg: SolverConfig | None = None,
                 workers: int = 1) -> list[ComparisonRow]:
    """Gaussian ``n = 0`` levels for ``l = 0..l_max`` at one coupling.

    Stops (with a warning) at the first ``l`` that has no reference bound state.
    """
    cfg = cfg or SolverConfig()
    kind = PotentialKind.GAUSSIAN
    ls = []
    for l in range(l_max + 1):
        if count_bound_states(kind, xi, l, cfg) < 1:
            warnings.warn(f"no bound n=0 state for l={l} at xi={xi}; truncating at l={l - 1}", SubcriticalWarning)
            break
        ls.append(l)
    rows = _run(_comparison_job, [(kind, xi, QuantumNumbers(0, l), cfg) for l in ls], workers)
    return sorted(rows, key=lambda row: (row.l, row.xi))


def figure2_data(xi_values=FIG2_XI, cfg: SolverConfig | None = None, workers: int = 1) -> list[ComparisonRow]:
    """Gaussian ground state ``n = l = 0`` over a grid of couplings."""
    cfg = cfg or SolverConfig()
    tasks = [(PotentialKind.GAUSSIAN, float(xi), QuantumNumbers(0, 0), cfg) for xi in xi_values]
    rows = _run(_comparison_job, tasks, workers)
    for row in rows:
        if row.subcritical:
            warnings.warn(f"xi={row.xi} is below the ground-state critical coupling", SubcriticalWarning)
    return sorted(rows, key=lambda row: (row.l, row.xi))


def critical_data(kind, l_max: int = FIG34_L_MAX, cfg: SolverConfig | None = None,
                  workers: int = 1) -> list[CriticalRow]:
    kind = PotentialKind.parse(kind)
    if l_max < 0:
        raise DomainError("l_max must be non-negative")
    cfg = cfg or SolverConfig()
    rows = _run(_critical_job, [(kind, l, cfg) for l in range(l_max + 1)], workers)
    return sorted(rows, key=lambda row: row.l)


def figure3_data(l_max: int = FIG34_L_MAX, cfg: SolverConfig | None = None, workers: int = 1) -> list[CriticalRow]:
    return critical_data(PotentialKind.GAUSSIAN, l_max, cfg, workers)


def figure4_data(l_max: int = FIG34_L_MAX, cfg: SolverConfig | None = None, workers: int = 1) -> list[CriticalRow]:
    return critical_data(PotentialKind.YUKAWA, l_max, cfg, workers)


@dataclass(frozen=True)
class MethodSummary:
    count: int
    max_abs: float
    mean_abs: float
    max_rel: float | None
    mean_rel: float | None


def error_summary(rows) -> dict[str, MethodSummary]:
    """Max and mean absolute/relative errors per approximate method.

    Rows where a method or the reference is missing are skipped for that
    method; methods with no usable rows are left out.
    """
    rows = list(rows)
    if not rows:
        raise DomainError("error_summary needs at least one row")
    collected: dict[str, tuple[list, list]] = {}
    for row in rows:
        for method, (value, ref) in row.estimates().items():
            if value is None or ref is None:
                continue
            abs_list, rel_list = collected.setdefault(method, ([], []))
            abs_list.append(abs(value - ref))
            if ref != 0:
                rel_list.append(abs(value - ref) / abs(ref))
    summary = {}
    for method in sorted(collected):
        abs_list, rel_list = collected[method]
        summary[method] = MethodSummary(
            len(abs_list),
            max(abs_list),
            math.fsum(abs_list) / len(abs_list),
            max(rel_list) if rel_list else None,
            math.fsum(rel_list) / len(rel_list) if rel_list else None,
        )
    return summary
