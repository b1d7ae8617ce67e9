"""Command-line front end.

    boundwell energy   --potential gaussian --xi 200 --n 0 --l 0 --method all
    boundwell critical --potential yukawa --l 1 --method variational
    boundwell count    --potential gaussian --xi 30 --l 2
    boundwell sweep    --potential gaussian --l 0 --xi-list 2 4 8 --method all
    boundwell figure 1 --out fig1.csv [--plot-script fig1.gp]

Exit codes: 0 success, 1 domain/solver/I-O error, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

from . import __version__
from .analysis import (
    FIG1_L_MAX,
    FIG1_XI,
    FIG2_XI,
    FIG34_L_MAX,
    ComparisonRow,
    CriticalRow,
    comparison_row,
    critical_data,
    figure1_data,
    figure2_data,
)
from .empirical import koksal_critical, koksal_energy
from .model import DomainError, PotentialKind, QuantumNumbers
from .solver import SolverConfig, SolverError, count_bound_states, critical_coupling_reference, solve_bound_state
from .variational import critical_coupling_closed_form, solve_variational

ENERGY_COLUMNS = ("potential", "xi", "n", "l", "method", "energy", "ref_energy", "abs_err", "rel_err")
CRITICAL_COLUMNS = ("potential", "n", "l", "method", "xi_crit", "ref_xi_crit", "abs_err", "rel_err")
METHODS = ("koksal", "variational", "reference")


def _fmt(value) -> str:
    return f"{value:.12f}"


# ---------------------------------------------------------------------------
# tables


def energy_records(rows: list[ComparisonRow]) -> list[dict]:
    """Long format: one record per (state, method) with a present value."""
    records = []
    for row in rows:
        values = {"koksal": row.e_koksal, "variational": row.e_variational, "reference": row.e_reference}
        for method in METHODS:
            value = values[method]
            if value is None:
                continue
            ref = None if method == "reference" else row.e_reference
            abs_err = None if ref is None else abs(value - ref)
            rel_err = None if ref in (None, 0) else abs(value - ref) / abs(ref)
            records.append(dict(zip(ENERGY_COLUMNS, (row.kind.value, row.xi, row.n, row.l, method,
                                                     value, ref, abs_err, rel_err))))
    return records


def critical_records(rows: list[CriticalRow]) -> list[dict]:
    records = []
    for row in rows:
        values = {"koksal": row.xi_koksal, "variational": row.xi_variational, "reference": row.xi_reference}
        for method in METHODS:
            value = values[method]
            if value is None:
                continue
            ref = None if method == "reference" else row.xi_reference
            abs_err = None if ref is None else abs(value - ref)
            rel_err = None if ref in (None, 0) else abs(value - ref) / abs(ref)
            records.append(dict(zip(CRITICAL_COLUMNS, (row.kind.value, row.n, row.l, method,
                                                       value, ref, abs_err, rel_err))))
    return records


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_table(records: list[dict], fmt: str = "csv", columns=None, comments=()) -> str:
    """Serialise records; floats use the shortest round-trip representation."""
    if not records:
        raise DomainError("cannot emit an empty table")
    columns = list(columns or records[0].keys())
    if fmt == "json":
        return json.dumps([{c: rec.get(c) for c in columns} for rec in records], indent=2) + "\n"
    if fmt != "csv":
        raise DomainError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def emit_table(records: list[dict], fmt: str = "csv", path=None, columns=None, comments=()) -> None:
    """Write the table to ``path`` (UTF-8, ``\\n`` endings) or standard output."""
    text = format_table(records, fmt, columns, comments)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_csv_table(text: str) -> list[dict]:
    """Parse a table written by :func:`format_table`; ``#`` lines are skipped."""
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    records = []
    for raw in csv.DictReader(lines):
        rec = {}
        for key, cell in raw.items():
            rec[key] = _parse_cell(key, cell)
        records.append(rec)
    return records


def _parse_cell(key, cell):
    if cell == "":
        return None
    if key in ("potential", "method"):
        return cell
    if key in ("n", "l"):
        return int(cell)
    return float(cell)


# ---------------------------------------------------------------------------
# argument parsing


def _solver_args(p):
    g = p.add_argument_group("solver")
    g.add_argument("--h", type=float, default=1e-3, help="Numerov grid step")
    g.add_argument("--r-max", type=float, default=None, help="integration cutoff (default: adaptive)")
    g.add_argument("--tol", type=float, default=1e-10, help="eigenvalue tolerance")


def _output_args(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default: standard output)")


def _potential(p, required=True):
    p.add_argument("--potential", type=str.lower, choices=[k.value for k in PotentialKind],
                   default=None if required else "gaussian", required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boundwell", description="Bound states and critical couplings of Gaussian and Yukawa wells.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="energy of one state")
    _potential(p)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    _solver_args(p)
    _output_args(p)

    p = sub.add_parser("critical", help="critical coupling of one state")
    _potential(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    _solver_args(p)
    _output_args(p)

    p = sub.add_parser("count", help="number of bound states with a given l")
    _potential(p)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--l", type=int, default=0)
    _solver_args(p)

    p = sub.add_parser("sweep", help="energies over a grid of xi (fixed l) or of l (fixed xi)")
    _potential(p)
    p.add_argument("--n", type=int, default=0)
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--xi-list", type=float, nargs="+", help="couplings to sweep (with --l)")
    grid.add_argument("--l-max", type=int, help="sweep l = 0..L_MAX (with --xi)")
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    _solver_args(p)
    _output_args(p)

    p = sub.add_parser("figure", help="regenerate a comparison dataset")
    p.add_argument("figure_id", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--l-max", type=int, default=None)
    p.add_argument("--xi", type=float, default=None, help="coupling for figure 1")
    p.add_argument("--xi-list", type=float, nargs="+", default=None, help="couplings for figure 2")
    p.add_argument("--plot-script", default=None, help="also write a gnuplot script to this path")
    p.add_argument("--workers", type=int, default=1)
    _solver_args(p)
    _output_args(p)
    return parser


def _validate(parser, args):
    kind = getattr(args, "potential", None)
    method = getattr(args, "method", None)
    if kind == "yukawa" and method == "koksal":
        parser.error("--method koksal is only defined for --potential gaussian")
    n = getattr(args, "n", 0)
    if method == "variational" and n and n > 0:
        parser.error("--method variational only covers the lowest state of each l (n = 0)")
    for name in ("n", "l", "l_max"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            parser.error(f"--{name.replace('_', '-')} must be non-negative")
    if args.command == "sweep" and args.l_max is not None and args.xi is None:
        parser.error("sweep --l-max requires --xi")
    if args.command == "figure":
        if args.xi is not None and args.figure_id != 1:
            parser.error("--xi only applies to figure 1")
        if args.xi_list is not None and args.figure_id != 2:
            parser.error("--xi-list only applies to figure 2")
        if args.l_max is not None and args.figure_id == 2:
            parser.error("--l-max does not apply to figure 2")


def _config(args) -> SolverConfig:
    return SolverConfig(h=args.h, r_max=args.r_max, energy_tol=args.tol)


def _methods(args, kind):
    if args.method != "all":
        return [args.method]
    methods = list(METHODS)
    if kind is not PotentialKind.GAUSSIAN:
        methods.remove("koksal")
    if getattr(args, "n", 0) > 0:
        methods.remove("variational")
    return methods


# ---------------------------------------------------------------------------
# commands


def _energy_value(method, kind, xi, qn, cfg):
    if method == "koksal":
        return koksal_energy(qn, xi, kind).value
    if method == "variational":
        return solve_variational(kind, qn.l, xi).energy
    return solve_bound_state(kind, xi, qn, cfg).value


def _print_values(pairs, single):
    for method, value in pairs:
        print(_fmt(value) if single else f"{method} {_fmt(value)}")


def cmd_energy(args):
    kind = PotentialKind.parse(args.potential)
    qn = QuantumNumbers(args.n, args.l)
    cfg = _config(args)
    methods = _methods(args, kind)
    if args.out is not None or args.format == "json":
        row = comparison_row(kind, args.xi, qn, cfg)
        records = [r for r in energy_records([row]) if r["method"] in methods]
        emit_table(records, args.format, args.out, ENERGY_COLUMNS)
        return 0
    _print_values([(m, _energy_value(m, kind, args.xi, qn, cfg)) for m in methods], len(methods) == 1)
    return 0


def _critical_value(method, kind, qn, cfg):
    if method == "koksal":
        return koksal_critical(qn, kind)
    if method == "variational":
        return critical_coupling_closed_form(kind, qn.l)
    return critical_coupling_reference(kind, qn.l, cfg, n=qn.n).xi_crit


def cmd_critical(args):
    kind = PotentialKind.parse(args.potential)
    qn = QuantumNumbers(args.n, args.l)
    cfg = _config(args)
    methods = _methods(args, kind)
    pairs = [(m, _critical_value(m, kind, qn, cfg)) for m in methods]
    if args.out is not None or args.format == "json":
        ref = dict(pairs).get("reference")
        records = []
        for m, v in pairs:
            r = None if m == "reference" else ref
            records.append(dict(zip(CRITICAL_COLUMNS, (kind.value, qn.n, qn.l, m, v, r,
                                                       None if r is None else abs(v - r),
                                                       None if r is None else abs(v - r) / abs(r)))))
        emit_table(records, args.format, args.out, CRITICAL_COLUMNS)
        return 0
    _print_values(pairs, len(pairs) == 1)
    return 0


def cmd_count(args):
    print(count_bound_states(args.potential, args.xi, args.l, _config(args)))
    return 0


def cmd_sweep(args):
    kind = PotentialKind.parse(args.potential)
    cfg = _config(args)
    methods = _methods(args, kind)
    if args.xi_list is not None:
        states = [(xi, QuantumNumbers(args.n, args.l)) for xi in args.xi_list]
    else:
        states = [(args.xi, QuantumNumbers(args.n, l)) for l in range(args.l_max + 1)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = [comparison_row(kind, xi, qn, cfg) for xi, qn in states]
    rows.sort(key=lambda row: (row.l, row.xi))
    records = [r for r in energy_records(rows) if r["method"] in methods]
    emit_table(records, args.format, args.out, ENERGY_COLUMNS)
    return 0


def figure_table(figure_id: int, l_max=None, xi=None, xi_list=None, cfg: SolverConfig | None = None,
                 workers: int = 1):
    """``(records, columns, comments)`` for one figure dataset."""
    cfg = cfg or SolverConfig()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if figure_id == 1:
            l_max = FIG1_L_MAX if l_max is None else l_max
            xi = FIG1_XI if xi is None else xi
            rows = figure1_data(l_max, xi, cfg, workers)
            grid = f"potential=gaussian n=0 xi={xi!r} l=0..{l_max}"
            records, columns = energy_records(rows), ENERGY_COLUMNS
        elif figure_id == 2:
            xi_values = tuple(FIG2_XI if xi_list is None else xi_list)
            rows = figure2_data(xi_values, cfg, workers)
            grid = "potential=gaussian n=0 l=0 xi=" + " ".join(repr(float(x)) for x in xi_values)
            records, columns = energy_records(rows), ENERGY_COLUMNS
        elif figure_id in (3, 4):
            kind = PotentialKind.GAUSSIAN if figure_id == 3 else PotentialKind.YUKAWA
            l_max = FIG34_L_MAX if l_max is None else l_max
            rows = critical_data(kind, l_max, cfg, workers)
            grid = f"potential={kind.value} n=0 l=0..{l_max}"
            records, columns = critical_records(rows), CRITICAL_COLUMNS
        else:
            raise DomainError(f"unknown figure {figure_id}")
    comments = (
        f"boundwell {__version__} figure {figure_id}",
        f"grid: {grid}",
        f"solver: h={cfg.h!r} r_max={'adaptive' if cfg.r_max is None else repr(cfg.r_max)} "
        f"energy_tol={cfg.energy_tol!r} critical_tol={cfg.critical_tol!r} richardson={cfg.richardson}",
    )
    return records, columns, comments


def plot_script(figure_id: int, data_path: str) -> str:
    """gnuplot script drawing the series of one figure dataset."""
    styles = {
        "koksal": "with points pt 5 lc rgb 'red' title 'Koksal'",
        "variational": "with points pt 7 lc rgb 'blue' title 'variational'",
        "reference": "with lines lw 2 lc rgb 'black' title 'reference'",
    }
    if figure_id in (1, 2):
        xcol, ycol = ("4", "6") if figure_id == 1 else ("2", "6")
        xlabel = "l" if figure_id == 1 else "xi"
        ylabel = "E'"
    else:
        xcol, ycol = "3", "5"
        xlabel, ylabel = "l", "xi_crit"
    methods = METHODS if figure_id != 4 else ("variational", "reference")
    method_col = "5" if figure_id in (1, 2) else "4"
    lines = [
        "set datafile separator ','",
        "set datafile commentschars '#'",
        f"set xlabel \"{xlabel}\"",
        f"set ylabel \"{ylabel}\"",
        "set key top left",
    ]
    parts = [f"'{data_path}' every ::1 using {xcol}:(strcol({method_col}) eq '{m}' ? ${ycol} : 1/0) {styles[m]}"
             for m in methods]
    lines.append("plot " + ", \\\n     ".join(parts))
    return "\n".join(lines) + "\n"


def cmd_figure(args):
    records, columns, comments = figure_table(args.figure_id, args.l_max, args.xi, args.xi_list,
                                              _config(args), args.workers)
    emit_table(records, args.format, args.out, columns, comments if args.format == "csv" else ())
    if args.plot_script:
        with open(args.plot_script, "w", encoding="utf-8", newline="") as fh:
            fh.write(plot_script(args.figure_id, args.out or "figure.csv"))
    return 0


COMMANDS = {"energy": cmd_energy, "critical": cmd_critical, "count": cmd_count,
            "sweep": cmd_sweep, "figure": cmd_figure}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (DomainError, SolverError, OSError) as exc:
        print(f"boundwell: error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
