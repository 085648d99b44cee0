"""Command-line interface: ``qcorr measure | sweep | validate``.

Exit codes: 0 ok, 1 usage error, 2 invalid input, 3 partition budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from qcorr.entropy import vn_entropy
from qcorr.errors import InvalidStateError, ParseError, PartitionBudgetExceeded
from qcorr.linalg import HERMITIAN_TOL, PSD_TOL, TRACE_TOL, density_residuals, partial_trace
from qcorr.measure_d import default_trials, estimate_D
from qcorr.measure_g import DEFAULT_BUDGET, compute_G
from qcorr.negativity import negativity_extremes
from qcorr.states import FAMILIES, StateSpec
from qcorr.sweep import MEASURES, SweepSpec, run_sweep, write_csv
from qcorr.textio import read_matrix

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3

_MEASURE_ALIASES = {"negativity": ("negativity_min", "negativity_max")}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _measures(text: str) -> tuple[str, ...]:
    out: list[str] = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        for m in _MEASURE_ALIASES.get(tok, (tok,)):
            if m not in MEASURES:
                raise argparse.ArgumentTypeError(f"unknown measure {tok!r}; choose from {', '.join(MEASURES)}, negativity")
            if m not in out:
                out.append(m)
    if not out:
        raise argparse.ArgumentTypeError("no measures given")
    return tuple(out)


def _state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=[f for f in FAMILIES if f not in ("classical", "file")])
    p.add_argument("--n-qubits", type=int, default=3, help="qubit count for pseudo_ghz (default 3)")
    p.add_argument("--tripartite", action="store_true", help="read horodecki_2x4 as three qubits instead of 2x4")
    p.add_argument("--measures", type=_measures, default=MEASURES, help="comma list of D,G,negativity_min,negativity_max")
    p.add_argument("--trials", type=int, default=None, help="random trials for D (default by dimension)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--partition-budget", type=int, default=DEFAULT_BUDGET)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcorr", description="Nonclassical-correlation measures D and G, plus negativity.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("measure", help="evaluate measures for one state")
    _state_flags(m)
    m.add_argument("--p", "--b", dest="param", type=float, help="family parameter (p, or b for horodecki_2x4)")
    m.add_argument("--file", help="density-matrix file instead of --family")
    m.add_argument("--json", action="store_true", help="machine-readable output")

    s = sub.add_parser("sweep", help="sweep a family parameter and write CSV")
    _state_flags(s)
    s.add_argument("--from", dest="start", type=float, default=0.0)
    s.add_argument("--to", dest="end", type=float, default=None, help="default: family maximum")
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("--out", default="-", help="CSV path, '-' for stdout")

    v = sub.add_parser("validate", help="check a density-matrix file")
    v.add_argument("path")
    return parser


def _dims(args) -> tuple[int, ...] | None:
    if args.family == "horodecki_2x4":
        return (2, 2, 2) if args.tripartite else (2, 4)
    return None


def _fmt_list(xs) -> str:
    return "[" + ", ".join("%.9g" % x for x in xs) + "]"


def cmd_measure(args) -> int:
    if (args.file is None) == (args.family is None):
        raise _UsageError("give exactly one of --family or --file")
    if args.file is not None:
        spec = StateSpec("file", source_path=args.file)
        label = f"file {args.file}"
    else:
        if args.param is None:
            raise _UsageError(f"--p/--b is required for family {args.family}")
        spec = StateSpec(args.family, args.param, _dims(args), args.n_qubits)
        label = f"{args.family} param={args.param:g}"
    rho = spec.build()
    report: dict = {
        "state": label,
        "dims": list(rho.dims),
        "spectrum": rho.spectrum().tolist(),
        "reduced_spectra": [partial_trace(rho, [k]).spectrum().tolist() for k in range(rho.n_subsystems)],
        "S_vN": vn_entropy(rho),
    }
    if "D" in args.measures:
        trials = default_trials(rho.dim) if args.trials is None else args.trials
        est = estimate_D(rho, trials, args.seed)
        report["D"] = {
            "value": est.value,
            "min_diag_entropy": est.min_diag_entropy,
            "trials": est.trials_used,
            "seed": est.seed,
            "source": est.source,
            "best_trial": est.best_trial,
            "upper_bound": True,
        }
    if "G" in args.measures:
        g = compute_G(rho, budget=args.partition_budget)
        report["G"] = {
            "value": g.value,
            "F": g.per_subsystem,
            "argmax_subsystem": g.argmax_subsystem,
            "best_partitions": [[list(b) for b in part] for part in g.best_partitions],
            "partition_budget": args.partition_budget,
        }
    if "negativity_min" in args.measures or "negativity_max" in args.measures:
        ext = negativity_extremes(rho)
        report["negativity"] = {
            "min": ext.min,
            "max": ext.max,
            "argmin": str(ext.argmin),
            "argmax": str(ext.argmax),
            "by_split": ext.values,
        }

    if args.json:
        print(json.dumps(report, indent=2))
        return EXIT_OK
    print(f"state      : {label}  dims={report['dims']}")
    print(f"spectrum   : {_fmt_list(report['spectrum'])}")
    for k, red in enumerate(report["reduced_spectra"]):
        print(f"reduced[{k}] : {_fmt_list(red)}")
    print(f"S_vN       : {report['S_vN']:.9g}")
    if "D" in report:
        d = report["D"]
        print(f"D          : {d['value']:.9g}  (upper bound; trials={d['trials']} seed={d['seed']} best={d['source']})")
    if "G" in report:
        g = report["G"]
        print(f"G          : {g['value']:.9g}  (argmax subsystem {g['argmax_subsystem']}; F={_fmt_list(g['F'])})")
    if "negativity" in report:
        n = report["negativity"]
        print(f"negativity : min {n['min']:.9g} [{n['argmin']}]  max {n['max']:.9g} [{n['argmax']}]")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.family is None:
        raise _UsageError("sweep needs --family")
    end = args.end
    if end is None:
        end = 0.5 if args.family == "sigma_p" else 1.0
    spec = SweepSpec(
        family=args.family,
        param_start=args.start,
        param_end=end,
        param_step=args.step,
        measures=args.measures,
        trials=args.trials,
        seed=args.seed,
        dims=_dims(args),
        n_qubits=args.n_qubits,
        partition_budget=args.partition_budget,
    )
    rows = run_sweep(spec)
    if args.out == "-":
        write_csv(rows, spec.columns(), sys.stdout)
    else:
        write_csv(rows, spec.columns(), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    mat, dims = read_matrix(args.path)
    res = density_residuals(mat)
    checks = [
        ("hermitian", res["hermitian"], HERMITIAN_TOL),
        ("trace", res["trace"], TRACE_TOL),
        ("psd", res["psd"], PSD_TOL),
    ]
    print(f"dims      : {list(dims)}  (d_tot={mat.shape[0]})")
    ok = True
    for name, val, tol in checks:
        passed = val <= tol  # nan (psd skipped) counts as failure
        ok &= passed
        shown = "skipped (not Hermitian)" if np.isnan(val) else f"{val:.3e}"
        print(f"{name:<10}: residual {shown}  tol {tol:g}  {'ok' if passed else 'FAIL'}")
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_INVALID


class _UsageError(Exception):
    pass


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handler = {"measure": cmd_measure, "sweep": cmd_sweep, "validate": cmd_validate}[args.command]
    try:
        return handler(args)
    except _UsageError as exc:
        print(f"qcorr {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PartitionBudgetExceeded as exc:
        print(f"qcorr: partition budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidStateError, ParseError) as exc:
        print(f"qcorr: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, OSError) as exc:
        print(f"qcorr: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
