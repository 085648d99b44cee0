"""Parameter sweeps over a state family, written as CSV.

CSV contract: header ``param,<measures...>,trials,seed`` where the measure
columns appear in the order ``D, G, negativity_min, negativity_max``
(restricted to the requested ones). Numbers carry 9 significant digits.
``trials`` is the random-trial count behind the D column (0 when D is not
requested).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from qcorr.measure_d import default_trials, estimate_D
from qcorr.measure_g import DEFAULT_BUDGET, compute_G
from qcorr.negativity import negativity_extremes
from qcorr.states import FAMILIES, StateSpec

MEASURES = ("D", "G", "negativity_min", "negativity_max")
MAX_STEPS = 10**6


def fmt(x: float) -> str:
    return "%.9g" % x


@dataclass(frozen=True)
class SweepSpec:
    family: str
    param_start: float
    param_end: float
    param_step: float
    measures: tuple[str, ...] = MEASURES
    trials: int | None = None
    seed: int = 0
    output_path: str | None = None
    dims: tuple[int, ...] | None = None
    n_qubits: int = 3
    partition_budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.family not in FAMILIES or self.family in ("classical", "file"):
            raise ValueError(f"family {self.family!r} cannot be swept")
        if not self.param_step > 0:
            raise ValueError("step must be positive")
        if self.param_start > self.param_end:
            raise ValueError("start must not exceed end")
        if self.n_steps() > MAX_STEPS:
            raise ValueError(f"sweep has more than {MAX_STEPS} points")
        bad = [m for m in self.measures if m not in MEASURES]
        if bad or not self.measures:
            raise ValueError(f"unknown measures {bad}; choose from {', '.join(MEASURES)}")
        if self.trials is not None and self.trials < 0:
            raise ValueError("trials must be nonnegative")

    def n_steps(self) -> int:
        return int(math.floor((self.param_end - self.param_start) / self.param_step + 1e-9)) + 1

    def params(self) -> list[float]:
        vals = []
        for i in range(self.n_steps()):
            x = round(self.param_start + i * self.param_step, 12)
            vals.append(min(x, self.param_end))
        return vals

    def columns(self) -> list[str]:
        return [m for m in MEASURES if m in self.measures]


@dataclass
class SweepRow:
    param: float
    values: dict[str, float] = field(default_factory=dict)
    trials_used: int = 0
    seed: int = 0

    def cells(self, columns: Sequence[str]) -> list[str]:
        return [fmt(self.param)] + [fmt(self.values[c]) for c in columns] + [str(self.trials_used), str(self.seed)]


def evaluate_point(spec: SweepSpec, param: float) -> SweepRow:
    state = StateSpec(spec.family, param, spec.dims, spec.n_qubits).build()
    row = SweepRow(param, seed=spec.seed)
    cols = spec.columns()
    if "D" in cols:
        trials = default_trials(state.dim) if spec.trials is None else spec.trials
        row.values["D"] = estimate_D(state, trials, spec.seed).value
        row.trials_used = trials
    if "G" in cols:
        row.values["G"] = compute_G(state, budget=spec.partition_budget).value
    if "negativity_min" in cols or "negativity_max" in cols:
        ext = negativity_extremes(state)
        row.values["negativity_min"] = ext.min
        row.values["negativity_max"] = ext.max
    return row


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate every grid point; writes CSV to ``spec.output_path`` when set."""
    rows = [evaluate_point(spec, x) for x in spec.params()]
    if spec.output_path is not None:
        write_csv(rows, spec.columns(), spec.output_path)
    return rows


def write_csv(rows: Sequence[SweepRow], columns: Sequence[str], out: str | TextIO) -> None:
    if isinstance(out, str):
        with open(out, "w", newline="") as fh:
            write_csv(rows, columns, fh)
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["param", *columns, "trials", "seed"])
    for r in rows:
        w.writerow(r.cells(columns))


def to_csv(rows: Sequence[SweepRow], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    write_csv(rows, columns, buf)
    return buf.getvalue()
