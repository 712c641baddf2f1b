"""Seeded batteries of generate-then-fit cases, reported as CSV or JSON."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from ._random import derive_seed
from .errors import EmptyLocus, RestartBudgetExhausted, TrialBudgetExhausted
from .modp_regress import RegressConfig, linear_regression_mod_p
from .padic_regress import trailing_digits_regression
from .synthgen import gen_modp_instance, gen_padic_instance

CSV_COLUMNS = ("case", "c0", "c1", "success", "elapsed_ms")


@dataclass
class ExperimentRow:
    case: int
    c0: int
    c1: int
    success: bool
    elapsed_ms: float


@dataclass
class ExperimentReport:
    rows: list[ExperimentRow] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)

    def without_timing(self) -> "ExperimentReport":
        rows = [ExperimentRow(r.case, r.c0, r.c1, r.success, 0.0) for r in self.rows]
        return ExperimentReport(rows, dict(self.parameters))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow([r.case, r.c0, r.c1, "true" if r.success else "false",
                             f"{r.elapsed_ms:.3f}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, parameters: dict | None = None) -> "ExperimentReport":
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"expected columns {CSV_COLUMNS}, got {reader.fieldnames}")
        rows = [
            ExperimentRow(int(rec["case"]), int(rec["c0"]), int(rec["c1"]),
                          rec["success"] == "true", float(rec["elapsed_ms"]))
            for rec in reader
        ]
        return cls(rows, dict(parameters or {}))

    def to_json(self) -> str:
        return json.dumps({"parameters": self.parameters,
                           "rows": [asdict(r) for r in self.rows]}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        obj = json.loads(text)
        return cls([ExperimentRow(**r) for r in obj["rows"]], obj["parameters"])


def case_seeds(seed: int, case: int) -> tuple[int, int]:
    """``(instance_seed, fit_seed)`` for one case of a battery."""
    instance_seed = seed + case
    return instance_seed, derive_seed(instance_seed, 1)


def run_case(case: int, *, p: int, D: int, N: int, r: float, seed: int, rep: int = 3,
             E: int | None = None, max_restarts: int | None = None,
             gate: str = "hull") -> ExperimentRow:
    instance_seed, fit_seed = case_seeds(seed, case)
    config = RegressConfig(rep=rep, max_restarts=max_restarts, seed=fit_seed, gate=gate)
    if E is None:
        inst = gen_modp_instance(p, D, N, r, instance_seed)
        truth = list(inst.truth.entries)
    else:
        inst = gen_padic_instance(p, D, E, N, r, instance_seed)
        truth = inst.truth

    start = time.perf_counter()
    c0 = c1 = 0
    success = False
    try:
        if E is None:
            c, stats = linear_regression_mod_p(inst.dataset, config)
            fitted, c0, c1 = list(c.entries), stats.c0, stats.c1
        else:
            levels = []
            try:
                fitted = trailing_digits_regression(inst.dataset, config, stats_out=levels)
            finally:
                c0 = sum(s.c0 for s in levels)
                c1 = sum(s.c1 for s in levels)
        success = fitted == truth
    except (RestartBudgetExhausted, TrialBudgetExhausted, EmptyLocus) as exc:
        stats = getattr(exc, "stats", None)
        if stats is not None and E is None:
            c0, c1 = stats.c0, stats.c1
    elapsed = (time.perf_counter() - start) * 1000.0
    return ExperimentRow(case, c0, c1, success, elapsed)


def run_experiment(*, p: int, D: int, N: int, r: float, rep: int = 3, cases: int = 10,
                   seed: int = 0, E: int | None = None, max_restarts: int | None = None,
                   gate: str = "hull", workers: int = 1) -> ExperimentReport:
    params = dict(p=p, D=D, N=N, r=r, rep=rep, cases=cases, seed=seed, E=E,
                  max_restarts=max_restarts, gate=gate)
    job = dict(p=p, D=D, N=N, r=r, seed=seed, rep=rep, E=E,
               max_restarts=max_restarts, gate=gate)
    if workers > 1 and cases > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda k: run_case(k, **job), range(cases)))
    else:
        rows = [run_case(k, **job) for k in range(cases)]
    rows.sort(key=lambda row: row.case)
    return ExperimentReport(rows, params)
