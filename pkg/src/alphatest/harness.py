"""Replicated Monte Carlo experiments: size tables and power curves.

A replication's random streams are keyed by (master seed, sparsity level,
replication index, purpose), so the output table is a pure function of
the experiment spec regardless of worker count or scheduling.
"""

import functools
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rng as streams
from .alpha_tests import METHODS, TestConfig, run_all
from .dgp import (
    CovModelSpec,
    FactorProcessParams,
    assemble_panel,
    build_cov,
    cov_sqrt,
    gen_alpha,
    gen_betas,
    gen_errors,
    gen_factors,
)
from .errors import EmptyTable, NotPositiveDefinite

__all__ = [
    "ScenarioConfig",
    "ExperimentSpec",
    "TableRow",
    "SizePowerTable",
    "run_experiment",
    "run_power_curve",
    "replicate_details",
    "summarize",
    "table_to_csv",
]


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one Monte Carlo scenario."""

    n: int = 200
    t: int = 100
    cov_model: str = "M1"
    error_dist: str = "normal"
    m: int = 0
    reps: int = 1000
    gamma: float = 0.05
    seed: int = 0
    threshold_delta: float = 3.0
    q_mt: float = 0.05
    delta_mt: float = 1.0
    freeze_cov: bool = False
    fixed_support: bool = False
    adjusted_critical: bool = True
    shared_factors: bool = False

    @property
    def scenario_id(self) -> str:
        return f"{self.cov_model}/{self.error_dist}/N{self.n}/T{self.t}"

    def test_config(self) -> TestConfig:
        return TestConfig(
            gamma=self.gamma,
            threshold_delta=self.threshold_delta,
            q_mt=self.q_mt,
            delta_mt=self.delta_mt,
            use_adjusted_critical=self.adjusted_critical,
        )

    def to_json(self) -> str:
        doc = {
            "N": self.n,
            "T": self.t,
            "covModel": self.cov_model,
            "errorDist": self.error_dist,
            "m": self.m,
            "reps": self.reps,
            "gamma": self.gamma,
            "seed": self.seed,
            "thresholdDelta": self.threshold_delta,
            "qMt": self.q_mt,
            "deltaMt": self.delta_mt,
            "flags": {
                "freezeCov": self.freeze_cov,
                "fixedSupport": self.fixed_support,
                "adjustedCritical": self.adjusted_critical,
                "sharedFactors": self.shared_factors,
            },
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ScenarioConfig":
        doc = json.loads(text)
        flags = doc.get("flags", {})
        return cls(
            n=int(doc["N"]),
            t=int(doc["T"]),
            cov_model=doc.get("covModel", "M1"),
            error_dist=doc.get("errorDist", "normal"),
            m=int(doc.get("m", 0)),
            reps=int(doc.get("reps", 1000)),
            gamma=float(doc.get("gamma", 0.05)),
            seed=int(doc.get("seed", 0)),
            threshold_delta=float(doc.get("thresholdDelta", 3.0)),
            q_mt=float(doc.get("qMt", 0.05)),
            delta_mt=float(doc.get("deltaMt", 1.0)),
            freeze_cov=bool(flags.get("freezeCov", False)),
            fixed_support=bool(flags.get("fixedSupport", False)),
            adjusted_critical=bool(flags.get("adjustedCritical", True)),
            shared_factors=bool(flags.get("sharedFactors", False)),
        )


@dataclass(frozen=True)
class ExperimentSpec:
    scenario: ScenarioConfig
    methods: tuple = METHODS
    reps: int | None = None  # defaults to scenario.reps
    m_grid: tuple = ()

    def __post_init__(self):
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}")
        if any(m > self.scenario.n for m in self.m_grid):
            raise ValueError("m_grid entries must not exceed N")

    @property
    def n_reps(self) -> int:
        return self.scenario.reps if self.reps is None else self.reps


@dataclass(frozen=True)
class TableRow:
    method: str
    scenario_id: str
    model: str
    error_dist: str
    n: int
    t: int
    m: int
    reps: int
    rate: float
    se: float


@dataclass(frozen=True)
class SizePowerTable:
    rows: tuple
    skipped: int = 0


@functools.lru_cache(maxsize=8)
def _fixed_cov_root(kind: str, n: int):
    # M1 and M3 covariances are deterministic; cache their roots per process
    sigma = build_cov(CovModelSpec(kind=kind), n, np.random.default_rng(0))
    return cov_sqrt(sigma)


def _replicate(scenario: ScenarioConfig, m: int, rep: int, detail: bool = False):
    """One replication; returns {method: reject} or None on a failed draw.

    With ``detail=True`` the full TestResult objects are returned instead
    of the rejection booleans.
    """
    seed = scenario.seed
    spec = CovModelSpec(kind=scenario.cov_model)
    try:
        if scenario.cov_model in ("M1", "M3"):
            sigma_root = _fixed_cov_root(scenario.cov_model, scenario.n)
        else:
            cov_rep = 0 if scenario.freeze_cov else rep
            cov_rng = streams.substream(seed, m, cov_rep, streams.COV)
            sigma_root = cov_sqrt(build_cov(spec, scenario.n, cov_rng))
    except NotPositiveDefinite:
        return None
    factor_rep = 0 if scenario.shared_factors else rep
    factors = gen_factors(
        scenario.t,
        FactorProcessParams(),
        rng=streams.substream(seed, m, factor_rep, streams.FACTORS),
    )
    errors = gen_errors(
        sigma_root,
        scenario.error_dist,
        scenario.t,
        streams.substream(seed, m, rep, streams.ERRORS),
    )
    betas = gen_betas(scenario.n, streams.substream(seed, m, rep, streams.BETAS))
    alpha_rep = 0 if scenario.fixed_support else rep
    alpha = gen_alpha(
        scenario.n,
        m,
        scenario.t,
        rng=streams.substream(seed, m, alpha_rep, streams.ALPHA),
    )
    panel = assemble_panel(alpha.alpha, betas, factors, errors)
    results = run_all(panel, scenario.test_config())
    if detail:
        return {r.name: r for r in results}
    return {r.name: r.reject for r in results}


def replicate_details(scenario: ScenarioConfig, m: int, reps: int):
    """Full TestResult dicts for `reps` replications (None entries skipped)."""
    out = []
    for rep in range(reps):
        result = _replicate(scenario, m, rep, detail=True)
        if result is not None:
            out.append(result)
    return out


def _replicate_args(args):
    return _replicate(*args)


def _run_block(scenario, m, reps, workers):
    tasks = [(scenario, m, rep) for rep in range(reps)]
    if workers <= 1:
        outcomes = [_replicate(*task) for task in tasks]
    else:
        chunk = max(1, reps // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_replicate_args, tasks, chunksize=chunk))
    kept = [o for o in outcomes if o is not None]
    skipped = reps - len(kept)
    if skipped > max(1, int(0.01 * reps)):
        raise NotPositiveDefinite(
            f"{skipped} of {reps} covariance draws failed (limit 1%)"
        )
    return kept, skipped


def _rows_from_block(scenario, m, kept, methods):
    reps = len(kept)
    rows = []
    for method in METHODS:
        if method not in methods:
            continue
        rate = sum(o[method] for o in kept) / reps
        se = float(np.sqrt(rate * (1.0 - rate) / reps))
        rows.append(
            TableRow(
                method=method,
                scenario_id=scenario.scenario_id,
                model=scenario.cov_model,
                error_dist=scenario.error_dist,
                n=scenario.n,
                t=scenario.t,
                m=m,
                reps=reps,
                rate=rate,
                se=se,
            )
        )
    return rows


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> SizePowerTable:
    """Size (or single-m power) experiment at the scenario's sparsity."""
    scenario = spec.scenario
    kept, skipped = _run_block(scenario, scenario.m, spec.n_reps, workers)
    rows = _rows_from_block(scenario, scenario.m, kept, spec.methods)
    return SizePowerTable(rows=tuple(rows), skipped=skipped)


def run_power_curve(spec: ExperimentSpec, workers: int = 1) -> SizePowerTable:
    """One sub-experiment per entry of the m grid, shared scenario."""
    if not spec.m_grid:
        raise ValueError("m_grid must be non-empty for a power curve")
    scenario = spec.scenario
    rows = []
    skipped = 0
    for m in spec.m_grid:
        kept, block_skipped = _run_block(scenario, m, spec.n_reps, workers)
        rows.extend(_rows_from_block(scenario, m, kept, spec.methods))
        skipped += block_skipped
    ordered = sorted(rows, key=lambda r: (METHODS.index(r.method), r.m))
    return SizePowerTable(rows=tuple(ordered), skipped=skipped)


def summarize(table: SizePowerTable) -> str:
    """Aligned text table; rates are percentages to one decimal."""
    if not table.rows:
        raise EmptyTable("no rows to summarize")
    out = io.StringIO()
    header = f"{'method':<8}{'scenario':<28}{'m':>4}  {'rate':>12}  {'reps':>6}"
    out.write(header + "\n")
    out.write("-" * len(header) + "\n")
    for row in table.rows:
        cell = f"{100 * row.rate:.1f} (±{100 * row.se:.1f})"
        out.write(
            f"{row.method:<8}{row.scenario_id:<28}{row.m:>4}  {cell:>12}  {row.reps:>6}\n"
        )
    if table.skipped:
        out.write(f"skipped covariance draws: {table.skipped}\n")
    return out.getvalue()


def table_to_csv(table: SizePowerTable) -> str:
    """Deterministic CSV serialization (method order, then m)."""
    rows = sorted(table.rows, key=lambda r: (METHODS.index(r.method), r.m))
    lines = ["method,model,error_dist,N,T,m,reps,rate,se"]
    for r in rows:
        lines.append(
            f"{r.method},{r.model},{r.error_dist},{r.n},{r.t},{r.m},"
            f"{r.reps},{r.rate:.6f},{r.se:.6f}"
        )
    return "\n".join(lines) + "\n"
