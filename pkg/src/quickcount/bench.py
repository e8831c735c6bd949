"""Instance generation and the benchmark experiment runner."""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import Instance, InstanceError
from .oracle import (DEFAULT_MAX_STATES, BudgetExceededError, evaluate_strategy,
                     optimal_expected_cost)
from .strategies import make_strategy

CSV_COLUMNS = ("instance_id", "n", "d", "algo", "method", "expected_cost",
               "opt_cost", "ratio", "trials", "seed")

# Proven expected-cost envelopes, as multiples of the adaptive optimum.
ENVELOPES = {
    "abs4": 4.0,
    "abs6_threeround": 6.0,
    "abs10_tworound": 10.0,
    "rel8": 8.0,
}


@dataclass(frozen=True)
class GeneratorSpec:
    """What to generate: seeded random instances or the adversarial family.

    The adversarial family (two candidates, odd n) mixes nearly-decided
    cheap votes, nearly-decided expensive votes leaning the other way, and
    one expensive tiebreaker; it separates cheapest-first inspection from
    the cost-sensitive strategies by a factor of about n/2.
    """

    kind: str
    n: int
    d: int
    seed: int = 0
    epsilon: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind not in ("random", "adversarial"):
            raise InstanceError(f"kind: expected 'random' or 'adversarial', got {self.kind!r}")
        if self.kind == "random":
            if self.n < 1:
                raise InstanceError(f"n: must be >= 1, got {self.n}")
            if self.d < 2:
                raise InstanceError(f"d: must be >= 2, got {self.d}")
        else:
            if self.d != 2:
                raise InstanceError("adversarial instances have exactly 2 candidates")
            if self.n < 3 or self.n % 2 == 0:
                raise InstanceError(f"n: adversarial instances need odd n >= 3, got {self.n}")
            eps = self.epsilon
            if eps is None or not 0.0 < eps < 0.5:
                raise InstanceError(f"epsilon: must lie in (0, 0.5), got {eps!r}")


def generate(spec: GeneratorSpec) -> Instance:
    """Build the instance a GeneratorSpec describes, deterministically from its seed."""
    if spec.kind == "adversarial":
        eps = float(spec.epsilon)
        half = (spec.n - 1) // 2
        costs = [eps] * half + [1.0 - eps] * half + [1.0]
        p_one = [1.0 - eps] * half + [eps] * half + [1.0 - eps]
        probs = [(p, 1.0 - p) for p in p_one]
        return Instance(n=spec.n, d=2, costs=tuple(costs), probs=tuple(probs))
    rng = np.random.default_rng(spec.seed)
    costs = tuple(1.0 - rng.random() for _ in range(spec.n))  # uniform in (0, 1]
    rows = []
    for _ in range(spec.n):
        while True:
            row = rng.dirichlet(np.ones(spec.d))
            if row.min() > 1e-9:
                break
        rows.append(tuple(float(p) for p in row))
    return Instance(n=spec.n, d=spec.d, costs=costs, probs=tuple(rows))


@dataclass(frozen=True)
class ResultRow:
    instance_id: str
    n: int
    d: int
    algo: str
    method: str
    expected_cost: float
    opt_cost: Optional[float] = None
    ratio: Optional[float] = None
    trials: Optional[int] = None
    seed: Optional[int] = None


def run_experiment(instance_paths: Sequence[str], algos: Sequence[str],
                   method: str = "exact", trials: int = 10_000, seed: int = 0,
                   max_states: int = DEFAULT_MAX_STATES,
                   ) -> tuple[list[ResultRow], list[str]]:
    """One row per (instance, algo), in deterministic input order.

    Returns (rows, warnings).  Instances larger than the oracle budget get
    empty opt_cost and ratio columns plus a warning instead of failing the
    whole run.
    """
    if method not in ("exact", "mc"):
        raise ValueError(f"method must be 'exact' or 'mc', got {method!r}")
    rows: list[ResultRow] = []
    warnings: list[str] = []
    for path in instance_paths:
        instance = Instance.load(path)
        instance_id = _stem(path)
        opt_cache: dict[str, Optional[float]] = {}
        for algo in algos:
            strategy = make_strategy(algo, instance)
            objective = strategy.objective
            if objective not in opt_cache:
                try:
                    opt_cache[objective] = optimal_expected_cost(
                        instance, objective, max_states)
                except BudgetExceededError as exc:
                    opt_cache[objective] = None
                    warnings.append(f"{path}: optimum unavailable ({exc})")
            report = evaluate_strategy(strategy, method=method, trials=trials,
                                       seed=seed, opt_cost=opt_cache[objective])
            opt = opt_cache[objective]
            ratio = report.ratio if (opt is not None and opt > 0) else None
            rows.append(ResultRow(
                instance_id=instance_id, n=instance.n, d=instance.d, algo=algo,
                method=report.method, expected_cost=report.expected_cost,
                opt_cost=opt, ratio=ratio,
                trials=report.trials if method == "mc" else None,
                seed=seed if method == "mc" else None))
    return rows, warnings


def check_bounds(rows: Sequence[ResultRow], tol: float = 1e-9) -> list[str]:
    """Exact-method rows whose ratio exceeds the proven envelope."""
    violations = []
    for row in rows:
        bound = ENVELOPES.get(row.algo)
        if bound is None or row.ratio is None or row.method != "exact":
            continue
        if row.ratio > bound + tol:
            violations.append(f"{row.instance_id}/{row.algo}: ratio {row.ratio!r} "
                              f"exceeds {bound}")
    return violations


def _stem(path: str) -> str:
    name = path.replace("\\", "/").rsplit("/", 1)[-1]
    return name[:-5] if name.endswith(".json") else name


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows: Sequence[ResultRow], timestamp: bool = True) -> str:
    """Render rows as CSV; identical bytes for identical rows apart from the
    suppressible timestamp header line."""
    lines = []
    if timestamp:
        lines.append(f"# generated {_dt.datetime.now(_dt.timezone.utc).isoformat()}")
    lines.append(",".join(CSV_COLUMNS))
    for row in rows:
        lines.append(",".join(_cell(getattr(row, col)) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def write_csv(rows: Sequence[ResultRow], path: str, timestamp: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(rows_to_csv(rows, timestamp=timestamp))
