"""Adaptive Dual Greedy for stochastic submodular cover, plus its ratio diagnostic.

The engine drives any GoalFunction to its goal value at small expected cost.
It maintains a charge a_i per untested item, raised uniformly at the rate of
the item's expected marginal utility

    w_i(b) = sum over values v of P[item i = v] * (g(b with i <- v) - g(b)),

until some item's charge budget c_i is exhausted; that item is tested next.
These charges realize the dual variables of the covering LP, and the
resulting strategy is within the prefix-ratio factor computed by
adg_ratio_samples() of the optimal adaptive strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .goals import GoalFunction, PartialVector

CHARGE_SLACK = 1e-9


class MalformedGoalError(RuntimeError):
    """Goal below its goal value yet no test has positive expected gain."""


@dataclass
class CoverState:
    """Working state of one cover run: assignment, charges, and spend."""

    b: list[Optional[int]]
    charged: dict[int, float]
    spent: float = 0.0


@dataclass(frozen=True)
class RatioSample:
    """One prefix of a cover run, scored by the dual-greedy ratio bound.

    numerator sums the stand-alone gains of the items tested after the
    prefix; denominator is the utility still missing at the prefix.  The
    ratio is at least 1 by submodularity, and its maximum over runs bounds
    the engine's approximation factor.
    """

    realization: tuple[int, ...]
    prefix: tuple[int, ...]
    numerator: int
    denominator: int

    @property
    def ratio(self) -> float:
        return self.numerator / self.denominator


@dataclass(frozen=True)
class AdgRun:
    b: tuple[Optional[int], ...]
    cost: float
    tested: tuple[int, ...]
    state: CoverState
    trace: Optional[list[dict[int, float]]] = None


def adg_select(goal: GoalFunction, costs: Sequence[float],
               value_probs: Sequence[Mapping[int, float]], b: Sequence[Optional[int]],
               charges: Mapping[int, float], untested: Sequence[int],
               ) -> tuple[int, float, dict[int, float]]:
    """One selection step: returns (item to test, charge rate, marginals).

    Deterministic: the minimizing item with the lowest index is chosen, and
    zero-cost items with positive marginal gain are picked immediately.
    """
    base = goal.evaluate(b)
    if base >= goal.goal:
        raise ValueError("goal already reached")
    weights: dict[int, float] = {}
    probe = list(b)
    for i in untested:
        w = 0.0
        for value, p in value_probs[i].items():
            if p <= 0.0:
                continue
            probe[i] = value
            w += p * (goal.evaluate(probe) - base)
        probe[i] = None
        if w > 0.0:
            weights[i] = w
    if not weights:
        raise MalformedGoalError(
            "no test has positive expected gain although the goal is unmet")
    # weights iterates in ascending item order, so keeping the first strict
    # minimum breaks ties toward the lowest index.
    best = -1
    theta = None
    for i, w in weights.items():
        need = max(costs[i] - charges.get(i, 0.0), 0.0) / w
        if theta is None or need < theta:
            theta, best = need, i
    return best, theta, weights


def adg_run(goal: GoalFunction, costs: Sequence[float],
            value_probs: Sequence[Mapping[int, float]], b0: PartialVector,
            realization: Sequence[int], record_trace: bool = False) -> AdgRun:
    """Run the dual-greedy cover strategy on one realization.

    b0 marks already-revealed entries; the remaining entries are read from
    the realization as they are tested.  Returns the final assignment, the
    cost spent, and the tested sequence in order.
    """
    state = CoverState(b=list(b0), charged={}, spent=0.0)
    untested = [i for i, v in enumerate(state.b) if v is None]
    tested: list[int] = []
    trace: Optional[list[dict[int, float]]] = [] if record_trace else None
    while goal.evaluate(state.b) < goal.goal:
        if not untested:
            raise MalformedGoalError("goal unmet on a full assignment")
        star, theta, weights = adg_select(goal, costs, value_probs, state.b,
                                          state.charged, untested)
        for i, w in weights.items():
            state.charged[i] = state.charged.get(i, 0.0) + theta * w
        state.b[star] = realization[star]
        state.spent += costs[star]
        untested.remove(star)
        tested.append(star)
        if trace is not None:
            trace.append(dict(state.charged))
        state.charged.pop(star, None)
    return AdgRun(b=tuple(state.b), cost=state.spent, tested=tuple(tested),
                  state=state, trace=trace)


def adg_ratio_samples(goal: GoalFunction, costs: Sequence[float],
                      value_probs: Sequence[Mapping[int, float]],
                      realization: Sequence[int],
                      b0: Optional[PartialVector] = None) -> list[RatioSample]:
    """Score every proper prefix of a cover run with the ratio bound."""
    if b0 is None:
        b0 = [None] * len(realization)
    run = adg_run(goal, costs, value_probs, b0, realization)
    x = tuple(realization)
    samples = []
    for t in range(len(run.tested)):
        prefix = run.tested[:t]
        b = list(b0)
        for i in prefix:
            b[i] = x[i]
        base = goal.evaluate(b)
        denominator = goal.goal - base
        numerator = 0
        for i in run.tested[t:]:
            b[i] = x[i]
            numerator += goal.evaluate(b) - base
            b[i] = None
        samples.append(RatioSample(realization=x, prefix=prefix,
                                   numerator=numerator, denominator=denominator))
    return samples
