"""Ground truth and measurement.

optimal_expected_cost() computes the exact optimum of the vote-inspection
problem by dynamic programming over belief states.  Because every
certificate and all future dynamics depend only on the per-candidate
tallies and the set of untested voters, (untested set, tallies) is a
sufficient state, which keeps the DP at desk scale rather than d^n.

exact_strategy_cost() evaluates any deterministic strategy exactly by
branching over the d outcomes of every test it makes; monte_carlo_cost()
estimates the same quantity by seeded sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import (Instance, abs_certificate_from_tallies,
                   rel_certificate_from_tallies)
from .strategies import DONE, Strategy

DEFAULT_MAX_STATES = 30_000

_CERTS = {"abs": abs_certificate_from_tallies, "rel": rel_certificate_from_tallies}


class BudgetExceededError(RuntimeError):
    """The belief-state space is too large for the exact oracle."""

    def __init__(self, estimate: int, budget: int) -> None:
        super().__init__(f"about {estimate} belief states exceed the budget of {budget}")
        self.estimate = estimate
        self.budget = budget


class StrategyError(RuntimeError):
    """A strategy violated its protocol (retest, or stop without certificate)."""


def estimate_belief_states(n: int, d: int) -> int:
    """Upper bound on reachable (untested set, tallies) pairs."""
    return sum(math.comb(n, t) * math.comb(t + d - 1, d - 1) for t in range(n + 1))


class _Oracle:
    """Memoized value function V(untested mask, tallies)."""

    def __init__(self, instance: Instance, objective: str,
                 max_states: int = DEFAULT_MAX_STATES) -> None:
        if objective not in _CERTS:
            raise ValueError(f"objective must be 'abs' or 'rel', got {objective!r}")
        estimate = estimate_belief_states(instance.n, instance.d)
        if estimate > max_states:
            raise BudgetExceededError(estimate, max_states)
        self.instance = instance
        self.objective = objective
        self._cert = _CERTS[objective]
        self._memo: dict = {}

    def value(self, mask: int, tallies: tuple[int, ...]) -> float:
        """Optimal expected cost to finish from the given belief state."""
        inst = self.instance
        unknown = mask.bit_count()
        if self._cert(tallies, unknown, inst.n) is not None:
            return 0.0
        key = (mask, tallies[:-1])  # last tally is implied by the tested count
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        best = math.inf
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            v = bit.bit_length() - 1
            row = inst.probs[v]
            total = inst.costs[v]
            child_mask = mask ^ bit
            base = list(tallies)
            for j in range(inst.d):
                base[j] += 1
                total += row[j] * self.value(child_mask, tuple(base))
                base[j] -= 1
            if total < best:
                best = total
        self._memo[key] = best
        return best

    def initial_value(self) -> float:
        return self.value((1 << self.instance.n) - 1, (0,) * self.instance.d)


def optimal_expected_cost(instance: Instance, objective: str,
                          max_states: int = DEFAULT_MAX_STATES) -> float:
    """Exact optimal adaptive expected cost of deciding the election."""
    return _Oracle(instance, objective, max_states).initial_value()


class OptimalStrategy(Strategy):
    """The DP-optimal strategy, exposed through the common state protocol.

    next_test() greedily follows the value function; ties break toward the
    lowest voter index.
    """

    def __init__(self, instance: Instance, objective: str = "abs",
                 max_states: int = DEFAULT_MAX_STATES) -> None:
        super().__init__(instance)
        self.objective = objective
        self.name = f"optimal_{objective}"
        self._oracle = _Oracle(instance, objective, max_states)
        self._cert = _CERTS[objective]

    def initial_state(self):
        board, tallies, unknown = self._empty()
        return self._settle(board, tallies, unknown, (1 << self.n) - 1)

    def _settle(self, board, tallies, unknown, mask):
        cert = self._cert(tallies, unknown, self.n)
        if cert is not None:
            return (DONE, board, tallies, unknown, cert)
        return (0, board, tallies, unknown, mask)

    def next_test(self, state) -> Optional[int]:
        if state[0] == DONE:
            return None
        tallies, mask = state[2], state[4]
        inst = self.instance
        best_v = -1
        best = math.inf
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            v = bit.bit_length() - 1
            row = inst.probs[v]
            total = inst.costs[v]
            base = list(tallies)
            for j in range(inst.d):
                base[j] += 1
                total += row[j] * self._oracle.value(mask ^ bit, tuple(base))
                base[j] -= 1
            if total < best:
                best, best_v = total, v
        return best_v

    def advance(self, state, voter: int, value: int):
        board, tallies, unknown = self._reveal(state[1], state[2], state[3],
                                               voter, value)
        return self._settle(board, tallies, unknown, state[4] ^ (1 << voter))

    def phase_of(self, state) -> int:
        return 1


def exact_strategy_cost(strategy: Strategy) -> float:
    """Exact expected cost of a deterministic strategy.

    Follows the strategy recursively, branching over the d outcomes of each
    test weighted by their probabilities.  Raises StrategyError if the
    strategy retests a voter or stops while the outcome is still uncertain.
    """
    inst = strategy.instance
    cert_fn = _CERTS[strategy.objective]
    probs = inst.probs
    costs = inst.costs
    d = inst.d

    def rec(state) -> float:
        voter = strategy.next_test(state)
        if voter is None:
            cert = cert_fn(state[2], state[3], inst.n)
            if cert is None:
                raise StrategyError("strategy stopped without a certificate")
            if cert != strategy.result(state):
                raise StrategyError(
                    f"strategy reported {strategy.result(state)} but the "
                    f"certificate says {cert}")
            return 0.0
        if state[1][voter] != 0:
            raise StrategyError(f"strategy retested voter {voter}")
        row = probs[voter]
        total = costs[voter]
        for j in range(1, d + 1):
            total += row[j - 1] * rec(strategy.advance(state, voter, j))
        return total

    return rec(strategy.initial_state())


def sample_realizations(instance: Instance, trials: int, seed: int,
                        chunk: int = 1 << 14):
    """Yield realization batches as (batch, n) integer arrays in 1..d.

    Trial t always consumes uniforms [t*n, (t+1)*n) of the Philox stream
    keyed by the seed, so trials are independent of batching, order
    independent, and reproducible.  Each vote is drawn by inverse transform
    over the cumulative probability row of its voter.
    """
    gen = np.random.Generator(np.random.Philox(key=seed))
    cums = np.cumsum(np.asarray(instance.probs, dtype=float), axis=1)
    n, d = instance.n, instance.d
    remaining = trials
    while remaining > 0:
        m = min(chunk, remaining)
        remaining -= m
        u = gen.random((m, n))
        values = np.empty((m, n), dtype=np.int64)
        for v in range(n):
            values[:, v] = np.searchsorted(cums[v], u[:, v], side="right")
        np.minimum(values, d - 1, out=values)
        values += 1
        yield values


class MonteCarloResult(NamedTuple):
    mean: float
    stderr: float


class _Node:
    __slots__ = ("voter", "cum_cost", "state", "children")

    def __init__(self, voter, cum_cost, state):
        self.voter = voter
        self.cum_cost = cum_cost
        self.state = state
        self.children: dict = {}


def monte_carlo_cost(strategy: Strategy, trials: int, seed: int,
                     max_cached_nodes: int = 200_000) -> MonteCarloResult:
    """Estimate a strategy's expected cost from seeded random realizations.

    Returns the sample mean and its standard error.  Runs share work
    through a decision-tree cache (one node is added per cache miss), which
    leaves the per-trial costs, and hence the estimate, exactly what
    independent simulation would produce.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    inst = strategy.instance
    costs = inst.costs
    init = strategy.initial_state()
    root = _Node(strategy.next_test(init), 0.0, init)
    nodes = 1
    out = np.empty(trials, dtype=float)
    t = 0
    for batch in sample_realizations(inst, trials, seed):
        for row_arr in batch:
            row = row_arr.tolist()
            node = root
            child = None
            while node.voter is not None:
                child = node.children.get(row[node.voter])
                if child is None:
                    break
                node = child
            if node.voter is None:
                out[t] = node.cum_cost
                t += 1
                continue
            voter = node.voter
            state = strategy.advance(node.state, voter, row[voter])
            cum = node.cum_cost + costs[voter]
            if nodes < max_cached_nodes:
                fresh = _Node(strategy.next_test(state), cum, state)
                node.children[row[voter]] = fresh
                nodes += 1
                voter = fresh.voter
            else:
                voter = strategy.next_test(state)
            while voter is not None:
                cum += costs[voter]
                state = strategy.advance(state, voter, row[voter])
                voter = strategy.next_test(state)
            out[t] = cum
            t += 1
    mean = float(out.mean())
    stderr = float(out.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return MonteCarloResult(mean, stderr)


@dataclass(frozen=True)
class EvaluationReport:
    """A strategy's measured cost next to the oracle optimum."""

    algo: str
    expected_cost: float
    opt_cost: Optional[float]
    ratio: Optional[float]
    method: str
    trials: Optional[int] = None
    stderr: Optional[float] = None


def _ratio(expected: float, opt: Optional[float]) -> Optional[float]:
    if opt is None:
        return None
    if opt > 0.0:
        return expected / opt
    return 1.0 if expected == 0.0 else math.inf


def evaluate_strategy(strategy: Strategy, method: str = "exact",
                      trials: int = 10_000, seed: int = 0,
                      opt_cost: Optional[float] = None,
                      max_states: int = DEFAULT_MAX_STATES) -> EvaluationReport:
    """Measure a strategy and report it against the exact optimum.

    With method="exact" the expected cost is computed exactly; with
    method="mc" it is estimated by monte_carlo_cost.  The optimum may be
    passed in to avoid recomputing it across strategies; when omitted it is
    computed if the instance fits the oracle budget and left absent
    otherwise.
    """
    if method not in ("exact", "mc"):
        raise ValueError(f"method must be 'exact' or 'mc', got {method!r}")
    if opt_cost is None:
        try:
            opt_cost = optimal_expected_cost(strategy.instance, strategy.objective,
                                             max_states)
        except BudgetExceededError:
            opt_cost = None
    if method == "exact":
        expected = exact_strategy_cost(strategy)
        return EvaluationReport(strategy.name, expected, opt_cost,
                                _ratio(expected, opt_cost), "exact")
    mc = monte_carlo_cost(strategy, trials, seed)
    return EvaluationReport(strategy.name, mc.mean, opt_cost,
                            _ratio(mc.mean, opt_cost), "monte-carlo",
                            trials=trials, stderr=mc.stderr)
