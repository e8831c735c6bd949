"""Composed vote-inspection strategies.

Every strategy here is a deterministic state machine over immutable states,
so the same implementation serves three consumers: transcript runs on a
fixed realization, exact expected-cost evaluation (which branches over all
outcomes of each test), and Monte Carlo estimation.

State layout (all strategies): a tuple whose first four slots are

    (tag, board, tallies, unknown_count, ...)

where board is a bytes object with board[v] == 0 while voter v is untested
and board[v] == value (1..d) afterwards.  Strategy-specific slots follow.
Terminal states carry the election outcome in slot 4.

The common two-phase shape: Phase 1 inspects votes by increasing cost until
at most two candidates remain in contention, then a per-candidate kernel
finishes the job.  For the absolute objective "in contention" means "can
still collect a majority"; for the relative objective it means "can still
finish on top (win or tie for the lead)", which is the weakest condition
under which the outcome becomes a function of the two remaining candidates
alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (Instance, PartialAssignment, abs_certificate_from_tallies,
                   blocking_threshold, majority_threshold,
                   rel_certificate_from_tallies, toppers_from_tallies,
                   viable_from_tallies)
from .dualgreedy import adg_select
from .goals import abs_majority_goal, ternary_threshold_goal
from .kernels import (_sbb_pick, cheapest_first_permutation, kofn_permutation_for,
                      refutation_order, support_order, two_candidate_round_robin)

# State tags.
P1, KERNEL_A, KERNEL_B, DONE = 0, 1, 2, 3

_PHASE_LABEL = {P1: 1, KERNEL_A: 2, KERNEL_B: 3}


def board_of(state) -> bytes:
    return state[1]


def tallies_of(state) -> tuple[int, ...]:
    return state[2]


def unknown_of(state) -> int:
    return state[3]


def _check_realization(instance: Instance, realization: Sequence[int]) -> None:
    if len(realization) != instance.n:
        raise ValueError(f"realization must list {instance.n} votes")
    for i, v in enumerate(realization):
        if not 1 <= v <= instance.d:
            raise ValueError(f"realization[{i}]: vote {v!r} outside 1..{instance.d}")


def _phase1_stop(tallies: Sequence[int], unknown: int, n: int, objective: str) -> bool:
    """True once at most two candidates remain in contention."""
    if objective == "abs":
        return len(viable_from_tallies(tallies, unknown, n, "abs")) <= 2
    return len(toppers_from_tallies(tallies, unknown)) <= 2


def _pick_leaders(tallies: Sequence[int], unknown: int, n: int,
                  objective: str) -> tuple[int, int]:
    """The two candidates the second phase will examine, ties by index.

    abs: the two smallest capped votes-against counts (the best-supported
    candidates).  rel: the two largest tallies.
    """
    d = len(tallies)
    tested = n - unknown
    if objective == "abs":
        blk = blocking_threshold(n)
        key = [min(tested - t, blk) for t in tallies]
        alpha = min(range(d), key=lambda j: (key[j], j)) + 1
        beta = min((j for j in range(d) if j + 1 != alpha),
                   key=lambda j: (key[j], j)) + 1
    else:
        alpha = max(range(d), key=lambda j: (tallies[j], -j)) + 1
        beta = max((j for j in range(d) if j + 1 != alpha),
                   key=lambda j: (tallies[j], -j)) + 1
    return alpha, beta


@dataclass(frozen=True)
class TranscriptStep:
    voter: int
    value: int
    cum_cost: float


@dataclass(frozen=True)
class Transcript:
    """Ordered record of one strategy run ending in an election outcome.

    phases[i] is the index into steps where the (i+1)-th executed phase
    begins; a phase that performs no tests leaves no mark.
    """

    algo: str
    steps: tuple[TranscriptStep, ...]
    phases: tuple[int, ...]
    result: int

    @property
    def cost(self) -> float:
        return self.steps[-1].cum_cost if self.steps else 0.0

    def tested_voters(self) -> list[int]:
        return [s.voter for s in self.steps]

    def to_json(self) -> str:
        # Voters are 1-based in the serialized form.
        return json.dumps({
            "algo": self.algo,
            "steps": [{"voter": s.voter + 1, "value": s.value, "cum_cost": s.cum_cost}
                      for s in self.steps],
            "phases": list(self.phases),
            "result": self.result,
        })

    @classmethod
    def from_json(cls, text: str) -> "Transcript":
        obj = json.loads(text)
        steps = tuple(TranscriptStep(s["voter"] - 1, s["value"], s["cum_cost"])
                      for s in obj["steps"])
        return cls(algo=obj["algo"], steps=steps, phases=tuple(obj["phases"]),
                   result=obj["result"])


class Strategy:
    """Shared plumbing: instance access, reveals, and cached orderings."""

    name = "strategy"
    objective = "abs"

    def __init__(self, instance: Instance) -> None:
        self.instance = instance
        self.n = instance.n
        self.d = instance.d
        self.maj = majority_threshold(self.n)
        self.blk = blocking_threshold(self.n)
        self._cost_order = sorted(range(self.n),
                                  key=lambda v: (instance.costs[v], v))
        self._orders: dict[tuple[str, int], list[int]] = {}

    # Protocol: initial_state() -> state, next_test(state) -> voter | None,
    # advance(state, voter, value) -> state, result(state) -> outcome.

    def result(self, state) -> int:
        if state[0] != DONE:
            raise ValueError("strategy has not finished")
        return state[4]

    def phase_of(self, state) -> int:
        return _PHASE_LABEL.get(state[0], 0)

    def _support(self, candidate: int) -> list[int]:
        key = ("s", candidate)
        if key not in self._orders:
            self._orders[key] = support_order(self.instance, candidate)
        return self._orders[key]

    def _refute(self, candidate: int) -> list[int]:
        key = ("r", candidate)
        if key not in self._orders:
            self._orders[key] = refutation_order(self.instance, candidate)
        return self._orders[key]

    def _cheapest_untested(self, board: bytes) -> int:
        for v in self._cost_order:
            if board[v] == 0:
                return v
        raise AssertionError("no untested voter left")

    @staticmethod
    def _reveal(board: bytes, tallies: tuple[int, ...], unknown: int,
                voter: int, value: int) -> tuple[bytes, tuple[int, ...], int]:
        if board[voter] != 0:
            raise ValueError(f"voter {voter} already inspected")
        ba = bytearray(board)
        ba[voter] = value
        t = list(tallies)
        t[value - 1] += 1
        return bytes(ba), tuple(t), unknown - 1

    def _empty(self) -> tuple[bytes, tuple[int, ...], int]:
        return bytes(self.n), (0,) * self.d, self.n

    def _sbb_needs(self, tallies, unknown, target: int) -> tuple[int, int]:
        """Remaining (k, z) of the "target wins an absolute majority" question."""
        k = self.maj - tallies[target - 1]
        z = self.blk - (self.n - unknown - tallies[target - 1])
        return k, z

    def _sbb_step(self, board: bytes, tallies, unknown, target: int) -> int:
        k, z = self._sbb_needs(tallies, unknown, target)
        return _sbb_pick(k, z, self._support(target), self._refute(target),
                         lambda v: board[v] == 0)


class NaiveCheapest(Strategy):
    """Inspect votes by increasing cost until the outcome is certain."""

    def __init__(self, instance: Instance, objective: str = "abs") -> None:
        super().__init__(instance)
        if objective not in ("abs", "rel"):
            raise ValueError(f"objective must be 'abs' or 'rel', got {objective!r}")
        self.objective = objective
        self.name = f"naive_{objective}"
        self._cert = (abs_certificate_from_tallies if objective == "abs"
                      else rel_certificate_from_tallies)

    def initial_state(self):
        board, tallies, unknown = self._empty()
        return self._settle(board, tallies, unknown)

    def _settle(self, board, tallies, unknown):
        cert = self._cert(tallies, unknown, self.n)
        if cert is not None:
            return (DONE, board, tallies, unknown, cert)
        return (P1, board, tallies, unknown)

    def next_test(self, state) -> Optional[int]:
        if state[0] == DONE:
            return None
        return self._cheapest_untested(state[1])

    def advance(self, state, voter: int, value: int):
        board, tallies, unknown = self._reveal(state[1], state[2], state[3],
                                               voter, value)
        return self._settle(board, tallies, unknown)


class Abs4(Strategy):
    """Adaptive absolute-majority strategy, 4-approximate.

    Phase 1 tests cheapest-first while more than two candidates can still
    reach a majority.  The front-runner alpha is then verified with the SBB
    rule; on refutation, the runner-up beta is verified the same way unless
    already ruled out.  On a two-candidate election Phase 1 is empty and
    this is exactly the SBB strategy.
    """

    name = "abs4"
    objective = "abs"

    def initial_state(self):
        board, tallies, unknown = self._empty()
        return self._settle_p1(board, tallies, unknown)

    def _settle_p1(self, board, tallies, unknown):
        cert = abs_certificate_from_tallies(tallies, unknown, self.n)
        if cert is not None:
            return (DONE, board, tallies, unknown, cert)
        if not _phase1_stop(tallies, unknown, self.n, "abs"):
            return (P1, board, tallies, unknown)
        alpha, beta = _pick_leaders(tallies, unknown, self.n, "abs")
        return self._settle_kernel(KERNEL_A, board, tallies, unknown, alpha, beta)

    def _settle_kernel(self, tag, board, tallies, unknown, alpha, beta):
        if tag == KERNEL_A:
            k, z = self._sbb_needs(tallies, unknown, alpha)
            if k <= 0:
                return (DONE, board, tallies, unknown, alpha)
            if z > 0:
                return (KERNEL_A, board, tallies, unknown, alpha, beta)
            tag = KERNEL_B  # alpha refuted
        k, z = self._sbb_needs(tallies, unknown, beta)
        if k <= 0:
            return (DONE, board, tallies, unknown, beta)
        if z <= 0:
            return (DONE, board, tallies, unknown, 0)
        return (KERNEL_B, board, tallies, unknown, alpha, beta)

    def next_test(self, state) -> Optional[int]:
        tag = state[0]
        if tag == DONE:
            return None
        if tag == P1:
            return self._cheapest_untested(state[1])
        target = state[4] if tag == KERNEL_A else state[5]
        return self._sbb_step(state[1], state[2], state[3], target)

    def advance(self, state, voter: int, value: int):
        tag = state[0]
        board, tallies, unknown = self._reveal(state[1], state[2], state[3],
                                               voter, value)
        if tag == P1:
            return self._settle_p1(board, tallies, unknown)
        return self._settle_kernel(tag, board, tallies, unknown, state[4], state[5])


class Abs6ThreeRound(Strategy):
    """Absolute majority in three rounds of adaptivity, 6-approximate.

    Identical to Abs4 except each SBB run is replaced by a walk along one
    pre-specified permutation (the cost-sensitive round-robin of the
    support and refutation orders for that candidate), so each round tests
    in a fixed order until its stopping condition.
    """

    name = "abs6_threeround"
    objective = "abs"

    def initial_state(self):
        board, tallies, unknown = self._empty()
        return self._settle_p1(board, tallies, unknown)

    def _perm_for(self, board: bytes, target: int) -> tuple[int, ...]:
        untested = [v for v in range(self.n) if board[v] == 0]
        return tuple(kofn_permutation_for(self.instance, untested, target))

    def _settle_p1(self, board, tallies, unknown):
        cert = abs_certificate_from_tallies(tallies, unknown, self.n)
        if cert is not None:
            return (DONE, board, tallies, unknown, cert)
        if not _phase1_stop(tallies, unknown, self.n, "abs"):
            return (P1, board, tallies, unknown)
        alpha, beta = _pick_leaders(tallies, unknown, self.n, "abs")
        return self._enter_walk(KERNEL_A, board, tallies, unknown, alpha, beta)

    def _enter_walk(self, tag, board, tallies, unknown, alpha, beta):
        target = alpha if tag == KERNEL_A else beta
        k, z = self._sbb_needs(tallies, unknown, target)
        if k <= 0:
            return (DONE, board, tallies, unknown, target)
        if z <= 0:
            if tag == KERNEL_A:
                return self._enter_walk(KERNEL_B, board, tallies, unknown, alpha, beta)
            return (DONE, board, tallies, unknown, 0)
        perm = self._perm_for(board, target)
        return (tag, board, tallies, unknown, alpha, beta, perm, 0)

    def next_test(self, state) -> Optional[int]:
        tag = state[0]
        if tag == DONE:
            return None
        if tag == P1:
            return self._cheapest_untested(state[1])
        return state[6][state[7]]

    def advance(self, state, voter: int, value: int):
        tag = state[0]
        board, tallies, unknown = self._reveal(state[1], state[2], state[3],
                                               voter, value)
        if tag == P1:
            return self._settle_p1(board, tallies, unknown)
        alpha, beta, perm, pos = state[4], state[5], state[6], state[7]
        target = alpha if tag == KERNEL_A else beta
        k, z = self._sbb_needs(tallies, unknown, target)
        if k <= 0:
            return (DONE, board, tallies, unknown, target)
        if z <= 0:
            if tag == KERNEL_A:
                return self._enter_walk(KERNEL_B, board, tallies, unknown, alpha, beta)
            return (DONE, board, tallies, unknown, 0)
        return (tag, board, tallies, unknown, alpha, beta, perm, pos + 1)


class Abs10TwoRound(Strategy):
    """Absolute majority in two rounds of adaptivity, 10-approximate.

    After Phase 1, a single permutation interleaving the four support and
    refutation orders of the two remaining candidates is walked until a
    certificate appears.
    """

    name = "abs10_tworound"
    objective = "abs"

    def initial_state(self):
        board, tallies, unknown = self._empty()
        return self._settle_p1(board, tallies, unknown)

    def _settle_p1(self, board, tallies, unknown):
        cert = abs_certificate_from_tallies(tallies, unknown, self.n)
        if cert is not None:
            return (DONE, board, tallies, unknown, cert)
        if not _phase1_stop(tallies, unknown, self.n, "abs"):
            return (P1, board, tallies, unknown)
        alpha, beta = _pick_leaders(tallies, unknown, self.n, "abs")
        untested = [v for v in range(self.n) if board[v] == 0]
        perm = tuple(two_candidate_round_robin(self.instance, untested, alpha, beta))
        return (KERNEL_A, board, tallies, unknown, perm, 0)

    def next_test(self, state) -> Optional[int]:
        tag = state[0]
        if tag == DONE:
            return None
        if tag == P1:
            return self._cheapest_untested(state[1])
        return state[4][state[5]]

    def advance(self, state, voter: int, value: int):
        tag = state[0]
        board, tallies, unknown = self._reveal(state[1], state[2], state[3],
                                               voter, value)
        if tag == P1:
            return self._settle_p1(board, tallies, unknown)
        cert = abs_certificate_from_tallies(tallies, unknown, self.n)
        if cert is not None:
            return (DONE, board, tallies, unknown, cert)
        return (KERNEL_A, board, tallies, unknown, state[4], state[5] + 1)


class Rel8(Strategy):
    """Adaptive relative-majority strategy, 8-approximate.

    Phase 1 tests cheapest-first while more than two candidates can still
    finish on top.  With leaders alpha (largest tally) and beta fixed, the
    question "does alpha end strictly ahead of beta" is a threshold test
    over the untested votes, scored 2 / 1 / 0 for a vote for alpha / a third
    candidate / beta; the dual-greedy cover engine answers it.  A yes means
    alpha wins outright.  Otherwise the remaining votes are tested in
    increasing c_i / (1 - p_{i,alpha}) until the outcome (beta or a tie) is
    certain.
    """

    name = "rel8"
    objective = "rel"

    def initial_state(self):
        board, tallies, unknown = self._empty()
        return self._settle_p1(board, tallies, unknown)

    def _settle_p1(self, board, tallies, unknown):
        cert = rel_certificate_from_tallies(tallies, unknown, self.n)
        if cert is not None:
            return (DONE, board, tallies, unknown, cert)
        if not _phase1_stop(tallies, unknown, self.n, "rel"):
            return (P1, board, tallies, unknown)
        alpha, beta = _pick_leaders(tallies, unknown, self.n, "rel")
        tested = self.n - unknown
        theta = (self.n + 1) - tallies[alpha - 1] - (tested - tallies[beta - 1])
        items = tuple(v for v in range(self.n) if board[v] == 0)
        m = len(items)
        if not 1 <= theta <= 2 * m:
            raise AssertionError("undecided threshold question out of range")
        goal = ternary_threshold_goal(theta, m)
        charges = (0.0,) * m
        return self._settle_adg(board, tallies, unknown, alpha, beta, items,
                                charges, theta, goal)

    def _score(self, value: int, alpha: int, beta: int) -> int:
        if value == alpha:
            return 2
        if value == beta:
            return 0
        return 1

    def _settle_adg(self, board, tallies, unknown, alpha, beta, items, charges,
                    theta, goal=None):
        m = len(items)
        hi = lo = 0
        for v in items:
            if board[v] != 0:
                y = self._score(board[v], alpha, beta)
                hi += y
                lo += 2 - y
        if hi >= theta:
            return (DONE, board, tallies, unknown, alpha)
        if lo >= 2 * m - theta + 1:
            return self._settle_conj(board, tallies, unknown, alpha, beta)
        if goal is None:
            goal = ternary_threshold_goal(theta, m)
        return (KERNEL_A, board, tallies, unknown, alpha, beta, items, charges,
                theta, goal)

    def _settle_conj(self, board, tallies, unknown, alpha, beta):
        cert = rel_certificate_from_tallies(tallies, unknown, self.n)
        if cert is not None:
            return (DONE, board, tallies, unknown, cert)
        return (KERNEL_B, board, tallies, unknown, alpha, beta)

    def _adg_inputs(self, state):
        board, alpha, beta, items = state[1], state[4], state[5], state[6]
        yvec = [None if board[v] == 0 else self._score(board[v], alpha, beta)
                for v in items]
        costs = [self.instance.costs[v] for v in items]
        probs = []
        for v in items:
            row = self.instance.probs[v]
            pa = row[alpha - 1]
            pb = row[beta - 1]
            probs.append({2: pa, 0: pb, 1: max(0.0, 1.0 - pa - pb)})
        untested = [i for i, y in enumerate(yvec) if y is None]
        charges = {i: c for i, c in enumerate(state[7]) if c}
        return yvec, costs, probs, untested, charges

    def next_test(self, state) -> Optional[int]:
        tag = state[0]
        if tag == DONE:
            return None
        if tag == P1:
            return self._cheapest_untested(state[1])
        if tag == KERNEL_A:
            yvec, costs, probs, untested, charges = self._adg_inputs(state)
            goal = state[9]
            star, _, _ = adg_select(goal, costs, probs, yvec, charges, untested)
            return state[6][star]
        board, alpha = state[1], state[4]
        for v in self._refute(alpha):
            if board[v] == 0:
                return v
        raise AssertionError("no untested voter left")

    def advance(self, state, voter: int, value: int):
        tag = state[0]
        if tag == P1:
            board, tallies, unknown = self._reveal(state[1], state[2], state[3],
                                                   voter, value)
            return self._settle_p1(board, tallies, unknown)
        if tag == KERNEL_A:
            alpha, beta, items, theta, goal = (state[4], state[5], state[6],
                                               state[8], state[9])
            yvec, costs, probs, untested, charges = self._adg_inputs(state)
            star, theta_rate, weights = adg_select(goal, costs, probs, yvec,
                                                   charges, untested)
            new_charges = list(state[7])
            for i, w in weights.items():
                new_charges[i] += theta_rate * w
            board, tallies, unknown = self._reveal(state[1], state[2], state[3],
                                                   voter, value)
            return self._settle_adg(board, tallies, unknown, alpha, beta, items,
                                    tuple(new_charges), theta, goal)
        board, tallies, unknown = self._reveal(state[1], state[2], state[3],
                                               voter, value)
        return self._settle_conj(board, tallies, unknown, state[4], state[5])


class AdgAbsMajority(Strategy):
    """Dual-greedy cover over the composed absolute-majority goal.

    Kept as a comparison strategy: its expected cost is within 2d-1 of the
    optimum, which the headline strategies beat with constant factors.
    """

    name = "adg_abs"
    objective = "abs"

    def __init__(self, instance: Instance) -> None:
        super().__init__(instance)
        self._goal = abs_majority_goal(instance)
        self._probs = [{j: row[j - 1] for j in range(1, self.d + 1)}
                       for row in instance.probs]

    def initial_state(self):
        board, tallies, unknown = self._empty()
        return self._settle(board, tallies, unknown, (0.0,) * self.n)

    def _settle(self, board, tallies, unknown, charges):
        cert = abs_certificate_from_tallies(tallies, unknown, self.n)
        if cert is not None:
            return (DONE, board, tallies, unknown, cert)
        return (KERNEL_A, board, tallies, unknown, charges)

    def _select(self, state):
        board, charges = state[1], state[4]
        bvec = [board[v] if board[v] else None for v in range(self.n)]
        untested = [v for v in range(self.n) if board[v] == 0]
        charge_map = {v: c for v, c in enumerate(charges) if c}
        return adg_select(self._goal, self.instance.costs, self._probs, bvec,
                          charge_map, untested)

    def next_test(self, state) -> Optional[int]:
        if state[0] == DONE:
            return None
        star, _, _ = self._select(state)
        return star

    def advance(self, state, voter: int, value: int):
        _, theta, weights = self._select(state)
        charges = list(state[4])
        for v, w in weights.items():
            charges[v] += theta * w
        board, tallies, unknown = self._reveal(state[1], state[2], state[3],
                                               voter, value)
        return self._settle(board, tallies, unknown, tuple(charges))

    def phase_of(self, state) -> int:
        return 1


STRATEGIES = {
    "abs4": Abs4,
    "abs6_threeround": Abs6ThreeRound,
    "abs10_tworound": Abs10TwoRound,
    "rel8": Rel8,
    "naive_abs": lambda inst: NaiveCheapest(inst, "abs"),
    "naive_rel": lambda inst: NaiveCheapest(inst, "rel"),
    "adg_abs": AdgAbsMajority,
}


def make_strategy(name: str, instance: Instance) -> Strategy:
    try:
        factory = STRATEGIES[name]
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}; choose from {sorted(STRATEGIES)}")
    return factory(instance)


def run_strategy(strategy: Strategy, realization: Sequence[int]) -> Transcript:
    """Run a strategy against one realization and record the transcript."""
    _check_realization(strategy.instance, realization)
    costs = strategy.instance.costs
    state = strategy.initial_state()
    steps: list[TranscriptStep] = []
    phases: list[int] = []
    last_phase = None
    cum = 0.0
    while True:
        voter = strategy.next_test(state)
        if voter is None:
            break
        phase = strategy.phase_of(state)
        if phase != last_phase:
            phases.append(len(steps))
            last_phase = phase
        value = realization[voter]
        cum += costs[voter]
        steps.append(TranscriptStep(voter, value, cum))
        state = strategy.advance(state, voter, value)
    return Transcript(algo=strategy.name, steps=tuple(steps), phases=tuple(phases),
                      result=strategy.result(state))


def abs4(instance: Instance, realization: Sequence[int]) -> Transcript:
    return run_strategy(Abs4(instance), realization)


def abs6_threeround(instance: Instance, realization: Sequence[int]) -> Transcript:
    return run_strategy(Abs6ThreeRound(instance), realization)


def abs10_tworound(instance: Instance, realization: Sequence[int]) -> Transcript:
    return run_strategy(Abs10TwoRound(instance), realization)


def rel8(instance: Instance, realization: Sequence[int]) -> Transcript:
    return run_strategy(Rel8(instance), realization)


def naive_cheapest(instance: Instance, realization: Sequence[int],
                   objective: str) -> Transcript:
    return run_strategy(NaiveCheapest(instance, objective), realization)


def phase1(instance: Instance, realization: Sequence[int], objective: str,
           ) -> tuple[PartialAssignment, float, int, int]:
    """Cheapest-first testing until at most two candidates stay in contention.

    Returns the resulting assignment, its cost, and the two leaders the
    second phase would examine.  Stops early if a certificate appears.
    """
    _check_realization(instance, realization)
    b = PartialAssignment.empty(instance.n, instance.d)
    cert_fn = (abs_certificate_from_tallies if objective == "abs"
               else rel_certificate_from_tallies)
    cost = 0.0
    for v in cheapest_first_permutation(instance, b):
        if cert_fn(b.tallies, b.unknown_count, instance.n) is not None:
            break
        if _phase1_stop(b.tallies, b.unknown_count, instance.n, objective):
            break
        b.reveal(v, realization[v])
        cost += instance.costs[v]
    alpha, beta = _pick_leaders(b.tallies, b.unknown_count, instance.n, objective)
    return b, cost, alpha, beta


def phase1_trace(instance: Instance, realization: Sequence[int], objective: str,
                 ) -> list[PartialAssignment]:
    """Snapshots of every Phase 1 state, from the empty assignment to the last."""
    _check_realization(instance, realization)
    b = PartialAssignment.empty(instance.n, instance.d)
    cert_fn = (abs_certificate_from_tallies if objective == "abs"
               else rel_certificate_from_tallies)
    out = [b.copy()]
    for v in cheapest_first_permutation(instance, b):
        if cert_fn(b.tallies, b.unknown_count, instance.n) is not None:
            break
        if _phase1_stop(b.tallies, b.unknown_count, instance.n, objective):
            break
        b.reveal(v, realization[v])
        out.append(b.copy())
    return out
