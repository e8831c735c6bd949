"""Single-question testing kernels shared by the composed strategies.

The central rule is the Salloum-Breuer / Ben-Dov (SBB) strategy for k-of-n
functions: to decide whether at least k of the untested 0/1 variables are 1
(where z = untested - k + 1 zeros would refute), it is optimal to test a
variable lying in both the k cheapest by c/p and the z cheapest by c/(1-p).
Since k + z exceeds the number of untested variables by one, the two
prefixes intersect by pigeonhole.

Also provided: the cost-sensitive modified round-robin of Allen et al. used
to interleave fixed testing orders into a single permutation, and the
orderings it is fed with.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import (Instance, PartialAssignment, blocking_threshold,
                   majority_threshold, rel_certificate)


@dataclass(frozen=True)
class KofNProblem:
    """State of an undecided k-of-n question over the untested voters.

    voters holds (cost, success probability) pairs; k successes verify, z
    failures refute, and k + z = len(voters) + 1 always holds.
    """

    voters: tuple[tuple[float, float], ...]
    k: int
    z: int

    def __post_init__(self) -> None:
        m = len(self.voters)
        if not 1 <= self.k <= m:
            raise ValueError(f"k must lie in 1..{m}, got {self.k}")
        if self.z != m - self.k + 1:
            raise ValueError(f"z must equal untested - k + 1 = {m - self.k + 1}, got {self.z}")
        for i, (c, p) in enumerate(self.voters):
            if c < 0:
                raise ValueError(f"voters[{i}]: negative cost {c!r}")
            if not 0.0 < p < 1.0:
                raise ValueError(f"voters[{i}]: probability {p!r} outside (0, 1)")

    @classmethod
    def for_needs(cls, voters: Sequence[tuple[float, float]], k: int) -> "KofNProblem":
        return cls(tuple(voters), k, len(voters) - k + 1)


def _sbb_pick(k: int, z: int, order_cp: Sequence[int], order_cq: Sequence[int],
              untested: Callable[[int], bool]) -> int:
    """Lowest-index voter inside both ratio prefixes (which must intersect)."""
    head = set()
    for v in order_cp:
        if untested(v):
            head.add(v)
            if len(head) == k:
                break
    best = -1
    seen = 0
    for v in order_cq:
        if untested(v):
            seen += 1
            if v in head and (best < 0 or v < best):
                best = v
            if seen == z:
                break
    if best < 0:
        raise AssertionError("ratio prefixes failed to intersect; k + z must be untested + 1")
    return best


def sbb_next(problem: KofNProblem) -> int:
    """Position (0-based) of the next voter to test under the SBB rule.

    Ties in either ratio order, and ties inside the prefix intersection,
    break toward the lowest position so runs are reproducible.
    """
    m = len(problem.voters)
    if problem.k < 1 or problem.z < 1:
        raise ValueError("k-of-n question already decided")
    by_cp = sorted(range(m), key=lambda i: (problem.voters[i][0] / problem.voters[i][1], i))
    by_cq = sorted(range(m), key=lambda i: (problem.voters[i][0] / (1.0 - problem.voters[i][1]), i))
    return _sbb_pick(problem.k, problem.z, by_cp, by_cq, lambda _: True)


def support_order(instance: Instance, candidate: int) -> list[int]:
    """All voters in increasing c_i / p_{i,candidate}, index tie-break."""
    j = candidate - 1
    return sorted(range(instance.n),
                  key=lambda v: (instance.costs[v] / instance.probs[v][j], v))


def refutation_order(instance: Instance, candidate: int) -> list[int]:
    """All voters in increasing c_i / (1 - p_{i,candidate}), index tie-break."""
    j = candidate - 1
    return sorted(range(instance.n),
                  key=lambda v: (instance.costs[v] / (1.0 - instance.probs[v][j]), v))


def sbb_evaluate(instance: Instance, b: PartialAssignment, target: int,
                 realization: Sequence[int]) -> tuple[bool, PartialAssignment, float]:
    """Decide "does target win the absolute majority" at optimal expected cost.

    Reduces to a k-of-n question (k more votes for target verify, z votes
    against refute) and repeatedly applies the SBB rule, revealing outcomes
    from the realization.  Returns the verdict, the extended assignment and
    the cost spent.  k and z are recomputed from the current assignment
    after every reveal.
    """
    b = b.copy()
    k = majority_threshold(b.n) - b.count(target)
    z = blocking_threshold(b.n) - (b.tested_count - b.count(target))
    cost = 0.0
    if k <= 0:
        return True, b, cost
    if z <= 0:
        return False, b, cost
    by_cp = support_order(instance, target)
    by_cq = refutation_order(instance, target)
    entries = b.entries
    while True:
        v = _sbb_pick(k, z, by_cp, by_cq, lambda u: entries[u] is None)
        b.reveal(v, realization[v])
        cost += instance.costs[v]
        if realization[v] == target:
            k -= 1
            if k == 0:
                return True, b, cost
        else:
            z -= 1
            if z == 0:
                return False, b, cost


def conjunction_evaluate(instance: Instance, b: PartialAssignment, alpha: int,
                         realization: Sequence[int]) -> tuple[bool, PartialAssignment, float]:
    """Check whether every untested vote is for alpha.

    Tests in increasing c_i / (1 - p_{i,alpha}); the first other vote
    refutes, exhausting the untested voters confirms.  This order is the
    optimal verification of a conjunction.
    """
    b = b.copy()
    cost = 0.0
    for v in refutation_order(instance, alpha):
        if b.entries[v] is not None:
            continue
        b.reveal(v, realization[v])
        cost += instance.costs[v]
        if realization[v] != alpha:
            return False, b, cost
    return True, b, cost


def conjunction_evaluate_until_certain(instance: Instance, b: PartialAssignment,
                                       alpha: int, realization: Sequence[int],
                                       ) -> tuple[PartialAssignment, float]:
    """Conjunction testing that additionally stops on any relative-majority
    certificate, as used in the composed relative-majority strategy."""
    b = b.copy()
    cost = 0.0
    if rel_certificate(b) is not None:
        return b, cost
    for v in refutation_order(instance, alpha):
        if b.entries[v] is not None:
            continue
        b.reveal(v, realization[v])
        cost += instance.costs[v]
        if rel_certificate(b) is not None:
            return b, cost
    return b, cost


def modified_round_robin(lists: Sequence[Sequence[int]], costs: Sequence[float],
                         dedup: bool = True) -> list[int]:
    """Cost-sensitive round-robin merge of testing orders (Allen et al.).

    Each list keeps a spent-cost accumulator D; at every step the list
    minimizing D + (cost of its next element) contributes that element and
    is charged for it.  Ties break toward the lowest list index.  With
    dedup, later duplicates are removed so each voter appears once.
    """
    if not lists:
        raise ValueError("modified_round_robin requires at least one list")
    for li, lst in enumerate(lists):
        if len(set(lst)) != len(lst):
            raise ValueError(f"lists[{li}] contains duplicate voters")
    spent = [0.0] * len(lists)
    cursor = [0] * len(lists)
    pi: list[int] = []
    remaining = sum(len(lst) for lst in lists)
    while remaining:
        best_li = -1
        best_key = None
        for li, lst in enumerate(lists):
            if cursor[li] >= len(lst):
                continue
            key = spent[li] + costs[lst[cursor[li]]]
            if best_key is None or key < best_key:
                best_key, best_li = key, li
        v = lists[best_li][cursor[best_li]]
        pi.append(v)
        spent[best_li] += costs[v]
        cursor[best_li] += 1
        remaining -= 1
    if not dedup:
        return pi
    seen: set[int] = set()
    out = []
    for v in pi:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _restrict(order: Iterable[int], keep: set[int]) -> list[int]:
    return [v for v in order if v in keep]


def kofn_permutation_for(instance: Instance, untested: Iterable[int],
                         target: int) -> list[int]:
    """Round-robin of the support and refutation orders for one candidate."""
    keep = set(untested)
    lists = [_restrict(support_order(instance, target), keep),
             _restrict(refutation_order(instance, target), keep)]
    return modified_round_robin(lists, instance.costs)


def nonadaptive_kofn_permutation(instance: Instance, b: PartialAssignment,
                                 target: int) -> list[int]:
    """Fixed testing order that 2-approximates the SBB strategy."""
    return kofn_permutation_for(instance, b.unknown_voters(), target)


def two_candidate_round_robin(instance: Instance, untested: Iterable[int],
                              alpha: int, beta: int) -> list[int]:
    """Round-robin over the four support/refutation orders of two candidates."""
    keep = set(untested)
    lists = [_restrict(support_order(instance, alpha), keep),
             _restrict(refutation_order(instance, alpha), keep),
             _restrict(support_order(instance, beta), keep),
             _restrict(refutation_order(instance, beta), keep)]
    return modified_round_robin(lists, instance.costs)


def cheapest_first_permutation(instance: Instance, b: PartialAssignment) -> list[int]:
    """Untested voters by increasing (cost, index)."""
    return sorted(b.unknown_voters(), key=lambda v: (instance.costs[v], v))
