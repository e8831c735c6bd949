"""quickcount: sequential vote inspection at minimum expected cost.

Determine the winner of an election whose votes are random with known
per-voter distributions and known inspection costs, using constant-factor
approximation strategies for the absolute- and relative-majority rules, an
exact optimal-strategy oracle, and evaluators that measure every strategy
against it.
"""

from .core import (Instance, InstanceError, Outcome, PartialAssignment,
                   abs_certificate, abs_majority, certificate, possible_toppers,
                   rel_certificate, rel_majority, viable_candidates)
from .bench import GeneratorSpec, ResultRow, generate, run_experiment
from .dualgreedy import (AdgRun, CoverState, MalformedGoalError, RatioSample,
                         adg_ratio_samples, adg_run)
from .goals import (DistanceProfile, GoalFunction, abs_majority_goal, and_combine,
                    distances, g_against, g_for, g_pair, or_combine,
                    ternary_threshold_goal)
from .kernels import (KofNProblem, cheapest_first_permutation,
                      conjunction_evaluate, modified_round_robin,
                      nonadaptive_kofn_permutation, sbb_evaluate, sbb_next)
from .oracle import (BudgetExceededError, EvaluationReport, MonteCarloResult,
                     OptimalStrategy, StrategyError, estimate_belief_states,
                     evaluate_strategy, exact_strategy_cost, monte_carlo_cost,
                     optimal_expected_cost)
from .strategies import (STRATEGIES, Strategy, Transcript, TranscriptStep, abs4,
                         abs6_threeround, abs10_tworound, make_strategy,
                         naive_cheapest, phase1, phase1_trace, rel8, run_strategy)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
