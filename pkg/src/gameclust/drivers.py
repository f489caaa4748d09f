"""End-to-end algorithms with full game and timing instrumentation.

``run_gtkmeans`` interleaves single Lloyd steps with local games until
no reallocation is accepted and assignments are stable.  ``run_pkgame``
runs Lloyd to convergence first and then plays one game per conflicted
resource, once.  ``paired_compare`` runs several variants from identical
seeded initializations so their results are directly comparable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    Clustering,
    Dataset,
    ImprovementReport,
    ObjectiveState,
    ideal_load,
    improvement_report,
    objectives,
)
from .errors import ConfigError
from .game_engine import (
    EquilibriumResult,
    LocalGame,
    apply_and_evaluate,
    build_payoff_tensor,
    classify_roles,
    conflicted_games,
    find_pure_nash,
    route_requests,
)
from .kmeans import KMeansConfig, init_centers, lloyd_full, lloyd_iteration

ALGORITHMS = ("gtkmeans", "pkgame")


@dataclass(frozen=True)
class RunConfig:
    """Settings for one algorithm run; ns=None disables strategy selection."""

    k: int
    seed: int
    ns: Optional[int] = None
    max_outer_iterations: int = 100
    algorithm: str = "gtkmeans"

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.ns is not None and self.ns < 1:
            raise ConfigError(f"ns must be >= 1 when present, got {self.ns}")
        if self.max_outer_iterations < 1:
            raise ConfigError(f"max_outer_iterations must be >= 1, got {self.max_outer_iterations}")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")


@dataclass(frozen=True)
class GameRecord:
    """Instrumentation for one solved local game."""

    resource_id: int
    player_ids: Tuple[int, ...]
    requests: Tuple[int, ...]
    set_sizes: Tuple[int, ...]
    joint_entries: int
    feasible_fraction: float
    equilibrium_kind: str


@dataclass(frozen=True)
class IterationRecord:
    """State of one outer iteration, including any game phase."""

    index: int
    sse_before_games: float
    l_before_games: float
    games: Tuple[GameRecord, ...]
    accepted: bool
    reallocation_score: Optional[float]
    sse_end: float
    l_end: float
    loads_end: Tuple[int, ...]


@dataclass(frozen=True)
class RunReport:
    """Everything one run produced: objectives, improvements, game sizes, timing."""

    algorithm: str
    config: RunConfig
    initial: ObjectiveState
    final: ObjectiveState
    improvement: ImprovementReport
    avg_strategies_per_player: float
    payoff_entry_counts: Tuple[int, ...]
    games_played: int
    outer_iterations: int
    kmeans_iterations: int
    wall_time_s: float
    trace: Tuple[IterationRecord, ...]
    final_clustering: Clustering


def _balanced(clustering: Clustering, ideal: Fraction) -> bool:
    """Integer-feasible balance: every load within one unit of the ideal."""
    return all(abs(Fraction(int(l)) - ideal) < 1 for l in clustering.loads)


def _play_games(
    dataset: Dataset,
    clustering: Clustering,
    ideal: Fraction,
    ns: Optional[int],
) -> Tuple[Clustering, bool, Optional[float], List[GameRecord]]:
    """Formulate, solve and apply the games of one iteration.

    Returns the (possibly new) clustering, whether the reallocation was
    accepted, the combined score of an accepted reallocation relative to
    the pre-game state (None when not computable), and game records.
    """
    roles = classify_roles(clustering, ideal)
    if not roles.players or not roles.resources:
        return clustering, False, None, []
    routing = route_requests(roles, clustering)
    games = conflicted_games(clustering, roles, routing, ns)
    if not games:
        return clustering, False, None, []
    solved: List[Tuple[LocalGame, EquilibriumResult]] = []
    records: List[GameRecord] = []
    for game in games:
        tensor = build_payoff_tensor(dataset, clustering, game)
        eq = find_pure_nash(tensor)
        solved.append((game, eq))
        records.append(
            GameRecord(
                resource_id=game.resource_id,
                player_ids=tuple(p.player_id for p in game.participants),
                requests=tuple(p.request for p in game.participants),
                set_sizes=tuple(len(p.strategies) for p in game.participants),
                joint_entries=tensor.joint_count,
                feasible_fraction=float(tensor.feasible.mean()),
                equilibrium_kind=eq.kind,
            )
        )
    pre = objectives(dataset, clustering, ideal)
    new_clustering, accepted = apply_and_evaluate(dataset, clustering, solved)
    score = None
    if accepted and pre.sse > 0 and pre.load_metric > 0:
        post = objectives(dataset, new_clustering, ideal)
        score = post.sse / pre.sse + post.load_metric / pre.load_metric
    return new_clustering, accepted, score, records


def run_gtkmeans(dataset: Dataset, config: RunConfig) -> RunReport:
    """Iterative engine: one Lloyd step, then local games, until stable.

    Stops when an iteration accepts no reallocation and the Lloyd step
    left assignments unchanged, or when the iteration budget runs out.
    """
    t0 = time.perf_counter()
    ideal = ideal_load(dataset.n, config.k)
    centers = init_centers(dataset, KMeansConfig(k=config.k, seed=config.seed))
    trace: List[IterationRecord] = []
    prev_assignment: Optional[np.ndarray] = None
    initial: Optional[ObjectiveState] = None
    clustering: Optional[Clustering] = None
    outer = 0
    for it in range(1, config.max_outer_iterations + 1):
        outer = it
        clustering = lloyd_iteration(dataset, centers)
        if initial is None:
            initial = objectives(dataset, clustering, ideal)
        lloyd_stable = prev_assignment is not None and np.array_equal(
            clustering.assignment, prev_assignment
        )
        pre = objectives(dataset, clustering, ideal)
        accepted = False
        score: Optional[float] = None
        records: List[GameRecord] = []
        if not _balanced(clustering, ideal):
            clustering, accepted, score, records = _play_games(dataset, clustering, ideal, config.ns)
        end = objectives(dataset, clustering, ideal) if accepted else pre
        trace.append(
            IterationRecord(
                index=it,
                sse_before_games=pre.sse,
                l_before_games=pre.load_metric,
                games=tuple(records),
                accepted=accepted,
                reallocation_score=score,
                sse_end=end.sse,
                l_end=end.load_metric,
                loads_end=tuple(int(l) for l in clustering.loads),
            )
        )
        prev_assignment = clustering.assignment
        centers = clustering.centers
        if not accepted and lloyd_stable:
            break
    assert clustering is not None and initial is not None
    final = objectives(dataset, clustering, ideal)
    return _report(
        "gtkmeans", config, initial, final, trace, outer, outer, time.perf_counter() - t0, clustering
    )


def run_pkgame(dataset: Dataset, config: RunConfig) -> RunReport:
    """One-shot engine: full Lloyd convergence, then a single game phase."""
    t0 = time.perf_counter()
    ideal = ideal_load(dataset.n, config.k)
    centers = init_centers(dataset, KMeansConfig(k=config.k, seed=config.seed))
    first = lloyd_iteration(dataset, centers)
    initial = objectives(dataset, first, ideal)
    if config.max_outer_iterations > 1:
        clustering, inner = lloyd_full(dataset, first.centers, config.max_outer_iterations - 1)
        kmeans_iterations = 1 + inner
    else:
        clustering, kmeans_iterations = first, 1
    pre = objectives(dataset, clustering, ideal)
    accepted = False
    score: Optional[float] = None
    records: List[GameRecord] = []
    if not _balanced(clustering, ideal):
        clustering, accepted, score, records = _play_games(dataset, clustering, ideal, config.ns)
    end = objectives(dataset, clustering, ideal) if accepted else pre
    trace = (
        IterationRecord(
            index=1,
            sse_before_games=pre.sse,
            l_before_games=pre.load_metric,
            games=tuple(records),
            accepted=accepted,
            reallocation_score=score,
            sse_end=end.sse,
            l_end=end.load_metric,
            loads_end=tuple(int(l) for l in clustering.loads),
        ),
    )
    final = objectives(dataset, clustering, ideal)
    return _report(
        "pkgame", config, initial, final, list(trace), 1, kmeans_iterations,
        time.perf_counter() - t0, clustering,
    )


def _report(
    algorithm: str,
    config: RunConfig,
    initial: ObjectiveState,
    final: ObjectiveState,
    trace: List[IterationRecord],
    outer_iterations: int,
    kmeans_iterations: int,
    wall_time_s: float,
    clustering: Clustering,
) -> RunReport:
    set_sizes = [s for rec in trace for g in rec.games for s in g.set_sizes]
    entry_counts = tuple(g.joint_entries for rec in trace for g in rec.games)
    return RunReport(
        algorithm=algorithm,
        config=config,
        initial=initial,
        final=final,
        improvement=improvement_report(initial, final),
        avg_strategies_per_player=(sum(set_sizes) / len(set_sizes)) if set_sizes else 0.0,
        payoff_entry_counts=entry_counts,
        games_played=len(entry_counts),
        outer_iterations=outer_iterations,
        kmeans_iterations=kmeans_iterations,
        wall_time_s=wall_time_s,
        trace=tuple(trace),
        final_clustering=clustering,
    )


def run_algorithm(dataset: Dataset, config: RunConfig) -> RunReport:
    """Dispatch on ``config.algorithm``."""
    if config.algorithm == "gtkmeans":
        return run_gtkmeans(dataset, config)
    return run_pkgame(dataset, config)


@dataclass(frozen=True)
class VariantSummary:
    """Mean metrics of one (algorithm, ns) variant over a set of paired seeds."""

    algorithm: str
    ns: Optional[int]
    k: int
    seeds: Tuple[int, ...]
    mean_wall_time_s: float
    mean_strategies_per_player: float
    mean_payoff_entries: float
    mean_sse_improvement_pct: Optional[float]
    mean_l_improvement_pct: Optional[float]
    reports: Tuple[RunReport, ...]


def _mean_optional(values: Sequence[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None]
    if not present:
        return None
    return sum(present) / len(present)


def paired_compare(
    dataset: Dataset,
    k: int,
    seeds: Sequence[int],
    ns_values: Sequence[Optional[int]],
    algorithms: Sequence[str] = ALGORITHMS,
    max_outer_iterations: int = 100,
    timed_serial: bool = True,
) -> List[VariantSummary]:
    """Run every (algorithm, ns) variant over the same seeds and average the metrics.

    All variants of a seed start from the identical seeded center
    initialization, so initial objectives match across variants.  Runs
    execute serially; ``timed_serial`` is accepted for interface
    stability and documents that timings here are interference-free.
    """
    if not seeds:
        raise ConfigError("need at least one seed")
    del timed_serial  # execution is serial either way
    summaries: List[VariantSummary] = []
    for algorithm in algorithms:
        for ns in ns_values:
            reports = [
                run_algorithm(
                    dataset,
                    RunConfig(
                        k=k, seed=int(s), ns=ns,
                        max_outer_iterations=max_outer_iterations, algorithm=algorithm,
                    ),
                )
                for s in seeds
            ]
            summaries.append(
                VariantSummary(
                    algorithm=algorithm,
                    ns=ns,
                    k=k,
                    seeds=tuple(int(s) for s in seeds),
                    mean_wall_time_s=float(np.mean([r.wall_time_s for r in reports])),
                    mean_strategies_per_player=float(
                        np.mean([r.avg_strategies_per_player for r in reports])
                    ),
                    mean_payoff_entries=float(
                        np.mean([sum(r.payoff_entry_counts) for r in reports])
                    ),
                    mean_sse_improvement_pct=_mean_optional(
                        [r.improvement.sse_improvement_pct for r in reports]
                    ),
                    mean_l_improvement_pct=_mean_optional(
                        [r.improvement.l_improvement_pct for r in reports]
                    ),
                    reports=tuple(reports),
                )
            )
    return summaries
