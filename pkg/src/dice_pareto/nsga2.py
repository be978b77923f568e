"""Real-coded elitist NSGA-II over policy genomes.

The engine minimizes (-W, T_max) over flat genomes of 2H genes in [0, 1]
(mitigation row first, then saving row). Variation operators clamp to the box,
so every genome satisfies the bounds after every operator.

Reproducibility contract: all stochastic draws come from one numpy Generator
in a fixed, documented order. Per generation: for each offspring pair in index
order, two tournament selections (two integer draws each) followed by the
per-gene blend coefficients; then for each mutant in index order, one
tournament selection followed by the per-gene mask uniforms and the per-gene
Gaussian noise (both drawn in full regardless of the mask). Objective
evaluation never touches the generator, so serial and thread-parallel
evaluation give identical archives.
"""

from __future__ import annotations

import dataclasses
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .errors import ConfigError, EngineError
from .model import ObjectivePair

Evaluator = Callable[[np.ndarray], ObjectivePair]

# Blend coefficients are drawn from U[BLEND_LOW, BLEND_HIGH]: convex mixing
# with a 10% overshoot band on both sides, clamped back to the box.
BLEND_LOW = -0.1
BLEND_HIGH = 1.1


@dataclass
class EngineConfig:
    """Algorithm settings; defaults follow the reference experiment setup."""

    population_size: int = 200
    max_iterations: int = 1000
    mutation_rate: float = 0.03      # per-gene selection probability
    mutation_step: float = 0.1       # Gaussian std in gene units
    crossover_fraction: float = 0.7  # offspring count as a fraction of the population
    mutant_fraction: float = 0.3     # mutant count as a fraction of the population
    rng_seed: int = 1
    tournament_size: int = 2         # binary tournaments only

    def __post_init__(self) -> None:
        if not (isinstance(self.population_size, int) and self.population_size >= 4
                and self.population_size % 2 == 0):
            raise ConfigError(
                f"population_size must be an even integer >= 4, got {self.population_size!r}")
        if not (isinstance(self.max_iterations, int) and self.max_iterations >= 0):
            raise ConfigError(f"max_iterations must be a non-negative integer, "
                              f"got {self.max_iterations!r}")
        for name in ("mutation_rate", "crossover_fraction", "mutant_fraction"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {value}")
        if not self.mutation_step > 0:
            raise ConfigError(f"mutation_step must be positive, got {self.mutation_step}")
        if self.tournament_size != 2:
            raise ConfigError(f"tournament_size is fixed at 2, got {self.tournament_size}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EngineConfig":
        """Build engine settings from a key-value mapping; unknown keys rejected."""
        allowed = {f.name for f in dataclasses.fields(cls)}
        if not isinstance(data, dict):
            raise ConfigError(f"section 'engine' must be a mapping, got {type(data).__name__}")
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise ConfigError(f"unknown key(s) in section 'engine': {', '.join(unknown)}")
        kwargs: dict[str, Any] = {}
        for key, value in data.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"engine.{key} must be a number, got {value!r}")
            if key in ("population_size", "max_iterations", "rng_seed", "tournament_size"):
                if float(value) != int(value):
                    raise ConfigError(f"engine.{key} must be an integer, got {value!r}")
                kwargs[key] = int(value)
            else:
                kwargs[key] = float(value)
        return cls(**kwargs)

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


@dataclass
class Individual:
    """A candidate policy with its scores and NSGA-II bookkeeping."""

    genome: np.ndarray
    objectives: ObjectivePair | None = None
    rank: int | None = None      # 1-based front index; 1 = globally non-dominated
    crowding: float = 0.0

    @property
    def min_objectives(self) -> tuple[float, float]:
        """Objectives in minimization form: (-W, T_max)."""
        if self.objectives is None:
            raise EngineError("individual has no objectives yet")
        return (-self.objectives.W, self.objectives.T_max)


@dataclass(frozen=True)
class FrontArchive:
    """Rank-1 individuals of a final population, sorted by T_max ascending.

    Exact duplicates in objective space are dropped (within rank 1 a tie in
    T_max forces a tie in W, otherwise one would dominate the other), making
    the sort order strict.
    """

    members: tuple[Individual, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.members)

    def objective_rows(self) -> np.ndarray:
        """(n, 2) array of (W, T_max) rows in archive order."""
        return np.array([ind.objectives for ind in self.members], dtype=float)


def dominates(a: ObjectivePair, b: ObjectivePair) -> bool:
    """True iff a is at least as good as b in both objectives and better in one.

    Orientation: W is maximized, T_max is minimized.
    """
    if not (a.W >= b.W and a.T_max <= b.T_max):
        return False
    return a.W > b.W or a.T_max < b.T_max


def non_dominated_sort(population: Sequence[Individual]) -> list[list[int]]:
    """Partition the population into fronts; 1-based ranks are written back.

    Front k (list index k-1) is non-dominated within the union of fronts
    k..end; the first front is globally non-dominated.
    """
    n = len(population)
    if n == 0:
        return []
    f = np.array([ind.min_objectives for ind in population], dtype=float)
    f1 = f[:, 0]
    f2 = f[:, 1]
    weakly = (f1[:, None] <= f1[None, :]) & (f2[:, None] <= f2[None, :])
    strictly = (f1[:, None] < f1[None, :]) | (f2[:, None] < f2[None, :])
    dom = weakly & strictly  # dom[p, q]: p dominates q
    dominator_count = dom.sum(axis=0)
    alive = np.ones(n, dtype=bool)
    fronts: list[list[int]] = []
    while alive.any():
        current = alive & (dominator_count == 0)
        members = np.flatnonzero(current)
        rank = len(fronts) + 1
        for idx in members:
            population[idx].rank = rank
        fronts.append([int(idx) for idx in members])
        alive &= ~current
        dominator_count = dominator_count - dom[current].sum(axis=0)
    return fronts


def crowding_distance(front: Sequence[Individual]) -> np.ndarray:
    """Per-objective normalized neighbor gaps, summed over both objectives.

    Boundary individuals of each objective get +inf; an objective with zero
    range contributes nothing to interior members.
    """
    m = len(front)
    if m == 0:
        return np.zeros(0)
    if m <= 2:
        return np.full(m, np.inf)
    f = np.array([ind.min_objectives for ind in front], dtype=float)
    d = np.zeros(m)
    for obj in range(f.shape[1]):
        order = np.argsort(f[:, obj], kind="stable")
        vals = f[order, obj]
        d[order[0]] = np.inf
        d[order[-1]] = np.inf
        span = vals[-1] - vals[0]
        if span > 0:
            d[order[1:-1]] += (vals[2:] - vals[:-2]) / span
    return d


def tournament_select(population: Sequence[Individual], rng: np.random.Generator) -> int:
    """Binary tournament: lower rank wins, then larger crowding, then first drawn."""
    n = len(population)
    if n < 2:
        raise EngineError(f"tournament needs at least 2 individuals, got {n}")
    i = int(rng.integers(n))
    j = int(rng.integers(n - 1))
    if j >= i:
        j += 1
    a, b = population[i], population[j]
    if a.rank is None or b.rank is None:
        raise EngineError("tournament requires ranked individuals")
    if a.rank != b.rank:
        return i if a.rank < b.rank else j
    if a.crowding != b.crowding:
        return i if a.crowding > b.crowding else j
    return i


def crossover(
    parent_a: np.ndarray, parent_b: np.ndarray, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Whole-arithmetic blend with per-gene coefficient in U[-0.1, 1.1], clamped."""
    if parent_a.shape != parent_b.shape:
        raise EngineError(
            f"genome length mismatch: {parent_a.shape} vs {parent_b.shape}")
    beta = rng.uniform(BLEND_LOW, BLEND_HIGH, size=parent_a.shape)
    child_a = np.clip(beta * parent_a + (1.0 - beta) * parent_b, 0.0, 1.0)
    child_b = np.clip((1.0 - beta) * parent_a + beta * parent_b, 0.0, 1.0)
    child_a.flags.writeable = False
    child_b.flags.writeable = False
    return child_a, child_b


def mutate(genome: np.ndarray, rng: np.random.Generator, cfg: EngineConfig) -> np.ndarray:
    """Gaussian mutation: each gene perturbed with probability mutation_rate, clamped.

    Mask uniforms and noise normals are both drawn for every gene so the
    stream consumption does not depend on the mask.
    """
    mask = rng.random(genome.shape) < cfg.mutation_rate
    noise = rng.normal(0.0, cfg.mutation_step, size=genome.shape)
    mutated = np.clip(np.where(mask, genome + noise, genome), 0.0, 1.0)
    mutated.flags.writeable = False
    return mutated


def initialize_population(
    cfg: EngineConfig, horizon: int, rng: np.random.Generator
) -> list[Individual]:
    """Constant-input seeding: each genome is one mitigation level u repeated
    over the horizon followed by one saving level v repeated over the horizon,
    with u, v drawn uniformly from [0, 1]."""
    population: list[Individual] = []
    for _ in range(cfg.population_size):
        u = rng.random()
        v = rng.random()
        genome = np.empty(2 * horizon)
        genome[:horizon] = u
        genome[horizon:] = v
        genome.flags.writeable = False
        population.append(Individual(genome=genome))
    return population


def _evaluate_pending(
    individuals: Iterable[Individual], evaluator: Evaluator, workers: int
) -> None:
    """Score every unevaluated individual, in list order, serially or on threads."""
    pending = [ind for ind in individuals if ind.objectives is None]
    if not pending:
        return

    def safe_eval(genome: np.ndarray) -> ObjectivePair:
        try:
            return evaluator(genome)
        except Exception as exc:
            raise EngineError(
                f"policy evaluation failed for genome {json.dumps(genome.tolist())}: {exc}"
            ) from exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(safe_eval, (ind.genome for ind in pending)))
    else:
        results = [safe_eval(ind.genome) for ind in pending]
    for ind, objectives in zip(pending, results):
        ind.objectives = ObjectivePair(*objectives)


def _rank_and_crowd(population: Sequence[Individual]) -> list[list[int]]:
    fronts = non_dominated_sort(population)
    for front_indices in fronts:
        members = [population[idx] for idx in front_indices]
        for idx, dist in zip(front_indices, crowding_distance(members)):
            population[idx].crowding = float(dist)
    return fronts


def _truncate(
    population: list[Individual], fronts: list[list[int]], target: int
) -> list[Individual]:
    """Keep whole fronts while they fit; cut the overflowing front by crowding."""
    keep: list[int] = []
    for front_indices in fronts:
        if len(keep) + len(front_indices) <= target:
            keep.extend(front_indices)
        else:
            by_crowding = sorted(
                front_indices, key=lambda idx: -population[idx].crowding)
            keep.extend(by_crowding[: target - len(keep)])
            break
    return [population[idx] for idx in keep]


def _even_count(fraction: float, population_size: int) -> int:
    return 2 * round(fraction * population_size / 2.0)


def evolve(
    cfg: EngineConfig,
    evaluator: Evaluator,
    horizon: int,
    rng: np.random.Generator,
    workers: int = 1,
) -> FrontArchive:
    """Run the evolutionary loop and return the final first front.

    Per iteration: offspring are created by tournament selection plus blend
    crossover (crossover_fraction * N individuals, rounded to even) and
    mutants by tournament selection plus Gaussian mutation
    (mutant_fraction * N); new individuals are evaluated, merged with the
    parents, re-sorted, and the best N survive (lower rank first, larger
    crowding within the cut front). Deterministic for a fixed seed; workers
    only parallelizes evaluation.
    """
    population = initialize_population(cfg, horizon, rng)
    _evaluate_pending(population, evaluator, workers)
    _rank_and_crowd(population)

    n_offspring = _even_count(cfg.crossover_fraction, cfg.population_size)
    n_mutants = round(cfg.mutant_fraction * cfg.population_size)
    for _ in range(cfg.max_iterations):
        newborn: list[Individual] = []
        for _ in range(n_offspring // 2):
            idx_a = tournament_select(population, rng)
            idx_b = tournament_select(population, rng)
            child_a, child_b = crossover(
                population[idx_a].genome, population[idx_b].genome, rng)
            newborn.append(Individual(genome=child_a))
            newborn.append(Individual(genome=child_b))
        for _ in range(n_mutants):
            idx = tournament_select(population, rng)
            newborn.append(Individual(genome=mutate(population[idx].genome, rng, cfg)))
        _evaluate_pending(newborn, evaluator, workers)
        merged = list(population) + newborn
        fronts = _rank_and_crowd(merged)
        population = _truncate(merged, fronts, cfg.population_size)

    fronts = _rank_and_crowd(population)
    first_front = [population[idx] for idx in fronts[0]] if fronts else []
    return _build_archive(first_front)


def _build_archive(first_front: Sequence[Individual]) -> FrontArchive:
    """Sort rank-1 members by (T_max, -W) and drop exact objective duplicates."""
    ordered = sorted(first_front, key=lambda ind: (ind.objectives.T_max, -ind.objectives.W))
    unique: list[Individual] = []
    seen: set[tuple[float, float]] = set()
    for ind in ordered:
        key = (ind.objectives.W, ind.objectives.T_max)
        if key not in seen:
            seen.add(key)
            unique.append(ind)
    return FrontArchive(members=tuple(unique))
