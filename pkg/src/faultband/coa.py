"""Crayfish optimization over box constraints, maximizing a fitness function.

The population mimics crayfish reacting to water temperature: hot spells
send them to shaded burrows or into fights over them, cool spells send
them foraging toward the best solution found so far. All randomness comes
from streams derived per iteration from the config seed, so a run is
reproducible bit for bit and the draw order never depends on which branch
a crayfish takes.

Fitness functions must be pure: evaluations within one iteration carry no
ordering guarantee beyond the deterministic RNG partition.
"""

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import ConfigurationError, InitializationError, InvalidInputError

FitnessFn = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class CoaConfig:
    """Optimizer settings: box bounds, population shape, and behavior constants.

    ``intake_coeff`` scales the food-intake probability, ``food_factor``
    the food-size threshold; ``temp_mu`` and ``temp_sigma`` shape the
    Gaussian appetite curve. Defaults follow the published constants.
    """

    lower_bounds: np.ndarray
    upper_bounds: np.ndarray
    population_size: int = 30
    dimensions: int = 0
    max_iterations: int = 50
    intake_coeff: float = 0.2
    food_factor: float = 3.0
    temp_mu: float = 25.0
    temp_sigma: float = 3.0
    rng_seed: int = 0

    def __post_init__(self):
        lb = np.atleast_1d(np.asarray(self.lower_bounds, dtype=np.float64))
        ub = np.atleast_1d(np.asarray(self.upper_bounds, dtype=np.float64))
        if lb.ndim != 1 or lb.shape != ub.shape:
            raise ConfigurationError("bounds must be 1-D vectors of equal length")
        dim = self.dimensions if self.dimensions else lb.size
        if dim != lb.size:
            raise ConfigurationError(
                f"dimensions={self.dimensions} but bounds have length {lb.size}"
            )
        if not (np.all(np.isfinite(lb)) and np.all(np.isfinite(ub))):
            raise ConfigurationError("bounds must be finite")
        if not np.all(lb < ub):
            raise ConfigurationError("each lower bound must be strictly below its upper bound")
        if self.population_size < 4:
            raise ConfigurationError("population_size must be at least 4")
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be at least 1")
        for name in ("intake_coeff", "food_factor", "temp_mu", "temp_sigma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigurationError(f"{name} must be finite and positive")
        if not (isinstance(self.rng_seed, (int, np.integer)) and self.rng_seed >= 0):
            raise ConfigurationError("rng_seed must be a non-negative integer")
        object.__setattr__(self, "lower_bounds", lb)
        object.__setattr__(self, "upper_bounds", ub)
        object.__setattr__(self, "dimensions", int(dim))
        object.__setattr__(self, "population_size", int(self.population_size))
        object.__setattr__(self, "max_iterations", int(self.max_iterations))
        object.__setattr__(self, "rng_seed", int(self.rng_seed))


@dataclass(frozen=True)
class Population:
    """Optimizer state after ``iteration`` completed iterations."""

    positions: np.ndarray
    fitnesses: np.ndarray
    best_position: np.ndarray
    best_fitness: float
    iteration: int

    def __post_init__(self):
        if self.positions.ndim != 2 or self.fitnesses.shape != (self.positions.shape[0],):
            raise InvalidInputError("positions must be N x dim with one fitness per row")
        if self.iteration < 0:
            raise InvalidInputError("iteration must be non-negative")


@dataclass(frozen=True)
class OptimizationResult:
    """Final best candidate plus the per-iteration best-so-far trace."""

    best_position: np.ndarray
    best_fitness: float
    fitness_history: np.ndarray
    evaluations: int


def temperature(rng: np.random.Generator) -> float:
    """One ambient-temperature draw, uniform on [20, 35) degrees C."""
    return float(rng.random() * 15.0 + 20.0)


def intake_probability(temp: float, config: CoaConfig) -> float:
    """Gaussian food-intake probability for a given temperature.

    Peaks at ``intake_coeff / (sqrt(2 pi) * temp_sigma)`` when the water
    sits at ``temp_mu``.
    """
    sigma = config.temp_sigma
    scale = config.intake_coeff / (math.sqrt(2.0 * math.pi) * sigma)
    return scale * math.exp(-((temp - config.temp_mu) ** 2) / (2.0 * sigma**2))


def decreasing_curve(iteration: int, max_iterations: int) -> float:
    """Exploration weight 2 - t/T, sliding from 2 toward 1 over the run."""
    return 2.0 - iteration / max_iterations


def rival_index(draw: float, population_size: int) -> int:
    """Index of the crayfish contested for a burrow, from one uniform draw."""
    return int(round(draw * (population_size - 1)))


def _sanitize(values: np.ndarray) -> np.ndarray:
    """Non-finite fitness returns count as unusable: force them to -inf."""
    return np.where(np.isfinite(values), values, -np.inf)


def _evaluate(fitness: FitnessFn, positions: np.ndarray) -> np.ndarray:
    return _sanitize(np.array([float(fitness(row)) for row in positions]))


def _ranks(fitnesses: np.ndarray) -> np.ndarray:
    """Ascending ranks 1..N (best crayfish gets N), ties broken stably."""
    order = np.argsort(fitnesses, kind="stable")
    ranks = np.empty(fitnesses.size, dtype=np.float64)
    ranks[order] = np.arange(1, fitnesses.size + 1)
    return ranks


def initialize(fitness: FitnessFn, config: CoaConfig) -> Population:
    """Scatter the population uniformly over the box and score it.

    Raises
    ------
    InitializationError
        If no starting candidate has finite fitness.
    """
    rng = np.random.default_rng((config.rng_seed, 0))
    span = config.upper_bounds - config.lower_bounds
    positions = config.lower_bounds + span * rng.random(
        (config.population_size, config.dimensions)
    )
    fitnesses = _evaluate(fitness, positions)
    best = int(np.argmax(fitnesses))
    if not np.isfinite(fitnesses[best]):
        raise InitializationError("no starting candidate produced finite fitness")
    return Population(
        positions=positions,
        fitnesses=fitnesses,
        best_position=positions[best].copy(),
        best_fitness=float(fitnesses[best]),
        iteration=0,
    )


def step(pop: Population, fitness: FitnessFn, config: CoaConfig) -> Population:
    """Advance the population one iteration.

    Per crayfish: a temperature above 30 C sends it either to the shaded
    midpoint of the global and current-population bests (summer resort) or
    into a fight that displaces it by a rival's offset from that midpoint
    (competition); at or below 30 C it forages toward the global best,
    either nibbling a shredded copy of it or approaching it directly,
    scaled by the Gaussian intake probability. New positions are clamped
    to the box and rescored; the best-so-far never decreases.
    """
    if pop.iteration >= config.max_iterations:
        raise InvalidInputError("population has already completed the final iteration")
    n, dim = pop.positions.shape
    c3 = config.food_factor
    rng = np.random.default_rng((config.rng_seed, pop.iteration + 1))

    # Fixed draw order, all branches' randomness drawn upfront, so the
    # stream stays identical no matter which behaviors fire.
    temps = rng.random(n) * 15.0 + 20.0
    branch_draw = rng.random(n)
    resort_step = rng.random((n, dim))
    rival_draw = rng.random(n)
    food_draw = rng.random(n)
    shred_cos = rng.random((n, dim))
    shred_sin = rng.random((n, dim))
    approach_draw = rng.random((n, dim))

    local_best = pop.positions[int(np.argmax(pop.fitnesses))]
    shade = 0.5 * (pop.best_position + local_best)
    c2 = decreasing_curve(pop.iteration, config.max_iterations)

    intake = config.intake_coeff / (
        math.sqrt(2.0 * math.pi) * config.temp_sigma
    ) * np.exp(-((temps - config.temp_mu) ** 2) / (2.0 * config.temp_sigma**2))

    # Food size from worseness ranks: the current best tastes like Q = c3 * draw,
    # the worst like c3 * draw * N, so weak crayfish usually shred.
    ranks = _ranks(pop.fitnesses)
    food_size = np.maximum(c3 * food_draw * (n / ranks), 1e-12)

    hot = temps > 30.0
    resort = hot & (branch_draw < 0.5)
    compete = hot & ~resort
    shred = ~hot & (food_size > (c3 + 1.0) / 2.0)
    approach = ~hot & ~shred

    x = pop.positions
    new_positions = np.empty_like(x)

    new_positions[resort] = x[resort] + c2 * resort_step[resort] * (shade - x[resort])

    rivals = np.rint(rival_draw * (n - 1)).astype(np.intp)
    new_positions[compete] = x[compete] - x[rivals[compete]] + shade

    p = intake[:, None]
    shrunk_food = pop.best_position * np.exp(-1.0 / food_size[:, None])
    wiggle = np.cos(2.0 * np.pi * shred_cos) - np.sin(2.0 * np.pi * shred_sin)
    new_positions[shred] = x[shred] + (shrunk_food * p * wiggle)[shred]

    new_positions[approach] = ((x - pop.best_position) * p + p * approach_draw * x)[
        approach
    ]

    np.clip(new_positions, config.lower_bounds, config.upper_bounds, out=new_positions)
    new_fitnesses = _evaluate(fitness, new_positions)

    best_idx = int(np.argmax(new_fitnesses))
    best_position, best_fitness = pop.best_position, pop.best_fitness
    if new_fitnesses[best_idx] > best_fitness:
        best_position = new_positions[best_idx].copy()
        best_fitness = float(new_fitnesses[best_idx])
    return Population(
        positions=new_positions,
        fitnesses=new_fitnesses,
        best_position=best_position,
        best_fitness=best_fitness,
        iteration=pop.iteration + 1,
    )


def optimize(
    fitness: FitnessFn,
    config: CoaConfig,
    per_iteration_hook: Optional[Callable[[np.ndarray], Optional[float]]] = None,
) -> OptimizationResult:
    """Run the full optimization and return the best candidate found.

    ``per_iteration_hook``, when given, is called with a copy of the best
    position after every iteration. It may return a replacement fitness
    for that candidate (used when the hook changes external state the
    fitness depends on, which makes the stored score stale); returning
    ``None`` keeps the score. Without a hook the run costs exactly
    ``population_size * (max_iterations + 1)`` fitness evaluations and the
    history is non-decreasing.
    """
    calls = 0

    def counted(x: np.ndarray) -> float:
        nonlocal calls
        calls += 1
        return float(fitness(x))

    pop = initialize(counted, config)
    history = np.empty(config.max_iterations, dtype=np.float64)
    for i in range(config.max_iterations):
        pop = step(pop, counted, config)
        if per_iteration_hook is not None:
            rescored = per_iteration_hook(pop.best_position.copy())
            if rescored is not None:
                pop = replace(pop, best_fitness=float(rescored))
        history[i] = pop.best_fitness
    return OptimizationResult(
        best_position=pop.best_position.copy(),
        best_fitness=pop.best_fitness,
        fitness_history=history,
        evaluations=calls,
    )
