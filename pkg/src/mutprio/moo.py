"""NSGA-II over test permutations, maximizing (APMK, APMD).

Permutation operators are partially matched crossover and swap mutation;
parents are picked by binary tournament on (front rank, crowding distance)
and survivors by elitist (mu + lambda) selection. MOK and MOD then pick a
single ordering from the final front.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .metrics import MutationFitness
from .model import KillMatrix, Ordering, as_sequence
from .rng import SplitMix64

log = logging.getLogger(__name__)


class Fitness(NamedTuple):
    apmk: float
    apmd: float


@dataclass(frozen=True)
class MooConfig:
    population_size: int = 100
    crossover_rate: float = 0.9
    mutation_rate: float = 0.2
    max_evaluations: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 4 or self.population_size % 2:
            raise ValueError("population size must be even and at least 4")
        for name in ("crossover_rate", "mutation_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.max_evaluations < self.population_size:
            raise ValueError("evaluation budget must cover the initial population")


@dataclass
class ParetoFront:
    members: list[tuple[Ordering, Fitness]]
    evaluations: int = 0
    generations: int = 0
    best_history: list[Fitness] = field(default_factory=list, repr=False)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True when ``a`` is at least as good as ``b`` everywhere and better somewhere."""
    return all(x >= y for x, y in zip(a, b)) and any(x > y for x, y in zip(a, b))


def fast_nondominated_sort(pop: Sequence[Sequence[float]]) -> list[list[int]]:
    """Split population indices into successive non-dominated fronts."""
    if not pop:
        raise ValueError("empty population")
    size = len(pop)
    dominated_by: list[list[int]] = [[] for _ in range(size)]
    counts = [0] * size
    fronts: list[list[int]] = [[]]
    for p in range(size):
        for q in range(p + 1, size):
            if dominates(pop[p], pop[q]):
                dominated_by[p].append(q)
                counts[q] += 1
            elif dominates(pop[q], pop[p]):
                dominated_by[q].append(p)
                counts[p] += 1
    fronts[0] = [p for p in range(size) if counts[p] == 0]
    while fronts[-1]:
        nxt = []
        for p in fronts[-1]:
            for q in dominated_by[p]:
                counts[q] -= 1
                if counts[q] == 0:
                    nxt.append(q)
        fronts.append(sorted(nxt))
    fronts.pop()
    return fronts


def crowding_distance(front: Sequence[Sequence[float]]) -> list[float]:
    size = len(front)
    if size == 0:
        raise ValueError("empty front")
    dist = [0.0] * size
    if size <= 2:
        return [float("inf")] * size
    for k in range(len(front[0])):
        order = sorted(range(size), key=lambda i: front[i][k])
        lo, hi = front[order[0]][k], front[order[-1]][k]
        dist[order[0]] = dist[order[-1]] = float("inf")
        span = hi - lo
        if span == 0:
            continue
        for pos in range(1, size - 1):
            i = order[pos]
            dist[i] += (front[order[pos + 1]][k] - front[order[pos - 1]][k]) / span
    return dist


def pmx_crossover(p1, p2, cut1: int, cut2: int) -> tuple[int, ...]:
    """Partially matched crossover keeping ``p1[cut1:cut2]`` in place."""
    a, b = as_sequence(p1), as_sequence(p2)
    n = len(a)
    if len(b) != n:
        raise ValueError("parents differ in length")
    if not 0 <= cut1 < cut2 <= n:
        raise ValueError(f"invalid cut points ({cut1}, {cut2}) for length {n}")
    child = list(a)
    segment = {a[i]: i for i in range(cut1, cut2)}
    for i in list(range(cut1)) + list(range(cut2, n)):
        gene = b[i]
        while gene in segment:
            gene = b[segment[gene]]
        child[i] = gene
    return tuple(child)


def swap_mutation(p, rng: SplitMix64) -> tuple[int, ...]:
    seq = list(as_sequence(p))
    n = len(seq)
    if n < 2:
        raise ValueError("swap mutation needs at least two genes")
    i = rng.below(n)
    j = rng.below(n - 1)
    if j >= i:
        j += 1
    seq[i], seq[j] = seq[j], seq[i]
    return tuple(seq)


def _rank_and_crowd(fits: Sequence[Fitness]) -> tuple[list[int], list[float]]:
    rank = [0] * len(fits)
    crowd = [0.0] * len(fits)
    for r, front in enumerate(fast_nondominated_sort(fits)):
        for i, d in zip(front, crowding_distance([fits[i] for i in front])):
            rank[i] = r
            crowd[i] = d
    return rank, crowd


def _tournament(rank, crowd, rng: SplitMix64) -> int:
    size = len(rank)
    i, j = rng.below(size), rng.below(size)
    if rank[i] != rank[j]:
        return i if rank[i] < rank[j] else j
    if crowd[i] != crowd[j]:
        return i if crowd[i] > crowd[j] else j
    return i if rng.below(2) == 0 else j


def _environmental_selection(fits: Sequence[Fitness], size: int) -> list[int]:
    chosen: list[int] = []
    for front in fast_nondominated_sort(fits):
        if len(chosen) + len(front) <= size:
            chosen.extend(front)
            continue
        dist = crowding_distance([fits[i] for i in front])
        ranked = sorted(range(len(front)), key=lambda k: (-dist[k], front[k]))
        chosen.extend(front[k] for k in ranked[: size - len(chosen)])
        break
    return chosen


def nsga2(kill: KillMatrix, config: MooConfig = MooConfig()) -> ParetoFront:
    """Evolve orderings of ``kill``'s tests; return the final rank-0 front.

    A generation is run only if its offspring fit in the remaining budget.
    """
    rng = SplitMix64(config.seed)
    fitness = MutationFitness(kill)
    n = kill.n_tests
    size = config.population_size

    pop = [tuple(rng.permutation(n)) for _ in range(size)]
    fits = [Fitness(*fitness(p)) for p in pop]
    history = [_best(fits)]
    generations = 0
    while fitness.evaluations + size <= config.max_evaluations:
        rank, crowd = _rank_and_crowd(fits)
        offspring = []
        while len(offspring) < size:
            a = pop[_tournament(rank, crowd, rng)]
            b = pop[_tournament(rank, crowd, rng)]
            if n >= 2 and rng.random() < config.crossover_rate:
                lo, hi = sorted((rng.below(n), rng.below(n)))
                children = [pmx_crossover(a, b, lo, hi + 1), pmx_crossover(b, a, lo, hi + 1)]
            else:
                children = [a, b]
            for child in children:
                if n >= 2 and rng.random() < config.mutation_rate:
                    child = swap_mutation(child, rng)
                offspring.append(child)
        off_fits = [Fitness(*fitness(c)) for c in offspring]
        merged, merged_fits = pop + offspring, fits + off_fits
        keep = _environmental_selection(merged_fits, size)
        pop = [merged[i] for i in keep]
        fits = [merged_fits[i] for i in keep]
        generations += 1
        history.append(_best(fits))

    members: list[tuple[Ordering, Fitness]] = []
    seen = set()
    provenance = {"technique": "NSGA-II", "seed": config.seed}
    for i in fast_nondominated_sort(fits)[0]:
        if pop[i] in seen:
            continue
        seen.add(pop[i])
        members.append((Ordering(pop[i], provenance), fits[i]))
    log.debug("nsga2: %d generations, %d evaluations, front of %d",
              generations, fitness.evaluations, len(members))
    return ParetoFront(members, fitness.evaluations, generations, history)


def _best(fits: Sequence[Fitness]) -> Fitness:
    return Fitness(max(f.apmk for f in fits), max(f.apmd for f in fits))


def _select(front: ParetoFront, primary: int, rng: SplitMix64 | None) -> Ordering:
    if not front.members:
        raise ValueError("empty Pareto front")
    secondary = 1 - primary
    key = max((f[primary], f[secondary]) for _, f in front.members)
    tied = [o for o, f in front.members if (f[primary], f[secondary]) == key]
    if len(tied) == 1 or rng is None:
        return tied[0]
    return tied[rng.below(len(tied))]


def select_mok(front: ParetoFront, rng: SplitMix64 | None = None) -> Ordering:
    """Front member with the highest APMK (then APMD, then a random draw)."""
    return _select(front, 0, rng)


def select_mod(front: ParetoFront, rng: SplitMix64 | None = None) -> Ordering:
    """Front member with the highest APMD (then APMK, then a random draw)."""
    return _select(front, 1, rng)
