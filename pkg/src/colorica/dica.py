"""Imperialist-style population search over colourings.

A population of candidate colourings is split into empires, each holding one
imperialist (its best member) and a share of colonies.  Every decade each
colony is pulled toward its imperialist by two-point segment copy, may be
perturbed by a two-cell swap, and can displace the imperialist if it gets
cheaper.  Empires that look alike merge, and the weakest empire loses its
worst colony to a roulette-picked rival until one empire remains or the
decade budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .coloring import CostParams, cost, count_conflicts, distinct_colours
from .graphs import Graph, max_degree

TERMINATED_DECADES = "decades_exhausted"
TERMINATED_SINGLE_EMPIRE = "single_empire"
TERMINATED_EARLY_STOP = "early_stop"

# inspection hook: (stage, decade, empires) -> None
InspectFn = Callable[[str, int, list["Empire"]], None]


@dataclass(frozen=True)
class DicaParams:
    population_size: int = 300
    imperialist_fraction: float = 0.10
    decades: int = 100
    revolution_rate: float = 0.25
    uniting_threshold: float = 0.02
    damp_ratio: float = 0.90
    xi: float = 0.1
    k_max: int | None = None
    penalty: float | None = None
    early_stop_at_chromatic: bool = False
    known_chromatic: int | None = None
    rng_seed: int = 1

    def validate(self) -> None:
        if self.population_size < 2:
            raise ValueError(f"population_size must be >= 2, got {self.population_size}")
        if not 0.0 < self.imperialist_fraction < 1.0:
            raise ValueError(
                f"imperialist_fraction must be in (0, 1), got {self.imperialist_fraction}"
            )
        if self.decades < 1:
            raise ValueError(f"decades must be >= 1, got {self.decades}")
        if not 0.0 <= self.revolution_rate <= 1.0:
            raise ValueError(f"revolution_rate must be in [0, 1], got {self.revolution_rate}")
        if self.uniting_threshold < 0.0:
            raise ValueError(f"uniting_threshold must be >= 0, got {self.uniting_threshold}")
        if not 0.0 <= self.damp_ratio <= 1.0:
            raise ValueError(f"damp_ratio must be in [0, 1], got {self.damp_ratio}")
        if self.xi < 0.0:
            raise ValueError(f"xi must be >= 0, got {self.xi}")
        if self.k_max is not None and self.k_max < 1:
            raise ValueError(f"k_max must be >= 1, got {self.k_max}")
        if self.penalty is not None and self.penalty <= 0.0:
            raise ValueError(f"penalty must be > 0, got {self.penalty}")
        if self.known_chromatic is not None and self.known_chromatic < 1:
            raise ValueError(f"known_chromatic must be >= 1, got {self.known_chromatic}")


@dataclass
class Empire:
    imperialist: np.ndarray
    imperialist_cost: float
    colonies: list[np.ndarray] = field(default_factory=list)
    colony_costs: list[float] = field(default_factory=list)

    def size(self) -> int:
        return 1 + len(self.colonies)


@dataclass(frozen=True)
class RunResult:
    best: tuple[int, ...]
    best_cost: float
    conflicts: int
    colours_used: int
    decades_executed: int
    cost_history: tuple[float, ...]
    terminated_by: str


def resolve_k_max(g: Graph, k_max: int | None) -> int:
    if k_max is None:
        return max_degree(g) + 1
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    return k_max


def init_population(g: Graph, params, rng: np.random.Generator) -> list[np.ndarray]:
    """Random permuted countries; params needs population_size and k_max.

    Each country is an independent shuffle of the balanced palette
    (1, 2, ..., k_max, 1, 2, ... truncated to n cells), so every colour value
    starts equally represented.  Swap-style perturbation can then reach any
    arrangement of that palette, which a cell-wise independent draw does not
    guarantee.
    """
    size = params.population_size
    if size < 1:
        raise ValueError(f"population_size must be >= 1, got {size}")
    k_max = resolve_k_max(g, params.k_max)
    base = np.arange(g.n, dtype=np.int64) % k_max + 1
    return [base[rng.permutation(g.n)] for _ in range(size)]


def _largest_remainder(powers: Sequence[float], total: int) -> list[int]:
    """Apportion `total` items by the given shares: floors, then largest fractions."""
    quotas = [p * total for p in powers]
    counts = [max(0, math.floor(q)) for q in quotas]
    leftover = total - sum(counts)
    by_fraction = sorted(
        range(len(powers)), key=lambda i: (-(quotas[i] - math.floor(quotas[i])), i)
    )
    for i in by_fraction[: max(0, leftover)]:
        counts[i] += 1
    drift = total - sum(counts)
    if drift:
        # float noise in the shares; settle the difference on the largest share
        j = max(range(len(powers)), key=lambda i: (powers[i], -i))
        counts[j] = max(0, counts[j] + drift)
    return counts


def form_empires(
    countries: Sequence[np.ndarray],
    costs: Sequence[float],
    n_imperialists: int,
    rng: np.random.Generator,
) -> list[Empire]:
    """Take the n cheapest countries as imperialists and share out the rest.

    Colony counts follow each imperialist's normalized power (cheaper is more
    powerful); the actual colonies are dealt out by a random permutation.
    """
    if len(countries) != len(costs):
        raise ValueError("countries and costs length mismatch")
    if not 1 <= n_imperialists < len(countries):
        raise ValueError(
            f"need 1 <= n_imperialists < population, got {n_imperialists} of {len(countries)}"
        )
    order = sorted(range(len(countries)), key=lambda i: (costs[i], i))
    imp_idx = order[:n_imperialists]
    col_idx = order[n_imperialists:]

    max_imp_cost = max(costs[i] for i in imp_idx)
    shifted = [costs[i] - max_imp_cost for i in imp_idx]
    total = sum(shifted)
    if total == 0:
        powers = [1.0 / n_imperialists] * n_imperialists
    else:
        powers = [s / total for s in shifted]

    counts = _largest_remainder(powers, len(col_idx))
    perm = rng.permutation(len(col_idx))
    empires: list[Empire] = []
    start = 0
    for e in range(n_imperialists):
        picked = [col_idx[int(p)] for p in perm[start : start + counts[e]]]
        start += counts[e]
        empires.append(
            Empire(
                imperialist=countries[imp_idx[e]],
                imperialist_cost=float(costs[imp_idx[e]]),
                colonies=[countries[i] for i in picked],
                colony_costs=[float(costs[i]) for i in picked],
            )
        )
    return empires


def assimilate_at(
    imperialist: Sequence[int] | np.ndarray,
    colony: Sequence[int] | np.ndarray,
    c1: int,
    c2: int,
) -> np.ndarray:
    """Copy the imperialist's cells c1..c2 (1-based, inclusive) onto the colony."""
    imp = np.asarray(imperialist)
    child = np.array(colony)
    if imp.shape != child.shape:
        raise ValueError("imperialist and colony lengths differ")
    n = child.shape[0]
    if not 1 <= c1 <= c2 <= n:
        raise ValueError(f"need 1 <= c1 <= c2 <= {n}, got c1={c1} c2={c2}")
    child[c1 - 1 : c2] = imp[c1 - 1 : c2]
    return child


def assimilate(
    imperialist: np.ndarray, colony: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    n = len(colony)
    pts = rng.integers(1, n + 1, size=2)
    c1, c2 = (int(pts[0]), int(pts[1]))
    if c1 > c2:
        c1, c2 = c2, c1
    return assimilate_at(imperialist, colony, c1, c2)


def revolve_at(colony: Sequence[int] | np.ndarray, p1: int, p2: int) -> np.ndarray:
    """Swap two distinct cells (1-based positions)."""
    child = np.array(colony)
    n = child.shape[0]
    if not (1 <= p1 <= n and 1 <= p2 <= n):
        raise ValueError(f"positions must be in 1..{n}, got {p1}, {p2}")
    if p1 == p2:
        raise ValueError("positions must differ")
    child[p1 - 1], child[p2 - 1] = child[p2 - 1], child[p1 - 1]
    return child


def revolve(colony: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n = len(colony)
    if n < 2:
        return np.array(colony)
    i = int(rng.integers(n))
    j = int(rng.integers(n - 1))
    if j >= i:
        j += 1
    return revolve_at(colony, i + 1, j + 1)


def exchange_if_better(empire: Empire) -> bool:
    """Swap the imperialist with its cheapest colony when that colony is cheaper."""
    if not empire.colonies:
        return False
    best = min(range(len(empire.colonies)), key=lambda i: empire.colony_costs[i])
    if empire.colony_costs[best] < empire.imperialist_cost:
        empire.imperialist, empire.colonies[best] = (
            empire.colonies[best],
            empire.imperialist,
        )
        empire.imperialist_cost, empire.colony_costs[best] = (
            empire.colony_costs[best],
            empire.imperialist_cost,
        )
        return True
    return False


def empire_total_cost(empire: Empire, xi: float) -> float:
    mean = (
        sum(empire.colony_costs) / len(empire.colony_costs)
        if empire.colony_costs
        else 0.0
    )
    return empire.imperialist_cost + xi * mean


def _argmax_last(values: Sequence[float]) -> int:
    """Index of the maximum; ties go to the highest index."""
    return max(range(len(values)), key=lambda i: (values[i], i))


def _roulette(weights: Sequence[float], rng: np.random.Generator) -> int:
    total = float(sum(weights))
    if total <= 0.0:
        return int(rng.integers(len(weights)))
    r = rng.random() * total
    acc = 0.0
    for i, w in enumerate(weights):
        acc += w
        if r < acc:
            return i
    return len(weights) - 1


def normalized_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Fraction of positions where the two colourings disagree."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("colouring lengths differ")
    return int(np.count_nonzero(a != b)) / a.shape[0]


def unite_similar_empires(
    empires: list[Empire], threshold: float, xi: float
) -> list[Empire]:
    """Merge empire pairs whose imperialists differ on less than `threshold` of cells.

    The lower-total-cost empire absorbs the other (its imperialist joins as a
    colony).  Pairs are handled nearest first; totals are from before any merge.
    """
    if len(empires) < 2:
        return empires
    totals = [empire_total_cost(e, xi) for e in empires]
    pairs: list[tuple[float, int, int]] = []
    for i in range(len(empires)):
        for j in range(i + 1, len(empires)):
            d = normalized_distance(empires[i].imperialist, empires[j].imperialist)
            if d < threshold:
                pairs.append((d, i, j))
    pairs.sort()
    alive = [True] * len(empires)
    for _, i, j in pairs:
        if not (alive[i] and alive[j]):
            continue
        win, lose = (i, j) if (totals[i], i) <= (totals[j], j) else (j, i)
        empires[win].colonies.append(empires[lose].imperialist)
        empires[win].colony_costs.append(empires[lose].imperialist_cost)
        empires[win].colonies.extend(empires[lose].colonies)
        empires[win].colony_costs.extend(empires[lose].colony_costs)
        alive[lose] = False
    return [e for k, e in enumerate(empires) if alive[k]]


def imperialistic_competition(
    empires: list[Empire], xi: float, rng: np.random.Generator
) -> list[Empire]:
    """The weakest empire loses its worst colony to a roulette-picked rival.

    Rivals are weighted by how far their total cost sits below the weakest
    empire's.  A colony-less weakest empire hands over its imperialist and is
    dissolved.  Ties for weakest empire and worst colony go to the highest index.
    """
    if len(empires) < 2:
        return empires
    totals = [empire_total_cost(e, xi) for e in empires]
    weakest = _argmax_last(totals)
    rivals = [i for i in range(len(empires)) if i != weakest]
    weights = [totals[weakest] - totals[i] for i in rivals]
    winner = rivals[_roulette(weights, rng)]
    loser = empires[weakest]
    if loser.colonies:
        worst = _argmax_last(loser.colony_costs)
        empires[winner].colonies.append(loser.colonies.pop(worst))
        empires[winner].colony_costs.append(loser.colony_costs.pop(worst))
        return empires
    empires[winner].colonies.append(loser.imperialist)
    empires[winner].colony_costs.append(loser.imperialist_cost)
    return [e for i, e in enumerate(empires) if i != weakest]


def run_dica(g: Graph, params: DicaParams, _inspect: InspectFn | None = None) -> RunResult:
    """Full search loop; deterministic for a given (graph, params) pair."""
    params.validate()
    rng = np.random.default_rng(params.rng_seed)
    k_max = resolve_k_max(g, params.k_max)
    cost_params = CostParams(params.penalty if params.penalty is not None else float(g.n))

    population = init_population(g, params, rng)
    costs = [cost(g, c, cost_params) for c in population]

    n_imp = max(1, round(params.imperialist_fraction * params.population_size))
    if n_imp >= params.population_size:
        raise ValueError(
            f"{n_imp} imperialists leave no colonies in a population of "
            f"{params.population_size}"
        )
    empires = form_empires(population, costs, n_imp, rng)

    best_i = min(range(len(costs)), key=lambda i: costs[i])
    best = population[best_i]
    best_cost = costs[best_i]
    best_conflicts = count_conflicts(g, best)
    best_used = distinct_colours(best)

    history: list[float] = []
    revolution_rate = params.revolution_rate
    terminated_by = TERMINATED_DECADES
    executed = 0

    for decade in range(params.decades):
        for empire in empires:
            for ci in range(len(empire.colonies)):
                child = assimilate(empire.imperialist, empire.colonies[ci], rng)
                if rng.random() < revolution_rate:
                    child = revolve(child, rng)
                child_cost = cost(g, child, cost_params)
                empire.colonies[ci] = child
                empire.colony_costs[ci] = child_cost
                if child_cost < best_cost:
                    best = child
                    best_cost = child_cost
                    best_conflicts = count_conflicts(g, child)
                    best_used = distinct_colours(child)
            exchange_if_better(empire)
        if _inspect is not None:
            _inspect("post_exchange", decade, empires)
        empires = unite_similar_empires(empires, params.uniting_threshold, params.xi)
        empires = imperialistic_competition(empires, params.xi, rng)
        revolution_rate *= params.damp_ratio
        history.append(best_cost)
        executed = decade + 1
        if _inspect is not None:
            _inspect("end", decade, empires)
        if (
            params.early_stop_at_chromatic
            and params.known_chromatic is not None
            and best_conflicts == 0
            and best_used <= params.known_chromatic
        ):
            terminated_by = TERMINATED_EARLY_STOP
            break
        if len(empires) == 1:
            terminated_by = TERMINATED_SINGLE_EMPIRE
            break

    return RunResult(
        best=tuple(int(x) for x in best),
        best_cost=best_cost,
        conflicts=best_conflicts,
        colours_used=best_used,
        decades_executed=executed,
        cost_history=tuple(history),
        terminated_by=terminated_by,
    )
