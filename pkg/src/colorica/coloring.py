"""Solution encoding and the penalised colouring cost.

A colouring is any length-n sequence of positive colour indices (vertex v's
colour at index v-1). Cost is `distinct colours used` for conflict-free
colourings and `conflicts * penalty + distinct colours used` otherwise, so
with penalty >= n every conflicting colouring costs more than every proper
one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import Graph


@dataclass(frozen=True)
class CostParams:
    """Penalty weight per conflicting edge; penalty >= n guarantees dominance."""

    penalty: float

    def __post_init__(self) -> None:
        if self.penalty <= 0:
            raise ValueError(f"penalty must be positive, got {self.penalty}")

    @classmethod
    def for_graph(cls, g: Graph) -> "CostParams":
        return cls(penalty=g.n)


def _as_array(g: Graph, col: Sequence[int]) -> np.ndarray:
    arr = np.asarray(col)
    if arr.ndim != 1 or arr.shape[0] != g.n:
        raise ValueError(f"colouring length {arr.shape} does not match n={g.n}")
    return arr


def count_conflicts(g: Graph, col: Sequence[int]) -> int:
    """Number of edges whose endpoints share a colour; 0 iff the colouring is proper."""
    arr = _as_array(g, col)
    if not g.edges:
        return 0
    eu, ev = g.edge_index_arrays
    return int(np.count_nonzero(arr[eu] == arr[ev]))


def distinct_colours(col: Sequence[int]) -> int:
    arr = np.asarray(col)
    if arr.size == 0:
        raise ValueError("empty colouring")
    return int(np.unique(arr).size)


def cost(g: Graph, col: Sequence[int], params: CostParams):
    """Penalised cost: distinct colours if proper, else conflicts * penalty + distinct."""
    conflicts = count_conflicts(g, col)
    used = distinct_colours(col)
    if conflicts == 0:
        return used
    return conflicts * params.penalty + used


def is_valid(g: Graph, col: Sequence[int]) -> bool:
    return count_conflicts(g, col) == 0


def format_colouring(col: Sequence[int]) -> str:
    """Report serialization: space-separated colour indices in vertex order."""
    return " ".join(str(int(c)) for c in col)
