"""Undirected simple graphs, DIMACS .col I/O and benchmark-family generators.

Vertex ids are 1-based everywhere (DIMACS convention); edges are stored as a
deduplicated, sorted tuple of (u, v) pairs with u < v.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

logger = logging.getLogger(__name__)


class DimacsFormatError(ValueError):
    """Malformed DIMACS colouring instance."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph.

    Any iterable of vertex pairs may be passed as `edges`; construction
    normalizes each pair to (min, max), deduplicates, sorts, and rejects
    self-loops and out-of-range ids.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        canonical = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"vertex id out of range in edge ({u}, {v})")
            canonical.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", tuple(sorted(canonical)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour list per vertex; index 0 is unused padding."""
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """0-based endpoint arrays (u_idx, v_idx), used for fast conflict counts."""
        if not self.edges:
            empty = np.empty(0, dtype=np.intp)
            return empty, empty
        arr = np.asarray(self.edges, dtype=np.intp) - 1
        return arr[:, 0].copy(), arr[:, 1].copy()


@dataclass(frozen=True)
class GraphMeta:
    """Instance bookkeeping: a display name and, when known, the chromatic number."""

    name: str
    known_chromatic: int | None = None


def parse_dimacs(text: str) -> Graph:
    """Parse a DIMACS `.col` instance.

    Accepts `c` comment lines, exactly one `p edge <n> <m>` line, and
    `e <u> <v>` edge lines. Duplicate and reversed edges collapse with a
    warning; a declared edge count that disagrees after dedup is also only
    warned about. Self-loops and out-of-range ids raise DimacsFormatError.
    """
    n = None
    declared_m = None
    seen: set[tuple[int, int]] = set()
    duplicates = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise DimacsFormatError(f"line {lineno}: duplicate p line")
            if len(parts) != 4 or parts[1] != "edge":
                raise DimacsFormatError(f"line {lineno}: malformed p line {raw!r}")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise DimacsFormatError(f"line {lineno}: malformed p line {raw!r}") from exc
            if n < 1:
                raise DimacsFormatError(f"line {lineno}: vertex count must be positive")
        elif parts[0] == "e":
            if n is None:
                raise DimacsFormatError(f"line {lineno}: edge line before p line")
            if len(parts) != 3:
                raise DimacsFormatError(f"line {lineno}: malformed edge line {raw!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise DimacsFormatError(f"line {lineno}: malformed edge line {raw!r}") from exc
            if u == v:
                raise DimacsFormatError(f"line {lineno}: self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsFormatError(f"line {lineno}: vertex id out of range in edge ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                duplicates += 1
            else:
                seen.add(key)
        else:
            raise DimacsFormatError(f"line {lineno}: malformed token {parts[0]!r}")

    if n is None:
        raise DimacsFormatError("missing p line")
    if duplicates:
        logger.warning("collapsed %d duplicate edge line(s)", duplicates)
    if declared_m != len(seen):
        logger.warning("declared m=%d but %d distinct edges parsed", declared_m, len(seen))
    return Graph(n, tuple(seen))


def write_dimacs(g: Graph) -> str:
    """Emit canonical DIMACS text: `p edge n m`, then sorted `e u v` lines (u < v)."""
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def complete_graph(k: int) -> Graph:
    """K_k: every pair of the k vertices adjacent; chromatic number k."""
    if k < 1:
        raise ValueError(f"complete graph needs k >= 1, got {k}")
    edges = tuple((u, v) for u in range(1, k + 1) for v in range(u + 1, k + 1))
    return Graph(k, edges)


def mycielski_graph(level: int) -> Graph:
    """Iterated Mycielskian starting from K2 at level 2.

    Each step maps (n, m) to (2n+1, 3m+n) and raises the chromatic number by
    one, so the level-k graph has chromatic number k while staying
    triangle-free.
    """
    if level < 2:
        raise ValueError(f"mycielski level must be >= 2, got {level}")
    n = 2
    edges: list[tuple[int, int]] = [(1, 2)]
    for _ in range(level - 2):
        apex = 2 * n + 1
        grown = list(edges)
        for u, v in edges:
            grown.append((u, n + v))  # shadow of v keeps v's neighbourhood
            grown.append((v, n + u))
        grown.extend((n + i, apex) for i in range(1, n + 1))
        edges = grown
        n = apex
    return Graph(n, tuple(edges))


def queen_graph(b: int) -> Graph:
    """b x b queen graph: cells adjacent when they share a row, column or diagonal."""
    if b < 1:
        raise ValueError(f"queen graph needs board size >= 1, got {b}")
    cells = [(r, c) for r in range(1, b + 1) for c in range(1, b + 1)]
    vid = lambda r, c: (r - 1) * b + c
    edges = []
    for i, (r1, c1) in enumerate(cells):
        for r2, c2 in cells[i + 1:]:
            if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
                edges.append((vid(r1, c1), vid(r2, c2)))
    return Graph(b * b, tuple(edges))


def max_degree(g: Graph) -> int:
    return max(len(neigh) for neigh in g.adjacency[1:])


GENERATORS = {
    "complete": complete_graph,
    "mycielski": mycielski_graph,
    "queen": queen_graph,
}

# Chromatic numbers known per generator family: complete and mycielski by
# construction, queen boards only where the benchmark suite records them.
_QUEEN_CHROMATIC = {5: 5, 7: 7}


def family_chromatic(family: str, param: int) -> int | None:
    if family == "complete":
        return param
    if family == "mycielski":
        return param
    if family == "queen":
        return _QUEEN_CHROMATIC.get(param)
    raise ValueError(f"unknown generator family {family!r}")
