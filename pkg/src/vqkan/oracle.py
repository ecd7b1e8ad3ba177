"""Exact brute-force reference: true path lengths and the shortest cycle.

Every derived tour in the package is judged against this module. Leg j of a
tour departs at time step min(j, T - 1), so graphs with a single step behave
as static and longer schedules clamp to their last step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decoder import enumerate_cycles, is_valid_cycle
from .graph import TimedGraph


@dataclass(frozen=True)
class OracleResult:
    """Outcome of exhaustive search: the optimum, its length, and how many
    candidates were examined."""

    best_path: tuple[int, ...]
    best_length: float
    num_candidates: int


def path_length(graph: TimedGraph, path) -> float:
    """Exact length of a closed tour, legs timed as min(leg, T-1).

    Raises:
        ValueError: if ``path`` is not a valid cycle over all sites of
            ``graph`` starting and ending at its first entry.
    """
    path = tuple(int(p) for p in path)
    if not path or not is_valid_cycle(path, graph.num_sites, start=path[0]):
        raise ValueError(
            f"{path} is not a closed tour over {graph.num_sites} sites"
        )
    last_step = graph.num_steps - 1
    return float(
        sum(
            graph.weight(path[j], path[j + 1], min(j, last_step))
            for j in range(len(path) - 1)
        )
    )


def shortest_cycle(graph: TimedGraph, start: int = 0) -> OracleResult:
    """Exhaustive minimum over all Hamiltonian cycles from ``start``.

    Length ties resolve to the lexicographically smallest cycle. Inherits the
    enumeration size cap, so graphs beyond 8 sites raise SizeError.
    """
    cycles = enumerate_cycles(graph.num_sites, start)
    best_path = None
    best = float("inf")
    for cycle in cycles:
        length = path_length(graph, cycle)
        if length < best:
            best = length
            best_path = cycle
    return OracleResult(best_path=best_path, best_length=best, num_candidates=len(cycles))
