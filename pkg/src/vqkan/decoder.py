"""Tour readout: enumerate candidate cycles and score them against snapshots.

A candidate path position j is matched against snapshot row j, so the
encoded state votes for position 0 and each later row for the next stop.
Scores use the occupancy-like factor (1 - <Z>); the decoded tour is the
argmax candidate, with exact ties resolved toward the lexicographically
smallest cycle. Only closed tours over all sites are ever candidates, so
decoded paths are valid by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exceptions import SizeError
from .network import LayerSnapshots

MAX_ENUM_SITES = 8


@dataclass(frozen=True)
class PathScore:
    """A candidate cycle with both of its readout scores."""

    path: tuple[int, ...]
    score_sum: float
    score_product: float


def enumerate_cycles(num_sites: int, start: int = 0) -> list[tuple[int, ...]]:
    """All (num_sites-1)! Hamiltonian cycles fixed to begin and end at ``start``.

    Cycles are emitted in lexicographic order of their interior, which makes
    every downstream tie-break deterministic.

    Raises:
        SizeError: if ``num_sites`` exceeds MAX_ENUM_SITES; the factorial
            blowup past that is not worth enumerating.
    """
    if num_sites < 3:
        raise ValueError(f"cycles need at least 3 sites, got {num_sites}")
    if num_sites > MAX_ENUM_SITES:
        raise SizeError(
            f"{num_sites} sites means {num_sites - 1}! candidate cycles; "
            f"enumeration is capped at {MAX_ENUM_SITES} sites"
        )
    if not 0 <= start < num_sites:
        raise ValueError(f"start site {start} out of range for {num_sites} sites")
    rest = [site for site in range(num_sites) if site != start]
    return [(start, *perm, start) for perm in itertools.permutations(rest)]


def is_valid_cycle(path, num_sites: int, start: int = 0) -> bool:
    """True when ``path`` is a closed tour from ``start`` visiting every site once."""
    path = tuple(path)
    if len(path) != num_sites + 1:
        return False
    if path[0] != start or path[-1] != start:
        return False
    interior = path[:-1]
    return sorted(interior) == list(range(num_sites))


def _factors(path, snapshots: LayerSnapshots):
    values = snapshots.values
    if len(path) > values.shape[0]:
        raise ValueError(
            f"path has {len(path)} positions but snapshots only {values.shape[0]} rows"
        )
    for j, site in enumerate(path):
        if not 0 <= site < snapshots.num_qubits:
            raise ValueError(
                f"path site {site} out of range for {snapshots.num_qubits} qubits"
            )
        yield 1.0 - values[j, site]


def score_sum(path, snapshots: LayerSnapshots) -> float:
    """Additive readout score: sum over positions j of (1 - <Z_{p_j}> at row j)."""
    return float(sum(_factors(path, snapshots)))


def score_product(path, snapshots: LayerSnapshots) -> float:
    """Multiplicative readout score: product of the same per-position factors."""
    prod = 1.0
    for factor in _factors(path, snapshots):
        prod *= factor
    return float(prod)


def decode(
    snapshots: LayerSnapshots, num_sites: int, start: int = 0, mode: str = "sum"
) -> PathScore:
    """Best-scoring Hamiltonian cycle under ``mode`` ("sum" or "product").

    Requires num_sites + 1 snapshot rows; extra rows are ignored. Exact score
    ties go to the lexicographically smallest cycle.
    """
    if mode not in ("sum", "product"):
        raise ValueError(f"mode must be 'sum' or 'product', got {mode!r}")
    if num_sites > snapshots.num_qubits:
        raise ValueError(
            f"{num_sites} sites exceed the {snapshots.num_qubits} snapshot columns"
        )
    scorer = score_sum if mode == "sum" else score_product
    best_path = None
    best = float("-inf")
    for cycle in enumerate_cycles(num_sites, start):
        value = scorer(cycle, snapshots)
        if value > best:
            best = value
            best_path = cycle
    return PathScore(
        path=best_path,
        score_sum=score_sum(best_path, snapshots),
        score_product=score_product(best_path, snapshots),
    )
