"""Training loss: tour-cost term plus taboo (revisit) penalty over snapshots.

Occupancy q = (1 - <Z>)/2 turns a snapshot row into per-site presence in
[0, 1]. The cost term couples consecutive snapshot rows, the taboo term
penalizes a site being occupied at two different rows. Both come in two
modes: a "literal" product form kept for reference and the default form the
solver actually trains with.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import TimedGraph
from .network import LayerSnapshots

COST_MODES = ("weighted", "literal")
TABOO_MODES = ("effective", "literal")
TABOO_SIGNS = ("plus", "minus")


@dataclass
class LossConfig:
    """Mode switches and weights for the total loss.

    ``sample_weights`` of None means uniform 1/num_samples. ``taboo_sign``
    "plus" adds the penalty (the default; "minus" is kept as a mode switch,
    it rewards revisits and is not useful for training).
    """

    cost_mode: str = "weighted"
    taboo_mode: str = "effective"
    taboo_sign: str = "plus"
    taboo_weight: float = 1.0
    sample_weights: Sequence[float] | None = None

    def __post_init__(self):
        if self.cost_mode not in COST_MODES:
            raise ValueError(f"cost_mode must be one of {COST_MODES}, got {self.cost_mode!r}")
        if self.taboo_mode not in TABOO_MODES:
            raise ValueError(f"taboo_mode must be one of {TABOO_MODES}, got {self.taboo_mode!r}")
        if self.taboo_sign not in TABOO_SIGNS:
            raise ValueError(f"taboo_sign must be one of {TABOO_SIGNS}, got {self.taboo_sign!r}")
        self.taboo_weight = float(self.taboo_weight)
        if not self.taboo_weight >= 0.0:
            raise ValueError(f"taboo_weight must be nonnegative, got {self.taboo_weight}")
        if self.sample_weights is not None:
            w = np.asarray(self.sample_weights, dtype=float)
            if w.ndim != 1 or w.size == 0:
                raise ValueError("sample_weights must be a non-empty 1-D sequence")
            if np.any(w < 0.0) or not np.all(np.isfinite(w)):
                raise ValueError("sample_weights must be finite and nonnegative")
            if not w.sum() > 0.0:
                raise ValueError("sample_weights must not all be zero")
            self.sample_weights = w


def occupancy(snapshots: LayerSnapshots) -> np.ndarray:
    """Per-site occupancy (1 - <Z>)/2 for every snapshot row."""
    return (1.0 - snapshots.values) / 2.0


def cost_term(snapshots: LayerSnapshots, graph: TimedGraph, mode: str = "weighted") -> float:
    """Tour-cost part of the loss for one sample graph.

    weighted (default): sum over legs n of q[n] W(n) q[n+1] with W(n) the
    edge-weight matrix at step min(n, T-1), so one-hot snapshots tracing a
    valid cycle score exactly that cycle's length.

    literal: the unweighted reference form, sum over legs of the product over
    all ordered site pairs j != k of <Z_j> at row n times <Z_k> at row n+1.
    """
    if mode not in COST_MODES:
        raise ValueError(f"mode must be one of {COST_MODES}, got {mode!r}")
    n = snapshots.num_qubits
    if graph.num_sites != n:
        raise ValueError(
            f"graph has {graph.num_sites} sites but snapshots cover {n} qubits"
        )
    legs = snapshots.num_layers
    if mode == "weighted":
        q = occupancy(snapshots)
        total = 0.0
        for leg in range(legs):
            w = graph.step_matrix(min(leg, graph.num_steps - 1))
            total += float(q[leg] @ w @ q[leg + 1])
        return total
    z = snapshots.values
    total = 0.0
    for leg in range(legs):
        prod = 1.0
        for j in range(n):
            for k in range(n):
                if k != j:
                    prod *= z[leg, j] * z[leg + 1, k]
        total += prod
    return total


def taboo(snapshots: LayerSnapshots, mode: str = "effective") -> float:
    """Revisit penalty over snapshot rows 0..num_layers-1.

    The closing row (the return to the start site) is exempt, so a one-hot
    valid tour scores zero. effective (default): sum over ordered row pairs
    n != k of the occupancy overlap sum_j q[n][j] q[k][j]. literal: the
    product-form reference, sum over ordered row pairs of
    prod_j (1 - <Z_j> at n)(1 - <Z_j> at k).
    """
    if mode not in TABOO_MODES:
        raise ValueError(f"mode must be one of {TABOO_MODES}, got {mode!r}")
    rows = snapshots.num_layers
    if mode == "effective":
        q = occupancy(snapshots)[:rows]
        overlap = q @ q.T
        return float(overlap.sum() - np.trace(overlap))
    one = 1.0 - snapshots.values[:rows]
    total = 0.0
    for a in range(rows):
        for b in range(rows):
            if b != a:
                total += float(np.prod(one[a] * one[b]))
    return total


def total_loss(
    per_sample_snapshots: Sequence[LayerSnapshots],
    graphs: Sequence[TimedGraph],
    config: LossConfig | None = None,
) -> float:
    """Weighted sum over samples of cost plus signed taboo penalty."""
    if config is None:
        config = LossConfig()
    if len(per_sample_snapshots) != len(graphs):
        raise ValueError(
            f"got {len(per_sample_snapshots)} snapshot sets for {len(graphs)} graphs"
        )
    num_samples = len(graphs)
    if num_samples == 0:
        raise ValueError("need at least one sample")
    if config.sample_weights is None:
        weights = np.full(num_samples, 1.0 / num_samples)
    else:
        weights = np.asarray(config.sample_weights, dtype=float)
        if weights.size != num_samples:
            raise ValueError(
                f"got {weights.size} sample weights for {num_samples} samples"
            )
    sign = 1.0 if config.taboo_sign == "plus" else -1.0
    total = 0.0
    for weight, snaps, graph in zip(weights, per_sample_snapshots, graphs):
        sample = cost_term(snaps, graph, config.cost_mode)
        sample += sign * config.taboo_weight * taboo(snaps, config.taboo_mode)
        total += weight * sample
    return total
