"""Scikit-learn style solvers: fit tunes angles on graph samples, predict
decodes tours.

Both estimators follow the usual conventions: constructor arguments are
stored verbatim, fitted state lives in trailing-underscore attributes, fit
returns self, and predicting before fitting raises NotFittedError. X is a
TimedGraph or a sequence of them (the samples of one joint optimization).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import vqe as _vqe
from .decoder import PathScore, decode
from .graph import TimedGraph
from .loss import LossConfig, total_loss
from .network import (
    VqkanParams,
    forward,
    num_parameters,
    start_site_input,
)
from .optimize import minimize, random_init
from .oracle import path_length, shortest_cycle


def check_graphs(X, expected_sites: int | None = None) -> list[TimedGraph]:
    """Normalize X into a non-empty list of same-size TimedGraph samples."""
    if isinstance(X, TimedGraph):
        graphs = [X]
    else:
        try:
            graphs = list(X)
        except TypeError:
            raise ValueError(
                f"X must be a TimedGraph or a sequence of them, got {type(X).__name__}"
            ) from None
    if not graphs:
        raise ValueError("X must contain at least one graph sample")
    for g in graphs:
        if not isinstance(g, TimedGraph):
            raise ValueError(
                f"every sample must be a TimedGraph, got {type(g).__name__}"
            )
    sites = graphs[0].num_sites
    if any(g.num_sites != sites for g in graphs):
        raise ValueError("all graph samples must have the same number of sites")
    if expected_sites is not None and sites != expected_sites:
        raise ValueError(f"expected graphs with {expected_sites} sites, got {sites}")
    return graphs


class VqkanTspSolver(BaseEstimator):
    """Swap-network variational solver for closed tours on timed graphs.

    fit jointly minimizes the snapshot loss over all samples; predict returns
    the decoded tour for each sample. Snapshots depend only on the trained
    angles and the start-site input, so within one fit every sample decodes
    to the same tour; the per-sample quality difference shows up in lengths.

    Parameters mirror the loss and optimizer defaults: weighted cost,
    effective taboo added with weight 1, evaluation budget 500, init scale
    0.1. ``n_layers=None`` uses one layer per site.
    """

    def __init__(
        self,
        n_layers=None,
        start=0,
        decode_mode="sum",
        cost_mode="weighted",
        taboo_mode="effective",
        taboo_sign="plus",
        taboo_weight=1.0,
        sample_weights=None,
        budget=500,
        seed=0,
        init_scale=0.1,
    ):
        self.n_layers = n_layers
        self.start = start
        self.decode_mode = decode_mode
        self.cost_mode = cost_mode
        self.taboo_mode = taboo_mode
        self.taboo_sign = taboo_sign
        self.taboo_weight = taboo_weight
        self.sample_weights = sample_weights
        self.budget = budget
        self.seed = seed
        self.init_scale = init_scale

    def _loss_config(self) -> LossConfig:
        return LossConfig(
            cost_mode=self.cost_mode,
            taboo_mode=self.taboo_mode,
            taboo_sign=self.taboo_sign,
            taboo_weight=self.taboo_weight,
            sample_weights=self.sample_weights,
        )

    def fit(self, X, y=None):
        """Optimize the ansatz angles on the graph samples in X."""
        graphs = check_graphs(X)
        n = graphs[0].num_sites
        n_layers = n if self.n_layers is None else int(self.n_layers)
        if n_layers < n:
            raise ValueError(
                f"decoding an {n}-site tour needs at least {n} layers, got {n_layers}"
            )
        config = self._loss_config()
        x_input = start_site_input(n, self.start)

        def objective(vector):
            params = VqkanParams.from_flat(vector, n, n_layers)
            snaps = forward(params, x_input)
            return total_loss([snaps] * len(graphs), graphs, config)

        x0 = random_init(num_parameters(n, n_layers), seed=self.seed, scale=self.init_scale)
        best, history = minimize(objective, x0, budget=self.budget, seed=self.seed)

        self.n_sites_ = n
        self.n_layers_ = n_layers
        self.graphs_ = graphs
        self.params_ = VqkanParams.from_flat(best, n, n_layers)
        self.history_ = history
        self.best_loss_ = history[-1].best_so_far
        self.snapshots_ = forward(self.params_, x_input)
        return self

    def decode_tour(self, mode: str | None = None) -> PathScore:
        """Decode the fitted snapshots into a closed tour."""
        check_is_fitted(self)
        return decode(
            self.snapshots_,
            self.n_sites_,
            start=self.start,
            mode=self.decode_mode if mode is None else mode,
        )

    def predict(self, X=None) -> list[tuple[int, ...]]:
        """Decoded tour per sample (the fitted samples when X is None)."""
        check_is_fitted(self)
        graphs = self.graphs_ if X is None else check_graphs(X, self.n_sites_)
        path = self.decode_tour().path
        return [path for _ in graphs]

    def score(self, X=None, y=None) -> float:
        """Negative mean gap to the exact optimum (0 is best)."""
        check_is_fitted(self)
        graphs = self.graphs_ if X is None else check_graphs(X, self.n_sites_)
        path = self.decode_tour().path
        gaps = [
            path_length(g, path) - shortest_cycle(g, self.start).best_length
            for g in graphs
        ]
        return -float(np.mean(gaps))


class VqeTspSolver(BaseEstimator):
    """Position-time VQE baseline wrapped in the same fit/predict surface.

    Joint fitting minimizes the sample-weighted QUBO energy; predict reads
    the argmax tour off the optimized state. Decoded tours may be invalid,
    which ``decoder.is_valid_cycle`` detects; validity is reported downstream
    rather than enforced.
    """

    def __init__(
        self,
        n_layers=1,
        start=0,
        row_penalty=None,
        col_penalty=None,
        sample_weights=None,
        budget=500,
        seed=0,
        init_scale=0.1,
    ):
        self.n_layers = n_layers
        self.start = start
        self.row_penalty = row_penalty
        self.col_penalty = col_penalty
        self.sample_weights = sample_weights
        self.budget = budget
        self.seed = seed
        self.init_scale = init_scale

    def fit(self, X, y=None):
        """Optimize the baseline ansatz on the graph samples in X."""
        graphs = check_graphs(X)
        model = _vqe.VqeModel(
            num_sites=graphs[0].num_sites,
            num_layers=int(self.n_layers),
            start=self.start,
            row_penalty=self.row_penalty,
            col_penalty=self.col_penalty,
        )
        if self.sample_weights is None:
            weights = np.full(len(graphs), 1.0 / len(graphs))
        else:
            weights = np.asarray(self.sample_weights, dtype=float)
            if weights.shape != (len(graphs),):
                raise ValueError(
                    f"got {weights.size} sample weights for {len(graphs)} samples"
                )
        diagonal = np.zeros(1 << model.num_qubits)
        for weight, g in zip(weights, graphs):
            diagonal += weight * _vqe.qubo_diagonal(model, g)

        def objective(vector):
            state = _vqe.prepare_state(model, vector)
            return float(state.probabilities() @ diagonal)

        x0 = random_init(model.num_params(), seed=self.seed, scale=self.init_scale)
        best, history = minimize(objective, x0, budget=self.budget, seed=self.seed)

        self.model_ = model
        self.graphs_ = graphs
        self.params_ = best
        self.history_ = history
        self.best_energy_ = history[-1].best_so_far
        self.state_ = _vqe.prepare_state(model, best)
        return self

    def decode_tour(self) -> tuple[int, ...]:
        check_is_fitted(self)
        return _vqe.vqe_decode(self.model_, self.state_)

    def predict(self, X=None) -> list[tuple[int, ...]]:
        """Decoded (possibly invalid) tour per sample."""
        check_is_fitted(self)
        graphs = self.graphs_ if X is None else check_graphs(X, self.model_.num_sites)
        tour = self.decode_tour()
        return [tour for _ in graphs]
