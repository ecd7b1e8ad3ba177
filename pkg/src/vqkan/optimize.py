"""Derivative-free minimization with an exact evaluation budget.

The search is Nelder-Mead with deterministic seeded restarts: whenever the
inner simplex converges before the budget is spent, it restarts from the
incumbent plus a seeded uniform perturbation. Every objective evaluation is
recorded, the budget is a hard cap enforced by cutting the inner search off
mid-iteration, and the whole trajectory is a pure function of (x0, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize as _sciopt


@dataclass(frozen=True)
class TrialRecord:
    """One objective evaluation: its index, value, and the running minimum."""

    trial_index: int
    loss: float
    best_so_far: float


class _BudgetExhausted(Exception):
    pass


def random_init(num_params: int, seed: int = 0, scale: float = 0.1) -> np.ndarray:
    """Seeded uniform draw from [-scale, scale] for each parameter."""
    if num_params < 1:
        raise ValueError(f"need at least 1 parameter, got {num_params}")
    if not scale > 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    rng = np.random.default_rng(seed)
    return rng.uniform(-scale, scale, size=num_params)


def minimize(
    objective,
    x0,
    budget: int,
    seed: int = 0,
    restart_scale: float = 0.5,
    simplex_step: float = 0.3,
):
    """Minimize ``objective`` using at most ``budget`` evaluations.

    Args:
        objective: callable mapping a parameter vector to a float.
        x0: starting point.
        budget: hard cap on objective evaluations, at least 1.
        seed: drives the restart perturbations; fixed (x0, seed) replays the
            identical trajectory.
        restart_scale: half-width of the uniform restart perturbation.
        simplex_step: per-coordinate offset used to build initial simplexes.

    Returns:
        (best_x, history): the best parameters seen and one TrialRecord per
        evaluation, in order; ``history[-1].best_so_far`` is the final loss.
    """
    if budget < 1:
        raise ValueError(f"budget must be at least 1, got {budget}")
    x0 = np.asarray(x0, dtype=float).ravel()
    if x0.size == 0:
        raise ValueError("x0 must be non-empty")

    history: list[TrialRecord] = []
    best_x = x0.copy()
    best_f = float("inf")

    def recorded(x):
        nonlocal best_x, best_f
        if len(history) >= budget:
            raise _BudgetExhausted
        value = float(objective(np.asarray(x, dtype=float)))
        if value < best_f:
            best_f = value
            best_x = np.array(x, dtype=float)
        history.append(TrialRecord(len(history), value, best_f))
        return value

    rng = np.random.default_rng(seed)
    start = x0
    try:
        while len(history) < budget:
            simplex = np.repeat(start[None, :], start.size + 1, axis=0)
            for i in range(start.size):
                simplex[i + 1, i] += simplex_step
            _sciopt.minimize(
                recorded,
                start,
                method="Nelder-Mead",
                options={
                    "maxfev": budget - len(history),
                    "initial_simplex": simplex,
                    "xatol": 1e-8,
                    "fatol": 1e-10,
                },
            )
            # converged with budget left: restart near the incumbent
            start = best_x + rng.uniform(-restart_scale, restart_scale, size=best_x.size)
    except _BudgetExhausted:
        pass
    return best_x.copy(), history
