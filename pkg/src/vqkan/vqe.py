"""Position-time VQE baseline on N^2 qubits.

Qubit t*N + j carries the bit "the salesman is at site j at tour position t".
The energy is the diagonal QUBO: tour legs between consecutive positions
(wrapping from the last position back to the first, which is the return leg)
plus quadratic penalties pushing every position row and every site column to
sum to one. The ansatz starts from the uniform superposition and applies the
same mixing+pswap layer structure as the main network, with pairs drawn over
all N^2 qubits. Dense simulation caps this at 4 sites (16 qubits).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import SizeError
from .graph import TimedGraph
from .network import VqkanParams, apply_mix_swap_layer, num_parameters
from .statevec import MAX_QUBITS, StateVector


@dataclass
class VqeModel:
    """Baseline dimensions and penalty weights.

    ``row_penalty`` / ``col_penalty`` of None resolve per graph to
    2 * num_sites * max_weight, a standard sufficient scale to make
    constraint violations dearer than any tour improvement.
    """

    num_sites: int
    num_layers: int = 1
    start: int = 0
    row_penalty: float | None = None
    col_penalty: float | None = None

    def __post_init__(self):
        if self.num_sites < 2:
            raise ValueError(f"need at least 2 sites, got {self.num_sites}")
        if self.num_sites**2 > MAX_QUBITS:
            raise SizeError(
                f"{self.num_sites} sites needs {self.num_sites**2} qubits; dense "
                f"simulation is capped at {MAX_QUBITS}"
            )
        if self.num_layers < 1:
            raise ValueError(f"need at least 1 layer, got {self.num_layers}")
        if not 0 <= self.start < self.num_sites:
            raise ValueError(
                f"start site {self.start} out of range for {self.num_sites} sites"
            )
        for name in ("row_penalty", "col_penalty"):
            value = getattr(self, name)
            if value is not None and not value > 0.0:
                raise ValueError(f"{name} must be positive, got {value}")

    @property
    def num_qubits(self) -> int:
        return self.num_sites**2

    def num_params(self) -> int:
        return num_parameters(self.num_qubits, self.num_layers)

    def resolved_penalties(self, graph: TimedGraph) -> tuple[float, float]:
        default = 2.0 * self.num_sites * graph.max_weight()
        row = default if self.row_penalty is None else self.row_penalty
        col = default if self.col_penalty is None else self.col_penalty
        return row, col


def _as_params(model: VqeModel, params) -> VqkanParams:
    if isinstance(params, VqkanParams):
        if params.num_qubits != model.num_qubits or params.num_layers != model.num_layers:
            raise ValueError(
                f"params shaped for {params.num_qubits} qubits x {params.num_layers} "
                f"layers, model wants {model.num_qubits} x {model.num_layers}"
            )
        return params
    return VqkanParams.from_flat(params, model.num_qubits, model.num_layers)


def prepare_state(model: VqeModel, params) -> StateVector:
    """Ansatz state: uniform superposition, then the mixing+pswap layers."""
    params = _as_params(model, params)
    state = StateVector.zero(model.num_qubits)
    for q in range(model.num_qubits):
        state.apply_ry(q, np.pi / 2.0)
    for n in range(model.num_layers):
        apply_mix_swap_layer(state, params.mix_angles[n], params.swap_angles[n])
    return state


def qubo_diagonal(model: VqeModel, graph: TimedGraph) -> np.ndarray:
    """Energy of every computational basis state, as a 2^(N^2) vector.

    For basis bits b[t][j] (qubit t*N + j):
    sum_t sum_{j!=k} w(j, k, min(t, T-1)) b[t][j] b[(t+1) mod N][k]
    + row_penalty * sum_t (sum_j b[t][j] - 1)^2
    + col_penalty * sum_j (sum_t b[t][j] - 1)^2.
    """
    if graph.num_sites != model.num_sites:
        raise ValueError(
            f"graph has {graph.num_sites} sites, model expects {model.num_sites}"
        )
    n = model.num_sites
    num_qubits = model.num_qubits
    dim = 1 << num_qubits
    indices = np.arange(dim, dtype=np.int64)
    bits = ((indices[:, None] >> np.arange(num_qubits)) & 1).astype(float)
    b = bits.reshape(dim, n, n)

    row_penalty, col_penalty = model.resolved_penalties(graph)
    energy = np.zeros(dim)
    last_step = graph.num_steps - 1
    for t in range(n):
        w = graph.step_matrix(min(t, last_step))
        energy += ((b[:, t, :] @ w) * b[:, (t + 1) % n, :]).sum(axis=1)
    energy += row_penalty * ((b.sum(axis=2) - 1.0) ** 2).sum(axis=1)
    energy += col_penalty * ((b.sum(axis=1) - 1.0) ** 2).sum(axis=1)
    return energy


def vqe_energy(model: VqeModel, graph: TimedGraph, params) -> float:
    """Exact ansatz-state expectation of the QUBO energy."""
    state = prepare_state(model, params)
    return float(state.probabilities() @ qubo_diagonal(model, graph))


def vqe_decode(model: VqeModel, state: StateVector) -> tuple[int, ...]:
    """Read a tour off per-qubit occupancies: argmax site per position, then
    the fixed start appended as the closing stop.

    The result is reported as-is; it need not be a valid tour. Check it with
    ``decoder.is_valid_cycle``.
    """
    if state.num_qubits != model.num_qubits:
        raise ValueError(
            f"state has {state.num_qubits} qubits, model expects {model.num_qubits}"
        )
    n = model.num_sites
    occ = np.array(
        [(1.0 - state.expect_z(q)) / 2.0 for q in range(model.num_qubits)]
    ).reshape(n, n)
    positions = [int(np.argmax(occ[t])) for t in range(n)]
    return tuple(positions + [model.start])
