"""Variational swap-network solver for time-dependent traveling salesman
problems, with an exact brute-force oracle and an N^2-qubit VQE baseline.

The pipeline: encode a per-sample input into qubit rotations, run trainable
mixing+partial-swap layers, read per-qubit Z expectations after every layer,
train those snapshots against a tour-cost-plus-taboo loss, and decode the
best Hamiltonian cycle from the trained snapshots. ``VqkanTspSolver`` and
``VqeTspSolver`` wrap the pipeline in the scikit-learn estimator API; the
``vqkan`` console script runs reproducible experiments from config files.
"""

from .decoder import (
    MAX_ENUM_SITES,
    PathScore,
    decode,
    enumerate_cycles,
    is_valid_cycle,
    score_product,
    score_sum,
)
from .estimators import VqeTspSolver, VqkanTspSolver
from .exceptions import ConfigError, GraphParseError, SizeError
from .graph import (
    TimedGraph,
    hexagon_graph,
    load_graph,
    random_graph,
    save_graph,
    square_graph,
)
from .loss import LossConfig, cost_term, occupancy, taboo, total_loss
from .network import (
    LayerSnapshots,
    VqkanParams,
    encode_input,
    forward,
    num_parameters,
    qubit_pairs,
    start_site_input,
)
from .optimize import TrialRecord, minimize, random_init
from .oracle import OracleResult, path_length, shortest_cycle
from .statevec import MAX_QUBITS, StateVector
from .vqe import VqeModel, prepare_state, qubo_diagonal, vqe_decode, vqe_energy

__version__ = "0.1.0"

__all__ = [
    "MAX_ENUM_SITES",
    "MAX_QUBITS",
    "ConfigError",
    "GraphParseError",
    "LayerSnapshots",
    "LossConfig",
    "OracleResult",
    "PathScore",
    "SizeError",
    "StateVector",
    "TimedGraph",
    "TrialRecord",
    "VqeModel",
    "VqeTspSolver",
    "VqkanParams",
    "VqkanTspSolver",
    "cost_term",
    "decode",
    "encode_input",
    "enumerate_cycles",
    "forward",
    "hexagon_graph",
    "is_valid_cycle",
    "load_graph",
    "minimize",
    "num_parameters",
    "occupancy",
    "path_length",
    "prepare_state",
    "qubit_pairs",
    "qubo_diagonal",
    "random_graph",
    "random_init",
    "save_graph",
    "score_product",
    "score_sum",
    "shortest_cycle",
    "square_graph",
    "start_site_input",
    "taboo",
    "total_loss",
    "vqe_decode",
    "vqe_energy",
]
