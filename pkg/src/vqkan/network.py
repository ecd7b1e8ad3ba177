"""Layered swap-network ansatz: input encoding, forward pass, snapshots.

The circuit encodes an input vector into per-qubit y rotations, then applies
``num_layers`` identical-shaped layers. Each layer is a trainable per-qubit
mixing rotation followed by trainable partial swaps over every qubit pair in
lexicographic order. After the encoding and after every layer the per-qubit
Pauli-Z expectations are recorded; the resulting (num_layers + 1, num_qubits)
table is the interface to the loss and the tour decoder.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .statevec import StateVector


def qubit_pairs(num_qubits: int) -> list[tuple[int, int]]:
    """All index pairs (j, k) with j < k in lexicographic order."""
    return list(itertools.combinations(range(num_qubits), 2))


def num_parameters(num_qubits: int, num_layers: int) -> int:
    """Trainable angle count: per layer one mix angle per qubit plus one swap
    angle per pair, so num_layers * (n + n*(n-1)/2)."""
    if num_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {num_qubits}")
    if num_layers < 1:
        raise ValueError(f"need at least 1 layer, got {num_layers}")
    return num_layers * (num_qubits + num_qubits * (num_qubits - 1) // 2)


@dataclass
class VqkanParams:
    """Trainable angles: ``mix_angles`` of shape (layers, qubits) and
    ``swap_angles`` of shape (layers, qubits*(qubits-1)/2)."""

    mix_angles: np.ndarray
    swap_angles: np.ndarray

    def __post_init__(self):
        self.mix_angles = np.asarray(self.mix_angles, dtype=float)
        self.swap_angles = np.asarray(self.swap_angles, dtype=float)
        if self.mix_angles.ndim != 2 or self.swap_angles.ndim != 2:
            raise ValueError("angle arrays must be 2-D (layers x angles)")
        layers, n = self.mix_angles.shape
        if layers < 1 or n < 2:
            raise ValueError(
                f"mix_angles needs at least 1 layer of 2 qubits, got {self.mix_angles.shape}"
            )
        expected_pairs = n * (n - 1) // 2
        if self.swap_angles.shape != (layers, expected_pairs):
            raise ValueError(
                f"swap_angles must have shape ({layers}, {expected_pairs}), "
                f"got {self.swap_angles.shape}"
            )

    @property
    def num_layers(self) -> int:
        return self.mix_angles.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.mix_angles.shape[1]

    def to_flat(self) -> np.ndarray:
        """Single parameter vector: mix angles first, swap angles after."""
        return np.concatenate([self.mix_angles.ravel(), self.swap_angles.ravel()])

    @classmethod
    def from_flat(cls, flat, num_qubits: int, num_layers: int) -> "VqkanParams":
        flat = np.asarray(flat, dtype=float).ravel()
        expected = num_parameters(num_qubits, num_layers)
        if flat.size != expected:
            raise ValueError(
                f"expected {expected} parameters for {num_qubits} qubits x "
                f"{num_layers} layers, got {flat.size}"
            )
        n_mix = num_layers * num_qubits
        mix = flat[:n_mix].reshape(num_layers, num_qubits)
        swap = flat[n_mix:].reshape(num_layers, num_qubits * (num_qubits - 1) // 2)
        return cls(mix, swap)

    @classmethod
    def zeros(cls, num_qubits: int, num_layers: int) -> "VqkanParams":
        return cls.from_flat(
            np.zeros(num_parameters(num_qubits, num_layers)), num_qubits, num_layers
        )


@dataclass(frozen=True)
class LayerSnapshots:
    """Per-qubit Z expectations after the encoding and after each layer.

    ``values[n][j]`` is <Z_j> at snapshot ``n``; row 0 is the encoded state.
    """

    values: np.ndarray = field()

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] < 2:
            raise ValueError(
                f"snapshots must be 2-D with at least 2 rows, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)

    @property
    def num_layers(self) -> int:
        return self.values.shape[0] - 1

    @property
    def num_qubits(self) -> int:
        return self.values.shape[1]


def encode_input(x) -> StateVector:
    """Prepare the input state: qubit j gets Ry(acos(2 x_j - 1) + pi/2).

    Inputs live in [0, 1]. The map sends x = 0.5 to <Z> = -1 (fully occupied)
    and both endpoints 0 and 1 to <Z> = 0; in general <Z> = -sqrt(1-(2x-1)^2).
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"input must be a 1-D vector, got shape {x.shape}")
    if np.any(x < 0.0) or np.any(x > 1.0) or not np.all(np.isfinite(x)):
        raise ValueError("inputs must lie in [0, 1]")
    state = StateVector.zero(x.size)
    for j, xj in enumerate(x):
        state.apply_ry(j, math.acos(2.0 * xj - 1.0) + math.pi / 2.0)
    return state


def start_site_input(num_sites: int, start: int = 0) -> np.ndarray:
    """Default per-sample input: 0.5 at the start site, 0 elsewhere.

    Through ``encode_input`` this pins the start qubit to occupancy 1 and
    leaves the rest at occupancy 1/2.
    """
    if not 0 <= start < num_sites:
        raise ValueError(f"start site {start} out of range for {num_sites} sites")
    x = np.zeros(num_sites)
    x[start] = 0.5
    return x


def apply_mix_swap_layer(state: StateVector, mix_row, swap_row) -> StateVector:
    """One ansatz layer in place: per-qubit Ry mixing, then pairwise pswaps."""
    n = state.num_qubits
    mix_row = np.asarray(mix_row, dtype=float)
    swap_row = np.asarray(swap_row, dtype=float)
    if mix_row.shape != (n,):
        raise ValueError(f"mix row must have {n} angles, got shape {mix_row.shape}")
    pairs = qubit_pairs(n)
    if swap_row.shape != (len(pairs),):
        raise ValueError(
            f"swap row must have {len(pairs)} angles, got shape {swap_row.shape}"
        )
    for j in range(n):
        state.apply_ry(j, float(mix_row[j]))
    for (j, k), theta in zip(pairs, swap_row):
        state.apply_pswap(j, k, float(theta))
    return state


def _z_row(state: StateVector) -> list[float]:
    return [state.expect_z(j) for j in range(state.num_qubits)]


def forward(params: VqkanParams, x) -> LayerSnapshots:
    """Run the circuit on input ``x`` and collect all Z-expectation rows.

    Row 0 depends only on ``x``; row n+1 is taken after layer n. Entries are
    clipped into [-1, 1] to absorb float round-off at the boundary.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (params.num_qubits,):
        raise ValueError(
            f"input length {x.shape} does not match {params.num_qubits} qubits"
        )
    state = encode_input(x)
    rows = [_z_row(state)]
    for n in range(params.num_layers):
        apply_mix_swap_layer(state, params.mix_angles[n], params.swap_angles[n])
        rows.append(_z_row(state))
    return LayerSnapshots(np.clip(np.array(rows), -1.0, 1.0))
