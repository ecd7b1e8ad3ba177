"""Dense state-vector simulation of the small gate set the solver needs.

Only three operations are required: single-qubit y-axis rotations, a
two-qubit partial-swap rotation, and Pauli-Z expectation values. States are
stored as full amplitude arrays, so the practical ceiling is ``MAX_QUBITS``
qubits. Expectations are computed exactly from the amplitudes; there is no
sampling anywhere.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import SizeError

MAX_QUBITS = 20


class StateVector:
    """Pure state of ``num_qubits`` qubits held as a dense complex array.

    Qubit 0 is the least significant bit of the basis index. Gate methods
    mutate the state in place and return ``self`` so applications chain.
    """

    __slots__ = ("_amps", "_num_qubits")

    def __init__(self, amplitudes):
        amps = np.array(amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size < 2 or amps.size & (amps.size - 1):
            raise ValueError(
                f"amplitude array must be 1-D with power-of-two length, got shape {amps.shape}"
            )
        num_qubits = amps.size.bit_length() - 1
        if num_qubits > MAX_QUBITS:
            raise SizeError(
                f"{num_qubits} qubits exceeds the dense-simulation limit of {MAX_QUBITS}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"amplitudes must have unit L2 norm, got {norm!r}")
        self._amps = amps
        self._num_qubits = num_qubits

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        """The all-|0> state on ``num_qubits`` qubits.

        Raises:
            SizeError: if ``num_qubits`` is outside [1, MAX_QUBITS].
        """
        return cls.basis(num_qubits, 0)

    @classmethod
    def basis(cls, num_qubits: int, index: int) -> "StateVector":
        """The computational basis state |index> on ``num_qubits`` qubits."""
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise SizeError(
                f"num_qubits must be between 1 and {MAX_QUBITS}, got {num_qubits}"
            )
        if not 0 <= index < (1 << num_qubits):
            raise IndexError(f"basis index {index} out of range for {num_qubits} qubits")
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @property
    def num_qubits(self) -> int:
        return self._num_qubits

    @property
    def amplitudes(self) -> np.ndarray:
        """Read-only view of the amplitude array."""
        view = self._amps.view()
        view.flags.writeable = False
        return view

    def copy(self) -> "StateVector":
        return StateVector(self._amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self._amps))

    def probabilities(self) -> np.ndarray:
        """Measurement probabilities of every computational basis state."""
        return np.abs(self._amps) ** 2

    def _check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self._num_qubits:
            raise IndexError(
                f"qubit {qubit} out of range for a {self._num_qubits}-qubit state"
            )

    def apply_ry(self, qubit: int, theta: float) -> "StateVector":
        """Rotate ``qubit`` about the y axis by angle ``theta`` (radians).

        The rotation is the real matrix with rows
        (cos t/2, -sin t/2) and (sin t/2, cos t/2), so Ry(pi)|0> = |1>.
        """
        self._check_qubit(qubit)
        c = math.cos(theta / 2.0)
        s = math.sin(theta / 2.0)
        a = self._amps.reshape(-1, 2, 1 << qubit)
        a0 = a[:, 0, :].copy()
        a1 = a[:, 1, :]
        a[:, 0, :] = c * a0 - s * a1
        a[:, 1, :] = s * a0 + c * a1
        return self

    def apply_pswap(self, qubit_a: int, qubit_b: int, theta: float) -> "StateVector":
        """Partial swap between two qubits.

        Acts as the identity on |00> and |11> and rotates the single-excitation
        plane span{|01>, |10>} by ``theta / 2``, so theta = 0 is the identity
        and theta = pi realizes a full swap up to a sign on one branch. Total
        excitation number is conserved for every angle.
        """
        self._check_qubit(qubit_a)
        self._check_qubit(qubit_b)
        if qubit_a == qubit_b:
            raise ValueError(f"pswap needs two distinct qubits, got {qubit_a} twice")
        hi = max(qubit_a, qubit_b)
        lo = min(qubit_a, qubit_b)
        c = math.cos(theta / 2.0)
        s = math.sin(theta / 2.0)
        a = self._amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
        if qubit_a == hi:
            u = a[:, 1, :, 0, :]
            v = a[:, 0, :, 1, :]
        else:
            u = a[:, 0, :, 1, :]
            v = a[:, 1, :, 0, :]
        u_new = c * u - s * v
        v_new = s * u + c * v
        if qubit_a == hi:
            a[:, 1, :, 0, :] = u_new
            a[:, 0, :, 1, :] = v_new
        else:
            a[:, 0, :, 1, :] = u_new
            a[:, 1, :, 0, :] = v_new
        return self

    def expect_z(self, qubit: int) -> float:
        """Exact expectation value of Pauli Z on ``qubit``."""
        self._check_qubit(qubit)
        p = np.abs(self._amps.reshape(-1, 2, 1 << qubit)) ** 2
        return float(1.0 - 2.0 * p[:, 1, :].sum())

    def total_occupancy(self) -> float:
        """Sum over qubits of (1 - <Z>)/2, the conserved excitation count."""
        return sum((1.0 - self.expect_z(q)) / 2.0 for q in range(self._num_qubits))

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self._num_qubits})"
