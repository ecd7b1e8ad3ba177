"""Shared test helpers."""

import numpy as np

from vqkan import LayerSnapshots


def one_hot_snapshots(path, num_qubits) -> LayerSnapshots:
    """Snapshots whose row j is fully occupied exactly at site path[j].

    Occupied means <Z> = -1, empty means <Z> = +1, so these are the idealized
    readouts of a circuit that traces ``path`` perfectly.
    """
    z = np.ones((len(path), num_qubits))
    for row, site in enumerate(path):
        z[row, site] = -1.0
    return LayerSnapshots(z)
