"""Acceptance gate: one test per shipping criterion, each printing a PASS line.

Criteria 1-6 are exact property suites, 7 is the calibrated stochastic
end-to-end check, 8 covers the VQE baseline, 9 and 10 pin the CSV contract.
Run with -s to see the PASS lines; a failed assert marks the criterion FAIL.
"""

import csv
import itertools
import math
import time

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import one_hot_snapshots
from vqkan import (
    LayerSnapshots,
    StateVector,
    VqeModel,
    VqkanParams,
    VqkanTspSolver,
    cost_term,
    decode,
    enumerate_cycles,
    hexagon_graph,
    path_length,
    qubit_pairs,
    qubo_diagonal,
    random_graph,
    shortest_cycle,
    square_graph,
    taboo,
    vqe_energy,
)
from vqkan.cli import main


def test_criterion_01_gate_algebra():
    start = time.monotonic()

    for theta in np.linspace(0.0, 2.0 * math.pi, 100):
        z = StateVector.zero(1).apply_ry(0, theta).expect_z(0)
        assert abs(z - math.cos(theta)) < 1e-10

    rng = np.random.default_rng(11)
    for _ in range(20):
        a, b, c = rng.uniform(-math.pi, math.pi, 3)
        composed = StateVector.zero(1).apply_ry(0, c).apply_ry(0, a).apply_ry(0, b)
        direct = StateVector.zero(1).apply_ry(0, c).apply_ry(0, a + b)
        assert_allclose(composed.amplitudes, direct.amplitudes, atol=1e-10)

    # pswap(pi) acts as SWAP up to sign: probabilities permute exactly
    for _ in range(20):
        raw = rng.normal(size=4) + 1j * rng.normal(size=4)
        state = StateVector(raw / np.linalg.norm(raw))
        before = state.probabilities().copy()
        after = state.apply_pswap(0, 1, math.pi).probabilities()
        swapped = before[[0, 2, 1, 3]]
        assert_allclose(after, swapped, atol=1e-10)

    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    print(f"PASS criterion 1: gate algebra within 1e-10 ({elapsed:.3f} s)")


def test_criterion_02_excitation_conservation():
    start = time.monotonic()
    rng = np.random.default_rng(29)
    pairs = qubit_pairs(4)
    for _ in range(1000):
        raw = rng.normal(size=16) + 1j * rng.normal(size=16)
        state = StateVector(raw / np.linalg.norm(raw))
        before = state.total_occupancy()
        for a, b in pairs:
            state.apply_pswap(a, b, rng.uniform(-math.pi, math.pi))
        assert abs(state.total_occupancy() - before) < 1e-10
    elapsed = time.monotonic() - start
    assert elapsed < 10.0
    print(f"PASS criterion 2: 1000 pswap circuits conserve occupancy ({elapsed:.3f} s)")


def test_criterion_03_oracle_ground_truth():
    start = time.monotonic()

    square = shortest_cycle(square_graph(0.0), 0)
    assert square.best_path == (0, 1, 2, 3, 0)
    assert square.best_length == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)

    hexagon = shortest_cycle(hexagon_graph(), 0)
    assert hexagon.best_path == (0, 1, 2, 3, 4, 5, 0)
    assert hexagon.best_length == pytest.approx(3.0, abs=1e-12)

    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    print(f"PASS criterion 3: oracle optima 2*sqrt(2) and 3.0 ({elapsed:.3f} s)")


def test_criterion_04_loss_oracle_consistency():
    start = time.monotonic()
    graphs = [square_graph(0.0)]
    graphs += [random_graph(seed, 4, 1 + seed % 4) for seed in range(20)]
    cycles = enumerate_cycles(4, 0)
    for g in graphs:
        for cycle in cycles:
            snaps = one_hot_snapshots(cycle, 4)
            cost = cost_term(snaps, g, mode="weighted")
            assert cost == pytest.approx(path_length(g, cycle), abs=1e-12)
    elapsed = time.monotonic() - start
    assert elapsed < 5.0
    print(f"PASS criterion 4: one-hot cost equals path length on 21 graphs ({elapsed:.3f} s)")


def test_criterion_05_taboo_exhaustive():
    start = time.monotonic()
    for assignment in itertools.product(range(4), repeat=5):
        value = taboo(one_hot_snapshots(assignment, 4), mode="effective")
        assert value >= -1e-12
        # the closing row is exempt: only the 4 step rows must be disjoint
        if len(set(assignment[:4])) == 4:
            assert abs(value) <= 1e-12
        else:
            assert value >= 2.0 - 1e-12
    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    print(f"PASS criterion 5: taboo zero iff disjoint over all 4^5 assignments ({elapsed:.3f} s)")


def test_criterion_06_decoder_oracle_equivalence():
    start = time.monotonic()

    for num_sites in (4, 6):
        for cycle in enumerate_cycles(num_sites, 0):
            snaps = one_hot_snapshots(cycle, num_sites)
            assert decode(snaps, num_sites, 0, mode="product").path == cycle
            assert decode(snaps, num_sites, 0, mode="sum").path == cycle

    # scaling all occupancies by c > 0 must not move the argmax
    rng = np.random.default_rng(47)
    for index in range(100):
        num_sites = 4 if index % 2 == 0 else 6
        z = rng.uniform(-1.0, 1.0, size=(num_sites + 1, num_sites))
        base = LayerSnapshots(z)
        for mode in ("sum", "product"):
            reference = decode(base, num_sites, 0, mode=mode).path
            for scale in (0.25, 0.5):
                scaled = LayerSnapshots(1.0 - scale * (1.0 - z))
                assert decode(scaled, num_sites, 0, mode=mode).path == reference

    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    print(f"PASS criterion 6: decoder recovers tours, argmax scale-invariant ({elapsed:.3f} s)")


def test_criterion_07_end_to_end_square_family():
    start = time.monotonic()
    samples = (0.0, 0.1, 0.2, 0.3, 0.4)
    graphs = [square_graph(t) for t in samples]
    optima = [shortest_cycle(g, 0).best_length for g in graphs]

    sum_hits = []
    product_hits = []
    for seed in range(5):
        solver = VqkanTspSolver(n_layers=4, budget=500, seed=seed).fit(graphs)
        for mode, hits in (("sum", sum_hits), ("product", product_hits)):
            path = solver.decode_tour(mode=mode).path
            hits.append(
                sum(
                    path_length(g, path) <= best + 1e-9
                    for g, best in zip(graphs, optima)
                )
            )

    assert max(sum_hits) >= 3, f"sum decoding optimal counts per seed: {sum_hits}"
    assert max(product_hits) >= 2, f"product decoding optimal counts per seed: {product_hits}"
    elapsed = time.monotonic() - start
    assert elapsed < 300.0
    print(
        f"PASS criterion 7: sum hits {sum_hits}, product hits {product_hits} "
        f"({elapsed:.1f} s)"
    )


def test_criterion_08_vqe_baseline(tmp_path):
    model = VqeModel(num_sites=4)
    graph = square_graph(0.0)
    diagonal = qubo_diagonal(model, graph)

    index = sum(1 << (4 * step + site) for step, site in enumerate((0, 1, 2, 3)))
    expected = 2.0 * math.sqrt(2.0)
    assert diagonal[index] == pytest.approx(expected, abs=1e-12)
    basis = StateVector.basis(16, index)
    assert basis.probabilities() @ diagonal == pytest.approx(expected, abs=1e-12)

    start = time.monotonic()
    vqe_energy(model, graph, VqkanParams.zeros(16, 1))
    elapsed = time.monotonic() - start
    assert elapsed < 1.0

    out = tmp_path / "out"
    config = tmp_path / "exp.ini"
    config.write_text(
        f"[graph]\ntype = square\n[optimizer]\nbudget = 20\nseeds = 0\n"
        f"[run]\nsamples = 0,0.1\noutput_dir = {out}\n"
    )
    assert main(["compare", str(config)]) == 0
    with open(out / "compare.csv", newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == [
        "sample",
        "sum_path",
        "sum_valid",
        "product_path",
        "product_valid",
        "vqe_path",
        "vqe_valid",
    ]
    assert len(rows) == 3
    print(f"PASS criterion 8: tour basis energy {expected:.12f}, eval {elapsed:.3f} s, compare table written")


def test_criterion_09_determinism(tmp_path):
    outputs = []
    for name in ("first", "second"):
        out = tmp_path / name
        config = tmp_path / f"{name}.ini"
        config.write_text(
            f"[graph]\ntype = square\n[model]\nlayers = 4\n"
            f"[optimizer]\nbudget = 60\nseeds = 0,1\n"
            f"[run]\nsamples = 0,0.2\noutput_dir = {out}\n"
        )
        assert main(["run", str(config)]) == 0
        outputs.append(
            tuple((out / f).read_bytes() for f in ("trials.csv", "results.csv"))
        )
    assert outputs[0] == outputs[1]
    print("PASS criterion 9: identical configs give byte-identical trials.csv and results.csv")


def test_criterion_10_monotone_best_so_far(tmp_path):
    for mode in ("joint", "per_sample"):
        out = tmp_path / mode
        config = tmp_path / f"{mode}.ini"
        config.write_text(
            f"[graph]\ntype = square\n"
            f"[optimizer]\nbudget = 50\nseeds = 0,1,2\n"
            f"[run]\nsamples = 0,0.3\noutput_dir = {out}\nmode = {mode}\n"
        )
        assert main(["run", str(config)]) == 0
        with open(out / "trials.csv", newline="") as handle:
            rows = list(csv.reader(handle))[1:]
        by_seed = {}
        for row in rows:
            by_seed.setdefault(row[0], []).append(float(row[3]))
        for values in by_seed.values():
            assert all(b <= a for a, b in zip(values, values[1:]))
    print("PASS criterion 10: best_so_far non-increasing for every seed in both run modes")
