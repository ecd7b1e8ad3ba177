import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from vqkan import (
    GraphParseError,
    TimedGraph,
    hexagon_graph,
    load_graph,
    random_graph,
    save_graph,
    square_graph,
)


class TestTimedGraph:
    def test_shape_and_accessors(self):
        g = TimedGraph(np.ones((2, 3, 3)))
        assert g.num_sites == 3
        assert g.num_steps == 2
        assert g.weight(0, 1, 1) == 1.0

    def test_self_loop_lookup_is_error(self):
        g = TimedGraph(np.ones((1, 3, 3)))
        with pytest.raises(ValueError, match="self-loop"):
            g.weight(2, 2, 0)

    def test_out_of_range_lookups(self):
        g = TimedGraph(np.ones((1, 3, 3)))
        with pytest.raises(IndexError):
            g.weight(0, 3, 0)
        with pytest.raises(IndexError):
            g.weight(0, 1, 1)

    def test_rejects_negative_weights(self):
        w = np.ones((1, 3, 3))
        w[0, 0, 1] = -0.5
        with pytest.raises(ValueError, match="nonnegative"):
            TimedGraph(w)

    def test_rejects_non_finite(self):
        w = np.ones((1, 3, 3))
        w[0, 1, 2] = np.inf
        with pytest.raises(ValueError, match="finite"):
            TimedGraph(w)

    def test_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            TimedGraph(np.ones((3, 3)))
        with pytest.raises(ValueError):
            TimedGraph(np.ones((1, 3, 4)))
        with pytest.raises(ValueError, match="at least 2 sites"):
            TimedGraph(np.ones((1, 1, 1)))

    def test_diagonal_is_ignored_storage(self):
        w = np.ones((1, 3, 3))
        np.fill_diagonal(w[0], 7.5)
        g = TimedGraph(w)
        assert_allclose(np.diag(g.step_matrix(0)), 0.0)

    def test_step_matrix_is_read_only(self):
        g = TimedGraph(np.ones((1, 3, 3)))
        with pytest.raises(ValueError):
            g.step_matrix(0)[0, 1] = 2.0


class TestSquareGraph:
    def test_reference_weights_at_time_zero(self):
        g = square_graph(0.0)
        assert_allclose(g.weight(0, 1), 1.0 / math.sqrt(2.0), atol=1e-12)
        assert_allclose(g.weight(0, 2), 1.0, atol=1e-12)
        assert g.num_sites == 4
        assert g.num_steps == 1

    def test_perimeter_sides_and_diagonals(self):
        g = square_graph(0.2)
        m = abs(math.cos(0.2 * math.pi))
        for a, b in ((0, 1), (1, 2), (2, 3), (3, 0)):
            assert_allclose(g.weight(a, b), m / math.sqrt(2.0), atol=1e-12)
            assert_allclose(g.weight(b, a), m / math.sqrt(2.0), atol=1e-12)
        for a, b in ((0, 2), (1, 3)):
            assert_allclose(g.weight(a, b), m, atol=1e-12)

    def test_degenerates_to_point_at_half(self):
        g = square_graph(0.5)
        assert_allclose(g.step_matrix(0), 0.0, atol=1e-12)

    @pytest.mark.parametrize("t", [0.0, 0.1, 0.25, 0.4, 0.7, 1.0])
    def test_diagonal_to_side_ratio_is_sqrt2(self, t):
        g = square_graph(t)
        side = g.weight(0, 1)
        if side > 0:
            assert_allclose(g.weight(0, 2) / side, math.sqrt(2.0), atol=1e-12)


class TestRandomGraph:
    def test_same_seed_same_graph(self):
        assert random_graph(42, 5, 3) == random_graph(42, 5, 3)

    def test_different_seeds_differ(self):
        assert random_graph(1, 4) != random_graph(2, 4)

    def test_weights_in_unit_interval(self):
        g = random_graph(0, 6, 4)
        w = np.asarray([g.step_matrix(t) for t in range(4)])
        off = w[:, ~np.eye(6, dtype=bool)]
        assert np.all(off > 0.0)
        assert np.all(off <= 1.0)

    def test_directed_and_time_dependent(self):
        g = random_graph(3, 4, 2)
        assert g.weight(0, 1, 0) != g.weight(1, 0, 0)
        assert g.weight(0, 1, 0) != g.weight(0, 1, 1)

    def test_rejects_too_few_sites(self):
        with pytest.raises(ValueError, match="at least 3"):
            random_graph(0, 2)

    def test_rejects_zero_steps(self):
        with pytest.raises(ValueError, match="at least 1"):
            random_graph(0, 4, 0)


class TestHexagonGraph:
    def test_ring_and_chord_weights(self):
        g = hexagon_graph()
        assert g.num_sites == 6
        for j in range(6):
            assert g.weight(j, (j + 1) % 6) == 0.5
            assert g.weight((j + 1) % 6, j) == 0.5
        assert g.weight(0, 2) == 1.0
        assert g.weight(0, 3) == 1.0


class TestFileRoundTrip:
    def test_round_trip_is_exact(self, tmp_path):
        g = random_graph(123, 5, 3)
        path = tmp_path / "g.txt"
        save_graph(g, path)
        assert load_graph(path) == g

    def test_round_trip_square(self, tmp_path):
        g = square_graph(0.3)
        path = tmp_path / "sq.txt"
        save_graph(g, path)
        loaded = load_graph(path)
        assert loaded == g
        assert loaded.weight(0, 1) == g.weight(0, 1)

    def test_header_shape(self, tmp_path):
        path = tmp_path / "g.txt"
        save_graph(random_graph(0, 4, 2), path)
        assert path.read_text().splitlines()[0] == "4 2"


class TestLoadErrors:
    def write(self, tmp_path, text):
        path = tmp_path / "bad.txt"
        path.write_text(text)
        return path

    def test_missing_header(self, tmp_path):
        with pytest.raises(GraphParseError, match="line 1"):
            load_graph(self.write(tmp_path, ""))

    def test_header_not_two_integers(self, tmp_path):
        with pytest.raises(GraphParseError, match="line 1"):
            load_graph(self.write(tmp_path, "4\n"))
        with pytest.raises(GraphParseError, match="line 1"):
            load_graph(self.write(tmp_path, "four 1\n"))

    def test_wrong_row_arity_names_line(self, tmp_path):
        text = "3 1\n0 1 1\n1 0\n1 1 0\n"
        with pytest.raises(GraphParseError, match="line 3"):
            load_graph(self.write(tmp_path, text))

    def test_bad_token_names_line(self, tmp_path):
        text = "3 1\n0 1 1\n1 0 x\n1 1 0\n"
        with pytest.raises(GraphParseError, match="line 3"):
            load_graph(self.write(tmp_path, text))

    def test_negative_weight_names_line(self, tmp_path):
        text = "3 1\n0 1 1\n1 0 1\n1 -2 0\n"
        with pytest.raises(GraphParseError, match="line 4"):
            load_graph(self.write(tmp_path, text))

    def test_truncated_file(self, tmp_path):
        text = "3 2\n0 1 1\n1 0 1\n1 1 0\n"
        with pytest.raises(GraphParseError, match="ends early"):
            load_graph(self.write(tmp_path, text))

    def test_trailing_garbage(self, tmp_path):
        text = "3 1\n0 1 1\n1 0 1\n1 1 0\nextra\n"
        with pytest.raises(GraphParseError, match="line 5"):
            load_graph(self.write(tmp_path, text))

    def test_diagonal_value_is_ignored(self, tmp_path):
        text = "3 1\n9 1 1\n1 9 1\n1 1 9\n"
        g = load_graph(self.write(tmp_path, text))
        assert_allclose(np.diag(g.step_matrix(0)), 0.0)
