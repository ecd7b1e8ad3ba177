"""Time-dependent complete graphs: the instance model, generators, and file I/O.

A graph holds a nonnegative directed edge weight ``w(j, k, t)`` for every
ordered site pair ``j != k`` and every time step ``t``. Self-loop lookups are
errors rather than zeros so indexing bugs surface early. Tour legs beyond the
last stored step clamp to it, which callers express as ``min(leg, T - 1)``.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .exceptions import GraphParseError


class TimedGraph:
    """Immutable weight table of shape (num_steps, num_sites, num_sites).

    Diagonal entries are storage padding: they are forced to zero and
    ``weight`` refuses to read them.
    """

    __slots__ = ("_weights",)

    def __init__(self, weights):
        w = np.array(weights, dtype=float)
        if w.ndim != 3 or w.shape[1] != w.shape[2]:
            raise ValueError(
                f"weights must have shape (num_steps, n, n), got {w.shape}"
            )
        if w.shape[0] < 1:
            raise ValueError("need at least one time step")
        if w.shape[1] < 2:
            raise ValueError(f"need at least 2 sites, got {w.shape[1]}")
        for t in range(w.shape[0]):
            np.fill_diagonal(w[t], 0.0)
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0.0):
            raise ValueError("weights must be nonnegative")
        w.setflags(write=False)
        self._weights = w

    @property
    def num_sites(self) -> int:
        return self._weights.shape[1]

    @property
    def num_steps(self) -> int:
        return self._weights.shape[0]

    def weight(self, j: int, k: int, t: int = 0) -> float:
        """Directed edge weight from site ``j`` to site ``k`` at step ``t``."""
        n, steps = self.num_sites, self.num_steps
        if not 0 <= j < n or not 0 <= k < n:
            raise IndexError(f"site pair ({j}, {k}) out of range for {n} sites")
        if not 0 <= t < steps:
            raise IndexError(f"time step {t} out of range for {steps} steps")
        if j == k:
            raise ValueError(f"no self-loop weight at site {j}")
        return float(self._weights[t, j, k])

    def step_matrix(self, t: int) -> np.ndarray:
        """Read-only (n, n) weight matrix at step ``t`` with a zero diagonal."""
        if not 0 <= t < self.num_steps:
            raise IndexError(f"time step {t} out of range for {self.num_steps} steps")
        return self._weights[t]

    def max_weight(self) -> float:
        """Largest off-diagonal weight over all steps."""
        return float(self._weights.max())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimedGraph):
            return NotImplemented
        return self._weights.shape == other._weights.shape and bool(
            np.array_equal(self._weights, other._weights)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"TimedGraph(num_sites={self.num_sites}, num_steps={self.num_steps})"


def square_graph(t: float) -> TimedGraph:
    """4-site square at time ``t``, sites labeled 0..3 around the perimeter.

    Adjacent sites are one side apart, opposite sites one diagonal. The side
    length is |cos(t*pi)| / sqrt(2) and the diagonal |cos(t*pi)|, so the whole
    square breathes with time and degenerates to a point at t = 0.5.
    """
    m = abs(math.cos(math.pi * t))
    side = m / math.sqrt(2.0)
    diag = m
    w = np.zeros((1, 4, 4))
    for a, b in ((0, 1), (1, 2), (2, 3), (3, 0)):
        w[0, a, b] = w[0, b, a] = side
    for a, b in ((0, 2), (1, 3)):
        w[0, a, b] = w[0, b, a] = diag
    return TimedGraph(w)


def random_graph(seed: int, num_sites: int, num_steps: int = 1) -> TimedGraph:
    """Directed graph with weights drawn uniformly from (0, 1].

    Every ordered pair and every step is an independent draw, so the graph is
    generally asymmetric and genuinely time dependent. The same seed always
    yields the same graph.
    """
    if num_sites < 3:
        raise ValueError(f"need at least 3 sites, got {num_sites}")
    if num_steps < 1:
        raise ValueError(f"need at least 1 time step, got {num_steps}")
    rng = np.random.default_rng(seed)
    w = 1.0 - rng.random((num_steps, num_sites, num_sites))
    return TimedGraph(w)


def hexagon_graph() -> TimedGraph:
    """6-site ring benchmark: ring edges weigh 0.5, all other pairs 1.

    The ring tour (0,1,2,3,4,5,0) has length 3.0 and is the unique optimum.
    """
    w = np.ones((1, 6, 6))
    for j in range(6):
        k = (j + 1) % 6
        w[0, j, k] = w[0, k, j] = 0.5
    return TimedGraph(w)


def save_graph(graph: TimedGraph, path) -> None:
    """Write ``graph`` as decimal text that ``load_graph`` restores exactly.

    Format: a header line "num_sites num_steps", then ``num_steps`` blocks of
    ``num_sites`` rows, each row ``num_sites`` space-separated decimals.
    Diagonal entries are written as 0. Seventeen significant digits make the
    float round-trip lossless.
    """
    n, steps = graph.num_sites, graph.num_steps
    lines = [f"{n} {steps}"]
    for t in range(steps):
        m = graph.step_matrix(t)
        for j in range(n):
            lines.append(" ".join(f"{m[j, k]:.17g}" for k in range(n)))
    Path(path).write_text("\n".join(lines) + "\n")


def load_graph(path) -> TimedGraph:
    """Parse a graph text file written by ``save_graph``.

    Raises:
        GraphParseError: on any malformed content; the message names the
            1-based line number.
    """
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise GraphParseError("missing header 'num_sites num_steps'", line=1)
    header = lines[0].split()
    if len(header) != 2:
        raise GraphParseError(
            f"header must be two integers 'num_sites num_steps', got {lines[0]!r}",
            line=1,
        )
    try:
        n, steps = int(header[0]), int(header[1])
    except ValueError:
        raise GraphParseError(
            f"header must be two integers, got {lines[0]!r}", line=1
        ) from None
    if n < 2:
        raise GraphParseError(f"num_sites must be at least 2, got {n}", line=1)
    if steps < 1:
        raise GraphParseError(f"num_steps must be at least 1, got {steps}", line=1)

    expected = 1 + steps * n
    if len(lines) < expected:
        raise GraphParseError(
            f"expected {expected - 1} weight rows after the header, file ends early",
            line=len(lines) + 1,
        )
    for extra in range(expected, len(lines)):
        if lines[extra].strip():
            raise GraphParseError("unexpected content after the last weight row",
                                  line=extra + 1)

    w = np.zeros((steps, n, n))
    for t in range(steps):
        for j in range(n):
            lineno = 1 + t * n + j + 1
            tokens = lines[lineno - 1].split()
            if len(tokens) != n:
                raise GraphParseError(
                    f"expected {n} weights, got {len(tokens)}", line=lineno
                )
            for k, tok in enumerate(tokens):
                try:
                    value = float(tok)
                except ValueError:
                    raise GraphParseError(
                        f"bad weight {tok!r}", line=lineno
                    ) from None
                if j == k:
                    continue
                if not math.isfinite(value):
                    raise GraphParseError(
                        f"weight {tok!r} is not finite", line=lineno
                    )
                if value < 0.0:
                    raise GraphParseError(
                        f"weight {tok!r} is negative", line=lineno
                    )
                w[t, j, k] = value
    return TimedGraph(w)
