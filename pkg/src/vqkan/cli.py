"""Command-line experiment runner.

Three subcommands share one config-file format: ``run`` optimizes and decodes
tours over seeded repetitions, ``oracle`` tabulates the exact optima, and
``compare`` puts sum decoding, product decoding, and the VQE baseline side by
side on the same samples. All outputs are CSV files whose bytes are a pure
function of the config file.

Exit codes: 0 success, 2 usage or config error, 3 problem-size error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .decoder import is_valid_cycle
from .estimators import VqeTspSolver, VqkanTspSolver
from .exceptions import ConfigError, GraphParseError, SizeError
from .graph import TimedGraph, hexagon_graph, load_graph, random_graph, square_graph
from .loss import COST_MODES, TABOO_MODES, TABOO_SIGNS
from .oracle import path_length, shortest_cycle

GRAPH_TYPES = ("square", "random", "hexagon6", "file")
DECODE_MODES = ("sum", "product")
RUN_MODES = ("joint", "per_sample")

_SECTION_KEYS = {
    "graph": {"type", "sites", "steps", "path"},
    "model": {"layers", "start", "decode"},
    "loss": {"cost", "taboo", "taboo_sign", "taboo_weight", "sample_weights"},
    "optimizer": {"budget", "seeds", "init_scale"},
    "run": {"samples", "output_dir", "mode"},
}
_GRAPH_TYPE_KEYS = {
    "square": {"type"},
    "random": {"type", "sites", "steps"},
    "hexagon6": {"type"},
    "file": {"type", "path"},
}


@dataclass
class ExperimentConfig:
    """Validated contents of one experiment config file."""

    graph_type: str
    sites: int
    steps: int
    graph_path: str | None
    layers: int | None
    start: int
    decode_mode: str
    cost_mode: str
    taboo_mode: str
    taboo_sign: str
    taboo_weight: float
    sample_weights: list[float] | None
    budget: int
    seeds: list[int]
    init_scale: float
    samples: list | None
    output_dir: Path
    run_mode: str


def _get(parser, section, key, default=None):
    if parser.has_option(section, key):
        value = parser.get(section, key).strip()
        if value:
            return value
        raise ConfigError(f"{section}.{key}", "value is empty")
    return default


def _parse_typed(section, key, raw, kind):
    try:
        value = kind(raw)
    except ValueError:
        raise ConfigError(
            f"{section}.{key}", f"expected {kind.__name__}, got {raw!r}"
        ) from None
    if kind is float and not math.isfinite(value):
        raise ConfigError(f"{section}.{key}", f"value {raw!r} is not finite")
    return value


def _parse_list(section, key, raw, kind):
    tokens = [tok.strip() for tok in raw.split(",")]
    tokens = [tok for tok in tokens if tok]
    if not tokens:
        raise ConfigError(f"{section}.{key}", "list must not be empty")
    return [_parse_typed(section, key, tok, kind) for tok in tokens]


def _parse_choice(section, key, raw, choices):
    if raw not in choices:
        raise ConfigError(
            f"{section}.{key}", f"must be one of {', '.join(choices)}; got {raw!r}"
        )
    return raw


def load_config(path) -> ExperimentConfig:
    """Parse and validate a config file; unknown sections or keys are errors."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError("config", f"no such file: {path}")
    parser = configparser.ConfigParser(
        inline_comment_prefixes=("#",), interpolation=None
    )
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError("config", f"malformed file: {exc}") from None

    if parser.defaults():
        raise ConfigError("DEFAULT", "defaults section is not supported")
    for section in parser.sections():
        if section not in _SECTION_KEYS:
            raise ConfigError(section, "unknown section")
        for key in parser.options(section):
            if key not in _SECTION_KEYS[section]:
                raise ConfigError(f"{section}.{key}", "unknown key")

    graph_type = _get(parser, "graph", "type")
    if graph_type is None:
        raise ConfigError("graph.type", "required")
    graph_type = _parse_choice("graph", "type", graph_type, GRAPH_TYPES)
    allowed = _GRAPH_TYPE_KEYS[graph_type]
    if parser.has_section("graph"):
        for key in parser.options("graph"):
            if key not in allowed:
                raise ConfigError(
                    f"graph.{key}", f"not applicable to graph type {graph_type!r}"
                )

    sites = {"square": 4, "hexagon6": 6}.get(graph_type, 0)
    steps = 1
    graph_path = None
    if graph_type == "random":
        sites = _parse_typed("graph", "sites", _get(parser, "graph", "sites", "4"), int)
        if sites < 3:
            raise ConfigError("graph.sites", f"need at least 3 sites, got {sites}")
        steps = _parse_typed("graph", "steps", _get(parser, "graph", "steps", "1"), int)
        if steps < 1:
            raise ConfigError("graph.steps", f"need at least 1 step, got {steps}")
    elif graph_type == "file":
        graph_path = _get(parser, "graph", "path")
        if graph_path is None:
            raise ConfigError("graph.path", "required for graph type 'file'")

    layers_raw = _get(parser, "model", "layers")
    layers = None if layers_raw is None else _parse_typed("model", "layers", layers_raw, int)
    if layers is not None and layers < 1:
        raise ConfigError("model.layers", f"need at least 1 layer, got {layers}")
    if layers is not None and sites and layers < sites:
        raise ConfigError(
            "model.layers",
            f"decoding {sites}-site tours needs at least {sites} layers, got {layers}",
        )
    start = _parse_typed("model", "start", _get(parser, "model", "start", "0"), int)
    if start < 0 or (sites and start >= sites):
        raise ConfigError("model.start", f"start site {start} out of range")
    decode_mode = _parse_choice(
        "model", "decode", _get(parser, "model", "decode", "sum"), DECODE_MODES
    )

    cost_mode = _parse_choice(
        "loss", "cost", _get(parser, "loss", "cost", "weighted"), COST_MODES
    )
    taboo_mode = _parse_choice(
        "loss", "taboo", _get(parser, "loss", "taboo", "effective"), TABOO_MODES
    )
    taboo_sign = _parse_choice(
        "loss", "taboo_sign", _get(parser, "loss", "taboo_sign", "plus"), TABOO_SIGNS
    )
    taboo_weight = _parse_typed(
        "loss", "taboo_weight", _get(parser, "loss", "taboo_weight", "1.0"), float
    )
    if taboo_weight < 0.0:
        raise ConfigError("loss.taboo_weight", f"must be nonnegative, got {taboo_weight}")
    weights_raw = _get(parser, "loss", "sample_weights", "uniform")
    if weights_raw == "uniform":
        sample_weights = None
    else:
        sample_weights = _parse_list("loss", "sample_weights", weights_raw, float)
        if any(w < 0.0 for w in sample_weights) or not sum(sample_weights) > 0.0:
            raise ConfigError(
                "loss.sample_weights", "weights must be nonnegative and not all zero"
            )

    budget = _parse_typed("optimizer", "budget", _get(parser, "optimizer", "budget", "500"), int)
    if budget < 1:
        raise ConfigError("optimizer.budget", f"must be at least 1, got {budget}")
    seeds_raw = _get(parser, "optimizer", "seeds")
    if seeds_raw is None:
        raise ConfigError("optimizer.seeds", "required (comma-separated integers)")
    seeds = _parse_list("optimizer", "seeds", seeds_raw, int)
    init_scale = _parse_typed(
        "optimizer", "init_scale", _get(parser, "optimizer", "init_scale", "0.1"), float
    )
    if not init_scale > 0.0:
        raise ConfigError("optimizer.init_scale", f"must be positive, got {init_scale}")

    samples_raw = _get(parser, "run", "samples")
    if graph_type in ("square", "random"):
        if samples_raw is None:
            raise ConfigError("run.samples", f"required for graph type {graph_type!r}")
        kind = float if graph_type == "square" else int
        samples = _parse_list("run", "samples", samples_raw, kind)
    else:
        if samples_raw is not None:
            raise ConfigError(
                "run.samples", f"not applicable to graph type {graph_type!r}"
            )
        samples = None
    output_raw = _get(parser, "run", "output_dir")
    if output_raw is None:
        raise ConfigError("run.output_dir", "required")
    run_mode = _parse_choice(
        "run", "mode", _get(parser, "run", "mode", "joint"), RUN_MODES
    )

    num_samples = len(samples) if samples is not None else 1
    if sample_weights is not None and len(sample_weights) != num_samples:
        raise ConfigError(
            "loss.sample_weights",
            f"got {len(sample_weights)} weights for {num_samples} samples",
        )
    if sample_weights is not None and run_mode == "per_sample":
        raise ConfigError(
            "loss.sample_weights", "explicit weights only apply to joint mode"
        )

    return ExperimentConfig(
        graph_type=graph_type,
        sites=sites,
        steps=steps,
        graph_path=graph_path,
        layers=layers,
        start=start,
        decode_mode=decode_mode,
        cost_mode=cost_mode,
        taboo_mode=taboo_mode,
        taboo_sign=taboo_sign,
        taboo_weight=taboo_weight,
        sample_weights=sample_weights,
        budget=budget,
        seeds=seeds,
        init_scale=init_scale,
        samples=samples,
        output_dir=Path(output_raw),
        run_mode=run_mode,
    )


def build_graphs(config: ExperimentConfig) -> list[TimedGraph]:
    """Materialize the sample graphs a config describes."""
    if config.graph_type == "square":
        graphs = [square_graph(t) for t in config.samples]
    elif config.graph_type == "random":
        graphs = [
            random_graph(seed, config.sites, config.steps) for seed in config.samples
        ]
    elif config.graph_type == "hexagon6":
        graphs = [hexagon_graph()]
    else:
        graphs = [load_graph(config.graph_path)]
    sites = graphs[0].num_sites
    if not 0 <= config.start < sites:
        raise ConfigError(
            "model.start", f"start site {config.start} out of range for {sites} sites"
        )
    if config.layers is not None and config.layers < sites:
        raise ConfigError(
            "model.layers",
            f"decoding {sites}-site tours needs at least {sites} layers, got {config.layers}",
        )
    return graphs


def _fmt(value: float) -> str:
    return format(float(value), ".15g")


def _path_str(path) -> str:
    return "-".join(str(site) for site in path)


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _make_solver(config: ExperimentConfig, seed: int) -> VqkanTspSolver:
    return VqkanTspSolver(
        n_layers=config.layers,
        start=config.start,
        decode_mode=config.decode_mode,
        cost_mode=config.cost_mode,
        taboo_mode=config.taboo_mode,
        taboo_sign=config.taboo_sign,
        taboo_weight=config.taboo_weight,
        sample_weights=config.sample_weights,
        budget=config.budget,
        seed=seed,
        init_scale=config.init_scale,
    )


def cmd_run(config: ExperimentConfig) -> int:
    """Optimize per seed, decode per sample, write trials.csv and results.csv."""
    graphs = build_graphs(config)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    oracles = [shortest_cycle(g, config.start) for g in graphs]

    trial_rows = []
    result_rows = []
    for seed in config.seeds:
        if config.run_mode == "joint":
            solver = _make_solver(config, seed).fit(graphs)
            histories = [solver.history_]
            paths = [solver.decode_tour().path] * len(graphs)
        else:
            histories = []
            paths = []
            for g in graphs:
                solver = _make_solver(config, seed).fit([g])
                histories.append(solver.history_)
                paths.append(solver.decode_tour().path)
        counter = 0
        running = float("inf")
        for history in histories:
            for record in history:
                running = min(running, record.loss)
                trial_rows.append((seed, counter, _fmt(record.loss), _fmt(running)))
                counter += 1
        for index, (g, orc, path) in enumerate(zip(graphs, oracles, paths)):
            derived = path_length(g, path)
            result_rows.append(
                (
                    seed,
                    index,
                    config.decode_mode,
                    _path_str(path),
                    _fmt(derived),
                    _fmt(orc.best_length),
                    _fmt(derived - orc.best_length),
                )
            )

    _write_csv(
        config.output_dir / "trials.csv",
        ("seed", "trial", "loss", "best_so_far"),
        trial_rows,
    )
    _write_csv(
        config.output_dir / "results.csv",
        ("seed", "sample", "decode_mode", "path", "derived_length", "oracle_length", "gap"),
        result_rows,
    )
    return 0


def cmd_oracle(config: ExperimentConfig) -> int:
    """Write the exact optimum per sample to oracle.csv."""
    graphs = build_graphs(config)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for index, g in enumerate(graphs):
        result = shortest_cycle(g, config.start)
        rows.append((index, _path_str(result.best_path), _fmt(result.best_length)))
    _write_csv(config.output_dir / "oracle.csv", ("sample", "path", "length"), rows)
    return 0


def cmd_compare(config: ExperimentConfig) -> int:
    """Sum and product decodes next to the VQE baseline, one row per sample.

    The baseline needs num_sites^2 qubits, so only 4-site graphs compare.
    """
    graphs = build_graphs(config)
    if graphs[0].num_sites != 4:
        raise SizeError(
            f"compare needs 4-site graphs (16 baseline qubits); "
            f"got {graphs[0].num_sites} sites"
        )
    config.output_dir.mkdir(parents=True, exist_ok=True)
    seed = config.seeds[0]

    solver = _make_solver(config, seed).fit(graphs)
    sum_path = solver.decode_tour(mode="sum").path
    product_path = solver.decode_tour(mode="product").path
    baseline = VqeTspSolver(
        start=config.start,
        sample_weights=config.sample_weights,
        budget=config.budget,
        seed=seed,
        init_scale=config.init_scale,
    ).fit(graphs)
    vqe_path = baseline.decode_tour()

    n = graphs[0].num_sites
    rows = []
    for index in range(len(graphs)):
        rows.append(
            (
                index,
                _path_str(sum_path),
                str(is_valid_cycle(sum_path, n, config.start)).lower(),
                _path_str(product_path),
                str(is_valid_cycle(product_path, n, config.start)).lower(),
                _path_str(vqe_path),
                str(is_valid_cycle(vqe_path, n, config.start)).lower(),
            )
        )
    _write_csv(
        config.output_dir / "compare.csv",
        (
            "sample",
            "sum_path",
            "sum_valid",
            "product_path",
            "product_valid",
            "vqe_path",
            "vqe_valid",
        ),
        rows,
    )
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="vqkan",
        description="Variational swap-network solver for timed traveling salesman problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "optimize over seeds and decode tours"),
        ("oracle", "tabulate exact optima per sample"),
        ("compare", "sum/product decoding next to the VQE baseline"),
    ):
        command = sub.add_parser(name, help=help_text)
        command.add_argument("config", help="path to the experiment config file")

    args = parser.parse_args(argv)
    handlers = {"run": cmd_run, "oracle": cmd_oracle, "compare": cmd_compare}
    try:
        config = load_config(args.config)
        return handlers[args.command](config)
    except (ConfigError, GraphParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
