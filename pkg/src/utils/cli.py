#!/usr/bin/env python3
"""
POLE Command-Line Interface
===========================
Reproducible pipelines over signed graphs. Every command is a pure function
of its inputs, its configuration and its seed; every artifact embeds the
resolved configuration.

Usage:
    pole-signed polarize --graph congress.edgelist --t 10 --labels congress_labels.csv --out out/
    pole-signed embed --graph g.edgelist --t 3.16 --k 40 --out embedding.txt
    pole-signed linkpred --graph g.edgelist --fraction 0.2 --seed 7 --mode combined --out out/
    pole-signed synth --scheme unpolarized --seed 3 --out synthetic/
    pole-signed balance --graph g.edgelist --out balance.json
    pole-signed export-similarity --graph g.edgelist --t 1 --k 40 --out similarity.csv
    pole-signed export-transitions --graph g.edgelist --t 1 --out transitions.csv

Options shared by all commands:
    --config    JSON or YAML file of parameters; flags override file values
    --seed      Per-command seed for every random stream
    --tol       Taylor truncation tolerance of the continuous walk

Exit codes: 0 success, 2 invalid input/config, 3 infeasible operation,
4 numerical failure.
"""

import argparse
import logging
import sys
from pathlib import Path

import pandas as pd

from config import (
    CLI_PARAMS,
    DYNAMICS_PARAMS,
    EMBEDDING_PARAMS,
    EVALUATION_PARAMS,
    LOG_FORMAT,
    LOG_LEVEL,
    SYNTHESIS_PARAMS,
    ensure_dir,
)
from src.analysis.balance import social_balance
from src.analysis.edge_split import split_edges
from src.analysis.link_prediction import combined_signed_link_prediction, signed_link_prediction
from src.analysis.markov_time import best_markov_time, score_markov_times
from src.analysis.polarization import graph_polarization_profile
from src.data_collection.synthetic_graphs import SyntheticSpec, generate_synthetic, write_communities
from src.models.autocovariance import autocovariance
from src.models.factorization import factorize, similarity_matrix, write_embedding
from src.models.random_walk import continuous_transitions, discrete_transitions
from src.preprocessing.components import largest_connected_component
from src.preprocessing.edge_list import read_edge_list, read_node_labels, write_edge_list
from src.preprocessing.signed_graph import SignedGraph
from src.utils.console import print_error, print_header, print_step, print_success, print_warning
from src.utils.exceptions import InvalidInputError, PoleError
from src.utils.provenance import RunConfig, load_config_file, write_csv, write_json

logger = logging.getLogger(__name__)

# =============================================================================
# DEFAULTS
# =============================================================================

_COMMON = {"seed": CLI_PARAMS["default_seed"], "tol": DYNAMICS_PARAMS["tol"]}

DEFAULTS = {
    "polarize": {"graph": None, "t": CLI_PARAMS["default_markov_time"], "t_grid": None, "labels": None},
    "embed": {
        "graph": None, "t": CLI_PARAMS["default_markov_time"],
        "k": EMBEDDING_PARAMS["dimension"], "unsigned": False, "labels": None,
    },
    "linkpred": {
        "graph": None,
        "fraction": EVALUATION_PARAMS["removal_fraction"],
        "t": None,
        "t_grid": list(EVALUATION_PARAMS["markov_time_grid"]),
        "k": EMBEDDING_PARAMS["dimension"],
        "mode": "combined",
        "labels": None,
    },
    "synth": {
        "nodes_per_community": SYNTHESIS_PARAMS["nodes_per_community"],
        "mean_degree": SYNTHESIS_PARAMS["mean_degree"],
        "inter_ratio": SYNTHESIS_PARAMS["inter_community_ratio"],
        "scheme": "polarized",
        "partition_mode": SYNTHESIS_PARAMS["partition_mode"],
    },
    "balance": {"graph": None},
    "export-similarity": {
        "graph": None, "t": CLI_PARAMS["default_markov_time"],
        "k": EMBEDDING_PARAMS["dimension"], "unsigned": False, "labels": None,
    },
    "export-transitions": {
        "graph": None, "t": CLI_PARAMS["default_markov_time"],
        "unsigned": False, "discrete": False, "labels": None,
    },
}

LINKPRED_MODES = ("signed-only", "combined")


def resolve_params(command: str, args: argparse.Namespace) -> dict:
    """Defaults, then the --config file, then explicit flags."""
    params = {**_COMMON, **DEFAULTS[command]}
    if args.config:
        file_params = load_config_file(args.config)
        unknown = sorted(set(file_params) - set(params))
        if unknown:
            raise InvalidInputError(f"Unknown {command} parameter(s) in {args.config}: {unknown}")
        params.update(file_params)
    for key in params:
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    if "graph" in params and not params["graph"]:
        raise InvalidInputError(f"{command} needs --graph")
    return params


def _load_graph(params: dict) -> SignedGraph:
    full = read_edge_list(params["graph"])
    graph = largest_connected_component(full)
    if graph.node_count < full.node_count:
        print_warning(f"Kept the largest component: {graph.node_count} of {full.node_count} nodes")
    if params.get("labels"):
        graph = graph.relabel(read_node_labels(params["labels"]))
    return graph


def _matrix_frame(matrix, labels) -> pd.DataFrame:
    frame = pd.DataFrame(matrix, index=list(labels), columns=list(labels))
    frame.index.name = "node_label"
    return frame


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_polarize(params: dict, out: Path, rc: RunConfig) -> list[Path]:
    """Node-score CSV (ascending by the first Markov time) plus per-t summaries."""
    times = params["t_grid"] or [params["t"]]
    graph = _load_graph(params)
    reports = graph_polarization_profile(graph, times, tol=params["tol"])
    for report in reports:
        if report.zero_variance_nodes:
            print_warning(
                f"t={report.markov_time:g}: {len(report.zero_variance_nodes)} node(s) with zero column variance scored 0"
            )

    ensure_dir(out)
    frame = reports[0].to_frame()
    if len(reports) > 1:
        frame = frame.rename(columns={"score": f"score_t{reports[0].markov_time:g}"})
        position = {label: i for i, label in enumerate(graph.node_labels)}
        rows = [position[label] for label in frame["node_label"]]
        for report in reports[1:]:
            frame[f"score_t{report.markov_time:g}"] = report.node_scores[rows]
    summary = {"graph": graph.summary(), "polarization": [r.summary() for r in reports]}
    return [
        write_csv(frame, out / "scores.csv", rc),
        write_json(summary, out / "summary.json", rc),
    ]


def cmd_embed(params: dict, out: Path, rc: RunConfig) -> list[Path]:
    graph = _load_graph(params)
    signed = not params["unsigned"]
    source = graph if signed else graph.absolute()
    embedding = factorize(autocovariance(source, params["t"], signed=signed, tol=params["tol"]), params["k"])
    ensure_dir(out.parent)
    return [write_embedding(embedding, out, header=rc.header_lines())]


def _select_times(params: dict, manifest, combined: bool) -> tuple[float, float, dict]:
    if params["t"] is not None:
        return params["t"], params["t"], {}
    grid = [float(t) for t in params["t_grid"]]
    if len(grid) == 1:
        return grid[0], grid[0], {}

    selection = {}
    scores = score_markov_times(
        manifest, grid, params["k"], params["seed"], signed=True, tol=params["tol"], show_progress=True,
    )
    selection["signed"] = scores
    t_signed = t_unsigned = best_markov_time(scores)
    if combined:
        scores = score_markov_times(
            manifest, grid, params["k"], params["seed"], signed=False, tol=params["tol"], show_progress=True,
        )
        selection["unsigned"] = scores
        t_unsigned = best_markov_time(scores)
    return t_signed, t_unsigned, selection


def cmd_linkpred(params: dict, out: Path, rc: RunConfig) -> list[Path]:
    """split -> Markov-time selection -> embed -> rank -> precision@k."""
    if params["mode"] not in LINKPRED_MODES:
        raise InvalidInputError(f"--mode must be one of {LINKPRED_MODES}, got '{params['mode']}'")
    combined = params["mode"] == "combined"

    print_step(1, 3, "Splitting edges")
    graph = _load_graph(params)
    manifest = split_edges(graph, params["fraction"], params["seed"])

    print_step(2, 3, "Selecting Markov times")
    t_signed, t_unsigned, selection = _select_times(params, manifest, combined)

    print_step(3, 3, f"Ranking candidate pairs ({params['mode']})")
    if combined:
        report = combined_signed_link_prediction(
            graph, manifest, t_signed, t_unsigned, params["k"], params["seed"], params["tol"],
        )
    else:
        report = signed_link_prediction(manifest, t_signed, params["k"], params["tol"])

    ensure_dir(out)
    payload = report.to_dict()
    payload["markov_time_selection"] = {
        sign: {f"{t:.17g}": s for t, s in scores.items()} for sign, scores in selection.items()
    }
    written = [
        write_json(payload, out / "report.json", rc),
        write_csv(report.to_frame(), out / "report.csv", rc),
    ]
    if report.pair_features is not None:
        written.append(write_csv(report.pair_features, out / "pair_features.csv", rc))
    return written


def cmd_synth(params: dict, out: Path, rc: RunConfig) -> list[Path]:
    spec = SyntheticSpec(
        nodes_per_community=int(params["nodes_per_community"]),
        mean_degree=float(params["mean_degree"]),
        inter_community_ratio=float(params["inter_ratio"]),
        seed=int(params["seed"]),
        scheme=params["scheme"],
        partition_mode=params["partition_mode"],
    )
    graph, communities = generate_synthetic(spec)
    ensure_dir(out)
    return [
        write_edge_list(graph, out / "graph.edgelist", header=rc.header_lines()),
        write_communities(out / "communities.csv", graph, communities, header=rc.header_lines()),
    ]


def cmd_balance(params: dict, out: Path, rc: RunConfig) -> list[Path]:
    report = social_balance(read_edge_list(params["graph"]))
    balance = "undefined (no triangles)" if report.balance is None else f"{report.balance:.6f}"
    print(f"balance: {balance} over {report.triangle_count} triangles")
    ensure_dir(out.parent)
    return [write_json(report.summary(), out, rc)]


def cmd_export_similarity(params: dict, out: Path, rc: RunConfig) -> list[Path]:
    graph = _load_graph(params)
    signed = not params["unsigned"]
    source = graph if signed else graph.absolute()
    embedding = factorize(autocovariance(source, params["t"], signed=signed, tol=params["tol"]), params["k"])
    ensure_dir(out.parent)
    return [write_csv(_matrix_frame(similarity_matrix(embedding), graph.node_labels), out, rc, index=True)]


def cmd_export_transitions(params: dict, out: Path, rc: RunConfig) -> list[Path]:
    """M(t) or |M|(t) in (from, to) orientation: row = source, column = target."""
    graph = _load_graph(params)
    signed = not params["unsigned"]
    if params["discrete"]:
        field = discrete_transitions(graph, params["t"], signed)
    else:
        field = continuous_transitions(graph, params["t"], signed, params["tol"])
    ensure_dir(out.parent)
    return [write_csv(_matrix_frame(field.matrix, graph.node_labels), out, rc, index=True)]


COMMANDS = {
    "polarize": cmd_polarize,
    "embed": cmd_embed,
    "linkpred": cmd_linkpred,
    "synth": cmd_synth,
    "balance": cmd_balance,
    "export-similarity": cmd_export_similarity,
    "export-transitions": cmd_export_transitions,
}


# =============================================================================
# PARSER
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pole-signed",
        description="Signed random-walk polarization, embedding and link prediction",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON/YAML parameter file")
    common.add_argument("--seed", type=int, help="Per-command random seed")
    common.add_argument("--tol", type=float, help="Taylor truncation tolerance")
    common.add_argument("--out", type=Path, required=True, help="Output file or directory")

    sub = parser.add_subparsers(dest="command", required=True)

    def graph_command(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--graph", type=Path, help="Signed edge-list file")
        p.add_argument("--labels", type=Path, help="Optional id,label sidecar")
        return p

    p = graph_command("polarize", "Node and graph polarization")
    p.add_argument("--t", type=float, help="Markov time")
    p.add_argument("--t-grid", dest="t_grid", type=float, nargs="+", help="Several Markov times")

    for name, help_text in (("embed", "Write an embedding file"),
                            ("export-similarity", "Export the reconstructed similarity matrix")):
        p = graph_command(name, help_text)
        p.add_argument("--t", type=float, help="Markov time")
        p.add_argument("--k", type=int, help="Embedding dimension")
        p.add_argument("--unsigned", action="store_const", const=True, help="Unsigned autocovariance")

    p = graph_command("linkpred", "Signed link-prediction benchmark")
    p.add_argument("--fraction", type=float, help="Held-out link fraction")
    p.add_argument("--t", type=float, help="Fixed Markov time (skips selection)")
    p.add_argument("--t-grid", dest="t_grid", type=float, nargs="+", help="Markov-time grid")
    p.add_argument("--k", type=int, help="Embedding dimension")
    p.add_argument("--mode", choices=LINKPRED_MODES, help="Ranking mode")

    p = sub.add_parser("synth", parents=[common], help="Generate a synthetic signed graph")
    p.add_argument("--scheme", choices=("polarized", "unpolarized"))
    p.add_argument("--nodes-per-community", dest="nodes_per_community", type=int)
    p.add_argument("--mean-degree", dest="mean_degree", type=float)
    p.add_argument("--inter-ratio", dest="inter_ratio", type=float)
    p.add_argument("--partition-mode", dest="partition_mode", choices=("free", "balanced"))

    p = sub.add_parser("balance", parents=[common], help="Social balance of a signed graph")
    p.add_argument("--graph", type=Path, help="Signed edge-list file")

    p = graph_command("export-transitions", "Export M(t) or |M|(t)")
    p.add_argument("--t", type=float, help="Markov time")
    p.add_argument("--unsigned", action="store_const", const=True, help="Unsigned walk")
    p.add_argument("--discrete", action="store_const", const=True, help="Discrete walk (integer t)")

    return parser


def main(argv=None) -> int:
    """Run one command; returns the process exit code."""
    logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return CLI_PARAMS["exit_codes"]["invalid_input"] if e.code else 0

    try:
        params = resolve_params(args.command, args)
        rc = RunConfig(args.command, params)
        print_header(f"pole-signed {args.command}")
        written = COMMANDS[args.command](params, args.out, rc)
    except PoleError as e:
        print_error(str(e))
        logger.debug("Command failed", exc_info=True)
        return e.exit_code
    except OSError as e:
        print_error(f"I/O error: {e}")
        return CLI_PARAMS["exit_codes"]["invalid_input"]

    for path in written:
        print_success(f"Wrote {path}")
    return CLI_PARAMS["exit_codes"]["success"]


if __name__ == "__main__":
    sys.exit(main())
