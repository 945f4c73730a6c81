"""Command-line interface.

Subcommands: decompose, iht, cps, symmetries, sweep, simulate, reproduce.
Experiments are described either by a YAML config (--config) or by the
--graph/--coin shorthands. Exit codes: 0 success, 2 config error,
3 numerical-tolerance dead band, 4 invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .cayley import CayleyGraph
from .coins import cps_enumerate
from .config import (DEFAULT_SEED, DEFAULT_STEPS, PRESET_GRAPHS,
                     AnalysisSpec, CoinSpec, ExperimentConfig, Tolerances,
                     build_coin, build_graph, graph_spec_from_shorthand,
                     load_config, resolve_final_set)
from .errors import (ConfigError, DeadBandError, GraphConnectivityError,
                     InvariantError)
from .measured import simulate as run_simulation
from .report import (format_float, render_summary, render_summary_csv,
                     render_sweep_csv, render_table, render_tables_csv,
                     table_from_report, to_json, write_atomic)
from .spectral import (decompose, iht_subspace, overlap, sweep_final_sets)
from .symmetry import classify
from .walk import (WalkUnitary, basis_state, final_projector, random_state,
                   uniform_state)

REPRODUCE_TABLES = {
    1: "3cube", 2: "4cube", 3: "5cube", 4: "s3-3gen",
    5: "s4-path", 6: "s4-star", 7: "s4-4gen",
}
SUMMARY_GRAPHS = ("3cube", "4cube", "5cube", "s3-2gen", "s3-3gen",
                  "s4-path", "s4-star", "s4-4gen")
SUMMARY_COINS = ("grover", "dft", "random")


class Emitter:
    """Routes rendered text to stdout and artifacts to the output dir."""

    def __init__(self, out_dir=None, fmt="all", stream=None):
        self.out_dir = out_dir
        self.fmt = fmt
        self.stream = stream if stream is not None else sys.stdout
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)

    def text(self, content: str):
        self.stream.write(content)

    def file(self, name: str, content: str, kind: str):
        if self.out_dir and self.fmt in (kind, "all"):
            write_atomic(os.path.join(self.out_dir, name), content)


def _parse_final_arg(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"--final: expected comma-separated ints, got "
                          f"{text!r}") from None


def _parse_sizes_arg(text, n_vertices):
    if text is None:
        return list(range(1, n_vertices + 1))
    if ":" in text:
        lo, hi = text.split(":", 1)
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise ConfigError(f"--sizes: bad range {text!r}") from None
    return _parse_final_arg(text)


def _meta(config: ExperimentConfig, graph: CayleyGraph) -> dict:
    return {
        "version": __version__,
        "graph": config.graph.describe(),
        "degree": graph.degree,
        "n_vertices": graph.n_vertices,
        "coin": config.coin.describe(),
        "seed": config.seed,
        "prng": "PCG64",
        "tolerances": {"cluster": config.tolerances.cluster,
                       "rank": config.tolerances.rank,
                       "cps": config.tolerances.cps},
    }


def _initial_state(spec: str, u: WalkUnitary, seed: int):
    if spec == "uniform":
        return uniform_state(u.n)
    kind, _, arg = spec.partition(":")
    if kind == "basis":
        idx = int(arg)
        if not 0 <= idx < u.n:
            raise ConfigError(f"simulate.initial: basis index {idx} out of "
                              f"range [0, {u.n})")
        return basis_state(u.n, idx)
    if kind == "vertex":
        v = int(arg)
        if not 0 <= v < u.graph.n_vertices:
            raise ConfigError(f"simulate.initial: vertex {v} out of range")
        d = u.graph.degree
        psi = np.zeros(u.n, dtype=np.complex128)
        psi[v * d:(v + 1) * d] = 1.0 / np.sqrt(d)
        return psi
    if kind == "random":
        return random_state(u.n, int(arg) if arg else seed)
    raise ConfigError(f"simulate.initial: unknown state spec {spec!r}")


def _checkpoints(horizon: int) -> list:
    marks = np.unique(np.geomspace(1, horizon, num=12).astype(np.int64))
    return [int(m) for m in marks]


def run(config: ExperimentConfig, emitter: Emitter) -> dict:
    """Execute the requested analyses in dependency order and emit
    text plus CSV/JSON artifacts. Returns the full JSON payload."""
    graph = build_graph(config.graph)
    coin = build_coin(config.coin, graph.degree, config.seed)
    u = WalkUnitary(graph, coin)
    requested = {a.name for a in config.analyses}
    tol = config.tolerances
    payload = {"meta": _meta(config, graph)}

    needs_decomp = {"decompose", "iht", "sweep", "simulate"} & requested
    decomp = decompose(u, tol.cluster) if needs_decomp else None
    report = None
    proj = None
    if {"iht", "simulate"} & requested:
        proj = final_projector(graph, resolve_final_set(config, graph))
        report = iht_subspace(decomp, proj, tol.rank)

    for analysis in config.analyses:
        name, opts = analysis.name, analysis.options
        if name == "decompose":
            clusters = [{"phase": c.phase, "multiplicity": c.multiplicity}
                        for c in decomp.clusters]
            payload["decompose"] = {"clusters": clusters, "dimension": decomp.n}
            lines = [f"eigenphase clusters ({len(clusters)}) for "
                     f"{config.graph.describe()} + {config.coin.describe()}:"]
            lines += [f"  phase {format_float(c['phase']):>18}  "
                      f"multiplicity {c['multiplicity']}" for c in clusters]
            emitter.text("\n".join(lines) + "\n")
            csv = [f"# ihtwalk decompose, seed={config.seed}",
                   "phase,multiplicity"]
            csv += [f"{format_float(c['phase'])},{c['multiplicity']}"
                    for c in clusters]
            emitter.file("decompose.csv", "\n".join(csv) + "\n", "csv")
            emitter.file("decompose.json", to_json(
                {"meta": payload["meta"], "decompose": payload["decompose"]}),
                "json")
        elif name == "iht":
            art = table_from_report(config.graph.describe(),
                                    config.coin.describe(), report)
            payload["iht"] = {
                "final_set": list(report.final_vertices),
                "rows": [list(r) for r in art.rows],
                "space_dim": art.space_dim,
                "iht_dim": art.iht_dim,
                "verdict": art.verdict,
            }
            if opts.get("include_basis"):
                payload["iht"]["basis"] = report.basis.tolist()
            emitter.text(render_table(art))
            emitter.file("iht.csv", render_tables_csv([art], config.seed), "csv")
            emitter.file("iht.json", to_json(
                {"meta": payload["meta"], "iht": payload["iht"]}), "json")
        elif name == "cps":
            cps = cps_enumerate(coin, tol.cps)
            payload["cps"] = {"size": cps.size,
                              "perms": [list(p) for p in cps.perms]}
            emitter.text(f"coin-permutation symmetries of "
                         f"{config.coin.describe()} (dim {coin.dim}): "
                         f"{cps.size}\n")
            emitter.file("cps.json", to_json(
                {"meta": payload["meta"], "cps": payload["cps"]}), "json")
        elif name == "symmetries":
            rep = classify(graph, coin, tol.cps)
            payload["symmetries"] = {
                "direction_preserving": rep.n_a1,
                "joint": rep.n_a2,
                "walk_symmetries": rep.n_w2,
            }
            emitter.text(
                f"symmetry closure for {config.graph.describe()} + "
                f"{config.coin.describe()}: direction-preserving {rep.n_a1}, "
                f"joint {rep.n_a2}, walk symmetries {rep.n_w2}\n")
            emitter.file("symmetries.json", to_json(
                {"meta": payload["meta"],
                 "symmetries": payload["symmetries"]}), "json")
        elif name == "sweep":
            strategy = opts.get("strategy", "nested")
            sizes = opts.get("sizes") or list(range(1, graph.n_vertices + 1))
            trials = int(opts.get("trials", 200))
            points = sweep_final_sets(
                u, sizes, strategy, seed=config.seed, trials=trials,
                cluster_tol=tol.cluster, rank_tol=tol.rank,
                decomposition=decomp)
            payload["sweep"] = {
                "strategy": strategy,
                "points": [{"size": p.size, "iht_dim": p.iht_dim,
                            "final_set": list(p.final_set)} for p in points],
            }
            lines = [f"sweep ({strategy}) for {config.graph.describe()} + "
                     f"{config.coin.describe()}:"]
            lines += [f"  |F| = {p.size:>4}   |V| = {p.iht_dim}"
                      for p in points]
            emitter.text("\n".join(lines) + "\n")
            emitter.file("sweep.csv", render_sweep_csv(
                points, config.graph.describe(), config.coin.describe(),
                config.seed), "csv")
            emitter.file("sweep.json", to_json(
                {"meta": payload["meta"], "sweep": payload["sweep"]}), "json")
        elif name == "simulate":
            steps = int(opts.get("steps", DEFAULT_STEPS))
            psi0 = _initial_state(opts.get("initial", "uniform"), u,
                                  config.seed)
            result = run_simulation(u, proj, psi0, steps,
                                    measure_initial=bool(
                                        opts.get("measure_initial", False)))
            ov = overlap(psi0, report)
            if result.survival < ov - 1e-9:
                raise InvariantError(
                    f"survival {result.survival!r} fell below the "
                    f"never-arrival overlap {ov!r}")
            curve = result.survival_curve()
            marks = _checkpoints(steps)
            if ov > 1 - 1e-9:
                verdict = "infinite (certified by overlap = 1)"
            elif result.survival > 1e-6:
                verdict = (f"diverging with horizon (survival "
                           f"{format_float(result.survival)})")
            else:
                verdict = format_float(result.hitting_time_truncated)
            payload["simulate"] = {
                "steps": steps,
                "overlap": ov,
                "survival": result.survival,
                "hitting_time_truncated": result.hitting_time_truncated,
                "survival_checkpoints": [
                    {"t": m, "survival": float(curve[m - 1])} for m in marks],
                "hitting_time_verdict": verdict,
            }
            lines = [f"measured walk, {steps} steps, final set "
                     f"{list(report.final_vertices)}:"]
            lines += [f"  t = {m:>6}   survival = "
                      f"{format_float(float(curve[m - 1]))}" for m in marks]
            lines.append(f"  never-arrival overlap = {format_float(ov)}")
            lines.append(f"  hitting time (truncated) = {verdict}")
            emitter.text("\n".join(lines) + "\n")
            emitter.file("simulate.json", to_json(
                {"meta": payload["meta"], "simulate": payload["simulate"]}),
                "json")
    emitter.file("run.json", to_json(payload), "json")
    return payload


def _table_artifacts(preset: str, seed: int, tolerances: Tolerances):
    spec = graph_spec_from_shorthand(preset)
    graph = build_graph(spec)
    arts = []
    for coin_kind in SUMMARY_COINS:
        coin = build_coin(CoinSpec(kind=coin_kind), graph.degree, seed)
        u = WalkUnitary(graph, coin)
        decomp = decompose(u, tolerances.cluster)
        proj = final_projector(graph, resolve_final_set(
            ExperimentConfig(graph=spec, coin=CoinSpec(kind=coin_kind)),
            graph))
        report = iht_subspace(decomp, proj, tolerances.rank)
        label = f"random(seed={seed})" if coin_kind == "random" else coin_kind
        arts.append(table_from_report(preset, label, report))
    return arts


def cmd_reproduce(args, emitter: Emitter, tolerances: Tolerances, seed: int):
    tables = []
    if args.all:
        tables = sorted(REPRODUCE_TABLES)
    elif args.table is not None:
        if args.table == 8:
            args.summary = True
        elif args.table in REPRODUCE_TABLES:
            tables = [args.table]
        else:
            raise ConfigError(f"--table: expected 1..8, got {args.table}")
    for number in tables:
        preset = REPRODUCE_TABLES[number]
        arts = _table_artifacts(preset, seed, tolerances)
        emitter.text(f"== table {number}: {preset} ==\n")
        for art in arts:
            emitter.text(render_table(art) + "\n")
        emitter.file(f"table{number}.csv", render_tables_csv(arts, seed), "csv")
        emitter.file(f"table{number}.json", to_json({
            "table": number, "graph": preset, "seed": seed,
            "sections": [{"coin": a.coin, "rows": [list(r) for r in a.rows],
                          "space_dim": a.space_dim, "iht_dim": a.iht_dim,
                          "verdict": a.verdict} for a in arts],
        }), "json")
    if args.summary or args.all:
        arts = []
        for preset in SUMMARY_GRAPHS:
            arts.extend(_table_artifacts(preset, seed, tolerances))
        emitter.text("== summary ==\n" + render_summary(arts))
        emitter.file("summary.csv", render_summary_csv(arts, seed), "csv")
        emitter.file("summary.json", to_json({
            "seed": seed,
            "cells": [{"graph": a.graph, "coin": a.coin,
                       "space_dim": a.space_dim, "iht_dim": a.iht_dim,
                       "verdict": a.verdict} for a in arts],
        }), "json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ihtwalk",
        description="Coined quantum walks on Cayley graphs: spectral "
                    "never-arrival subspaces, walk symmetries, and "
                    "absorbing-measurement simulation.")
    parser.add_argument("--version", action="version",
                        version=f"ihtwalk {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML experiment config")
    common.add_argument("--out-dir", help="directory for CSV/JSON artifacts")
    common.add_argument("--seed", type=int, default=None,
                        help=f"PRNG seed (default {DEFAULT_SEED})")
    common.add_argument("--tol-cluster", type=float, default=None,
                        help="eigenphase clustering tolerance")
    common.add_argument("--tol-rank", type=float, default=None,
                        help="restricted-rank tolerance")
    common.add_argument("--format", choices=("text", "csv", "json", "all"),
                        default="all", help="which artifact files to write")
    common.add_argument("--graph",
                        help="graph shorthand: hypercube:<d> or a preset "
                             f"({', '.join(sorted(PRESET_GRAPHS))})")
    common.add_argument("--coin",
                        choices=("grover", "dft", "hadamard", "identity",
                                 "random"),
                        help="coin family")
    common.add_argument("--final", help="comma-separated final vertices")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("decompose", parents=[common],
                   help="eigenphase clusters of the walk unitary")
    sub.add_parser("iht", parents=[common],
                   help="never-arrival subspace table for a final set")
    p = sub.add_parser("cps", parents=[common],
                       help="permutations fixing the coin by conjugation")
    p.add_argument("--dim", type=int, help="coin dimension when no graph given")
    sub.add_parser("symmetries", parents=[common],
                   help="classify shift and walk symmetries")
    p = sub.add_parser("sweep", parents=[common],
                       help="never-arrival dimension vs final-set size")
    p.add_argument("--strategy", choices=("nested", "random"),
                   default="nested")
    p.add_argument("--sizes", help="comma list or lo:hi range of set sizes")
    p.add_argument("--trials", type=int, default=200)
    p = sub.add_parser("simulate", parents=[common],
                       help="absorbing-measurement walk simulation")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--initial", default="uniform",
                   help="uniform | basis:<idx> | vertex:<v> | random[:seed]")
    p.add_argument("--measure-initial", action="store_true",
                   help="measure once at t = 0 before stepping")
    p = sub.add_parser("reproduce", parents=[common],
                       help="regenerate the reference result tables")
    p.add_argument("--table", type=int, help="table number 1..8")
    p.add_argument("--summary", action="store_true",
                   help="emit the summary grid (table 8)")
    p.add_argument("--all", action="store_true", help="emit everything")
    return parser


def _config_from_args(args) -> ExperimentConfig:
    if args.config:
        config = load_config(args.config)
    else:
        if not args.graph and args.command != "cps":
            raise ConfigError("either --config or --graph is required")
        if not args.coin:
            raise ConfigError("either --config or --coin is required")
        if args.command == "cps" and not args.graph:
            if not args.dim:
                raise ConfigError("cps without --graph requires --dim")
            graph_spec = graph_spec_from_shorthand(f"hypercube:{args.dim}")
        else:
            graph_spec = graph_spec_from_shorthand(args.graph)
        config = ExperimentConfig(
            graph=graph_spec,
            coin=CoinSpec(kind=args.coin),
            final_set=tuple(_parse_final_arg(args.final)) if args.final
            else None,
        )
    analysis_opts = {}
    if args.command == "sweep":
        graph = build_graph(config.graph)
        analysis_opts = {"strategy": args.strategy,
                         "sizes": _parse_sizes_arg(args.sizes,
                                                   graph.n_vertices),
                         "trials": args.trials}
    elif args.command == "simulate":
        analysis_opts = {"steps": args.steps, "initial": args.initial,
                         "measure_initial": args.measure_initial}
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    tol = config.tolerances
    if args.tol_cluster is not None or args.tol_rank is not None:
        tol = Tolerances(
            cluster=args.tol_cluster if args.tol_cluster is not None
            else tol.cluster,
            rank=args.tol_rank if args.tol_rank is not None else tol.rank,
            cps=tol.cps)
    analyses = config.analyses or (AnalysisSpec(args.command, analysis_opts),)
    return ExperimentConfig(graph=config.graph, coin=config.coin,
                            final_set=config.final_set, tolerances=tol,
                            analyses=analyses,
                            seed=overrides.get("seed", config.seed))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "reproduce":
            seed = args.seed if args.seed is not None else DEFAULT_SEED
            tol = Tolerances(
                cluster=args.tol_cluster if args.tol_cluster is not None
                else Tolerances().cluster,
                rank=args.tol_rank if args.tol_rank is not None
                else Tolerances().rank)
            if not (args.table or args.summary or args.all):
                raise ConfigError(
                    "reproduce requires --table N, --summary or --all")
            emitter = Emitter(args.out_dir, args.format)
            return cmd_reproduce(args, emitter, tol, seed)
        config = _config_from_args(args)
        emitter = Emitter(args.out_dir, args.format)
        run(config, emitter)
        return 0
    except (ConfigError, GraphConnectivityError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DeadBandError as exc:
        print(f"tolerance dead band: {exc}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
