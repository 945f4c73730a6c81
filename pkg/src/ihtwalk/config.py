"""Experiment configuration: schema, validation, and object construction.

Configs are YAML (JSON is a subset) with three main sections::

    graph:
      kind: hypercube            # hypercube | symmetric | explicit
      dimension: 3               # hypercube only
      # n: 4                     # symmetric only
      # generators: ["(1,2)", [3,2,1,4]]   # cycle strings or one-line lists
      # table: [[0,1],[1,0]]     # explicit only
      # edge_generators: [1]     # explicit only: element indices
    coin:
      kind: grover               # grover | dft | hadamard | identity | random
      seed: 12345                # random only
    final_set: [7]               # optional; defaults per graph kind
    tolerances: {cluster: 1e-7, rank: 1e-8, cps: 1e-10}
    analyses:                    # strings, or one-key maps with options
      - decompose
      - iht
      - simulate: {steps: 5000, initial: uniform}

Generators written as strings are cycle notation ("(1,3)" swaps elements
1 and 3) and are expanded to one-line form during parsing; lists are
one-line form as-is. The expanded forms are kept on the parsed config
for echoing back to the user.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import yaml

from .cayley import CayleyGraph, build_cayley, build_hypercube
from .coins import (CoinOperator, dft, grover, hadamard, identity_coin,
                    random_unitary)
from .errors import ConfigError
from .groups import SymmetricGroup, TableGroup
from .walk import default_final_set

DEFAULT_SEED = 12345
DEFAULT_STEPS = 5000
ANALYSIS_NAMES = ("decompose", "iht", "cps", "symmetries", "sweep", "simulate")
COIN_KINDS = ("grover", "dft", "hadamard", "identity", "random")

PRESET_GRAPHS = {
    "3cube": {"kind": "hypercube", "dimension": 3},
    "4cube": {"kind": "hypercube", "dimension": 4},
    "5cube": {"kind": "hypercube", "dimension": 5},
    # S3 six-cycle: two transpositions
    "s3-2gen": {"kind": "symmetric", "n": 3, "generators": ["(1,2)", "(1,3)"]},
    # S3 with all three transpositions
    "s3-3gen": {"kind": "symmetric", "n": 3,
                "generators": ["(1,2)", "(1,3)", "(2,3)"]},
    # S4, chain-shaped transposition set (diameter 6)
    "s4-path": {"kind": "symmetric", "n": 4,
                "generators": ["(1,2)", "(1,3)", "(2,4)"]},
    # S4, star of transpositions through element 1 (diameter 4)
    "s4-star": {"kind": "symmetric", "n": 4,
                "generators": ["(1,2)", "(1,3)", "(1,4)"]},
    # S4, four transpositions
    "s4-4gen": {"kind": "symmetric", "n": 4,
                "generators": ["(1,2)", "(1,3)", "(3,4)", "(2,3)"]},
}

_CYCLE_RE = re.compile(r"\(\s*([0-9,\s]+?)\s*\)")


def parse_cycle_notation(text: str, n: int, where: str = "generator") -> tuple:
    """Expand a product of cycles like "(1,2)(3,4)" into a one-line tuple.

    Cycle (a, b, c) maps a -> b -> c -> a; elements are 1-based.
    """
    stripped = text.replace(" ", "")
    matches = _CYCLE_RE.findall(stripped)
    if not matches or _CYCLE_RE.sub("", stripped):
        raise ConfigError(f"{where}: cannot parse cycle notation {text!r}")
    image = list(range(1, n + 1))
    for body in matches:
        try:
            cycle = [int(tok) for tok in body.split(",") if tok]
        except ValueError:
            raise ConfigError(f"{where}: bad cycle {body!r} in {text!r}") from None
        if len(set(cycle)) != len(cycle):
            raise ConfigError(f"{where}: repeated element in cycle {body!r}")
        for a in cycle:
            if not 1 <= a <= n:
                raise ConfigError(
                    f"{where}: element {a} out of range 1..{n} in {text!r}")
        for i, a in enumerate(cycle):
            image[a - 1] = cycle[(i + 1) % len(cycle)]
    return tuple(image)


def _parse_generator(value, n: int, where: str) -> tuple:
    if isinstance(value, str):
        return parse_cycle_notation(value, n, where)
    if isinstance(value, (list, tuple)):
        try:
            out = tuple(int(x) for x in value)
        except (TypeError, ValueError):
            raise ConfigError(f"{where}: expected integers, got {value!r}") from None
        if sorted(out) != list(range(1, n + 1)):
            raise ConfigError(
                f"{where}: {value!r} is not a one-line permutation of 1..{n}")
        return out
    raise ConfigError(
        f"{where}: expected a cycle string or a one-line list, got {value!r}")


@dataclass(frozen=True)
class GraphSpec:
    kind: str
    dimension: int | None = None
    n: int | None = None
    generators: tuple = ()
    table: tuple = ()
    edge_generators: tuple = ()
    preset: str | None = None

    def describe(self) -> str:
        if self.preset:
            return self.preset
        if self.kind == "hypercube":
            return f"hypercube:{self.dimension}"
        if self.kind == "symmetric":
            return f"symmetric:{self.n}:{len(self.generators)}gen"
        return f"explicit:{len(self.table)}"


@dataclass(frozen=True)
class CoinSpec:
    kind: str
    seed: int | None = None
    dim: int | None = None

    def describe(self) -> str:
        if self.kind == "random":
            return f"random(seed={self.seed})"
        return self.kind


@dataclass(frozen=True)
class Tolerances:
    cluster: float = 1e-7
    rank: float = 1e-8
    cps: float = 1e-10

    def __post_init__(self):
        for name in ("cluster", "rank", "cps"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v > 0):
                raise ConfigError(f"tolerances.{name}: must be positive, got {v!r}")


@dataclass(frozen=True)
class AnalysisSpec:
    name: str
    options: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExperimentConfig:
    graph: GraphSpec
    coin: CoinSpec
    final_set: tuple | None = None
    tolerances: Tolerances = field(default_factory=Tolerances)
    analyses: tuple = ()
    seed: int = DEFAULT_SEED


def _require_mapping(doc, where: str) -> dict:
    if not isinstance(doc, dict):
        raise ConfigError(f"{where}: expected a mapping, got {type(doc).__name__}")
    return doc


def _parse_graph(doc) -> GraphSpec:
    if isinstance(doc, str):
        return graph_spec_from_shorthand(doc)
    doc = _require_mapping(doc, "graph")
    kind = doc.get("kind")
    if kind == "hypercube":
        dim = doc.get("dimension", doc.get("d"))
        if not isinstance(dim, int) or not 1 <= dim <= 12:
            raise ConfigError(
                f"graph.dimension: hypercube dimension must be an int in "
                f"1..12, got {dim!r}")
        return GraphSpec(kind="hypercube", dimension=dim)
    if kind == "symmetric":
        n = doc.get("n")
        if not isinstance(n, int) or n < 2:
            raise ConfigError(f"graph.n: expected an int >= 2, got {n!r}")
        raw = doc.get("generators")
        if not isinstance(raw, list) or not raw:
            raise ConfigError("graph.generators: expected a non-empty list")
        gens = tuple(_parse_generator(g, n, f"graph.generators[{i}]")
                     for i, g in enumerate(raw))
        return GraphSpec(kind="symmetric", n=n, generators=gens)
    if kind == "explicit":
        table = doc.get("table")
        if not isinstance(table, list) or not table:
            raise ConfigError("graph.table: expected a non-empty list of rows")
        edges = doc.get("edge_generators")
        if not isinstance(edges, list) or not edges:
            raise ConfigError(
                "graph.edge_generators: expected a non-empty list of element "
                "indices")
        try:
            rows = tuple(tuple(int(x) for x in row) for row in table)
            gens = tuple(int(e) for e in edges)
        except (TypeError, ValueError):
            raise ConfigError(
                "graph.table/edge_generators: entries must be integers") from None
        return GraphSpec(kind="explicit", table=rows, edge_generators=gens)
    raise ConfigError(
        f"graph.kind: expected hypercube, symmetric or explicit, got {kind!r}")


def graph_spec_from_shorthand(text: str) -> GraphSpec:
    """CLI shorthand: a preset name or "hypercube:<d>"."""
    if text in PRESET_GRAPHS:
        spec = _parse_graph(dict(PRESET_GRAPHS[text]))
        return GraphSpec(kind=spec.kind, dimension=spec.dimension, n=spec.n,
                         generators=spec.generators, preset=text)
    if text.startswith("hypercube:"):
        try:
            dim = int(text.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"graph: bad hypercube shorthand {text!r}") from None
        return _parse_graph({"kind": "hypercube", "dimension": dim})
    raise ConfigError(
        f"graph: unknown shorthand {text!r}; use hypercube:<d> or one of "
        f"{', '.join(sorted(PRESET_GRAPHS))}")


def _parse_coin(doc) -> CoinSpec:
    if isinstance(doc, str):
        doc = {"kind": doc}
    doc = _require_mapping(doc, "coin")
    kind = doc.get("kind")
    if kind not in COIN_KINDS:
        raise ConfigError(
            f"coin.kind: expected one of {', '.join(COIN_KINDS)}, got {kind!r}")
    seed = doc.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise ConfigError(f"coin.seed: expected an int, got {seed!r}")
    dim = doc.get("dim")
    if dim is not None and (not isinstance(dim, int) or dim < 1):
        raise ConfigError(f"coin.dim: expected a positive int, got {dim!r}")
    return CoinSpec(kind=kind, seed=seed, dim=dim)


def _parse_analyses(doc) -> tuple:
    if doc is None:
        return ()
    if not isinstance(doc, list):
        raise ConfigError("analyses: expected a list")
    out = []
    for i, entry in enumerate(doc):
        if isinstance(entry, str):
            name, options = entry, {}
        elif isinstance(entry, dict) and len(entry) == 1:
            name, options = next(iter(entry.items()))
            if options is None:
                options = {}
            if not isinstance(options, dict):
                raise ConfigError(
                    f"analyses[{i}].{name}: options must be a mapping")
        else:
            raise ConfigError(
                f"analyses[{i}]: expected a name or a one-key mapping")
        if name not in ANALYSIS_NAMES:
            raise ConfigError(
                f"analyses[{i}]: unknown analysis {name!r}; expected one of "
                f"{', '.join(ANALYSIS_NAMES)}")
        out.append(AnalysisSpec(name=name, options=dict(options)))
    return tuple(out)


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a YAML config document."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from exc
    doc = _require_mapping(doc if doc is not None else {}, "config")
    unknown = set(doc) - {"graph", "coin", "final_set", "tolerances",
                          "analyses", "seed"}
    if unknown:
        raise ConfigError(f"config: unknown key(s) {sorted(unknown)}")
    if "graph" not in doc:
        raise ConfigError("graph: section is required")
    if "coin" not in doc:
        raise ConfigError("coin: section is required")
    graph = _parse_graph(doc["graph"])
    coin = _parse_coin(doc["coin"])
    final = doc.get("final_set")
    if final is not None:
        if not isinstance(final, list) or not final:
            raise ConfigError("final_set: expected a non-empty list of vertices")
        final = tuple(int(v) for v in final)
    tol_doc = doc.get("tolerances") or {}
    tol_doc = _require_mapping(tol_doc, "tolerances")
    unknown = set(tol_doc) - {"cluster", "rank", "cps"}
    if unknown:
        raise ConfigError(f"tolerances: unknown key(s) {sorted(unknown)}")
    tolerances = Tolerances(**{k: float(v) for k, v in tol_doc.items()})
    seed = doc.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int):
        raise ConfigError(f"seed: expected an int, got {seed!r}")
    return ExperimentConfig(graph=graph, coin=coin, final_set=final,
                            tolerances=tolerances,
                            analyses=_parse_analyses(doc.get("analyses")),
                            seed=seed)


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def build_graph(spec: GraphSpec) -> CayleyGraph:
    try:
        if spec.kind == "hypercube":
            return build_hypercube(spec.dimension)
        if spec.kind == "symmetric":
            group = SymmetricGroup(spec.n)
            return build_cayley(group, spec.generators)
        if spec.kind == "explicit":
            group = TableGroup([list(row) for row in spec.table])
            gens = [group.unrank(e) for e in spec.edge_generators]
            return build_cayley(group, gens)
    except ValueError as exc:
        raise ConfigError(f"graph: {exc}") from exc
    raise ConfigError(f"graph.kind: unknown kind {spec.kind!r}")


def build_coin(spec: CoinSpec, degree: int, default_seed: int = DEFAULT_SEED
               ) -> CoinOperator:
    if spec.dim is not None and spec.dim != degree:
        raise ConfigError(
            f"coin.dim={spec.dim} is incompatible with the graph degree "
            f"{degree} (fields coin.dim and graph degree must agree)")
    if spec.kind == "grover":
        return grover(degree)
    if spec.kind == "dft":
        return dft(degree)
    if spec.kind == "hadamard":
        if degree != 2:
            raise ConfigError(
                f"coin.kind=hadamard requires a degree-2 graph, got degree "
                f"{degree}")
        return hadamard()
    if spec.kind == "identity":
        return identity_coin(degree)
    if spec.kind == "random":
        seed = spec.seed if spec.seed is not None else default_seed
        return random_unitary(degree, seed)
    raise ConfigError(f"coin.kind: unknown kind {spec.kind!r}")


def resolve_final_set(config: ExperimentConfig, graph: CayleyGraph) -> tuple:
    if config.final_set is None:
        return default_final_set(graph)
    for v in config.final_set:
        if not 0 <= v < graph.n_vertices:
            raise ConfigError(
                f"final_set: vertex {v} out of range [0, {graph.n_vertices})")
    return tuple(sorted(set(config.final_set)))
