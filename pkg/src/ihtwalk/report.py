"""Result tables and deterministic text/CSV/JSON rendering.

Identical inputs must produce byte-identical files, so everything here
avoids timestamps and unordered iteration, and floats are printed with
12 significant digits (round-half-even).
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass

import numpy as np

from .errors import InvariantError
from .spectral import IhtReport


def format_float(x: float) -> str:
    return f"{float(x):.12g}"


def _round_floats(obj):
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(format_float(float(obj)))
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _round_floats(obj.tolist())
    if isinstance(obj, complex):
        return {"re": _round_floats(obj.real), "im": _round_floats(obj.imag)}
    return obj


@dataclass(frozen=True)
class TableArtifact:
    """One decomposition table: eigenspace rows plus totals and verdict."""

    graph: str
    coin: str
    rows: tuple  # (m_k, k, |V_k|)
    space_dim: int
    iht_dim: int

    def __post_init__(self):
        dim = sum(m * k for m, k, _ in self.rows)
        tot = sum(m * vk for m, _, vk in self.rows)
        if dim != self.space_dim or tot != self.iht_dim:
            raise InvariantError(
                f"table accounting identity violated for {self.graph}/"
                f"{self.coin}: sum m_k*k = {dim} (expected {self.space_dim}), "
                f"sum m_k*|V_k| = {tot} (expected {self.iht_dim})")

    @property
    def verdict(self) -> str:
        return ("infinite hitting time exists" if self.iht_dim > 0
                else "no infinite hitting time")


def table_from_report(graph: str, coin: str, report: IhtReport) -> TableArtifact:
    rows = tuple(report.table_rows())
    space = sum(k for k, _ in report.per_cluster)
    return TableArtifact(graph=graph, coin=coin, rows=rows,
                         space_dim=space, iht_dim=report.total)


def render_table(artifact: TableArtifact) -> str:
    out = io.StringIO()
    out.write(f"graph: {artifact.graph}    coin: {artifact.coin}\n")
    out.write(f"{'m_k':>5} {'k':>5} {'|V_k|':>6}\n")
    for m, k, vk in artifact.rows:
        out.write(f"{m:>5} {k:>5} {vk:>6}\n")
    out.write(f"|H| = {artifact.space_dim}    |V| = {artifact.iht_dim}\n")
    out.write(f"verdict: {artifact.verdict}\n")
    return out.getvalue()


def render_tables_csv(artifacts, seed: int) -> str:
    lines = [f"# ihtwalk decomposition tables, seed={seed}",
             "graph,coin,k,m_k,V_k"]
    for art in artifacts:
        for m, k, vk in art.rows:
            lines.append(f"{art.graph},{art.coin},{k},{m},{vk}")
    return "\n".join(lines) + "\n"


def render_summary(artifacts) -> str:
    """Summary grid: one row per coin, one column per graph, plus the
    space dimension row."""
    graphs = []
    for art in artifacts:
        if art.graph not in graphs:
            graphs.append(art.graph)
    coins = []
    for art in artifacts:
        if art.coin not in coins:
            coins.append(art.coin)
    cell = {(a.graph, a.coin): a for a in artifacts}
    width = max(len(g) for g in graphs) + 2
    label_w = max(len(f"|V| {c}") for c in coins) + 2
    out = io.StringIO()
    out.write(" " * label_w + "".join(f"{g:>{width}}" for g in graphs) + "\n")
    for c in coins:
        row = [f"{'|V| ' + c:<{label_w}}"]
        for g in graphs:
            art = cell.get((g, c))
            row.append(f"{art.iht_dim if art else '-':>{width}}")
        out.write("".join(row) + "\n")
    row = [f"{'|H|':<{label_w}}"]
    for g in graphs:
        arts = [a for a in artifacts if a.graph == g]
        row.append(f"{arts[0].space_dim:>{width}}")
    out.write("".join(row) + "\n")
    return out.getvalue()


def render_summary_csv(artifacts, seed: int) -> str:
    lines = [f"# ihtwalk summary, seed={seed}",
             "graph,coin,space_dim,iht_dim,verdict"]
    for art in artifacts:
        lines.append(f"{art.graph},{art.coin},{art.space_dim},{art.iht_dim},"
                     f"{art.verdict}")
    return "\n".join(lines) + "\n"


def render_sweep_csv(points, graph: str, coin: str, seed: int) -> str:
    lines = [f"# ihtwalk sweep, graph={graph}, coin={coin}, seed={seed}",
             "final_set_size,iht_dim"]
    for p in points:
        lines.append(f"{p.size},{p.iht_dim}")
    return "\n".join(lines) + "\n"


def to_json(payload: dict) -> str:
    return json.dumps(_round_floats(payload), indent=2, sort_keys=True) + "\n"


def write_atomic(path, text: str):
    """Write via a temp file + rename so partially written outputs never
    appear under the final name."""
    path = os.fspath(path)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)
