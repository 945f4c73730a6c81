"""Shared helpers: independent dense oracles and per-session caches.

The oracle constructions here deliberately avoid the package's structured
code paths (neighbor tables, shift maps) so that tests compare two
independent routes: group arithmetic is redone inline and dense matrices
are assembled entry by entry.
"""

import itertools

import numpy as np
import pytest

import ihtwalk as iw


def compose_perm(g, h):
    """One-line composition, apply h then g (1-based tuples)."""
    return tuple(g[h[i] - 1] for i in range(len(g)))


def s_n_elements(n):
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]


def dense_shift_oracle(graph):
    """Shift matrix built directly from the group law, not the package's
    neighbor table."""
    group = graph.group
    d = graph.degree
    nv = graph.n_vertices
    s = np.zeros((nv * d, nv * d))
    for v in range(nv):
        g = group.unrank(v)
        for j, h in enumerate(graph.gens.generators):
            w = group.rank(group.compose(h, g))
            s[w * d + j, v * d + j] = 1.0
    return s


def dense_unitary_oracle(graph, coin):
    return dense_shift_oracle(graph) @ np.kron(np.eye(graph.n_vertices),
                                               coin.matrix)


def dense_joint_oracle(p):
    """kron(P_v, P_c) built from identity-matrix row shuffles."""
    nv = len(p.vertex_perm)
    d = len(p.coin_perm)
    pv = np.zeros((nv, nv))
    for v in range(nv):
        pv[p.vertex_perm[v], v] = 1.0
    pc = np.zeros((d, d))
    for j in range(d):
        pc[p.coin_perm[j], j] = 1.0
    return np.kron(pv, pc)


PRESETS = ("3cube", "4cube", "5cube", "s3-2gen", "s3-3gen", "s4-path",
           "s4-star", "s4-4gen")


@pytest.fixture(scope="session")
def preset_graph():
    cache = {}

    def build(name):
        if name not in cache:
            from ihtwalk.config import build_graph, graph_spec_from_shorthand
            cache[name] = build_graph(graph_spec_from_shorthand(name))
        return cache[name]

    return build


@pytest.fixture
def cube3(preset_graph):
    return preset_graph("3cube")
