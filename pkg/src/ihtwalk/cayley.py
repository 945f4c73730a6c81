"""Cayley graphs and their label-preserving shift permutation.

Vertices are group elements in canonical order; the labelled edge ``j``
leads from vertex ``v`` to ``h_j . g_v`` (left multiplication by the
j-th generator). States of the walk live on composite indices
``idx(v, j) = v * degree + j`` (vertex-major), which makes the coin act
as identical d x d blocks and the shift a pure index permutation.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import GraphConnectivityError
from .groups import BitXorGroup, FiniteGroup


@dataclass(frozen=True)
class GeneratingSet:
    """Ordered generators [h_0 .. h_{d-1}] of a Cayley graph."""

    group: FiniteGroup
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("generating set must be non-empty")
        ident = self.group.identity()
        seen = set()
        for i, h in enumerate(gens):
            r = self.group.rank(h)  # also validates membership
            if h == ident:
                raise ValueError(f"generator {i} is the identity")
            if r in seen:
                raise ValueError(f"generator {i} ({h!r}) repeats an earlier one")
            seen.add(r)

    @property
    def degree(self) -> int:
        return len(self.generators)

    def is_inverse_closed(self) -> bool:
        ranks = {self.group.rank(h) for h in self.generators}
        return all(self.group.rank(self.group.inverse(h)) in ranks
                   for h in self.generators)


class CayleyGraph:
    """d-regular labelled graph on a finite group.

    ``neighbors[v, j]`` is the vertex reached from ``v`` along edge label
    ``j``. Connectivity is established at construction by BFS from the
    identity vertex.
    """

    def __init__(self, group: FiniteGroup, gens: GeneratingSet):
        if gens.group is not group:
            raise ValueError("generating set belongs to a different group")
        self.group = group
        self.gens = gens
        self.n_vertices = group.order
        self.degree = gens.degree
        elems = group.elements
        nbr = np.empty((self.n_vertices, self.degree), dtype=np.int64)
        for j, h in enumerate(gens.generators):
            for v, g in enumerate(elems):
                nbr[v, j] = group.rank(group.compose(h, g))
        nbr.setflags(write=False)
        self.neighbors = nbr
        self._check_connected()
        if not gens.is_inverse_closed():
            warnings.warn(
                "generating set is not inverse-closed; the Cayley graph is "
                "directed and edge labels are one-way", stacklevel=3)

    def _check_connected(self):
        seen = np.zeros(self.n_vertices, dtype=bool)
        start = self.group.rank(self.group.identity())
        seen[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in self.neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        if not seen.all():
            missing = int(np.flatnonzero(~seen)[0])
            raise GraphConnectivityError(
                f"generators do not connect the graph: vertex {missing} "
                f"({self.group.unrank(missing)!r}) is unreachable from the identity")

    def neighbor(self, v: int, j: int) -> int:
        return int(self.neighbors[v, j])

    def diameter(self) -> int:
        """Max BFS eccentricity over all source vertices (directed edges)."""
        worst = 0
        for s in range(self.n_vertices):
            dist = np.full(self.n_vertices, -1, dtype=np.int64)
            dist[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.neighbors[v]:
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        queue.append(w)
            worst = max(worst, int(dist.max()))
        return worst

    def __repr__(self) -> str:
        return (f"CayleyGraph({self.group.name}, degree={self.degree}, "
                f"vertices={self.n_vertices})")


@dataclass(frozen=True, eq=False)
class ShiftMap:
    """Bijection on composite indices: (v, j) -> (neighbors[v, j], j)."""

    permutation: np.ndarray
    n_vertices: int
    degree: int

    @property
    def size(self) -> int:
        return self.n_vertices * self.degree


def shift_map(graph: CayleyGraph) -> ShiftMap:
    d = graph.degree
    perm = (graph.neighbors * d + np.arange(d)[None, :]).ravel().astype(np.int64)
    if len(np.unique(perm)) != perm.size:
        raise AssertionError("shift map is not a permutation")
    perm.setflags(write=False)
    return ShiftMap(permutation=perm, n_vertices=graph.n_vertices, degree=d)


def build_cayley(group: FiniteGroup, generators) -> CayleyGraph:
    """Cayley graph of ``group`` with the given ordered generators."""
    return CayleyGraph(group, GeneratingSet(group, tuple(generators)))


def build_hypercube(d: int) -> CayleyGraph:
    """d-dimensional hypercube: Z_2^d with all weight-one generators,
    in ascending bit order."""
    if not 1 <= d <= 12:
        raise ValueError(f"hypercube dimension must be in 1..12, got {d}")
    group = BitXorGroup(d)
    return build_cayley(group, [group.generator(j) for j in range(d)])
