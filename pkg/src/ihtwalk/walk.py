"""Walk unitary assembly and final-vertex projectors.

States are plain complex vectors of length N = |G| * d over composite
indices ``idx(v, j) = v * d + j``. One step applies the coin to every
vertex block and then routes each direction component along its edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cayley import CayleyGraph, ShiftMap, shift_map
from .coins import CoinOperator
from .errors import InvariantError
from .groups import BitXorGroup

UNITARITY_TOL = 1e-12


class WalkUnitary:
    """One step of the coined walk: U = shift . (I_v tensor C).

    Stored structurally (d x d coin block plus an index permutation);
    ``dense()`` materializes and caches the N x N matrix for spectral
    work. ``apply`` never needs the dense form.
    """

    def __init__(self, graph: CayleyGraph, coin: CoinOperator):
        if coin.dim != graph.degree:
            raise ValueError(
                f"coin dimension {coin.dim} does not match graph degree "
                f"{graph.degree}")
        self.graph = graph
        self.coin = coin
        self.shift: ShiftMap = shift_map(graph)
        self.n = graph.n_vertices * graph.degree
        self._dense: np.ndarray | None = None

    def dense(self) -> np.ndarray:
        if self._dense is None:
            nv, d = self.graph.n_vertices, self.graph.degree
            m = np.kron(np.eye(nv), self.coin.matrix)
            u = np.empty_like(m)
            u[self.shift.permutation, :] = m
            resid = np.abs(u.conj().T @ u - np.eye(self.n)).max()
            if resid > UNITARITY_TOL:
                raise InvariantError(
                    f"materialized walk unitary failed the unitarity check "
                    f"(residual {resid:.3e})")
            u.setflags(write=False)
            self._dense = u
        return self._dense

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """U psi via block coin mix followed by the shift permutation."""
        psi = np.asarray(psi, dtype=np.complex128)
        if psi.shape != (self.n,):
            raise ValueError(f"state must have shape ({self.n},), got {psi.shape}")
        nv, d = self.graph.n_vertices, self.graph.degree
        mixed = (psi.reshape(nv, d) @ self.coin.matrix.T).ravel()
        out = np.empty_like(mixed)
        out[self.shift.permutation] = mixed
        return out

    def apply_inverse(self, psi: np.ndarray) -> np.ndarray:
        """U^dagger psi: un-shift, then mix with the adjoint coin."""
        psi = np.asarray(psi, dtype=np.complex128)
        if psi.shape != (self.n,):
            raise ValueError(f"state must have shape ({self.n},), got {psi.shape}")
        nv, d = self.graph.n_vertices, self.graph.degree
        unshifted = psi[self.shift.permutation]
        return (unshifted.reshape(nv, d) @ self.coin.matrix.conj()).ravel()

    def __repr__(self) -> str:
        return f"WalkUnitary({self.graph!r}, {self.coin!r})"


def build_unitary(graph: CayleyGraph, coin: CoinOperator) -> WalkUnitary:
    return WalkUnitary(graph, coin)


@dataclass(frozen=True, eq=False)
class FinalProjector:
    """Projector onto all coin states of the chosen final vertices."""

    vertices: tuple
    rows: np.ndarray  # sorted composite indices, d per vertex
    n: int
    degree: int

    @property
    def rank(self) -> int:
        return len(self.rows)

    def weight(self, psi: np.ndarray) -> float:
        """|| Pi psi ||^2."""
        amp = psi[self.rows]
        return float((amp.real ** 2 + amp.imag ** 2).sum())

    def project(self, psi: np.ndarray) -> np.ndarray:
        out = np.zeros_like(psi)
        out[self.rows] = psi[self.rows]
        return out

    def complement(self, psi: np.ndarray) -> np.ndarray:
        out = psi.copy()
        out[self.rows] = 0
        return out


def final_projector(graph: CayleyGraph, final_set) -> FinalProjector:
    verts = sorted({int(v) for v in final_set})
    if not verts:
        raise ValueError("final set must not be empty")
    for v in verts:
        if not 0 <= v < graph.n_vertices:
            raise ValueError(
                f"final vertex {v} out of range [0, {graph.n_vertices})")
    d = graph.degree
    rows = np.array([v * d + j for v in verts for j in range(d)], dtype=np.int64)
    rows.setflags(write=False)
    return FinalProjector(vertices=tuple(verts), rows=rows,
                          n=graph.n_vertices * d, degree=d)


def default_final_set(graph: CayleyGraph) -> tuple:
    """Canonical single final vertex: the all-ones string on hypercubes,
    the identity element's vertex otherwise."""
    if isinstance(graph.group, BitXorGroup):
        return (graph.n_vertices - 1,)
    return (graph.group.rank(graph.group.identity()),)


def basis_state(n: int, index: int) -> np.ndarray:
    psi = np.zeros(n, dtype=np.complex128)
    psi[index] = 1.0
    return psi


def uniform_state(n: int) -> np.ndarray:
    return np.full(n, 1.0 / np.sqrt(n), dtype=np.complex128)


def random_state(n: int, seed: int) -> np.ndarray:
    """Normalized state with iid complex Gaussian amplitudes (PCG64 stream)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return psi / np.linalg.norm(psi)
