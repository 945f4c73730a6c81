"""Eigenphase clustering and never-arrival subspace extraction.

The walk unitary is normal, so a complex Schur decomposition yields an
exactly orthonormal eigenvector set with the eigenvalues on the diagonal
of the triangular factor. Eigenphases are sorted and grouped into
degenerate clusters by a gap threshold; each cluster's restriction to the
final-vertex rows is rank-analyzed to count and extract the eigenvectors
with no support there. Those vectors span the infinite-hitting-time (IHT)
subspace: any initial-state component inside it is never absorbed.

Integer outputs (multiplicities, per-cluster kernel dimensions) must be
exact, so both the phase clustering and the rank decision refuse to
guess: a gap or singular value falling inside the tolerance dead band
raises DeadBandError instead of silently picking a side.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DeadBandError, InvariantError, WalkError
from .walk import FinalProjector, WalkUnitary, default_final_set

DEFAULT_CLUSTER_TOL = 1e-7
DEFAULT_RANK_TOL = 1e-8
DEFAULT_MAX_DIM = 4096
TWO_PI = 2.0 * np.pi


def _as_matrix(u) -> np.ndarray:
    if isinstance(u, WalkUnitary):
        return u.dense()
    return np.asarray(u, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class Eigencluster:
    """One degenerate eigenspace: representative phase + orthonormal basis."""

    phase: float
    basis: np.ndarray  # N x multiplicity, orthonormal columns

    @property
    def multiplicity(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True, eq=False)
class EigenspaceDecomposition:
    clusters: tuple
    n: int

    def multiplicity_counts(self) -> Counter:
        """{eigenspace dimension: number of clusters with that dimension}."""
        return Counter(c.multiplicity for c in self.clusters)

    def phases(self) -> np.ndarray:
        return np.array([c.phase for c in self.clusters])


def decompose(u, cluster_tol: float = DEFAULT_CLUSTER_TOL,
              max_dim: int = DEFAULT_MAX_DIM) -> EigenspaceDecomposition:
    """Full eigendecomposition of the walk unitary with phase clustering.

    Adjacent sorted eigenphases closer than ``cluster_tol`` join one
    cluster (with 2pi wrap-around); any adjacent gap inside
    [cluster_tol/10, cluster_tol*10] raises DeadBandError. Cluster bases
    are re-orthonormalized by QR.
    """
    m = _as_matrix(u)
    n = m.shape[0]
    if n > max_dim:
        raise ValueError(f"matrix dimension {n} exceeds the cap {max_dim}")
    try:
        t, z = scipy.linalg.schur(m, output="complex")
    except Exception as exc:
        raise WalkError(f"eigendecomposition failed: {exc}") from exc
    eigvals = np.diag(t)
    off = np.abs(np.abs(eigvals) - 1.0).max()
    if off > 1e-9:
        raise ValueError(
            f"matrix is not unitary: eigenvalue magnitudes deviate by {off:.3e}")
    phases = np.mod(np.angle(eigvals), TWO_PI)
    order = np.argsort(phases, kind="stable")
    sp = phases[order]

    gaps = np.diff(sp)
    wrap = sp[0] + TWO_PI - sp[-1] if n > 1 else TWO_PI
    all_gaps = np.concatenate([gaps, [wrap]])
    dead = (all_gaps >= cluster_tol / 10) & (all_gaps <= cluster_tol * 10)
    if dead.any():
        worst = all_gaps[dead]
        raise DeadBandError(
            f"eigenphase gap(s) {worst} fall inside the clustering dead band "
            f"[{cluster_tol / 10:.1e}, {cluster_tol * 10:.1e}]; pass an "
            f"explicit cluster_tol")

    labels = np.zeros(n, dtype=np.int64)
    for i in range(1, n):
        labels[i] = labels[i - 1] + (1 if gaps[i - 1] >= cluster_tol else 0)
    if n > 1 and wrap < cluster_tol and labels[-1] != labels[0]:
        labels[labels == labels[-1]] = labels[0]

    clusters = []
    for lab in np.unique(labels):
        members = order[labels == lab]
        cols = z[:, members]
        q, _ = np.linalg.qr(cols)
        rep = float(np.angle(np.exp(1j * phases[members]).mean()) % TWO_PI)
        if TWO_PI - rep < 1e-12:  # boundary rounding artifact, not a phase
            rep = 0.0
        clusters.append(Eigencluster(phase=rep, basis=q))
    clusters.sort(key=lambda c: c.phase)

    total = sum(c.multiplicity for c in clusters)
    if total != n:
        raise InvariantError(
            f"cluster multiplicities sum to {total}, expected {n}")
    return EigenspaceDecomposition(clusters=tuple(clusters), n=n)


def _restricted_rank(basis: np.ndarray, rows: np.ndarray,
                     rank_tol: float) -> tuple:
    """Numerical rank of the basis restricted to ``rows`` plus an
    orthonormal kernel basis (in cluster coordinates)."""
    restricted = basis[rows, :]
    k = basis.shape[1]
    _, svals, vh = np.linalg.svd(restricted, full_matrices=True)
    svals = np.concatenate([svals, np.zeros(k - svals.size)])
    top = svals[0] if svals.size else 0.0
    threshold = rank_tol * max(top, 1.0)
    dead = (svals > threshold / 100) & (svals < threshold * 100)
    if dead.any():
        raise DeadBandError(
            f"singular value(s) {svals[dead]} fall inside the rank dead band "
            f"around threshold {threshold:.3e}; pass an explicit rank_tol")
    rank = int((svals >= threshold * 100).sum())
    kernel = vh.conj().T[:, rank:]
    return rank, kernel


@dataclass(frozen=True, eq=False)
class IhtReport:
    """Per-eigenspace and total dimensions of the never-arrival subspace."""

    per_cluster: tuple  # (multiplicity k, |V_k|) per cluster, in phase order
    total: int
    basis: np.ndarray  # N x total, orthonormal, eigenvectors with no
    # amplitude on the final rows
    final_vertices: tuple
    final_rows: np.ndarray

    def table_rows(self) -> list:
        """Aggregated rows (m_k, k, |V_k|), sorted by k then |V_k| descending."""
        counts = Counter(self.per_cluster)
        return sorted(((m, k, vk) for (k, vk), m in counts.items()),
                      key=lambda row: (-row[1], -row[2]))

    @property
    def exists(self) -> bool:
        return self.total > 0


def iht_subspace(decomp: EigenspaceDecomposition, proj: FinalProjector,
                 rank_tol: float = DEFAULT_RANK_TOL) -> IhtReport:
    """Count and extract, per eigenspace, the vectors vanishing on the
    final rows.

    For a cluster basis B the kernel of B restricted to the final rows
    gives coefficient vectors whose combinations are still eigenvectors
    (same eigenvalue) and have no support on the final vertices.
    """
    if decomp.n != proj.n:
        raise ValueError(
            f"decomposition dimension {decomp.n} does not match projector "
            f"dimension {proj.n}")
    per = []
    pieces = []
    for cluster in decomp.clusters:
        k = cluster.multiplicity
        rank, kernel = _restricted_rank(cluster.basis, proj.rows, rank_tol)
        vk = k - rank
        per.append((k, vk))
        if vk:
            pieces.append(cluster.basis @ kernel)
    basis = (np.hstack(pieces) if pieces
             else np.zeros((decomp.n, 0), dtype=np.complex128))
    leak = (np.abs(basis[proj.rows, :]).max() if basis.size else 0.0)
    if leak > 1e-9:
        raise InvariantError(
            f"extracted subspace has amplitude {leak:.3e} on the final rows")
    return IhtReport(per_cluster=tuple(per), total=basis.shape[1], basis=basis,
                     final_vertices=proj.vertices, final_rows=proj.rows)


def overlap(psi: np.ndarray, report: IhtReport) -> float:
    """Squared projection of a normalized state onto the never-arrival
    subspace: the probability the final set is never reached."""
    psi = np.asarray(psi, dtype=np.complex128)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"state must be normalized, got norm {norm!r}")
    if report.total == 0:
        return 0.0
    value = float((np.abs(report.basis.conj().T @ psi) ** 2).sum())
    return min(max(value, 0.0), 1.0)


def dark_subspace(u, proj: FinalProjector, tol: float = DEFAULT_RANK_TOL,
                  max_iter: int | None = None) -> np.ndarray:
    """Independent route to the never-arrival subspace.

    Iteratively refines D_0 = ker(Pi) by D_{t+1} = {x in D_t : U x in D_t}
    until the dimension stabilizes; the limit is the largest U-invariant
    subspace with no support on the final rows. U restricted to an
    invariant subspace of a unitary is unitary, so the limit is spanned
    by eigenvectors and its dimension equals the spectral count.

    Returns an orthonormal basis (N x dim). Does not touch the
    eigendecomposition path.
    """
    m = _as_matrix(u)
    n = m.shape[0]
    keep = np.setdiff1d(np.arange(n), proj.rows)
    basis = np.eye(n, dtype=np.complex128)[:, keep]
    limit = max_iter if max_iter is not None else n + 1
    for _ in range(limit):
        dim = basis.shape[1]
        if dim == 0:
            return basis
        image = m @ basis
        outside = image - basis @ (basis.conj().T @ image)
        _, svals, vh = np.linalg.svd(outside, full_matrices=True)
        svals = np.concatenate([svals, np.zeros(dim - svals.size)])
        threshold = tol * max(svals[0] if svals.size else 0.0, 1.0)
        kernel = vh.conj().T[:, svals <= threshold]
        if kernel.shape[1] == dim:
            return basis
        basis, _ = np.linalg.qr(basis @ kernel)
    raise WalkError(
        f"dark-subspace refinement did not stabilize within {limit} "
        f"iterations; tolerances are likely inconsistent")


def principal_angles(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Principal angles between the column spans of two orthonormal bases.

    Uses the sine formulation (singular values of the component of ``a``
    outside span(b)), which stays accurate for angles near zero.
    """
    if a.shape[1] != b.shape[1]:
        raise ValueError(
            f"subspace dimensions differ: {a.shape[1]} vs {b.shape[1]}")
    if a.shape[1] == 0:
        return np.zeros(0)
    outside = a - b @ (b.conj().T @ a)
    sines = np.linalg.svd(outside, compute_uv=False)
    return np.arcsin(np.clip(sines, 0.0, 1.0))


@dataclass(frozen=True)
class SweepPoint:
    size: int
    iht_dim: int
    final_set: tuple


def _iht_total(decomp: EigenspaceDecomposition, rows: np.ndarray,
               rank_tol: float) -> int:
    total = 0
    for cluster in decomp.clusters:
        rank, _ = _restricted_rank(cluster.basis, rows, rank_tol)
        total += cluster.multiplicity - rank
    return total


def _rows_for(vertices, degree: int) -> np.ndarray:
    return np.array(sorted(v * degree + j for v in vertices
                           for j in range(degree)), dtype=np.int64)


def sweep_final_sets(u: WalkUnitary, sizes, strategy: str = "nested", *,
                     seed: int = 0, trials: int = 200,
                     cluster_tol: float = DEFAULT_CLUSTER_TOL,
                     rank_tol: float = DEFAULT_RANK_TOL,
                     decomposition: EigenspaceDecomposition | None = None) -> list:
    """Never-arrival dimension as the final set grows.

    ``nested``: the final set grows deterministically from the canonical
    final vertex by descending vertex index; nesting makes the reported
    dimensions monotone non-increasing.

    ``random``: for each size, reports the best (largest) dimension over
    ``trials`` sampled vertex sets, with per-trial streams seeded
    ``seed + trial`` so runs are reproducible; useful for existence
    claims. Trials whose rank decision lands in the dead band are skipped.
    """
    graph = u.graph
    nv, d = graph.n_vertices, graph.degree
    sizes = [int(s) for s in sizes]
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    if sizes and not (1 <= sizes[0] and sizes[-1] <= nv):
        raise ValueError(f"sizes must lie in [1, {nv}]")
    decomp = decomposition or decompose(u, cluster_tol)

    points = []
    if strategy == "nested":
        anchor = default_final_set(graph)[0]
        order = [anchor] + [v for v in range(nv - 1, -1, -1) if v != anchor]
        for size in sizes:
            vertices = tuple(sorted(order[:size]))
            total = _iht_total(decomp, _rows_for(vertices, d), rank_tol)
            points.append(SweepPoint(size=size, iht_dim=total,
                                     final_set=vertices))
    elif strategy == "random":
        for size in sizes:
            best = -1
            best_set = ()
            skipped = 0
            for trial in range(trials):
                rng = np.random.Generator(np.random.PCG64(seed + trial))
                vertices = tuple(sorted(
                    int(v) for v in rng.choice(nv, size=size, replace=False)))
                try:
                    total = _iht_total(decomp, _rows_for(vertices, d), rank_tol)
                except DeadBandError:
                    skipped += 1
                    continue
                if total > best:
                    best, best_set = total, vertices
            if best < 0:
                raise DeadBandError(
                    f"all {trials} random trials at size {size} hit the rank "
                    f"dead band (skipped {skipped})")
            points.append(SweepPoint(size=size, iht_dim=best,
                                     final_set=best_set))
    else:
        raise ValueError(f"unknown sweep strategy {strategy!r}")
    return points
