"""Coin operators and their permutation symmetries.

Three coin families are built in: the permutation-invariant Grover
reflection, the discrete Fourier transform coin (Hadamard at dimension
2), and Haar-random unitaries obtained by QR-orthogonalizing a complex
Gaussian matrix. ``cps_enumerate`` finds every permutation that fixes a
coin under conjugation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

UNITARITY_TOL = 1e-12
CPS_TOL = 1e-10
CPS_MAX_DIM = 8


@dataclass(frozen=True, eq=False)
class CoinOperator:
    """Unitary acting on the d-dimensional edge-direction space."""

    matrix: np.ndarray
    kind: str
    seed: int | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"coin matrix must be square, got shape {m.shape}")
        resid = np.abs(m.conj().T @ m - np.eye(m.shape[0])).max()
        if resid > UNITARITY_TOL:
            raise ValueError(f"coin is not unitary (residual {resid:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        seed = f", seed={self.seed}" if self.seed is not None else ""
        return f"CoinOperator({self.kind}, dim={self.dim}{seed})"


def grover(d: int) -> CoinOperator:
    """Reflection with diagonal 2/d - 1 and off-diagonal 2/d."""
    if d < 2:
        raise ValueError(f"grover coin needs dimension >= 2, got {d}")
    m = np.full((d, d), 2.0 / d, dtype=np.complex128)
    np.fill_diagonal(m, 2.0 / d - 1.0)
    return CoinOperator(m, "grover")


def dft(d: int) -> CoinOperator:
    """Fourier coin with entries omega**(r*c) / sqrt(d), omega = exp(2i pi/d)."""
    if d < 2:
        raise ValueError(f"dft coin needs dimension >= 2, got {d}")
    r = np.arange(d)
    m = np.exp(2j * np.pi / d * np.outer(r, r)) / math.sqrt(d)
    return CoinOperator(m, "dft")


def hadamard() -> CoinOperator:
    """The 2x2 Hadamard coin (the dimension-2 Fourier coin)."""
    m = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
    return CoinOperator(m, "hadamard")


def identity_coin(d: int) -> CoinOperator:
    if d < 1:
        raise ValueError(f"identity coin needs dimension >= 1, got {d}")
    return CoinOperator(np.eye(d, dtype=np.complex128), "identity")


def random_unitary(d: int, seed: int) -> CoinOperator:
    """Haar-random unitary, reproducible from ``seed``.

    Fills a d x d matrix with standard complex Gaussians from a PCG64
    stream, takes the QR decomposition, and multiplies column j by the
    phase of R[j, j]. The phase fix removes the sign/phase ambiguity of
    QR and makes the distribution exactly Haar.
    """
    if d < 2:
        raise ValueError(f"random coin needs dimension >= 2, got {d}")
    rng = np.random.Generator(np.random.PCG64(seed))
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(a)
    diag = np.diag(r)
    q = q * (diag / np.abs(diag))
    return CoinOperator(q, "random", seed=seed)


def custom_coin(matrix) -> CoinOperator:
    return CoinOperator(np.asarray(matrix, dtype=np.complex128), "custom")


def reversal_permutation(d: int) -> tuple:
    """Index reversal fixing 0: (0, d-1, d-2, ..., 1).

    Together with the identity this is the full conjugation stabilizer of
    the Fourier coin for d >= 3.
    """
    return (0,) + tuple(range(d - 1, 0, -1))


@dataclass(frozen=True)
class CoinPermutationSet:
    """All permutations fixing a coin by conjugation (a subgroup of S_d)."""

    dim: int
    perms: tuple = field(default_factory=tuple)

    @property
    def size(self) -> int:
        return len(self.perms)

    def __contains__(self, perm) -> bool:
        return tuple(perm) in set(self.perms)


def permutation_fixes_coin(perm, matrix: np.ndarray, tol: float = CPS_TOL) -> bool:
    """True if P C P^dagger = C, i.e. C[p(i), p(j)] == C[i, j] for all i, j."""
    p = np.asarray(perm, dtype=np.int64)
    return float(np.abs(matrix[np.ix_(p, p)] - matrix).max()) < tol


def cps_enumerate(coin: CoinOperator, tol: float = CPS_TOL) -> CoinPermutationSet:
    """Exhaustively enumerate the coin's permutation stabilizer.

    Conjugating by a permutation only shuffles entries, so a mismatch is
    either exactly zero or of order one; the default tolerance sits far
    from both.
    """
    d = coin.dim
    if d > CPS_MAX_DIM:
        raise ValueError(
            f"cps enumeration over {d}! permutations is too large (max dim "
            f"{CPS_MAX_DIM})")
    found = [p for p in itertools.permutations(range(d))
             if permutation_fixes_coin(p, coin.matrix, tol)]
    return CoinPermutationSet(dim=d, perms=tuple(found))
