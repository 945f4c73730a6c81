"""Coined discrete-time quantum walks on Cayley graphs.

Builds walk unitaries U = S (I tensor C) from a finite group, a
generating set, and a coin; decomposes them into degenerate eigenphase
clusters; extracts the never-arrival (infinite-hitting-time) subspace
for a chosen set of final vertices; enumerates walk symmetries; and
validates everything against an absorbing-measurement simulation.
"""

from .cayley import (CayleyGraph, GeneratingSet, ShiftMap, build_cayley,
                     build_hypercube, shift_map)
from .coins import (CoinOperator, CoinPermutationSet, cps_enumerate,
                    custom_coin, dft, grover, hadamard, identity_coin,
                    random_unitary, reversal_permutation)
from .errors import (ConfigError, DeadBandError, GraphConnectivityError,
                     InvariantError, WalkError)
from .groups import BitXorGroup, FiniteGroup, SymmetricGroup, TableGroup
from .measured import MeasuredWalkResult, hitting_time, simulate
from .spectral import (Eigencluster, EigenspaceDecomposition, IhtReport,
                       SweepPoint, dark_subspace, decompose, iht_subspace,
                       overlap, principal_angles, sweep_final_sets)
from .symmetry import (JointPermutation, SymmetryReport, classify,
                       generate_candidates, identity_joint, is_shift_automorphism,
                       is_walk_symmetry, joint_matrix)
from .walk import (FinalProjector, WalkUnitary, basis_state, build_unitary,
                   default_final_set, final_projector, random_state,
                   uniform_state)

__version__ = "0.1.0"

__all__ = [
    "BitXorGroup", "CayleyGraph", "CoinOperator", "CoinPermutationSet",
    "ConfigError", "DeadBandError", "Eigencluster",
    "EigenspaceDecomposition", "FinalProjector", "FiniteGroup",
    "GeneratingSet", "GraphConnectivityError", "IhtReport",
    "InvariantError", "JointPermutation", "MeasuredWalkResult", "ShiftMap",
    "SweepPoint", "SymmetricGroup", "SymmetryReport", "TableGroup",
    "WalkError", "WalkUnitary", "basis_state", "build_cayley",
    "build_hypercube", "build_unitary", "classify", "cps_enumerate",
    "custom_coin", "dark_subspace", "decompose", "default_final_set",
    "dft", "final_projector", "generate_candidates", "grover", "hadamard",
    "hitting_time", "identity_coin", "identity_joint", "iht_subspace",
    "is_shift_automorphism", "is_walk_symmetry", "joint_matrix", "overlap",
    "principal_angles", "random_state", "random_unitary",
    "reversal_permutation", "shift_map", "simulate", "sweep_final_sets",
    "uniform_state",
]
