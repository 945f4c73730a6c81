"""Walk symmetries built from joint vertex/coin permutations.

A joint permutation acts as |v, j> -> |vertex_perm(v), coin_perm(j)>.
It commutes with the shift exactly when relabelling vertices matches
relabelling the edge directions, which is checked combinatorially on
the neighbor table (no matrices). A shift symmetry is a full walk
symmetry iff its coin permutation additionally fixes the coin operator
by conjugation.

Exhaustive search over all |G|! x d! pairs is infeasible, so candidates
come from the Cayley structure: right translations (these commute with
the left-multiplication shift), bit relabellings for the XOR group, and
set-stabilizing conjugations for the symmetric group. The classified
result is the closure of these candidates: a verified subgroup, not an
exhaustiveness proof.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .cayley import CayleyGraph
from .coins import CoinOperator, permutation_fixes_coin
from .errors import InvariantError, WalkError
from .groups import BitXorGroup, SymmetricGroup

CANDIDATE_MAX_ORDER = 120
DEFAULT_CLOSURE_CAP = 10 ** 6


@dataclass(frozen=True)
class JointPermutation:
    """Tensor-product permutation of vertices and coin directions."""

    vertex_perm: tuple
    coin_perm: tuple
    label: str = "explicit"

    def __post_init__(self):
        for name, p in (("vertex_perm", self.vertex_perm),
                        ("coin_perm", self.coin_perm)):
            if sorted(p) != list(range(len(p))):
                raise ValueError(f"{name} {p!r} is not a permutation")

    @property
    def is_direction_preserving(self) -> bool:
        return self.coin_perm == tuple(range(len(self.coin_perm)))

    def compose(self, other: "JointPermutation") -> "JointPermutation":
        """Apply ``other`` first, then self."""
        v = tuple(self.vertex_perm[x] for x in other.vertex_perm)
        c = tuple(self.coin_perm[x] for x in other.coin_perm)
        return JointPermutation(v, c, label="product")

    def inverse(self) -> "JointPermutation":
        v = [0] * len(self.vertex_perm)
        for i, x in enumerate(self.vertex_perm):
            v[x] = i
        c = [0] * len(self.coin_perm)
        for i, x in enumerate(self.coin_perm):
            c[x] = i
        return JointPermutation(tuple(v), tuple(c), label="inverse")

    def key(self) -> tuple:
        return (self.vertex_perm, self.coin_perm)


def identity_joint(n_vertices: int, degree: int) -> JointPermutation:
    return JointPermutation(tuple(range(n_vertices)), tuple(range(degree)),
                            label="identity")


def joint_matrix(p: JointPermutation) -> np.ndarray:
    """Dense matrix of the joint permutation on the composite space."""
    nv = len(p.vertex_perm)
    d = len(p.coin_perm)
    m = np.zeros((nv * d, nv * d))
    for v in range(nv):
        for j in range(d):
            m[p.vertex_perm[v] * d + p.coin_perm[j], v * d + j] = 1.0
    return m


def is_shift_automorphism(p: JointPermutation, graph: CayleyGraph) -> bool:
    """P S P^dagger = S, checked on the neighbor table:
    vertex_perm(h_j . v) == h_{coin_perm(j)} . vertex_perm(v) for all v, j."""
    nv, d = graph.n_vertices, graph.degree
    if len(p.vertex_perm) != nv or len(p.coin_perm) != d:
        raise ValueError("joint permutation does not match the graph dimensions")
    vp = np.asarray(p.vertex_perm, dtype=np.int64)
    cp = np.asarray(p.coin_perm, dtype=np.int64)
    nbr = graph.neighbors
    return bool(np.array_equal(vp[nbr], nbr[vp][:, cp]))


def is_walk_symmetry(p: JointPermutation, graph: CayleyGraph,
                     coin: CoinOperator, tol: float = 1e-10) -> bool:
    """P U P^dagger = U: a shift automorphism whose coin permutation also
    fixes the coin operator."""
    return (is_shift_automorphism(p, graph)
            and permutation_fixes_coin(p.coin_perm, coin.matrix, tol))


def _bit_permutation_candidates(graph: CayleyGraph) -> list:
    import itertools
    group: BitXorGroup = graph.group
    d = group.d
    out = []
    for pi in itertools.permutations(range(d)):
        vp = []
        for v in range(group.order):
            w = 0
            for j in range(d):
                w |= ((v >> j) & 1) << pi[j]
            vp.append(w)
        out.append(JointPermutation(tuple(vp), tuple(pi),
                                    label=f"bit-permutation{pi}"))
    return out


def _conjugation_candidates(graph: CayleyGraph) -> list:
    group: SymmetricGroup = graph.group
    gens = graph.gens.generators
    gen_rank = {group.rank(h): j for j, h in enumerate(gens)}
    out = []
    for sigma in group.elements:
        mapped = []
        ok = True
        for h in gens:
            r = group.rank(group.conjugate(sigma, h))
            if r not in gen_rank:
                ok = False
                break
            mapped.append(gen_rank[r])
        if not ok:
            continue
        vp = tuple(group.rank(group.conjugate(sigma, g))
                   for g in group.elements)
        out.append(JointPermutation(vp, tuple(mapped),
                                    label=f"conjugation{sigma}"))
    return out


def generate_candidates(graph: CayleyGraph) -> list:
    """Structured symmetry candidates from the Cayley construction.

    Always: every right translation v -> v . g with a trivial coin
    action. For the XOR group: all bit relabellings with the induced
    generator permutation. For symmetric groups: conjugations by elements
    that stabilize the generating set setwise. Each candidate is verified
    against the shift before being returned.
    """
    group = graph.group
    if group.order > CANDIDATE_MAX_ORDER:
        raise ValueError(
            f"candidate generation is limited to groups of order "
            f"<= {CANDIDATE_MAX_ORDER}, got {group.order}")
    elems = group.elements
    candidates = []
    for g in elems:
        vp = tuple(group.rank(group.compose(x, g)) for x in elems)
        candidates.append(JointPermutation(
            vp, tuple(range(graph.degree)), label=f"right-translation({g!r})"))
    if isinstance(group, BitXorGroup):
        candidates.extend(_bit_permutation_candidates(graph))
    elif isinstance(group, SymmetricGroup):
        candidates.extend(_conjugation_candidates(graph))
    for p in candidates:
        if not is_shift_automorphism(p, graph):
            raise InvariantError(
                f"structured candidate {p.label} failed the shift check")
    return candidates


@dataclass(frozen=True, eq=False)
class SymmetryReport:
    """Classified closure of the structured candidates.

    ``a1``: direction-preserving shift symmetries (trivial coin action);
    every one of these commutes with the full walk regardless of coin.
    ``a2_extra``: shift symmetries with a nontrivial coin action.
    ``w2``: the subset of all shift symmetries whose coin permutation
    fixes the coin, i.e. the walk symmetries among them. a1 is always
    contained in w2.
    """

    a1: tuple
    a2_extra: tuple
    w2: tuple

    @property
    def n_a1(self) -> int:
        return len(self.a1)

    @property
    def n_a2(self) -> int:
        return len(self.a1) + len(self.a2_extra)

    @property
    def n_w2(self) -> int:
        return len(self.w2)


def classify(graph: CayleyGraph, coin: CoinOperator, tol: float = 1e-10,
             closure_cap: int = DEFAULT_CLOSURE_CAP) -> SymmetryReport:
    """Close the structured candidates under composition and classify."""
    seeds = generate_candidates(graph)
    seen = {}
    queue = deque()
    for p in seeds + [identity_joint(graph.n_vertices, graph.degree)]:
        if p.key() not in seen:
            seen[p.key()] = p
            queue.append(p)
    generators = list(seen.values())
    while queue:
        p = queue.popleft()
        for g in generators:
            q = p.compose(g)
            if q.key() not in seen:
                if len(seen) >= closure_cap:
                    raise WalkError(
                        f"symmetry closure exceeded the cap {closure_cap}")
                seen[q.key()] = q
                queue.append(q)
    members = list(seen.values())
    a1 = tuple(p for p in members if p.is_direction_preserving)
    a2_extra = tuple(p for p in members if not p.is_direction_preserving)
    w2 = tuple(p for p in members
               if permutation_fixes_coin(p.coin_perm, coin.matrix, tol))
    return SymmetryReport(a1=a1, a2_extra=a2_extra, w2=w2)
