import numpy as np
import pytest

from ihtwalk.cayley import (GeneratingSet, build_cayley, build_hypercube,
                            shift_map)
from ihtwalk.errors import GraphConnectivityError
from ihtwalk.groups import BitXorGroup, SymmetricGroup

S3_CYCLE_GENS = [(2, 1, 3), (3, 2, 1)]
S3_FULL_GENS = [(2, 1, 3), (3, 2, 1), (1, 3, 2)]
S4_PATH_GENS = [(2, 1, 3, 4), (3, 2, 1, 4), (1, 4, 3, 2)]
S4_STAR_GENS = [(2, 1, 3, 4), (3, 2, 1, 4), (4, 2, 3, 1)]


class TestHypercube:
    def test_small_cube(self):
        g = build_hypercube(3)
        assert g.n_vertices == 8
        assert g.degree == 3
        assert list(g.gens.generators) == [1, 2, 4]

    @pytest.mark.parametrize("d,size", [(4, 64), (5, 160)])
    def test_composite_space_size(self, d, size):
        g = build_hypercube(d)
        assert g.n_vertices * g.degree == size

    def test_dimension_bounds(self):
        with pytest.raises(ValueError):
            build_hypercube(0)
        with pytest.raises(ValueError):
            build_hypercube(13)

    def test_neighbors_are_xor(self):
        g = build_hypercube(4)
        for v in range(16):
            for j in range(4):
                assert g.neighbor(v, j) == v ^ (1 << j)


class TestBuildCayley:
    def test_s3_two_generators_is_six_cycle(self):
        g = build_cayley(SymmetricGroup(3), S3_CYCLE_GENS)
        assert g.n_vertices == 6
        assert g.degree == 2
        edges = {frozenset((v, int(w))) for v in range(6)
                 for w in g.neighbors[v]}
        assert len(edges) == 6  # 2-regular connected graph on 6 vertices
        degs = np.zeros(6, int)
        for e in edges:
            for v in e:
                degs[v] += 1
        assert (degs == 2).all()

    def test_left_multiplication_convention(self):
        group = SymmetricGroup(3)
        g = build_cayley(group, S3_FULL_GENS)
        for v, gv in enumerate(group.elements):
            for j, h in enumerate(S3_FULL_GENS):
                expected = tuple(h[gv[i] - 1] for i in range(3))  # h after gv
                assert g.neighbor(v, j) == group.rank(expected)

    def test_disconnected_raises_with_vertex(self):
        with pytest.raises(GraphConnectivityError, match="vertex"):
            build_cayley(SymmetricGroup(4), [(2, 1, 3, 4)])

    def test_generating_set_validation(self):
        group = SymmetricGroup(3)
        with pytest.raises(ValueError, match="identity"):
            GeneratingSet(group, ((1, 2, 3), (2, 1, 3)))
        with pytest.raises(ValueError, match="repeats"):
            GeneratingSet(group, ((2, 1, 3), (2, 1, 3)))
        with pytest.raises(ValueError, match="non-empty"):
            GeneratingSet(group, ())

    def test_non_inverse_closed_warns(self):
        group = SymmetricGroup(3)
        with pytest.warns(UserWarning, match="inverse-closed"):
            build_cayley(group, [(2, 3, 1), (2, 1, 3)])

    def test_involutions_do_not_warn(self):
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            build_cayley(SymmetricGroup(3), S3_FULL_GENS)


class TestDiameter:
    def test_s3_three_generators(self):
        g = build_cayley(SymmetricGroup(3), S3_FULL_GENS)
        assert g.diameter() == 2

    def test_s4_path_generators(self):
        g = build_cayley(SymmetricGroup(4), S4_PATH_GENS)
        assert g.diameter() == 6

    def test_s4_star_generators(self):
        g = build_cayley(SymmetricGroup(4), S4_STAR_GENS)
        assert g.diameter() == 4

    def test_single_edge(self):
        assert build_hypercube(1).diameter() == 1


class TestShiftMap:
    def test_hypercube_example(self):
        g = build_hypercube(3)
        s = shift_map(g)
        # (v=000, j=0) -> (001, 0)
        assert s.permutation[0 * 3 + 0] == 1 * 3 + 0

    def test_is_permutation(self):
        for graph in (build_hypercube(4),
                      build_cayley(SymmetricGroup(3), S3_FULL_GENS)):
            s = shift_map(graph)
            assert sorted(s.permutation) == list(range(s.size))

    def test_preserves_coin_label(self):
        g = build_cayley(SymmetricGroup(4), S4_STAR_GENS)
        s = shift_map(g)
        d = g.degree
        for i, image in enumerate(s.permutation):
            assert i % d == image % d

    def test_involution_generators_square_to_identity(self):
        g = build_hypercube(3)
        p = shift_map(g).permutation
        assert (p[p] == np.arange(p.size)).all()

    def test_s3_transposition_two_steps_return(self):
        g = build_cayley(SymmetricGroup(3), S3_CYCLE_GENS)
        p = shift_map(g).permutation
        ident = g.group.rank(g.group.identity())
        idx = ident * g.degree + 0  # follow label 0 (a transposition)
        assert p[p[idx]] == idx

    def test_regularity_in_and_out(self):
        g = build_cayley(SymmetricGroup(4), S4_PATH_GENS)
        out_deg = np.zeros(g.n_vertices, int)
        in_deg = np.zeros(g.n_vertices, int)
        for v in range(g.n_vertices):
            out_deg[v] = len(g.neighbors[v])
            for w in g.neighbors[v]:
                in_deg[w] += 1
        assert (out_deg == g.degree).all()
        assert (in_deg == g.degree).all()
