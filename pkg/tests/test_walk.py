import numpy as np
import pytest

from ihtwalk.cayley import build_cayley, build_hypercube
from ihtwalk.coins import dft, grover, identity_coin, random_unitary
from ihtwalk.groups import SymmetricGroup
from ihtwalk.walk import (WalkUnitary, basis_state, build_unitary,
                          default_final_set, final_projector, random_state,
                          uniform_state)

from conftest import dense_unitary_oracle

S3_FULL_GENS = [(2, 1, 3), (3, 2, 1), (1, 3, 2)]
S4_STAR_GENS = [(2, 1, 3, 4), (3, 2, 1, 4), (4, 2, 3, 1)]


class TestBuildUnitary:
    def test_dimensions(self):
        u = build_unitary(build_hypercube(3), grover(3))
        assert u.n == 24
        s3 = build_cayley(SymmetricGroup(3), S3_FULL_GENS)
        assert build_unitary(s3, dft(3)).n == 18

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            build_unitary(build_hypercube(3), grover(4))

    @pytest.mark.parametrize("coin_fn", [grover, dft,
                                         lambda d: random_unitary(d, 3)])
    def test_dense_matches_independent_oracle(self, coin_fn):
        graph = build_hypercube(3)
        coin = coin_fn(3)
        u = build_unitary(graph, coin)
        assert np.abs(u.dense() - dense_unitary_oracle(graph, coin)).max() < 1e-14

    def test_dense_unitarity_assorted_configurations(self):
        cases = [(build_hypercube(4), grover(4)),
                 (build_cayley(SymmetricGroup(4), S4_STAR_GENS), dft(3)),
                 (build_cayley(SymmetricGroup(3), S3_FULL_GENS),
                  random_unitary(3, 9))]
        for graph, coin in cases:
            u = build_unitary(graph, coin).dense()
            n = u.shape[0]
            assert np.abs(u.conj().T @ u - np.eye(n)).max() < 1e-12

    def test_identity_coin_is_pure_shift(self):
        graph = build_hypercube(3)
        u = build_unitary(graph, identity_coin(3))
        psi = basis_state(u.n, 0 * 3 + 1)  # vertex 000, direction 1
        out = u.apply(psi)
        expected = basis_state(u.n, 2 * 3 + 1)  # vertex 010, direction 1
        assert np.abs(out - expected).max() < 1e-15


class TestApply:
    def test_matches_dense(self):
        graph = build_cayley(SymmetricGroup(3), S3_FULL_GENS)
        u = build_unitary(graph, dft(3))
        psi = random_state(u.n, 42)
        assert np.abs(u.apply(psi) - u.dense() @ psi).max() < 1e-12

    def test_apply_then_inverse(self):
        u = build_unitary(build_hypercube(4), grover(4))
        psi = random_state(u.n, 7)
        assert np.abs(u.apply_inverse(u.apply(psi)) - psi).max() < 1e-12

    def test_norm_preserved(self):
        u = build_unitary(build_hypercube(3), dft(3))
        psi = random_state(u.n, 1)
        assert abs(np.linalg.norm(u.apply(psi)) - 1.0) < 1e-12

    def test_shape_check(self):
        u = build_unitary(build_hypercube(3), grover(3))
        with pytest.raises(ValueError):
            u.apply(np.zeros(10))

    def test_repeated_identity_coin_stays_basis(self):
        u = build_unitary(build_hypercube(3), identity_coin(3))
        psi = basis_state(u.n, 5)
        for _ in range(6):
            psi = u.apply(psi)
            mags = np.abs(psi)
            assert abs(mags.max() - 1.0) < 1e-12
            assert (mags > 1e-12).sum() == 1


class TestFinalProjector:
    def test_cube_corner(self):
        graph = build_hypercube(3)
        proj = final_projector(graph, [7])
        assert proj.rank == 3
        assert list(proj.rows) == [21, 22, 23]

    def test_s4_identity_vertex(self):
        graph = build_cayley(SymmetricGroup(4), S4_STAR_GENS)
        proj = final_projector(graph, default_final_set(graph))
        assert proj.vertices == (0,)
        assert proj.rank == 3

    def test_all_vertices_is_identity(self):
        graph = build_hypercube(3)
        proj = final_projector(graph, range(8))
        assert proj.rank == 24
        psi = random_state(24, 3)
        assert np.array_equal(proj.project(psi), psi)
        assert np.abs(proj.complement(psi)).max() == 0

    def test_projector_laws(self):
        graph = build_hypercube(3)
        proj = final_projector(graph, [2, 7])
        psi = random_state(24, 11)
        p1 = proj.project(psi)
        assert np.array_equal(proj.project(p1), p1)  # idempotent
        assert abs(proj.weight(psi) - np.linalg.norm(p1) ** 2) < 1e-12
        assert np.abs(p1 + proj.complement(psi) - psi).max() < 1e-15

    def test_validation(self):
        graph = build_hypercube(3)
        with pytest.raises(ValueError, match="empty"):
            final_projector(graph, [])
        with pytest.raises(ValueError, match="range"):
            final_projector(graph, [8])


def test_default_final_set():
    assert default_final_set(build_hypercube(4)) == (15,)
    s3 = build_cayley(SymmetricGroup(3), S3_FULL_GENS)
    assert default_final_set(s3) == (0,)  # identity is lexicographically first


def test_state_helpers():
    assert np.linalg.norm(uniform_state(24)) == pytest.approx(1.0)
    assert np.linalg.norm(random_state(24, 0)) == pytest.approx(1.0)
    b = basis_state(6, 2)
    assert b[2] == 1 and np.abs(b).sum() == 1
    assert np.array_equal(random_state(10, 4), random_state(10, 4))
