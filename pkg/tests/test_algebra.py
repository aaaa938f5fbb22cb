"""Finite-dimensional *-algebras: axioms, radical, blocks, envelopes and hulls."""
import numpy as np
import pytest

from oracles import dft_characters, irrep_dims

from hopfduality.algebra import (FinStarAlgebra, Subspace, cstar_envelope, envelope_of_ideal,
                                 hull, irreducible_star_reps, jacobson_radical,
                                 verify_star_algebra, wedderburn_blocks)
from hopfduality.errors import DimensionMismatch, NotAnIdeal
from hopfduality.groups import cyclic, group_star_algebra, quaternion8, symmetric


def dual_numbers():
    c = np.zeros((2, 2, 2))
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
    return FinStarAlgebra(c, np.eye(2), np.array([1, 0]))


def c_plus_dual_numbers():
    """Basis p, u, x with p^2 = p, u^2 = u, ux = xu = x, x^2 = 0, all self-adjoint."""
    c = np.zeros((3, 3, 3))
    c[0, 0, 0] = 1
    c[1, 1, 1] = c[1, 2, 2] = c[2, 1, 2] = 1
    return FinStarAlgebra(c, np.eye(3), np.array([1, 1, 0]))


def test_group_algebra_axioms():
    for G in (cyclic(5), symmetric(3), quaternion8()):
        r = verify_star_algebra(group_star_algebra(G))
        assert r.passed, r.failures()


def test_bad_star_fails_involutivity():
    A = group_star_algebra(cyclic(3))
    bad = FinStarAlgebra(A.structure, 2 * np.eye(3), A.unit)
    r = verify_star_algebra(bad)
    assert not r.passed
    assert "involutive" in r.failures()
    # (x*)* = 4x
    assert abs(r.residuals["involutive"] - 3.0) < 1e-12


def test_shape_validation():
    with pytest.raises(DimensionMismatch):
        FinStarAlgebra(np.zeros((2, 2, 3)), np.eye(2))
    with pytest.raises(DimensionMismatch):
        FinStarAlgebra(np.zeros((2, 2, 2)), np.eye(3))


def test_find_unit():
    A = group_star_algebra(symmetric(3))
    u = A.find_unit()
    assert np.abs(u - A.unit).max() < 1e-12
    c = np.zeros((1, 1, 1))  # zero multiplication has no unit
    assert FinStarAlgebra(c, np.eye(1)).find_unit() is None


def test_radical_semisimple():
    assert jacobson_radical(group_star_algebra(cyclic(3))).dim == 0


def test_radical_dual_numbers():
    R = jacobson_radical(dual_numbers())
    assert R.dim == 1
    x = R.basis[:, 0]
    assert abs(x[0]) < 1e-12
    # the radical element is nilpotent
    A = dual_numbers()
    assert np.abs(A.mul(x, x)).max() < 1e-12


def test_blocks_cyclic_dft():
    n = 4
    A = group_star_algebra(cyclic(n))
    reps = wedderburn_blocks(A)
    assert [r.degree for r in reps] == [1] * n
    got = np.array([r.matrices[:, 0, 0] for r in reps])
    chi = dft_characters(n)
    # every block is one DFT character, each character exactly once
    match = [int(np.argmin(np.abs(chi - g).max(axis=1))) for g in got]
    assert sorted(match) == list(range(n))
    assert max(np.abs(chi[m] - g).max() for m, g in zip(match, got)) < 1e-9


def test_blocks_against_character_oracle():
    for G in (symmetric(3), quaternion8(), symmetric(4)):
        reps = wedderburn_blocks(group_star_algebra(G))
        assert tuple(sorted(r.degree for r in reps)) == irrep_dims(G.table)
        for r in reps:
            assert r.multiplicativity_residual() < 1e-9


def test_star_reps_cyclic3():
    reps = irreducible_star_reps(group_star_algebra(cyclic(3)))
    vals = sorted((complex(r.matrices[1, 0, 0]) for r in reps), key=np.angle)
    expected = sorted(np.exp(2j * np.pi * np.arange(3) / 3), key=np.angle)
    assert np.abs(np.array(vals) - np.array(expected)).max() < 1e-9
    for r in reps:
        assert r.star_residual() < 1e-9


def test_star_reps_dual_numbers():
    reps = irreducible_star_reps(dual_numbers())
    assert len(reps) == 1
    # the nilpotent must go to zero
    assert np.abs(reps[0].matrices[:, 0, 0] - [1, 0]).max() < 1e-12


def test_envelope_s3():
    env = cstar_envelope(group_star_algebra(symmetric(3)))
    assert sorted(env.signature) == [1, 1, 2]
    assert env.meta["vn_envelope_equals_cstar"]
    # the embedding is an injective *-homomorphism for a group algebra
    A = group_star_algebra(symmetric(3))
    E = env.algebra
    x, y = np.random.default_rng(0).normal(size=(2, 6))
    assert np.abs(env(A.mul(x, y)) - E.mul(env(x), env(y))).max() < 1e-9
    assert np.abs(env(A.adjoint(x)) - E.adjoint(env(x))).max() < 1e-9


def test_envelope_dual_numbers():
    env = cstar_envelope(dual_numbers())
    assert env.signature == (1,)
    assert env.meta["kernel_dim"] == 1


def test_hull_of_augmentation_line():
    A = group_star_algebra(cyclic(4))
    reps = irreducible_star_reps(A)
    h = hull(A, np.ones(4), reps=reps)
    assert len(h) == 3
    for i in h:
        assert abs(reps[i].matrices[1, 0, 0] - 1) > 0.5  # nontrivial characters only


def test_ideals_with_equal_hull():
    A = c_plus_dual_numbers()
    B1 = Subspace.span(A, np.array([1, 0, 0]), ideal=True)
    B2 = Subspace.span(A, np.array([[1, 0], [0, 0], [0, 1]]), ideal=True)
    assert B1.dim == 1 and B2.dim == 2
    reps = irreducible_star_reps(A)
    assert hull(A, B1, reps=reps) == hull(A, B2, reps=reps)
    e1, e2 = envelope_of_ideal(A, B1, reps=reps), envelope_of_ideal(A, B2, reps=reps)
    assert e1.signature == e2.signature == (1,)
    v1 = e1(B1.basis.T)
    v2 = e2(B2.basis.T)
    # both envelopes are C, reached through the same character
    assert np.linalg.matrix_rank(v1) == np.linalg.matrix_rank(v2) == 1


def test_span_rejects_non_ideal():
    A = group_star_algebra(cyclic(3))
    with pytest.raises(NotAnIdeal):
        Subspace.span(A, np.array([1, 0, 0]), ideal=True)


def test_zero_subspace():
    A = group_star_algebra(cyclic(3))
    Z = Subspace(A, np.zeros((3, 0)))
    assert Z.dim == 0
    assert Z.ideal_residual() == 0.0


def test_seed_invariance_of_blocks():
    A = group_star_algebra(symmetric(3))
    fps = {tuple(r.fingerprint() for r in irreducible_star_reps(A, seed)) for seed in (0, 1, 99)}
    sigs = {tuple(sorted(r.degree for r in irreducible_star_reps(A, seed))) for seed in (0, 1, 99)}
    assert sigs == {(1, 1, 2)}
    assert len(fps) == 1
