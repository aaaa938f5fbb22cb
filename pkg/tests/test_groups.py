"""Finite groups, their Hopf algebras and group specs."""
import itertools

import numpy as np
import pytest

from oracles import character_group_table, conjugacy_classes, element_orders, irrep_dims

from hopfduality.errors import BadSpec
from hopfduality.groups import (FLEET_SPECS, FiniteGroup, character_values, cyclic, dihedral,
                                dual_group, find_isomorphism, function_algebra, group_from_spec,
                                group_vn_algebra, hopf_from_spec, identify_group, is_isomorphic,
                                parse_spec, product, quaternion8, symmetric, twisted_hopf)


def _is_group_table(t):
    n = len(t)
    assoc = all(t[t[a, b], c] == t[a, t[b, c]] for a, b, c in itertools.product(range(n), repeat=3))
    latin = all(sorted(t[i]) == list(range(n)) and sorted(t[:, i]) == list(range(n)) for i in range(n))
    return assoc and latin


def test_constructors_brute_force():
    for spec in FLEET_SPECS:
        G = group_from_spec(spec)
        assert _is_group_table(G.table), G.name
    assert [g.order for g in (symmetric(3), dihedral(4), quaternion8(), symmetric(4))] == [6, 8, 8, 24]
    assert element_orders(quaternion8().table) == {1: 1, 2: 1, 4: 6}
    assert element_orders(dihedral(4).table) == {1: 1, 2: 5, 4: 2}


def test_rejects_non_group():
    with pytest.raises(BadSpec):
        FiniteGroup(np.array([[0, 0], [0, 1]]))


def test_abelian_flags():
    assert cyclic(6).is_abelian() and product(cyclic(2), cyclic(4)).is_abelian()
    assert not symmetric(3).is_abelian() and not quaternion8().is_abelian()


def test_function_algebra_is_pointwise():
    G = symmetric(3)
    F = function_algebra(G)
    assert F.signature == (1,) * 6
    # Delta(e_g) = sum over st = g of e_s (x) e_t
    D = F.delta.reshape(6, 6, 6)
    for s, t in itertools.product(range(6), repeat=2):
        assert D[s, t, G.table[s, t]] == 1
    assert np.abs(D).sum() == 36


def test_group_vn_blocks_match_characters():
    for G in (symmetric(3), quaternion8(), dihedral(4), symmetric(4)):
        W = group_vn_algebra(G)
        assert tuple(sorted(W.signature)) == irrep_dims(G.table)
        assert len(W.signature) == len(conjugacy_classes(G.table))


def test_group_vn_embedding_is_left_regular():
    G = symmetric(3)
    W, L = group_vn_algebra(G, with_embedding=True)
    lam = L.T  # row g: coordinates of lambda(g)
    for s, t in itertools.product(range(6), repeat=2):
        assert np.abs(W.algebra.mul(lam[s], lam[t]) - lam[G.table[s, t]]).max() < 1e-9
    for g in range(6):
        # group-like: Delta lambda(g) = lambda(g) (x) lambda(g)
        assert np.abs(W.delta @ lam[g] - np.kron(lam[g], lam[g])).max() < 1e-9


def test_twisted_star():
    n = 5
    Mh = twisted_hopf(n)
    S = Mh.algebra.star
    for g in range(n):
        assert S[(-g) % n, g] == 1
    assert np.array_equal(Mh.kappa, np.eye(n))


def test_dual_group_brute_force():
    for G in (cyclic(6), product(cyclic(2), cyclic(4)), product(cyclic(2), cyclic(2))):
        D = dual_group(G)
        assert element_orders(D.table) == element_orders(character_group_table(G.table))
        chi = character_values(D, G)
        # every row is a homomorphism into the circle
        assert np.abs(chi[:, G.table] - chi[:, :, None] * chi[:, None, :]).max() < 1e-12


def test_isomorphism_search():
    assert is_isomorphic(dihedral(3), symmetric(3))
    assert not is_isomorphic(dihedral(4), quaternion8())
    assert not is_isomorphic(cyclic(8), product(cyclic(2), cyclic(4)))
    iso = find_isomorphism(cyclic(6), product(cyclic(2), cyclic(3)))
    assert iso is not None
    G, H = cyclic(6), product(cyclic(2), cyclic(3))
    iso = np.asarray(iso)
    assert np.array_equal(iso[G.table], H.table[iso[:, None], iso[None, :]])


def test_identify():
    assert identify_group(dihedral(3)) == "S3"
    assert identify_group(quaternion8()) == "Q8"


@pytest.mark.parametrize("bad", [
    "{not json", "[]", '{"n": 3}', '{"type": "cyclic"}', '{"type": "cyclic", "n": 3, "m": 1}',
    '{"type": "frobenius", "n": 3}', '{"type": "product", "factors": []}',
    '{"type": "product", "factors": [{"type": "twisted", "n": 3}]}',
])
def test_parse_errors(bad):
    with pytest.raises(BadSpec):
        group_from_spec(bad)


def test_bad_sizes():
    for spec in ({"type": "cyclic", "n": 0}, {"type": "sym", "n": 7}, {"type": "cyclic", "n": "3"}):
        with pytest.raises(BadSpec):
            group_from_spec(spec)


def test_hopf_from_spec_sides():
    Mh, G = hopf_from_spec({"type": "cyclic", "n": 3}, "groupvn")
    assert G.order == 3 and Mh.is_cocommutative()
    Mh, G = hopf_from_spec('{"type": "twisted", "n": 5}')
    assert G is None and Mh.dim == 5
    with pytest.raises(BadSpec):
        hopf_from_spec({"type": "cyclic", "n": 3}, "neither")
    assert parse_spec('{"type": "quaternion"}') == {"type": "quaternion"}
