"""Estimator wrappers."""
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from hopfduality.estimators import HopfDual, StarEnvelope, check_coords
from hopfduality.groups import function_algebra, group_star_algebra, symmetric, twisted_hopf


def test_params_and_clone():
    est = HopfDual(seed=7, tol=1e-10)
    assert est.get_params() == {"seed": 7, "tol": 1e-10}
    c = clone(est)
    assert c.get_params() == est.get_params() and c is not est
    est.set_params(seed=3)
    assert est.seed == 3


def test_not_fitted():
    with pytest.raises(NotFittedError):
        HopfDual().transform(np.zeros((1, 6)))
    with pytest.raises(NotFittedError):
        StarEnvelope().transform(np.zeros(6))


def test_hopf_dual_fit_transform():
    M = function_algebra(symmetric(3))
    est = HopfDual().fit(M)
    assert sorted(est.block_signature_) == [1, 1, 2]
    assert est.n_features_in_ == 6
    X = np.eye(6)
    Y = est.transform(X)
    assert Y.shape == (6, 6)
    # delta^e goes to the unit of the dual
    e = symmetric(3).identity
    assert np.abs(Y[e] - est.dual_.algebra.unit).max() < 1e-9
    assert est.pullback(Y[:1]).shape == (1, 6)


def test_twisted_partition():
    est = HopfDual().fit(twisted_hopf(5))
    assert est.partition_ == {"irreducible": 5, "standard": 1, "nonstandard": 4}
    assert est.ideal_.shape == (5, 1)


def test_star_envelope():
    env = StarEnvelope().fit(group_star_algebra(symmetric(3)))
    assert sorted(env.signature_) == [1, 1, 2]
    assert env.transform(np.ones(6)).shape == (1, 6)


def test_input_validation():
    with pytest.raises(TypeError):
        HopfDual().fit(np.eye(3))
    with pytest.raises(ValueError):
        HopfDual(tol=1.0).fit(twisted_hopf(2))
    with pytest.raises(ValueError):
        check_coords(np.zeros((2, 3)), 4)
    with pytest.raises(ValueError):
        check_coords([[np.inf, 0]], 2)
    with pytest.raises(ValueError):
        check_coords([["a", "b"]], 2)
    assert check_coords([1, 2j], 2).dtype == np.complex128
