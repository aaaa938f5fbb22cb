"""Estimator-style wrappers around envelopes and dualization.

``fit`` takes an algebra object rather than a data matrix; ``transform``
maps coordinate rows through the fitted canonical map.  Parameters follow
the scikit-learn conventions so ``get_params``/``set_params``/``clone`` work.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .algebra import DEFAULT_SEED, FinStarAlgebra, cstar_envelope
from .duality import dualize
from .hopf import HopfVNAlgebra
from .linalg import STRUCT_TOL


def check_coords(X, n_features: int, name: str = "X") -> np.ndarray:
    """Validate coordinate rows: finite, 1-D or 2-D, ``n_features`` columns; returns complex 2-D.

    scikit-learn's own ``check_array`` rejects complex input, hence this helper.
    """
    X = np.asarray(X)
    if X.dtype == object or not (np.issubdtype(X.dtype, np.number) or X.dtype == bool):
        raise ValueError(f"{name} must be numeric")
    X = X.astype(np.complex128)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"{name} must be 1-D or 2-D, got shape {X.shape}")
    if X.shape[1] != n_features:
        raise ValueError(f"{name} has {X.shape[1]} features, expected {n_features}")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains NaN or Inf")
    return X


def _check_tol(tol):
    if not 0 < tol < 1e-3:
        raise ValueError(f"tol must lie in (0, 1e-3), got {tol}")


class StarEnvelope(BaseEstimator):
    """C*-envelope of a finite-dimensional *-algebra."""

    def __init__(self, seed: int = DEFAULT_SEED, tol: float = STRUCT_TOL):
        self.seed = seed
        self.tol = tol

    def fit(self, A: FinStarAlgebra, y=None):
        if not isinstance(A, FinStarAlgebra):
            raise TypeError("fit expects a FinStarAlgebra")
        _check_tol(self.tol)
        env = cstar_envelope(A, self.seed, self.tol)
        self.envelope_ = env
        self.reps_ = list(env.reps)
        self.signature_ = env.signature
        self.n_features_in_ = A.dim
        return self

    def transform(self, X) -> np.ndarray:
        """Coordinates of ``i_A(x)`` in the block algebra, one row per input row."""
        check_is_fitted(self, "envelope_")
        X = check_coords(X, self.n_features_in_)
        return X @ self.envelope_.embedding.T


class HopfDual(BaseEstimator):
    """Dual ``M^`` of a coinvolutive Hopf-von Neumann algebra.

    After ``fit``, ``transform`` applies ``Phi : M_* -> M^`` to predual
    coordinates and ``pullback`` applies ``Phi^ : M^_* -> M``.
    """

    def __init__(self, seed: int = DEFAULT_SEED, tol: float = STRUCT_TOL):
        self.seed = seed
        self.tol = tol

    def fit(self, M: HopfVNAlgebra, y=None):
        if not isinstance(M, HopfVNAlgebra):
            raise TypeError("fit expects a HopfVNAlgebra")
        _check_tol(self.tol)
        dc = dualize(M, self.seed, self.tol)
        self.construction_ = dc
        self.dual_ = dc.dual
        self.ideal_ = dc.ideal.basis
        self.phi_ = dc.phi
        self.block_signature_ = dc.signature
        self.partition_ = dc.partition.sizes
        self.n_features_in_ = M.dim
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "phi_")
        return check_coords(X, self.n_features_in_) @ self.phi_.T

    def pullback(self, Y) -> np.ndarray:
        check_is_fitted(self, "phi_")
        return check_coords(Y, self.phi_.shape[0], "Y") @ self.phi_
