"""The predual ``M_*`` as a convolution *-algebra.

``M_*`` is written on the dual basis ``delta^b`` of the matrix-unit basis of
``M``; a functional ``mu`` has coordinates ``mu_b = mu(E_b)`` and pairs with
``x`` as ``sum_b mu_b x_b``.  The product is ``(mu nu)(x) = (mu (x) nu)(Delta x)``,
so ``delta^a delta^b`` has coordinates ``Delta[a*n + b, :]``.  The involution is
``mu*(x) = conj(mu(kappa(x)*))``.  No unit is assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import AxiomReport, FinStarAlgebra, verify_star_algebra
from .errors import DimensionMismatch
from .hopf import HopfVNAlgebra
from .linalg import STRUCT_TOL, max_abs


@dataclass(frozen=True, eq=False)
class PredualAlgebra:
    parent: HopfVNAlgebra
    algebra: FinStarAlgebra

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def kappa_tilde(self) -> np.ndarray:
        """Matrix of ``mu -> mu o kappa``."""
        return self.parent.kappa.T.copy()

    def pair(self, mu, x) -> np.ndarray:
        return np.asarray(mu, np.complex128) @ np.asarray(x, np.complex128)

    def mul(self, mu, nu) -> np.ndarray:
        return self.algebra.mul(mu, nu)

    def adjoint(self, mu) -> np.ndarray:
        return self.algebra.adjoint(mu)

    @property
    def unit(self):
        return self.algebra.unit

    def kappa_tilde_residual(self) -> float:
        """``kappa~`` is an involutive *-antihomomorphism."""
        A, T = self.algebra, self.kappa_tilde
        anti = max_abs(A.structure @ T.T - A.mul(T.T[None, :, :], T.T[:, None, :]))
        star = max_abs(T @ A.star - A.star @ np.conj(T))
        return max(anti, star, max_abs(T @ T - np.eye(self.dim)))

    def verify(self, tol: float = STRUCT_TOL) -> AxiomReport:
        rep = verify_star_algebra(self.algebra, tol)
        return rep.merged(AxiomReport({"kappa_tilde": self.kappa_tilde_residual()}, tol))


def build_predual(Mh: HopfVNAlgebra) -> PredualAlgebra:
    n = Mh.dim
    c = Mh.delta.reshape(n, n, n)
    S = Mh.algebra.star
    star = (np.conj(S) @ Mh.kappa).T
    A = FinStarAlgebra(c, star, None, tuple(f"w[{l}]" for l in Mh.labels))
    unit = A.find_unit()
    if unit is not None:
        A = FinStarAlgebra(c, star, unit, A.labels)
    return PredualAlgebra(Mh, A)


@dataclass(frozen=True, eq=False)
class CoefficientFunctional:
    """``mu_xy(a) = <a x, y>`` in dual-basis coordinates."""

    x: np.ndarray
    y: np.ndarray
    coords: np.ndarray

    def __call__(self, a) -> complex:
        return complex(self.coords @ np.asarray(a, np.complex128))


def coefficient(Mh: HopfVNAlgebra, x, y) -> CoefficientFunctional:
    x = np.asarray(x, np.complex128)
    y = np.asarray(y, np.complex128)
    D = Mh.hilbert_dim
    if x.shape != (D,) or y.shape != (D,):
        raise DimensionMismatch(f"vectors must have length {D}")
    coords = np.einsum("j,bji,i->b", np.conj(y), Mh.concrete, x)
    return CoefficientFunctional(x, y, coords)


def coefficient_matrix(Mh: HopfVNAlgebra) -> np.ndarray:
    """Coordinates of ``mu_{e_i, e_j}`` for all basis vectors, shape ``(D, D, n)``."""
    return np.einsum("bji->ijb", Mh.concrete)


def mu_series_residual(Mh: HopfVNAlgebra, a, b, x, y) -> float:
    """``(ab)(mu_xy) - sum_alpha mu_{e_alpha y}(a) mu_{x e_alpha}(b)``."""
    E = np.eye(Mh.hilbert_dim)
    ab = Mh.algebra.mul(a, b)
    lhs = coefficient(Mh, x, y)(ab)
    rhs = sum(coefficient(Mh, E[k], y)(a) * coefficient(Mh, x, E[k])(b)
              for k in range(Mh.hilbert_dim))
    return abs(lhs - rhs)
