"""*-representations of preduals, standardness and generators.

A representation ``pi`` of ``M_*`` on ``K = C^d`` is stored as the matrices
``X_b = pi(delta^b)``.  Its coefficient elements are the elements
``pi_ab`` of ``M`` with ``mu(pi_ab) = <pi(mu) f_b, f_a>``; on the matrix-unit
basis ``(pi_ab)_b = X_b[a, b]``.  The generator is ``U = sum_b E_b (x) X_b``
in ``M (x) B(K)``; unitarity of ``U`` in that algebra, with the involution of
``M``, is literally the pair of identities defining standardness.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import DEFAULT_SEED, AlgebraRep, Subspace, irreducible_star_reps
from .errors import DegenerateRep, DimensionMismatch, MixedParents, NotAnIdeal, NotStandard
from .linalg import STRUCT_TOL, max_abs
from .predual import PredualAlgebra


@dataclass(frozen=True, eq=False)
class StarRep:
    predual: PredualAlgebra
    matrices: np.ndarray

    def __post_init__(self):
        X = np.array(self.matrices, dtype=np.complex128)
        if X.ndim != 3 or X.shape[0] != self.predual.dim or X.shape[1] != X.shape[2]:
            raise DimensionMismatch(f"expected ({self.predual.dim}, d, d), got {X.shape}")
        X.setflags(write=False)
        object.__setattr__(self, "matrices", X)

    @classmethod
    def from_algebra_rep(cls, P: PredualAlgebra, rep: AlgebraRep) -> "StarRep":
        return cls(P, rep.matrices)

    @property
    def degree(self) -> int:
        return self.matrices.shape[1]

    @property
    def parent(self):
        return self.predual.parent

    def __call__(self, mu) -> np.ndarray:
        return np.einsum("...b,bij->...ij", np.asarray(mu, np.complex128), self.matrices)

    def as_algebra_rep(self) -> AlgebraRep:
        return AlgebraRep(self.predual.algebra, self.matrices, star_rep=True)

    def residuals(self) -> dict:
        r = self.as_algebra_rep()
        return {"multiplicative": r.multiplicativity_residual(), "star": r.star_residual()}

    def conjugated(self, W) -> "StarRep":
        W = np.asarray(W, np.complex128)
        return StarRep(self.predual, W @ self.matrices @ W.conj().T)

    def is_nondegenerate(self) -> bool:
        return linalg.rank(np.concatenate(list(self.matrices), axis=1)) == self.degree

    def fingerprint(self, decimals: int = 8) -> tuple:
        return self.as_algebra_rep().fingerprint(decimals)


def coefficients(pi: StarRep) -> np.ndarray:
    """All coefficient elements, ``C[a, b]`` being the coordinates of ``pi_ab`` in ``M``."""
    return np.transpose(pi.matrices, (1, 2, 0)).copy()


@dataclass(frozen=True, eq=False)
class CoefficientElement:
    rep: StarRep
    alpha: int
    beta: int
    element: np.ndarray

    def residual(self) -> float:
        """``mu(pi_ab) - <pi(mu) f_b, f_a>`` over the dual basis."""
        return max_abs(self.element - self.rep.matrices[:, self.alpha, self.beta])


def coefficient_element(pi: StarRep, alpha: int, beta: int) -> CoefficientElement:
    return CoefficientElement(pi, alpha, beta, coefficients(pi)[alpha, beta])


@dataclass(frozen=True)
class Standardness:
    standard: bool
    residual: float
    left: float
    right: float

    def __bool__(self) -> bool:
        return self.standard


def standardness_residuals(pi: StarRep) -> tuple[float, float]:
    """Maxima of ``sum_g pi*_ga pi_gb - delta_ab 1`` and ``sum_g pi_ag pi*_bg - delta_ab 1``."""
    M = pi.parent.algebra
    C = coefficients(pi)
    Cs = M.adjoint(C)
    d = pi.degree
    one = np.einsum("ab,k->abk", np.eye(d), M.unit)
    left = M.mul(Cs[:, :, None, :], C[:, None, :, :]).sum(axis=0)
    right = M.mul(C[:, None, :, :], Cs[None, :, :, :]).sum(axis=2)
    return max_abs(left - one), max_abs(right - one)


def is_standard(pi: StarRep, tol: float = STRUCT_TOL) -> Standardness:
    if not pi.is_nondegenerate():
        raise DegenerateRep("representation is degenerate; restrict to its nondegenerate part first")
    left, right = standardness_residuals(pi)
    res = max(left, right)
    return Standardness(res < tol, res, left, right)


@dataclass(frozen=True, eq=False)
class Generator:
    """Candidate generator of ``pi``.

    ``U`` is the operator on ``H (x) K`` (index ``i * d + alpha``) and
    ``coords[b]`` the ``B(K)``-component of ``E_b`` in ``U = sum_b E_b (x) coords[b]``.
    ``residuals`` holds ``unitarity`` (in ``M (x) B(K)`` with the involution of
    ``M``), ``pairing``, ``commutant`` and ``concrete_unitarity`` (adjoint of
    the operator ``U``, meaningful when the block representation is a *-map).
    """

    rep: StarRep
    U: np.ndarray
    coords: np.ndarray
    residuals: dict = field(default_factory=dict)

    def passed(self, tol: float = STRUCT_TOL) -> bool:
        keys = ("unitarity", "pairing", "commutant")
        return all(self.residuals[k] < tol for k in keys)


def generator_candidate(pi: StarRep) -> Generator:
    """The operator defined entrywise by ``<U(x (x) f_a), y (x) f_b> = pi_ba(mu_xy)``, unchecked."""
    Mh = pi.parent
    H = Mh.concrete
    D, d = Mh.hilbert_dim, pi.degree
    # mu_{e_i, e_j} has coordinates H_b[j, i]
    mus = np.einsum("bji->ijb", H)
    entries = np.einsum("ijb,bBA->jBiA", mus, pi.matrices)
    U = entries.reshape(D * d, D * d)
    coords, _ = extract_matrices(Mh, U, d)
    return Generator(pi, U, coords, _generator_residuals(pi, U, coords))


def _generator_residuals(pi: StarRep, U, coords) -> dict:
    Mh = pi.parent
    M = Mh.algebra
    n, d = M.dim, pi.degree
    I = np.eye(n)
    # coords of E_b* E_c and E_b E_c*
    star_left = M.mul(M.star.T[:, None, :], I[None, :, :])
    star_right = M.mul(I[:, None, :], M.star.T[None, :, :])
    one = np.einsum("k,ij->kij", M.unit, np.eye(d))
    uu = np.einsum("bck,bji,cjl->kil", star_left, np.conj(coords), coords)
    vv = np.einsum("bck,bij,clj->kil", star_right, coords, np.conj(coords))
    res = {"unitarity": max(max_abs(uu - one), max_abs(vv - one))}
    # U(mu, omega) = omega(pi(mu)) with omega = omega_{f_a, f_b}
    res["pairing"] = max_abs(coords - pi.matrices)
    Id = np.eye(d)
    comm = [max_abs(np.kron(C, Id) @ U - U @ np.kron(C, Id)) for C in Mh.commutant]
    res["commutant"] = max(comm, default=0.0)
    res["concrete_unitarity"] = max_abs(U.conj().T @ U - np.eye(U.shape[0]))
    return res


def check_generator(pi: StarRep, U) -> Generator:
    """Score an arbitrary operator ``U`` on ``H (x) K`` as a generator of ``pi``."""
    coords, _ = extract_matrices(pi.parent, U, pi.degree)
    return Generator(pi, np.asarray(U, np.complex128), coords, _generator_residuals(pi, U, coords))


def build_generator(pi: StarRep, tol: float = STRUCT_TOL) -> Generator:
    st = is_standard(pi, tol)
    if not st.standard:
        raise NotStandard(f"representation is not standard (residual {st.residual:.3e})")
    return generator_candidate(pi)


def extract_matrices(Mh, U, d: int):
    """Least-squares ``X`` with ``U = sum_b kron(H_b, X_b)``; returns ``(X, residual)``."""
    H = Mh.concrete
    D, n = Mh.hilbert_dim, Mh.dim
    U = np.asarray(U, np.complex128)
    if U.shape != (D * d, D * d):
        raise DimensionMismatch(f"U must be {(D * d, D * d)}, got {U.shape}")
    rhs = U.reshape(D, d, D, d).transpose(0, 2, 1, 3).reshape(D * D, d * d)
    X, res = linalg.lstsq(H.reshape(n, D * D).T, rhs)
    return X.reshape(n, d, d), res


def extract_rep(gen: Generator):
    """Read ``pi`` back from ``U``; returns ``(StarRep, fit residual)``."""
    X, res = extract_matrices(gen.rep.parent, gen.U, gen.rep.degree)
    return StarRep(gen.rep.predual, X), res


def kronecker(pi: StarRep, rho: StarRep) -> StarRep:
    """Representation on ``K_pi (x) K_rho`` with coefficients ``pi_ab rho_a'b'``."""
    if pi.predual is not rho.predual:
        raise MixedParents("Kronecker product needs representations of the same predual")
    M = pi.parent.algebra
    A, B = coefficients(pi), coefficients(rho)
    d, e = pi.degree, rho.degree
    prod = M.mul(A[:, None, :, None, :], B[None, :, None, :, :])
    X = np.moveaxis(prod, -1, 0).reshape(M.dim, d * e, d * e)
    return StarRep(pi.predual, X)


def direct_sum(pi: StarRep, rho: StarRep) -> StarRep:
    if pi.predual is not rho.predual:
        raise MixedParents("direct sum needs representations of the same predual")
    d, e = pi.degree, rho.degree
    X = np.zeros((pi.predual.dim, d + e, d + e), dtype=np.complex128)
    X[:, :d, :d] = pi.matrices
    X[:, d:, d:] = rho.matrices
    return StarRep(pi.predual, X)


def nondegenerate_on_ideal(pi: StarRep, ideal: Subspace, tol: float = STRUCT_TOL) -> bool:
    """Whether ``pi(I) K`` spans ``K``."""
    if ideal.algebra is not pi.predual.algebra:
        raise MixedParents("ideal lives in a different algebra")
    if not ideal.is_ideal or ideal.ideal_residual() > tol:
        raise NotAnIdeal("subspace is not a two-sided ideal")
    if ideal.dim == 0:
        return pi.degree == 0
    imgs = pi(ideal.basis.T)
    return linalg.rank(np.concatenate(list(imgs), axis=1)) == pi.degree


def restrict_nondegenerate(pi: StarRep) -> StarRep:
    """Compression to the closed span of ``pi(M_*) K``."""
    V = linalg.orth(np.concatenate(list(pi.matrices), axis=1))
    return StarRep(pi.predual, V.conj().T @ pi.matrices @ V)


def regular_rep(P: PredualAlgebra) -> StarRep:
    """Left multiplication on ``M_*`` in the dual basis (a *-map when that basis is orthonormal for it)."""
    return StarRep(P, P.algebra.left_regular)


def predual_reps(P: PredualAlgebra, seed: int = DEFAULT_SEED,
                 tol: float = STRUCT_TOL) -> list[StarRep]:
    """Irreducible *-representations of the predual, one per class."""
    return [StarRep.from_algebra_rep(P, r) for r in irreducible_star_reps(P.algebra, seed, tol)]
