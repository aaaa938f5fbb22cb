"""Finite-dimensional *-algebras given by structure constants.

An algebra of dimension ``n`` is stored as a structure tensor ``c`` with
``e_i e_j = sum_k c[i, j, k] e_k`` together with an antilinear involution
``coords(x*) = S @ conj(coords(x))``.  The involution is not assumed to be
positive: whether an irreducible block admits a *-structure is decided per
block by solving an intertwiner equation.

The representation theory here is purely numerical: the radical comes from
the trace form of the left regular representation, the semisimple quotient is
split by a seeded random central element, and each simple block is realized
on a minimal left ideal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .blocks import BlockLayout
from .errors import DimensionMismatch, NotAnIdeal, SplitFailure
from .linalg import STRUCT_TOL, max_abs

DEFAULT_SEED = 0x5EED
MAX_RESEEDS = 10


@dataclass(frozen=True)
class AxiomReport:
    """Maximal residual per axiom; passes iff every residual is below ``tol``."""

    residuals: dict
    tol: float = STRUCT_TOL
    locations: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r < self.tol for r in self.residuals.values())

    def failures(self) -> dict:
        return {k: r for k, r in self.residuals.items() if not r < self.tol}

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def merged(self, other: "AxiomReport", prefix: str = "") -> "AxiomReport":
        res = dict(self.residuals)
        res.update({prefix + k: v for k, v in other.residuals.items()})
        locs = dict(self.locations)
        locs.update({prefix + k: v for k, v in other.locations.items()})
        return AxiomReport(res, min(self.tol, other.tol), locs)

    def __bool__(self) -> bool:
        return self.passed


def _readonly(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FinStarAlgebra:
    structure: np.ndarray
    star: np.ndarray
    unit: np.ndarray | None = None
    labels: tuple = ()

    def __post_init__(self):
        c = _readonly(self.structure)
        n = c.shape[0]
        if c.shape != (n, n, n):
            raise DimensionMismatch(f"structure tensor must be (n, n, n), got {c.shape}")
        s = _readonly(self.star)
        if s.shape != (n, n):
            raise DimensionMismatch(f"star matrix must be ({n}, {n}), got {s.shape}")
        for arr, name in ((c, "structure"), (s, "star")):
            if arr.size and not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains NaN or Inf")
        object.__setattr__(self, "structure", c)
        object.__setattr__(self, "star", s)
        if self.unit is not None:
            u = _readonly(self.unit)
            if u.shape != (n,):
                raise DimensionMismatch(f"unit must have length {n}")
            object.__setattr__(self, "unit", u)
        labels = tuple(self.labels) if self.labels else tuple(f"e{i}" for i in range(n))
        if len(labels) != n:
            raise DimensionMismatch("one label per basis element required")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_blocks(cls, signature, star=None, labels=()) -> "FinStarAlgebra":
        """Direct sum of full matrix algebras on the matrix-unit basis."""
        lay = BlockLayout.from_signature(signature)
        if not labels:
            labels = tuple(f"E{k}[{a},{b}]" for k, d in enumerate(lay.signature)
                           for a in range(d) for b in range(d))
        return cls(lay.structure_tensor(), lay.star_matrix() if star is None else star,
                   lay.unit(), labels)

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("...i,...j,ijk->...k", np.asarray(x, np.complex128),
                         np.asarray(y, np.complex128), self.structure)

    def adjoint(self, x) -> np.ndarray:
        return np.conj(np.asarray(x, np.complex128)) @ self.star.T

    def basis(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.complex128)

    @cached_property
    def left_regular(self) -> np.ndarray:
        """``L[a]`` is the matrix of ``x -> e_a x``."""
        return self.structure.transpose(0, 2, 1)

    def is_commutative(self, tol: float = STRUCT_TOL) -> bool:
        return max_abs(self.structure - self.structure.transpose(1, 0, 2)) < tol

    def find_unit(self, tol: float = STRUCT_TOL):
        """Coordinates of a two-sided unit, or ``None`` if there is none."""
        if self.dim == 0:
            return np.zeros(0, dtype=np.complex128)
        u, res = _solve_unit(self.structure)
        return u if res < tol else None


@dataclass(frozen=True, eq=False)
class AlgebraRep:
    """A representation given by one ``d x d`` matrix per basis element."""

    algebra: FinStarAlgebra
    matrices: np.ndarray
    star_rep: bool = False

    def __post_init__(self):
        m = _readonly(self.matrices)
        if m.ndim != 3 or m.shape[0] != self.algebra.dim or m.shape[1] != m.shape[2]:
            raise DimensionMismatch(f"expected ({self.algebra.dim}, d, d), got {m.shape}")
        object.__setattr__(self, "matrices", m)

    @property
    def degree(self) -> int:
        return self.matrices.shape[1]

    def __call__(self, x) -> np.ndarray:
        return np.einsum("...i,ijk->...jk", np.asarray(x, np.complex128), self.matrices)

    def multiplicativity_residual(self) -> float:
        A = self.algebra
        lhs = np.einsum("ijk,kab->ijab", A.structure, self.matrices)
        rhs = np.einsum("iab,jbc->ijac", self.matrices, self.matrices)
        return max_abs(lhs - rhs)

    def star_residual(self) -> float:
        # rho(e_a*) = sum_b S[b, a] rho(e_b), since e_a has real coordinates
        img = np.einsum("ba,bij->aij", self.algebra.star, self.matrices)
        return max_abs(img - np.conj(np.swapaxes(self.matrices, 1, 2)))

    def traces(self) -> np.ndarray:
        return np.einsum("ijj->i", self.matrices)

    def fingerprint(self, decimals: int = 8) -> tuple:
        t = self.traces()
        return tuple((round(float(z.real), decimals) + 0.0, round(float(z.imag), decimals) + 0.0) for z in t)

    def conjugated(self, W) -> "AlgebraRep":
        """The representation ``a -> W rho(a) W^{-1}``."""
        W = np.asarray(W, np.complex128)
        return AlgebraRep(self.algebra, W @ self.matrices @ np.linalg.inv(W), self.star_rep)


@dataclass(frozen=True, eq=False)
class Subspace:
    algebra: FinStarAlgebra
    basis: np.ndarray
    is_ideal: bool = False

    def __post_init__(self):
        n = self.algebra.dim
        b = np.asarray(self.basis, np.complex128)
        b = _readonly(b.reshape(n, -1) if n else np.zeros((0, b.shape[-1] if b.ndim == 2 else 0)))
        object.__setattr__(self, "basis", b)

    @classmethod
    def span(cls, algebra: FinStarAlgebra, vectors, ideal: bool = False,
             tol: float = STRUCT_TOL) -> "Subspace":
        """Subspace spanned by the columns of ``vectors``; checked when ``ideal``."""
        vectors = np.asarray(vectors, np.complex128)
        if algebra.dim:
            vectors = vectors.reshape(algebra.dim, -1)
        sub = cls(algebra, linalg.orth(vectors), False)
        if ideal:
            res = sub.ideal_residual()
            if res > tol:
                raise NotAnIdeal(f"subspace is not a two-sided ideal (residual {res:.3e})")
            sub = cls(algebra, sub.basis, True)
        return sub

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def distance(self, x) -> np.ndarray:
        """Distance of (batched) vectors ``x`` from the subspace."""
        x = np.asarray(x, np.complex128)
        P = self.basis
        return np.linalg.norm(x - (x @ P.conj()) @ P.T, axis=-1)

    def contains(self, x, tol: float = STRUCT_TOL) -> bool:
        return bool(np.all(self.distance(x) < tol))

    def ideal_residual(self) -> float:
        if self.dim == 0:
            return 0.0
        A, B = self.algebra, self.basis.T
        E = A.basis()
        left = A.mul(E[:, None, :], B[None, :, :])
        right = A.mul(B[None, :, :], E[:, None, :])
        return float(max(self.distance(left).max(), self.distance(right).max()))

    def orthonormality_residual(self) -> float:
        return max_abs(self.basis.conj().T @ self.basis - np.eye(self.dim))


def verify_star_algebra(A: FinStarAlgebra, tol: float = STRUCT_TOL) -> AxiomReport:
    """Residuals of associativity, unit, and involution axioms."""
    c, S = A.structure, A.star
    res = {}
    lhs = np.einsum("ijm,mkl->ijkl", c, c)
    rhs = np.einsum("jkm,iml->ijkl", c, c)
    res["associativity"] = max_abs(lhs - rhs)
    if A.unit is not None:
        E = A.basis()
        res["unit_left"] = max_abs(A.mul(A.unit, E) - E)
        res["unit_right"] = max_abs(A.mul(E, A.unit) - E)
        res["unit_selfadjoint"] = max_abs(A.adjoint(A.unit) - A.unit)
    res["involutive"] = max_abs(S @ np.conj(S) - np.eye(A.dim))
    # (e_i e_j)* = e_j* e_i*, where e_i* = S[:, i]
    prod_star = A.adjoint(c)
    star_prod = A.mul(S.T[None, :, :], S.T[:, None, :])
    res["antimultiplicative"] = max_abs(prod_star - star_prod)
    # antilinearity holds by construction of the (S, conj) encoding
    res["antilinear"] = 0.0
    return AxiomReport(res, tol)


def jacobson_radical(A: FinStarAlgebra, tol: float = STRUCT_TOL) -> Subspace:
    """Radical as the kernel of the trace form ``(a, b) -> tr L_{ab}``."""
    if A.dim == 0:
        return Subspace(A, np.zeros((0, 0)), True)
    t = np.einsum("kjj->k", A.left_regular)
    G = np.einsum("abk,k->ab", A.structure, t)
    return Subspace(A, linalg.null_space(G.T), True)


def _quotient(A: FinStarAlgebra, tol: float):
    """Complement basis ``Q``, projection ``PQ`` and structure of ``A / rad``."""
    R = jacobson_radical(A, tol).basis
    n = A.dim
    Q = linalg.complement(R, n)
    m = Q.shape[1]
    W = np.linalg.inv(np.concatenate([Q, R], axis=1)) if n else np.zeros((0, 0))
    PQ = W[:m]
    prods = A.mul(Q.T[:, None, :], Q.T[None, :, :])
    cB = prods @ PQ.T
    return Q, PQ, cB, R.shape[1]


def _mulB(cB, x, y):
    return np.einsum("...i,...j,ijk->...k", x, y, cB)


def _central_idempotents(cB, rng, tol):
    m = cB.shape[0]
    D = cB - cB.transpose(1, 0, 2)
    Z = linalg.null_space(D.transpose(1, 2, 0).reshape(m * m, m))
    k = Z.shape[1]
    if k == 1:
        u = _unit_of(cB)
        return [u]
    for _ in range(MAX_RESEEDS):
        r = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        z = Z @ r
        prods = _mulB(cB, z[None, :], Z.T)  # (k, m)
        Mz = Z.conj().T @ prods.T
        lam, vec = np.linalg.eig(Mz)
        scale = max(1.0, np.abs(lam).max())
        gaps = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() < 1e-6 * scale:
            continue
        idem = []
        for p in range(k):
            w = Z @ vec[:, p]
            w2 = _mulB(cB, w, w)
            cfac = np.vdot(w, w2) / np.vdot(w, w)
            idem.append(w / cfac)
        E = np.array(idem)
        sq = _mulB(cB, E, E)
        if max_abs(sq - E) > 1e-8:
            continue
        cross = _mulB(cB, E[:, None, :], E[None, :, :])
        cross[np.arange(k), np.arange(k)] = 0
        if max_abs(cross) > 1e-8:
            continue
        return list(E)
    raise SplitFailure("could not split the center after repeated random draws")


def _solve_unit(c):
    n = c.shape[0]
    # u e_j = e_j  and  e_j u = e_j, rows indexed by (j, k)
    lhs = np.concatenate([c.transpose(1, 2, 0).reshape(n * n, n),
                          c.transpose(0, 2, 1).reshape(n * n, n)])
    rhs = np.concatenate([np.eye(n).reshape(-1)] * 2)
    return linalg.lstsq(lhs, rhs)


def _unit_of(cB):
    u, res = _solve_unit(cB)
    if res > 1e-8:
        raise SplitFailure("semisimple quotient has no unit; radical computation failed")
    return u


def _minimal_left_ideal(cB, Bp, d, rng):
    """Orthonormal basis (in quotient coordinates) of a minimal left ideal of a simple block."""
    if d == 1:
        return Bp
    for _ in range(MAX_RESEEDS):
        x = Bp @ (rng.standard_normal(d * d) + 1j * rng.standard_normal(d * d))
        Rx = Bp.conj().T @ _mulB(cB, Bp.T, x[None, :]).T
        lam = np.linalg.eigvals(Rx)
        scale = max(1.0, np.abs(lam).max())
        lam0 = lam[np.argmin(lam.real + 1e-3 * lam.imag)]
        cluster = lam[np.abs(lam - lam0) < 1e-5 * scale]
        if cluster.size != d:
            continue
        lam0 = cluster.mean()
        _, s, vh = np.linalg.svd(Rx - lam0 * np.eye(d * d))
        if s[-d] > 1e-7 * scale or s[-d - 1] < 1e-4 * scale:
            continue
        V = linalg.orth(Bp @ vh[-d:].conj().T)
        if V.shape[1] == d:
            return V
    raise SplitFailure("could not isolate a minimal left ideal")


def _sort_key(rep: AlgebraRep):
    return (rep.degree, rep.fingerprint())


def wedderburn_blocks(A: FinStarAlgebra, seed: int = DEFAULT_SEED,
                      tol: float = STRUCT_TOL) -> list[AlgebraRep]:
    """Irreducible, pairwise inequivalent representations, one per simple block of ``A / rad``.

    Every representation is a surjection of ``A`` onto one ``Mat(d)``, and
    ``sum d**2 = dim A - dim rad A``.  Output order is deterministic:
    by degree, then by rounded trace fingerprint.
    """
    rng = np.random.default_rng(seed)
    Q, PQ, cB, _ = _quotient(A, tol)
    m = cB.shape[0]
    if m == 0:
        return []
    reps = []
    for e in _central_idempotents(cB, rng, tol):
        Bp = linalg.orth(_mulB(cB, np.eye(m), e[None, :]).T)
        d = int(round(np.sqrt(Bp.shape[1])))
        if d * d != Bp.shape[1]:
            raise SplitFailure(f"block of dimension {Bp.shape[1]} is not a full matrix algebra")
        V = _minimal_left_ideal(cB, Bp, d, rng)
        abar = PQ.T  # row a: image of e_a in the quotient
        prods = _mulB(cB, abar[:, None, :], V.T[None, :, :])  # (n, d, m)
        mats = np.einsum("mi,ajm->aij", V.conj(), prods)
        closure = prods - np.einsum("aij,mi->ajm", mats, V)
        if max_abs(closure) > 1e-7:
            raise SplitFailure("left ideal is not invariant; splitting is unreliable")
        reps.append(AlgebraRep(A, mats))
    reps.sort(key=_sort_key)
    return reps


def unitarize(rep: AlgebraRep, tol: float = STRUCT_TOL) -> AlgebraRep | None:
    """Turn an irreducible block into an equivalent *-representation, if it admits one.

    Solves ``T rho(a) = rho(a*)^H T`` over the basis; a positive definite
    Hermitian solution gives ``T^{1/2} rho T^{-1/2}``.  Returns ``None`` if the
    solution space is zero or the Hermitian solution is indefinite.
    """
    A, d = rep.algebra, rep.degree
    rho = rep.matrices
    rho_star = np.einsum("ba,bij->aij", A.star, rho)
    I = np.eye(d)
    rows = [np.kron(I, r.T) - np.kron(rs.conj().T, I) for r, rs in zip(rho, rho_star)]
    sol = linalg.null_space(np.concatenate(rows) if rows else np.zeros((0, d * d)))
    if sol.shape[1] == 0:
        return None
    if sol.shape[1] > 1:
        raise SplitFailure("intertwiner space has dimension > 1: block is not irreducible")
    T = sol[:, 0].reshape(d, d)
    Th = T + T.conj().T
    if max_abs(Th) < 1e-6 * max_abs(T):
        Th = 1j * (T - T.conj().T)
    Th = 0.5 * (Th + Th.conj().T)
    w, _ = linalg.hermitian_eig(Th, tol=1e-8)
    if w[0] < 0 and w[-1] < 0:
        Th, w = -Th, -w[::-1]
    if w[0] <= 1e-9 * w[-1]:
        return None
    half, neg_half = linalg.psd_sqrt_pair(Th, tol=1e-8)
    out = AlgebraRep(A, half @ rho @ neg_half, star_rep=True)
    if out.star_residual() > tol * max(1.0, max_abs(out.matrices)):
        return None
    return out


def irreducible_star_reps(A: FinStarAlgebra, seed: int = DEFAULT_SEED,
                          tol: float = STRUCT_TOL) -> list[AlgebraRep]:
    """One representative per class of irreducible *-representations of ``A``."""
    out = []
    for block in wedderburn_blocks(A, seed, tol):
        star = unitarize(block, tol)
        if star is not None:
            out.append(star)
    out.sort(key=_sort_key)
    return out


@dataclass(frozen=True, eq=False)
class Envelope:
    """Block-form C*-algebra ``E`` together with the canonical map ``i_A``.

    ``embedding`` has shape ``(dim E, dim A)``: column ``a`` holds the block
    coordinates of ``i_A(e_a)``.  In finite dimensions the enveloping von
    Neumann algebra is the same algebra; ``meta`` records that.
    """

    algebra: FinStarAlgebra
    embedding: np.ndarray
    reps: tuple
    signature: tuple
    meta: dict = field(default_factory=dict)

    def __call__(self, x) -> np.ndarray:
        return np.asarray(x, np.complex128) @ self.embedding.T


def direct_sum_map(reps) -> np.ndarray:
    """Matrix of ``a -> (rho_1(a), ..., rho_k(a))`` in matrix-unit coordinates."""
    if not reps:
        return np.zeros((0, 0))
    cols = [r.matrices.reshape(r.matrices.shape[0], -1) for r in reps]
    return np.concatenate(cols, axis=1).T.copy()


def _envelope_from_reps(A, reps) -> Envelope:
    sig = tuple(r.degree for r in reps)
    E = FinStarAlgebra.from_blocks(sig)
    emb = direct_sum_map(reps) if reps else np.zeros((0, A.dim), np.complex128)
    meta = {"vn_envelope_equals_cstar": True, "kernel_dim": A.dim - linalg.rank(emb) if emb.size else A.dim}
    return Envelope(E, emb, tuple(reps), sig, meta)


def cstar_envelope(A: FinStarAlgebra, seed: int = DEFAULT_SEED,
                   tol: float = STRUCT_TOL) -> Envelope:
    """C*-envelope as the direct sum over irreducible *-representations."""
    return _envelope_from_reps(A, irreducible_star_reps(A, seed, tol))


def hull(A: FinStarAlgebra, X, seed: int = DEFAULT_SEED, reps=None,
         tol: float = STRUCT_TOL) -> list[int]:
    """Indices of irreducible *-representations vanishing on ``X``.

    ``X`` is a :class:`Subspace` or an array whose columns span it.
    """
    basis = X.basis if isinstance(X, Subspace) else np.asarray(X, np.complex128).reshape(A.dim, -1)
    if reps is None:
        reps = irreducible_star_reps(A, seed, tol)
    return [i for i, r in enumerate(reps) if max_abs(r(basis.T)) < tol]


def envelope_of_ideal(A: FinStarAlgebra, B: Subspace, seed: int = DEFAULT_SEED, reps=None,
                      tol: float = STRUCT_TOL) -> Envelope:
    """C*-envelope of an ideal: the blocks of irreducibles outside its hull."""
    res = B.ideal_residual()
    if not B.is_ideal or res > tol:
        raise NotAnIdeal(f"subspace is not a two-sided ideal (residual {res:.3e})")
    if reps is None:
        reps = irreducible_star_reps(A, seed, tol)
    h = set(hull(A, B, reps=reps, tol=tol))
    return _envelope_from_reps(A, [r for i, r in enumerate(reps) if i not in h])
