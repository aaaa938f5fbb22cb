"""Coinvolutive Hopf-von Neumann algebras in block form.

``M`` is a direct sum of full matrix algebras on the matrix-unit basis, so its
product is fixed by the block signature; the involution is stored separately
because the twisted examples carry a non-standard one.  ``Delta`` is a
``(n*n, n)`` matrix whose column ``c`` holds the coordinates of ``Delta(E_c)``
on the basis ``E_i (x) E_j`` (coordinate ``i*n + j``), and ``Kappa`` is an
``(n, n)`` matrix.

Elements of ``M (x) M`` are often handled as ``n x n`` coefficient matrices
``V = v.reshape(n, n)``.  In that picture the flip is ``V -> V.T``, the map
``phi (x) psi`` is ``V -> phi V psi.T`` and the involution is
``V -> S conj(V) S.T``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .algebra import AxiomReport, FinStarAlgebra, verify_star_algebra
from .blocks import BlockLayout
from .errors import DimensionMismatch, MixedParents
from .linalg import STRUCT_TOL, max_abs

FORMAT_VERSION = 1


@dataclass(frozen=True, eq=False)
class HopfVNAlgebra:
    algebra: FinStarAlgebra
    signature: tuple
    delta: np.ndarray
    kappa: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        sig = tuple(int(d) for d in self.signature)
        object.__setattr__(self, "signature", sig)
        n = self.algebra.dim
        if sum(d * d for d in sig) != n:
            raise DimensionMismatch(f"signature {sig} does not match dimension {n}")
        # the block representation is certified faithful by matching structure constants
        if max_abs(self.algebra.structure - self.layout.structure_tensor()) > STRUCT_TOL:
            raise DimensionMismatch("algebra is not in block form for the given signature")
        D = np.array(self.delta, dtype=np.complex128)
        K = np.array(self.kappa, dtype=np.complex128)
        if D.shape != (n * n, n) or K.shape != (n, n):
            raise DimensionMismatch(f"Delta must be ({n*n}, {n}) and Kappa ({n}, {n})")
        D.setflags(write=False)
        K.setflags(write=False)
        object.__setattr__(self, "delta", D)
        object.__setattr__(self, "kappa", K)
        object.__setattr__(self, "provenance", dict(self.provenance))

    @classmethod
    def from_blocks(cls, signature, delta, kappa, star=None, labels=(),
                    provenance=None) -> "HopfVNAlgebra":
        A = FinStarAlgebra.from_blocks(signature, star=star, labels=labels)
        return cls(A, tuple(signature), delta, kappa, provenance or {})

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def labels(self) -> tuple:
        return self.algebra.labels

    @cached_property
    def layout(self) -> BlockLayout:
        return BlockLayout.from_signature(self.signature)

    @cached_property
    def tensor_layout(self) -> BlockLayout:
        return self.layout.tensor(self.layout)

    @cached_property
    def concrete(self) -> np.ndarray:
        """Operators ``H_b`` of the basis elements on ``H``, shape ``(n, D, D)``."""
        return self.layout.concrete()

    @property
    def hilbert_dim(self) -> int:
        return self.layout.hilbert_dim

    def operator(self, x) -> np.ndarray:
        return self.layout.operator(x)

    def is_commutative(self) -> bool:
        return all(d == 1 for d in self.signature)

    def is_cocommutative(self, tol: float = STRUCT_TOL) -> bool:
        return max_abs(flip_map(self.delta.T, self.dim) - self.delta.T) < tol

    def is_star_concrete(self, tol: float = STRUCT_TOL) -> bool:
        """Whether the block representation intertwines the stored involution with adjoints."""
        return max_abs(self.algebra.star - self.layout.star_matrix()) < tol

    @cached_property
    def commutant(self) -> np.ndarray:
        """Basis of ``M'`` on ``H`` as an array ``(k, D, D)``."""
        return _commutant(self.concrete)

    def tensor_mul(self, v, w) -> np.ndarray:
        return self.tensor_layout.mul(v, w)

    def tensor_adjoint(self, v) -> np.ndarray:
        n, S = self.dim, self.algebra.star
        V = np.asarray(v, np.complex128).reshape(v.shape[:-1] + (n, n))
        out = S @ np.conj(V) @ S.T
        return out.reshape(v.shape)

    def tensor_unit(self) -> np.ndarray:
        u = self.algebra.unit
        return np.outer(u, u).ravel()

    def to_dict(self) -> dict:
        A = self.algebra
        return {
            "format": "hopfvn",
            "version": FORMAT_VERSION,
            "signature": list(self.signature),
            "labels": list(A.labels),
            "structure": _enc(A.structure),
            "unit": _enc(A.unit),
            "star": _enc(A.star),
            "delta": _enc(self.delta),
            "kappa": _enc(self.kappa),
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HopfVNAlgebra":
        if d.get("format") != "hopfvn":
            raise ValueError("not a serialized Hopf-von Neumann algebra")
        A = FinStarAlgebra(_dec(d["structure"]), _dec(d["star"]), _dec(d["unit"]),
                           tuple(d["labels"]))
        return cls(A, tuple(d["signature"]), _dec(d["delta"]), _dec(d["kappa"]),
                   d.get("provenance", {}))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def loads(cls, s: str) -> "HopfVNAlgebra":
        return cls.from_dict(json.loads(s))


def _enc(a) -> dict:
    a = np.asarray(a, np.complex128)
    return {"shape": list(a.shape), "re": a.real.ravel().tolist(), "im": a.imag.ravel().tolist()}


def _dec(d) -> np.ndarray:
    out = np.empty(len(d["re"]), dtype=np.complex128)
    # assign parts separately so signed zeros survive
    out.real = d["re"]
    out.imag = d["im"]
    return out.reshape(d["shape"])


def _commutant(H) -> np.ndarray:
    n, D, _ = H.shape
    I = np.eye(D)

    def system(mats):
        # row-major vec: vec(XY) = kron(I, Y.T) vec X, vec(YX) = kron(Y, I) vec X
        return np.concatenate([np.kron(I, Y.T) - np.kron(Y, I) for Y in mats])

    # a few random elements usually cut the commutant out already
    rng = np.random.default_rng(0)
    coef = rng.standard_normal((3, n)) + 1j * rng.standard_normal((3, n))
    probe = np.einsum("ki,ijl->kjl", coef, H)
    X = linalg.null_space(system(probe))
    basis = X.T.reshape(-1, D, D)
    if max_abs(np.einsum("kij,bjl->kbil", basis, H) - np.einsum("bij,kjl->kbil", H, basis)) > 1e-9:
        basis = linalg.null_space(system(H)).T.reshape(-1, D, D)
    return basis


def flip_map(v, n: int) -> np.ndarray:
    """``theta(a (x) b) = b (x) a`` on (batched) coordinates of length ``n*n``."""
    v = np.asarray(v)
    lead = v.shape[:-1]
    return np.swapaxes(v.reshape(lead + (n, n)), -1, -2).reshape(lead + (n * n,))


def verify_hopf(Mh: HopfVNAlgebra, tol: float = STRUCT_TOL) -> AxiomReport:
    """Residual per axiom of a coinvolutive Hopf-von Neumann algebra."""
    A, n = Mh.algebra, Mh.dim
    c, S, K, Dm = A.structure, A.star, Mh.kappa, Mh.delta
    D3 = Dm.reshape(n, n, n)
    res = {}
    DT = Dm.T
    res["delta_multiplicative"] = max_abs(c @ DT - Mh.tensor_mul(DT[:, None, :], DT[None, :, :]))
    res["delta_star"] = max_abs((Dm @ S).T - Mh.tensor_adjoint(DT))
    res["delta_unital"] = max_abs(Dm @ A.unit - Mh.tensor_unit())
    res["delta_injective"] = float(n - _rank_via_gram(Dm))
    lhs = np.einsum("pqa,ajc->pqjc", D3, D3)
    rhs = np.einsum("ibc,qrb->iqrc", D3, D3)
    res["coassociativity"] = max_abs(lhs - rhs)
    res["kappa_involutive"] = max_abs(K @ K - np.eye(n))
    res["kappa_star"] = max_abs(K @ S - S @ np.conj(K))
    res["kappa_antimultiplicative"] = max_abs(
        c @ K.T - A.mul(K.T[None, :, :], K.T[:, None, :]))
    kk = np.einsum("ia,abc,jb->ijc", K, D3, K)
    theta = (Dm @ K).reshape(n, n, n).transpose(1, 0, 2)
    res["flip"] = max_abs(kk - theta)
    rep = AxiomReport(res, tol)
    return verify_star_algebra(A, tol).merged(rep)


def _rank_via_gram(Dm, rtol: float = 1e-9) -> int:
    if Dm.shape[1] == 0:
        return 0
    w, _ = linalg.hermitian_eig(Dm.conj().T @ Dm, tol=1e-8)
    sv = np.sqrt(np.clip(w, 0.0, None))
    return int(np.sum(sv > rtol * sv[-1]))


@dataclass(frozen=True, eq=False)
class HopfMorphism:
    source: HopfVNAlgebra
    target: HopfVNAlgebra
    phi: np.ndarray

    def __post_init__(self):
        P = np.array(self.phi, dtype=np.complex128)
        if P.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(f"phi must be ({self.target.dim}, {self.source.dim}), got {P.shape}")
        P.setflags(write=False)
        object.__setattr__(self, "phi", P)

    @classmethod
    def identity(cls, Mh: HopfVNAlgebra) -> "HopfMorphism":
        return cls(Mh, Mh, np.eye(Mh.dim))

    def __call__(self, x) -> np.ndarray:
        return np.asarray(x, np.complex128) @ self.phi.T

    def rank(self) -> int:
        return linalg.rank(self.phi)


def compose(g: HopfMorphism, f: HopfMorphism) -> HopfMorphism:
    """``g o f``; ``f.target`` must be the very object ``g.source``."""
    if f.target is not g.source:
        raise MixedParents("cannot compose: target of f is not the source of g")
    return HopfMorphism(f.source, g.target, g.phi @ f.phi)


def verify_morphism(f: HopfMorphism, tol: float = STRUCT_TOL) -> AxiomReport:
    """Residuals for *-homomorphism, Delta- and kappa-compatibility.

    ``phi(1) = 1`` is not required.  ``locations`` names, per check, the
    source basis element carrying the largest residual.
    """
    M, N, P = f.source, f.target, f.phi
    m, n = M.dim, N.dim
    PT = P.T
    D3 = M.delta.reshape(m, m, m)
    # one row per source basis element (first axis)
    per = {
        "multiplicative": (M.algebra.structure @ PT
                           - N.algebra.mul(PT[:, None, :], PT[None, :, :])).reshape(m, -1),
        "star": (P @ M.algebra.star - N.algebra.star @ np.conj(P)).T,
        "delta_compatible": (N.delta @ P - np.einsum("ia,abc,jb->ijc", P, D3, P).reshape(n * n, m)).T,
        "kappa_compatible": (N.kappa @ P - P @ M.kappa).T,
    }
    res, locs = {}, {}
    for name, diff in per.items():
        row = np.abs(diff).max(axis=1) if diff.size else np.zeros(0)
        res[name] = float(row.max()) if row.size else 0.0
        if row.size:
            locs[name] = M.labels[int(row.argmax())]
    return AxiomReport(res, tol, locs)
