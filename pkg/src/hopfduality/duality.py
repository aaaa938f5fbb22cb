"""The dual ``M^`` of a coinvolutive Hopf-von Neumann algebra, without Haar weights.

Pipeline: enumerate the irreducible *-representations of the predual, split
them into standard and non-standard ones, take the common kernel ``M_*0`` of
the non-standard ones, and let ``M^`` be the block algebra over the
irreducibles that do not vanish on ``M_*0``.  ``Phi`` is the direct sum of
those irreducibles.  ``Delta^`` and ``kappa^`` are obtained by solving linear
extension problems on ``Phi(M_*0)``, which spans ``M^``.

Coefficient elements of ``Phi`` are read off its matrix: matrix unit ``i`` of
``M^`` has coefficient element ``c_i = Phi[i, :]`` in ``M``, and
``(Phi x Phi)(mu)`` has coordinate ``mu(c_i c_j)`` at ``i * N + j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import DEFAULT_SEED, AxiomReport, Subspace, direct_sum_map, irreducible_star_reps
from .errors import (ExtensionInconsistent, MixedParents, NotAGroup, NotCocommutative,
                     NotCommutative)
from .groups import FiniteGroup, find_isomorphism, group_star_algebra
from .hopf import HopfMorphism, HopfVNAlgebra, verify_hopf, verify_morphism
from .linalg import STRUCT_TOL, max_abs
from .predual import PredualAlgebra, build_predual
from .reps import is_standard, nondegenerate_on_ideal, predual_reps

# extension residuals are compared against tol times the size of the data
EXT_SCALE_FLOOR = 1.0


@dataclass(frozen=True, eq=False)
class RepPartition:
    reps: tuple
    standard: tuple
    nonstandard: tuple
    standardness: tuple

    @property
    def sizes(self) -> dict:
        return {"irreducible": len(self.reps), "standard": len(self.standard),
                "nonstandard": len(self.nonstandard)}


@dataclass(frozen=True, eq=False)
class DualConstruction:
    source: HopfVNAlgebra
    predual: PredualAlgebra
    partition: RepPartition
    ideal: Subspace
    kept: tuple
    dual: HopfVNAlgebra
    phi: np.ndarray
    residuals: dict = field(default_factory=dict)

    @property
    def phi_hat(self) -> np.ndarray:
        """``M^_* -> M``, the restriction of the transpose of ``Phi``."""
        return self.phi.T

    @property
    def standard_reps(self) -> tuple:
        return self.partition.standard

    @property
    def nonstandard_reps(self) -> tuple:
        return self.partition.nonstandard

    @property
    def signature(self) -> tuple:
        return self.dual.signature

    @property
    def ideal_dim(self) -> int:
        return self.ideal.dim


def absolutely_continuous_ideal(P: PredualAlgebra, seed: int = DEFAULT_SEED,
                                tol: float = STRUCT_TOL):
    """``(M_*0, partition)``: common kernel of the irreducible non-standard representations."""
    reps = predual_reps(P, seed, tol)
    verdicts = [is_standard(r, tol) for r in reps]
    std = tuple(i for i, v in enumerate(verdicts) if v.standard)
    non = tuple(i for i, v in enumerate(verdicts) if not v.standard)
    part = RepPartition(tuple(reps), std, non, tuple(v.residual for v in verdicts))
    n = P.dim
    if non:
        rows = np.concatenate([reps[i].matrices.reshape(n, -1).T for i in non])
        basis = linalg.null_space(rows)
    else:
        basis = np.eye(n, dtype=np.complex128)
    ideal = Subspace.span(P.algebra, basis, ideal=True, tol=max(tol, 1e-8))
    return ideal, part


def _ext_tol(tol, *arrays) -> float:
    return tol * max([EXT_SCALE_FLOOR] + [max_abs(a) for a in arrays])


def dualize(Mh: HopfVNAlgebra, seed: int = DEFAULT_SEED, tol: float = STRUCT_TOL) -> DualConstruction:
    P = build_predual(Mh)
    ideal, part = absolutely_continuous_ideal(P, seed, tol)
    Z = ideal.basis
    res = {}
    kept = tuple(i for i, r in enumerate(part.reps) if max_abs(r(Z.T)) > tol)
    for i in kept:
        # finite-dimensional shadow of "nondegenerate on M_*0 implies standard"
        if i not in part.standard or not nondegenerate_on_ideal(part.reps[i], ideal, max(tol, 1e-8)):
            raise ExtensionInconsistent(f"irreducible {i} is nonzero on the ideal but not standard")
    reps = [part.reps[i] for i in kept]
    sig = tuple(r.degree for r in reps)
    N, n = sum(d * d for d in sig), Mh.dim
    Phi = direct_sum_map(reps) if reps else np.zeros((0, n), np.complex128)

    PZ = Phi @ Z
    if linalg.rank(PZ) != N:
        raise ExtensionInconsistent("Phi(M_*0) does not span the dual")
    PZ_pinv = np.linalg.pinv(PZ)

    # Delta^: Delta^(Phi mu) = (Phi x Phi)(mu)
    B = Mh.algebra.mul(Phi[:, None, :], Phi[None, :, :]).reshape(N * N, n)
    delta = (B @ Z) @ PZ_pinv
    res["delta_extension"] = max_abs(delta @ PZ - B @ Z)
    if res["delta_extension"] > _ext_tol(tol, B):
        raise ExtensionInconsistent(f"Delta^ extension inconsistent ({res['delta_extension']:.3e})")

    # kappa^: kappa^(Phi mu) = Phi(mu o kappa), after checking M_*0 is kappa~-invariant
    KZ = P.kappa_tilde @ Z
    res["kappa_invariance"] = max_abs(Z @ (Z.conj().T @ KZ) - KZ)
    if res["kappa_invariance"] > _ext_tol(tol, KZ):
        raise ExtensionInconsistent("kappa~ does not preserve M_*0")
    kappa = (Phi @ KZ) @ PZ_pinv
    res["kappa_extension"] = max_abs(kappa @ PZ - Phi @ KZ)
    if res["kappa_extension"] > _ext_tol(tol, Phi):
        raise ExtensionInconsistent(f"kappa^ extension inconsistent ({res['kappa_extension']:.3e})")

    dual = HopfVNAlgebra.from_blocks(sig, delta, kappa, provenance={
        "kind": "dual", "of": Mh.provenance, "seed": int(seed)})
    res.update(_phi_residuals(P, dual, Phi))
    rep = verify_hopf(dual, tol)
    res.update({"dual." + k: v for k, v in rep.residuals.items()})
    if not rep.passed:
        raise ExtensionInconsistent(f"dual fails the Hopf axioms: {rep.failures()}")
    return DualConstruction(Mh, P, part, ideal, kept, dual, Phi, res)


def _phi_residuals(P: PredualAlgebra, dual: HopfVNAlgebra, Phi) -> dict:
    A, n = P.algebra, P.dim
    if dual.dim == 0:
        return {"phi_multiplicative": 0.0, "phi_star": 0.0}
    PhiT = Phi.T
    lhs = A.structure @ PhiT
    rhs = dual.layout.mul(PhiT[:, None, :], PhiT[None, :, :])
    star = Phi @ A.star - dual.algebra.star @ np.conj(Phi)
    return {"phi_multiplicative": max_abs(lhs - rhs), "phi_star": max_abs(star)}


def dual_morphism(f: HopfMorphism, dc_source: DualConstruction, dc_target: DualConstruction,
                  tol: float = STRUCT_TOL) -> HopfMorphism:
    """``phi^ : N^ -> M^`` for ``phi : M -> N``, from ``phi^ o Phi_N = Phi_M o phi_*``."""
    if dc_source.source is not f.source or dc_target.source is not f.target:
        raise MixedParents("dual constructions do not match the morphism endpoints")
    Z = dc_target.ideal.basis
    lhs = dc_target.phi @ Z
    rhs = dc_source.phi @ f.phi.T @ Z
    hat = rhs @ np.linalg.pinv(lhs)
    res = max_abs(hat @ lhs - rhs)
    if res > _ext_tol(tol, rhs):
        raise ExtensionInconsistent(f"dual morphism extension inconsistent ({res:.3e})")
    return HopfMorphism(dc_target.dual, dc_source.dual, hat)


def canonical_D(Mh: HopfVNAlgebra, dc1: DualConstruction, dc2: DualConstruction,
                tol: float = STRUCT_TOL) -> HopfMorphism:
    """``D_M : M^^ -> M`` with ``D_M o Phi_{M^} = Phi^_M`` on the ideal of ``M^_*``."""
    if dc1.source is not Mh or dc2.source is not dc1.dual:
        raise MixedParents("dual constructions do not form a chain over M")
    Z2 = dc2.ideal.basis
    lhs = dc2.phi @ Z2
    rhs = dc1.phi_hat @ Z2
    D = rhs @ np.linalg.pinv(lhs)
    res = max_abs(D @ lhs - rhs)
    if res > _ext_tol(tol, rhs):
        raise ExtensionInconsistent(f"D_M extension inconsistent ({res:.3e})")
    return HopfMorphism(dc2.dual, Mh, D)


def canonical_E(dc1: DualConstruction, dc2: DualConstruction, dc3: DualConstruction,
                tol: float = STRUCT_TOL) -> HopfMorphism:
    """``E_N : N -> N^^`` for ``N = M^``, as the dual of ``D_M``."""
    D_M = canonical_D(dc1.source, dc1, dc2, tol)
    if dc3.source is not dc2.dual:
        raise MixedParents("third dual construction must start at M^^")
    return dual_morphism(D_M, dc3, dc1, tol)


@dataclass(frozen=True)
class DEResult:
    D: HopfMorphism
    E: HopfMorphism
    residual: float
    reports: dict

    @property
    def holds(self) -> bool:
        return self.residual < self.reports["tol"]


def de_identity(Mh: HopfVNAlgebra, seed: int = DEFAULT_SEED, tol: float = STRUCT_TOL,
                chain=None) -> DEResult:
    """``D_N o E_N = id_N`` on ``N = M^``; ``chain`` may supply ``(dc1, dc2, dc3)``."""
    if chain is None:
        dc1 = dualize(Mh, seed, tol)
        dc2 = dualize(dc1.dual, seed, tol)
        dc3 = dualize(dc2.dual, seed, tol)
    else:
        dc1, dc2, dc3 = chain
    E = canonical_E(dc1, dc2, dc3, tol)
    D = canonical_D(dc1.dual, dc2, dc3, tol)
    res = max_abs(D.phi @ E.phi - np.eye(dc1.dual.dim))
    return DEResult(D, E, res, {"tol": tol, "E": verify_morphism(E, tol).residuals,
                                "D": verify_morphism(D, tol).residuals})


@dataclass(frozen=True)
class AnnihilatorResult:
    status: str  # "ideal", "not-ideal" or "not-applicable"
    phi_injective: bool
    annihilator_dim: int
    ideal_residual: float

    @property
    def unconditional_ideal(self) -> bool:
        return self.ideal_residual < 1e-8


def annihilator_ideal_check(Mh: HopfVNAlgebra, dc: DualConstruction,
                            tol: float = STRUCT_TOL) -> AnnihilatorResult:
    """Whether ``(M_*0)^perp`` is a two-sided ideal of ``M``, under injectivity of ``Phi``.

    The ideal residual is computed either way, so callers can see what
    happens without the hypothesis.
    """
    Z = dc.ideal.basis
    ann = linalg.null_space(Z.T)
    sub = Subspace(Mh.algebra, ann)
    r = sub.ideal_residual()
    injective = linalg.rank(dc.phi) == Mh.dim
    if not injective:
        status = "not-applicable"
    else:
        status = "ideal" if r < tol else "not-ideal"
    return AnnihilatorResult(status, injective, sub.dim, r)


@dataclass(frozen=True, eq=False)
class ReflexivityReport:
    canonical: bool
    abstract: bool | None
    signatures: dict
    D: HopfMorphism
    D_rank: int
    residuals: dict
    groups: dict
    chain: tuple

    @property
    def reflexive(self) -> bool:
        return self.canonical

    def __bool__(self) -> bool:
        return self.canonical


def is_reflexive(Mh: HopfVNAlgebra, seed: int = DEFAULT_SEED, tol: float = STRUCT_TOL,
                 dc1: DualConstruction | None = None) -> ReflexivityReport:
    """Canonical verdict (``D_M`` a Hopf isomorphism) plus an abstract one where decidable."""
    dc1 = dc1 if dc1 is not None else dualize(Mh, seed, tol)
    dc2 = dualize(dc1.dual, seed, tol)
    D = canonical_D(Mh, dc1, dc2, tol)
    rep = verify_morphism(D, tol)
    res = {"D." + k: v for k, v in rep.residuals.items()}
    rank = D.rank()
    bijective = D.phi.shape[0] == D.phi.shape[1] and rank == Mh.dim
    canonical = bool(bijective and rep.passed)
    if bijective:
        inv = HopfMorphism(Mh, dc2.dual, np.linalg.inv(D.phi))
        inv_rep = verify_morphism(inv, tol)
        res.update({"D_inv." + k: v for k, v in inv_rep.residuals.items()})
        canonical = canonical and inv_rep.passed
    sigs = {"M": list(Mh.signature), "dual": list(dc1.dual.signature),
            "double_dual": list(dc2.dual.signature)}
    abstract, groups = _abstract_verdict(Mh, dc2.dual, seed)
    return ReflexivityReport(canonical, abstract, sigs, D, rank, res, groups, (dc1, dc2))


def _abstract_verdict(M: HopfVNAlgebra, MM: HopfVNAlgebra, seed):
    if sorted(M.signature) != sorted(MM.signature):
        return False, {}
    for kind, fn in (("commutative", reconstruct_group), ("cocommutative", grouplike_group)):
        try:
            G, H = fn(M, seed), fn(MM, seed)
        except (NotCommutative, NotCocommutative):
            continue
        except NotAGroup:
            return None, {}
        iso = find_isomorphism(G, H) is not None
        return iso, {"kind": kind, "M": G.table.tolist(), "double_dual": H.table.tolist()}
    # no certified decision procedure outside the (co)commutative cases
    return None, {}


def triple_dual_check(Mh: HopfVNAlgebra, seed: int = DEFAULT_SEED,
                      tol: float = STRUCT_TOL) -> ReflexivityReport:
    """Reflexivity evidence for ``M^``: truthy iff ``M^^^`` is canonically ``M^``."""
    dc1 = dualize(Mh, seed, tol)
    return is_reflexive(dc1.dual, seed, tol)


def _joint_eigenvectors(H, rng, tol=1e-6, max_rounds=10):
    """One unit vector per joint eigenspace of commuting normal operators ``H[b]``.

    Spaces are split by the spectrum of a random Hermitian combination,
    restricted to the space, until every operator acts as a scalar.
    """
    D = H.shape[1]
    pending, out = [np.eye(D, dtype=np.complex128)], []
    for _ in range(max_rounds):
        nxt = []
        for V in pending:
            X = np.einsum("b,bij->ij", rng.standard_normal(H.shape[0]), H)
            w, U = linalg.hermitian_eig(V.conj().T @ (X + X.conj().T) @ V, tol=1e-8)
            scale = max(1.0, np.abs(w).max())
            cuts = [0] + [k for k in range(1, len(w)) if w[k] - w[k - 1] > tol * scale] + [len(w)]
            for lo, hi in zip(cuts[:-1], cuts[1:]):
                W = V @ U[:, lo:hi]
                R = np.einsum("ia,bij,jc->bac", W.conj(), H, W)
                scalar = np.einsum("baa->b", R)[:, None, None] / W.shape[1] * np.eye(W.shape[1])
                if max_abs(R - scalar) < tol:
                    out.append(W[:, 0])
                else:
                    nxt.append(W)
        pending = nxt
        if not pending:
            return out
    raise NotAGroup("could not diagonalize the algebra simultaneously")


def spectrum(Mh: HopfVNAlgebra, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Characters of a commutative ``M`` as rows ``chi(E_b)``, canonically ordered."""
    if not Mh.algebra.is_commutative():
        raise NotCommutative("algebra is not commutative")
    rng = np.random.default_rng(seed)
    H = Mh.concrete
    vecs = _joint_eigenvectors(H, rng)
    chars = np.array([np.einsum("i,bij,j->b", v.conj(), H, v) for v in vecs])
    key = np.round(np.concatenate([chars.real, chars.imag], axis=1), 6) + 0.0
    order = np.lexsort(key.T[::-1])
    return chars[order]


def reconstruct_group(Mh: HopfVNAlgebra, seed: int = DEFAULT_SEED,
                      tol: float = STRUCT_TOL, check_grouplikes: bool = True) -> FiniteGroup:
    """The group ``G`` with ``M = C(G)``, read off the spectrum.

    ``m(s, t)`` is the spectrum point equal to ``(s (x) t) o Delta``; inverses
    come from ``s o kappa``.  Raises :class:`NotAGroup` when the spectrum is
    not a group under these operations or the characters are not *-maps.
    """
    chars = spectrum(Mh, seed)
    A = Mh.algebra
    m = len(chars)
    if m != A.dim:
        raise NotAGroup("spectrum does not separate the algebra")
    mult = max_abs(np.einsum("ijk,sk->sij", A.structure, chars)
                   - chars[:, :, None] * chars[:, None, :])
    star = max_abs(chars @ A.star - np.conj(chars))
    if mult > 1e-8 or max_abs(chars @ A.unit - 1) > 1e-8:
        raise NotAGroup("spectrum points are not characters")
    if star > 1e-8:
        raise NotAGroup("characters are not *-preserving; the algebra is not of the form C(G)")

    def locate(psi):
        d = np.abs(chars - psi).max(axis=1)
        hits = np.flatnonzero(d < 1e-6)
        if hits.size != 1:
            raise NotAGroup("convolution of spectrum points leaves the spectrum")
        return int(hits[0])

    prod = np.einsum("si,tj,ijc->stc", chars, chars, Mh.delta.reshape(m, m, m))
    table = np.array([[locate(prod[s, t]) for t in range(m)] for s in range(m)])
    try:
        G = FiniteGroup(table, name="reconstructed")
    except Exception as exc:
        raise NotAGroup(f"spectrum is not a group: {exc}") from None
    inv = np.array([locate(c @ Mh.kappa) for c in chars])
    if not np.array_equal(inv, G.inverse):
        raise NotAGroup("kappa does not induce the group inversion")
    if check_grouplikes:
        _check_grouplikes(Mh, G, chars, seed, tol)
    return G


def grouplike_unitaries(Mh: HopfVNAlgebra, seed: int = DEFAULT_SEED,
                        tol: float = STRUCT_TOL) -> np.ndarray:
    """Coordinates of all ``x`` with ``Delta x = x (x) x``, ``x* x = 1``, ``kappa x = x*``.

    They are exactly the coefficient elements of one-dimensional standard
    *-representations of the predual.
    """
    P = build_predual(Mh)
    xs = [r.matrices[:, 0, 0] for r in predual_reps(P, seed, tol)
          if r.degree == 1 and is_standard(r, tol).standard]
    if not xs:
        return np.zeros((0, Mh.dim), np.complex128)
    xs = np.array(xs)
    key = np.round(np.concatenate([xs.real, xs.imag], axis=1), 6) + 0.0
    return xs[np.lexsort(key.T[::-1])]


def _check_grouplikes(Mh, G, chars, seed, tol):
    """Group-like unitaries of ``M`` must be the one-dimensional characters of ``G``."""
    lin = [r.matrices[:, 0, 0] for r in irreducible_star_reps(group_star_algebra(G), seed, tol)
           if r.degree == 1]
    # column s of P is the minimal projection at spectrum point s
    P = np.linalg.inv(chars)
    expected = np.array([P @ v for v in lin])
    found = grouplike_unitaries(Mh, seed, tol)
    if len(found) != len(expected):
        raise NotAGroup("group-like unitaries do not match the characters of G")
    for x in expected:
        if np.abs(found - x).max(axis=1).min() > 1e-6:
            raise NotAGroup("group-like unitaries do not match the characters of G")


def grouplike_group(Mh: HopfVNAlgebra, seed: int = DEFAULT_SEED,
                    tol: float = STRUCT_TOL) -> FiniteGroup:
    """The group of group-like unitaries of a cocommutative ``M``, certified to span ``M``."""
    if not Mh.is_cocommutative(tol):
        raise NotCocommutative("comultiplication is not cocommutative")
    xs = grouplike_unitaries(Mh, seed, tol)
    k = len(xs)
    if k == 0 or linalg.rank(xs.T) != Mh.dim or k != Mh.dim:
        raise NotAGroup("group-like unitaries do not form a basis")
    prods = Mh.algebra.mul(xs[:, None, :], xs[None, :, :])

    def locate(y):
        d = np.abs(xs - y).max(axis=1)
        hits = np.flatnonzero(d < 1e-6)
        if hits.size != 1:
            raise NotAGroup("group-like unitaries are not closed under multiplication")
        return int(hits[0])

    table = np.array([[locate(prods[a, b]) for b in range(k)] for a in range(k)])
    try:
        return FiniteGroup(table, name="grouplikes")
    except Exception as exc:
        raise NotAGroup(f"group-like unitaries do not form a group: {exc}") from None


def dual_report_residuals(dc: DualConstruction) -> AxiomReport:
    return AxiomReport(dict(dc.residuals))
