"""Finite groups and the Hopf-von Neumann algebras built from them.

For a finite group every analytic distinction collapses: the measure algebra,
L1 and the full and reduced group C*-algebras are all the group algebra
``C[G]``, and the group von Neumann algebra ``W*(G)`` is that same algebra in
block form.  On the other side ``C_0(G)``, ``L_inf(G)`` and the bidual of
``C_0(G)`` are all the function algebra ``C(G)``, and the Fourier and
Fourier-Stieltjes algebras are functions on ``G`` under pointwise product.

Besides the two classical algebras this module builds the twisted function
algebra on ``Z_n`` (``kappa = id``, involution ``f -> conj(f(-t))``) and the
function algebra of the two-element monoid.  The monoid algebra is a genuine
C*-algebra whose predual has a non-standard character.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import DEFAULT_SEED, FinStarAlgebra, direct_sum_map, irreducible_star_reps
from .errors import BadSpec, NotAbelian
from .hopf import HopfMorphism, HopfVNAlgebra


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        t = np.array(self.table, dtype=np.intp)
        n = t.shape[0] if t.ndim == 2 else -1
        if t.shape != (n, n) or n < 1:
            raise BadSpec(f"Cayley table must be square and non-empty, got shape {t.shape}")
        if t.min() < 0 or t.max() >= n:
            raise BadSpec("Cayley table entries out of range")
        # (ab)c == a(bc), exhaustively
        a = np.arange(n)
        if not np.array_equal(t[t[:, :, None], a[None, None, :]], t[a[:, None, None], t[None, :, :]]):
            raise BadSpec("Cayley table is not associative")
        ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
        if not ids:
            raise BadSpec("no identity element")
        e = ids[0]
        inv = np.full(n, -1, dtype=np.intp)
        for g in range(n):
            hits = np.flatnonzero((t[g] == e) & (t[:, g] == e))
            if hits.size != 1:
                raise BadSpec(f"element {g} has no two-sided inverse")
            inv[g] = hits[0]
        t.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "identity", int(e))
        object.__setattr__(self, "inverse", inv)
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise BadSpec("one label per element required")
        object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.table[x, g])
            k += 1
        return k

    @cached_property
    def element_orders(self) -> np.ndarray:
        return np.array([self.element_order(g) for g in range(self.order)])

    @property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    def order_statistics(self) -> tuple:
        vals, counts = np.unique(self.element_orders, return_counts=True)
        return tuple(zip(vals.tolist(), counts.tolist()))

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily by decreasing element order."""
        gens, span = [], {self.identity}
        for g in sorted(range(self.order), key=lambda x: (-self.element_orders[x], x)):
            if g in span:
                continue
            gens.append(g)
            span = self._closure(gens)
            if len(span) == self.order:
                break
        return gens

    def _closure(self, gens) -> set:
        seen, queue = {self.identity}, deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def to_dict(self) -> dict:
        return {"name": self.name, "labels": list(self.labels), "table": self.table.tolist()}


def from_table(table, labels=(), name: str = "") -> FiniteGroup:
    return FiniteGroup(np.asarray(table), tuple(labels), name)


def cyclic(n: int) -> FiniteGroup:
    n = _positive(n, "n")
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, tuple(str(i) for i in a), f"Z{n}")


def product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Direct product; the pair ``(g, h)`` sits at index ``g * |H| + h``."""
    m = H.order
    t = (G.table[:, None, :, None] * m + H.table[None, :, None, :]).reshape(G.order * m, G.order * m)
    labels = tuple(f"({a},{b})" for a in G.labels for b in H.labels)
    return FiniteGroup(t, labels, f"{G.name}x{H.name}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon, order ``2n``; ``r^k s^e`` at index ``k + n*e``."""
    n = _positive(n, "n")
    N = 2 * n
    t = np.empty((N, N), dtype=np.intp)
    for x in range(N):
        a, e = x % n, x // n
        for y in range(N):
            b, f = y % n, y // n
            t[x, y] = (a + (-1) ** e * b) % n + n * ((e + f) % 2)
    labels = tuple(f"r{k}" + ("s" if e else "") for e in (0, 1) for k in range(n))
    return FiniteGroup(t, labels, f"D{n}")


def symmetric(n: int) -> FiniteGroup:
    n = _positive(n, "n")
    if n > 4:
        raise BadSpec("symmetric groups are supported up to n = 4")
    perms = list(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    t = [[idx[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(np.array(t), tuple("".join(map(str, p)) for p in perms), f"S{n}")


def quaternion8() -> FiniteGroup:
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    elems = [tuple(s * c for c in u) for s in (1, -1) for u in units]

    def qmul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    idx = {q: i for i, q in enumerate(elems)}
    t = [[idx[qmul(p, q)] for q in elems] for p in elems]
    return FiniteGroup(np.array(t), ("1", "i", "j", "k", "-1", "-i", "-j", "-k"), "Q8")


def _positive(n, name) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise BadSpec(f"{name} must be a positive integer, got {n!r}")
    return int(n)


def group_star_algebra(G: FiniteGroup) -> FinStarAlgebra:
    """``C[G]`` with ``delta_s delta_t = delta_st`` and ``delta_t* = delta_{t^-1}``."""
    n = G.order
    c = np.zeros((n, n, n))
    a = np.arange(n)
    c[a[:, None], a[None, :], G.table] = 1.0
    S = np.zeros((n, n))
    S[G.inverse, a] = 1.0
    u = np.zeros(n)
    u[G.identity] = 1.0
    return FinStarAlgebra(c, S, u, tuple(f"d[{x}]" for x in G.labels))


def _pushforward_delta(table, n):
    D = np.zeros((n * n, n))
    a = np.arange(n)
    D[(a[:, None] * n + a[None, :]).ravel(), table.ravel()] = 1.0
    return D


def function_algebra(G: FiniteGroup) -> HopfVNAlgebra:
    """``C(G)`` on indicator functions: ``Delta e_g = sum_{st=g} e_s (x) e_t``, ``kappa e_g = e_{g^-1}``."""
    n = G.order
    K = np.zeros((n, n))
    K[G.inverse, np.arange(n)] = 1.0
    return HopfVNAlgebra.from_blocks(
        (1,) * n, _pushforward_delta(G.table, n), K,
        labels=tuple(f"1[{x}]" for x in G.labels),
        provenance={"kind": "function", "group": G.name, "order": n})


def group_vn_algebra(G: FiniteGroup, seed: int = DEFAULT_SEED, *, with_embedding: bool = False):
    """``W*(G)`` in block form over the irreducible unitary representations of ``G``.

    With ``with_embedding`` the matrix ``L`` whose column ``g`` holds the block
    coordinates of ``lambda(g)`` is returned as well.
    """
    A = group_star_algebra(G)
    reps = irreducible_star_reps(A, seed)
    L = direct_sum_map(reps)
    Linv = np.linalg.inv(L)
    n = G.order
    grouplike = np.einsum("ig,jg->ijg", L, L).reshape(n * n, n)
    delta = grouplike @ Linv
    kappa = L[:, G.inverse] @ Linv
    Mh = HopfVNAlgebra.from_blocks(
        tuple(r.degree for r in reps), delta, kappa,
        provenance={"kind": "group_vn", "group": G.name, "order": n})
    return (Mh, L) if with_embedding else Mh


def twisted_hopf(n: int) -> HopfVNAlgebra:
    """Function algebra of ``Z_n`` with ``kappa = id`` and involution ``e_g -> e_{-g}``."""
    n = _positive(n, "n")
    G = cyclic(n)
    S = np.zeros((n, n))
    a = np.arange(n)
    S[(-a) % n, a] = 1.0
    return HopfVNAlgebra.from_blocks(
        (1,) * n, _pushforward_delta(G.table, n), np.eye(n), star=S,
        labels=tuple(f"1[{x}]" for x in G.labels),
        provenance={"kind": "twisted", "n": n})


def monoid_function_algebra(table, labels=(), name: str = "monoid") -> HopfVNAlgebra:
    """Function algebra of a finite commutative monoid, ``kappa = id``.

    ``Delta e_g = sum_{st=g} e_s (x) e_t`` is unital and coassociative for any
    monoid; commutativity makes the flip axiom hold with trivial ``kappa``.
    """
    t = np.asarray(table, dtype=np.intp)
    n = t.shape[0]
    if t.shape != (n, n) or not np.array_equal(t, t.T):
        raise BadSpec("monoid table must be square and commutative")
    labels = tuple(labels) or tuple(str(i) for i in range(n))
    return HopfVNAlgebra.from_blocks(
        (1,) * n, _pushforward_delta(t, n), np.eye(n),
        labels=tuple(f"1[{x}]" for x in labels),
        provenance={"kind": "monoid", "name": name, "order": n})


def two_element_monoid() -> HopfVNAlgebra:
    """``{0, 1}`` under multiplication."""
    return monoid_function_algebra([[0, 0], [0, 1]], ("0", "1"), "M2")


def pullback_morphism(FH: HopfVNAlgebra, FG: HopfVNAlgebra, q, G: FiniteGroup,
                      H: FiniteGroup) -> HopfMorphism:
    """``C(H) -> C(G)``, ``f -> f o q``, for a homomorphism ``q : G -> H`` given as an index array."""
    q = np.asarray(q, dtype=np.intp)
    if q.shape != (G.order,) or not np.array_equal(q[G.table], H.table[q[:, None], q[None, :]]):
        raise BadSpec("q is not a group homomorphism")
    phi = np.zeros((G.order, H.order))
    phi[np.arange(G.order), q] = 1.0
    return HopfMorphism(FH, FG, phi)


def dual_group(G: FiniteGroup) -> FiniteGroup:
    """Character group, with characters stored as exact exponents ``k`` of ``exp(2 pi i k / N)``.

    ``N`` is the group exponent.  A character is determined by its values on
    a generating set; each candidate assignment is extended along words and
    kept if it respects the Cayley table.
    """
    if not G.is_abelian():
        raise NotAbelian(f"{G.name or 'group'} is not abelian")
    N = G.exponent
    gens = G.generators()
    words = _words(G, gens)
    chars = []
    for images in itertools.product(*[range(0, N, N // G.element_order(g)) for g in gens]):
        k = np.full(G.order, -1, dtype=np.intp)
        k[G.identity] = 0
        for x, (prev, gi) in words:
            k[x] = (k[prev] + images[gi]) % N
        if np.array_equal((k[:, None] + k[None, :]) % N, k[G.table]):
            chars.append(tuple(int(v) for v in k))
    chars = sorted(set(chars))
    idx = {c: i for i, c in enumerate(chars)}
    arr = np.array(chars)
    t = [[idx[tuple(((arr[i] + arr[j]) % N).tolist())] for j in range(len(chars))]
         for i in range(len(chars))]
    labels = tuple("chi" + str(list(c)) for c in chars)
    return FiniteGroup(np.array(t), labels, f"dual({G.name})")


def character_values(D: FiniteGroup, G: FiniteGroup) -> np.ndarray:
    """Rows: characters of ``D = dual_group(G)`` evaluated on ``G``."""
    N = G.exponent
    k = np.array([json.loads(lbl[3:]) for lbl in D.labels])
    return np.exp(2j * np.pi * k / N)


def _words(G, gens):
    """BFS order of elements as ``(x, (predecessor, generator index))`` with ``x = prev * g``."""
    seen, out, queue = {G.identity}, [], deque([G.identity])
    while queue:
        x = queue.popleft()
        for i, g in enumerate(gens):
            y = int(G.table[x, g])
            if y not in seen:
                seen.add(y)
                out.append((y, (x, i)))
                queue.append(y)
    return out


def find_isomorphism(G: FiniteGroup, H: FiniteGroup):
    """A bijection ``f`` (as an index array) with ``f(ab) = f(a) f(b)``, or ``None``."""
    if G.order != H.order or G.order_statistics() != H.order_statistics():
        return None
    if G.is_abelian() != H.is_abelian():
        return None
    gens = G.generators()
    words = _words(G, gens)
    cands = [np.flatnonzero(H.element_orders == G.element_orders[g]) for g in gens]
    for images in itertools.product(*cands):
        f = np.full(G.order, -1, dtype=np.intp)
        f[G.identity] = H.identity
        for x, (prev, gi) in words:
            f[x] = H.table[f[prev], images[gi]]
        if np.unique(f).size != G.order:
            continue
        if np.array_equal(f[G.table], H.table[f[:, None], f[None, :]]):
            return f
    return None


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


def catalog() -> list[FiniteGroup]:
    """Named groups used to identify reconstructed groups (orders up to 24)."""
    out = [cyclic(n) for n in range(1, 25)]
    out += [product(cyclic(2), cyclic(2)), product(cyclic(2), cyclic(4)),
            product(cyclic(2), product(cyclic(2), cyclic(2))), product(cyclic(3), cyclic(3)),
            product(cyclic(2), cyclic(6)), product(cyclic(2), cyclic(8)),
            product(cyclic(4), cyclic(4))]
    out += [symmetric(3), dihedral(4), quaternion8(), dihedral(5), dihedral(6), symmetric(4)]
    return out


def identify_group(G: FiniteGroup) -> str | None:
    for H in catalog():
        if H.order == G.order and is_isomorphic(G, H):
            return H.name
    return None


_SPEC_KEYS = {
    "cyclic": {"type", "n"}, "sym": {"type", "n"}, "dihedral": {"type", "n"},
    "quaternion": {"type"}, "product": {"type", "factors"}, "twisted": {"type", "n"},
    "monoid": {"type"},
}


def parse_spec(spec) -> dict:
    """Validate a group-spec document (a dict or a JSON string)."""
    if isinstance(spec, (str, bytes)):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise BadSpec(f"malformed JSON: {exc}") from None
    if not isinstance(spec, dict) or "type" not in spec:
        raise BadSpec("spec must be a JSON object with a 'type' field")
    kind = spec["type"]
    if kind not in _SPEC_KEYS:
        raise BadSpec(f"unknown spec type {kind!r}")
    extra = set(spec) - _SPEC_KEYS[kind]
    missing = _SPEC_KEYS[kind] - set(spec)
    if extra or missing:
        raise BadSpec(f"spec of type {kind!r}: unexpected {sorted(extra)}, missing {sorted(missing)}")
    if kind == "product":
        if not isinstance(spec["factors"], list) or not spec["factors"]:
            raise BadSpec("product needs a non-empty list of factors")
        for f in spec["factors"]:
            if parse_spec(f)["type"] in ("twisted", "monoid"):
                raise BadSpec("product factors must be groups")
    return spec


def group_from_spec(spec) -> FiniteGroup:
    spec = parse_spec(spec)
    kind = spec["type"]
    if kind == "cyclic":
        return cyclic(spec["n"])
    if kind == "sym":
        return symmetric(spec["n"])
    if kind == "dihedral":
        return dihedral(spec["n"])
    if kind == "quaternion":
        return quaternion8()
    if kind == "product":
        G = group_from_spec(spec["factors"][0])
        for f in spec["factors"][1:]:
            G = product(G, group_from_spec(f))
        return G
    raise BadSpec(f"spec of type {kind!r} does not describe a group")


def hopf_from_spec(spec, side: str = "function", seed: int = DEFAULT_SEED):
    """``(HopfVNAlgebra, FiniteGroup or None)`` for a spec and a side."""
    spec = parse_spec(spec)
    if spec["type"] == "twisted":
        return twisted_hopf(spec["n"]), None
    if spec["type"] == "monoid":
        return two_element_monoid(), None
    G = group_from_spec(spec)
    if side == "function":
        return function_algebra(G), G
    if side == "groupvn":
        return group_vn_algebra(G, seed), G
    raise BadSpec(f"unknown side {side!r}")


FLEET_SPECS = [{"type": "cyclic", "n": n} for n in range(2, 9)] + [
    {"type": "product", "factors": [{"type": "cyclic", "n": 2}, {"type": "cyclic", "n": 2}]},
    {"type": "product", "factors": [{"type": "cyclic", "n": 2}, {"type": "cyclic", "n": 4}]},
    {"type": "sym", "n": 3}, {"type": "dihedral", "n": 4}, {"type": "quaternion"},
    {"type": "sym", "n": 4},
]
