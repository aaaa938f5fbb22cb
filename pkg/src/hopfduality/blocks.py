"""Coordinates on direct sums of full matrix algebras.

A finite-dimensional von Neumann algebra ``M = Mat(d_1) + ... + Mat(d_K)`` is
stored on its basis of matrix units ``E^k_{ab}``, ordered block by block and
row-major inside each block.  The tensor square ``M (x) M`` uses the induced
basis ``E_i (x) E_j`` at coordinate ``i * dim + j``; it is again a direct sum
of full matrix algebras (blocks ``Mat(d_k d_l)``), which is what makes
products in ``M (x) M`` cheap to evaluate.
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np


class BlockLayout:
    """Gather/scatter maps between coordinates and matrix blocks.

    ``blocks`` is the ordered list of index arrays; ``blocks[k][i, j]`` is the
    coordinate of entry ``(i, j)`` of block ``k``.  Blocks of equal size are
    also grouped so that products run as one batched ``matmul`` per size.
    """

    def __init__(self, dim: int, blocks: list[np.ndarray]):
        self.dim = int(dim)
        self.blocks = [np.asarray(b, dtype=np.intp) for b in blocks]
        covered = np.concatenate([b.ravel() for b in self.blocks]) if self.blocks else np.zeros(0, np.intp)
        if covered.size != self.dim or np.unique(covered).size != self.dim:
            raise ValueError("blocks must partition the coordinates")
        grouped = defaultdict(list)
        for k, b in enumerate(self.blocks):
            grouped[b.shape[0]].append(k)
        self._groups = {s: (ks, np.stack([self.blocks[k] for k in ks])) for s, ks in grouped.items()}

    @classmethod
    def from_signature(cls, signature) -> "BlockLayout":
        blocks, off = [], 0
        for d in signature:
            d = int(d)
            if d < 1:
                raise ValueError(f"block sizes must be positive, got {d}")
            blocks.append(off + np.arange(d * d).reshape(d, d))
            off += d * d
        return cls(off, blocks)

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(b.shape[0] for b in self.blocks)

    @property
    def hilbert_dim(self) -> int:
        return sum(self.signature)

    def tensor(self, other: "BlockLayout") -> "BlockLayout":
        """Layout of the tensor product, blocks ordered lexicographically."""
        n2 = other.dim
        out = []
        for b1 in self.blocks:
            for b2 in other.blocks:
                d, e = b1.shape[0], b2.shape[0]
                idx = np.add.outer(b1 * n2, b2).transpose(0, 2, 1, 3).reshape(d * e, d * e)
                out.append(idx)
        return BlockLayout(self.dim * n2, out)

    def gather(self, x) -> dict[int, np.ndarray]:
        x = np.asarray(x)
        return {s: x[..., idx] for s, (_, idx) in self._groups.items()}

    def scatter(self, parts: dict[int, np.ndarray], lead_shape=()) -> np.ndarray:
        dtype = np.result_type(*[p.dtype for p in parts.values()], np.complex128)
        out = np.zeros(tuple(lead_shape) + (self.dim,), dtype=dtype)
        for s, (_, idx) in self._groups.items():
            out[..., idx] = parts[s]
        return out

    def mul(self, x, y) -> np.ndarray:
        """Product of (batched) coordinate vectors; leading axes broadcast."""
        x = np.asarray(x, dtype=np.complex128)
        y = np.asarray(y, dtype=np.complex128)
        lead = np.broadcast_shapes(x.shape[:-1], y.shape[:-1])
        gx, gy = self.gather(x), self.gather(y)
        return self.scatter({s: gx[s] @ gy[s] for s in gx}, lead)

    def adjoint(self, x) -> np.ndarray:
        """Conjugate-transpose inside every block (the C*-involution)."""
        x = np.asarray(x, dtype=np.complex128)
        gx = self.gather(x)
        return self.scatter({s: np.conj(np.swapaxes(v, -1, -2)) for s, v in gx.items()}, x.shape[:-1])

    def unit(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.complex128)
        for b in self.blocks:
            out[np.diag(b)] = 1.0
        return out

    def star_matrix(self) -> np.ndarray:
        """``S`` with ``coords(x*) = S @ conj(coords(x))`` for the C*-involution."""
        return self.adjoint(np.eye(self.dim)).T.copy()

    def block_matrices(self, x) -> list[np.ndarray]:
        x = np.asarray(x)
        return [x[..., b] for b in self.blocks]

    def from_block_matrices(self, mats) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.complex128)
        for b, m in zip(self.blocks, mats):
            out[b] = m
        return out

    def operator(self, x) -> np.ndarray:
        """Block-diagonal matrix of ``x`` on ``H = C^{d_1} + ... + C^{d_K}``."""
        x = np.asarray(x, dtype=np.complex128)
        D = self.hilbert_dim
        out = np.zeros(x.shape[:-1] + (D, D), dtype=np.complex128)
        off = 0
        for b in self.blocks:
            d = b.shape[0]
            out[..., off:off + d, off:off + d] = x[..., b]
            off += d
        return out

    def concrete(self) -> np.ndarray:
        """Operators of all basis elements, shape ``(dim, D, D)``."""
        return self.operator(np.eye(self.dim, dtype=np.complex128))

    def structure_tensor(self) -> np.ndarray:
        eye = np.eye(self.dim, dtype=np.complex128)
        return self.mul(eye[:, None, :], eye[None, :, :])
