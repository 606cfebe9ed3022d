"""
Truncated twisted convolution algebras ``C(D, alpha)``.

An element is a coefficient vector over a finite, origin-symmetric set of
lattice points; products ``(F G)_h = sum_k F_k G_{h-k} alpha(k, h-k)`` are
computed on the full pair table and anything landing outside the support is
dropped (the dropped mass is reported by :meth:`TwistedAlgebra.dropped`).
"""

from __future__ import annotations

import numpy as np

from .heisenberg import EmbeddedLattice, symplectic

__all__ = ["TwistedAlgebra"]


class TwistedAlgebra:
    """Coefficient algebra on the points of ``D`` with ``|h| <= R``."""

    def __init__(self, D: EmbeddedLattice, R: float):
        self.D, self.R = D, R
        self.g, self.v = D.points(R)
        self.n = len(self.g)
        self._index = {tuple(map(int, p)): i for i, p in enumerate(self.g)}
        S = self.g[:, None, :] + self.g[None, :, :]
        tgt = np.full(S.shape[:2], -1, dtype=np.int64)
        flat = S.reshape(-1, S.shape[-1])
        tflat = tgt.reshape(-1)
        for k, p in enumerate(map(tuple, flat.tolist())):
            tflat[k] = self._index.get(p, -1)
        self.target = tgt
        self.mask = tgt >= 0
        self.phase = np.exp(D.sign * 1j * np.pi * symplectic(self.v[:, None, :], self.v[None, :, :]))
        self.neg = np.array([self._index[tuple(-x for x in p)] for p in self.g.tolist()])
        self.origin = self._index[tuple([0] * self.g.shape[1])]

    def index(self, g) -> int:
        return self._index[tuple(int(x) for x in g)]

    def one(self) -> np.ndarray:
        e = np.zeros(self.n, complex)
        e[self.origin] = 1.0
        return e

    def mul(self, F: np.ndarray, G: np.ndarray) -> np.ndarray:
        W = (F[:, None] * G[None, :] * self.phase)[self.mask]
        t = self.target[self.mask]
        return np.bincount(t, W.real, self.n) + 1j * np.bincount(t, W.imag, self.n)

    def dropped(self, F: np.ndarray, G: np.ndarray) -> float:
        """l1 mass of the product terms falling outside the truncation."""
        return float(np.abs(F[:, None] * G[None, :])[~self.mask].sum())

    def adjoint(self, F: np.ndarray) -> np.ndarray:
        """``F* = sum conj(F_h) e(-h)`` (since ``e(h)* = e(-h)``)."""
        return np.conj(F[self.neg])

    def trace(self, F: np.ndarray) -> complex:
        return complex(F[self.origin])

    def left_regular(self, F: np.ndarray) -> np.ndarray:
        """Matrix of ``G -> F G`` on the truncated coefficient space."""
        M = np.zeros((self.n, self.n), complex)
        # (F G)_t = sum_{k, j: k + j = t} F_k G_j alpha(k, j)
        k_idx, j_idx = np.nonzero(self.mask)
        np.add.at(M, (self.target[k_idx, j_idx], j_idx), F[k_idx] * self.phase[k_idx, j_idx])
        return M
