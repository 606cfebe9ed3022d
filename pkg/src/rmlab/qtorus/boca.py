"""
Boca's projection ``p_T = _A<m, m>`` with ``m = f_T Theta_{D^!}^{-1/2}``.

``Theta_{D^!} = <f_T, f_T>_{D^!}`` is a positive element of
``B = C(D^!, conj alpha)``; its inverse square root is computed by the
Newton-Schulz iteration ``X <- X (3 - Theta X^2) / 2`` inside the truncated
twisted convolution algebra.  Then ``m <m, m>_B = m`` and ``p`` is a
projection of ``A = C(D, alpha)`` with trace ``|K/D|``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convolution import TwistedAlgebra
from .heisenberg import EmbeddedLattice, SiegelPoint, dual_lattice, symplectic
from .theta import _coeff

__all__ = ["BocaResult", "newton_schulz_inv_sqrt", "boca_projection", "positivity_certificate"]


class NewtonSchulzDivergence(RuntimeError):
    pass


@dataclass
class BocaResult:
    p: np.ndarray
    algebra: TwistedAlgebra
    X: np.ndarray
    iterations: int
    idempotency: float
    selfadjointness: float
    trace: complex
    inv_sqrt_residual: float
    min_eigenvalue: float

    def as_dict(self):
        return {tuple(map(int, g)): complex(c) for g, c in zip(self.algebra.g, self.p)}


def positivity_certificate(alg: TwistedAlgebra, theta: np.ndarray) -> float:
    """Smallest eigenvalue of the (Hermitian) left regular matrix of ``theta``.

    A heuristic certificate: it concerns the truncation, not the algebra.
    """
    M = alg.left_regular(theta)
    M = 0.5 * (M + M.conj().T)
    return float(np.linalg.eigvalsh(M).min())


def newton_schulz_inv_sqrt(alg: TwistedAlgebra, theta: np.ndarray, tol: float = 1e-15, max_iter: int = 200):
    """``theta^{-1/2}`` by ``X <- X (3 - theta X^2) / 2``.

    Seeded with ``X0 = ||theta||_1^{-1/2}``: then ``theta X0^2`` has spectrum
    in ``(0, 1]`` and the iteration converges quadratically.  Divergence
    (growing updates) raises instead of being damped.
    """
    one = alg.one()
    X = one / np.sqrt(np.abs(theta).sum())
    prev = np.inf
    for it in range(1, max_iter + 1):
        Xn = 0.5 * alg.mul(X, 3 * one - alg.mul(theta, alg.mul(X, X)))
        step = float(np.abs(Xn - X).max())
        X = Xn
        if not np.isfinite(step) or (it > 5 and step > 10 * prev):
            raise NewtonSchulzDivergence(f"Newton-Schulz diverged at iteration {it}")
        if step < tol:
            break
        prev = step
    residual = float(np.abs(alg.mul(alg.mul(X, X), theta) - one).max())
    return X, it, residual


def boca_projection(D: EmbeddedLattice, T: SiegelPoint, R: float, newton_tol: float = 1e-15) -> BocaResult:
    """Truncated coefficients of ``p_T`` on ``D`` (points with ``|h| <= R``).

    ``m = sum_k X_k f_T e(k) = sum_k X_k pi(-k) f_T`` and
    ``p_h = |K/D| <m, pi(h) m>``, where
    ``<pi(a) f, pi(h) pi(b) f> = conj(exp(pi i A(-a, h) + pi i A(h - a, b))) c(h - a + b)``
    and ``c(z) = <f_T, pi(z) f_T>`` is the quantum theta coefficient.
    """
    if D.N != 1:
        raise ValueError("Boca projection implemented for N = 1")
    Dd = dual_lattice(D)
    Balg = TwistedAlgebra(Dd, R)
    Aalg = TwistedAlgebra(D, R)
    theta = _coeff(T, Balg.v).astype(complex)
    lam = positivity_certificate(Balg, theta)
    if lam <= 0:
        raise ValueError(f"Theta_D! is not numerically positive (min eigenvalue {lam})")
    X, its, res = newton_schulz_inv_sqrt(Balg, theta, newton_tol)

    a = -Balg.v  # pi(-k) f
    Xa, Xb = X[:, None], np.conj(X)[None, :]
    p = np.empty(Aalg.n, complex)
    A_ = a[:, None, :]
    B_ = a[None, :, :]
    for i, h in enumerate(Aalg.v):
        ph = np.exp(1j * np.pi * symplectic(-A_, h) + 1j * np.pi * symplectic(h - A_, B_))
        z = h - A_ + B_
        p[i] = np.sum(Xa * Xb * np.conj(ph) * _coeff(T, z))
    p *= D.covolume

    pp = Aalg.mul(p, p)
    return BocaResult(
        p=p,
        algebra=Aalg,
        X=X,
        iterations=its,
        idempotency=float(np.abs(pp - p).max()),
        selfadjointness=float(np.abs(Aalg.adjoint(p) - p).max()),
        trace=Aalg.trace(p),
        inv_sqrt_residual=res,
        min_eigenvalue=lam,
    )
