"""
Heisenberg representation on ``L2(R^N)``, embedded lattices and Gaussians.

Points of ``R^{2N}`` are split as ``x = (x1, x2)``; the symplectic form is
``A(x, y) = x1.y2 - x2.y1``.  A point ``z`` acts by

    (pi(z) f)(x) = exp(2 pi i x.z2 + pi i z1.z2) f(x + z1),

so that ``pi(z) pi(w) = exp(pi i A(z, w)) pi(z + w)``.  The Gaussians
``exp(pi i x^T T x + 2 pi i b.x + c)`` are stable under ``pi`` and have closed
form ``L2`` inner products, which is what every oracle below relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate

__all__ = [
    "symplectic",
    "EmbeddedLattice",
    "SiegelPoint",
    "GaussianVector",
    "dual_lattice",
    "heisenberg_inner",
    "mumford_theta_check",
    "classical_theta",
]


def symplectic(x, y) -> np.ndarray:
    """``A(x, y) = x1.y2 - x2.y1`` along the last axis (broadcasting)."""
    x, y = np.asarray(x), np.asarray(y)
    N = x.shape[-1] // 2
    return np.sum(x[..., :N] * y[..., N:], axis=-1) - np.sum(x[..., N:] * y[..., :N], axis=-1)


def _jmat(N: int) -> np.ndarray:
    J = np.zeros((2 * N, 2 * N))
    J[:N, N:] = np.eye(N)
    J[N:, :N] = -np.eye(N)
    return J


@dataclass(frozen=True, eq=False)
class EmbeddedLattice:
    """Lattice ``D = B Z^{2N}`` in ``R^{2N}`` (columns of ``B`` are the generators).

    ``sign`` selects the cocycle ``alpha(g, h) = exp(sign pi i A(g, h))`` used for
    products ``e(g) e(h) = alpha(g, h) e(g + h)``: ``+1`` for ``D``, ``-1`` for
    the conjugate cocycle carried by the dual lattice.
    """

    B: np.ndarray
    sign: int = 1

    def __post_init__(self):
        B = np.asarray(self.B, dtype=float)
        if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape[0] % 2:
            raise ValueError("B must be a square 2N x 2N matrix")
        if abs(np.linalg.det(B)) < 1e-14:
            raise ValueError("B is singular")
        object.__setattr__(self, "B", B)

    @property
    def N(self) -> int:
        return self.B.shape[0] // 2

    @property
    def covolume(self) -> float:
        return abs(float(np.linalg.det(self.B)))

    def embed(self, g) -> np.ndarray:
        return np.asarray(g) @ self.B.T

    def alpha(self, g, h) -> np.ndarray:
        return np.exp(self.sign * 1j * np.pi * symplectic(self.embed(g), self.embed(h)))

    def points(self, R: float) -> tuple[np.ndarray, np.ndarray]:
        """Integer coordinates and embedded vectors with Euclidean norm ``<= R``.

        Sorted by norm, ties by the integer coordinates.
        """
        Binv = np.linalg.inv(self.B)
        M = np.ceil(R * np.sqrt((Binv**2).sum(axis=1))).astype(int) + 1
        axes = [np.arange(-m, m + 1) for m in M]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(M))
        vec = self.embed(grid)
        r = np.linalg.norm(vec, axis=1)
        keep = r <= R + 1e-12
        grid, vec, r = grid[keep], vec[keep], r[keep]
        order = np.lexsort(tuple(grid[:, k] for k in range(grid.shape[1] - 1, -1, -1)) + (np.round(r, 12),))
        return grid[order], vec[order]


def dual_lattice(D: EmbeddedLattice) -> EmbeddedLattice:
    """``D^! = {x : A(d, x) in Z for all d in D}``, with the conjugate cocycle.

    ``A(B g, x) = g^T B^T J x``, so ``D^!`` is spanned by the columns of
    ``(B^T J)^{-1}``.
    """
    M = D.B.T @ _jmat(D.N)
    if abs(np.linalg.det(M)) < 1e-14:
        raise ValueError("symplectic pairing is degenerate on D")
    return EmbeddedLattice(np.linalg.inv(M), -D.sign)


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """Complex symmetric ``T`` with positive definite imaginary part."""

    T: np.ndarray

    def __post_init__(self):
        T = np.atleast_2d(np.asarray(self.T, dtype=complex))
        if T.shape[0] != T.shape[1]:
            raise ValueError("T must be square")
        if not np.allclose(T, T.T, atol=1e-14):
            raise ValueError("T must be symmetric")
        try:
            np.linalg.cholesky(T.imag)
        except np.linalg.LinAlgError:
            raise ValueError("Im T must be positive definite") from None
        object.__setattr__(self, "T", T)

    @property
    def N(self) -> int:
        return self.T.shape[0]

    @cached_property
    def Y(self) -> np.ndarray:
        return self.T.imag

    @cached_property
    def Yinv(self) -> np.ndarray:
        return np.linalg.inv(self.Y)

    def under(self, h) -> np.ndarray:
        """``h_ = T h1 + h2`` (rows of ``h``)."""
        h = np.asarray(h)
        N = self.N
        return h[..., :N] @ self.T.T + h[..., N:]

    def under_star(self, h) -> np.ndarray:
        """``h_* = conj(T) h1 + h2``."""
        h = np.asarray(h)
        N = self.N
        return h[..., :N] @ self.T.conj().T + h[..., N:]

    def form(self, g, h) -> np.ndarray:
        """``g_^T (Im T)^{-1} h_*``."""
        return np.einsum("...i,ij,...j->...", self.under(g), self.Yinv, self.under_star(h))

    def gaussian(self) -> GaussianVector:
        """``f_T(x) = exp(pi i x^T T x)``."""
        return GaussianVector(self.T, np.zeros(self.N, complex), 0j)


@dataclass(frozen=True, eq=False)
class GaussianVector:
    """``phi(x) = exp(pi i x^T T x + 2 pi i b.x + c)`` on ``R^N``."""

    T: np.ndarray
    b: np.ndarray
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "T", np.atleast_2d(np.asarray(self.T, dtype=complex)))
        object.__setattr__(self, "b", np.atleast_1d(np.asarray(self.b, dtype=complex)))
        object.__setattr__(self, "c", complex(self.c))

    @property
    def N(self) -> int:
        return self.T.shape[0]

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.N == 1 and (x.ndim == 0 or x.shape[-1] != 1):
            x = x[..., None]
        q = np.einsum("...i,ij,...j->...", x, self.T, x)
        return np.exp(1j * np.pi * q + 2j * np.pi * (x @ self.b) + self.c)

    def act(self, z) -> GaussianVector:
        """``pi(z) phi``."""
        z = np.asarray(z, dtype=float)
        N = self.N
        z1, z2 = z[:N], z[N:]
        b = self.b + self.T @ z1 + z2
        c = self.c + 1j * np.pi * (z1 @ self.T @ z1) + 2j * np.pi * (self.b @ z1) + 1j * np.pi * (z1 @ z2)
        return GaussianVector(self.T, b, c)

    def inner(self, other: GaussianVector) -> complex:
        """``<self, other> = int self(x) conj(other(x)) dx``."""
        P = -1j * np.pi * (self.T - other.T.conj())
        beta = 2j * np.pi * (self.b - other.b.conj())
        gamma = self.c + np.conj(other.c)
        # sqrt(det P) on the branch continuous from real positive definite P
        sqrt_det = np.prod(np.sqrt(np.linalg.eigvals(P)))
        quad = beta @ np.linalg.solve(P, beta)
        return complex(np.pi ** (self.N / 2) / sqrt_det * np.exp(quad / 4 + gamma))


# ---------------------------------------------------------------------------
# matrix coefficients of f_T


def heisenberg_inner(T: SiegelPoint, h, quad: bool = True, n: int = 241) -> tuple[complex, complex | None]:
    """``<f_T, pi(h) f_T>`` in closed form and by numerical integration.

    The closed form completes the square in the exponent
    ``pi i [x^T T x - (x+h1)^T conj(T) (x+h1) - 2 x.h2] - pi i h1.h2``:
    quadratic part ``x^T P x`` with ``P = 2 pi Im T``, linear part
    ``beta.x`` with ``beta = -2 pi i (conj(T) h1 + h2)``, giving
    ``pi^{N/2} det(P)^{-1/2} exp(beta^T P^{-1} beta / 4 - c)``.

    Quadrature: ``scipy.integrate.quad`` for ``N = 1``, a tensor trapezoid
    rule (spectrally accurate for this entire, Gaussian-decaying integrand)
    for ``N = 2``.
    """
    h = np.asarray(h, dtype=float)
    N = T.N
    h1, h2 = h[:N], h[N:]
    Tm = T.T
    P = 2 * np.pi * T.Y
    beta = -2j * np.pi * (Tm.conj() @ h1 + h2)
    c = 1j * np.pi * (h1 @ Tm.conj() @ h1) + 1j * np.pi * (h1 @ h2)
    closed = complex(
        np.pi ** (N / 2) / math.sqrt(np.linalg.det(P)) * np.exp(beta @ np.linalg.solve(P, beta) / 4 - c)
    )
    if not quad:
        return closed, None

    f = T.gaussian()
    g = f.act(h)

    def integrand(x):
        return f(x) * np.conj(g(x))

    if N == 1:
        W = math.sqrt(40.0 / (2 * math.pi * T.Y[0, 0])) + abs(h1[0])
        re = integrate.quad(lambda x: integrand(x).real, -W, W, limit=400, epsabs=1e-14, epsrel=1e-13)[0]
        im = integrate.quad(lambda x: integrand(x).imag, -W, W, limit=400, epsabs=1e-14, epsrel=1e-13)[0]
        return closed, complex(re, im)
    if N == 2:
        lam = np.linalg.eigvalsh(T.Y).min()
        W = math.sqrt(40.0 / (2 * math.pi * lam)) + np.abs(h1).max()
        x = np.linspace(-W, W, n)
        dx = x[1] - x[0]
        X = np.stack(np.meshgrid(x, x, indexing="ij"), axis=-1)
        vals = integrand(X)
        w = np.full(n, dx)
        w[0] = w[-1] = dx / 2
        return closed, complex(w @ vals @ w)
    raise ValueError("quadrature oracle implemented for N <= 2")


def classical_theta(z: complex, T: complex, nmax: int | None = None) -> complex:
    """``theta(z, T) = sum_n exp(pi i n^2 T + 2 pi i n z)`` for ``N = 1``."""
    T, z = complex(T), complex(z)
    if nmax is None:
        nmax = int(math.ceil(abs(z.imag) / T.imag + math.sqrt(40.0 / (math.pi * T.imag)))) + 2
    n = np.arange(-nmax, nmax + 1)
    return complex(np.sum(np.exp(1j * np.pi * n * n * T + 2j * np.pi * n * z)))


def mumford_theta_check(T: complex, xs, nmax: int | None = None) -> dict:
    """Compare ``<U_(1,x) f_T, e_Z> = sum_n (pi(x) f_T)(n)`` with ``exp(pi i x1 x_) theta(x_, T)``.

    ``x_ = T x1 + x2``.  Returns the ratios, their mean and the maximal
    deviation from the mean (the relation holds with an unspecified constant).
    """
    T = complex(T)
    f = GaussianVector(np.array([[T]]), np.zeros(1), 0j)
    ratios = []
    for x in xs:
        x1, x2 = float(x[0]), float(x[1])
        g = f.act(np.array([x1, x2]))
        m = nmax or int(math.ceil(math.sqrt(40.0 / (math.pi * T.imag)) + abs(x1))) + 2
        n = np.arange(-m, m + 1, dtype=float)
        pairing = complex(np.sum(g(n)))
        xu = T * x1 + x2
        ratios.append(pairing / (np.exp(1j * np.pi * x1 * xu) * classical_theta(xu, T)))
    ratios = np.array(ratios)
    mean = ratios.mean()
    return {"ratios": ratios, "constant": complex(mean), "max_deviation": float(np.abs(ratios - mean).max())}
