"""
Rieffel's scalar products on the Heisenberg module ``S(R^N)``.

For Schwartz vectors ``Phi, Psi``:

    _D<Phi, Psi>   = sum_{h in D}   <Phi, pi(h) Psi>  e_D(h),
    <Phi, Psi>_D!  = sum_{k in D^!} <pi(k) Psi, Phi>  e_{D^!}(k).

``A = C(D, alpha)`` acts on the left through ``pi``; ``B = C(D^!, conj alpha)``
acts on the right by ``Phi e(k) = pi(k)^* Phi = pi(-k) Phi``.  With
``_A< , > = |K/D| _D< , >`` and ``< , >_B = < , >_D!`` one has the
associativity ``_A<l, m> n = l <m, n>_B``, which is Poisson summation in
disguise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .heisenberg import EmbeddedLattice, GaussianVector, dual_lattice

__all__ = ["RieffelSeries", "rieffel_products", "rieffel_identity_residual", "left_action", "right_action"]


@dataclass
class RieffelSeries:
    lattice: EmbeddedLattice
    g: np.ndarray
    v: np.ndarray
    coeffs: np.ndarray
    normalization: float = 1.0

    def as_dict(self):
        return {tuple(map(int, p)): complex(c) for p, c in zip(self.g, self.coeffs)}


def rieffel_products(phi: GaussianVector, psi: GaussianVector, D: EmbeddedLattice, R: float):
    """Truncated coefficient maps of ``_D<phi, psi>`` and ``<phi, psi>_{D^!}``."""
    Dd = dual_lattice(D)
    g, v = D.points(R)
    a = np.array([phi.inner(psi.act(h)) for h in v])
    gd, vd = Dd.points(R)
    b = np.array([psi.act(k).inner(phi) for k in vd])
    return RieffelSeries(D, g, v, a), RieffelSeries(Dd, gd, vd, b)


def left_action(series: RieffelSeries, phi: GaussianVector, x, scale: float = 1.0) -> np.ndarray:
    """``(scale * sum a_h pi(h)) phi`` evaluated at the points ``x``."""
    out = np.zeros(np.shape(x)[:1] if phi.N > 1 else np.shape(x), complex)
    for c, h in zip(series.coeffs, series.v):
        out += scale * c * phi.act(h)(x)
    return out


def right_action(phi: GaussianVector, series: RieffelSeries, x) -> np.ndarray:
    """``phi (sum b_k e(k)) = sum b_k pi(-k) phi`` evaluated at ``x``."""
    out = np.zeros(np.shape(x)[:1] if phi.N > 1 else np.shape(x), complex)
    for c, k in zip(series.coeffs, series.v):
        out += c * phi.act(-k)(x)
    return out


def rieffel_identity_residual(l: GaussianVector, m: GaussianVector, n: GaussianVector, D: EmbeddedLattice, R: float, x):
    """``max |(|K/D| _D<l,m>) n - l <m,n>_{D^!}|`` over the sample points ``x``."""
    A_lm, _ = rieffel_products(l, m, D, R)
    _, B_mn = rieffel_products(m, n, D, R)
    lhs = left_action(A_lm, n, x, scale=D.covolume)
    rhs = right_action(l, B_mn, x)
    return float(np.abs(lhs - rhs).max()), lhs, rhs
