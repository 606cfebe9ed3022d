"""
Quantum theta functions ``Theta_D = _D<f_T, f_T>`` and their functional equations.

The coefficient of ``e(h)`` is

    c_h = (2^N det Im T)^{-1/2} exp(-(pi/2) h_^T (Im T)^{-1} h_*),

``h_ = T h1 + h2``, ``h_* = conj(T) h1 + h2``.  The same formula on the dual
lattice (with the conjugate cocycle) gives ``Theta_{D^!}``.

The functional equation is the per coefficient identity

    c_g exp(X_g(h-g) + s pi i A(g, h-g)) c_{h-g} = c_h,
    X_g(h) = -pi Re(g_^T (Im T)^{-1} h_*) - s pi i A(g, h),

with ``s = +1`` on ``D`` and ``s = -1`` on ``D^!``.  Expanding the quadratic
form shows that it holds for ``c_g = exp(-(pi/2) g_^T (Im T)^{-1} g_*)``;
``literal=True`` uses ``exp(+(3 pi/2) ...)`` instead, which does not satisfy it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .heisenberg import EmbeddedLattice, SiegelPoint, symplectic

__all__ = ["QuantumThetaSeries", "qtheta_coeffs", "qtheta_multiplier", "qtheta_fe_residual"]


@dataclass
class QuantumThetaSeries:
    """Truncated coefficient map ``h -> c_h`` of a quantum theta on ``lattice``."""

    lattice: EmbeddedLattice
    T: SiegelPoint
    R: float
    g: np.ndarray
    v: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        self._index = {tuple(map(int, p)): i for i, p in enumerate(self.g)}

    def __getitem__(self, h) -> complex:
        return complex(self.coeffs[self._index[tuple(int(x) for x in h)]])

    def __contains__(self, h) -> bool:
        return tuple(int(x) for x in h) in self._index

    def as_dict(self) -> dict[tuple[int, ...], complex]:
        return {tuple(map(int, p)): complex(c) for p, c in zip(self.g, self.coeffs)}


def _coeff(T: SiegelPoint, v: np.ndarray) -> np.ndarray:
    N = T.N
    norm = (2.0**N * np.linalg.det(T.Y)) ** -0.5
    return norm * np.exp(-np.pi / 2 * T.form(v, v).real)


def qtheta_coeffs(D: EmbeddedLattice, T: SiegelPoint, R: float) -> QuantumThetaSeries:
    """Coefficients of ``Theta_D`` for lattice points with ``|h| <= R``.

    >>> import numpy as np
    >>> s = qtheta_coeffs(EmbeddedLattice(np.eye(2)), SiegelPoint(np.array([[1j]])), 1)
    >>> round(s[(0, 0)].real, 12)
    0.707106781187
    """
    if D.N != T.N:
        raise ValueError("dimension mismatch between lattice and T")
    g, v = D.points(R)
    return QuantumThetaSeries(D, T, R, g, v, _coeff(T, v).astype(complex))


def qtheta_multiplier(T: SiegelPoint, gv, literal: bool = False) -> complex:
    """The constant ``c_g`` of the functional equation (``literal`` selects the ``3 pi / 2`` variant)."""
    q = T.form(gv, gv).real
    return complex(np.exp(1.5 * np.pi * q) if literal else np.exp(-0.5 * np.pi * q))


def qtheta_fe_residual(series: QuantumThetaSeries, g, literal: bool = False) -> float:
    """``max_h |c_g exp(X_g(h-g) + s pi i A(g,h-g)) c_{h-g} - c_h|`` over ``|h| <= R/2``.

    ``s`` is the cocycle sign of the series' lattice.  ``g`` is given by its
    integer coordinates and must satisfy ``|g| <= R/2``.
    """
    D, T = series.lattice, series.T
    g = np.asarray(g)
    gv = D.embed(g)
    if np.linalg.norm(gv) > series.R / 2 + 1e-12:
        raise ValueError("g must lie within R/2 of the origin")
    s = D.sign
    cg = qtheta_multiplier(T, gv, literal)
    worst = 0.0
    for hg, hv, ch in zip(series.g, series.v, series.coeffs):
        if np.linalg.norm(hv) > series.R / 2 + 1e-12:
            continue
        dv = hv - gv
        X = -np.pi * T.form(gv, dv).real - s * 1j * np.pi * symplectic(gv, dv)
        lhs = cg * np.exp(X + s * 1j * np.pi * symplectic(gv, dv)) * series[hg - g]
        worst = max(worst, abs(lhs - ch))
    return worst
