"""
The equivalence bimodule between ``A_theta'`` and ``A_theta`` attached to ``g``.

Functions ``f(x, mu)`` on ``R x Z/|c|`` carry the actions

    (f U)(x, mu)  = f(x - (c theta + d)/c, mu - 1)
    (f V)(x, mu)  = exp(2 pi i (x - mu d / c)) f(x, mu)
    (U' f)(x, mu) = f(x - 1/c, mu - a)
    (V' f)(x, mu) = exp(2 pi i (x / (c theta + d) - mu / c)) f(x, mu)

Here functions are plain callables ``f(x, mu)`` (vectorized in ``x``), and
the operators return new callables.
"""

from __future__ import annotations

import math

import numpy as np

from ..pseudolattice import GL2ZMatrix
from .morita import MoritaMatrix

__all__ = ["BimoduleOperators", "bimodule_action_residual"]


class BimoduleOperators:
    """The four operators for ``g`` (normalized so ``c theta + d > 0``) and real ``theta``."""

    def __init__(self, theta: float, g: GL2ZMatrix):
        if g.c == 0:
            raise ValueError("the bimodule needs c != 0")
        self.theta = float(theta)
        m = MoritaMatrix.normalized(g, self.theta)
        self.g = m.g
        self.a, self.b, self.c, self.d = m.g.a, m.g.b, m.g.c, m.g.d
        self.j = float(m.cocycle)
        self.theta_prime = float(m.target)
        self.modulus = abs(self.c)

    def _mu(self, mu):
        return np.mod(mu, self.modulus)

    def U(self, f):
        s = self.j / self.c
        return lambda x, mu: f(x - s, self._mu(mu - 1))

    def V(self, f):
        return lambda x, mu: np.exp(2j * np.pi * (x - mu * self.d / self.c)) * f(x, mu)

    def Up(self, f):
        return lambda x, mu: f(x - 1 / self.c, self._mu(mu - self.a))

    def Vp(self, f):
        return lambda x, mu: np.exp(2j * np.pi * (x / self.j - mu / self.c)) * f(x, mu)

    def predicted_left_phase(self) -> float:
        """``theta' - (1 - det g)/(c (c theta + d))``: exponent of the measured left relation."""
        return self.theta_prime - (1 - self.g.det()) / (self.c * self.j)


def bimodule_action_residual(theta: float, g: GL2ZMatrix, f=None, X: float = 5.0, npts: int = 64) -> dict:
    """Residuals of the right and left commutation relations and of left/right commutation.

    * right relation: ``f(UV) = e^{2 pi i theta} f(VU)`` (``f(UV)`` means ``(fU)V``);
    * left relation: ``U'V'f = e^{2 pi i phi} V'U'f`` with the phase ``phi``
      measured at a point where ``f`` is not small, and compared (mod 1) with
      :meth:`BimoduleOperators.predicted_left_phase`;
    * the left operators commute with the right ones.
    """
    ops = BimoduleOperators(theta, g)
    if f is None:
        def f(x, mu):
            mu = np.asarray(mu, dtype=float)
            return np.exp(-((x - 0.3 * mu) ** 2) / 2 + 0.7j * x) * (1 + 0.25 * mu)

    xs = np.linspace(-X, X, npts)
    mus = np.arange(ops.modulus)
    x, mu = np.meshgrid(xs, mus, indexing="ij")

    fUV = ops.V(ops.U(f))(x, mu)
    fVU = ops.U(ops.V(f))(x, mu)
    right = float(np.abs(fUV - np.exp(2j * np.pi * ops.theta) * fVU).max())

    UpVp = ops.Up(ops.Vp(f))(x, mu)
    VpUp = ops.Vp(ops.Up(f))(x, mu)
    k = np.unravel_index(np.argmax(np.abs(VpUp)), VpUp.shape)
    phase = UpVp[k] / VpUp[k]
    measured = float(np.angle(phase) / (2 * np.pi))
    predicted = ops.predicted_left_phase()
    predicted_mod1 = predicted - math.floor(predicted + 0.5)
    left = float(np.abs(UpVp - np.exp(2j * np.pi * predicted) * VpUp).max())

    pairs = {
        "U'U": (ops.Up(ops.U(f)), ops.U(ops.Up(f))),
        "U'V": (ops.Up(ops.V(f)), ops.V(ops.Up(f))),
        "V'U": (ops.Vp(ops.U(f)), ops.U(ops.Vp(f))),
        "V'V": (ops.Vp(ops.V(f)), ops.V(ops.Vp(f))),
    }
    commute = {k: float(np.abs(p(x, mu) - q(x, mu)).max()) for k, (p, q) in pairs.items()}

    ratio = fUV[k] / fVU[k]
    return {
        "g": ops.g.rows(),
        "theta_prime": ops.theta_prime,
        "right_relation": right,
        "right_phase_error": float(abs(ratio - np.exp(2j * np.pi * ops.theta))),
        "left_relation": left,
        "left_phase_measured": measured,
        "left_phase_predicted": predicted_mod1,
        "left_phase_error": float(abs(phase - np.exp(2j * np.pi * predicted))),
        "commutation": commute,
        "max_residual": max(right, left, *commute.values()),
    }
