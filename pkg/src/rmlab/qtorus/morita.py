"""
Morita matrices acting on the parameter of an irrational rotation algebra.

``g`` in GL2(Z) sends ``theta`` to ``g theta = (a theta + b)/(c theta + d)``;
the automorphy factor ``j(g, theta) = c theta + d`` is kept positive by
replacing ``g`` with ``-g`` (which has the same action).  It is the trace
scaling of the corresponding equivalence bimodule, and it is multiplicative:
``j(gh, theta) = j(g, h theta) j(h, theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..pseudolattice import GL2ZMatrix
from ..quadfield import QuadElem

__all__ = ["MoritaMatrix", "morita_act", "morita_compose"]


def _sign(x) -> int:
    if isinstance(x, QuadElem):
        return x.sign()
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class MoritaMatrix:
    """``g`` together with its source ``theta``; ``target = g theta``, ``c theta + d > 0``."""

    g: GL2ZMatrix
    theta: QuadElem | float

    def __post_init__(self):
        if self.g.det() not in (1, -1):
            raise ValueError("Morita matrix must be unimodular")
        if _sign(self.cocycle) <= 0:
            raise ValueError("sign condition c theta + d > 0 violated; use normalized()")

    @classmethod
    def normalized(cls, g: GL2ZMatrix, theta) -> MoritaMatrix:
        """Replace ``g`` by ``-g`` if needed so that ``c theta + d > 0``."""
        j = theta * g.c + g.d
        if _sign(j) == 0:
            raise ValueError("c theta + d = 0: theta is rational")
        return cls(-g if _sign(j) < 0 else g, theta)

    @property
    def cocycle(self):
        return self.theta * self.g.c + self.g.d

    @property
    def target(self):
        return (self.theta * self.g.a + self.g.b) / self.cocycle


def morita_act(g: GL2ZMatrix, theta) -> tuple:
    """``(theta', j)`` with ``theta' = g theta`` and ``j = c theta + d > 0`` (``g`` normalized).

    >>> from rmlab.quadfield import parse_elem
    >>> t, j = morita_act(GL2ZMatrix(0, 1, 1, 0), parse_elem("0 1 2"))
    >>> str(t), str(j)
    ('0 1 2 /2', '0 1 2')
    """
    m = MoritaMatrix.normalized(g, theta)
    return m.target, m.cocycle


def morita_compose(g: GL2ZMatrix, h: GL2ZMatrix, theta) -> dict:
    """Compose ``theta -> h theta -> g h theta`` and compare the cocycles.

    Returns the normalized product and the three cocycle values
    ``j(gh, theta)``, ``j(g, h theta)``, ``j(h, theta)``.
    """
    mh = MoritaMatrix.normalized(h, theta)
    mg = MoritaMatrix.normalized(g, mh.target)
    gh = MoritaMatrix.normalized(mg.g @ mh.g, theta)
    return {
        "product": gh.g,
        "target": gh.target,
        "j_product": gh.cocycle,
        "j_outer": mg.cocycle,
        "j_inner": mh.cocycle,
        "multiplicative": gh.cocycle == mg.cocycle * mh.cocycle,
    }
