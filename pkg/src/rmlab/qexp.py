"""
Truncated noncommutative q-series.

Elements of the completed algebra generated by ``u, v`` with ``uv = q^2 vu``
are stored in normal order ``v^b u^a`` with coefficients that are integer
polynomials in ``q``.  Two truncations are applied: total degree
``a + b <= Ndeg`` and ``q``-degree ``<= Qdeg``.  Both are ideals, so
arithmetic in the truncation is exact.

The q-exponential is

    e_q(t) = prod_{n >= 0} (1 + q^{2n+1} t),

and the identities checked are

    e_q(u) e_q(v) = e_q(u + v)                      (addition)
    e_q(v) e_q(u) = e_q(u) e_q(mu vu) e_q(v)        (pentagon)

The pentagon holds with the scaling ``mu = q`` (middle argument
``q vu = q^{-1} uv``); with the scaling ``mu = 1`` it already fails at the
``vu`` monomial, where ``LHS - RHS = -q/(1+q)``.  In
:class:`QSeriesParams` the scaling is stored as its exponent ``k`` in ``q^k``.

Classical companions: the Rogers five term identity for
``L(x) = L_2(x) + log(1-x) log(x)/2`` and the ``q -> 1`` asymptotic of
``log e_q(t)`` with ``q = exp(-2 pi y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import spence

__all__ = [
    "QSeriesParams",
    "NCPoly",
    "nc_mul",
    "eq_series",
    "addition_check",
    "pentagon_check",
    "pentagon_obstruction",
    "euler_coefficient",
    "dilog",
    "rogers_L",
    "rogers_numeric",
    "log_eq",
    "dilog_asymptotic",
    "halving_ratio",
]


@dataclass(frozen=True)
class QSeriesParams:
    """Truncation data; ``mu`` is the exponent ``k`` of the pentagon scaling ``q^k``."""

    Ndeg: int = 6
    Qdeg: int = 40
    mu: int = 1

    def __post_init__(self):
        if self.Ndeg < 0 or self.Qdeg < 1:
            raise ValueError("need Ndeg >= 0 and Qdeg >= 1")
        if self.mu < 0:
            raise ValueError("mu must be a nonnegative power of q")


def parse_mu(text) -> int:
    """``"q"`` -> 1, ``"1"`` -> 0, ``"q^k"`` -> k."""
    s = str(text).strip().replace("**", "^")
    if s == "1":
        return 0
    if s == "q":
        return 1
    if s.startswith("q^") and s[2:].isdigit():
        return int(s[2:])
    raise ValueError(f"mu must be '1', 'q' or 'q^k', got {text!r}")


def _zeros(Q):
    return np.zeros(Q + 1, dtype=object)


class NCPoly:
    """Normal ordered truncated polynomial ``sum c_{b,a}(q) v^b u^a``.

    ``coeffs`` maps ``(b, a)`` to an object array of length ``Qdeg + 1``
    holding the integer coefficients of ``1, q, ..., q^Qdeg``.

    >>> p = NCPoly.u(QSeriesParams(2, 4)) * NCPoly.v(QSeriesParams(2, 4))
    >>> p.coefficient(1, 1)
    [0, 0, 1, 0, 0]
    """

    def __init__(self, coeffs: dict, params: QSeriesParams):
        self.params = params
        self.coeffs = {}
        for (b, a), c in coeffs.items():
            if a + b > params.Ndeg:
                continue
            arr = _zeros(params.Qdeg)
            c = list(c)[: params.Qdeg + 1]
            arr[: len(c)] = [int(x) for x in c]
            if any(arr):
                self.coeffs[(b, a)] = arr

    @classmethod
    def monomial(cls, b: int, a: int, params: QSeriesParams, qpow: int = 0, coef: int = 1) -> "NCPoly":
        c = _zeros(params.Qdeg)
        if qpow <= params.Qdeg:
            c[qpow] = coef
        return cls({(b, a): c}, params)

    @classmethod
    def one(cls, params):
        return cls.monomial(0, 0, params)

    @classmethod
    def u(cls, params):
        return cls.monomial(0, 1, params)

    @classmethod
    def v(cls, params):
        return cls.monomial(1, 0, params)

    def coefficient(self, b: int, a: int) -> list[int]:
        c = self.coeffs.get((b, a))
        return [0] * (self.params.Qdeg + 1) if c is None else [int(x) for x in c]

    def _check(self, other):
        if self.params.Ndeg != other.params.Ndeg or self.params.Qdeg != other.params.Qdeg:
            raise ValueError("incompatible truncation parameters")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = {k: v.copy() for k, v in self.coeffs.items()}
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v.copy()
        return NCPoly(out, self.params)

    def __neg__(self):
        return NCPoly({k: -v for k, v in self.coeffs.items()}, self.params)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        return nc_mul(self, other)

    def shift_q(self, k: int) -> "NCPoly":
        """Multiply by ``q^k`` (``k >= 0``)."""
        Q = self.params.Qdeg
        out = {}
        for key, c in self.coeffs.items():
            s = _zeros(Q)
            if k <= Q:
                s[k:] = c[: Q + 1 - k]
            out[key] = s
        return NCPoly(out, self.params)

    def constant_term(self) -> list[int]:
        return self.coefficient(0, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs(self) -> int:
        return max((int(max(abs(x) for x in c)) for c in self.coeffs.values()), default=0)

    def __eq__(self, other):
        return isinstance(other, NCPoly) and (self - other).is_zero()

    def __repr__(self):
        return f"NCPoly({len(self.coeffs)} monomials, Ndeg={self.params.Ndeg}, Qdeg={self.params.Qdeg})"


def nc_mul(x: NCPoly, y: NCPoly) -> NCPoly:
    """Normal ordered product: ``v^b u^a . v^b' u^a' = q^{2ab'} v^{b+b'} u^{a+a'}``.

    >>> P = QSeriesParams(2, 6)
    >>> (NCPoly.v(P) * NCPoly.u(P)).coefficient(1, 1)
    [1, 0, 0, 0, 0, 0, 0]
    """
    x._check(y)
    N, Q = x.params.Ndeg, x.params.Qdeg
    out: dict = {}
    for (b1, a1), c1 in x.coeffs.items():
        for (b2, a2), c2 in y.coeffs.items():
            s = 2 * a1 * b2
            if a1 + b1 + a2 + b2 > N or s > Q:
                continue
            c = np.convolve(c1, c2)[: Q + 1 - s]
            key = (b1 + b2, a1 + a2)
            acc = out.setdefault(key, _zeros(Q))
            acc[s:] += c
    return NCPoly(out, x.params)


def eq_series(t: NCPoly, params: QSeriesParams | None = None) -> NCPoly:
    """``e_q(t) = prod_{2n+1 <= Qdeg} (1 + q^{2n+1} t)`` in the truncation.

    >>> P = QSeriesParams(1, 7)
    >>> eq_series(NCPoly.u(P)).coefficient(0, 1)
    [0, 1, 0, 1, 0, 1, 0, 1]
    """
    params = params or t.params
    if any(t.constant_term()):
        raise ValueError("e_q needs an argument without constant term")
    one = NCPoly.one(params)
    r = one
    n = 0
    while 2 * n + 1 <= params.Qdeg:
        r = r * (one + t.shift_q(2 * n + 1))
        n += 1
    return r


def euler_coefficient(k: int, Qdeg: int) -> list[int]:
    """``q^{k^2} / ((q^2; q^2)_k)`` truncated at ``q^Qdeg`` (coefficient of ``t^k`` in ``e_q(t)``)."""
    c = [0] * (Qdeg + 1)
    if k * k <= Qdeg:
        c[k * k] = 1
    for j in range(1, k + 1):
        # divide by (1 - q^{2j}): c_n += c_{n - 2j}
        for n in range(2 * j, Qdeg + 1):
            c[n] += c[n - 2 * j]
    return c


def addition_check(params: QSeriesParams) -> NCPoly:
    """``e_q(u) e_q(v) - e_q(u + v)``; identically zero in the truncation."""
    u, v = NCPoly.u(params), NCPoly.v(params)
    return eq_series(u) * eq_series(v) - eq_series(u + v)


def pentagon_check(params: QSeriesParams) -> NCPoly:
    """``e_q(v) e_q(u) - e_q(u) e_q(q^mu vu) e_q(v)``.

    Zero for ``params.mu = 1`` (scaling ``q``); for ``params.mu = 0``
    (scaling ``1``) the ``vu`` coefficient is ``-q/(1+q)``.
    """
    u, v = NCPoly.u(params), NCPoly.v(params)
    vu = NCPoly.monomial(1, 1, params, qpow=params.mu)
    return eq_series(v) * eq_series(u) - eq_series(u) * eq_series(vu) * eq_series(v)


def pentagon_obstruction(Qdeg: int) -> list[int]:
    """Truncated series of ``-q/(1+q)``, the ``vu`` coefficient of the residual with scaling ``1``."""
    return [0] + [(-1) ** n for n in range(1, Qdeg + 1)]


def dilog(x: float) -> float:
    """``L_2(x) = sum x^n / n^2`` for real ``x <= 1``."""
    if x > 1:
        raise ValueError("L_2 is real only for x <= 1")
    return float(spence(1.0 - x))


def rogers_L(x: float) -> float:
    """Rogers dilogarithm ``L_2(x) + log(1-x) log(x) / 2`` on ``(0, 1)``."""
    if not 0 < x < 1:
        raise ValueError("Rogers L needs 0 < x < 1")
    return dilog(x) + 0.5 * math.log1p(-x) * math.log(x)


def rogers_numeric(x: float, y: float) -> float:
    """``|L(x) + L(y) - L(xy) - L((x-xy)/(1-xy)) - L((y-xy)/(1-xy))|``.

    >>> rogers_numeric(0.5, 0.5) < 1e-14
    True
    """
    if not (0 < x < 1 and 0 < y < 1):
        raise ValueError("need 0 < x, y < 1")
    xy = x * y
    lhs = rogers_L(x) + rogers_L(y) - rogers_L(xy)
    rhs = rogers_L((x - xy) / (1 - xy)) + rogers_L((y - xy) / (1 - xy))
    return abs(lhs - rhs)


def log_eq(t: float, y: float, tol: float = 1e-18) -> float:
    """``log e_q(t) = sum_n log(1 + q^{2n+1} t)`` for ``q = exp(-2 pi y)``."""
    if t <= 0 or y <= 0:
        raise ValueError("need t > 0 and y > 0")
    q2 = math.exp(-4 * math.pi * y)
    qn = math.exp(-2 * math.pi * y)
    terms = []
    while True:
        term = math.log1p(qn * t)
        terms.append(term)
        if term < tol:
            break
        qn *= q2
    return math.fsum(terms)


def dilog_asymptotic(t: float, y: float, literal: bool = False) -> float:
    """Remainder ``r(y)`` of the ``q -> 1`` asymptotic of ``log e_q(t)``, ``q = exp(-2 pi y)``.

    The sum ``sum_n log(1 + q^{2n+1} t)`` is a midpoint rule with step
    ``4 pi y``, so ``log e_q(t) = -L_2(-t)/(4 pi y) + O(y)`` with no
    ``log(1 + qt)`` correction; ``r = |log e_q(t) + L_2(-t)/(4 pi y)|``.
    ``literal=True`` adds the ``(1/2) log(1 + qt)`` term, which makes
    ``r(y)`` tend to ``log(1 + t)/2`` instead of zero.
    """
    q = math.exp(-2 * math.pi * y)
    r = log_eq(t, y) + dilog(-t) / (4 * math.pi * y)
    if literal:
        r += 0.5 * math.log1p(q * t)
    return abs(r)


def halving_ratio(t: float = 1.0, y: float = 0.01, literal: bool = False) -> float:
    """``r(y) / r(2y)``; about 1/2 when the remainder is ``O(y)``."""
    return dilog_asymptotic(t, y, literal) / dilog_asymptotic(t, 2 * y, literal)
