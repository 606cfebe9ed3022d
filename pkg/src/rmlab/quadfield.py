"""
Exact arithmetic in real quadratic fields ``K = Q(sqrt d)``.

Elements are stored as ``a + b*sqrt(d)`` with rational ``a, b`` and the
positive square root fixed as the real embedding.  Everything here is exact;
floats only appear in :meth:`QuadElem.__float__` and :meth:`QuadElem.to_mpf`.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from numbers import Rational

import mpmath

__all__ = [
    "QuadElem",
    "Order",
    "is_squarefree",
    "integer_basis",
    "fundamental_unit",
    "totally_positive_unit",
    "order_of_conductor",
    "parse_elem",
    "pretty_elem",
    "format_elem",
]


class FieldMismatchError(ValueError):
    """Raised when elements of different fields are combined."""


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def _check_d(d: int) -> None:
    if not isinstance(d, int) or d <= 1 or not is_squarefree(d):
        raise ValueError(f"d must be a squarefree integer > 1, got {d!r}")


def _float_precision() -> int | None:
    raw = os.environ.get("RMLAB_PRECISION")
    return int(raw) if raw else None


@total_ordering
@dataclass(frozen=True, eq=False)
class QuadElem:
    """The number ``a + b*sqrt(d)`` with ``a, b`` rational and ``d`` squarefree.

    Arithmetic with plain integers or :class:`fractions.Fraction` coerces them
    into the field; combining two elements with different ``d`` raises
    :class:`FieldMismatchError`.

    Examples
    --------
    >>> phi = QuadElem(Fraction(1, 2), Fraction(1, 2), 5)
    >>> phi.norm(), phi.trace()
    (Fraction(-1, 1), Fraction(1, 1))
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        _check_d(self.d)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def sqrt(cls, d: int) -> QuadElem:
        return cls(Fraction(0), Fraction(1), d)

    @classmethod
    def rational(cls, x, d: int) -> QuadElem:
        return cls(Fraction(x), Fraction(0), d)

    def _coerce(self, other) -> QuadElem:
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise FieldMismatchError(f"cannot combine Q(sqrt {self.d}) with Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Rational)):
            return QuadElem(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> QuadElem:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElem(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- Galois structure -----------------------------------------------------

    def conj(self) -> QuadElem:
        return QuadElem(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        """True iff the element lies in the ring of integers (integral norm and trace)."""
        return self.norm().denominator == 1 and self.trace().denominator == 1

    def is_totally_positive(self) -> bool:
        return self.sign() > 0 and self.conj().sign() > 0

    # -- exact ordering -------------------------------------------------------

    def sign(self) -> int:
        """Sign of the real embedding, decided without floating point."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with d b^2
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        guess = math.floor(float(self))
        while self < guess:
            guess -= 1
        while not self < guess + 1:
            guess += 1
        return guess

    # -- embeddings -----------------------------------------------------------

    def __float__(self) -> float:
        prec = _float_precision()
        if prec is not None and prec > 16:
            return float(self.to_mpf(prec))
        a, b = self.a, self.b
        if b == 0:
            return float(a)
        if a == 0 or (a > 0) == (b > 0):
            return float(a) + float(b) * math.sqrt(self.d)
        # cancellation: evaluate as norm / conjugate
        return float(self.norm()) / (float(a) - float(b) * math.sqrt(self.d))

    def to_mpf(self, dps: int = 30):
        with mpmath.workdps(dps + 5):
            return mpmath.mpf(self.a.numerator) / self.a.denominator + (
                mpmath.mpf(self.b.numerator) / self.b.denominator
            ) * mpmath.sqrt(self.d)

    def embeddings(self) -> tuple[float, float]:
        """The pair ``(x, x')`` of real embeddings."""
        return float(self), float(self.conj())

    def __repr__(self):
        return f"QuadElem({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        return format_elem(self)


# ---------------------------------------------------------------------------
# textual syntax  "a b d"  with a, b written p/q, optional trailing "/q"


_ELEM_RE = re.compile(r"^\s*(\S+)\s+(\S+)\s+(\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_elem(text: str) -> QuadElem:
    """Parse ``"a b d"`` (or ``"a b d /q"``) into ``(a + b*sqrt d)`` (divided by q).

    >>> parse_elem("1 1 5 /2")
    QuadElem(1/2, 1/2, d=5)
    >>> parse_elem("3/2 -1/2 13")
    QuadElem(3/2, -1/2, d=13)
    """
    m = _ELEM_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse quadratic element from {text!r}")
    a, b, d = Fraction(m.group(1)), Fraction(m.group(2)), int(m.group(3))
    q = int(m.group(4)) if m.group(4) else 1
    if q == 0:
        raise ValueError("zero denominator")
    return QuadElem(a / q, b / q, d)


def format_elem(x: QuadElem) -> str:
    """Serialize as ``"a b d /q"`` with integer a, b (the ``/q`` omitted when q=1)."""
    q = math.lcm(x.a.denominator, x.b.denominator)
    a, b = int(x.a * q), int(x.b * q)
    return f"{a} {b} {x.d}" + (f" /{q}" if q != 1 else "")


def pretty_elem(x: QuadElem) -> str:
    """Human readable form such as ``(1+√5)/2``."""
    q = math.lcm(x.a.denominator, x.b.denominator)
    a, b = int(x.a * q), int(x.b * q)
    if b == 0:
        return str(x.a)
    root = f"√{x.d}"
    bpart = root if abs(b) == 1 else f"{abs(b)}{root}"
    if a == 0:
        body = ("-" if b < 0 else "") + bpart
    else:
        body = f"{a}{'-' if b < 0 else '+'}{bpart}"
    if q == 1:
        return body
    return f"({body})/{q}"


# ---------------------------------------------------------------------------
# integers, units, orders


def integer_basis(d: int) -> tuple[QuadElem, QuadElem]:
    """Return ``(1, w)`` with ``Z + Z w`` the ring of integers of Q(sqrt d)."""
    _check_d(d)
    one = QuadElem(1, 0, d)
    if d % 4 == 1:
        return one, QuadElem(Fraction(1, 2), Fraction(1, 2), d)
    return one, QuadElem(0, 1, d)


@lru_cache(maxsize=None)
def fundamental_unit(d: int, bound: int = 10**7) -> QuadElem:
    """Smallest unit ``> 1`` of the ring of integers, found by a Pell search.

    Iterates ``y = 1, 2, ...`` and tests whether ``d y^2 - 1``, then ``d y^2 + 1`` (or ``d y^2 -+ 4``
    for the half-integral units when ``d = 1 mod 4``) is a perfect square.
    The first hit gives the fundamental unit since ``(x + y sqrt d)/k`` grows
    with ``y``.

    Raises
    ------
    RuntimeError
        if no unit is found with ``y <= bound``.
    """
    _check_d(d)
    half = d % 4 == 1
    # for fixed y the norm -1 candidate has the smaller x, hence is the smaller unit
    target = (-4, 4) if half else (-1, 1)
    for y in range(1, bound + 1):
        dy2 = d * y * y
        for t in target:
            x2 = dy2 + t
            if x2 <= 0:
                continue
            x = math.isqrt(x2)
            if x * x == x2:
                if half:
                    return QuadElem(Fraction(x, 2), Fraction(y, 2), d)
                return QuadElem(x, y, d)
    raise RuntimeError(f"no unit found for d={d} with y <= {bound}")


def totally_positive_unit(d: int) -> QuadElem:
    """Generator ``> 1`` of the totally positive units: ``e`` or ``e^2``."""
    eps = fundamental_unit(d)
    if eps.norm() == 1:
        return eps
    return eps * eps


@dataclass(frozen=True)
class Order:
    """The order ``R_f = Z + f O_K`` of conductor ``f`` in Q(sqrt d)."""

    d: int
    f: int

    def __post_init__(self):
        _check_d(self.d)
        if not isinstance(self.f, int) or self.f < 1:
            raise ValueError(f"conductor must be a positive integer, got {self.f!r}")

    @property
    def basis(self) -> tuple[QuadElem, QuadElem]:
        one, w = integer_basis(self.d)
        return one, w * self.f

    def coordinates(self, x: QuadElem) -> tuple[Fraction, Fraction]:
        one, w = self.basis
        y = x.b / w.b
        return x.a - y * w.a, y

    def __contains__(self, x) -> bool:
        if not isinstance(x, QuadElem):
            x = QuadElem.rational(x, self.d)
        p, q = self.coordinates(x)
        return p.denominator == 1 and q.denominator == 1

    @property
    def discriminant(self) -> int:
        dk = self.d if self.d % 4 == 1 else 4 * self.d
        return self.f * self.f * dk


def order_of_conductor(d: int, f: int) -> Order:
    return Order(d, f)
