"""
Sign-twisted partial zeta functions of real quadratic fields and Stark numbers.

For an integral ideal ``L`` and ``l0`` in ``O_K``,

    zeta(L, l0, s) = sgn(l0') N(b)^s  sum_{x in (l0 + L)/U}  sgn(x') |N x|^{-s}

where ``b = (L, l0)`` and ``U`` is the group of units congruent to 1 modulo
``f = L b^{-1}``.  The series converges for ``Re s > 1``
(:func:`zeta_direct`); the Mellin transform of the RM theta with its
functional equation gives an entire continuation (:func:`zeta_mellin`) and
the value ``zeta'(0)`` (:func:`stark_number`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath
import numpy as np

from .pseudolattice import Pseudolattice, delta, dual_pseudolattice, module_from_generators
from .quadfield import QuadElem, fundamental_unit, integer_basis, pretty_elem
from .rmtheta import _char_phase, _norm_bound, coset_reps

__all__ = [
    "StarkInput",
    "ZetaValue",
    "ideal_norm",
    "ideal_product",
    "ideal_conj",
    "is_integral_ideal",
    "stark_conditions_check",
    "zeta_direct",
    "zeta_mellin",
    "mellin_I",
    "stark_number",
    "algebraicity_probe",
    "worked_example",
]


# ---------------------------------------------------------------------------
# ideals as Z-modules


def _ok(d: int) -> Pseudolattice:
    return Pseudolattice(*integer_basis(d))


def ideal_norm(I: Pseudolattice) -> Fraction:
    """Absolute norm, the index ``[O_K : I]`` (rational for fractional ideals)."""
    return I.index_in(_ok(I.d))


def ideal_product(I: Pseudolattice, J: Pseudolattice) -> Pseudolattice:
    return module_from_generators([a * b for a in I.basis for b in J.basis])


def ideal_conj(I: Pseudolattice) -> Pseudolattice:
    return module_from_generators([x.conj() for x in I.basis])


def ideal_inverse(I: Pseudolattice) -> Pseudolattice:
    """``I^{-1} = I' / N(I)`` (valid in the maximal order)."""
    n = ideal_norm(I)
    return module_from_generators([x.conj() / n for x in I.basis])


def ideal_sum(I: Pseudolattice, J: Pseudolattice) -> Pseudolattice:
    return module_from_generators(list(I.basis) + list(J.basis))


def is_integral_ideal(I: Pseudolattice) -> bool:
    _, w = integer_basis(I.d)
    ok = _ok(I.d)
    return all(x in ok for x in I.basis) and all(w * x in I for x in I.basis)


def _reduce_mod(x: QuadElem, I: Pseudolattice) -> QuadElem:
    """Canonical representative of ``x + I``: fractional coordinates in the basis of ``I``."""
    p, q = I.coordinates(x)
    return x - I.l1 * math.floor(p) - I.l2 * math.floor(q)


def _principal(x: QuadElem) -> Pseudolattice:
    one, w = integer_basis(x.d)
    return module_from_generators([x, x * w])


# ---------------------------------------------------------------------------
# input data


@dataclass(frozen=True)
class StarkInput:
    """Integral ideal ``L`` with a shift ``l0`` in ``O_K``, and derived ideals.

    ``b = L + l0 O_K``, ``a0 = (l0) b^{-1}``, ``f = L b^{-1}``.
    """

    L: Pseudolattice
    l0: QuadElem

    def __post_init__(self):
        if not is_integral_ideal(self.L):
            raise ValueError("L must be an integral ideal of O_K")
        if not self.l0.is_integral():
            raise ValueError("l0 must lie in O_K")
        if self.l0.conj().sign() == 0:
            raise ValueError("l0 must be nonzero")

    @property
    def d(self) -> int:
        return self.L.d

    @cached_property
    def b(self) -> Pseudolattice:
        return ideal_sum(self.L, _principal(self.l0))

    @cached_property
    def Nb(self) -> int:
        n = ideal_norm(self.b)
        assert n.denominator == 1
        return int(n)

    @cached_property
    def f(self) -> Pseudolattice:
        return ideal_product(self.L, ideal_inverse(self.b))

    @cached_property
    def a0(self) -> Pseudolattice:
        return ideal_product(_principal(self.l0), ideal_inverse(self.b))

    @cached_property
    def unit_data(self) -> dict:
        return _unit_mod_f(self.f)

    @property
    def eps(self) -> QuadElem:
        """Generator ``> 1`` in absolute value of the units ``= 1 mod f``."""
        return self.unit_data["generator"]

    @property
    def sign_l0(self) -> int:
        return self.l0.conj().sign()


def _unit_mod_f(f: Pseudolattice, max_k: int | None = None) -> dict:
    """Units congruent to 1 modulo ``f``: generator and whether ``-1`` is among them."""
    d = f.d
    e0 = fundamental_unit(d)
    one = QuadElem(1, 0, d)
    minus_one_trivial = (one * 2) in f
    if max_k is None:
        max_k = int(ideal_norm(f)) + 2
    r1, rm1 = _reduce_mod(one, f), _reduce_mod(-one, f)
    x = one
    for k in range(1, max_k + 1):
        x = _reduce_mod(x * e0, f)
        if x == r1 or x == rm1:
            gen = e0**k if x == r1 else -(e0**k)
            return {"k": k, "generator": gen, "minus_one": minus_one_trivial}
    raise RuntimeError("unit order modulo f not found")  # pragma: no cover


def stark_conditions_check(L: Pseudolattice, l0: QuadElem) -> dict:
    """Decide the two admissibility conditions for ``(L, l0)``.

    (i) ``b`` and ``a0`` are coprime to ``f`` (sum of ideals is ``O_K``);
    (ii) every unit ``= 1 mod f`` has positive conjugate.

    Examples
    --------
    >>> from rmlab.quadfield import QuadElem
    >>> L = Pseudolattice(QuadElem(5, 0, 3), QuadElem(0, 5, 3))
    >>> r = stark_conditions_check(L, QuadElem(1, 0, 3))
    >>> r["pass"], r["unit_generator"]
    (True, '26 15 3')
    """
    inp = StarkInput(L, l0)
    one_mod = ideal_norm(ideal_sum(inp.b, inp.f)) == 1
    two_mod = ideal_norm(ideal_sum(inp.a0, inp.f)) == 1
    ud = inp.unit_data
    gen = ud["generator"]
    conj_pos = gen.conj().sign() > 0
    cond_ii = conj_pos and not ud["minus_one"]
    if ud["minus_one"]:
        witness = "-1 = 1 mod f with (-1)' < 0"
    elif not conj_pos:
        witness = f"{pretty_elem(gen)} = 1 mod f with negative conjugate"
    else:
        witness = None
    return {
        "b": str(inp.b),
        "f": str(inp.f),
        "a0": str(inp.a0),
        "N(b)": inp.Nb,
        "N(f)": int(ideal_norm(inp.f)),
        "b_coprime_f": one_mod,
        "a0_coprime_f": two_mod,
        "condition_i": one_mod and two_mod,
        "unit_generator": str(gen),
        "unit_generator_pretty": pretty_elem(gen),
        "unit_power": ud["k"],
        "condition_ii": cond_ii,
        "witness": witness,
        "pass": one_mod and two_mod and cond_ii,
    }


def worked_example() -> StarkInput:
    """``K = Q(sqrt 3)``, ``L = 5 O_K``, ``l0 = 1``; the unit group is ``<26 + 15 sqrt 3>``."""
    return StarkInput(Pseudolattice(QuadElem(5, 0, 3), QuadElem(0, 5, 3)), QuadElem(1, 0, 3))


# ---------------------------------------------------------------------------
# zeta values


@dataclass(frozen=True)
class ZetaValue:
    s: complex
    value: complex
    method: str
    metadata: dict = field(default_factory=dict, compare=False)


def _group_by_norm(absN: np.ndarray, coef: np.ndarray):
    """Sum coefficients over equal norms (absN is sorted); returns unique norms and sums."""
    if len(absN) == 0:
        return absN, coef
    starts = np.flatnonzero(np.r_[True, absN[1:] != absN[:-1]])
    return absN[starts], np.add.reduceat(coef, starts)


def zeta_direct(inp: StarkInput, s: complex, bound=10**6) -> ZetaValue:
    """Truncated Dirichlet series ``sgn(l0') N(b)^s sum_{|N x| <= bound} sgn(x') |N x|^{-s}``.

    Terms are grouped by norm and summed in order of increasing norm.
    """
    s = complex(s)
    if s.real <= 1:
        raise ValueError("the Dirichlet series needs Re s > 1")
    reps = coset_reps(inp.L, inp.l0, inp.eps, bound)
    norms, coef = _group_by_norm(reps.abs_norm, reps.sgn_conj.astype(np.float64))
    if s.imag == 0:
        terms = coef * norms ** (-s.real)
        total = complex(math.fsum(terms))
    else:
        terms = coef * np.exp(-s * np.log(norms))
        total = complex(math.fsum(terms.real), math.fsum(terms.imag))
    val = inp.sign_l0 * complex(inp.Nb) ** s * total
    return ZetaValue(s, val, "direct", {"bound": str(Fraction(bound)), "terms": len(reps)})


def _mellin_parts(inp: StarkInput, y0: float, tol: float):
    """Grouped coefficients of the theta and of its dual, truncated for the split at ``y0``."""
    L, l0, eps = inp.L, inp.l0, inp.eps
    c1 = 2 * math.pi * y0
    B1 = _norm_bound(L, eps, c1, 1.0, tol * 1e-3)
    reps = coset_reps(L, l0, eps, B1)
    n1, a1 = _group_by_norm(reps.abs_norm, reps.sgn_conj.astype(np.float64))

    M = dual_pseudolattice(L)
    zero = QuadElem(0, 0, L.d)
    c2 = 2 * math.pi / y0
    B2 = _norm_bound(M, eps, c2, 1.0, tol * 1e-3)
    dreps = coset_reps(M, zero, eps, B2)
    # dual data: (L^?, m0 = 0, -l0, eta = i): coefficient sgn(x), character exp(2 pi i tr(x l0'))
    phase = _char_phase(M, zero, -l0, dreps.m, dreps.n)
    n2, a2 = _group_by_norm(dreps.abs_norm, dreps.sgn * phase)
    meta = {
        "y0": y0,
        "bound": str(B1),
        "dual_bound": str(B2),
        "terms": len(reps),
        "dual_terms": len(dreps),
    }
    return (n1, a1), (n2, a2), meta


def mellin_I(inp: StarkInput, s, y0: float = 1.0, tol: float = 1e-13, parts=None, dps: int = 30):
    """``Gamma(s) (2 pi)^{-s} sum sgn(x')|N x|^{-s}`` written as the split Mellin integral.

    Returns ``(2 pi)^s / Gamma(s) * I(s)`` pieces as the pair
    ``(J(s), meta)`` with ``J(s) = sum_x sgn(x') Gamma(s, 2 pi |N| y0) (2 pi |N|)^{-s}
    + (1/(i Delta)) sum_m c_m (2 pi |N m|)^{s-1} Gamma(1-s, 2 pi |N m| / y0)``,
    so that ``zeta = sgn(l0') N(b)^s (2 pi)^s J(s) / Gamma(s)``.
    """
    if parts is None:
        parts = _mellin_parts(inp, y0, tol)
    (n1, a1), (n2, a2), meta = parts
    Dl = float(delta(inp.L))
    with mpmath.workdps(dps):
        s = mpmath.mpc(s)
        tp = 2 * mpmath.pi
        J1 = mpmath.fsum(
            float(a) * mpmath.gammainc(s, tp * float(n) * y0) * (tp * float(n)) ** (-s) for n, a in zip(n1, a1)
        )
        J2 = mpmath.fsum(
            mpmath.mpc(complex(a)) * (tp * float(n)) ** (s - 1) * mpmath.gammainc(1 - s, tp * float(n) / y0)
            for n, a in zip(n2, a2)
        )
        J = J1 + J2 / (1j * Dl)
    return J, meta


def zeta_mellin(inp: StarkInput, s: complex, tol: float = 1e-12, y0: float = 1.0, parts=None) -> ZetaValue:
    """Entire continuation of ``zeta(L, l0, s)`` from the split Mellin transform of the RM theta.

    ``int_0^inf y^s Theta(iy) dy/y`` is cut at ``y0``; the piece on ``(0, y0)``
    is rewritten with the functional equation
    ``Theta(iy) = Theta^dual(i/y) / (i Delta(L) y)``.  Both pieces are then
    integrated term by term in closed form (upper incomplete gamma
    functions), so no numerical quadrature is involved.
    """
    if parts is None:
        parts = _mellin_parts(inp, y0, tol)
    J, meta = mellin_I(inp, s, y0, tol, parts)
    with mpmath.workdps(30):
        sm = mpmath.mpc(s)
        if sm == 0:
            val = mpmath.mpf(0)
        else:
            val = inp.sign_l0 * mpmath.power(inp.Nb, sm) * mpmath.power(2 * mpmath.pi, sm) * J * mpmath.rgamma(sm)
    return ZetaValue(complex(s), complex(val), "mellin", meta)


def stark_number(inp: StarkInput, tol: float = 1e-12, y0: float = 1.0, check: bool = True):
    """``zeta'(L, l0, 0)`` and the Stark number ``S0 = exp(zeta'(0))``.

    Near ``s = 0``, ``N(b)^s (2 pi)^s / Gamma(s) = s + O(s^2)``, and ``J(s)``
    is regular, so ``zeta(0) = 0`` and ``zeta'(0) = sgn(l0') J(0)`` with

        J(0) = sum sgn(x') E1(2 pi |N x| y0)
               + (1/(i Delta)) sum c_m exp(-2 pi |N m| / y0) / (2 pi |N m|).
    """
    if check:
        chk = stark_conditions_check(inp.L, inp.l0)
        if not chk["pass"]:
            raise ValueError(f"Stark conditions fail: {chk['witness'] or 'condition (i)'}")
    J, meta = mellin_I(inp, 0, y0, tol)
    zp = inp.sign_l0 * complex(J)
    if abs(zp.imag) > 1e-9 * max(1.0, abs(zp.real)):
        raise RuntimeError(f"zeta'(0) has a spurious imaginary part {zp.imag}")
    zp = zp.real
    return zp, math.exp(zp), meta


# ---------------------------------------------------------------------------
# algebraicity probe


def algebraicity_probe(x: float, max_deg: int = 2, max_height: int = 10, tol: float = 1e-9, max_ops: int = 10**7):
    """Search for a monic integer polynomial ``P`` with ``|P(x)| < tol``.

    Degrees are tried in increasing order.  For each choice of the middle
    coefficients (in order of increasing absolute value) the constant term is
    forced by rounding, so a degree ``n`` search costs ``(2H+1)^(n-1)``
    evaluations.  Exploratory only: a hit is numerical evidence, nothing more.

    Returns ``(coefficients, residual)`` with coefficients from the leading
    one down, or ``None``.

    >>> algebraicity_probe(3 + 2 * 2 ** 0.5)[0]
    [1, -6, 1]
    >>> algebraicity_probe(1.0)[0]
    [1, -1]
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    H = int(max_height)
    rng = sorted(range(-H, H + 1), key=lambda c: (abs(c), c < 0))
    ops = 0
    for n in range(1, max_deg + 1):
        if (2 * H + 1) ** (n - 1) + ops > max_ops:
            raise RuntimeError(f"search space exceeds the operation cap {max_ops}")
        powers = [x**k for k in range(n + 1)]
        for mid in itertools.product(rng, repeat=n - 1):
            ops += 1
            # mid = (c_{n-1}, ..., c_1)
            partial = powers[n] + sum(c * powers[n - 1 - i] for i, c in enumerate(mid))
            c0 = -round(partial)
            if abs(c0) > H:
                continue
            res = abs(partial + c0)
            if res < tol:
                return [1, *mid, int(c0)], res
    return None
