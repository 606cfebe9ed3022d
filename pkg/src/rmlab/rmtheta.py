"""
Hecke theta functions of real quadratic pseudolattices.

Two kinds of sums are evaluated here.

* ``theta_rm``: the RM theta ``Theta^U_{L,eta}[l0; m0](v)``, a sum over
  representatives of ``U``-orbits on ``l0 + L`` of
  ``(eta0 sgn x' + eta1 sgn x) exp(2 pi i v |N x|)`` times a character.
* ``theta_lattice``: the classical theta of a lattice ``Lambda`` in ``C``
  with the pairing ``(x.y) = x0 y1 + x1 y0``.

They are tied together by Hecke's averaging along the closed geodesic
(:func:`hecke_average`) and each satisfies a functional equation obtained by
Poisson summation (:func:`fe_lattice_residual`, :func:`fe_rm_residual`).

Characters are built from the pairing ``tr(l m0')`` which is what the lattice
pairing ``Im(lambda mu)`` restricts to under the Hecke lift.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .pseudolattice import (
    Pseudolattice,
    delta,
    dual_pseudolattice,
    endomorphism_ring,
    geodesic_lift,
)
from .quadfield import QuadElem, totally_positive_unit

__all__ = [
    "ThetaSpec",
    "LatticeThetaSpec",
    "CosetReps",
    "unit_conditions",
    "unit_group_for",
    "coset_reps",
    "theta_rm",
    "theta_rm_terms",
    "dual_spec",
    "theta_lattice",
    "lattice_spec_at",
    "hecke_average",
    "adaptive_simpson",
    "gaussian_ft_closed",
    "gaussian_ft_quad",
    "gaussian_ft_check",
    "fe_lattice_residual",
    "fe_rm_residual",
    "pairing",
]


def pairing(x, y):
    """``(x.y) = x0 y1 + x1 y0`` for ``x = x0 + i x1``, ``y = y0 + i y1``."""
    x = np.asarray(x)
    return x.real * np.imag(y) + x.imag * np.real(y)


def _frac_mod(x: Fraction, m: int = 1) -> Fraction:
    return x - m * math.floor(x / m)


# ---------------------------------------------------------------------------
# unit groups


def unit_conditions(L: Pseudolattice, l0: QuadElem, m0: QuadElem, u: QuadElem) -> dict:
    """Check the two unit conditions for ``u`` on the data ``(L, l0, m0)``.

    (a) ``u (l0 + L) = l0 + L``;
    (b) ``tr(u l m0') = tr(l m0') mod Z`` for ``l`` in ``L`` and
    ``tr(u l0 m0') = tr(l0 m0') mod 2Z``.
    """
    preserves = all(u * li in L for li in L.basis) and all(u.inverse() * li in L for li in L.basis)
    shift = (u * l0 - l0) in L
    m0c = m0.conj()
    chars = all(((u * li - li) * m0c).trace().denominator == 1 for li in L.basis)
    base = _frac_mod(((u * l0 - l0) * m0c).trace(), 2) == 0
    return {
        "a": preserves and shift,
        "b": chars and base,
        "totally_positive": u.is_totally_positive(),
    }


def unit_group_for(L: Pseudolattice, l0: QuadElem, m0: QuadElem, max_k: int = 10**4) -> QuadElem:
    """Smallest power ``e^k`` of the totally positive fundamental unit satisfying (a), (b).

    Examples
    --------
    >>> from rmlab.quadfield import parse_elem, QuadElem
    >>> L = Pseudolattice(QuadElem(5, 0, 3), QuadElem(0, 5, 3))
    >>> str(unit_group_for(L, QuadElem(1, 0, 3), QuadElem(0, 0, 3)))
    '26 15 3'
    """
    base = totally_positive_unit(L.d)
    u = base
    for _ in range(max_k):
        c = unit_conditions(L, l0, m0, u)
        if c["a"] and c["b"]:
            return u
        u = u * base
    raise RuntimeError(f"no admissible unit power found with k <= {max_k}")


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class ThetaSpec:
    """Data ``(L, l0, m0, eta, eps)`` of an RM theta.

    ``eta = eta0 + i eta1`` weights ``sgn x'`` by ``eta0`` and ``sgn x`` by
    ``eta1``; ``eps > 1`` generates the unit group ``U``.
    """

    L: Pseudolattice
    l0: QuadElem
    m0: QuadElem
    eta: complex
    eps: QuadElem
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.check:
            if not self.eps.is_totally_positive() or not self.eps > 1:
                raise ValueError("unit generator must be totally positive and > 1")
            if abs(self.eps.norm()) != 1 or not self.eps.is_integral():
                raise ValueError("unit generator is not a unit")
            c = unit_conditions(self.L, self.l0, self.m0, self.eps)
            if not (c["a"] and c["b"]):
                raise ValueError(f"unit conditions violated: {c}")

    @property
    def eta0(self) -> float:
        return complex(self.eta).real

    @property
    def eta1(self) -> float:
        return complex(self.eta).imag


@dataclass(frozen=True)
class LatticeThetaSpec:
    """Data of the lattice theta: complex basis, shifts ``lambda0``, ``mu0`` and ``eta``."""

    omega1: complex
    omega2: complex
    lam0: complex = 0j
    mu0: complex = 0j
    eta: complex = 1 + 0j

    def __post_init__(self):
        if abs((complex(self.omega1) * complex(self.omega2).conjugate()).imag) < 1e-300:
            raise ValueError("omega1, omega2 are R-linearly dependent")

    @property
    def covolume(self) -> float:
        w1, w2 = complex(self.omega1), complex(self.omega2)
        return abs(w1.real * w2.imag - w2.real * w1.imag)


# ---------------------------------------------------------------------------
# orbit representatives


@dataclass
class CosetReps:
    """Orbit representatives ``x = l0 + m l1 + n l2``, sorted by ``(|N x|, m, n)``.

    Attributes
    ----------
    m, n : ndarray of int64
        Coordinates in the basis of ``L``.
    norm_num : ndarray of int64
        ``N(x) * den``; the exact norm is ``norm_num / den``.
    den : int
    sgn, sgn_conj : ndarray of int8
        Signs of ``x`` and ``x'`` (exact).
    """

    m: np.ndarray
    n: np.ndarray
    norm_num: np.ndarray
    den: int
    sgn: np.ndarray
    sgn_conj: np.ndarray
    bound: Fraction

    def __len__(self):
        return len(self.m)

    @property
    def abs_norm(self) -> np.ndarray:
        return np.abs(self.norm_num) / self.den

    def elements(self, L: Pseudolattice, l0: QuadElem) -> list[QuadElem]:
        return [l0 + L.l1 * int(a) + L.l2 * int(b) for a, b in zip(self.m, self.n)]


def _int_coords(elems, scale: int):
    return [(int(x.a * scale), int(x.b * scale)) for x in elems]


def _sgn(x):
    return np.sign(x).astype(np.int8)


def coset_reps(L: Pseudolattice, l0: QuadElem, eps: QuadElem, bound, chunk: int = 4_000_000) -> CosetReps:
    """All ``x`` in ``l0 + L`` with ``0 < |N x| <= bound`` and ``1 <= |x/x'| < eps^2``.

    The fundamental domain ``0 <= log|x/x'| < 2 log eps`` contains exactly one
    point of each orbit of ``<eps>`` (``eps`` totally positive of norm 1
    multiplies ``x/x'`` by ``eps^2``).  Both inequalities are decided exactly:
    ``|x| >= |x'|`` iff ``a b >= 0`` for ``x = a + b sqrt d``, and
    ``|x| < eps^2 |x'|`` iff ``|z| < |z'|`` for ``z = x/eps``.

    Candidates are drawn from the box ``|x| <= eps sqrt(bound)``,
    ``|x'| <= sqrt(bound)`` which contains the domain.
    """
    bound = Fraction(bound)
    d = L.d
    l1, l2 = L.basis
    epsi = eps.inverse()
    elems = [l0, l1, l2]
    zel = [x * epsi for x in elems]
    den = math.lcm(*[x.a.denominator for x in elems + zel], *[x.b.denominator for x in elems + zel])
    (A0, B0), (A1, B1), (A2, B2) = _int_coords(elems, den)
    (C0, E0), (C1, E1), (C2, E2) = _int_coords(zel, den)

    X = [x.embeddings() for x in elems]
    (x0, x0c), (x1, x1c), (x2, x2c) = X
    sq = math.sqrt(float(bound))
    R, Rc = abs(float(eps)) * sq, sq
    det = x1 * x2c - x1c * x2
    # centre and half-width of the m range
    mc = -(x0 * x2c - x0c * x2) / det
    mw = (R * abs(x2c) + Rc * abs(x2)) / abs(det)
    m_lo, m_hi = math.floor(mc - mw) - 1, math.ceil(mc + mw) + 1

    # int64 is enough as long as A^2 + d B^2 stays below 2^62
    amax = (abs(A0) + (abs(A1) + abs(A2)) * (max(abs(m_lo), abs(m_hi)) + mw * 4 + 10)) * 4
    bmax = (abs(B0) + (abs(B1) + abs(B2)) * (max(abs(m_lo), abs(m_hi)) + mw * 4 + 10)) * 4
    dtype = np.int64 if max(amax, bmax) ** 2 * (d + 1) < 2**62 else object

    ms = np.arange(m_lo, m_hi + 1, dtype=np.int64)
    # n range per row from |x| <= R and |x'| <= Rc
    def nrange(base, step, rad):
        c = -(base) / step
        w = rad / abs(step)
        return c - w, c + w

    lo1, hi1 = nrange(x0 + ms * x1, x2, R)
    lo2, hi2 = nrange(x0c + ms * x1c, x2c, Rc)
    nlo = np.floor(np.maximum(lo1, lo2)).astype(np.int64) - 1
    nhi = np.ceil(np.minimum(hi1, hi2)).astype(np.int64) + 1
    counts = np.maximum(nhi - nlo + 1, 0)

    out = {k: [] for k in ("m", "n", "N", "s", "sc")}
    bound_num = bound * den * den
    bn, bd = bound_num.numerator, bound_num.denominator
    start = 0
    while start < len(ms):
        stop, tot = start, 0
        while stop < len(ms) and (tot == 0 or tot + counts[stop] <= chunk):
            tot += counts[stop]
            stop += 1
        cnt = counts[start:stop]
        mm = np.repeat(ms[start:stop], cnt)
        offs = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        nn = np.repeat(nlo[start:stop], cnt) + offs
        start = stop
        if len(mm) == 0:
            continue
        mmd, nnd = mm.astype(dtype), nn.astype(dtype)
        A = A0 + A1 * mmd + A2 * nnd
        B = B0 + B1 * mmd + B2 * nnd
        Nn = A * A - d * B * B  # = N(x) den^2
        sa, sb = _sgn(A), _sgn(B)
        keep = (Nn != 0) & (np.abs(Nn) * bd <= bn) & (sa * sb >= 0)
        if not keep.any():
            continue
        C = C0 + C1 * mmd[keep] + C2 * nnd[keep]
        E = E0 + E1 * mmd[keep] + E2 * nnd[keep]
        inner = _sgn(C) * _sgn(E) < 0
        idx = np.flatnonzero(keep)[inner]
        A, B, Nn = A[idx], B[idx], Nn[idx]
        out["m"].append(mm[idx])
        out["n"].append(nn[idx])
        out["N"].append(Nn)
        # signs of x = (A + B sqrt d)/den and x' = (A - B sqrt d)/den: |A| vs sqrt(d)|B| via N
        nsign = _sgn(Nn)
        s = np.where(nsign > 0, _sgn(A), np.where(_sgn(B) != 0, _sgn(B), _sgn(A)))
        sc = np.where(nsign > 0, _sgn(A), np.where(_sgn(B) != 0, -_sgn(B), _sgn(A)))
        out["s"].append(s.astype(np.int8))
        out["sc"].append(sc.astype(np.int8))

    if out["m"]:
        m = np.concatenate(out["m"])
        n = np.concatenate(out["n"])
        Nn = np.concatenate(out["N"])
        s = np.concatenate(out["s"])
        sc = np.concatenate(out["sc"])
    else:
        m = n = np.zeros(0, np.int64)
        Nn = np.zeros(0, dtype)
        s = sc = np.zeros(0, np.int8)
    # reduce N(x) den^2 to N(x) * nden with nden the exact denominator of the norms
    g = 0
    for v in (A0, A1, A2, B0, B1, B2):
        g = math.gcd(g, v)
    scale = g * g
    Nn = Nn // scale if scale > 1 else Nn
    nden = den * den // scale
    order = np.lexsort((n, m, np.abs(Nn).astype(np.float64) if dtype is object else np.abs(Nn)))
    Nn = Nn[order]
    if dtype is object:
        Nn = Nn.astype(np.int64) if all(abs(int(v)) < 2**62 for v in Nn) else Nn
    return CosetReps(m[order], n[order], Nn, nden, s[order], sc[order], bound)


# ---------------------------------------------------------------------------
# RM theta


def _tail_bound(L: Pseudolattice, eps: QuadElem, B: float, c: float, weight: float) -> float:
    """Heuristic bound for ``sum_{|N|>B} weight exp(-c |N|)`` over orbit representatives.

    The number of representatives with ``|N| <= X`` is about
    ``rho X`` with ``rho = 4 log(eps) / Delta(L)`` (area of the fundamental
    domain in the ``(x, x')`` plane divided by the covolume).  A factor 2
    absorbs the lattice point error near the boundary.
    """
    rho = 4.0 * math.log(abs(float(eps))) / float(delta(L))
    return 2.0 * weight * (rho + 1.0 / max(B, 1e-300)) * math.exp(-c * B) / c


def _norm_bound(L, eps, c: float, weight: float, tol: float) -> Fraction:
    rho = 4.0 * math.log(abs(float(eps))) / float(delta(L))
    B = max(1.0, math.log(max(2.0 * weight * (rho + 1.0) / (c * tol), 2.0)) / c)
    while _tail_bound(L, eps, B, c, weight) > tol:
        B *= 1.25
    return Fraction(B).limit_denominator(1000)


def _char_phase(L: Pseudolattice, l0: QuadElem, m0: QuadElem, m: np.ndarray, n: np.ndarray) -> np.ndarray:
    """``exp(-2 pi i tr(l m0') - pi i tr(l0 m0'))`` computed from exact rationals mod 2."""
    m0c = m0.conj()
    t1, t2 = (L.l1 * m0c).trace(), (L.l2 * m0c).trace()
    t0 = (l0 * m0c).trace()
    q = math.lcm(t1.denominator, t2.denominator, t0.denominator)
    p1, p2, p0 = int(t1 * q), int(t2 * q), int(t0 * q)
    # phase angle (in units of pi/q) = -(2 (p1 m + p2 n) + p0) mod 2q
    k = (-(2 * ((p1 * m) % q) + 2 * ((p2 * n) % q) + p0)) % (2 * q)
    return np.exp(1j * np.pi * k / q)


def theta_rm_terms(spec: ThetaSpec, v: complex, reps: CosetReps) -> np.ndarray:
    """Individual terms of the RM theta over the given representatives."""
    coef = spec.eta0 * reps.sgn_conj + spec.eta1 * reps.sgn
    phase = _char_phase(spec.L, spec.l0, spec.m0, reps.m, reps.n)
    return coef * np.exp(2j * np.pi * v * reps.abs_norm) * phase


def theta_rm(spec: ThetaSpec, v: complex, tol: float = 1e-12, bound=None, return_info: bool = False):
    """RM theta ``Theta^U_{L,eta}[l0; m0](v)``.

    The sum runs over representatives with ``|N x| <= B``; ``B`` is chosen so
    that the tail estimate of :func:`_tail_bound` is below ``tol`` unless an
    explicit ``bound`` is passed.  Terms are added in the fixed order of
    :func:`coset_reps`, so repeated calls are bit-identical.
    """
    v = complex(v)
    if v.imag <= 0:
        raise ValueError("need Im v > 0")
    weight = abs(spec.eta0) + abs(spec.eta1)
    if weight == 0:
        return (0j, {"bound": 0, "terms": 0, "tail": 0.0}) if return_info else 0j
    c = 2 * math.pi * v.imag
    if bound is None:
        bound = _norm_bound(spec.L, spec.eps, c, weight, tol)
    reps = coset_reps(spec.L, spec.l0, spec.eps, bound)
    val = complex(np.sum(theta_rm_terms(spec, v, reps)))
    if return_info:
        info = {
            "bound": str(Fraction(bound)),
            "terms": len(reps),
            "tail": _tail_bound(spec.L, spec.eps, float(bound), c, weight),
        }
        return val, info
    return val


def dual_spec(spec: ThetaSpec) -> ThetaSpec:
    """Data ``(L^?, m0, -l0, i conj(eta), eps)`` of the right hand side of the RM functional equation."""
    eta = complex(spec.eta)
    return ThetaSpec(
        dual_pseudolattice(spec.L), spec.m0, -spec.l0, 1j * eta.conjugate(), spec.eps, check=False
    )


def fe_rm_residual(spec: ThetaSpec, v: complex, tol: float = 1e-12) -> tuple[float, complex, complex]:
    """``|Theta(v) - Theta^dual(-1/v) / (Delta(L) v)|`` with both sides summed directly."""
    v = complex(v)
    lhs = theta_rm(spec, v, tol)
    rhs = theta_rm(dual_spec(spec), -1 / v, tol) / (float(delta(spec.L)) * v)
    return abs(lhs - rhs), lhs, rhs


# ---------------------------------------------------------------------------
# lattice theta


def _lagrange_reduce(w1: complex, w2: complex):
    """Gauss-Lagrange reduction; returns the reduced basis and the integer change."""
    M = [[1, 0], [0, 1]]  # rows: coefficients of the new basis in the old one
    for _ in range(1000):
        if abs(w1) > abs(w2):
            w1, w2 = w2, w1
            M = [M[1], M[0]]
        mu = round((w2 * w1.conjugate()).real / abs(w1) ** 2)
        if mu == 0:
            break
        w2 = w2 - mu * w1
        M[1] = [M[1][0] - mu * M[0][0], M[1][1] - mu * M[0][1]]
    return w1, w2, M


def _lattice_points(spec: LatticeThetaSpec, radius: float):
    """Integer coordinates ``(m, n)`` of ``lambda = m omega1 + n omega2`` with ``|lambda0 + lambda| <= radius``."""
    w1, w2 = complex(spec.omega1), complex(spec.omega2)
    r1, r2, M = _lagrange_reduce(w1, w2)
    Bm = np.array([[r1.real, r2.real], [r1.imag, r2.imag]])
    Binv = np.linalg.inv(Bm)
    lam0 = complex(spec.lam0)
    c0 = -Binv @ np.array([lam0.real, lam0.imag])
    w = radius * np.sqrt((Binv**2).sum(axis=1))
    a = np.arange(math.floor(c0[0] - w[0]) - 1, math.ceil(c0[0] + w[0]) + 2)
    b = np.arange(math.floor(c0[1] - w[1]) - 1, math.ceil(c0[1] + w[1]) + 2)
    aa, bb = np.meshgrid(a, b, indexing="ij")
    aa, bb = aa.ravel(), bb.ravel()
    pts = lam0 + aa * r1 + bb * r2
    keep = np.abs(pts) <= radius
    aa, bb = aa[keep], bb[keep]
    # back to the original basis: new_i = M[i][0] w1 + M[i][1] w2
    m = aa * M[0][0] + bb * M[1][0]
    n = aa * M[0][1] + bb * M[1][1]
    return m.astype(np.int64), n.astype(np.int64)


def _lattice_radius(spec: LatticeThetaSpec, y: float, tol: float) -> float:
    # tail of sum_{|p|>R} |eta| |p| e^{-pi y |p|^2} over a lattice of covolume V:
    # about (2 pi / V) int_R^inf r^2 e^{-pi y r^2} dr <= (R / (y V) + 1) e^{-pi y R^2}
    eta = abs(complex(spec.eta)) + 1e-300
    V = spec.covolume
    R = math.sqrt(max(math.log(eta / tol), 1.0) / (math.pi * y))
    while eta * (R / (y * V) + 1.0) * (1 + 2 * max(abs(spec.omega1), abs(spec.omega2)) ** 2 / V) * math.exp(
        -math.pi * y * R * R
    ) > tol:
        R *= 1.05
    return R + abs(complex(spec.omega1)) + abs(complex(spec.omega2))


def theta_lattice(spec: LatticeThetaSpec, v: complex, tol: float = 1e-13, return_info: bool = False):
    """Lattice theta ``sum_lambda ((lambda0+lambda).eta) e^{pi i v |lambda0+lambda|^2} e^{-2 pi i (lambda.mu0) - pi i (lambda0.mu0)}``.

    Summation order: by increasing ``|lambda0 + lambda|``, ties by the integer
    coordinates, which makes the result reproducible bit for bit.
    """
    v = complex(v)
    if v.imag <= 0:
        raise ValueError("need Im v > 0")
    if complex(spec.eta) == 0:
        return (0j, {"radius": 0.0, "terms": 0}) if return_info else 0j
    R = _lattice_radius(spec, v.imag, tol)
    m, n = _lattice_points(spec, R)
    w1, w2 = complex(spec.omega1), complex(spec.omega2)
    lam = m * w1 + n * w2
    p = spec.lam0 + lam
    r2 = np.abs(p) ** 2
    order = np.lexsort((n, m, r2))
    p, lam, r2 = p[order], lam[order], r2[order]
    terms = pairing(p, spec.eta) * np.exp(
        1j * np.pi * v * r2 - 2j * np.pi * pairing(lam, spec.mu0) - 1j * np.pi * pairing(spec.lam0, spec.mu0)
    )
    val = complex(np.sum(terms))
    if return_info:
        return val, {"radius": R, "terms": int(len(terms))}
    return val


def lattice_spec_at(L: Pseudolattice, l0: QuadElem, m0: QuadElem, eta: complex, t: float) -> LatticeThetaSpec:
    """Lattice theta data of the Hecke lift ``Lambda_t`` with shifts ``lambda0_t``, ``mu0_t``."""
    (w1, w2), lam0, mu0 = geodesic_lift(L, l0, m0, t)
    return LatticeThetaSpec(w1, w2, lam0, mu0, eta)


def fe_lattice_residual(L: Pseudolattice, l0: QuadElem, m0: QuadElem, eta: complex, t: float, v: complex):
    """Residual of ``theta_{Lambda_t,eta}[lambda0;mu0](v) = i/(Delta v^2) theta_{Lambda_t^!, i conj eta}[mu0; -lambda0](-1/v)``."""
    v = complex(v)
    lhs = theta_lattice(lattice_spec_at(L, l0, m0, eta, t), v)
    M = dual_pseudolattice(L)
    (w1, w2), lam0, mu0 = geodesic_lift(M, m0, l0, t)
    dual = LatticeThetaSpec(w1, w2, lam0, -mu0, 1j * complex(eta).conjugate())
    rhs = 1j / (float(delta(L)) * v * v) * theta_lattice(dual, -1 / v)
    return abs(lhs - rhs), lhs, rhs


# ---------------------------------------------------------------------------
# Hecke averaging


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-9, max_depth: int = 50, min_depth: int = 4):
    """Adaptive Simpson quadrature of a (complex valued) ``f`` on ``[a, b]``.

    Returns ``(value, evaluations)``.  Raises ``RuntimeError`` if the
    recursion depth is exhausted before the local error estimate drops below
    the tolerance share of the subinterval.
    """
    cache = {}

    def F(x):
        if x not in cache:
            cache[x] = f(x)
        return cache[x]

    def simpson(a, fa, b, fb):
        m = 0.5 * (a + b)
        fm = F(m)
        return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def rec(a, fa, b, fb, m, fm, whole, tol, depth):
        lm, flm, left = simpson(a, fa, m, fm)
        rm, frm, right = simpson(m, fm, b, fb)
        err = left + right - whole
        if depth >= min_depth and abs(err) <= 15.0 * tol:
            return left + right + err / 15.0
        if depth >= max_depth:
            raise RuntimeError("adaptive Simpson did not converge")
        return rec(a, fa, m, fm, lm, flm, left, tol / 2, depth + 1) + rec(
            m, fm, b, fb, rm, frm, right, tol / 2, depth + 1
        )

    fa, fb = F(a), F(b)
    m, fm, whole = simpson(a, fa, b, fb)
    val = rec(a, fa, b, fb, m, fm, whole, tol, 0)
    return val, len(cache)


def hecke_average(spec: ThetaSpec, v: complex, quad_tol: float = 1e-9, return_info: bool = False):
    """``sqrt(-i v) int_{-log eps}^{log eps} theta_{Lambda_t,eta}[lambda0_t; mu0_t](v) dt``.

    The square root is the principal branch, positive on the upper imaginary axis.
    """
    v = complex(v)
    if v.imag <= 0:
        raise ValueError("need Im v > 0")
    T = math.log(float(spec.eps))
    ltol = quad_tol / (100 * 2 * T)

    def integrand(t):
        return theta_lattice(lattice_spec_at(spec.L, spec.l0, spec.m0, spec.eta, t), v, tol=ltol)

    integral, evals = adaptive_simpson(integrand, -T, T, tol=quad_tol / 10)
    val = cmath.sqrt(-1j * v) * integral
    if return_info:
        return val, {"evaluations": evals, "quad_tol": quad_tol}
    return val


# ---------------------------------------------------------------------------
# Gaussian Fourier transform


def gaussian_ft_closed(v: complex, eta: complex, y) -> complex:
    """Fourier transform of ``(x.eta) e^{pi i v |x|^2}``: ``(i/v^2) (y . i conj eta) e^{-(pi i / v)|y|^2}``."""
    v, eta = complex(v), complex(eta)
    y = complex(y[0], y[1]) if not isinstance(y, complex) else y
    return 1j / v**2 * complex(pairing(y, 1j * eta.conjugate())) * cmath.exp(-1j * math.pi / v * abs(y) ** 2)


def gaussian_ft_quad(v: complex, eta: complex, y, n: int = 400) -> complex:
    """``int_{R^2} (x.eta) e^{pi i v |x|^2} e^{-2 pi i (x.y)} dx`` by the tensor trapezoid rule.

    The integrand is entire and Gaussian-decaying, so the trapezoid rule on a
    truncated square converges spectrally; the half-width is taken where the
    Gaussian factor drops below ``1e-20``.
    """
    v, eta = complex(v), complex(eta)
    y0, y1 = (y.real, y.imag) if isinstance(y, complex) else (float(y[0]), float(y[1]))
    W = math.sqrt(46.0 / (math.pi * v.imag))
    x = np.linspace(-W, W, n + 1)
    h = x[1] - x[0]
    x0, x1 = np.meshgrid(x, x, indexing="ij")
    f = (x0 * eta.imag + x1 * eta.real) * np.exp(
        1j * np.pi * v * (x0**2 + x1**2) - 2j * np.pi * (x0 * y1 + x1 * y0)
    )
    wts = np.full(n + 1, h)
    wts[0] = wts[-1] = h / 2
    return complex(wts @ f @ wts)


def gaussian_ft_check(v: complex, eta: complex, y) -> tuple[complex, complex]:
    """Closed form and quadrature value of the Gaussian Fourier transform."""
    return gaussian_ft_closed(v, eta, y), gaussian_ft_quad(v, eta, y)
