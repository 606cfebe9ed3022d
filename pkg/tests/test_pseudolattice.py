import math
import random
from fractions import Fraction

import pytest

from rmlab.acceptance import _brute_gl2z
from rmlab.pseudolattice import (
    GL2ZMatrix,
    Pseudolattice,
    _height,
    cf_expand,
    delta,
    dual_pseudolattice,
    endomorphism_ring,
    geodesic_lift,
    geodesic_tau,
    gl2z_equivalent,
    parse_pseudolattice,
    stabilizer_matrix,
)
from rmlab.quadfield import QuadElem, parse_elem

PHI = parse_elem("1 1 5 /2")
S2 = parse_elem("0 1 2")


def rand_elem(rng, d, H=6, den=3):
    while True:
        x = QuadElem(Fraction(rng.randint(-H, H), rng.randint(1, den)), Fraction(rng.randint(-H, H), rng.randint(1, den)), d)
        if x.b:
            return x


def rand_gl2z(rng, steps=6):
    gens = [GL2ZMatrix(1, 1, 0, 1), GL2ZMatrix(1, -1, 0, 1), GL2ZMatrix(0, 1, 1, 0), GL2ZMatrix(-1, 0, 0, 1)]
    g = GL2ZMatrix.identity()
    for _ in range(rng.randint(1, steps)):
        g = rng.choice(gens) @ g
    return g


# continued fractions


@pytest.mark.parametrize(
    "theta, pre, period",
    [("1 1 5 /2", (1,), (1,)), ("0 1 2", (1,), (2,)), ("0 1 3", (1,), (1, 2)), ("1 1 13 /2", (2,), (3,))],
)
def test_cf_examples(theta, pre, period):
    cf = cf_expand(parse_elem(theta))
    assert cf.preperiod == pre and cf.period == period


def test_cf_str():
    assert str(cf_expand(PHI)) == "[1; period (1)]"


def test_cf_partial_quotients_against_float():
    rng = random.Random(3)
    for _ in range(50):
        x = rand_elem(rng, rng.choice([2, 3, 5, 7, 11]))
        terms = cf_expand(x).terms(8)
        v = x.to_mpf(80)
        import mpmath

        with mpmath.workdps(80):
            for a in terms:
                assert a == int(mpmath.floor(v))
                v = 1 / (v - a)


def test_cf_rejects_rational():
    with pytest.raises(ValueError):
        cf_expand(QuadElem(3, 0, 5))


# equivalence


def test_equivalence_examples():
    assert gl2z_equivalent(S2, S2 + 1) == GL2ZMatrix(1, 1, 0, 1)
    assert gl2z_equivalent(S2, 1 / S2) == GL2ZMatrix(0, 1, 1, 0)
    g = gl2z_equivalent(S2, S2 / 2)
    assert g is not None and g.act(S2) == S2 / 2


def test_equivalence_round_trips():
    rng = random.Random(11)
    for _ in range(100):
        th = rand_elem(rng, rng.choice([2, 3, 5, 6, 7]))
        g = rand_gl2z(rng)
        w = gl2z_equivalent(th, g.act(th))
        assert w is not None
        assert w.act(th) == g.act(th) and abs(w.det()) == 1 and w.cocycle(th).sign() > 0
        back = gl2z_equivalent(g.act(th), th)
        assert back.act(g.act(th)) == th


def test_inequivalent_discriminants():
    # sqrt 2 and sqrt 2 / 3 have different discriminants
    assert gl2z_equivalent(S2, S2 / 3) is None
    assert gl2z_equivalent(S2, parse_elem("0 1 3")) is None


@pytest.mark.parametrize("t2", ["1 1 2", "0 1 2 /2", "3 1 2 /7"])
def test_equivalence_witness_is_brute_force_minimum(t2):
    t2 = parse_elem(t2)
    w = gl2z_equivalent(S2, t2)
    cands = [GL2ZMatrix(*m) for m in _brute_gl2z(float(S2), float(t2))]
    cands = [g for g in cands if g.act(S2) == t2]
    assert cands and _height(w) == _height(min(cands, key=_height))


# pseudolattices


def test_parse_and_theta():
    L = parse_pseudolattice("basis=(1 0, 1/2 1/2) d=5")
    assert L.theta == 1 / PHI
    with pytest.raises(ValueError):
        parse_pseudolattice("basis=(1 0) d=5")
    with pytest.raises(ValueError):
        Pseudolattice(QuadElem(1, 0, 5), QuadElem(2, 0, 5))


@pytest.mark.parametrize(
    "lattice, f",
    [("basis=(1 0, 1/2 1/2) d=5", 1), ("basis=(1 0, 0 1) d=5", 2), ("basis=(1 0, 0 3) d=2", 3)],
)
def test_conductor(lattice, f):
    L = parse_pseudolattice(lattice)
    assert endomorphism_ring(L).f == f
    # invariant under scaling
    a = QuadElem(Fraction(2, 3), Fraction(-1, 5), L.d)
    assert endomorphism_ring(L.scale(a)).f == f


def test_dual_of_ok5():
    L = parse_pseudolattice("basis=(1 0, 1/2 1/2) d=5")
    M = dual_pseudolattice(L)
    assert M.same_lattice(L.scale(1 / QuadElem(0, 1, 5)))
    for m in M.basis:
        for l in L.basis:
            assert (l.conj() * m).trace().denominator == 1


def test_dual_is_inverse_different():
    for d in (2, 3, 5, 13):
        one, w = (QuadElem(1, 0, d), parse_elem("1 1 %d /2" % d) if d % 4 == 1 else QuadElem(0, 1, d))
        L = Pseudolattice(one, w)
        M = dual_pseudolattice(L)
        # the different is generated by sqrt(disc) for quadratic fields
        root = QuadElem(0, 1, d) if d % 4 == 1 else QuadElem(0, 2, d)
        assert M.same_lattice(L.scale(1 / root))


def test_delta_examples_and_products():
    assert delta(parse_pseudolattice("basis=(1 0, 1/2 1/2) d=5")) == QuadElem(0, 1, 5)
    assert delta(parse_pseudolattice("basis=(1 0, 0 1) d=2")) == QuadElem(0, 2, 2)
    L = parse_pseudolattice("basis=(1 0, 1/2 1/2) d=5")
    assert delta(L.scale(PHI)) == QuadElem(0, 1, 5)
    rng = random.Random(5)
    for _ in range(20):
        d = rng.choice([2, 3, 5, 6, 7, 13])
        l1, l2 = rand_elem(rng, d), rand_elem(rng, d)
        if (l1 * l2.conj() - l1.conj() * l2).is_zero():
            continue
        L = Pseudolattice(l1, l2)
        assert delta(L) * delta(dual_pseudolattice(L)) == 1
        g = GL2ZMatrix(2, 1, 1, 1)
        assert delta(L.change_basis(g)) == delta(L)


@pytest.mark.parametrize(
    "theta, g, eps, g2",
    [
        ("1 1 5 /2", [[1, 1], [1, 0]], "1 1 5 /2", [[2, 1], [1, 1]]),
        ("0 1 2", [[1, 2], [1, 1]], "1 1 2", [[3, 4], [2, 3]]),
        ("0 1 3", [[2, 3], [1, 2]], "2 1 3", [[2, 3], [1, 2]]),
    ],
)
def test_stabilizer_examples(theta, g, eps, g2):
    th = parse_elem(theta)
    G, E, G2 = stabilizer_matrix(th)
    assert G.rows() == g and E == parse_elem(eps) and G2.rows() == g2
    assert G.act(th) == th and G2.cocycle(th) == E ** (2 if G.det() == -1 else 1)


def test_stabilizer_random():
    rng = random.Random(9)
    for _ in range(30):
        th = rand_elem(rng, rng.choice([2, 3, 5, 6, 7, 10]))
        g, eps, g2 = stabilizer_matrix(th)
        assert g.act(th) == th and abs(eps.norm()) == 1 and eps.is_integral() and eps > 1
        assert g2.det() == 1


def test_geodesic_tau():
    th, thp = sorted(PHI.embeddings())
    assert geodesic_tau(th, thp, 0) == pytest.approx(complex(0.5, math.sqrt(5) / 2), abs=1e-15)
    for t in range(-3, 4):
        tau = geodesic_tau(th, thp, t)
        assert abs(abs(tau - 0.5) - math.sqrt(5) / 2) < 1e-14
    assert abs(geodesic_tau(th, thp, 40) - th) < 1e-12
    with pytest.raises(ValueError):
        geodesic_tau(thp, th, 0)


def test_geodesic_lift():
    L = Pseudolattice(QuadElem(1, 0, 5), PHI)
    (w1, w2), lam0, mu0 = geodesic_lift(L, QuadElem(0, 0, 5), QuadElem(0, 0, 5), 0.0)
    assert w1 == 1 + 1j
    assert w2 == pytest.approx(complex(*PHI.embeddings()))
    assert lam0 == 0


def test_geodesic_lift_scaling():
    # lift of aL at t equals sqrt(a a') times the lift of L at t + log(a / a')
    L = parse_pseudolattice("basis=(1 0, 1/2 1/2) d=5")
    a = QuadElem(2, 1, 3)
    L3 = Pseudolattice(QuadElem(1, 0, 3), QuadElem(0, 1, 3))
    z = QuadElem(0, 0, 3)
    for t in (0.0, 0.7, -1.2):
        (u1, u2), _, _ = geodesic_lift(L3.scale(a), z, z, t)
        (v1, v2), _, _ = geodesic_lift(L3, z, z, t + math.log(float(a) / float(a.conj())))
        s = math.sqrt(float(a.norm()))
        assert abs(u1 - s * v1) < 1e-12 and abs(u2 - s * v2) < 1e-12
    assert L.d == 5
