import math
import random

import numpy as np
import pytest

from rmlab.pseudolattice import GL2ZMatrix
from rmlab.qtorus import (
    BimoduleOperators,
    EmbeddedLattice,
    GaussianVector,
    MoritaMatrix,
    SiegelPoint,
    TwistedAlgebra,
    bimodule_action_residual,
    boca_projection,
    dual_lattice,
    heisenberg_inner,
    morita_act,
    morita_compose,
    mumford_theta_check,
    newton_schulz_inv_sqrt,
    qtheta_coeffs,
    qtheta_fe_residual,
    rieffel_identity_residual,
    rieffel_products,
    symplectic,
)
from rmlab.quadfield import QuadElem, parse_elem

TH = math.sqrt(2) - 1
D1 = EmbeddedLattice(np.diag([TH, 1.0]))
TI = SiegelPoint(np.array([[1j]]))


# Morita matrices


def test_morita_example():
    t, j = morita_act(GL2ZMatrix(0, 1, 1, 0), parse_elem("0 1 2"))
    assert t == parse_elem("0 1 2 /2") and j == parse_elem("0 1 2")


def test_morita_normalizes_sign():
    th = parse_elem("0 1 2")
    m = MoritaMatrix.normalized(GL2ZMatrix(0, -1, -1, 0), th)
    assert m.g == GL2ZMatrix(0, 1, 1, 0) and m.cocycle.sign() > 0
    with pytest.raises(ValueError):
        MoritaMatrix(GL2ZMatrix(0, -1, -1, 0), th)
    with pytest.raises(ValueError):
        MoritaMatrix(GL2ZMatrix(2, 0, 0, 1), th)


def test_morita_cocycle_multiplicative():
    rng = random.Random(1)
    gens = [GL2ZMatrix(1, 1, 0, 1), GL2ZMatrix(0, 1, 1, 0), GL2ZMatrix(1, 0, 1, 1), GL2ZMatrix(-1, 0, 0, 1)]
    th = QuadElem(-1, 1, 2)
    for _ in range(50):
        g, h = GL2ZMatrix.identity(), GL2ZMatrix.identity()
        for _ in range(rng.randint(1, 5)):
            g, h = g @ rng.choice(gens), h @ rng.choice(gens)
        r = morita_compose(g, h, th)
        assert r["multiplicative"] and r["target"] == (g @ h).act(th)


def test_morita_float_theta():
    t, j = morita_act(GL2ZMatrix(1, 0, 1, 1), TH)
    assert t == pytest.approx(TH / (TH + 1)) and j == pytest.approx(TH + 1)


# lattices and Gaussians


def test_dual_lattice_pairing_integral():
    for B in (np.diag([TH, 1.0]), np.array([[1.0, 0.3], [0.2, 2.0]]), np.eye(4) + 0.1 * np.arange(16).reshape(4, 4) % 1):
        D = EmbeddedLattice(B)
        Dd = dual_lattice(D)
        P = symplectic(D.B.T[:, None, :], Dd.B.T[None, :, :])
        assert np.allclose(P, np.round(P), atol=1e-12)
        assert abs(abs(np.linalg.det(np.round(P))) - 1) < 1e-12
        assert Dd.sign == -D.sign
        assert Dd.covolume == pytest.approx(1 / D.covolume)


def test_lattice_validation():
    with pytest.raises(ValueError):
        EmbeddedLattice(np.eye(3))
    with pytest.raises(ValueError):
        EmbeddedLattice(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        SiegelPoint(np.array([[-1j]]))
    with pytest.raises(ValueError):
        SiegelPoint(np.array([[1j, 0.1], [0.2, 1j]]))


def test_lattice_points_sorted_and_complete():
    g, v = D1.points(3)
    r = np.linalg.norm(v, axis=1)
    assert np.all(np.diff(np.round(r, 12)) >= 0) and np.all(r <= 3 + 1e-12)
    count = sum(1 for m in range(-20, 21) for n in range(-5, 6) if math.hypot(m * TH, n) <= 3)
    assert len(g) == count


def test_gaussian_inner_product_quadrature():
    from scipy import integrate

    a = GaussianVector(np.array([[0.3 + 1j]]), np.array([0.2]), 0.1)
    b = GaussianVector(np.array([[-0.2 + 0.8j]]), np.array([0.05 + 0.1j]), 0.2j)
    f = lambda x: a(x) * np.conj(b(x))  # noqa: E731
    re = integrate.quad(lambda x: f(x).real, -12, 12, epsabs=1e-14)[0]
    im = integrate.quad(lambda x: f(x).imag, -12, 12, epsabs=1e-14)[0]
    assert abs(a.inner(b) - complex(re, im)) < 1e-12


def test_heisenberg_action_is_projective_representation():
    # pi(z) pi(w) = exp(pi i A(z, w)) pi(z + w)
    f = TI.gaussian()
    z, w = np.array([0.3, -0.5]), np.array([-0.2, 0.7])
    xs = np.linspace(-2, 2, 9)
    lhs = f.act(w).act(z)(xs)
    rhs = np.exp(1j * np.pi * symplectic(z, w)) * f.act(z + w)(xs)
    assert np.abs(lhs - rhs).max() < 1e-13


# quantum theta


def test_qtheta_origin_coefficient():
    s = qtheta_coeffs(EmbeddedLattice(np.eye(2)), TI, 1)
    assert s[(0, 0)] == pytest.approx(1 / math.sqrt(2))
    assert (0, 0) in s and (5, 5) not in s


@pytest.mark.parametrize("T", [np.array([[1j]]), np.array([[0.4 + 0.9j]])])
def test_qtheta_against_gaussian_integrals(T):
    T = SiegelPoint(T)
    s = qtheta_coeffs(D1, T, 2.5)
    for v, c in zip(s.v, s.coeffs):
        closed, quad = heisenberg_inner(T, v)
        assert abs(c - closed) < 1e-13 and abs(c - quad) < 1e-9


def test_qtheta_n2_quadrature():
    T = SiegelPoint(np.array([[1j, 0.2], [0.2, 1.5j]]))
    for h in (np.zeros(4), np.array([0.5, 0.0, 0.0, 0.3]), np.array([0.2, -0.4, 0.1, 0.6])):
        closed, quad = heisenberg_inner(T, h)
        assert abs(closed - quad) < 1e-9


def test_qtheta_dimension_mismatch():
    with pytest.raises(ValueError):
        qtheta_coeffs(EmbeddedLattice(np.eye(4)), TI, 1)


@pytest.mark.parametrize("g", [(1, 0), (0, 1), (2, -1), (3, 1)])
def test_qtheta_functional_equation(g):
    assert qtheta_fe_residual(qtheta_coeffs(D1, TI, 8), g) < 1e-12


@pytest.mark.parametrize("g", [(1, 0), (0, 1), (1, 1)])
def test_qtheta_functional_equation_dual(g):
    assert qtheta_fe_residual(qtheta_coeffs(dual_lattice(D1), TI, 8), g) < 1e-12


def test_qtheta_literal_multiplier_fails():
    assert qtheta_fe_residual(qtheta_coeffs(D1, TI, 8), (1, 0), literal=True) > 0.1
    with pytest.raises(ValueError):
        qtheta_fe_residual(qtheta_coeffs(D1, TI, 2), (5, 0))


# Rieffel products


def test_rieffel_associativity():
    f = TI.gaussian()
    g1 = GaussianVector(np.array([[0.3 + 1j]]), np.array([0.2]), 0.1)
    g2 = GaussianVector(np.array([[0.5j]]), np.array([-0.1]), 0)
    assert rieffel_identity_residual(f, g1, g2, D1, 6, np.linspace(-1, 1, 5))[0] < 1e-6


def test_rieffel_conjugate_symmetry():
    # _D<psi, phi> = _D<phi, psi>^*
    f = TI.gaussian()
    g1 = GaussianVector(np.array([[0.3 + 1j]]), np.array([0.2]), 0.1)
    A, _ = rieffel_products(f, g1, D1, 4)
    Ar, _ = rieffel_products(g1, f, D1, 4)
    alg = TwistedAlgebra(D1, 4)
    assert np.abs(alg.adjoint(A.coeffs) - Ar.coeffs).max() < 1e-12


# twisted algebra and Boca projection


def test_twisted_algebra_associative_and_unital():
    alg = TwistedAlgebra(D1, 3)
    rng = np.random.default_rng(0)
    # supports near the origin so that products stay inside the truncation
    small = np.linalg.norm(alg.v, axis=1) <= 1.0
    F, G, H = (np.where(small, rng.normal(size=alg.n) + 1j * rng.normal(size=alg.n), 0) for _ in range(3))
    assert np.abs(alg.mul(alg.one(), F) - F).max() < 1e-15
    assert np.abs(alg.mul(alg.mul(F, G), H) - alg.mul(F, alg.mul(G, H))).max() < 1e-12
    assert np.abs(alg.adjoint(alg.mul(F, G)) - alg.mul(alg.adjoint(G), alg.adjoint(F))).max() < 1e-12


def test_newton_schulz_inverse_sqrt():
    alg = TwistedAlgebra(dual_lattice(D1), 8)
    theta = qtheta_coeffs(dual_lattice(D1), TI, 8).coeffs
    X, its, res = newton_schulz_inv_sqrt(alg, theta)
    assert res < 1e-8 and its < 100


def test_boca_projection_improves_with_truncation():
    b6, b10 = boca_projection(D1, TI, 6), boca_projection(D1, TI, 10)
    assert b10.idempotency < b6.idempotency
    assert b10.idempotency < 1e-6 and b10.selfadjointness < 1e-10
    assert abs(b10.trace.real - TH) < 2e-3
    assert b10.min_eigenvalue > 0


def test_boca_requires_n1():
    with pytest.raises(ValueError):
        boca_projection(EmbeddedLattice(np.eye(4)), SiegelPoint(np.diag([1j, 1j])), 2)


# bimodule


@pytest.mark.parametrize("g", [GL2ZMatrix(0, 1, 1, -1), GL2ZMatrix(2, 1, 1, 1), GL2ZMatrix(1, 2, 1, 3), GL2ZMatrix(3, 1, 2, 1)])
def test_bimodule_relations(g):
    r = bimodule_action_residual(TH, g)
    assert r["max_residual"] < 1e-12 and r["right_phase_error"] < 1e-14
    assert r["left_phase_error"] < 1e-12
    assert all(v < 1e-12 for v in r["commutation"].values())


def test_bimodule_left_phase_is_target_for_det_one():
    g = GL2ZMatrix(2, 1, 1, 1)
    r = bimodule_action_residual(TH, g)
    t = r["theta_prime"] - math.floor(r["theta_prime"] + 0.5)
    assert abs(r["left_phase_predicted"] - t) < 1e-14


def test_bimodule_requires_c_nonzero():
    with pytest.raises(ValueError):
        BimoduleOperators(TH, GL2ZMatrix(1, 1, 0, 1))


# classical theta


@pytest.mark.parametrize("T", [1j, 1 + 1j])
def test_mumford_constant(T):
    xs = [(0.0, 0.0), (0.3, 0.1), (-0.4, 0.7), (1.2, -0.5)]
    r = mumford_theta_check(T, xs)
    assert r["max_deviation"] < 1e-12
