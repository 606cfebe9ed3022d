import math
from fractions import Fraction

import numpy as np
import pytest

from rmlab.acceptance import GAUSSIAN_TRIPLES, worked_theta_spec
from rmlab.pseudolattice import Pseudolattice
from rmlab.quadfield import QuadElem
from rmlab.rmtheta import (
    LatticeThetaSpec,
    ThetaSpec,
    adaptive_simpson,
    coset_reps,
    fe_lattice_residual,
    fe_rm_residual,
    gaussian_ft_check,
    pairing,
    theta_lattice,
    theta_rm,
    unit_conditions,
    unit_group_for,
)

D = 3
L5 = Pseudolattice(QuadElem(5, 0, D), QuadElem(0, 5, D))
ONE, ZERO = QuadElem(1, 0, D), QuadElem(0, 0, D)


def test_pairing():
    assert pairing(1 + 2j, 3 + 4j) == 1 * 4 + 2 * 3


def test_unit_group_examples():
    assert unit_group_for(L5, ONE, ZERO) == QuadElem(26, 15, D)
    ok = Pseudolattice(QuadElem(1, 0, D), QuadElem(0, 1, D))
    assert unit_group_for(ok, ZERO, ZERO) == QuadElem(2, 1, D)
    c = unit_conditions(L5, ONE, ZERO, QuadElem(2, 1, D))
    assert not c["a"] and c["totally_positive"]


def test_spec_rejects_bad_unit():
    with pytest.raises(ValueError):
        ThetaSpec(L5, ONE, ZERO, 1, QuadElem(2, 1, D))
    with pytest.raises(ValueError):
        ThetaSpec(L5, ONE, ZERO, 1, QuadElem(2, 0, D))


def test_coset_reps_are_orbit_representatives():
    eps = QuadElem(26, 15, D)
    reps = coset_reps(L5, ONE, eps, 200)
    elems = reps.elements(L5, ONE)
    assert len(elems) == len(reps) > 0
    # exact norms and signs
    for x, nn, s, sc in zip(elems, reps.norm_num, reps.sgn, reps.sgn_conj):
        assert x.norm() == Fraction(int(nn), reps.den)
        assert (s, sc) == (x.sign(), x.conj().sign())
        assert (x - ONE) in L5
    # no two representatives in the same eps orbit
    seen = set(elems)
    for x in elems:
        for k in (1, 2, -1, -2):
            y = x * eps**k
            assert y not in seen
    # sorted by |N|
    assert np.all(np.diff(reps.abs_norm) >= 0)


def test_coset_reps_complete_against_brute_force():
    # every lattice point with |N x| <= B is eps^k of some representative
    eps = QuadElem(26, 15, D)
    B = 120
    reps = set(coset_reps(L5, ONE, eps, B).elements(L5, ONE))
    for m in range(-12, 13):
        for n in range(-12, 13):
            x = ONE + L5.l1 * m + L5.l2 * n
            if abs(x.norm()) > B:
                continue
            y = x
            # move y into the fundamental range by multiplying with eps^{+-1}
            for _ in range(10):
                if y in reps:
                    break
                y = y * eps if abs(float(y)) < abs(float(y.conj())) else y / eps
            assert y in reps, x


def test_eta_zero_gives_zero():
    spec = ThetaSpec(L5, ONE, ZERO, 0, QuadElem(26, 15, D))
    assert theta_rm(spec, 1j) == 0


def test_theta_rm_converged():
    spec = worked_theta_spec()
    v = 0.3 + 1j
    val, info = theta_rm(spec, v, return_info=True)
    val2 = theta_rm(spec, v, bound=2 * Fraction(info["bound"]))
    assert abs(val - val2) < 1e-12
    assert theta_rm(spec, v) == val  # bit reproducible


def test_theta_rm_periodicity():
    # the sum only involves e^{2 pi i v |N x|} with |N x| in Z/den
    spec = worked_theta_spec()
    assert abs(theta_rm(spec, 1j) - theta_rm(spec, 1 + 1j)) < 1e-12


@pytest.mark.parametrize("v", [1j, 2j, 0.3 + 1.2j])
def test_rm_functional_equation(v):
    assert fe_rm_residual(worked_theta_spec(), v)[0] < 1e-8


def test_rm_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        theta_rm(worked_theta_spec(), -1j)


@pytest.mark.parametrize("v, eta, y", GAUSSIAN_TRIPLES)
def test_gaussian_fourier_transform(v, eta, y):
    closed, quad = gaussian_ft_check(v, eta, y)
    assert abs(closed - quad) < 1e-8


def test_lattice_theta_brute_force_gaussian_integers():
    spec = LatticeThetaSpec(1, 1j, 0.25 + 0.1j, 0.3 - 0.2j, 1 + 0.5j)
    v = 0.2 + 0.9j
    tot = 0j
    lam0, mu0, eta = spec.lam0, spec.mu0, spec.eta
    for m in range(-15, 16):
        for n in range(-15, 16):
            lam = complex(m, n)
            p = lam0 + lam
            tot += pairing(p, eta) * np.exp(
                1j * math.pi * v * abs(p) ** 2 - 2j * math.pi * pairing(lam, mu0) - 1j * math.pi * pairing(lam0, mu0)
            )
    assert abs(theta_lattice(spec, v) - tot) < 1e-12


def test_lattice_theta_basis_independent():
    a = LatticeThetaSpec(1, 1j, 0.1j, 0.2, 1j)
    b = LatticeThetaSpec(1, 3 + 1j, 0.1j, 0.2, 1j)
    assert abs(theta_lattice(a, 1.1j) - theta_lattice(b, 1.1j)) < 1e-12


def test_lattice_spec_rejects_degenerate():
    with pytest.raises(ValueError):
        LatticeThetaSpec(1, 2)


@pytest.mark.parametrize("t, v", [(0.0, 1j), (0.5, 0.2 + 0.7j), (-1.0, 1.3j)])
def test_lattice_functional_equation(t, v):
    L = Pseudolattice(QuadElem(1, 0, 5), QuadElem(Fraction(1, 2), Fraction(1, 2), 5))
    l0, m0 = QuadElem(Fraction(1, 3), 0, 5), QuadElem(Fraction(1, 4), Fraction(1, 4), 5)
    assert fe_lattice_residual(L, l0, m0, 1 + 0.5j, t, v)[0] < 1e-9


def test_adaptive_simpson():
    val, n = adaptive_simpson(math.exp, 0.0, 1.0, tol=1e-12)
    assert abs(val - (math.e - 1)) < 1e-12 and n > 5
    with pytest.raises(RuntimeError):
        adaptive_simpson(lambda x: 1 / x if x else 0.0, 0.0, 1.0, tol=1e-14, max_depth=8)
