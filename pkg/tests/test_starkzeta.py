import math

import pytest

from rmlab.pseudolattice import Pseudolattice
from rmlab.quadfield import QuadElem
from rmlab.starkzeta import (
    StarkInput,
    algebraicity_probe,
    ideal_conj,
    ideal_norm,
    ideal_product,
    is_integral_ideal,
    stark_conditions_check,
    stark_number,
    worked_example,
    zeta_direct,
    zeta_mellin,
)


def scaled_ok(d, n):
    return Pseudolattice(QuadElem(n, 0, d), QuadElem(0, n, d))


def test_ideal_arithmetic():
    L = scaled_ok(3, 5)
    assert ideal_norm(L) == 25 and is_integral_ideal(L)
    p = Pseudolattice(QuadElem(2, 0, 3), QuadElem(1, 1, 3))  # prime above 2 in Z[sqrt 3]
    assert ideal_norm(p) == 2
    # p = (1 + sqrt 3) and (1 + sqrt 3)^2 = 2 (2 + sqrt 3), so p^2 = 2 O_K
    assert ideal_product(p, p).same_lattice(scaled_ok(3, 2))
    assert ideal_norm(ideal_conj(p)) == 2
    assert not is_integral_ideal(Pseudolattice(QuadElem(1, 0, 3), QuadElem(0, 1, 3)).scale(QuadElem(1, 0, 3) / 2))


def test_worked_example_conditions():
    r = stark_conditions_check(*(lambda i: (i.L, i.l0))(worked_example()))
    assert r["pass"] and r["unit_generator"] == "26 15 3" and r["N(b)"] == 1 and r["N(f)"] == 25


@pytest.mark.parametrize(
    "d, n, l0, witness",
    [(2, 1, 1, "-1 = 1 mod f"), (3, 4, 1, "negative conjugate"), (3, 5, 5, "-1 = 1 mod f")],
)
def test_condition_failures(d, n, l0, witness):
    r = stark_conditions_check(scaled_ok(d, n), QuadElem(l0, 0, d))
    assert not r["pass"] and witness in r["witness"]
    with pytest.raises(ValueError):
        stark_number(StarkInput(scaled_ok(d, n), QuadElem(l0, 0, d)))


def test_other_passing_examples():
    assert stark_conditions_check(scaled_ok(3, 5), QuadElem(2, 0, 3))["pass"]
    r = stark_conditions_check(scaled_ok(2, 7), QuadElem(1, 0, 2))
    assert r["pass"] and r["unit_generator"] == "99 70 2"


def test_input_validation():
    with pytest.raises(ValueError):
        StarkInput(scaled_ok(3, 5), QuadElem(1, 0, 3) / 2)
    with pytest.raises(ValueError):
        StarkInput(scaled_ok(3, 5), QuadElem(0, 0, 3))
    with pytest.raises(ValueError):
        zeta_direct(worked_example(), 1.0)


def test_mellin_matches_direct_at_3():
    inp = worked_example()
    assert abs(zeta_mellin(inp, 3).value - zeta_direct(inp, 3, 10**5).value) < 1e-8


def test_mellin_independent_of_split():
    inp = worked_example()
    for s in (2, 0.5 + 1j, -1.5):
        a = zeta_mellin(inp, s, y0=1.0).value
        b = zeta_mellin(inp, s, y0=0.6).value
        assert abs(a - b) < 1e-10


def test_shift_invariance():
    # the orbit sum depends on l0 modulo L; the prefactor sgn(l0') does not
    inp = worked_example()
    z = zeta_mellin(inp, 2).value
    assert abs(z - zeta_mellin(StarkInput(scaled_ok(3, 5), QuadElem(6, 0, 3)), 2).value) < 1e-11
    flipped = StarkInput(scaled_ok(3, 5), QuadElem(6, 5, 3))
    assert flipped.sign_l0 == -1
    assert abs(z + zeta_mellin(flipped, 2).value) < 1e-11


def test_zeta_vanishes_at_zero_and_stark_number():
    inp = worked_example()
    assert zeta_mellin(inp, 0).value == 0
    zp, S0, _ = stark_number(inp)
    assert S0 == pytest.approx(math.exp(zp), rel=1e-15)
    assert stark_number(inp)[1] == S0
    assert zp == pytest.approx(1.3586306533922, abs=1e-9)


def test_stark_number_independent_of_split():
    inp = worked_example()
    assert abs(stark_number(inp, y0=1.0)[0] - stark_number(inp, y0=0.7)[0]) < 1e-11


@pytest.mark.parametrize(
    "x, coeffs",
    [(3 + 2 * math.sqrt(2), [1, -6, 1]), (1.0, [1, -1]), ((1 + math.sqrt(5)) / 2, [1, -1, -1]), (2 ** (1 / 3), [1, 0, 0, -2])],
)
def test_probe_finds_polynomials(x, coeffs):
    got, res = algebraicity_probe(x, max_deg=3)
    assert got == coeffs and res < 1e-9


def test_probe_misses_pi_and_caps_work():
    assert algebraicity_probe(math.pi) is None
    with pytest.raises(RuntimeError):
        algebraicity_probe(math.pi, max_deg=6, max_height=50, max_ops=1000)
    with pytest.raises(ValueError):
        algebraicity_probe(float("nan"))
