"""From a real quadratic field to a Stark number.

Walks through K = Q(sqrt 3), L = 5 O_K, l0 = 1:

1. field arithmetic and the fundamental unit;
2. the unit group preserving (L, l0) and its theta function;
3. the functional equation of the theta function;
4. the partial zeta function, continued by a Mellin transform;
5. zeta'(0) and the Stark number, with an (inconclusive) algebraicity probe.

Run with ``python3 demos/stark_number.py``.
"""

import math

from rmlab.acceptance import worked_theta_spec
from rmlab.quadfield import fundamental_unit, pretty_elem, totally_positive_unit
from rmlab.rmtheta import fe_rm_residual, hecke_average, theta_rm
from rmlab.starkzeta import algebraicity_probe, stark_conditions_check, stark_number, worked_example, zeta_direct, zeta_mellin


def section(title):
    print(f"\n== {title}")


section("field and units")
d = 3
print(f"fundamental unit of Q(sqrt {d}): {pretty_elem(fundamental_unit(d))}")
print(f"totally positive generator:     {pretty_elem(totally_positive_unit(d))}")

section("theta function of (L, l0, m0) = (5 O_K, 1, 0)")
spec = worked_theta_spec()
print(f"unit group generator eps = {pretty_elem(spec.eps)}")
for v in (1j, 0.25 + 1j, 2j):
    val, info = theta_rm(spec, v, return_info=True)
    print(f"Theta({v}) = {val:.12f}   [{info['terms']} orbit representatives, |N x| <= {info['bound']}]")

section("functional equation and Hecke averaging")
for v in (1j, 2j):
    res, lhs, rhs = fe_rm_residual(spec, v)
    print(f"v = {v}: |Theta(v) - Theta^dual(-1/v)/(Delta v)| = {res:.2e}")
v = 1j
print(f"Hecke average over one unit period at v = i differs by {abs(hecke_average(spec, v) - theta_rm(spec, v)):.2e}")

section("partial zeta function")
inp = worked_example()
chk = stark_conditions_check(inp.L, inp.l0)
print(f"admissible: {chk['pass']} (f = {chk['f']}, units = 1 mod f generated by {chk['unit_generator_pretty']})")
for s in (3, 2):
    m, dct = zeta_mellin(inp, s).value, zeta_direct(inp, s, 10**5).value
    print(f"zeta({s}): Mellin {m.real:.12f}   direct (|N x| <= 1e5) {dct.real:.12f}")
for s in (0.5, -1, 0):
    print(f"zeta({s}) = {zeta_mellin(inp, s).value.real:.12f}")

section("Stark number")
zp, S0, meta = stark_number(inp)
print(f"zeta'(0) = {zp:.15f}")
print(f"S0 = exp(zeta'(0)) = {S0:.15f}")
hit = algebraicity_probe(S0, max_deg=4, max_height=30)
print("probe (degree <= 4, height <= 30):", hit if hit else "no small polynomial found")
print(f"sanity: log S0 - zeta'(0) = {math.log(S0) - zp:.1e}")
