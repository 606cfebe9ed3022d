"""The q-exponential, its pentagon identity and the classical limit.

In the algebra uv = q^2 vu the series e_q(t) = prod (1 + q^{2n+1} t)
satisfies e_q(u) e_q(v) = e_q(u + v) and a pentagon identity whose middle
argument must be scaled by q.  As q -> 1 the logarithm of e_q is governed by
the dilogarithm, whose five term relation is the classical shadow of the
pentagon.

Run with ``python3 demos/pentagon.py``.
"""

import math

from rmlab.qexp import (
    NCPoly,
    QSeriesParams,
    addition_check,
    dilog_asymptotic,
    eq_series,
    pentagon_check,
    rogers_L,
    rogers_numeric,
)

P = QSeriesParams(Ndeg=6, Qdeg=40, mu=1)
e = eq_series(NCPoly.u(P))
print("coefficients of u^k in e_q(u), first q powers:")
for k in range(4):
    print(f"  k = {k}: {e.coefficient(0, k)[:18]}")

print(f"\naddition  e_q(u) e_q(v) - e_q(u+v):          zero = {addition_check(P).is_zero()}")
print(f"pentagon with middle argument q vu:          zero = {pentagon_check(P).is_zero()}")
r = pentagon_check(QSeriesParams(2, 12, 0))
print(f"pentagon with middle argument vu, v u coeff:  {r.coefficient(1, 1)}  (= -q/(1+q))")

print("\nRogers dilogarithm: L(1/2) = pi^2/12 ->", f"{rogers_L(0.5) - math.pi**2 / 12:.1e}")
print(f"five term relation, worst residual on a grid: {max(rogers_numeric(x, y) for x in (0.1, 0.5, 0.9) for y in (0.2, 0.6)):.1e}")

print("\nlog e_q(1) + L_2(-1)/(4 pi y) as y -> 0 (q = exp(-2 pi y)):")
for y in (0.04, 0.02, 0.01, 0.005):
    print(f"  y = {y:<6} remainder {dilog_asymptotic(1.0, y):.3e}   with the log(1+qt)/2 term {dilog_asymptotic(1.0, y, True):.4f}")
