"""Quantum tori, theta vectors and a projection of trace theta.

For theta = sqrt 2 - 1 the lattice D = diag(theta, 1) in R^2 carries the
rotation algebra A_theta.  The Gaussian f_T (T = i) gives

1. the quantum theta coefficients <f_T, pi(h) f_T>, checked by quadrature;
2. their functional equations on D and on the dual lattice;
3. Rieffel's associativity identity (Poisson summation in disguise);
4. a projection p in A_theta of trace theta, by Newton-Schulz;
5. the Morita bimodule relations for a few matrices g in GL2(Z).

Run with ``python3 demos/quantum_torus.py``.
"""

import math

import numpy as np

from rmlab.pseudolattice import GL2ZMatrix
from rmlab.qtorus import (
    EmbeddedLattice,
    GaussianVector,
    SiegelPoint,
    bimodule_action_residual,
    boca_projection,
    dual_lattice,
    heisenberg_inner,
    qtheta_coeffs,
    qtheta_fe_residual,
    rieffel_identity_residual,
)

theta = math.sqrt(2) - 1
D = EmbeddedLattice(np.diag([theta, 1.0]))
T = SiegelPoint(np.array([[1j]]))

print("== quantum theta coefficients (|h| <= 1.5)")
s = qtheta_coeffs(D, T, 1.5)
for g, v, c in zip(s.g, s.v, s.coeffs):
    quad = heisenberg_inner(T, v)[1]
    print(f"h = {tuple(int(x) for x in g)!s:9}  c_h = {c.real:.12f}   quadrature {quad.real:.12f}")

print("\n== functional equations (R = 8)")
for lat, name in ((D, "D"), (dual_lattice(D), "D!")):
    r = qtheta_fe_residual(qtheta_coeffs(lat, T, 8), (1, 0))
    print(f"{name:2}: per coefficient residual {r:.1e}")
print(f"with the exp(3 pi/2 ...) multiplier instead: {qtheta_fe_residual(qtheta_coeffs(D, T, 8), (1, 0), literal=True):.2f}")

print("\n== Rieffel associativity")
g1 = GaussianVector(np.array([[0.3 + 1j]]), np.array([0.2]), 0.1)
g2 = GaussianVector(np.array([[0.5j]]), np.array([-0.1]), 0)
res = rieffel_identity_residual(T.gaussian(), g1, g2, D, 6, np.linspace(-1, 1, 5))[0]
print(f"max |_A<l,m> n - l <m,n>_B| = {res:.1e}")

print("\n== projection of trace theta")
for R in (6, 8, 10):
    b = boca_projection(D, T, R)
    print(f"R = {R:2}: |p*p - p| = {b.idempotency:.1e}, |p* - p| = {b.selfadjointness:.1e}, "
          f"tr p = {b.trace.real:.8f} (theta = {theta:.8f}), {b.iterations} Newton steps")

print("\n== Morita bimodules")
for g in (GL2ZMatrix(0, 1, 1, -1), GL2ZMatrix(2, 1, 1, 1), GL2ZMatrix(3, 1, 2, 1)):
    r = bimodule_action_residual(theta, g)
    print(f"g = {r['g']}: theta' = {r['theta_prime']:.6f}, left phase {r['left_phase_measured']:+.6f} "
          f"(predicted {r['left_phase_predicted']:+.6f}), max residual {r['max_residual']:.1e}")
