"""
Quantum tori, Heisenberg modules and quantum theta functions.

Submodules: :mod:`.morita` (the Morita action on theta), :mod:`.heisenberg`
(embedded lattices, Gaussian vectors, Siegel points), :mod:`.convolution`
(truncated twisted convolution algebras), :mod:`.theta` (quantum theta
series), :mod:`.rieffel` (scalar products), :mod:`.boca` (Boca's projection)
and :mod:`.bimodule` (the equivalence bimodule for ``g``).
"""

from .morita import MoritaMatrix, morita_act, morita_compose
from .heisenberg import (
    EmbeddedLattice,
    GaussianVector,
    SiegelPoint,
    classical_theta,
    dual_lattice,
    heisenberg_inner,
    mumford_theta_check,
    symplectic,
)
from .convolution import TwistedAlgebra
from .theta import QuantumThetaSeries, qtheta_coeffs, qtheta_fe_residual, qtheta_multiplier
from .rieffel import RieffelSeries, left_action, right_action, rieffel_identity_residual, rieffel_products
from .boca import BocaResult, boca_projection, newton_schulz_inv_sqrt, positivity_certificate
from .bimodule import BimoduleOperators, bimodule_action_residual

__all__ = [
    "MoritaMatrix", "morita_act", "morita_compose",
    "EmbeddedLattice", "GaussianVector", "SiegelPoint", "classical_theta", "dual_lattice",
    "heisenberg_inner", "mumford_theta_check", "symplectic",
    "TwistedAlgebra",
    "QuantumThetaSeries", "qtheta_coeffs", "qtheta_fe_residual", "qtheta_multiplier",
    "RieffelSeries", "left_action", "right_action", "rieffel_identity_residual", "rieffel_products",
    "BocaResult", "boca_projection", "newton_schulz_inv_sqrt", "positivity_certificate",
    "BimoduleOperators", "bimodule_action_residual",
]
