"""
rmlab: computations around real multiplication.

Exact arithmetic in real quadratic fields and pseudolattices, Hecke and RM
theta functions, sign-twisted partial zeta values, quantum theta functions
on noncommutative tori, and truncated q-series identities.
"""

__version__ = "0.1.0"
