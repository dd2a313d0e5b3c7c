"""Exact verification kernel for rational Cherednik algebra machinery.

Subpackages cover cyclotomic arithmetic, reflection group data, Dunkl
operators, PBW normal forms, the rank-1 monodromy model, and orbifold
Hecke algebras, plus a FastAPI service and CLI exposing every check.
"""

__version__ = "0.1.0"
