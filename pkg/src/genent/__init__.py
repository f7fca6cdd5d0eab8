"""Generalized entanglement relative to distinguished observable algebras.

Modules
-------
linalg     dense linear algebra: kron, Hermitian eigensolver, partial trace, evolution
algebra    observable bases, reduced states, purity, canonical example algebras
chain      exact diagonalization of the periodic XY chain in a transverse field
fermions   closed-form Jordan-Wigner / Bogoliubov solution of the same chain
cli        parameter sweeps and cross-checks from the command line
"""
from .errors import ContractError, DegenerateReferenceError, RankError, SizeError
from .model import G_CRITICAL, ChainParams, MomentumGrid, momentum_grid

__version__ = "0.1.0"

__all__ = [
    "ChainParams", "MomentumGrid", "momentum_grid", "G_CRITICAL",
    "ContractError", "DegenerateReferenceError", "RankError", "SizeError",
]
