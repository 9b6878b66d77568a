"""Exact-arithmetic construction and verification of symplectic
instanton monads on odd projective space.

Submodules: field, linalg, polyspace, binaryforms, monad, thooft, rs,
moduli, report, cli.
"""

from .field import PrimeField, RationalField, root_of_unity, select_prime
from .monad import LinearFormMatrix, symplectic_check

__version__ = "0.1.0"

__all__ = [
    "PrimeField",
    "RationalField",
    "LinearFormMatrix",
    "root_of_unity",
    "select_prime",
    "symplectic_check",
    "__version__",
]
