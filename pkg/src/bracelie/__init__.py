"""bracelie: exact computations with left braces, holomorphs of finite abelian
groups, nilpotent Lie algebras over Z and F_p, truncated BCH products, and
multivariate polynomial systems over prime fields."""

from .exactalg import (
    Matrix,
    PrimeField,
    ZZ,
    QQ,
    commutator,
    is_prime,
    is_strictly_upper,
    is_unipotent_upper,
    mat_mul,
    mat_pow,
)

__version__ = "0.1.0"

__all__ = [
    "Matrix",
    "PrimeField",
    "ZZ",
    "QQ",
    "commutator",
    "is_prime",
    "is_strictly_upper",
    "is_unipotent_upper",
    "mat_mul",
    "mat_pow",
    "__version__",
]
