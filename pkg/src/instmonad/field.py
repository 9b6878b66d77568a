"""Coefficient fields: 31-bit prime fields and exact rationals.

All heavy computation runs over a prime field F_p with p just above 2^30,
so products of two reduced residues fit in int64 with room for sums.
Dimension claims over the complex numbers are certified by agreement of
the same rank computation over two independent primes.  A rationals mode
(Fraction scalars in object arrays) is kept for small cross-checks.

  PrimeField      — mod-p scalar ops on numpy int64 arrays
  RationalField   — exact Fraction ops on object arrays
  select_prime    — deterministic 31-bit prime with a torsion condition
  root_of_unity   — element of exact multiplicative order d in F_p
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FieldTooSmall

# Smallest admissible prime: large enough that a*b < 2^62 for reduced a, b.
PRIME_FLOOR = 1 << 30
PRIME_CEILING = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3,215,031,751."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def select_prime(torsion: int = 1, index: int = 0) -> int:
    """Pick the (index+1)-th prime p >= 2^30 with p = 1 mod torsion.

    `torsion` is the order of roots of unity the field must contain
    (e.g. n+k-1 for the inertia-group fixed-point checks); `index`
    selects independent primes for two-prime agreement.
    """
    if torsion < 1:
        raise ValueError("torsion must be positive")
    p = PRIME_FLOOR + (-PRIME_FLOOR) % torsion + 1
    found = 0
    while p < PRIME_CEILING:
        if is_prime(p):
            if found == index:
                return p
            found += 1
        p += torsion if torsion > 1 else 1
    raise FieldTooSmall(f"no 31-bit prime = 1 mod {torsion}")


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    """Arithmetic mod a fixed odd prime p, on int64 numpy arrays."""

    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p >= PRIME_CEILING:
            raise ValueError("prime too large for int64-safe products")

    @property
    def char(self) -> int:
        return self.p

    def mod(self, arr):
        return np.asarray(arr, dtype=np.int64) % self.p

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def inv(self, x: int) -> int:
        return pow(int(x) % self.p, -1, self.p)

    def neg(self, arr):
        return (-np.asarray(arr, dtype=np.int64)) % self.p

    def matmul(self, a, b) -> np.ndarray:
        # exact product via Python ints: int64 would overflow once the
        # inner dimension exceeds a couple of reduced-residue products
        prod = np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
        return np.asarray(prod % self.p, dtype=np.int64)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def random_nonzero(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(1, self.p, size=shape, dtype=np.int64)

    def is_zero(self, arr) -> bool:
        return not np.any(np.asarray(arr) % self.p)


class RationalField:
    """Exact rational arithmetic on dtype=object arrays of Fractions.

    Slow path; intended only for small instances cross-checking the
    mod-p results.  char == 0 distinguishes it from PrimeField.
    """

    p = None
    char = 0

    def mod(self, arr):
        a = np.asarray(arr, dtype=object)
        flat = a.reshape(-1)
        for i, v in enumerate(flat):
            if not isinstance(v, Fraction):
                flat[i] = Fraction(v)
        return flat.reshape(a.shape)

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out[...] = Fraction(0)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = Fraction(1)
        return out

    def inv(self, x) -> Fraction:
        return 1 / Fraction(x)

    def neg(self, arr):
        return -np.asarray(arr, dtype=object)

    def matmul(self, a, b) -> np.ndarray:
        return np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return self.mod(rng.integers(-10, 11, size=shape))

    def random_nonzero(self, rng: np.random.Generator, shape) -> np.ndarray:
        vals = rng.integers(1, 11, size=shape) * rng.choice([-1, 1], size=shape)
        return self.mod(vals)

    def is_zero(self, arr) -> bool:
        return all(Fraction(v) == 0 for v in np.asarray(arr, dtype=object).reshape(-1))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("RationalField")


Field = PrimeField | RationalField


def root_of_unity(field: PrimeField, d: int) -> int:
    """Return an element of exact multiplicative order d in F_p.

    Deterministic: walks g = 2, 3, ... and tests g^((p-1)/d).
    Requires d | p - 1.
    """
    p = field.p
    if d == 1:
        return 1
    if (p - 1) % d != 0:
        raise FieldTooSmall(f"{d} does not divide {p}-1")
    cofactor = (p - 1) // d
    primes = _prime_factors(d)
    for g in range(2, p):
        y = pow(g, cofactor, p)
        if all(pow(y, d // q, p) != 1 for q in primes):
            return y
    raise FieldTooSmall(f"no element of order {d} mod {p}")
