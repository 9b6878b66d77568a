"""Closed-form dimension, rationality, and Poincare-family arithmetic.

Everything here is exact integer arithmetic: moduli dimensions of the
two families, the 2-adic invariant 2^e of gcd(n, k) that governs
rationality, and the subtractive-Euclid bookkeeping whose step sum
telescopes to the closed-form affine dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def thooft_moduli_dim(n: int, k: int) -> int:
    """Dimension 5kn + 4n^2 of the 't Hooft moduli space."""
    _check(n, k)
    return 5 * k * n + 4 * n * n


def rs_moduli_dim(n: int, k: int) -> int:
    """Dimension (4n+2)k + 4n^2 + 2n - 4 of the RS moduli space.

    Recomputed as parameter-space dim minus group dim and asserted
    equal; the two routes agree identically.
    """
    _check(n, k)
    direct = (4 * n + 2) * k + 4 * n * n + 2 * n - 4
    via_quotient = (2 * n + 2 * k) * (2 * n + 2) - (2 * n + 2 * k + 4)
    if direct != via_quotient:
        raise AssertionError("moduli dimension routes disagree")
    return direct


def two_power_e(n: int, k: int) -> int:
    """Largest power of 2 dividing gcd(n, k)."""
    _check(n, k)
    g = gcd(n, k)
    return g & -g


@dataclass(frozen=True)
class ModuliProfile:
    """Birational shape of both moduli spaces for a given (n, k)."""

    n: int
    k: int
    thooft_dim: int
    rs_dim: int
    two_power_e: int
    thooft_affine_exponent: int
    thooft_residual_quotient_size: int
    rationality: str           # rational | stably-rational | unknown
    thooft_poincare: bool
    rs_stack_exponent: int
    rs_residual: str           # B_mu2 | End2-mod-SL2
    rs_poincare: bool
    rs_space_rational: bool    # always true

    def to_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k,
            "thooft_dim": self.thooft_dim,
            "rs_dim": self.rs_dim,
            "two_power_e": self.two_power_e,
            "thooft_affine_exponent": self.thooft_affine_exponent,
            "thooft_residual_quotient_size": self.thooft_residual_quotient_size,
            "rationality": self.rationality,
            "thooft_poincare": self.thooft_poincare,
            "rs_stack_exponent": self.rs_stack_exponent,
            "rs_residual": self.rs_residual,
            "rs_poincare": self.rs_poincare,
            "rs_space_rational": self.rs_space_rational,
        }


def birational_profile(n: int, k: int) -> ModuliProfile:
    """Populate the full profile from the parity/2-adic case analysis.

    The 't Hooft space is affine space times a residual symmetric-pair
    quotient of size 2^e; it is rational for 2^e <= 2, stably rational
    for 2^e in {4, 8}, and unresolved beyond.  A Poincare family
    exists exactly when 2^e = 1.  The RS stack is affine space times
    B_mu2 when n or k is odd (Poincare family exists), and drops five
    affine dimensions against a conjugation quotient when both are
    even (no Poincare family); its coarse space is always rational.
    """
    e = two_power_e(n, k)
    tdim = thooft_moduli_dim(n, k)
    rdim = rs_moduli_dim(n, k)
    if e <= 2:
        rationality = "rational"
    elif e in (4, 8):
        rationality = "stably-rational"
    else:
        rationality = "unknown"
    odd_case = (n % 2 == 1) or (k % 2 == 1)
    return ModuliProfile(
        n=n, k=k,
        thooft_dim=tdim,
        rs_dim=rdim,
        two_power_e=e,
        thooft_affine_exponent=tdim - e * (e + 3) // 2,
        thooft_residual_quotient_size=e,
        rationality=rationality,
        thooft_poincare=(e == 1),
        rs_stack_exponent=rdim if odd_case else rdim - 5,
        rs_residual="B_mu2" if odd_case else "End2-mod-SL2",
        rs_poincare=odd_case,
        rs_space_rational=True,
    )


@dataclass(frozen=True)
class EuclidStep:
    kind: str        # unequal | equal | refine
    state: tuple[int, int]
    added: int


@dataclass(frozen=True)
class EuclidTrace:
    d1: int
    d2: int
    steps: tuple[EuclidStep, ...]
    total: int

    @property
    def step_sum(self) -> int:
        return sum(s.added for s in self.steps)


def euclid_closed_form(d1: int, d2: int) -> int:
    """d1 + d2 + d1*d2 - 2^e(2^e+3)/2 with 2^e from gcd(d1, d2)."""
    e = two_power_e(d1, d2)
    return d1 + d2 + d1 * d2 - e * (e + 3) // 2


def euclid_trace(d1: int, d2: int) -> EuclidTrace:
    """Subtractive Euclidean reduction with dimension bookkeeping.

    Each unequal step (a > b) adds b(b+1) and replaces a by a-b; the
    terminal equal step at a = b = h = gcd(d1, d2) adds h(h+1)/2.
    When h exceeds 2^e a final refinement step adds the net difference
    h(h+3)/2 - 2^e(2^e+3)/2, so the step sum telescopes to the closed
    form d1 + d2 + d1*d2 - 2^e(2^e+3)/2.
    """
    _check(d1, d2)
    steps: list[EuclidStep] = []
    a, b = d1, d2
    while a != b:
        if a < b:
            a, b = b, a
        steps.append(EuclidStep(kind="unequal", state=(a, b), added=b * (b + 1)))
        a -= b
    h = a
    steps.append(EuclidStep(kind="equal", state=(h, h), added=h * (h + 1) // 2))
    e = two_power_e(d1, d2)
    if h > e:
        added = h * (h + 3) // 2 - e * (e + 3) // 2
        steps.append(EuclidStep(kind="refine", state=(h, e), added=added))
    trace = EuclidTrace(d1=d1, d2=d2, steps=tuple(steps),
                        total=sum(s.added for s in steps))
    return trace


def _check(n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise ValueError("arguments must be >= 1")
