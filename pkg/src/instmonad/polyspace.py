"""Graded pieces of a polynomial ring and linear subspaces of projective space.

Monomials of fixed degree are ordered lexicographically with
x_0 > x_1 > ... > x_{nvars-1}; a homogeneous form is its coefficient
vector in that basis.  On P^{2n+1} the 2n+2 coordinates are
x_0..x_n, y_0..y_n, mapped to variable indices 0..n and n+1..2n+1.

A linear subspace is stored as a parameterization matrix P whose
columns span the subspace: ambient coordinates = P @ fiber coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .errors import RankDeficient
from .field import Field
from .linalg import kernel_basis, rank


def dim_forms(nvars: int, degree: int) -> int:
    """Dimension of the space of degree-d forms in nvars variables."""
    if degree < 0:
        return 0
    return comb(nvars - 1 + degree, degree)


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of degree d in lex-descending order (x_0 heaviest)."""
    if nvars == 1:
        return ((degree,),)
    out = []
    for e0 in range(degree, -1, -1):
        for rest in monomial_basis(nvars - 1, degree - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomial_basis(nvars, degree))}


@lru_cache(maxsize=None)
def var_mult_table(nvars: int, degree: int) -> np.ndarray:
    """table[v, t] = index of x_v * (t-th degree-d monomial) in degree d+1."""
    basis = monomial_basis(nvars, degree)
    idx = monomial_index(nvars, degree + 1)
    table = np.empty((nvars, len(basis)), dtype=np.int64)
    for t, e in enumerate(basis):
        for v in range(nvars):
            bumped = list(e)
            bumped[v] += 1
            table[v, t] = idx[tuple(bumped)]
    return table


@dataclass(frozen=True, eq=False)
class HomogeneousForm:
    """A homogeneous form as a coefficient vector over the fixed basis."""

    nvars: int
    degree: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if len(self.coeffs) != dim_forms(self.nvars, self.degree):
            raise ValueError("coefficient vector has wrong length")

    def is_zero(self, field: Field) -> bool:
        return field.is_zero(self.coeffs)


def linear_form(field: Field, coeffs) -> HomogeneousForm:
    c = field.mod(coeffs)
    return HomogeneousForm(nvars=len(c), degree=1, coeffs=c)


def multiply(field: Field, f: HomogeneousForm, g: HomogeneousForm) -> HomogeneousForm:
    """Product of two forms in the same variable set."""
    if f.nvars != g.nvars:
        raise ValueError("variable count mismatch")
    nvars = f.nvars
    deg = f.degree + g.degree
    idx = monomial_index(nvars, deg)
    fb = monomial_basis(nvars, f.degree)
    gb = monomial_basis(nvars, g.degree)
    out = field.zeros(dim_forms(nvars, deg))
    for i, ef in enumerate(fb):
        cf = f.coeffs[i]
        if cf == 0:
            continue
        for j, eg in enumerate(gb):
            cg = g.coeffs[j]
            if cg == 0:
                continue
            tgt = idx[tuple(a + b for a, b in zip(ef, eg))]
            # reduce each product before accumulating to keep int64 safe
            out[tgt] = out[tgt] + field.mod([cf * cg])[0]
    return HomogeneousForm(nvars, deg, field.mod(out))


def evaluate(field: Field, f: HomogeneousForm, point) -> int:
    """Value of f at an affine representative of a point."""
    pt = field.mod(point)
    total = field.zeros(1)
    for i, e in enumerate(monomial_basis(f.nvars, f.degree)):
        c = f.coeffs[i]
        if c == 0:
            continue
        term = c
        for v, ev in enumerate(e):
            for _ in range(ev):
                term = field.mod([term * pt[v]])[0]
        total[0] = total[0] + term
    return field.mod(total)[0]


@dataclass(frozen=True, eq=False)
class SubspaceParam:
    """Linear subspace of P^{N-1} given by a full-column-rank N x m matrix."""

    matrix: np.ndarray

    @property
    def ambient_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def fiber_dim(self) -> int:
        return self.matrix.shape[1]


def restrict(field: Field, f: HomogeneousForm, sub: SubspaceParam) -> HomogeneousForm:
    """Pull f back along the parameterization (substitute x = P @ u)."""
    P = sub.matrix
    if P.shape[0] != f.nvars:
        raise ValueError("ambient dimension mismatch")
    m = P.shape[1]
    one = HomogeneousForm(m, 0, field.mod([1]))
    lin = [linear_form(field, P[v, :]) for v in range(f.nvars)]
    out = field.zeros(dim_forms(m, f.degree))
    basis = monomial_basis(f.nvars, f.degree)
    for i, e in enumerate(basis):
        c = f.coeffs[i]
        if c == 0:
            continue
        term = one
        for v, ev in enumerate(e):
            for _ in range(ev):
                term = multiply(field, term, lin[v])
        out = out + field.mod(term.coeffs * c)
    return HomogeneousForm(m, f.degree, field.mod(out))


def solve_subspace(field: Field, forms: list[HomogeneousForm]) -> SubspaceParam:
    """Common zero locus of independent linear forms, as a SubspaceParam.

    Raises RankDeficient when the forms are linearly dependent.
    """
    if not forms:
        raise ValueError("need at least one form")
    nvars = forms[0].nvars
    if any(f.degree != 1 or f.nvars != nvars for f in forms):
        raise ValueError("solve_subspace expects linear forms in one ring")
    C = np.stack([field.mod(f.coeffs) for f in forms])
    if rank(field, C) < len(forms):
        raise RankDeficient("defining linear forms are dependent")
    K = kernel_basis(field, C)
    return SubspaceParam(matrix=K)


def random_subspace(field: Field, rng: np.random.Generator, ambient: int, fiber: int,
                    tries: int = 32) -> SubspaceParam:
    """Random full-column-rank parameterization of a linear subspace."""
    for _ in range(tries):
        P = field.random(rng, (ambient, fiber))
        if rank(field, P) == fiber:
            return SubspaceParam(matrix=P)
    raise RankDeficient("could not sample a full-rank parameterization")


def same_subspace(field: Field, a: SubspaceParam, b: SubspaceParam) -> bool:
    """Whether two parameterizations span the same subspace."""
    if a.ambient_dim != b.ambient_dim or a.fiber_dim != b.fiber_dim:
        return False
    stacked = np.concatenate([a.matrix, b.matrix], axis=1)
    return rank(field, stacked) == a.fiber_dim
