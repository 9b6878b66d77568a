"""Binary forms, multiplication maps, and symmetric powers of 2x2 matrices.

S^m U has basis u1^m, u1^{m-1}u2, ..., u2^m; a degree-m binary form is
its coefficient vector of length m+1 in that order.  The multiplication
map S^p U x S^q U -> S^{p+q} U is the raw monomial sum with no
multinomial normalization: the column indexed by (i, j) has a single 1
in row i+j.

  mult_map              — matrix of the multiplication map
  mult_map_partial      — partial transpose S^{p+q}U -> (S^pU)* (x) S^qU
  sym_power             — matrix of S^m g for 2x2 g
  sym_power_derivative  — Leibniz derivative of S^m at the identity
  hyperplane_mult_surjective — surjectivity test of Lemma-style pairings
  power_functional      — p-th power point-evaluation functional
"""

from __future__ import annotations

import numpy as np

from .errors import ZeroFunctional
from .field import Field, PrimeField
from .linalg import kernel_basis, rank


def mult_map(p: int, q: int) -> np.ndarray:
    """(p+q+1) x (p+1)(q+1) matrix of S^pU (x) S^qU -> S^{p+q}U.

    Column (i, j) (flattened as i*(q+1)+j) carries u1^{p-i}u2^i *
    u1^{q-j}u2^j to the single monomial of index i+j.
    """
    M = np.zeros((p + q + 1, (p + 1) * (q + 1)), dtype=np.int64)
    for i in range(p + 1):
        for j in range(q + 1):
            M[i + j, i * (q + 1) + j] = 1
    return M


def mult_map_partial(p: int, q: int) -> np.ndarray:
    """Matrix of S^{p+q}U -> (S^pU)* (x) S^qU, rows flattened as (i, j).

    This is the partial transpose of mult_map(p, q): the basis vector of
    index s maps to sum over i of (dual basis i) (x) (monomial s-i).
    """
    M = mult_map(p, q)
    return M.reshape(p + q + 1, p + 1, q + 1).transpose(1, 2, 0).reshape(
        (p + 1) * (q + 1), p + q + 1)


def binary_multiply(field: Field, f, g):
    """Product of two binary forms as coefficient vectors (convolution)."""
    f = field.mod(f)
    g = field.mod(g)
    out = field.zeros(len(f) + len(g) - 1)
    for i, c in enumerate(f):
        if c == 0:
            continue
        out[i: i + len(g)] = out[i: i + len(g)] + field.mod(g * c)
    return field.mod(out)


def sym_power(field: Field, g, m: int) -> np.ndarray:
    """Matrix of S^m g on the monomial basis, for a 2x2 matrix g.

    Columns act on basis vectors: u1 maps to g[0,0] u1 + g[1,0] u2.
    sym_power(g, 0) is the 1x1 identity.
    """
    g = field.mod(g)
    col1 = field.mod([g[0, 0], g[1, 0]])  # image of u1
    col2 = field.mod([g[0, 1], g[1, 1]])  # image of u2
    out = field.zeros((m + 1, m + 1))
    for i in range(m + 1):
        vec = field.mod([1])
        for _ in range(m - i):
            vec = binary_multiply(field, vec, col1)
        for _ in range(i):
            vec = binary_multiply(field, vec, col2)
        out[:, i] = vec
    return out


def sym_power_derivative(field: Field, xi, m: int) -> np.ndarray:
    """Derivative of g -> S^m g at the identity, in direction xi.

    Leibniz rule on u1^{m-i} u2^i: each factor is replaced in turn by
    its image under xi.  sym_power_derivative(identity, m) = m * id.
    """
    xi = field.mod(xi)
    out = field.zeros((m + 1, m + 1))
    for i in range(m + 1):
        # (m-i) copies of u1 -> xi u1, i copies of u2 -> xi u2
        out[i, i] = out[i, i] + (m - i) * xi[0, 0] + i * xi[1, 1]
        if i + 1 <= m:
            out[i + 1, i] = out[i + 1, i] + (m - i) * xi[1, 0]
        if i - 1 >= 0:
            out[i - 1, i] = out[i - 1, i] + i * xi[0, 1]
    return field.mod(out)


def hyperplane_mult_surjective(field: Field, functional, q: int) -> bool:
    """Whether ker(functional) (x) S^qU -> S^{p+q}U is surjective.

    functional is a nonzero vector of length p+1 read as an element of
    (S^pU)*.  Surjectivity fails exactly when the functional is a p-th
    power, i.e. point evaluation at some point of P^1.
    """
    lam = field.mod(functional)
    p = len(lam) - 1
    if field.is_zero(lam):
        raise ZeroFunctional("hyperplane functional is zero")
    K = kernel_basis(field, lam.reshape(1, -1))  # (p+1) x p
    M = mult_map(p, q)
    # columns of the restricted map: (kernel column a) * (monomial j)
    cols = []
    for a in range(K.shape[1]):
        for j in range(q + 1):
            vec = field.zeros((p + 1) * (q + 1))
            for i in range(p + 1):
                vec[i * (q + 1) + j] = K[i, a]
            cols.append(field.mod(M @ vec))
    mat = np.stack(cols, axis=1)
    return rank(field, mat) == p + q + 1


def power_functional(field: Field, root, p: int) -> np.ndarray:
    """Point-evaluation functional lam(u1^{p-i}u2^i) = r1^{p-i} r2^i."""
    r = field.mod(root)
    out = field.zeros(p + 1)
    for i in range(p + 1):
        v = field.mod([1])[0]
        for _ in range(p - i):
            v = field.mod([v * r[0]])[0]
        for _ in range(i):
            v = field.mod([v * r[1]])[0]
        out[i] = v
    return out
