"""Exact dense linear algebra over a prime field or the rationals.

Mod-p matrices are int64 numpy arrays with entries in [0, p); p < 2^31
guarantees a*b fits in int64, so row updates reduce mod p only once per
pivot.  The rationals path runs the same elimination with Fraction
scalars in object arrays and is meant for small cross-checks only.

  rank          — number of pivots of Gaussian elimination
  rref          — reduced row echelon form with pivot columns
  kernel_basis  — right-kernel vectors, reduced echelon, leading 1s
  det           — determinant via elimination
  inverse       — matrix inverse (raises RankDeficient when singular)
"""

from __future__ import annotations

import numpy as np

from .errors import RankDeficient
from .field import Field, PrimeField


def _rank_modp(mat: np.ndarray, p: int) -> int:
    """Forward elimination only; destroys its copy of mat."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r, c:] = a[r, c:] * pow(int(a[r, c]), -1, p) % p
        factors = a[r + 1:, c]
        mask = factors != 0
        if mask.any():
            a[r + 1:, c:][mask] = (
                a[r + 1:, c:][mask] - factors[mask, None] * a[r, c:]
            ) % p
        r += 1
    return r


def _rref_modp(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - col[mask, None] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_exact(mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = np.array(mat, dtype=object)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(field: Field, mat) -> int:
    """Rank of mat over the given field."""
    a = np.asarray(mat)
    if a.size == 0:
        return 0
    if isinstance(field, PrimeField):
        return _rank_modp(a, field.p)
    return len(_rref_exact(field.mod(a))[1])


def rref(field: Field, mat) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = np.asarray(mat)
    if isinstance(field, PrimeField):
        return _rref_modp(a, field.p)
    return _rref_exact(field.mod(a))


def kernel_basis(field: Field, mat) -> np.ndarray:
    """Basis of the right kernel, as columns of the returned matrix.

    Each basis vector has a leading 1 in a distinct free column and the
    collection is in reduced echelon form, so the output is canonical
    for a given input matrix.
    """
    a = np.asarray(mat)
    rows, cols = a.shape
    if a.size == 0:
        return field.eye(cols)
    red, pivots = rref(field, a)
    free = [c for c in range(cols) if c not in pivots]
    out = field.zeros((cols, len(free)))
    for j, fc in enumerate(free):
        out[fc, j] = 1
        for i, pc in enumerate(pivots):
            out[pc, j] = field.neg(red[i, fc]) if isinstance(field, PrimeField) else -red[i, fc]
    if isinstance(field, PrimeField):
        out %= field.p
    return out


def det(field: Field, mat):
    """Determinant of a square matrix over the field."""
    a = np.asarray(mat)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("det needs a square matrix")
    if isinstance(field, PrimeField):
        p = field.p
        a = np.array(a, dtype=np.int64) % p
        d = 1
        for c in range(n):
            nz = np.nonzero(a[c:, c])[0]
            if nz.size == 0:
                return 0
            piv = c + nz[0]
            if piv != c:
                a[[c, piv]] = a[[piv, c]]
                d = p - d
            d = d * int(a[c, c]) % p
            inv = pow(int(a[c, c]), -1, p)
            factors = a[c + 1:, c] * inv % p
            mask = factors != 0
            if mask.any():
                a[c + 1:, c:][mask] = (
                    a[c + 1:, c:][mask] - factors[mask, None] * a[c, c:]
                ) % p
        return d
    from fractions import Fraction

    a = np.array(field.mod(a), dtype=object)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i, c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            d = -d
        d *= a[c, c]
        for i in range(c + 1, n):
            if a[i, c] != 0:
                a[i] = a[i] - (a[i, c] / a[c, c]) * a[c]
    return d


def inverse(field: Field, mat) -> np.ndarray:
    """Inverse of a square matrix; raises RankDeficient when singular."""
    a = np.asarray(mat)
    n = a.shape[0]
    aug = np.concatenate([field.mod(a), field.eye(n)], axis=1)
    red, pivots = rref(field, aug)
    if pivots[: n] != list(range(n)) or len(pivots) < n:
        raise RankDeficient("matrix is singular")
    return red[:, n:]
