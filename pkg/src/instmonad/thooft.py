"""The 't Hooft family: A = a (D | D') with diagonal matrices of linear forms.

A datum is a scalar matrix a (k rows, n+k columns) together with n+k
pairs (l_j, l_j') of linear forms; D = diag(l_j), D' = diag(l_j').
These matrices are automatically symplectic (D D' = D' D).  The module
also carries the deterministic proof witnesses, the deformation-space
dimension count, and the wreath-product group action with its
linearization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import FieldTooSmall, RetryLimit
from .field import Field, PrimeField
from .linalg import det, inverse, rank
from .monad import LinearFormMatrix
from .polyspace import dim_forms, monomial_index


@dataclass(frozen=True, eq=False)
class ThooftDatum:
    """Scalar matrix a plus the linear-form pairs (l_j, l_j')."""

    n: int
    k: int
    a: np.ndarray       # (k, n+k)
    l: np.ndarray       # (n+k, 2n+2) coefficient rows
    lprime: np.ndarray  # (n+k, 2n+2)

    def __post_init__(self) -> None:
        m, nv = self.n + self.k, 2 * self.n + 2
        if self.a.shape != (self.k, m):
            raise ValueError("a has wrong shape")
        if self.l.shape != (m, nv) or self.lprime.shape != (m, nv):
            raise ValueError("linear-form blocks have wrong shape")


@dataclass(frozen=True, eq=False)
class ThooftGroupElement:
    """(alpha, (beta_j, gamma_j)_j, sigma) with beta_j in SL_2."""

    alpha: np.ndarray            # invertible k x k
    betas: np.ndarray            # (n+k, 2, 2), each det 1
    gammas: np.ndarray           # (n+k,), nonzero
    sigma: np.ndarray            # permutation of 0..n+k-1


def build_thooft(field: Field, datum: ThooftDatum) -> LinearFormMatrix:
    """A = a (D | D'): entry (i, j) = a_ij l_j, entry (i, n+k+j) = a_ij l_j'."""
    n, k = datum.n, datum.k
    m, nv = n + k, 2 * n + 2
    a = field.mod(datum.a)
    l = field.mod(datum.l)
    lp = field.mod(datum.lprime)
    T = field.zeros((nv, k, 2 * m))
    for j in range(m):
        for v in range(nv):
            T[v, :, j] = field.mod(a[:, j] * l[j, v])
            T[v, :, m + j] = field.mod(a[:, j] * lp[j, v])
    return LinearFormMatrix(n=n, k=k, tensor=T)


def canonical_syzygies(field: Field, datum: ThooftDatum) -> np.ndarray:
    """Columns of J (D|D')^t as degree-1 syzygy vectors of A.

    Vector j has l_j' in component j and -l_j in component n+k+j;
    returned flattened in (component, variable) layout, one column per
    j, matching the degree-1 syzygy-matrix column convention.
    """
    n, k = datum.n, datum.k
    m, nv = n + k, 2 * n + 2
    N = 2 * m
    out = field.zeros((N * nv, m))
    for j in range(m):
        out[j * nv:(j + 1) * nv, j] = field.mod(datum.lprime[j])
        out[(m + j) * nv:(m + j + 1) * nv, j] = field.neg(datum.l[j])
    return out


def proof_witness_general(field: Field, n: int, k: int) -> ThooftDatum:
    """Deterministic datum passing fullrank_certificate.

    a is Vandermonde over distinct nonzero nodes (all k x k minors are
    then products of differences, hence nonzero); l_j and l_j' are
    moment-curve evaluations in V = span(x) and W = span(y), so any
    n+1 of them are independent.
    """
    m, nv = n + k, 2 * n + 2
    char = field.p if isinstance(field, PrimeField) else 0
    if char and char <= 2 * m + 1:
        raise FieldTooSmall("need 2(n+k)+1 distinct nonzero nodes")
    if char and char <= 3 * m + 1:
        raise FieldTooSmall("need 3(n+k)+1 distinct nonzero nodes")
    # Node families must be distinct within each family (Vandermonde
    # arguments) and arithmetically unrelated across families: aligned
    # progressions for l and l' create extra degree-1 syzygies.  A
    # fixed-seed draw keeps the witness deterministic yet generic.
    if char:
        node_rng = np.random.default_rng(0x1D5EED)
        nodes = []
        seen = set()
        while len(nodes) < 3 * m:
            v = int(node_rng.integers(1, char))
            if v not in seen:
                seen.add(v)
                nodes.append(v)
    else:
        nodes = ([j + 1 for j in range(m)]
                 + [(m + j + 2) ** 2 for j in range(m)]
                 + [(2 * m + j + 3) ** 3 for j in range(m)])
    a = field.zeros((k, m))
    for j in range(m):
        for i in range(k):
            a[i, j] = pow(nodes[j], i, char) if char else nodes[j] ** i
    l = field.zeros((m, nv))
    lp = field.zeros((m, nv))
    for j in range(m):
        node_l, node_lp = nodes[m + j], nodes[2 * m + j]
        for s in range(n + 1):
            l[j, s] = pow(node_l, s, char) if char else node_l ** s
            lp[j, n + 1 + s] = pow(node_lp, s, char) if char else node_lp ** s
    return ThooftDatum(n=n, k=k, a=field.mod(a), l=field.mod(l), lprime=field.mod(lp))


def proof_witness_syz(field: Field, n: int, k: int) -> ThooftDatum:
    """Witness with the exact repetition pattern of the syzygy count proof.

    0-based: l_j = x_j for j < n, x_{n-1} for j = n, x_n for j > n;
    l_j' = y_j for j <= n, y_{n-1} for j = n+1, y_n for j >= n+2.
    Requires k >= 3.
    """
    if k < 3:
        raise ValueError("syzygy witness needs k >= 3")
    datum = proof_witness_general(field, n, k)
    m, nv = n + k, 2 * n + 2
    l = field.zeros((m, nv))
    lp = field.zeros((m, nv))
    for j in range(m):
        l[j, min(j, n) if j != n else n - 1] = 1
        tgt = j if j <= n else (n - 1 if j == n + 1 else n)
        lp[j, n + 1 + tgt] = 1
    return ThooftDatum(n=n, k=k, a=datum.a, l=l, lprime=lp)


def mixed_syzygy_dim(field: Field, datum: ThooftDatum) -> int:
    """Solution count of the mixed part of the degree-1 syzygy system.

    For l_j in V = span(x), l_j' in W = span(y), degree-1 syzygies
    split into three blocks; the mixed block a(Dc + D'b') = 0 couples
    b' in V^{n+k} with c in W^{n+k} and is the part the repetition
    witness controls: its solution space has dimension exactly n+k.
    """
    n, k = datum.n, datum.k
    m = n + k
    a = field.mod(datum.a)
    Dv = field.mod(datum.l)[:, : n + 1]          # D_i = diag(Dv[:, i])
    Dw = field.mod(datum.lprime)[:, n + 1:]      # D'_i = diag(Dw[:, i])
    n_unknowns = 2 * m * (n + 1)
    M = field.zeros((k * (n + 1) * (n + 1), n_unknowns))
    for i1 in range(n + 1):
        for i2 in range(n + 1):
            base = (i1 * (n + 1) + i2) * k
            for j in range(m):
                # c_{i2, j} via D_{i1}; b'_{i1, j} via D'_{i2}
                M[base: base + k, (n + 1) * m + i2 * m + j] += field.mod(a[:, j] * Dv[j, i1])
                M[base: base + k, i1 * m + j] += field.mod(a[:, j] * Dw[j, i2])
    return n_unknowns - rank(field, field.mod(M))


def fullrank_certificate(field: Field, datum: ThooftDatum) -> bool:
    """Deterministic sufficient condition for rank k at every point.

    Requires every k x k minor of a nonzero; the l_j spanning an
    (n+1)-dim V with every n+1 of them independent; same for the l_j'
    in a W with V + W = S_1.
    """
    n, k = datum.n, datum.k
    m = n + k
    for cols in combinations(range(m), k):
        if det(field, field.mod(datum.a)[:, cols]) == 0:
            return False
    for block in (datum.l, datum.lprime):
        B = field.mod(block)
        if rank(field, B) != n + 1:
            return False
        for rows in combinations(range(m), n + 1):
            if rank(field, B[list(rows)]) != n + 1:
                return False
    stacked = np.concatenate([field.mod(datum.l), field.mod(datum.lprime)])
    return rank(field, stacked) == 2 * n + 2


def random_datum(field: Field, rng: np.random.Generator, n: int, k: int,
                 retries: int = 32) -> ThooftDatum:
    """Random datum with l_j, l_j' in a random complementary V/W split.

    Re-draws until fullrank_certificate passes (RetryLimit after
    `retries` draws).
    """
    m, nv = n + k, 2 * n + 2
    for _ in range(retries):
        g = field.random(rng, (nv, nv))
        if rank(field, g) < nv:
            continue
        V, W = g[:, :n + 1], g[:, n + 1:]
        a = field.random(rng, (k, m))
        l = field.mod(field.random(rng, (m, n + 1)) @ V.T)
        lp = field.mod(field.random(rng, (m, n + 1)) @ W.T)
        datum = ThooftDatum(n=n, k=k, a=a, l=l, lprime=lp)
        if fullrank_certificate(field, datum):
            return datum
    raise RetryLimit("no full-rank datum after retries")


def random_general_datum(field: Field, rng: np.random.Generator,
                         n: int, k: int) -> ThooftDatum:
    """Uniformly random datum with unconstrained linear forms.

    Unlike random_datum this does not place l_j, l_j' in complementary
    (n+1)-dim subspaces, so no full-rank certificate is available and
    rank evidence stays sampled; the deformation-space count needs
    this genuinely general position.
    """
    m, nv = n + k, 2 * n + 2
    return ThooftDatum(n=n, k=k, a=field.random(rng, (k, m)),
                       l=field.random(rng, (m, nv)),
                       lprime=field.random(rng, (m, nv)))


def deformation_space_dim(field: Field, A: LinearFormMatrix) -> int:
    """dim { X matrix of linear forms : A J X^t symmetric }.

    Builds the linear system on the k(2n+2k)(2n+2) coefficients of X
    imposed by symmetry of the quadric-valued matrix A J X^t and
    returns its kernel dimension.
    """
    from .monad import apply_j_right

    T = A.tensor
    nv, k, N = T.shape
    TJ = np.stack([apply_j_right(field, T[m]) for m in range(nv)])
    idx2 = monomial_index(nv, 2)
    D2 = dim_forms(nv, 2)
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    n_unknowns = k * N * nv
    M = field.zeros((len(pairs) * D2, n_unknowns))
    for pidx, (i, j) in enumerate(pairs):
        base = pidx * D2
        for mp in range(nv):
            for mm in range(nv):
                key = [0] * nv
                key[mp] += 1
                key[mm] += 1
                row = base + idx2[tuple(key)]
                # (A J X^t)_{ij} couples row j of X with (A_i J)
                cols_j = (j * N + np.arange(N)) * nv + mm
                M[row, cols_j] += TJ[mp, i]
                cols_i = (i * N + np.arange(N)) * nv + mm
                M[row, cols_i] -= TJ[mp, j]
    return n_unknowns - rank(field, field.mod(M))


def torus_stable(field: Field, datum: ThooftDatum) -> bool:
    """No zero column of a and no pair (l_j, l_j') both zero."""
    for j in range(datum.n + datum.k):
        if field.is_zero(field.mod(datum.a)[:, j]):
            return False
        if field.is_zero(datum.l[j]) and field.is_zero(datum.lprime[j]):
            return False
    return True


def apply_group(field: Field, g: ThooftGroupElement, datum: ThooftDatum) -> ThooftDatum:
    """(g a)_j = alpha^{-1} (gamma_j a_{sigma(j)});
    (g L)_j = gamma_j^{-1} beta_j L_{sigma(j)} with L_j = (l_j ; l_j')."""
    n, k = datum.n, datum.k
    m = n + k
    alpha_inv = inverse(field, g.alpha)
    a_new = field.zeros((k, m))
    l_new = field.zeros(datum.l.shape)
    lp_new = field.zeros(datum.lprime.shape)
    for j in range(m):
        s = int(g.sigma[j])
        a_new[:, j] = field.matmul(alpha_inv, field.mod(datum.a[:, s] * g.gammas[j]))
        L = np.stack([field.mod(datum.l[s]), field.mod(datum.lprime[s])])
        Lt = field.matmul(field.mod(g.betas[j]), L)
        ginv = field.inv(g.gammas[j])
        l_new[j] = field.mod(Lt[0] * ginv)
        lp_new[j] = field.mod(Lt[1] * ginv)
    return ThooftDatum(n=n, k=k, a=field.mod(a_new), l=l_new, lprime=lp_new)


def identity_group_element(field: Field, n: int, k: int) -> ThooftGroupElement:
    m = n + k
    betas = np.stack([field.eye(2) for _ in range(m)])
    return ThooftGroupElement(alpha=field.eye(k), betas=betas,
                              gammas=field.mod(np.ones(m, dtype=np.int64)),
                              sigma=np.arange(m))


def random_group_element(field: Field, rng: np.random.Generator,
                         n: int, k: int) -> ThooftGroupElement:
    """Random (alpha, beta_j, gamma_j, sigma) with beta_j normalized to SL_2."""
    m = n + k
    while True:
        alpha = field.random(rng, (k, k))
        if det(field, alpha) != 0:
            break
    betas = []
    for _ in range(m):
        while True:
            b = field.random(rng, (2, 2))
            d = det(field, b)
            if d != 0:
                # scale the first row by 1/det to land in SL_2
                binv = field.inv(d)
                b = np.stack([field.mod(b[0] * binv), field.mod(b[1])])
                betas.append(b)
                break
    gammas = field.random_nonzero(rng, m)
    sigma = rng.permutation(m)
    return ThooftGroupElement(alpha=alpha, betas=np.stack(betas),
                              gammas=gammas, sigma=sigma)


def orbit_rank(field: Field, datum: ThooftDatum) -> int:
    """Rank of the linearized action at the datum.

    Parameters: delta-alpha in gl_k, and per index j a traceless
    delta-beta_j plus a scalar delta-gamma_j.  Images:
    delta a_j = -delta-alpha a_j + delta-gamma_j a_j;
    delta L_j = delta-beta_j L_j - delta-gamma_j L_j.
    """
    n, k = datum.n, datum.k
    m, nv = n + k, 2 * n + 2
    a = field.mod(datum.a)
    L = [np.stack([field.mod(datum.l[j]), field.mod(datum.lprime[j])]) for j in range(m)]
    target_dim = k * m + m * 2 * nv
    cols = []

    def image(delta_alpha=None, j=None, delta_beta=None, delta_gamma=None):
        col = field.zeros(target_dim)
        da = field.zeros((k, m))
        dL = field.zeros((m, 2, nv))
        if delta_alpha is not None:
            da = field.mod(-(delta_alpha @ a))
        if delta_gamma is not None:
            da[:, j] = field.mod(da[:, j] + field.mod(a[:, j] * delta_gamma))
            dL[j] = field.mod(dL[j] - field.mod(L[j] * delta_gamma))
        if delta_beta is not None:
            dL[j] = field.mod(dL[j] + field.matmul(delta_beta, L[j]))
        col[:k * m] = da.reshape(-1)
        col[k * m:] = dL.reshape(-1)
        return col

    for u in range(k):
        for v in range(k):
            E = field.zeros((k, k))
            E[u, v] = 1
            cols.append(image(delta_alpha=E))
    sl2 = [np.array([[1, 0], [0, -1]]), np.array([[0, 1], [0, 0]]),
           np.array([[0, 0], [1, 0]])]
    for j in range(m):
        for b in sl2:
            cols.append(image(j=j, delta_beta=field.mod(b)))
        cols.append(image(j=j, delta_gamma=1))
    return rank(field, np.stack(cols, axis=1))


def parameter_dim(n: int, k: int) -> int:
    """Dimension of the 't Hooft parameter space: a plus all (l_j, l_j')."""
    return k * (n + k) + (n + k) * 2 * (2 * n + 2)


def group_dim(n: int, k: int) -> int:
    """dim of (SL_2 x GM) wreath S_{n+k} times GL_k."""
    return 4 * (n + k) + k * k


def to_json_dict(datum: ThooftDatum) -> dict:
    return {
        "n": datum.n,
        "k": datum.k,
        "a": [[int(v) for v in row] for row in datum.a],
        "l": [[int(v) for v in row] for row in datum.l],
        "lprime": [[int(v) for v in row] for row in datum.lprime],
    }


def from_json_dict(data: dict) -> ThooftDatum:
    return ThooftDatum(
        n=int(data["n"]), k=int(data["k"]),
        a=np.array(data["a"], dtype=np.int64),
        l=np.array(data["l"], dtype=np.int64),
        lprime=np.array(data["lprime"], dtype=np.int64),
    )


def dumps(datum: ThooftDatum) -> str:
    return json.dumps(to_json_dict(datum), sort_keys=True)


def loads(text: str) -> ThooftDatum:
    return from_json_dict(json.loads(text))
