"""The Rao-Skiti family: A = (F | H) with banded F and persymmetric H.

A datum is a tuple of independent linear forms f_0..f_n plus a
generator sequence h_0..h_{n+2k-2} of linear forms.  F is the banded
k x (n+k) matrix with entry (i, j) = f_{j-i} (0 <= j-i <= n) and H is
the persymmetric k x (n+k) matrix with entry (i, j) = h_{i+j}.  Such
matrices are symplectic for every generator sequence: (F H^t)_{ab} =
sum_m f_m h_{a+b+m} is symmetric in (a, b).

The module also carries the epsilon-family with its explicit syzygy
basis, the distinguished maximally unstable subspace L = {f = 0}, the
n = 1 exact full-rank certificate, and the GL_2-semidirect group
action with its linearization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .binaryforms import mult_map, sym_power, sym_power_derivative
from .errors import DependentForms, NotALine, RankDropOnSubspace, RetryLimit
from .field import Field, PrimeField
from .linalg import det, inverse, rank
from .monad import LinearFormMatrix, h0_restricted
from .polyspace import HomogeneousForm, SubspaceParam, solve_subspace


@dataclass(frozen=True, eq=False)
class RSDatum:
    """Linear forms f_0..f_n and generators h_0..h_{n+2k-2}."""

    n: int
    k: int
    f: np.ndarray  # (n+1, 2n+2) coefficient rows
    h: np.ndarray  # (n+2k-1, 2n+2)

    def __post_init__(self) -> None:
        nv = 2 * self.n + 2
        if self.f.shape != (self.n + 1, nv):
            raise ValueError("f block has wrong shape")
        if self.h.shape != (self.n + 2 * self.k - 1, nv):
            raise ValueError("h block has wrong shape")


@dataclass(frozen=True, eq=False)
class RSGroupElement:
    """(g, t, u) in (GL_2 x field*) acting with the unipotent shift u."""

    g: np.ndarray  # invertible 2x2
    t: int         # nonzero scalar
    u: np.ndarray  # functional of length 2n+2k-1


def persymmetric_from_generators(field: Field, h: np.ndarray, k: int) -> np.ndarray:
    """k x (n+k) matrix of forms with entry (i, j) = h_{i+j} (0-based)."""
    gens = field.mod(h)
    width = gens.shape[0] - k + 1
    out = field.zeros((k, width) + gens.shape[1:])
    for i in range(k):
        out[i] = gens[i: i + width]
    return out


def banded_from_forms(field: Field, f: np.ndarray, k: int) -> np.ndarray:
    """k x (n+k) banded matrix with entry (i, j) = f_{j-i}."""
    forms = field.mod(f)
    n = forms.shape[0] - 1
    out = field.zeros((k, n + k) + forms.shape[1:])
    for i in range(k):
        out[i, i: i + n + 1] = forms
    return out


def build_rs(field: Field, datum: RSDatum) -> LinearFormMatrix:
    """A = (F | H); raises DependentForms when f_0..f_n are dependent."""
    n, k = datum.n, datum.k
    if rank(field, field.mod(datum.f)) < n + 1:
        raise DependentForms("f_0..f_n must be linearly independent")
    Fb = banded_from_forms(field, datum.f, k)      # (k, n+k, nv)
    Hb = persymmetric_from_generators(field, datum.h, k)
    blocks = np.concatenate([Fb, Hb], axis=1)      # (k, 2n+2k, nv)
    return LinearFormMatrix(n=n, k=k, tensor=np.ascontiguousarray(blocks.transpose(2, 0, 1)))


def composed_f_block(field: Field, datum: RSDatum) -> np.ndarray:
    """F block built by composing the multiplication-map matrix with f.

    The dual of S^{k-1}U (x) S^nU -> S^{n+k-1}U sends the j-th dual
    basis vector to the sum of (dual i) (x) (monomial j-i); applying f
    to the second slot yields entry (i, j) = f_{j-i}, the banded block.
    """
    n, k = datum.n, datum.k
    M = mult_map(k - 1, n)  # (n+k, k(n+1))
    f = field.mod(datum.f)
    out = field.zeros((k, n + k) + f.shape[1:])
    for i in range(k):
        for j in range(n + k):
            for s in range(n + 1):
                if M[j, i * (n + 1) + s]:
                    out[i, j] = field.mod(out[i, j] + f[s] * M[j, i * (n + 1) + s])
    return out


def composed_h_block(field: Field, datum: RSDatum) -> np.ndarray:
    """H block via the partial transpose of S^{k-1}U (x) S^{n+k-1}U -> S^{n+2k-2}U.

    The map S^{n+k-1}U -> (S^{k-1}U)* (x) S^{n+2k-2}U followed by h on
    the second factor gives entry (i, j) = h_{i+j}, the persymmetric
    block.
    """
    n, k = datum.n, datum.k
    M = mult_map(k - 1, n + k - 1)  # (n+2k-1, k(n+k))
    h = field.mod(datum.h)
    out = field.zeros((k, n + k) + h.shape[1:])
    for i in range(k):
        for j in range(n + k):
            for s in range(n + 2 * k - 1):
                if M[s, i * (n + k) + j]:
                    out[i, j] = field.mod(out[i, j] + h[s] * M[s, i * (n + k) + j])
    return out


def random_rs_datum(field: Field, rng: np.random.Generator, n: int, k: int,
                    retries: int = 32) -> RSDatum:
    """Random datum with independent f; re-draws on dependence."""
    nv = 2 * n + 2
    for _ in range(retries):
        f = field.random(rng, (n + 1, nv))
        if rank(field, f) == n + 1:
            h = field.random(rng, (n + 2 * k - 1, nv))
            return RSDatum(n=n, k=k, f=f, h=h)
    raise RetryLimit("no independent f block after retries")


def epsilon_datum(field: Field, n: int, k: int, eps: int) -> RSDatum:
    """The epsilon-family datum: f_s = x_s and the sparse h pattern.

    Generators (applied in this order, later assignments win for the
    degenerate overlaps at k < 3): h_0 = eps*y_1, h_{k-1+m} = y_m for
    0 <= m <= n, h_{n+2k-2} = eps*y_1, all others zero.
    """
    nv = 2 * n + 2
    f = field.zeros((n + 1, nv))
    for s in range(n + 1):
        f[s, s] = 1
    h = field.zeros((n + 2 * k - 1, nv))
    e = field.mod([eps])[0]
    h[0, n + 2] = e
    for m in range(n + 1):
        h[k - 1 + m] = 0
        h[k - 1 + m, n + 1 + m] = 1
    h[n + 2 * k - 2] = 0
    h[n + 2 * k - 2, n + 2] = e
    return RSDatum(n=n, k=k, f=f, h=h)


def expected_syzygy_basis(field: Field, n: int, k: int, eps: int) -> np.ndarray:
    """The printed k independent degree-1 syzygies of the epsilon matrix.

    Columns are flattened in (component, variable) layout.  With y_s
    the variable of index n+1+s and x_s of index s:
    v_1 = (-eps*y_1, 0^{k-2}, -y_0..-y_n, x_0..x_n, 0^{k-1}),
    v_i = (0^{k-i}, -y_0..-y_n, 0^{2i-2}, x_0..x_n, 0^{k-i}), 1 < i < k,
    v_k = (-y_0..-y_n, 0^{k-2}, -eps*y_1, 0^{k-1}, x_0..x_n).
    """
    nv = 2 * n + 2
    N = 2 * n + 2 * k
    e = field.mod([eps])[0]
    out = field.zeros((N * nv, k))

    def put(col: int, comp: int, var: int, val) -> None:
        out[comp * nv + var, col] = field.mod([out[comp * nv + var, col] + val])[0]

    neg_one = field.mod([-1])[0]

    for idx in range(k):
        i = idx + 1  # 1-based vector label
        if i == 1:
            put(idx, 0, n + 2, field.mod([-e])[0])
            for s in range(n + 1):
                put(idx, k - 1 + s, n + 1 + s, neg_one)
                put(idx, k + n + s, s, 1)
        elif i < k:
            for s in range(n + 1):
                put(idx, k - i + s, n + 1 + s, neg_one)
                put(idx, k - i + (n + 1) + (2 * i - 2) + s, s, 1)
        else:
            for s in range(n + 1):
                put(idx, s, n + 1 + s, neg_one)
                put(idx, n + 1 + k - 2 + 1 + k - 1 + s, s, 1)
            put(idx, n + 1 + k - 2, n + 2, field.mod([-e])[0])
    return out


def distinguished_subspace(field: Field, datum: RSDatum) -> SubspaceParam:
    """L = {f_0 = ... = f_n = 0}, of projective dimension n."""
    nv = 2 * datum.n + 2
    forms = [HomogeneousForm(nv, 1, field.mod(row)) for row in datum.f]
    try:
        return solve_subspace(field, forms)
    except Exception as exc:  # RankDeficient from solve_subspace
        raise DependentForms(str(exc)) from exc


@dataclass
class InstabilityReport:
    """Outcome of the maximal-instability sampling check."""

    n: int
    k: int
    distinguished_value: int
    expected: int
    trials: int
    n_subspace_violations: list = dc_field(default_factory=list)
    bound_violations: list = dc_field(default_factory=list)
    rank_drop_events: int = 0

    @property
    def passed(self) -> bool:
        return (self.distinguished_value == self.expected
                and not self.n_subspace_violations
                and not self.bound_violations)


def max_instability_check(field: Field, datum: RSDatum, rng: np.random.Generator,
                          trials: int = 50) -> InstabilityReport:
    """Verify the distinguished subspace is the instability maximizer.

    h^0(E|_L) must equal n+k at L = {f = 0}; `trials` random n-dim
    subspaces distinct from L must all give < n+k; `trials` random
    r-dim subspaces must respect the bound h^0 <= 2n+k-r.  Subspaces
    where A drops rank identically are recorded, not fatal.
    """
    from .polyspace import random_subspace, same_subspace

    n, k = datum.n, datum.k
    A = build_rs(field, datum)
    L = distinguished_subspace(field, datum)
    report = InstabilityReport(n=n, k=k, expected=n + k, trials=trials,
                               distinguished_value=h0_restricted(field, A, L, rng))
    done = 0
    while done < trials:
        Lp = random_subspace(field, rng, 2 * n + 2, n + 1)
        if same_subspace(field, L, Lp):
            continue
        done += 1
        try:
            val = h0_restricted(field, A, Lp, rng)
        except RankDropOnSubspace:
            report.rank_drop_events += 1
            continue
        if val >= n + k:
            report.n_subspace_violations.append(
                {"value": int(val), "subspace": Lp.matrix.tolist()})
    done = 0
    while done < trials:
        r = int(rng.integers(1, max(n, 1) + 1))
        Lp = random_subspace(field, rng, 2 * n + 2, r + 1)
        done += 1
        try:
            val = h0_restricted(field, A, Lp, rng)
        except RankDropOnSubspace:
            report.rank_drop_events += 1
            continue
        if val > 2 * n + k - r:
            report.bound_violations.append(
                {"value": int(val), "r": r, "subspace": Lp.matrix.tolist()})
    return report


def _binary_det(field: Field, mat: list[list[np.ndarray]]):
    """Determinant of a square matrix of binary forms, by Laplace expansion."""
    from .binaryforms import binary_multiply

    size = len(mat)
    if size == 1:
        return mat[0][0]
    total = None
    for i in range(size):
        minor = [[mat[r][c] for c in range(1, size)] for r in range(size) if r != i]
        term = binary_multiply(field, mat[i][0], _binary_det(field, minor))
        if i % 2 == 1:
            term = field.neg(term)
        total = term if total is None else field.mod(total + term)
    return total


def _poly_gcd_modp(field: PrimeField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Euclidean gcd of univariate polynomials (low-to-high coefficients)."""

    def trim(v):
        v = np.asarray(v, dtype=np.int64) % field.p
        nz = np.nonzero(v)[0]
        return v[: nz[-1] + 1] if nz.size else v[:0]

    a, b = trim(a), trim(b)
    while b.size:
        # reduce a mod b
        while a.size >= b.size and a.size:
            coef = a[-1] * field.inv(b[-1]) % field.p
            shift = a.size - b.size
            a = a.copy()
            a[shift:] = (a[shift:] - coef * b) % field.p
            a = trim(a)
        a, b = b, a
    return a


def line_minor_certificate_n1(field: PrimeField, datum: RSDatum) -> bool:
    """Exact rank certificate for n = 1: H's maximal minors coprime on L.

    Restricts H to the distinguished line, expands all k x k minors as
    degree-k binary forms, and checks that they share no zero on the
    line: gcd of the dehomogenizations is constant and the point at
    infinity is not a common root.
    """
    from .monad import restrict_tensor

    if datum.n != 1:
        raise NotALine("certificate defined only for n = 1")
    n, k = datum.n, datum.k
    L = distinguished_subspace(field, datum)
    Hb = persymmetric_from_generators(field, datum.h, k)  # (k, n+k, nv)
    TH = np.ascontiguousarray(Hb.transpose(2, 0, 1))
    THL = restrict_tensor(field, TH, L)  # (2, k, n+k)
    cols = n + k
    forms = [[np.array([THL[0, i, j], THL[1, i, j]], dtype=np.int64)
              for j in range(cols)] for i in range(k)]
    minors = []
    for drop in range(cols):
        sub = [[forms[i][j] for j in range(cols) if j != drop] for i in range(k)]
        minors.append(_binary_det(field, sub))
    nonzero = [m for m in minors if not field.is_zero(m)]
    if not nonzero:
        return False
    # common root at (0:1) <=> every nonzero minor has zero top coefficient
    if all(int(m[-1]) % field.p == 0 for m in nonzero):
        return False
    g = nonzero[0]
    for m in nonzero[1:]:
        g = _poly_gcd_modp(field, g, m)
        if g.size == 1:
            return True
    return g.size <= 1


def apply_group(field: Field, g: RSGroupElement, datum: RSDatum) -> RSDatum:
    """f' = t (S^n g)^T f;  h' = t (S^{n+2k-2} g^{-1})^T (h - corr(u)).

    corr(u) is the shift correction (u (x) f) pulled back along the
    multiplication map: row m picks up sum_i u_{i+m} f_i.
    """
    n, k = datum.n, datum.k
    t = field.mod([g.t])[0]
    Sf = sym_power(field, g.g, n)
    Mf = field.mod(datum.f)
    new_f = field.mod(field.matmul(Sf.T, Mf) * t)
    ginv = inverse(field, field.mod(g.g))
    Sh = sym_power(field, ginv, n + 2 * k - 2)
    corr = field.zeros(datum.h.shape)
    u = field.mod(g.u)
    for m in range(n + 2 * k - 1):
        for i in range(n + 1):
            if i + m < len(u):
                corr[m] = field.mod(corr[m] + field.mod(Mf[i] * u[i + m]))
    new_h = field.mod(field.matmul(Sh.T, field.mod(field.mod(datum.h) - corr)) * t)
    return RSDatum(n=n, k=k, f=new_f, h=new_h)


def identity_group_element(field: Field, n: int, k: int) -> RSGroupElement:
    return RSGroupElement(g=field.eye(2), t=1,
                          u=field.zeros(2 * n + 2 * k - 1))


def kernel_group_element(field: PrimeField, n: int, k: int, rho: int) -> RSGroupElement:
    """(rho id, rho^{-n}, 0): acts trivially when rho^{n+k-1} = 1."""
    g = field.mod(np.array([[rho, 0], [0, rho]]))
    t = pow(field.inv(rho), n, field.p)
    return RSGroupElement(g=g, t=t, u=field.zeros(2 * n + 2 * k - 1))


def random_group_element(field: Field, rng: np.random.Generator,
                         n: int, k: int) -> RSGroupElement:
    while True:
        g = field.random(rng, (2, 2))
        if det(field, g) != 0:
            break
    t = int(field.random_nonzero(rng, 1)[0])
    u = field.random(rng, 2 * n + 2 * k - 1)
    return RSGroupElement(g=g, t=t, u=u)


def orbit_rank(field: Field, datum: RSDatum) -> int:
    """Rank of the linearized action at the datum.

    Parameters: delta-g in gl_2, delta-t, delta-u.  Images:
    delta f = delta-t f + D_n(delta-g)^T f;
    delta h = delta-t h - corr(delta-u) - D_{n+2k-2}(delta-g)^T h.
    """
    n, k = datum.n, datum.k
    Mf = field.mod(datum.f)
    Mh = field.mod(datum.h)
    fdim = Mf.size
    hdim = Mh.size
    cols = []

    def pack(df, dh):
        col = field.zeros(fdim + hdim)
        col[:fdim] = df.reshape(-1)
        col[fdim:] = dh.reshape(-1)
        return col

    # delta-t
    cols.append(pack(Mf, Mh))
    # delta-u basis
    for s in range(2 * n + 2 * k - 1):
        dh = field.zeros(Mh.shape)
        for m in range(n + 2 * k - 1):
            i = s - m
            if 0 <= i <= n:
                dh[m] = field.mod(dh[m] - Mf[i])
        cols.append(pack(field.zeros(Mf.shape), dh))
    # delta-g basis of gl_2
    for u in range(2):
        for v in range(2):
            xi = field.zeros((2, 2))
            xi[u, v] = 1
            Dn = sym_power_derivative(field, xi, n)
            Dbig = sym_power_derivative(field, xi, n + 2 * k - 2)
            df = field.matmul(Dn.T, Mf)
            dh = field.neg(field.matmul(Dbig.T, Mh))
            cols.append(pack(df, dh))
    return rank(field, np.stack(cols, axis=1))


def rs_space_dim(n: int, k: int) -> int:
    """Dimension of the RS parameter space (f and h coefficient rows)."""
    return (2 * n + 2 * k) * (2 * n + 2)


def group_dim(n: int, k: int) -> int:
    return 2 * n + 2 * k + 4


def to_json_dict(datum: RSDatum) -> dict:
    return {
        "n": datum.n,
        "k": datum.k,
        "f": [[int(v) for v in row] for row in datum.f],
        "h": [[int(v) for v in row] for row in datum.h],
    }


def from_json_dict(data: dict) -> RSDatum:
    return RSDatum(
        n=int(data["n"]), k=int(data["k"]),
        f=np.array(data["f"], dtype=np.int64),
        h=np.array(data["h"], dtype=np.int64),
    )


def dumps(datum: RSDatum) -> str:
    return json.dumps(to_json_dict(datum), sort_keys=True)


def loads(text: str) -> RSDatum:
    return from_json_dict(json.loads(text))
