"""Monads O(-1)^k -> O^{2n+2k} -> O(1)^k on P^{2n+1} with symplectic structure.

The right-hand map is a k x (2n+2k) matrix A of linear forms, stored as
an integer tensor T of shape (2n+2, k, 2n+2k) with A = sum_m T[m] x_m.
Validity requires A J A^t = 0 for the standard symplectic form J of
size 2n+2k, plus full rank k at every point.  Cohomology of the middle
bundle E is read off from syzygy spaces

    Syz_d(A) = { v in (S_d)^{2n+2k} : A v = 0 },
    h^0(E(d)) = dim Syz_d(A) - k * dim S_{d-1}.

The splitting type of E on a line is recovered from the syzygies of the
restricted matrix: twist counts pin the multiset of splitting degrees
up to the {0,0} vs {+1,-1} ambiguity, which is resolved by counting
degree-1 minimal generators of the restricted syzygy module (the
columns of J A^t modulo R_1 * Syz_0 inside Syz_1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateLine,
    InstmonadError,
    NegativeResult,
    RankDropOnSubspace,
)
from .field import Field, PrimeField
from .linalg import kernel_basis, rank
from .polyspace import SubspaceParam, dim_forms, var_mult_table


@dataclass(frozen=True, eq=False)
class LinearFormMatrix:
    """k x (2n+2k) matrix of linear forms on P^{2n+1}, as a tensor."""

    n: int
    k: int
    tensor: np.ndarray  # shape (2n+2, k, 2n+2k)

    def __post_init__(self) -> None:
        nv = 2 * self.n + 2
        N = 2 * self.n + 2 * self.k
        if self.tensor.shape != (nv, self.k, N):
            raise ValueError(f"tensor shape {self.tensor.shape} != {(nv, self.k, N)}")

    @property
    def nvars(self) -> int:
        return 2 * self.n + 2

    @property
    def width(self) -> int:
        return 2 * self.n + 2 * self.k


@dataclass(frozen=True)
class RankEvidence:
    """How the everywhere-full-rank condition was checked."""

    mode: str  # "sampled" or "certificate"
    trials: int
    failing_point: tuple[int, ...] | None = None

    @property
    def disproved(self) -> bool:
        return self.failing_point is not None


@dataclass(frozen=True, eq=False)
class MonadPresentation:
    """A candidate monad matrix with its verification evidence."""

    matrix: LinearFormMatrix
    symplectic: bool
    rank_evidence: RankEvidence


def symplectic_form(half: int) -> np.ndarray:
    """Standard symplectic matrix ((0, I), (-I, 0)) of size 2*half."""
    J = np.zeros((2 * half, 2 * half), dtype=np.int64)
    J[:half, half:] = np.eye(half, dtype=np.int64)
    J[half:, :half] = -np.eye(half, dtype=np.int64)
    return J


def apply_j_right(field: Field, mat) -> np.ndarray:
    """mat @ J without a matmul: (X J) = (-X_right | X_left)."""
    mat = field.mod(mat)
    half = mat.shape[-1] // 2
    return field.mod(np.concatenate([field.neg(mat[..., half:]), mat[..., :half]], axis=-1))


def apply_j_left(field: Field, mat) -> np.ndarray:
    """J @ mat: (J X) = (X_bottom ; -X_top)."""
    mat = field.mod(mat)
    half = mat.shape[0] // 2
    return field.mod(np.concatenate([mat[half:], field.neg(mat[:half])], axis=0))


def kronecker_coefficients(field: Field, A: LinearFormMatrix) -> np.ndarray:
    """K[m, l] = A_m J A_l^t, the coefficient matrices of A J A^t."""
    T = A.tensor
    nv = A.nvars
    K = np.empty((nv, nv, A.k, A.k), dtype=T.dtype if not isinstance(field, PrimeField) else np.int64)
    TJ = [apply_j_right(field, T[m]) for m in range(nv)]
    for m in range(nv):
        for l in range(nv):
            K[m, l] = field.matmul(TJ[m], T[l].T)
    return K


def symplectic_check(field: Field, A: LinearFormMatrix) -> bool:
    """Whether A J A^t vanishes identically.

    Equivalent to: K[m, m] = 0 and K[m, l] symmetric for m < l (the
    antisymmetric part of K[m, l] cancels against K[l, m]).
    """
    K = kronecker_coefficients(field, A)
    nv = A.nvars
    for m in range(nv):
        if not field.is_zero(K[m, m]):
            return False
        for l in range(m + 1, nv):
            if not field.is_zero(field.mod(K[m, l] - K[m, l].T)):
                return False
    return True


def syzygy_matrix(field: Field, tensor: np.ndarray, d: int) -> np.ndarray:
    """Matrix of v -> A v from (S_d)^N to (S_{d+1})^k.

    Rows are (component i, degree d+1 monomial); columns are
    (component j, degree d monomial), both flattened row-major.
    """
    nv, k, N = tensor.shape
    D0 = dim_forms(nv, d)
    D1 = dim_forms(nv, d + 1)
    M = field.zeros((k, D1, N, D0))
    vm = var_mult_table(nv, d)
    ar = np.arange(D0)
    for m in range(nv):
        # column (j, t) picks up T[m][:, j] at row monomial x_m * t
        M[:, vm[m], :, ar] += tensor[m]
    return field.mod(M.reshape(k * D1, N * D0))


def syzygy_dim(field: Field, tensor: np.ndarray, d: int) -> int:
    """Dimension of the space of degree-d syzygies of the columns of A."""
    nv, k, N = tensor.shape
    D0 = dim_forms(nv, d)
    return N * D0 - rank(field, syzygy_matrix(field, tensor, d))


def syzygy_kernel(field: Field, tensor: np.ndarray, d: int) -> np.ndarray:
    """Kernel basis of the degree-d syzygy matrix, columns = syzygies."""
    return kernel_basis(field, syzygy_matrix(field, tensor, d))


def h0_twist(field: Field, A: LinearFormMatrix, d: int) -> int:
    """h^0(E(d)) for the monad bundle, from the syzygy dimension."""
    val = syzygy_dim(field, A.tensor, d) - A.k * dim_forms(A.nvars, d - 1)
    if val < 0:
        raise NegativeResult(f"h^0(E({d})) computed as {val}; A is not a monad matrix")
    return val


def evaluate_tensor(field: Field, tensor: np.ndarray, point) -> np.ndarray:
    """Scalar matrix A(point), reduced term by term to stay exact."""
    pt = field.mod(point)
    out = field.zeros(tensor.shape[1:])
    for m in range(tensor.shape[0]):
        out = field.mod(out + field.mod(tensor[m] * pt[m]))
    return out


def rank_at_point(field: Field, A: LinearFormMatrix, point) -> int:
    return rank(field, evaluate_tensor(field, A.tensor, point))


def sample_rank_evidence(field: Field, A: LinearFormMatrix,
                         rng: np.random.Generator, trials: int = 20) -> RankEvidence:
    """Check rank k at random points; a single failure disproves the monad."""
    for _ in range(trials):
        pt = field.random(rng, A.nvars)
        if field.is_zero(pt):
            continue
        if rank(field, evaluate_tensor(field, A.tensor, pt)) < A.k:
            return RankEvidence(mode="sampled", trials=trials,
                                failing_point=tuple(int(v) for v in pt))
    return RankEvidence(mode="sampled", trials=trials)


def restrict_tensor(field: Field, tensor: np.ndarray, sub: SubspaceParam) -> np.ndarray:
    """Restrict a tensor of linear forms to a parameterized subspace."""
    P = field.mod(sub.matrix)
    nv, k, N = tensor.shape
    if P.shape[0] != nv:
        raise ValueError("ambient dimension mismatch")
    fib = P.shape[1]
    out = field.zeros((fib, k, N))
    for m in range(nv):
        for f in range(fib):
            out[f] = field.mod(out[f] + field.mod(tensor[m] * P[m, f]))
    return out


def h0_restricted(field: Field, A: LinearFormMatrix, sub: SubspaceParam,
                  rng: np.random.Generator, samples: int = 4) -> int:
    """h^0(E|_L) for a linear subspace L, via degree-0 syzygies of A|_L.

    Raises RankDropOnSubspace when A fails to have rank k at sampled
    points of L (the restriction is then not a bundle presentation).
    """
    TL = restrict_tensor(field, A.tensor, sub)
    fib = TL.shape[0]
    ok = False
    for _ in range(samples):
        pt = field.random(rng, fib)
        if field.is_zero(pt):
            continue
        if rank(field, evaluate_tensor(field, TL, pt)) == A.k:
            ok = True
            break
    if not ok:
        raise RankDropOnSubspace("A drops rank at sampled points of the subspace")
    return syzygy_dim(field, TL, 0)


def line_pairing(field: Field, A: LinearFormMatrix, P, Q) -> np.ndarray:
    """Pairing matrix A(P) J A(Q)^t of the line through P and Q.

    Its corank equals the number of nontrivial summands in the
    splitting of E on the line; a nonzero determinant certifies the
    trivial splitting.
    """
    P = field.mod(P)
    Q = field.mod(Q)
    if rank(field, np.stack([P, Q])) < 2:
        raise DegenerateLine("points are proportional")
    AP = evaluate_tensor(field, A.tensor, P)
    AQ = evaluate_tensor(field, A.tensor, Q)
    return field.matmul(apply_j_right(field, AP), AQ.T)


def _jump_total(field: Field, TL: np.ndarray, k: int) -> int:
    """h^0(E|_L(-1)) = sum of positive splitting degrees.

    Counts the columns of J A_L^t that are degree-1 minimal generators
    of the restricted syzygy module: classes in Syz_1 / (R_1 * Syz_0).
    """
    N = TL.shape[2]
    K0 = syzygy_kernel(field, TL, 0)  # (N, s0)
    vcols = []
    for a in range(K0.shape[1]):
        for t in (0, 1):
            v = field.zeros(2 * N)
            v[t::2] = K0[:, a]
            vcols.append(v)
    # w_j[(c, m)] = (J A_L^t)_{c j} coefficient of line monomial m
    Wm = [apply_j_left(field, field.mod(TL[m]).T) for m in (0, 1)]  # (N, k) each
    wvecs = []
    for j in range(TL.shape[1]):
        w = field.zeros(2 * N)
        w[0::2] = Wm[0][:, j]
        w[1::2] = Wm[1][:, j]
        wvecs.append(w)
    base = np.stack(vcols, axis=1) if vcols else field.zeros((2 * N, 0))
    full = np.concatenate([base, np.stack(wvecs, axis=1)], axis=1)
    rank_base = rank(field, base) if base.shape[1] else 0
    rank_full = rank(field, full)
    return k - (rank_full - rank_base)


def splitting_type_on_line(field: Field, A: LinearFormMatrix, P, Q,
                           rng: np.random.Generator | None = None) -> tuple[int, ...]:
    """Splitting degrees of E on the line through P and Q, descending.

    Derivation: with c_m = h^0(E|_L(m)) and d_m = c_m - c_{m-1},
    t_m = d_m - d_{m-1} counts summands of degree exactly -m for
    m >= 2; the counts of degrees -1/0/+1 follow from d_1 and the
    jump total h^0(E|_L(-1)).  A final consistency check recomputes
    every c_m from the candidate multiset.
    """
    P = field.mod(P)
    Q = field.mod(Q)
    if rank(field, np.stack([P, Q])) < 2:
        raise DegenerateLine("points are proportional")
    sub = SubspaceParam(matrix=np.stack([P, Q], axis=1))
    TL = restrict_tensor(field, A.tensor, sub)
    k, n = A.k, A.n
    if rng is None:
        rng = np.random.default_rng(0)
    ok = any(
        rank(field, evaluate_tensor(field, TL, pt)) == k
        for pt in (field.random(rng, 2) for _ in range(4))
        if not field.is_zero(pt)
    )
    if not ok:
        raise RankDropOnSubspace("A drops rank identically on the line")

    cs = []
    for m in range(0, k + 2):
        s = syzygy_dim(field, TL, m)
        cs.append(s if m == 0 else s - k * m)
    if any(c < 0 for c in cs):
        raise NegativeResult("negative section count on line; not a monad matrix")
    dm = [cs[m] - cs[m - 1] for m in range(1, k + 2)]  # dm[i] = d_{i+1}
    t = {m: dm[m - 1] - dm[m - 2] for m in range(2, k + 2)}
    if t.get(k + 1, 0) != 0:
        raise InstmonadError("splitting degrees exceed expected range")
    jump = _jump_total(field, TL, k)
    t[1] = jump - sum(m * t[m] for m in range(2, k + 2))
    t[0] = 2 * n - 2 * sum(t[m] for m in range(1, k + 2))
    if any(v < 0 for v in t.values()):
        raise InstmonadError("inconsistent splitting-type counts")
    degrees: list[int] = []
    for m in range(k + 1, 0, -1):
        degrees.extend([m] * t[m])
    degrees.extend([0] * t[0])
    for m in range(1, k + 2):
        degrees.extend([-m] * t[m])
    degrees.sort(reverse=True)
    # cross-check every measured twist count against the candidate multiset
    for m in range(0, k + 2):
        pred = sum(max(a + m + 1, 0) for a in degrees)
        if pred != cs[m]:
            raise InstmonadError("splitting multiset fails twist-count cross-check")
    return tuple(degrees)


def to_json_dict(A: LinearFormMatrix) -> dict:
    return {
        "n": A.n,
        "k": A.k,
        "tensor": [[[int(v) for v in row] for row in layer] for layer in A.tensor],
    }


def from_json_dict(data: dict) -> LinearFormMatrix:
    n, k = int(data["n"]), int(data["k"])
    tensor = np.array(data["tensor"], dtype=np.int64)
    return LinearFormMatrix(n=n, k=k, tensor=tensor)


def dumps(A: LinearFormMatrix) -> str:
    return json.dumps(to_json_dict(A), sort_keys=True)


def loads(text: str) -> LinearFormMatrix:
    return from_json_dict(json.loads(text))
