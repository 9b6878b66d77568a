import numpy as np
import pytest

from instmonad import monad, thooft
from instmonad.errors import FieldTooSmall
from instmonad.field import PrimeField
from instmonad.linalg import rank


def test_build_always_symplectic(F, rng):
    for n, k in ((1, 1), (1, 3), (2, 2), (2, 3)):
        d = thooft.random_datum(F, rng, n, k)
        assert monad.symplectic_check(F, thooft.build_thooft(F, d))


def test_canonical_syzygies(F, rng):
    for n, k in ((1, 3), (2, 3)):
        d = thooft.random_datum(F, rng, n, k)
        A = thooft.build_thooft(F, d)
        C = thooft.canonical_syzygies(F, d)
        S = monad.syzygy_matrix(F, A.tensor, 1)
        assert F.is_zero(F.matmul(S, C))
        assert rank(F, C) == n + k


def test_general_witness_exact_counts(F):
    # degree-1 syzygy counts by class: k = 1, k = 2, k >= 3
    cases = {(1, 1): 6, (2, 1): 15, (1, 2): 4, (2, 2): 6,
             (1, 3): 4, (2, 3): 5, (2, 4): 6, (3, 3): 6}
    for (n, k), expected in cases.items():
        w = thooft.proof_witness_general(F, n, k)
        A = thooft.build_thooft(F, w)
        assert monad.syzygy_dim(F, A.tensor, 1) == expected
        assert thooft.fullrank_certificate(F, w)


def test_general_witness_two_primes(F, F2):
    for n, k in ((1, 3), (2, 3)):
        for field in (F, F2):
            w = thooft.proof_witness_general(field, n, k)
            A = thooft.build_thooft(field, w)
            assert monad.syzygy_dim(field, A.tensor, 1) == n + k


def test_witness_needs_large_field():
    with pytest.raises(FieldTooSmall):
        thooft.proof_witness_general(PrimeField(11), 2, 3)


def test_repetition_witness_mixed_block(F):
    for n, k in ((1, 3), (2, 3), (2, 4), (3, 3)):
        w = thooft.proof_witness_syz(F, n, k)
        assert thooft.mixed_syzygy_dim(F, w) == n + k


def test_section_counts_random_data(F, rng):
    expected = {(2, 1): 14, (2, 2): 4, (2, 3): 2, (1, 4): 1}
    for (n, k), h0 in expected.items():
        d = thooft.random_datum(F, rng, n, k)
        A = thooft.build_thooft(F, d)
        assert monad.h0_twist(F, A, 1) == h0


def test_torus_stable_random_data(F, rng):
    d = thooft.random_datum(F, rng, 2, 3)
    assert thooft.torus_stable(F, d)


def test_group_action_preserves_invariants(F, rng):
    n, k = 1, 3
    d = thooft.random_datum(F, rng, n, k)
    A = thooft.build_thooft(F, d)
    s0 = monad.syzygy_dim(F, A.tensor, 0)
    s1 = monad.syzygy_dim(F, A.tensor, 1)
    for _ in range(5):
        g = thooft.random_group_element(F, rng, n, k)
        dg = thooft.apply_group(F, g, d)
        Ag = thooft.build_thooft(F, dg)
        assert monad.symplectic_check(F, Ag)
        assert monad.syzygy_dim(F, Ag.tensor, 0) == s0
        assert monad.syzygy_dim(F, Ag.tensor, 1) == s1


def test_identity_group_element_fixes(F, rng):
    n, k = 2, 3
    d = thooft.random_datum(F, rng, n, k)
    e = thooft.identity_group_element(F, n, k)
    de = thooft.apply_group(F, e, d)
    assert np.array_equal(F.mod(d.a), de.a)
    assert np.array_equal(F.mod(d.l), de.l)
    assert np.array_equal(F.mod(d.lprime), de.lprime)


def test_orbit_rank_and_moduli_dim(F, rng):
    for n, k in ((1, 3), (2, 3)):
        d = thooft.random_datum(F, rng, n, k)
        r = thooft.orbit_rank(F, d)
        assert r == thooft.group_dim(n, k) == 4 * (n + k) + k * k
        assert thooft.parameter_dim(n, k) - r == 5 * k * n + 4 * n * n


def test_deformation_dim_unstructured(F, rng):
    # the closed form holds in the verified range, not for tiny (n, k)
    n, k = 3, 6
    d = thooft.random_general_datum(F, rng, n, k)
    A = thooft.build_thooft(F, d)
    assert thooft.deformation_space_dim(F, A) == (n + k) * (6 * n + 3 * k + 1)


def test_json_roundtrip(F, rng):
    d = thooft.random_datum(F, rng, 2, 3)
    d2 = thooft.loads(thooft.dumps(d))
    assert d2.n == d.n and d2.k == d.k
    assert np.array_equal(d2.a, F.mod(d.a))
    assert np.array_equal(d2.l, F.mod(d.l))
    assert np.array_equal(d2.lprime, F.mod(d.lprime))
