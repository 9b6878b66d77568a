import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instmonad.errors import FieldTooSmall
from instmonad.field import (PRIME_FLOOR, PrimeField, RationalField, is_prime,
                             root_of_unity, select_prime)


def test_is_prime_small_values():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for m in range(2, 32):
        assert is_prime(m) == (m in primes)
    assert not is_prime(1)
    assert not is_prime(0)
    assert is_prime(2**31 - 1)  # Mersenne
    assert not is_prime(2**30)


def test_select_prime_floor_and_torsion():
    p = select_prime()
    assert p >= PRIME_FLOOR and is_prime(p)
    for torsion in (2, 3, 7, 12):
        q = select_prime(torsion=torsion)
        assert is_prime(q) and q % torsion == 1


def test_select_prime_indices_distinct():
    ps = [select_prime(index=i) for i in range(3)]
    assert len(set(ps)) == 3
    assert ps == sorted(ps)


def test_prime_field_basic_ops(F, rng):
    a = F.random(rng, (3, 3))
    assert np.array_equal(F.mod(a + F.neg(a)), F.zeros((3, 3)))
    x = int(F.random_nonzero(rng, 1)[0])
    assert (x * F.inv(x)) % F.p == 1
    assert F.is_zero(F.zeros(5))
    assert not F.is_zero(F.eye(2))


def test_prime_field_matmul_no_overflow(F):
    # products of maximal residues over a long inner dimension must
    # still reduce correctly (int64 alone would overflow)
    m = 64
    a = np.full((1, m), F.p - 1, dtype=np.int64)
    got = F.matmul(a, a.T)[0, 0]
    assert got == (m * (F.p - 1) ** 2) % F.p


def test_prime_field_rejects_bad_modulus():
    with pytest.raises(ValueError):
        PrimeField(2**30)  # composite
    with pytest.raises(ValueError):
        PrimeField(2**61 - 1)  # too large for int64-safe products


def test_root_of_unity_exact_order():
    for d in (1, 2, 3, 8, 12):
        F = PrimeField(select_prime(torsion=d))
        w = root_of_unity(F, d)
        assert pow(w, d, F.p) == 1
        for q in (2, 3):
            if d % q == 0:
                assert pow(w, d // q, F.p) != 1


def test_root_of_unity_requires_torsion():
    F = PrimeField(select_prime(torsion=4))
    d = 3 if (F.p - 1) % 3 else 9 if (F.p - 1) % 9 else None
    if d is not None:
        with pytest.raises(FieldTooSmall):
            root_of_unity(F, d)


def test_rational_field_ops(Q):
    a = Q.mod([[1, 2], [3, 4]])
    assert Q.matmul(a, Q.eye(2)).tolist() == a.tolist()
    assert Q.inv(4) * 4 == 1
    assert Q.is_zero(Q.zeros((2, 2)))


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=PRIME_FLOOR))
def test_inverse_property(x):
    F = PrimeField(select_prime())
    assert (x * F.inv(x)) % F.p == 1
