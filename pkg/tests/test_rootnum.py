import pytest
from hypothesis import given
from hypothesis import strategies as st

from rank2curves.arith import is_prime, is_squarefree
from rank2curves.rootnum import local_root_numbers_Am, root_number_Am, root_number_Em

PRIMES = [p for p in range(5, 2000) if is_prime(p)]


@pytest.mark.parametrize("m, w", [(-141, 1), (3, -1), (-2, -1), (2, 1), (-589, 1)])
def test_root_number_Em_examples(m, w):
    assert root_number_Em(m) == w


@pytest.mark.parametrize("m, w", [(7997, 1), (5, 1), (7, 1), (11, -1)])
def test_root_number_Am_examples(m, w):
    assert root_number_Am(m) == w


def test_local_factors_Am():
    assert local_root_numbers_Am(7997) == {3: -1, 11: -1, 727: 1}


def test_rejects_out_of_scope():
    with pytest.raises(ValueError):
        root_number_Em(12)
    with pytest.raises(ValueError):
        root_number_Am(15)
    with pytest.raises(ValueError):
        root_number_Am(10)


def test_T2_classes_have_root_number_one():
    ps = [p for p in PRIMES if p % 16 == 15]
    qs = [q for q in PRIMES if q % 16 == 3] + [3]
    for p in ps:
        for q in qs:
            if p * q < 10**4:
                assert root_number_Em(-p * q) == 1


def test_T3_classes_have_root_number_one():
    ps = [p for p in PRIMES if p % 9 == 2]
    qs = [q for q in PRIMES if q % 9 == 7]
    for p in ps:
        for q in qs:
            if p * q < 10**5:
                assert root_number_Am(p * q) == 1


@given(st.integers(-(10**6), 10**6).filter(lambda m: m != 0 and is_squarefree(m)), st.integers(-50, 50))
def test_Em_depends_on_sign_and_class_mod_16(m, k):
    m2 = m + 16 * k * (1 if m > 0 else -1)
    if m2 != 0 and (m2 > 0) == (m > 0) and is_squarefree(m2):
        assert root_number_Em(m) == root_number_Em(m2)


def test_Am_multiplicative_in_primes():
    for p in PRIMES[:15]:
        for q in PRIMES[:15]:
            if p < q:
                local = local_root_numbers_Am(p * q)
                assert local[p] == local_root_numbers_Am(p)[p]
                assert local[q] == local_root_numbers_Am(q)[q]
