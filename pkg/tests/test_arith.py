from fractions import Fraction
from itertools import product

from hypothesis import given, settings, strategies as st

from hecke_central.arith import (det, hnf, is_prime, kronecker, mat_inv, mat_mul,
                                 primes_up_to, quad_value, rational_hnf, short_vectors)

odd = st.integers(1, 400).map(lambda k: 2 * k + 1)


def test_kronecker_small_values():
    assert kronecker(2, 7) == 1
    assert kronecker(3, 7) == -1
    assert kronecker(-7, 11) == 1
    assert kronecker(14, 7) == 0


def test_kronecker_euler_criterion():
    for p in primes_up_to(200)[1:]:
        for a in range(1, 20):
            if a % p:
                assert kronecker(a, p) == (1 if pow(a, (p - 1) // 2, p) == 1 else -1)


@given(st.integers(-500, 500), st.integers(-500, 500), odd)
def test_kronecker_multiplicative_in_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-500, 500), odd, odd)
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


matrices = st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=5)


@given(matrices)
def test_hnf_transform_and_shape(M):
    if det(mat_mul([list(r) for r in zip(*M)], M)) == 0:
        return
    H, U = hnf(M)
    assert [list(r) for r in H] == mat_mul(U, M)
    for i, r in enumerate(H):
        assert r[i] > 0
        assert all(x == 0 for x in r[:i])
        for k in range(i):
            assert 0 <= H[k][i] < r[i]


@given(matrices, st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_hnf_idempotent_and_basis_invariant(M, u):
    if det(mat_mul([list(r) for r in zip(*M)], M)) == 0:
        return
    H, _ = hnf(M)
    assert [list(r) for r in hnf(H)[0]] == [list(r) for r in H]
    V = [u[0:3], u[3:6], u[6:9]]
    if abs(det(V)) != 1:
        return
    H2, _ = hnf(mat_mul(V, [list(r) for r in H]))
    assert [list(r) for r in H2] == [list(r) for r in H]


def test_rational_hnf_canonical():
    a = rational_hnf([[Fraction(1, 2), 0], [0, 1]])
    b = rational_hnf([[Fraction(1, 2), 1], [Fraction(-1, 2), 0]])
    assert a == b
    assert a[1] == 2


def test_mat_inv():
    M = [[2, 1], [1, 1]]
    assert mat_mul(M, mat_inv(M)) == [[1, 0], [0, 1]]


@settings(max_examples=40)
@given(st.integers(1, 5), st.integers(-2, 2), st.integers(1, 5), st.integers(0, 30))
def test_short_vectors_match_brute_force(a, b, c, bound):
    G = [[a, b], [b, c]] if a * c - b * b > 0 else [[a, 0], [0, c]]
    got = sorted(short_vectors(G, bound))
    box = range(-12, 13)
    want = sorted(v for v in product(box, box) if any(v) and quad_value(G, v) <= bound)
    assert got == want


def test_short_vectors_rational_gram():
    G = [[Fraction(1, 2), Fraction(1, 4)], [Fraction(1, 4), Fraction(1, 2)]]
    vs = short_vectors(G, Fraction(1, 2))
    assert sorted(vs) == [(-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0)]
