from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hecke_central.checks import lattice_invariants, siegel_points
from hecke_central.quatalg import (Quat, QuatLattice, brandt_matrix, class_set, discriminant,
                                   eichler_mass, embedding_count, is_order, lattice_norm,
                                   left_order, orders_conjugate, right_order, standard_maximal_order,
                                   type_partition, unit_count)
from hecke_central.quadfield import hurwitz_mod

coords = st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=4)] * 4)


@given(coords, coords, st.sampled_from([-7, -11, -163]))
def test_norm_multiplicative(a, b, N):
    x, y = Quat.make(N, *a), Quat.make(N, *b)
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == y.conj() * x.conj()
    assert x * x.conj() == Quat.make(N, x.norm())


def test_algebra_relations():
    N = -7
    i, j = Quat.make(N, 0, 1), Quat.make(N, 0, 0, 1)
    assert i * i == Quat.make(N, -1)
    assert j * j == Quat.make(N, N)
    assert i * j == -(j * i)


@pytest.mark.parametrize("N", [-7, -11, -163])
def test_standard_order_is_maximal(N):
    O = standard_maximal_order(N)
    assert is_order(O)
    assert left_order(O) == O and right_order(O) == O
    assert discriminant(O) == N * N
    assert lattice_norm(O) == 1


@pytest.mark.parametrize("N,h,t,units", [(-7, 1, 1, [4]), (-11, 2, 2, [4, 6])])
def test_small_class_sets(N, h, t, units):
    cs = class_set(standard_maximal_order(N))
    assert (cs.h, cs.t) == (h, t)
    assert sorted(cs.units) == units
    assert cs.mass() == eichler_mass(N)


def test_class_set_163():
    cs = class_set(standard_maximal_order(-163))
    assert (cs.h, cs.t) == (14, 8)
    assert cs.mass() == Fraction(162, 24)
    assert sorted(len(g) for g in cs.types) == [1, 1] + [2] * 6
    assert sorted(len(g) for g in type_partition(cs)) == sorted(len(g) for g in cs.types)


@pytest.mark.parametrize("N", [-7, -11, -163])
def test_embedding_counts_sum_to_hurwitz(N):
    cs = class_set(standard_maximal_order(N))
    total = sum(embedding_count(cs.right_orders[g[0]]) for g in cs.types)
    assert total == hurwitz_mod(-N, -4 * N)


def test_orders_conjugate_agrees_with_types():
    cs = class_set(standard_maximal_order(-11))
    R0, R1 = cs.right_orders
    assert orders_conjugate(R0, R0)
    assert not orders_conjugate(R0, R1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_brandt_matrix(p):
    cs = class_set(standard_maximal_order(-11))
    B = brandt_matrix(p, cs)
    assert all(sum(row) == p + 1 for row in B)
    w = cs.units
    for i in range(cs.h):
        for j in range(cs.h):
            assert w[j] * B[i][j] == w[i] * B[j][i]


def test_unit_count_standard():
    assert unit_count(standard_maximal_order(-7)) == 4
    assert unit_count(standard_maximal_order(-11)) == 4


def test_canonical_form_is_unique():
    N = -7
    O = standard_maximal_order(N)
    a = Quat.make(N, 1, 1, 0, 0)
    I1 = O * a
    I2 = QuatLattice.from_quats([b * a for b in reversed(O.basis)])
    assert I1 == I2
    assert lattice_norm(I1) == 2


@pytest.mark.parametrize("N", [-7, -11])
def test_lattice_invariants(N):
    r = lattice_invariants(N, 15)
    assert r.ok, r.detail


@pytest.mark.parametrize("N,D", [(-7, 23), (-11, 23), (-163, 151)])
def test_siegel_points(N, D):
    r = siegel_points(N, D)
    assert r.ok, r.detail
