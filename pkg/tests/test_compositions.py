from hypothesis import given, strategies as st

from koornasep.compositions import (box_partitions, dominance_leq, orbit, plus, preceq,
                                    preceq_basis, prec)
from strategies import compositions


def test_dominance_examples():
    assert dominance_leq((1, 1), (2, 0))
    assert not dominance_leq((2, 0), (1, 1))
    assert dominance_leq((2, 1), (2, 2))


def test_preceq_examples():
    assert preceq((-1, 1), (1, 1))
    assert preceq((1, 1), (1, 1))
    assert not preceq((2, 0), (1, 1))
    assert not prec((1, 1), (1, 1))


def test_box_partitions_examples():
    assert set(box_partitions(2, 2)) == {(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)}
    assert box_partitions(0, 3) == [(0, 0, 0)]
    assert set(box_partitions(1, 2)) == {(0, 0), (1, 0), (1, 1)}


def test_box_partitions_end_with_the_box():
    for m in range(4):
        for n in range(1, 4):
            assert box_partitions(m, n)[-1] == (m,) * n


def test_orbit_size():
    assert len(orbit((1, 0))) == 4
    assert len(orbit((2, 1))) == 8
    assert orbit((0, 0)) == [(0, 0)]


def test_preceq_basis_contains_lambda_and_is_downward_closed():
    lam = (-1, -1)
    basis = preceq_basis(lam)
    assert lam in basis
    assert all(preceq(mu, lam) for mu in basis)
    assert (1, 1) not in basis


triples = st.integers(1, 4).flatmap(lambda n: st.tuples(*[compositions(n)] * 3))


@given(triples)
def test_dominance_is_a_partial_order(t):
    a, b, c = t
    assert dominance_leq(a, a)
    if dominance_leq(a, b) and dominance_leq(b, a):
        assert a == b
    if dominance_leq(a, b) and dominance_leq(b, c):
        assert dominance_leq(a, c)


@given(st.integers(1, 3).flatmap(lambda n: compositions(n, 0, 3)))
def test_preceq_on_an_orbit_reduces_to_dominance(lam):
    lam = plus(lam)
    for mu in orbit(lam):
        assert preceq(mu, lam) == dominance_leq(mu, lam)


@given(st.integers(0, 3), st.integers(1, 3))
def test_box_partitions_closed_downward(m, n):
    parts = set(box_partitions(m, n))
    for p in parts:
        for q in box_partitions(max(p), n):
            if dominance_leq(q, p) and sum(q) <= sum(p):
                assert q in parts
