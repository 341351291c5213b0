import random

import pytest
from hypothesis import given, settings, strategies as st

from fmpartners.autoeq import (
    CONVENTION,
    IDENTITY,
    IntMatrix2,
    gamma0_member,
    lift_residue,
    random_gamma0_member,
    random_subgroup_member,
    realized_residues,
    subgroup_member,
    verify_closure,
)
from fmpartners.modmath import make_subgroup, units


def H5(*elems):
    return make_subgroup(5, elems)


def test_gamma0_examples():
    for m in (1, 5, 12):
        assert gamma0_member(IDENTITY, m)
    assert gamma0_member(IntMatrix2(1, 0, 5, 1), 5)
    assert not gamma0_member(IntMatrix2(1, 1, 1, 2), 5)
    assert not gamma0_member(IntMatrix2(2, 0, 5, 1), 5)  # det 2
    with pytest.raises(ValueError):
        gamma0_member(IDENTITY, 0)


def test_subgroup_member_examples():
    M = IntMatrix2(3, 1, 5, 2)
    assert M.det == 1
    assert subgroup_member(IDENTITY, 5, H5(1, 4))
    assert not subgroup_member(M, 5, H5(1, 4))
    assert subgroup_member(M, 5, H5(1, 2, 3, 4))
    with pytest.raises(ValueError):
        subgroup_member(M, 7, H5(1, 4))


@pytest.mark.parametrize(
    "b, m, expected", [(1, 5, (1, 0, 5, 1)), (2, 5, (3, 1, 5, 2)), (3, 7, (5, 2, 7, 3))]
)
def test_lift_examples(b, m, expected):
    assert lift_residue(b, m) == IntMatrix2(*expected)


def test_lift_rejects_non_units():
    with pytest.raises(ValueError):
        lift_residue(2, 6)


def test_lift_round_trip_small():
    for m in range(1, 120):
        for b in units(m).elements:
            L = lift_residue(b, m)
            assert gamma0_member(L, m) and L.residue(m) == b % m
            assert L.c == pow(b, -1, m)


def test_inverse_and_product():
    M = IntMatrix2(3, 1, 5, 2)
    assert M.inverse() == IntMatrix2(2, -1, -5, 3)
    assert M @ M.inverse() == IDENTITY == M.inverse() @ M
    with pytest.raises(ValueError):
        IntMatrix2(2, 0, 0, 1).inverse()


def test_closure_examples():
    lift4 = lift_residue(4, 5)
    P = lift4 @ lift4
    assert P.residue(5) == 1 and subgroup_member(P, 5, H5(1, 4))
    assert verify_closure(5, H5(1, 2, 3, 4), 300, seed=1).passed
    for m in (1, 2, 9, 40):
        trivial = make_subgroup(m, (1,))
        rep = verify_closure(m, trivial, 200, seed=m)
        assert rep.passed and rep.checked == 200
        assert rep.convention == CONVENTION
        rng = random.Random(m)
        assert all(random_subgroup_member(m, trivial, rng).residue(m) == 1 % m for _ in range(50))


def test_random_members_are_bounded_members():
    rng = random.Random(7)
    for m in (1, 2, 5, 97, 500, 10**6):
        for _ in range(200):
            M = random_gamma0_member(m, rng)
            assert gamma0_member(M, m)
            assert max(abs(v) for v in M) <= 10**6


def test_realized_residues_are_units():
    for m in range(1, 200):
        assert realized_residues(m) == list(units(m).elements)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**4), st.integers(0, 2**32))
def test_residue_is_a_homomorphism(m, seed):
    rng = random.Random(seed)
    A, B = random_gamma0_member(m, rng), random_gamma0_member(m, rng)
    P = A @ B
    assert gamma0_member(P, m) and gamma0_member(A.inverse(), m)
    assert P.residue(m) == A.residue(m) * B.residue(m) % m
    assert A.inverse().residue(m) == pow(A.b, -1, m)
