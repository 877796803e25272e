import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grigquot.cosets import PresentationFP
from grigquot.linalg import (F2Echelon, FiniteAbelian, abelianization, det,
                             f2_nullspace_basis, f2_rank, gcd_of_minors_invariants,
                             hnf_rows, in_lattice, invariant_factors, matmul, snf)
from grigquot.words import relator_family

RANK4_VECTORS = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 1, 1, 1]]

small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def test_snf_examples():
    assert snf([[2, 0], [0, 2]]).diagonal == [2, 2]
    assert snf([[2, 1], [0, 2]]).diagonal == [1, 4]
    assert snf(RANK4_VECTORS).rank == 4


@given(small_matrices)
def test_snf_certificate(A):
    res = snf(A)
    assert matmul(matmul(res.U, A), res.V) == res.D
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    d = res.diagonal
    for x, y in zip(d, d[1:]):
        assert y == 0 or (x != 0 and y % x == 0)


@given(small_matrices)
def test_snf_matches_minors_oracle(A):
    r, c = len(A), len(A[0])
    assert invariant_factors(A)[:min(r, c)] == gcd_of_minors_invariants(A)


@given(small_matrices)
def test_f2_rank_equals_rank_of_diagonal_mod2(A):
    D = snf(A).D
    assert f2_rank(A) == f2_rank(D)


def test_f2_rank_examples():
    assert f2_rank(np.eye(4, dtype=int).tolist()) == 4
    assert f2_rank([[0, 0], [0, 0]]) == 0
    assert f2_rank(RANK4_VECTORS) == 1


@pytest.mark.parametrize("n", range(3, 7))
def test_abelianization_thm4(n):
    p = PresentationFP.from_family(relator_family("thm4", n))
    assert [d for d in abelianization(p) if d != 1] == [2, 2, 2]


def test_abelianization_thm1_keeps_a_unit():
    p = PresentationFP.from_family(relator_family("thm1", 3))
    assert abelianization(p) == [1, 2, 2, 2]


def test_abelianization_free():
    assert abelianization(PresentationFP.from_words("abc", [])) == [0, 0, 0]


def test_finite_abelian():
    G = FiniteAbelian.from_relations([[2, 0], [0, 4]], 2)
    assert G.invariants == [2, 4] and G.order == 8
    assert G.element_order([1, 1]) == 4
    assert G.is_zero([2, 4])
    assert G.subgroup_order([[0, 2]]) == 2
    assert G.f2_rank_of([[1, 0], [0, 1]]) == 2
    assert G.f2_rank_of([[0, 2]]) == 1


def test_hnf_membership():
    B = hnf_rows([[2, 0, 0], [0, 3, 0], [1, 1, 1]], 3)
    assert in_lattice([3, 4, 1], B)
    assert not in_lattice([1, 0, 0], B)


@given(st.lists(st.integers(0, 2 ** 12 - 1), max_size=10))
def test_f2_nullspace(rows):
    basis = f2_nullspace_basis(rows, 12)
    for v in basis:
        for r in rows:
            assert bin(r & v).count("1") % 2 == 0
    assert len(basis) == 12 - f2_rank([[(r >> j) & 1 for j in range(12)] for r in rows])


def test_echelon_add_reports_independence():
    e = F2Echelon()
    assert e.add(0b101) and e.add(0b011)
    assert not e.add(0b110)
    assert len(e) == 2
