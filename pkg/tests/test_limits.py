import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grigquot.checks import random_limit_system
from grigquot.limits import (LimitSystem, SequenceExhausted, h2_formula,
                             invariant_hom_dim, invariant_hom_dim_swap_oracle,
                             kernel_generators, limit_bound, limit_bound_scan,
                             st3_frattini_dim, swap_vector)
from grigquot.quotients import kernel_data


def test_kernel_at_level4_is_five_dimensional():
    kd = kernel_data(4)
    assert kd.log2_order == 5 and kd.elementary_abelian


@pytest.mark.parametrize("n,k,value", [(3, 1, 1), (3, 2, 2), (4, 1, 1), (4, 2, 2)])
def test_invariant_hom_dims(n, k, value):
    assert invariant_hom_dim(n, k) == value


@pytest.mark.parametrize("n", [3, 4, 5])
def test_swap_oracle_agrees(n):
    assert invariant_hom_dim_swap_oracle(n) == invariant_hom_dim(n, 1)


def test_swap_vectors_span_the_kernel():
    # for k = 1 the kernel is elementary abelian and determined by swaps
    gens = kernel_generators(4, 1)
    vecs = {swap_vector(g, 4) for g in gens}
    assert all(v for v in vecs)


def test_st3_bound():
    assert st3_frattini_dim(6) == 9
    for n, k in [(3, 1), (3, 2), (4, 1), (4, 2)]:
        assert invariant_hom_dim(n, k) <= 9


def test_grid_limits():
    with pytest.raises(ValueError):
        invariant_hom_dim(2, 1)
    with pytest.raises(ValueError):
        invariant_hom_dim(4, 3)


def test_limit_examples():
    sys_ = LimitSystem.from_formula(h2_formula, 3, 100, 5)
    assert limit_bound(sys_, 10) == 25
    assert limit_bound(LimitSystem(sys_.dims, 0, 3), 1000) == 3


def test_limit_exhausted():
    with pytest.raises(SequenceExhausted):
        limit_bound(LimitSystem((1, 2, 3), 2), 5)


def test_limit_system_validation():
    with pytest.raises(ValueError):
        LimitSystem((3, 2), 1)
    with pytest.raises(ValueError):
        LimitSystem((1, 2), -1)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=80),
       st.integers(0, 10), st.integers(0, 30), st.integers(0, 5))
def test_bisect_matches_scan(steps, N, M, start):
    dims = tuple(int(x) for x in np.cumsum(steps))
    sys_ = LimitSystem(dims, N, start)
    try:
        expected = limit_bound_scan(sys_, M)
    except SequenceExhausted:
        with pytest.raises(SequenceExhausted):
            limit_bound(sys_, M)
        return
    assert limit_bound(sys_, M) == expected


def test_random_systems_are_valid():
    rng = np.random.default_rng(0)
    for _ in range(50):
        sys_, M = random_limit_system(rng)
        assert all(b >= a for a, b in zip(sys_.dims, sys_.dims[1:]))
        assert M >= 0
