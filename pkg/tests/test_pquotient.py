import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grigquot.cosets import PresentationFP
from grigquot.oracles import SMALL_GROUPS, cayley_table, cocycle_h2_dim, small_group
from grigquot.pquotient import (consistency_differences, f2_rank_masks,
                                multiplier_report, p_cover, pquotient,
                                relator_images)
from grigquot.quotients import presentation_for, quotient_group
from grigquot.words import relator_family


def test_cyclic_two():
    q = pquotient(PresentationFP.from_words("x", ["xx"]), 10)
    assert q.complete and q.pc.k == 1
    assert p_cover(q.pc).m_star == 1


def test_klein_four_against_cocycles():
    p = small_group("C2xC2")
    assert p_cover(pquotient(p).pc).m_star == cocycle_h2_dim(cayley_table(p)) == 3


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_cover_matches_cocycle_oracle(name):
    p = small_group(name)
    assert p_cover(pquotient(p).pc).m_star == cocycle_h2_dim(cayley_table(p))


def test_cayley_table_is_a_group():
    t = cayley_table(small_group("Q8")).mul
    n = len(t)
    assert all(t[0][g] == g == t[g][0] for g in range(n))
    for g, h, k in itertools.product(range(n), repeat=3):
        assert t[t[g][h]][k] == t[g][t[h][k]]


@pytest.mark.parametrize("kind,n", [("thm4", 3), ("thm1", 3), ("thm1", 4), ("thm4", 4)])
def test_pquotient_orders(kind, n):
    q = pquotient(presentation_for(kind, n), 20)
    assert q.complete
    assert q.pc.k == quotient_group(n).log2_order()


def test_class_cap_is_reported():
    q = pquotient(presentation_for("thm4", 4), max_class=2)
    assert not q.complete


@pytest.mark.parametrize("n", [3, 4, 5])
def test_multiplier_report(n):
    r = multiplier_report(n)
    assert (r.h2_dim, r.schur_mod2_rank, r.def_lower, r.def_upper) == (
        2 * n + 1, 2 * n - 2, 2 * n - 2, 2 * n - 2)
    assert r.relators_independent and r.relator_rank == 2 * n + 1


def test_level3_cover_minimal_generators():
    q = pquotient(presentation_for("thm4", 3))
    assert q.pc.rank_d() == 3
    assert p_cover(q.pc).m_star == 7


def test_duplicate_relator_keeps_rank():
    p = presentation_for("thm4", 3)
    q = pquotient(p)
    dup = p.with_relators(list(p.relators) + [p.relators[-1]])
    rows = relator_images(dup, p_cover(q.pc, dup))
    assert f2_rank_masks(rows) == 7 and len(rows) == 8


def test_thm1_four_generator_bookkeeping():
    p = presentation_for("thm1", 3)
    q = pquotient(p)
    cover = p_cover(q.pc, p)
    rank = f2_rank_masks(relator_images(p, cover))
    # on four generators the multiplicator grows by the redundant generator;
    # all 2n+2 relators stay independent
    assert cover.m_star == 8 and rank == 8


def test_cover_is_consistent():
    q = pquotient(presentation_for("thm4", 4))
    cover = p_cover(q.pc)
    assert all(cover.reduce_tail(t) == 0
               for t in consistency_differences(cover.collector))


@given(st.randoms(use_true_random=False))
@settings(max_examples=20)
def test_collection_strategies_agree(rnd):
    q = pquotient(presentation_for("thm4", 4))
    col = q.pc.collector()
    gens = [rnd.randrange(q.pc.k) for _ in range(rnd.randrange(1, 30))]
    assert col.mul_balanced(gens) == col.mul_left(gens)


def test_m_star_independent_of_relator_order():
    p = presentation_for("thm4", 4)
    rels = list(p.relators)
    random.Random(5).shuffle(rels)
    shuffled = p.with_relators(rels)
    assert p_cover(pquotient(shuffled).pc).m_star == 9


def test_m_star_independent_of_generator_labels():
    # swap b and c in the level-3 presentation
    p = PresentationFP.from_family(relator_family("thm4", 3))
    swap = str.maketrans("bcBC", "cbCB")
    q = PresentationFP.from_words("abc", [str(r).translate(swap) for r in p.relators])
    assert p_cover(pquotient(q).pc).m_star == 7


def test_relator_outside_multiplicator_is_an_error():
    p = presentation_for("thm4", 3)
    cover = p_cover(pquotient(p).pc, p)
    with pytest.raises(AssertionError):
        relator_images(PresentationFP.from_words("abc", ["a"]), cover)
