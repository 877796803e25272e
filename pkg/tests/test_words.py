import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import words
from grigquot.tree import is_identity_at
from grigquot.words import (SIGMA_L, SIGMA_MIN, U_SEED, FreeWord, capital,
                            commutator, free_reduce, left_normed, lower,
                            reduce_involutive, relator_family, substitute, word)


def test_free_reduce_examples():
    assert free_reduce(word("aA")).letters == ()
    assert str(free_reduce(word("abBc"))) == "ac"
    assert str(free_reduce(word("(ad)^4"))) == "adadadad"


def test_reduce_involutive_examples():
    assert str(reduce_involutive(word("bc"))) == "d"
    assert reduce_involutive(word("aa")).letters == ()
    assert str(reduce_involutive(word("dadbc"))) == "da"


def test_reduce_involutive_matches_tree_action():
    w = word("dadbc")
    r = reduce_involutive(w)
    assert is_identity_at(w * r.inverse(), 6)


@given(words(40))
def test_reduce_involutive_shortens_and_is_idempotent(w):
    r = reduce_involutive(w)
    assert len(r) <= len(w)
    assert reduce_involutive(r).letters == r.letters
    assert is_identity_at(w * r.inverse(), 7)


@pytest.mark.parametrize("text", ["adAD", "(ad)^4", "abcdDCBA", "(abac)^4"])
def test_parse_round_trip(text):
    w = word(text)
    assert word(str(w)).letters == w.letters


def test_parse_inverse_power():
    assert word("(ab)^-2").letters == word("BABA").letters


def test_parse_commutator_brackets():
    a, b, c, d = (word(x) for x in "abcd")
    assert word("[a,b]") == commutator(a, b)
    assert word("[a,b,c]^-2") == left_normed(a, b, c) ** -2
    assert word("[[a,b],[c,d]]") == commutator(commutator(a, b), commutator(c, d))
    assert word("a[b,(cd)^2]") == a * commutator(b, word("(cd)^2"))


@pytest.mark.parametrize("text", ["[a,b", "a,b", "a]", "[a,b)", "(a"])
def test_parse_rejects_unbalanced(text):
    with pytest.raises(ValueError):
        word(text)


@given(words(8, min_size=1), words(8, min_size=1))
def test_bracket_text_matches_commutator(x, y):
    assert word(f"[{x},{y}]") == commutator(x, y)


def test_substitution_examples():
    assert str(substitute(SIGMA_L, word("ad"), 1)) == "acac"
    assert str(substitute(SIGMA_L, word("ac"), 1)) == "acab"
    assert substitute(SIGMA_L, word("abc"), 0).letters == word("abc").letters


def test_sigma_min_table():
    w = word("abc", "abc")
    assert str(substitute(SIGMA_MIN, w, 1)) == "acabcb"


@given(words(16), words(16), st.integers(0, 3))
def test_substitution_is_a_homomorphism(v, w, k):
    lhs = substitute(SIGMA_L, v * w, k)
    rhs = free_reduce(substitute(SIGMA_L, v, k) * substitute(SIGMA_L, w, k))
    assert lhs.letters == rhs.letters


def test_thm1_level3_family():
    fam = relator_family("thm1", 3)
    assert [str(w) for w in fam.words] == [
        "aa", "bb", "cc", "dd", "bcd", "adadadad", "acacacac", "abacabacabacabac"]


@pytest.mark.parametrize("n", range(3, 9))
def test_family_sizes(n):
    assert len(relator_family("thm1", n)) == 2 * n + 2
    assert len(relator_family("thm4", n)) == 2 * n + 1
    assert len(relator_family("hopf", n)) == 2 * n + 2


def test_u_words_are_sigma_images():
    fam = relator_family("lysenok", 10)
    for i in range(11):
        assert fam[f"u_{i}"].letters == substitute(SIGMA_L, word("(ad)^4"), i).letters


def test_hopf_contains_v0():
    fam = relator_family("hopf", 4)
    assert fam["V_0"].letters == free_reduce(word("(adacac)^4(a)^-12(c)^-8(d)^-4")).letters


def test_u_seed_uses_d():
    # the U seed is (ad)^4 a^-4 d^-4; it must be a product of commutators
    assert free_reduce(word(U_SEED)).exponent_sums() == [0, 0, 0, 0]


@pytest.mark.parametrize("label", ["L", "U_0", "U_2", "V_1", "W_4", "T_5"])
def test_capital_relators_in_derived_subgroup(label):
    assert capital(label).exponent_sums() == [0, 0, 0, 0]


@pytest.mark.parametrize("n", [3, 4])
def test_sigma_of_kernel_generators_is_trivial(n):
    # sigma maps K_n into K_n, so images of its normal generators vanish in G_n
    for w in relator_family("hopf", n).words:
        assert is_identity_at(substitute(SIGMA_L, w, 1), n)


def test_commutator_convention():
    x, y = word("a"), word("b")
    assert commutator(x, y).letters == word("ABab").letters
    assert left_normed(x, y, word("c")).letters == commutator(commutator(x, y), word("c")).letters


def test_lower_labels():
    assert lower("u_0").letters == word("(ad)^4").letters
    assert lower("w_3").letters == word("(ac)^4").letters
    with pytest.raises(ValueError):
        lower("w_2")


def test_family_errors():
    with pytest.raises(ValueError):
        relator_family("thm1", 2)
    with pytest.raises(ValueError):
        relator_family("nope", 3)
    with pytest.raises(ValueError):
        FreeWord.parse("ax")
