import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from grigquot.words import ABCD, FreeWord

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def letters(alphabet: str = ABCD):
    n = len(alphabet)
    return st.integers(1, n).flatmap(lambda g: st.sampled_from((g, -g)))


def words(max_size: int = 24, alphabet: str = ABCD, min_size: int = 0):
    return st.lists(letters(alphabet), min_size=min_size, max_size=max_size).map(
        lambda xs: FreeWord(tuple(xs), alphabet))


def even_a_words(max_size: int = 24):
    """Words with an even number of a-letters (the level-1 stabiliser lift)."""
    def fix(w: FreeWord) -> FreeWord:
        if w.count("a") % 2:
            return w * FreeWord((1,), ABCD)
        return w
    return words(max_size).map(fix)


@pytest.fixture(scope="session")
def rng_seed():
    return int(os.environ.get("GRIGQUOT_SEED", "0"))
