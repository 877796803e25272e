"""Resource profiles for the command line and the report."""

from __future__ import annotations

from dataclasses import dataclass

from .cosets import DEEP_MAX_COSETS, DEFAULT_MAX_COSETS


@dataclass(frozen=True)
class Profile:
    name: str
    max_cosets: int = DEFAULT_MAX_COSETS
    order_levels: tuple[int, ...] = tuple(range(1, 9))
    relator_level: int = 8
    lysenok_cutoff: int = 10
    certificate_levels: tuple[int, ...] = (3, 4)
    abelianization_levels: tuple[int, ...] = (3, 4, 5, 6)
    multiplier_levels: tuple[int, ...] = (3, 4, 5)
    qn_levels: tuple[int, ...] = (3, 4, 5)
    pair_range: tuple[int, int] = (1, 10)
    capital_range: tuple[int, int] = (4, 10)
    kernel_levels: tuple[int, ...] = (4, 5, 6, 7)
    branch_levels: tuple[int, ...] = (4, 5, 6, 7, 8)
    wp_words: int = 1000
    wp_max_length: int = 64
    wp_level: int = 12
    grid: tuple[tuple[int, int], ...] = ((3, 1), (3, 2), (4, 1), (4, 2))
    limit_systems: int = 100
    seed: int = 0


DEFAULT = Profile("default")
DEEP = Profile("deep", max_cosets=DEEP_MAX_COSETS, certificate_levels=(3, 4, 5),
               multiplier_levels=(3, 4, 5, 6))

PROFILES = {"default": DEFAULT, "deep": DEEP}


def get_profile(name: str) -> Profile:
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}")
