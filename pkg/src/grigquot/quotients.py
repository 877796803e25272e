"""The finite quotients G_n as permutation groups, and facts checked in them."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .cosets import DEFAULT_MAX_COSETS, PresentationFP, enumerate_cosets
from .perms import BranchSubgroupData, KernelData, PermGroup, normal_closure
from .tree import generator_perm, is_identity_at, level_perm
from .words import ABCD, FreeWord, commutator, letter_id, relator_family, word

MAX_QUOTIENT_LEVEL = 12


def expected_log2_order(n: int) -> int:
    """log2 |G_n| from the closed formula (n >= 3) and the two small cases."""
    if n < 1:
        raise ValueError("level must be >= 1")
    if n <= 2:
        return {1: 1, 2: 3}[n]
    return 5 * 2 ** (n - 3) + 2


def expected_kernel_log2(n: int) -> int:
    if n < 4:
        raise ValueError("kernel formula needs n >= 4")
    return 5 * 2 ** (n - 4)


@lru_cache(maxsize=None)
def quotient_group(n: int, max_level: int = MAX_QUOTIENT_LEVEL) -> PermGroup:
    """G_n = <a, b, c, d> acting on level n."""
    if n < 1:
        raise ValueError("level must be >= 1")
    if n > max_level:
        raise ValueError(f"level {n} exceeds the degree cap {max_level}")
    return PermGroup([generator_perm(ch, n) for ch in ABCD], degree=1 << n)


def kernel_data(n: int) -> KernelData:
    """Kernel of G_n -> G_(n-1): the image of St(n-1) in G_n."""
    if n < 4:
        raise ValueError("kernel_data needs n >= 4")
    g = quotient_group(n)
    gens = g.level_stabilizer_generators(n - 1)
    elementary = all((x * x).is_identity() for x in gens) and all(
        (x * y) == (y * x) for i, x in enumerate(gens) for y in gens[i + 1:])
    return KernelData(n, g.level_stabilizer_log2_order(n - 1), elementary)


def branch_subgroup(n: int) -> PermGroup:
    """Image of K = <<(ab)^2>> in G_n."""
    g = quotient_group(n)
    return normal_closure(g, [level_perm(word("(ab)^2"), n)])


def branch_subgroup_checks(n: int) -> BranchSubgroupData:
    if n < 3:
        raise ValueError("branch_subgroup_checks needs n >= 3")
    g = quotient_group(n)
    k = branch_subgroup(n)
    st3 = g.level_stabilizer_generators(3)
    inside = all(k.contains(x) for x in st3)
    return BranchSubgroupData(n, g.log2_order() - k.log2_order(), inside)


def relators_trivial(words: Sequence[FreeWord], level: int) -> list[bool]:
    """Which words act trivially on the given level (hence on all above)."""
    return [is_identity_at(w.with_alphabet(ABCD), level) for w in words]


# --------------------------------------------------------------------------
# presentation certificates

# (C2 wr C2) wr C2 on x = ada, y = c, z = a
WREATH_GENS = "xyz"
WREATH_SUBSTITUTION = {"x": "ada", "y": "c", "z": "a"}


def _conj(h: FreeWord, g: FreeWord) -> FreeWord:
    """h^g = g^-1 h g."""
    return g.inverse() * h * g


def wreath_presentation() -> PresentationFP:
    x, y, z = (word(ch, WREATH_GENS) for ch in WREATH_GENS)
    rels = [x * x, y * y, z * z,
            commutator(x, _conj(x, y)), commutator(y, _conj(y, z)),
            commutator(x, _conj(x, z)), commutator(x, _conj(y, z)),
            commutator(y, _conj(x, z))]
    return PresentationFP(WREATH_GENS, tuple(rels), "lemma1_wreath")


def wreath_relators_in_g3() -> list[FreeWord]:
    """The wreath relators with x, y, z replaced by ada, c, a."""
    images = {letter_id(k): word(v) for k, v in WREATH_SUBSTITUTION.items()}
    out = []
    for r in wreath_presentation().relators:
        acc = FreeWord((), ABCD)
        for x in r.letters:
            img = images[abs(x)]
            acc = acc * (img if x > 0 else img.inverse())
        out.append(acc)
    return out


def presentation_for(kind: str, n: int) -> PresentationFP:
    if kind in ("thm1", "thm4", "hopf"):
        return PresentationFP.from_family(relator_family(kind, n))
    if kind == "lemma1_wreath":
        if n != 3:
            raise ValueError("the wreath presentation describes G_3 only")
        return wreath_presentation()
    raise ValueError(f"unknown presentation kind {kind!r}")


def presentation_certificate(kind: str, n: int,
                             max_cosets: int = DEFAULT_MAX_COSETS,
                             strategy: str = "hlt") -> dict:
    """Relators vanish in G_n and the enumerated order equals |G_n|.

    Returns a dict with ``status`` ("pass", "fail" or "overflow")."""
    p = presentation_for(kind, n)
    if kind == "lemma1_wreath":
        words = wreath_relators_in_g3()
    else:
        words = [w.with_alphabet(ABCD) for w in p.relators]
    vanish = all(relators_trivial(words, n))
    target = quotient_group(n).order()
    if kind == "lemma1_wreath":
        # the substituted generators must generate all of G_3
        imgs = [level_perm(word(v), n) for v in WREATH_SUBSTITUTION.values()]
        vanish = vanish and PermGroup(imgs, degree=1 << n).order() == target
    res = enumerate_cosets(p, max_cosets=max_cosets, strategy=strategy)
    if not res.complete:
        status = "overflow"
    else:
        status = "pass" if vanish and res.order == target else "fail"
    return {"kind": kind, "n": n, "relators_vanish": vanish,
            "order": res.order, "expected": target, "status": status,
            "max_live": res.max_live}
