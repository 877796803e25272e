"""Brute-force reference computations used to cross-check the fast paths."""

from __future__ import annotations

from dataclasses import dataclass

from .cosets import PresentationFP, enumerate_cosets
from .linalg import F2Echelon

# every group of order at most 8, by presentation
SMALL_GROUPS: dict[str, tuple[str, tuple[str, ...]]] = {
    "1": ("a", ("a",)),
    "C2": ("a", ("aa",)),
    "C3": ("a", ("aaa",)),
    "C4": ("a", ("aaaa",)),
    "C2xC2": ("ab", ("aa", "bb", "abAB")),
    "C5": ("a", ("aaaaa",)),
    "C6": ("a", ("aaaaaa",)),
    "S3": ("ab", ("aa", "bbb", "abab")),
    "C7": ("a", ("aaaaaaa",)),
    "C8": ("a", ("aaaaaaaa",)),
    "C4xC2": ("ab", ("aaaa", "bb", "abAB")),
    "C2xC2xC2": ("abc", ("aa", "bb", "cc", "abAB", "acAC", "bcBC")),
    "D8": ("ab", ("aaaa", "bb", "abab")),
    "Q8": ("ab", ("aaaa", "aaBB", "Baba")),
}


def small_group(name: str) -> PresentationFP:
    gens, rels = SMALL_GROUPS[name]
    return PresentationFP.from_words(gens, rels, name)


@dataclass(frozen=True)
class CayleyTable:
    """Multiplication table ``mul[g][h] = gh``; element 0 is the identity."""

    mul: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.mul)


def cayley_table(p: PresentationFP, max_cosets: int = 10 ** 5) -> CayleyTable:
    """Cayley table from the regular representation on the coset table."""
    res = enumerate_cosets(p, max_cosets=max_cosets, keep_table=True)
    if not res.complete:
        raise RuntimeError(f"{p.name}: enumeration overflowed")
    rows = res.table.rows
    n = len(rows)
    # word (as column sequence) reaching each coset from coset 0
    paths: list[list[int] | None] = [None] * n
    paths[0] = []
    queue = [0]
    for c in queue:
        for col, d in enumerate(rows[c]):
            if paths[d] is None:
                paths[d] = paths[c] + [col]
                queue.append(d)
    # coset g = 0 . w_g; right multiplication by h's word sends g to gh
    mul = []
    for g in range(n):
        out = []
        for h in range(n):
            c = g
            for col in paths[h]:
                c = rows[c][col]
            out.append(c)
        mul.append(tuple(out))
    return CayleyTable(tuple(mul))


def cocycle_h2_dim(table: CayleyTable) -> int:
    """dim H^2(G, F2) with trivial action: dim Z^2 - dim B^2.

    Z^2 is cut out of the |G|^2 functions by the cocycle identity
    f(h,k) + f(gh,k) + f(g,hk) + f(g,h) = 0.  B^2 is the image of the
    coboundary map on |G| functions, whose kernel is Hom(G, F2)."""
    m = table.mul
    n = len(m)
    idx = lambda g, h: g * n + h  # noqa: E731
    eqs = F2Echelon()
    for g in range(n):
        for h in range(n):
            for k in range(n):
                v = ((1 << idx(h, k)) ^ (1 << idx(m[g][h], k))
                     ^ (1 << idx(g, m[h][k])) ^ (1 << idx(g, h)))
                eqs.add(v)
    dim_z = n * n - len(eqs)
    # coboundary of phi: (g, h) -> phi(h) + phi(gh) + phi(g)
    image = F2Echelon()
    for x in range(n):
        col = 0
        for g in range(n):
            for h in range(n):
                if (h == x) ^ (m[g][h] == x) ^ (g == x):
                    col |= 1 << idx(g, h)
        image.add(col)
    return dim_z - len(image)
