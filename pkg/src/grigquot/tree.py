"""The action of a, b, c, d on the binary rooted tree.

Conventions:

* left action, letters of a word act right to left: ``(xy)(v) = x(y(v))``;
* sections compose as ``(fg)_v = f_{g(v)} g_v``;
* a vertex is a string over ``"01"``; leaf index = binary reading, first
  tree letter most significant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .perms import Perm
from .words import ABCD, FreeWord, free_reduce, letter_id, reduce_involutive

MAX_LEVEL = 20

_A, _B, _C, _D = (letter_id(ch) for ch in "abcd")

# generator -> (section at 0, section at 1, swaps the root's children);
# sections are generator ids, 0 for the identity
WREATH_TABLE = {
    _A: (0, 0, True),
    _B: (_A, _C, False),
    _C: (_A, _D, False),
    _D: (0, _B, False),
}


def _check(w: FreeWord):
    if not set(w.alphabet) <= set(ABCD):
        raise ValueError(f"tree action needs a word over abcd, got {w.alphabet!r}")


def _act_gen(g: int, bits: list[int]) -> list[int]:
    out = []
    cur = g
    for x in bits:
        if cur == 0:
            out.append(x)
            continue
        s0, s1, swap = WREATH_TABLE[cur]
        out.append(x ^ 1 if swap else x)
        cur = s0 if x == 0 else s1
    return out


def act(w: FreeWord, v: str) -> str:
    """Image of vertex ``v`` under the automorphism ``w``."""
    _check(w)
    bits = [int(ch) for ch in v]
    for x in reversed(w.letters):
        bits = _act_gen(abs(x), bits)
    return "".join(map(str, bits))


def _gen_section(g: int, bits: list[int]) -> int:
    cur = g
    for x in bits:
        if cur == 0:
            break
        s0, s1, _ = WREATH_TABLE[cur]
        cur = s0 if x == 0 else s1
    return cur


def section(w: FreeWord, v: str) -> FreeWord:
    """The section word of ``w`` at ``v``, freely reduced."""
    _check(w)
    bits = [int(ch) for ch in v]
    parts: list[int] = []
    for x in reversed(w.letters):
        s = _gen_section(abs(x), bits)
        if s:
            # generators are involutions on the tree, so the section of x^-1
            # is the inverse of the section of x at the same vertex
            parts.append(s if x > 0 else -s)
        bits = _act_gen(abs(x), bits)
    parts.reverse()
    return free_reduce(FreeWord(tuple(parts), ABCD))


@lru_cache(maxsize=None)
def _gen_perm(g: int, n: int) -> np.ndarray:
    if n == 0 or g == 0:
        return np.arange(1 << n, dtype=np.int64)
    s0, s1, swap = WREATH_TABLE[g]
    half = 1 << (n - 1)
    lo = _gen_perm(s0, n - 1)
    hi = _gen_perm(s1, n - 1)
    out = np.empty(1 << n, dtype=np.int64)
    if swap:
        out[:half] = lo + half
        out[half:] = hi
    else:
        out[:half] = lo
        out[half:] = hi + half
    out.setflags(write=False)
    return out


def generator_perm(ch: str, n: int) -> Perm:
    return Perm(_gen_perm(letter_id(ch), n))


def level_perm_array(w: FreeWord, n: int) -> np.ndarray:
    _check(w)
    if n < 0 or n > MAX_LEVEL:
        raise ValueError(f"level {n} outside 0..{MAX_LEVEL}")
    p = np.arange(1 << n, dtype=np.int64)
    gens = {g: _gen_perm(g, n) for g in (_A, _B, _C, _D)}
    for x in w.letters:
        p = p[gens[abs(x)]]
    return p


def level_perm(w: FreeWord, n: int, max_level: int = MAX_LEVEL) -> Perm:
    """Permutation of the 2**n level-n vertices induced by ``w``."""
    if n > max_level:
        raise ValueError(f"level {n} exceeds configured maximum {max_level}")
    if n < 1:
        raise ValueError("level must be >= 1")
    return Perm._wrap(level_perm_array(w, n))


def is_identity_at(w: FreeWord, n: int) -> bool:
    p = level_perm_array(w, n)
    return bool(np.array_equal(p, np.arange(1 << n)))


@dataclass
class TraceNode:
    word: str
    moves_level1: bool
    children: list["TraceNode"] = field(default_factory=list)
    verdict: bool = True

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def to_dict(self) -> dict:
        return {"word": self.word, "moves_level1": self.moves_level1,
                "verdict": self.verdict,
                "children": [c.to_dict() for c in self.children]}


@dataclass
class BranchCertificate:
    verdict: bool
    trace: TraceNode
    witness_level: int | None = None

    @property
    def depth(self) -> int:
        return self.trace.depth()


# level at which a nucleus element is first seen to act nontrivially
_NUCLEUS_WITNESS = {_A: 1, _B: 2, _C: 2, _D: 3}


def is_trivial_g(w: FreeWord) -> BranchCertificate:
    """Decide ``w == 1`` in the group by the branch algorithm."""
    _check(w)
    witness: list[int] = []

    def visit(u: FreeWord, depth: int) -> TraceNode:
        r = reduce_involutive(u)
        odd = r.count("a") % 2 == 1
        node = TraceNode(str(r), odd)
        if len(r) <= 1:
            node.verdict = len(r) == 0
            if not node.verdict:
                witness.append(depth + _NUCLEUS_WITNESS[abs(r.letters[0])])
            return node
        if odd:
            node.verdict = False
            witness.append(depth + 1)
            return node
        for bit in "01":
            child = visit(section(r, bit), depth + 1)
            node.children.append(child)
            if not child.verdict:
                node.verdict = False
                break
        return node

    root = visit(w, 0)
    return BranchCertificate(root.verdict, root,
                             None if root.verdict else witness[0])


def nucleus_depth(w: FreeWord) -> int:
    """Least k with every level-k section reducing into {1, a, b, c, d}."""
    _check(w)
    current = [reduce_involutive(w)]
    k = 0
    while any(len(u) > 1 for u in current):
        current = [reduce_involutive(section(u, bit))
                   for u in current for bit in "01"]
        k += 1
    return k


def orbit_of_leaf(n: int, leaf: int = 0) -> set[int]:
    gens = [_gen_perm(g, n) for g in (_A, _B, _C, _D)]
    seen = {leaf}
    todo = [leaf]
    while todo:
        x = todo.pop()
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def vertex_index(v: str) -> int:
    return int(v, 2) if v else 0


def vertex_string(index: int, level: int) -> str:
    return format(index, f"0{level}b") if level else ""
