"""Permutations of tree leaves and stabiliser-chain permutation groups.

A :class:`Perm` is a dense image array.  Composition follows the left action
used everywhere in the package: ``(p * q)(x) = p(q(x))``.

:class:`PermGroup` runs a deterministic Schreier-Sims algorithm.  The base is
not a list of leaves but the list of *left children* of all tree vertices in
breadth-first order.  Any group acting on level ``n`` of the binary tree
also acts on every vertex above, and once a vertex's parent is fixed the
vertex can only move to its sibling, so every basic orbit has length 1 or 2
and the base prefix through level ``m`` cuts out the level stabiliser St(m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class Perm:
    __slots__ = ("images",)

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("a permutation is a one-dimensional image array")
        arr = arr.copy()
        arr.setflags(write=False)
        self.images = arr

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(np.arange(degree))

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Perm":
        p = cls.__new__(cls)
        arr.setflags(write=False)
        p.images = arr
        return p

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def __mul__(self, other: "Perm") -> "Perm":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Perm._wrap(self.images[other.images])

    def inverse(self) -> "Perm":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree)
        return Perm._wrap(inv)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        out = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def is_bijection(self) -> bool:
        return bool(np.array_equal(np.sort(self.images),
                                   np.arange(self.degree)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Perm)
                and np.array_equal(self.images, other.images))

    def __hash__(self) -> int:
        return hash(self.images.tobytes())

    def __repr__(self) -> str:
        return f"Perm({self.to_list()})"

    def to_list(self) -> list[int]:
        return [int(x) for x in self.images]

    def order(self) -> int:
        seen = np.zeros(self.degree, dtype=bool)
        out = 1
        for i in range(self.degree):
            if seen[i]:
                continue
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = int(self.images[j])
                n += 1
            out = np.lcm(out, n)
        return int(out)

    def restrict(self, level: int) -> "Perm":
        """Induced permutation of the vertices at a shallower level."""
        n = self.degree.bit_length() - 1
        if not 0 <= level <= n:
            raise ValueError("level out of range")
        shift = n - level
        firsts = np.arange(1 << level) << shift
        return Perm._wrap(self.images[firsts] >> shift)


def commutator(p: Perm, q: Perm) -> Perm:
    return p.inverse() * q.inverse() * p * q


# --------------------------------------------------------------------------
# stabiliser chains


def vertex_base(level: int) -> list[tuple[int, int]]:
    """Left children of all vertices at levels 1..level, breadth first.

    Each entry is ``(depth, index)`` with ``index`` the binary reading of the
    vertex (first tree letter most significant)."""
    return [(k, v) for k in range(1, level + 1) for v in range(0, 1 << k, 2)]


class PermGroup:
    """Permutation group on the ``2**level`` leaves of a binary tree.

    Generators must preserve the tree structure (map sibling pairs of
    vertices to sibling pairs)."""

    def __init__(self, generators: Iterable[Perm], degree: int | None = None):
        gens = [g for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group with no generators")
            degree = gens[0].degree
        if degree & (degree - 1):
            raise ValueError("degree must be a power of two")
        for g in gens:
            if g.degree != degree:
                raise ValueError("degree mismatch")
        self.degree = degree
        self.level = degree.bit_length() - 1
        self.generators: list[Perm] = gens
        base = vertex_base(self.level)
        self.base = base
        shifts = np.array([self.level - k for k, _ in base], dtype=np.int64)
        self._shifts = shifts
        self._firsts = np.array([v for _, v in base], dtype=np.int64) << shifts
        self._ids = np.array([v for _, v in base], dtype=np.int64)
        self._level_start = {}
        for i, (k, _) in enumerate(base):
            self._level_start.setdefault(k, i)
        nb = len(base)
        # strong generators, the deepest level each one fixes through, and
        # the transversal element swapping base vertex i with its sibling
        self.strong: list[np.ndarray] = []
        self._depth: list[int] = []
        self.trans: list[np.ndarray | None] = [None] * nb
        self.trans_inv: list[np.ndarray | None] = [None] * nb
        self._tested: list[set] = [set() for _ in range(nb)]
        self._identity = np.arange(degree, dtype=np.int64)
        for g in gens:
            self._insert(g.images.copy())

    # ----------------------------------------------------------------- basics

    def _first_moved(self, g: np.ndarray, start: int = 0) -> int:
        """Index of the first base vertex at or after ``start`` moved by g."""
        moved = (g[self._firsts[start:]] >> self._shifts[start:]) != self._ids[start:]
        idx = np.flatnonzero(moved)
        return start + int(idx[0]) if len(idx) else len(self.base)

    def _sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        nb = len(self.base)
        i = self._first_moved(g, start)
        while i < nb:
            t_inv = self.trans_inv[i]
            if t_inv is None:
                return g, i
            g = t_inv[g]
            i = self._first_moved(g, i + 1)
        return g, nb

    def _gens_at(self, i: int) -> list[int]:
        return [j for j, d in enumerate(self._depth) if d >= i]

    def _insert(self, g: np.ndarray) -> bool:
        """Add an element; returns True if the group grew."""
        h, j = self._sift(g)
        if j == len(self.base):
            return False
        self._add_strong(h, j)
        self._schreier_sims(j)
        return True

    def _add_strong(self, h: np.ndarray, j: int):
        h.setflags(write=False)
        self.strong.append(h)
        self._depth.append(j)
        for i in range(j + 1):
            if self.trans[i] is None and self._moves(h, i):
                self.trans[i] = h
                inv = np.empty_like(h)
                inv[h] = self._identity
                inv.setflags(write=False)
                self.trans_inv[i] = inv

    def _moves(self, g: np.ndarray, i: int) -> bool:
        return int(g[self._firsts[i]] >> self._shifts[i]) != int(self._ids[i])

    def _schreier_sims(self, top: int):
        """Complete the chain below and at ``top`` (deterministic)."""
        i = top
        while i >= 0:
            restart = None
            t, t_inv = self.trans[i], self.trans_inv[i]
            if t is not None:
                for j in self._gens_at(i):
                    if j in self._tested[i]:
                        continue
                    s = self.strong[j]
                    if self._moves(s, i):
                        cands = [t_inv[s], s[t]]
                    else:
                        cands = [t_inv[s[t]]]
                    for c in cands:
                        h, k = self._sift(c, i + 1)
                        if k < len(self.base):
                            self._add_strong(h.copy(), k)
                            restart = k
                            break
                    if restart is not None:
                        break
                    self._tested[i].add(j)
            if restart is not None:
                i = restart
            else:
                i -= 1

    # ------------------------------------------------------------------- API

    def order(self) -> int:
        return 2 ** sum(1 for t in self.trans if t is not None)

    def log2_order(self) -> int:
        return sum(1 for t in self.trans if t is not None)

    def contains(self, p: Perm) -> bool:
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        _, j = self._sift(np.asarray(p.images))
        return j == len(self.base)

    def __contains__(self, p: Perm) -> bool:
        return self.contains(p)

    def add_generator(self, p: Perm) -> bool:
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        self.generators.append(p)
        return self._insert(p.images.copy())

    def strong_generators(self) -> list[Perm]:
        return [Perm._wrap(s.copy()) for s in self.strong]

    def level_stabilizer_generators(self, m: int) -> list[Perm]:
        """Strong generators of the pointwise stabiliser of level m."""
        if m >= self.level:
            return []
        start = self._level_start[m + 1]
        return [Perm._wrap(s.copy()) for s, d in zip(self.strong, self._depth)
                if d >= start]

    def level_stabilizer_log2_order(self, m: int) -> int:
        if m >= self.level:
            return 0
        start = self._level_start[m + 1]
        return sum(1 for t in self.trans[start:] if t is not None)

    def chain_signature(self) -> list[tuple[int, list[int]]]:
        """Base indices with nontrivial orbit and their transversal images."""
        return [(i, [int(x) for x in t]) for i, t in enumerate(self.trans)
                if t is not None]

    def sift(self, p: Perm) -> tuple[Perm, int]:
        h, j = self._sift(np.asarray(p.images))
        return Perm._wrap(np.array(h)), j


def membership(group: PermGroup, p: Perm) -> bool:
    return group.contains(p)


def normal_closure(group: PermGroup, elements: Sequence[Perm]) -> PermGroup:
    """Normal closure of ``elements`` inside ``group``."""
    closure = PermGroup([], degree=group.degree)
    queue = list(elements)
    gens = group.generators
    while queue:
        x = queue.pop()
        if closure.add_generator(x):
            for g in gens:
                queue.append(g.inverse() * x * g)
    return closure


def subgroup_generated(degree: int, elements: Iterable[Perm]) -> PermGroup:
    return PermGroup(list(elements), degree=degree)


@dataclass(frozen=True)
class KernelData:
    level: int
    log2_order: int
    elementary_abelian: bool

    @property
    def order(self) -> int:
        return 2 ** self.log2_order


@dataclass(frozen=True)
class BranchSubgroupData:
    level: int
    log2_index: int
    st3_in_K: bool

    @property
    def K_index(self) -> int:
        return 2 ** self.log2_index
