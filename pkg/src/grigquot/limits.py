"""Kernels of the maps G_(n+k) -> G_n, their invariant homomorphisms, and
the direct-limit index calculator."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .linalg import F2Echelon
from .perms import Perm, PermGroup, commutator, normal_closure
from .quotients import quotient_group

MAX_TOTAL_LEVEL = 6


def _check_grid(n: int, k: int):
    if n < 3 or k < 1:
        raise ValueError("need n >= 3 and k >= 1")
    if n + k > MAX_TOTAL_LEVEL:
        raise ValueError(f"n + k = {n + k} exceeds the degree cap {MAX_TOTAL_LEVEL}")


def kernel_generators(n: int, k: int) -> list[Perm]:
    """Generators of the image of St(n) in G_(n+k)."""
    return quotient_group(n + k).level_stabilizer_generators(n)


def coinvariant_subgroup(group: PermGroup, kernel: Sequence[Perm]) -> PermGroup:
    """Normal closure of the squares of ``kernel`` and of [kernel, group]."""
    seeds = [x * x for x in kernel]
    seeds += [commutator(x, g) for x in kernel for g in group.generators]
    return normal_closure(group, seeds)


def invariant_hom_dim(n: int, k: int) -> int:
    """dim Hom(Ker, F2)^(G_n) for Ker = ker(G_(n+k) -> G_n).

    Equal to log2 |Ker / Ker^2 [Ker, G_(n+k)]|, computed in the permutation
    group G_(n+k)."""
    _check_grid(n, k)
    g = quotient_group(n + k)
    ker = kernel_generators(n, k)
    log_ker = g.level_stabilizer_log2_order(n)
    sub = coinvariant_subgroup(g, ker)
    return log_ker - sub.log2_order()


def swap_vector(p: Perm, n: int) -> int:
    """For an element fixing level n, the level-n vertices whose two children
    it swaps, as a bitmask."""
    n_total = p.degree.bit_length() - 1
    shift = n_total - n - 1
    firsts = np.arange(1 << n) << (n_total - n)
    children = p.images[firsts] >> shift
    swaps = (children & 1).astype(bool)
    out = 0
    for v in np.flatnonzero(swaps):
        out |= 1 << int(v)
    return out


def invariant_hom_dim_swap_oracle(n: int) -> int:
    """k = 1 only: coinvariants of the swap-pattern module by dense F2
    elimination, independent of the stabiliser-chain code."""
    _check_grid(n, 1)
    g = quotient_group(n + 1)
    basis = F2Echelon()
    vecs = []
    for x in kernel_generators(n, 1):
        v = swap_vector(x, n)
        if basis.add(v):
            vecs.append(v)
    dim_v = len(basis)
    # G acts on level-n vertices through its image there
    moves = [h.restrict(n) for h in g.generators]
    sub = F2Echelon()
    for v in vecs:
        for m in moves:
            w = 0
            for i in range(1 << n):
                if (v >> i) & 1:
                    w |= 1 << m(i)
            sub.add(w ^ v)
    return dim_v - len(sub)


def st3_frattini_dim(level: int = 6) -> int:
    """d(S) for S the image of St(3) in G_level: log2 |S / S^2 [S, S]|."""
    g = quotient_group(level)
    gens = g.level_stabilizer_generators(3)
    s = PermGroup(list(gens), degree=g.degree)
    seeds = [x * x for x in gens]
    seeds += [commutator(x, y) for i, x in enumerate(gens) for y in gens[i + 1:]]
    phi = normal_closure(s, seeds)
    return s.log2_order() - phi.log2_order()


# --------------------------------------------------------------------------
# direct limit calculator


@dataclass(frozen=True)
class LimitSystem:
    """Dimensions dim(G_i) at indices ``start, start+1, ...`` and a uniform
    bound N on the dimensions of the kernels of the direct-system maps."""

    dims: tuple[int, ...]
    kernel_bound: int
    start: int = 0

    def __post_init__(self):
        if self.kernel_bound < 0:
            raise ValueError("kernel bound must be >= 0")
        if any(b < a for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError("dims must be non-decreasing")

    @classmethod
    def from_formula(cls, f: Callable[[int], int], start: int, stop: int,
                     kernel_bound: int) -> "LimitSystem":
        return cls(tuple(f(i) for i in range(start, stop)), kernel_bound, start)


class SequenceExhausted(ValueError):
    pass


def limit_bound(system: LimitSystem, M: int) -> int:
    """Least index i with dims[i] > N * M (binary search on monotone dims)."""
    target = system.kernel_bound * M
    pos = bisect_right(system.dims, target)
    if pos == len(system.dims):
        raise SequenceExhausted(
            f"no dimension exceeds {target} within {len(system.dims)} terms")
    return system.start + pos


def limit_bound_scan(system: LimitSystem, M: int) -> int:
    """Linear-scan reference for :func:`limit_bound`."""
    target = system.kernel_bound * M
    for i, d in enumerate(system.dims):
        if d > target:
            return system.start + i
    raise SequenceExhausted("sequence exhausted")


def h2_formula(n: int) -> int:
    return 2 * n + 1
