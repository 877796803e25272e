"""2-quotients, 2-covers and multiplicator data.

A finite 2-group is held as a power-commutator presentation on generators
``g_0 .. g_{k-1}``, each of relative order 2:

* ``g_i^2 = power[i]``            (a normal word in generators > i)
* ``[g_j, g_i] = comm[j][i]``    (j > i, a normal word in generators > j)

with ``[x, y] = x^-1 y^-1 x y``.  A normal word is a bitmask (bit i set when
g_i occurs).  The 2-cover adds a central elementary abelian *tail* to every
relation that does not define a generator, enforces the consistency checks
and reads off the multiplicator as the surviving tail space.  Tails are a
second bitmask carried alongside the exponent mask, so collection never
treats them as ordinary generators.

The 2-quotient algorithm starts from the trivial group and repeatedly forms
the cover and factors out the relator images, one layer of the lower
exponent-2 central series per step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cosets import PresentationFP
from .words import FreeWord, letter_id


def _bits(x: int):
    """Indices of set bits, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# --------------------------------------------------------------------------
# collection


class Collector:
    """Collection from the left in a pc presentation with central tails.

    ``power[i]`` and ``comm[j][i]`` are pairs ``(word_mask, tail_mask)``."""

    def __init__(self, k: int, power: list[tuple[int, int]],
                 comm: list[list[tuple[int, int]]]):
        self.k = k
        self.power = power
        self.comm = comm
        self._inv_cache: dict[int, tuple[int, int]] = {}

    def mul_gen(self, e: int, t: int, i: int) -> tuple[int, int]:
        power, comm = self.power, self.comm
        stack = [i]
        while stack:
            i = stack.pop()
            above = e >> (i + 1)
            if above:
                high = above << (i + 1)
                e ^= high
                seq: list[int] = []
                row = comm
                for j in _bits(high):
                    w, tt = row[j][i]
                    t ^= tt
                    seq.append(j)
                    seq.extend(_bits(w))
                seq.reverse()
                stack.extend(seq)
            if (e >> i) & 1:
                e ^= 1 << i
                w, tt = power[i]
                t ^= tt
                e |= w
            else:
                e |= 1 << i
        return e, t

    def mul_word(self, e: int, t: int, w: int) -> tuple[int, int]:
        for i in _bits(w):
            e, t = self.mul_gen(e, t, i)
        return e, t

    def mul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        e, t = self.mul_word(x[0], x[1], y[0])
        return e, t ^ y[1]

    def mul_balanced(self, gens: Sequence[int]) -> tuple[int, int]:
        """Product of a generator sequence, associated as a balanced tree."""
        if not gens:
            return 0, 0
        if len(gens) == 1:
            return self.mul_gen(0, 0, gens[0])
        mid = len(gens) // 2
        return self.mul(self.mul_balanced(gens[:mid]),
                        self.mul_balanced(gens[mid:]))

    def mul_left(self, gens: Sequence[int]) -> tuple[int, int]:
        e, t = 0, 0
        for i in gens:
            e, t = self.mul_gen(e, t, i)
        return e, t

    def inverse(self, x: tuple[int, int]) -> tuple[int, int]:
        e, t = x
        ye, yt = 0, 0
        while e:
            i = (e & -e).bit_length() - 1
            e, t = self.mul_gen(e, t, i)
            ye, yt = self.mul_gen(ye, yt, i)
        # x * y is now the pure tail t, so x^-1 = y * t (tails have order 2)
        return ye, yt ^ t

    def gen_inverse(self, i: int) -> tuple[int, int]:
        if i not in self._inv_cache:
            self._inv_cache[i] = self.inverse((1 << i, 0))
        return self._inv_cache[i]


# --------------------------------------------------------------------------
# presentations


@dataclass
class PcPresentation:
    """Consistent pc presentation of a finite 2-group.

    ``images[l]`` is the normal word of the l-th presentation generator;
    ``definitions[m]`` records how pc generator m was introduced:
    ``("image", l)``, ``("power", i)`` or ``("comm", j, i)``."""

    k: int
    power: list[int]
    comm: list[list[int]]
    weights: list[int]
    definitions: list[tuple]
    images: list[int]
    generator_names: str

    @property
    def order(self) -> int:
        return 2 ** self.k

    @property
    def log2_order(self) -> int:
        return self.k

    @property
    def pclass(self) -> int:
        return max(self.weights, default=0)

    def collector(self) -> Collector:
        return Collector(self.k, [(w, 0) for w in self.power],
                         [[(w, 0) for w in row] for row in self.comm])

    def rank_d(self) -> int:
        """d(G): number of weight-1 generators."""
        return sum(1 for w in self.weights if w == 1)


@dataclass
class PCover:
    """2-cover of a pc presentation relative to a generating set.

    The tail space has one coordinate per non-defining relation (plus one
    per presentation generator whose image is not a definition).  The
    consistency relations cut it down to the multiplicator, of dimension
    ``m_star``."""

    pc: PcPresentation
    collector: Collector = field(repr=False)
    tail_labels: list[tuple]
    consistency: "_RREF" = field(repr=False)
    images: list[tuple[int, int]] = field(repr=False)
    generator_names: str = ""

    @property
    def ntails(self) -> int:
        return len(self.tail_labels)

    @property
    def m_star(self) -> int:
        return self.ntails - self.consistency.rank

    def reduce_tail(self, t: int) -> int:
        return self.consistency.reduce(t)

    def evaluate(self, w: FreeWord) -> tuple[int, int]:
        """Image of a word in the cover (exponent mask, reduced tail mask)."""
        col = self.collector
        index = {letter_id(ch): l for l, ch in enumerate(self.generator_names)}
        e, t = 0, 0
        for x in w.letters:
            l = index[abs(x)]
            img = self.images[l] if x > 0 else self._inv_image(l)
            e, t = col.mul_word(e, t, img[0])
            t ^= img[1]
        return e, self.reduce_tail(t)

    def _inv_image(self, l: int) -> tuple[int, int]:
        cache = self.__dict__.setdefault("_inv_images", {})
        if l not in cache:
            cache[l] = self.collector.inverse(self.images[l])
        return cache[l]


class _RREF:
    """Reduced row echelon form over F2 on bitmask rows, pivot = highest bit."""

    def __init__(self):
        self.rows: dict[int, int] = {}  # pivot bit -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: int) -> int:
        out = 0
        rows = self.rows
        while v:
            top = v.bit_length() - 1
            r = rows.get(top)
            if r is None:
                out |= 1 << top
                v ^= 1 << top
            else:
                v ^= r
        return out

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        top = v.bit_length() - 1
        for p, r in list(self.rows.items()):
            if (r >> top) & 1:
                self.rows[p] = r ^ v
        self.rows[top] = v
        return True

    def free_bits(self, n: int) -> list[int]:
        return [b for b in range(n) if b not in self.rows]


# --------------------------------------------------------------------------
# covers


def build_cover(pc: PcPresentation, generator_names: str | None = None,
                image_words: Sequence[int] | None = None) -> PCover:
    """Tails on all non-defining relations, then the consistency checks.

    ``image_words`` replaces the presentation images by the given pc
    generators, each of which is then treated as defining."""
    k = pc.k
    names = pc.generator_names if generator_names is None else generator_names
    images = list(pc.images if image_words is None else image_words)
    defining = set(pc.definitions)
    labels: list[tuple] = []
    img_pairs = []
    for l, w in enumerate(images):
        if image_words is not None or ("image", l) in defining:
            img_pairs.append((w, 0))
        else:
            img_pairs.append((w, 1 << len(labels)))
            labels.append(("image", l))
    power = []
    for i in range(k):
        if ("power", i) in defining:
            power.append((pc.power[i], 0))
        else:
            power.append((pc.power[i], 1 << len(labels)))
            labels.append(("power", i))
    comm: list[list[tuple[int, int]]] = [[(0, 0)] * k for _ in range(k)]
    for j in range(k):
        for i in range(j):
            if ("comm", j, i) in defining:
                comm[j][i] = (pc.comm[j][i], 0)
            else:
                comm[j][i] = (pc.comm[j][i], 1 << len(labels))
                labels.append(("comm", j, i))
    col = Collector(k, power, comm)
    rref = _RREF()
    for diff in consistency_differences(col):
        rref.add(diff)
    return PCover(pc, col, labels, rref, img_pairs, names)


def consistency_differences(col: Collector):
    """Tail differences of the standard associativity checks.

    Raises if two associations disagree outside the tails, which would mean
    the underlying presentation is itself inconsistent."""
    k = col.k
    g = [(1 << i, 0) for i in range(k)]

    def check(x, y, what):
        if x[0] != y[0]:
            raise AssertionError(f"inconsistent pc presentation at {what}")
        return x[1] ^ y[1]

    m = col.mul
    for c in range(k):
        for b in range(c):
            for a in range(b):
                d = check(m(m(g[c], g[b]), g[a]), m(g[c], m(g[b], g[a])),
                          ("triple", c, b, a))
                if d:
                    yield d
    for j in range(k):
        for i in range(j):
            sq_j = m(g[j], g[j])
            d = check(m(sq_j, g[i]), m(g[j], m(g[j], g[i])), ("jji", j, i))
            if d:
                yield d
            sq_i = m(g[i], g[i])
            d = check(m(g[j], sq_i), m(m(g[j], g[i]), g[i]), ("jii", j, i))
            if d:
                yield d
    for i in range(k):
        sq = m(g[i], g[i])
        d = check(m(sq, g[i]), m(g[i], sq), ("iii", i))
        if d:
            yield d


def p_cover(pc: PcPresentation, presentation: PresentationFP | None = None) -> PCover:
    """2-cover of ``pc`` relative to the generators of ``presentation``.

    With no presentation the pc group's own weight-1 generators are used,
    which is a minimal generating set, so ``m_star = dim H^2(G, F2)``."""
    if presentation is None:
        own = [1 << m for m in range(pc.k) if pc.weights[m] == 1]
        names = "".join(chr(ord("a") + i) for i in range(len(own)))
        return build_cover(pc, names, own)
    if presentation.generators != pc.generator_names:
        raise ValueError("presentation generators differ from the pc images")
    return build_cover(pc)


def relator_images(p: PresentationFP, cover: PCover) -> list[int]:
    """Multiplicator coordinates (tail masks) of each relator."""
    out = []
    for r in p.relators:
        e, t = cover.evaluate(r)
        if e:
            raise AssertionError(f"relator {r} is nontrivial in the quotient")
        out.append(t)
    return out


def f2_rank_masks(rows: Sequence[int]) -> int:
    r = _RREF()
    for v in rows:
        r.add(v)
    return r.rank


# --------------------------------------------------------------------------
# the 2-quotient algorithm


class ClassLimitReached(RuntimeError):
    pass


def _trivial_pc(names: str) -> PcPresentation:
    return PcPresentation(0, [], [], [], [], [0] * len(names), names)


def _next_layer(pc: PcPresentation, p: PresentationFP) -> tuple[PcPresentation, int]:
    cover = build_cover(pc)
    rref = cover.consistency
    # relator images (their pc part is trivial because pc is a quotient)
    for r in p.relators:
        e, t = _evaluate_raw(cover, r)
        if e:
            raise AssertionError(f"relator {r} nontrivial in the current quotient")
        rref.add(t)
    n = cover.ntails
    free = rref.free_bits(n)
    r = len(free)
    if r == 0:
        return pc, 0
    k = pc.k
    pos = {b: k + idx for idx, b in enumerate(free)}

    def lift(word: int, tail: int) -> int:
        red = 0
        # express tail in terms of free tails
        t = tail
        while t:
            top = t.bit_length() - 1
            row = rref.rows.get(top)
            if row is None:
                red ^= 1 << top
                t ^= 1 << top
            else:
                t ^= row
        out = word
        for b in _bits(red):
            out |= 1 << pos[b]
        return out

    col = cover.collector
    power = [lift(w, t) for (w, t) in col.power] + [0] * r
    comm = [[0] * (k + r) for _ in range(k + r)]
    for j in range(k):
        for i in range(j):
            w, t = col.comm[j][i]
            comm[j][i] = lift(w, t)
    images = [lift(w, t) for (w, t) in cover.images]
    defs = list(pc.definitions) + [cover.tail_labels[b] for b in free]
    w = pc.pclass + 1
    weights = list(pc.weights) + [w] * r
    return PcPresentation(k + r, power, comm, weights, defs, images,
                          pc.generator_names), r


def _evaluate_raw(cover: PCover, w: FreeWord) -> tuple[int, int]:
    col = cover.collector
    index = {letter_id(ch): l for l, ch in enumerate(cover.generator_names)}
    e, t = 0, 0
    inv: dict[int, tuple[int, int]] = {}
    for x in w.letters:
        l = index[abs(x)]
        if x > 0:
            img = cover.images[l]
        else:
            if l not in inv:
                inv[l] = col.inverse(cover.images[l])
            img = inv[l]
        e, t = col.mul_word(e, t, img[0])
        t ^= img[1]
    return e, t


@dataclass
class QuotientResult:
    pc: PcPresentation
    complete: bool  # True when the 2-quotient stabilised below the class cap
    layers: list[int]


def pquotient(p: PresentationFP, max_class: int = 64) -> QuotientResult:
    """Largest 2-quotient of exponent-2 class at most ``max_class``."""
    if max_class < 1:
        raise ValueError("max_class must be >= 1")
    pc = _trivial_pc(p.generators)
    layers = []
    for _ in range(max_class):
        pc, r = _next_layer(pc, p)
        if r == 0:
            return QuotientResult(pc, True, layers)
        layers.append(r)
    # one more step decides whether the class cap was binding
    _, r = _next_layer(pc, p)
    return QuotientResult(pc, r == 0, layers)


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class MultiplierReport:
    n: int
    order_log2: int
    h2_dim: int
    schur_mod2_rank: int
    def_lower: int
    def_upper: int
    relator_rank: int
    relators: int
    relators_independent: bool
    certificate: str = "rank-only"

    def as_dict(self) -> dict:
        return {"h2_dim": self.h2_dim, "schur_mod2_rank": self.schur_mod2_rank,
                "def_lower": self.def_lower, "def_upper": self.def_upper,
                "relators_independent": self.relators_independent,
                "relator_rank": self.relator_rank, "order_log2": self.order_log2}


def multiplier_report(n: int, family: str = "thm4") -> MultiplierReport:
    from .words import relator_family
    p = PresentationFP.from_family(relator_family(family, n))
    q = pquotient(p)
    if not q.complete:
        raise ClassLimitReached("2-quotient did not stabilise")
    cover = p_cover(q.pc, p)
    rows = relator_images(p, cover)
    rank = f2_rank_masks(rows)
    d = len(p.generators)
    m = cover.m_star
    return MultiplierReport(n, q.pc.k, m, m - d, m - d, len(rows) - d, rank,
                            len(rows), rank == len(rows))
