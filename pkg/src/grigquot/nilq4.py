"""Class-4 free metabelian quotient of F(a, b, c, d) and the groups Q_n.

Collection is done through the Magnus embedding of the free metabelian
group: a word ``g`` goes to its abelianisation ``alpha`` together with its
four Fox derivatives, reduced to the group ring of Z^4.  Writing
``t_i = 1 + y_i``, a commutator of weight k has Fox derivatives in the k-1st
power of the augmentation ideal, so truncating every polynomial at total
y-degree 3 gives a faithful image of ``F / (gamma_5(F) F'')``.  All
arithmetic is over exact integers.

Coordinates on ``F'`` are taken in the left-normed basic commutators
``[x_i1, x_i2, ..., x_ik]`` with ``i1 > i2 <= i3 <= ... <= ik`` and
a < b < c < d, ordered by weight and then lexicographically by index
tuple.  Weight 2, 3, 4 contribute 6, 20, 45 elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Sequence

from .linalg import FiniteAbelian, hnf_rows
from .words import ABCD, FreeWord, commutator, left_normed, letter_id, relator_family

NGENS = 4
MAX_WEIGHT = 4
DEGREE = MAX_WEIGHT - 1

# monomials y^e of total degree <= DEGREE, ordered by degree then lex
MONOMIALS: list[tuple[int, ...]] = sorted(
    (e for e in product(range(DEGREE + 1), repeat=NGENS) if sum(e) <= DEGREE),
    key=lambda e: (sum(e), tuple(-x for x in e)))
_MON_INDEX = {e: i for i, e in enumerate(MONOMIALS)}
NMON = len(MONOMIALS)
_MUL = [(i, j, _MON_INDEX[tuple(x + y for x, y in zip(ei, ej))])
        for i, ei in enumerate(MONOMIALS) for j, ej in enumerate(MONOMIALS)
        if sum(ei) + sum(ej) <= DEGREE]


def _gbinom(a: int, k: int) -> int:
    """Generalised binomial coefficient C(a, k) for any integer a."""
    if a >= 0:
        return comb(a, k)
    num = 1
    for i in range(k):
        num *= a - i
    return num // factorial(k)


@lru_cache(maxsize=1 << 16)
def t_power(alpha: tuple[int, ...]) -> tuple[int, ...]:
    """Coefficients of prod_i (1 + y_i)^alpha_i up to degree 3."""
    return tuple(
        _gbinom(alpha[0], e[0]) * _gbinom(alpha[1], e[1])
        * _gbinom(alpha[2], e[2]) * _gbinom(alpha[3], e[3])
        for e in MONOMIALS)


def poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * NMON
    for i, j, k in _MUL:
        if p[i] and q[j]:
            out[k] += p[i] * q[j]
    return out


@dataclass(frozen=True)
class MagnusImage:
    """(abelianisation, Fox derivatives) of an element, truncated."""

    alpha: tuple[int, ...]
    fox: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls) -> "MagnusImage":
        return cls((0,) * NGENS, tuple((0,) * NMON for _ in range(NGENS)))

    def __mul__(self, other: "MagnusImage") -> "MagnusImage":
        tp = t_power(self.alpha)
        fox = tuple(
            tuple(x + y for x, y in zip(m, poly_mul(tp, n)))
            for m, n in zip(self.fox, other.fox))
        alpha = tuple(x + y for x, y in zip(self.alpha, other.alpha))
        return MagnusImage(alpha, fox)

    def inverse(self) -> "MagnusImage":
        neg = tuple(-x for x in self.alpha)
        tp = t_power(neg)
        fox = tuple(tuple(-x for x in poly_mul(tp, m)) for m in self.fox)
        return MagnusImage(neg, fox)

    def is_identity(self) -> bool:
        return not any(self.alpha) and not any(any(m) for m in self.fox)

    def flat(self) -> list[int]:
        return [x for m in self.fox for x in m]


def magnus(w: FreeWord) -> MagnusImage:
    """Truncated Magnus image of a word over abcd."""
    if not set(w.alphabet) <= set(ABCD):
        raise ValueError("nilq4 works over the alphabet abcd")
    alpha = [0] * NGENS
    # group the contributions t^alpha by (generator, alpha) before evaluating
    acc: dict[tuple[int, tuple[int, ...]], int] = {}
    for x in w.letters:
        j = abs(x) - 1
        if x > 0:
            key = (j, tuple(alpha))
            acc[key] = acc.get(key, 0) + 1
            alpha[j] += 1
        else:
            alpha[j] -= 1
            key = (j, tuple(alpha))
            acc[key] = acc.get(key, 0) - 1
    fox = [[0] * NMON for _ in range(NGENS)]
    for (j, a), mult in acc.items():
        if mult:
            row = fox[j]
            for k, c in enumerate(t_power(a)):
                row[k] += mult * c
    return MagnusImage(tuple(alpha), tuple(tuple(r) for r in fox))


# --------------------------------------------------------------------------
# basis of F' / gamma_5 F''


def _basic_index_tuples() -> list[tuple[int, ...]]:
    out = []
    for k in range(2, MAX_WEIGHT + 1):
        tuples = []
        for t in product(range(NGENS), repeat=k):
            if t[0] > t[1] and all(t[i] <= t[i + 1] for i in range(1, k - 1)):
                tuples.append(t)
        out.extend(sorted(tuples))
    return out


@dataclass(frozen=True)
class HallBasis:
    """Basic commutators of weight 2..4 (weight-1 letters are implicit)."""

    tuples: tuple[tuple[int, ...], ...]

    @classmethod
    def standard(cls) -> "HallBasis":
        return cls(tuple(_basic_index_tuples()))

    def __len__(self) -> int:
        return len(self.tuples)

    def weight(self, i: int) -> int:
        return len(self.tuples[i])

    def sizes(self) -> dict[int, int]:
        out = {1: NGENS}
        for t in self.tuples:
            out[len(t)] = out.get(len(t), 0) + 1
        return out

    def label(self, i: int) -> str:
        return "[" + ",".join(ABCD[j] for j in self.tuples[i]) + "]"

    def word(self, i: int) -> FreeWord:
        return left_normed(*(FreeWord((j + 1,), ABCD) for j in self.tuples[i]))

    def index_of(self, label: str) -> int:
        for i in range(len(self.tuples)):
            if self.label(i) == label:
                return i
        raise KeyError(label)


class _Solver:
    """Integer coordinates of Magnus images of F' elements in the basis."""

    def __init__(self, basis: HallBasis):
        self.basis = basis
        cols = [magnus(basis.word(i)).flat() for i in range(len(basis))]
        self.columns = cols
        nb, nrow = len(cols), len(cols[0])
        # Gaussian elimination over Q on the transposed system to pick pivot rows
        rows = [[Fraction(cols[j][r]) for j in range(nb)] for r in range(nrow)]
        pivots_rows: list[int] = []
        echelon: list[list[Fraction]] = []
        lead_cols: list[int] = []
        for r in range(nrow):
            v = rows[r][:]
            for e, lc in zip(echelon, lead_cols):
                if v[lc]:
                    f = v[lc] / e[lc]
                    v = [x - f * y for x, y in zip(v, e)]
            lead = next((j for j in range(nb) if v[j]), None)
            if lead is not None:
                echelon.append(v)
                lead_cols.append(lead)
                pivots_rows.append(r)
            if len(pivots_rows) == nb:
                break
        if len(pivots_rows) != nb:
            raise AssertionError("basic commutators are not independent")
        self.pivot_rows = pivots_rows
        square = [[Fraction(cols[j][r]) for j in range(nb)] for r in pivots_rows]
        inv = _invert(square)
        den = 1
        for row in inv:
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
        self.den = den
        self.inverse = [[int(x * den) for x in row] for row in inv]

    def coords(self, img: MagnusImage, check: bool = True) -> list[int]:
        if any(img.alpha):
            raise ValueError("element is not in the derived subgroup")
        flat = img.flat()
        b = [flat[r] for r in self.pivot_rows]
        out = []
        for row in self.inverse:
            s = sum(x * y for x, y in zip(row, b))
            q, rem = divmod(s, self.den)
            if rem:
                raise AssertionError("non-integral commutator coordinates")
            out.append(q)
        if check:
            for r in range(len(flat)):
                if sum(c[r] * x for c, x in zip(self.columns, out)) != flat[r]:
                    raise AssertionError("Magnus image outside the basis span")
        return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


@lru_cache(maxsize=1)
def _solver() -> _Solver:
    return _Solver(HallBasis.standard())


def hall_basis() -> HallBasis:
    return _solver().basis


# --------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class NilElement:
    """``a^x1 b^x2 c^x3 d^x4 * prod_e e^(coords_e)`` in F / gamma_5 F''."""

    alpha: tuple[int, ...]
    coords: tuple[int, ...]

    @classmethod
    def from_magnus(cls, img: MagnusImage) -> "NilElement":
        prefix = magnus(_letter_prefix(img.alpha))
        rest = prefix.inverse() * img
        return cls(img.alpha, tuple(_solver().coords(rest)))

    def magnus(self) -> MagnusImage:
        acc = magnus(_letter_prefix(self.alpha))
        for w, k in zip(_BASIS_IMAGES(), self.coords):
            if k:
                acc = acc * _power(w, k)
        return acc

    def __mul__(self, other: "NilElement") -> "NilElement":
        return NilElement.from_magnus(self.magnus() * other.magnus())

    def inverse(self) -> "NilElement":
        return NilElement.from_magnus(self.magnus().inverse())

    def is_identity(self) -> bool:
        return not any(self.alpha) and not any(self.coords)

    def weight_part(self, k: int) -> dict[str, int]:
        basis = hall_basis()
        return {basis.label(i): c for i, c in enumerate(self.coords)
                if c and basis.weight(i) == k}


def _letter_prefix(alpha: Sequence[int]) -> FreeWord:
    letters: list[int] = []
    for j, k in enumerate(alpha):
        letters.extend([j + 1 if k > 0 else -(j + 1)] * abs(k))
    return FreeWord(tuple(letters), ABCD)


@lru_cache(maxsize=1)
def _BASIS_IMAGES() -> tuple[MagnusImage, ...]:
    basis = hall_basis()
    return tuple(magnus(basis.word(i)) for i in range(len(basis)))


def _power(x: MagnusImage, k: int) -> MagnusImage:
    if k < 0:
        x, k = x.inverse(), -k
    out = MagnusImage.identity()
    while k:
        if k & 1:
            out = out * x
        x = x * x
        k >>= 1
    return out


def collect(w: FreeWord) -> NilElement:
    """Normal form of ``w`` in F / gamma_5(F) F''."""
    return NilElement.from_magnus(magnus(w.with_alphabet(ABCD)))


def derived_coords(w: FreeWord) -> list[int]:
    """Basis coordinates of a word in F' (exponent sums all zero)."""
    if any(w.with_alphabet(ABCD).exponent_sums(ABCD)):
        raise ValueError(f"{w} is not in the derived subgroup")
    return _solver().coords(magnus(w.with_alphabet(ABCD)))


@lru_cache(maxsize=1)
def conjugation_matrices() -> dict[str, list[list[int]]]:
    """``C_y[i]`` = coordinates of ``y^-1 e_i y`` for each basis element e_i."""
    basis = hall_basis()
    out = {}
    for ch in ABCD:
        y = FreeWord((letter_id(ch),), ABCD)
        out[ch] = [derived_coords(y.inverse() * basis.word(i) * y)
                   for i in range(len(basis))]
    return out


def _apply(mat: list[list[int]], v: Sequence[int]) -> list[int]:
    n = len(v)
    out = [0] * n
    for i, x in enumerate(v):
        if x:
            row = mat[i]
            for j in range(n):
                if row[j]:
                    out[j] += x * row[j]
    return out


# --------------------------------------------------------------------------
# Q_n


@dataclass
class QnGroup:
    """``F' / [K_n, F] gamma_5(F) F''`` as a finite abelian group."""

    level: int
    family: str
    relations: list[list[int]] = field(repr=False)
    group: FiniteAbelian = field(repr=False)
    rounds: int
    fixed_point: bool

    @property
    def invariants(self) -> list[int]:
        return self.group.invariants

    @property
    def order(self) -> int | None:
        return self.group.order

    def log2_order(self) -> int:
        o = self.order
        if o is None:
            raise ValueError("Q is infinite")
        return o.bit_length() - 1


def closure_under_conjugation(rows: list[list[int]],
                              max_rounds: int = 16) -> tuple[list[list[int]], int, bool]:
    """Smallest conjugation-invariant lattice containing ``rows``.

    Returns the HNF basis, the number of rounds used and whether a final
    round confirmed the fixed point."""
    mats = conjugation_matrices()
    n = len(hall_basis())
    lattice = hnf_rows(rows, n)
    for rnd in range(1, max_rounds + 1):
        new = list(lattice)
        for v in lattice:
            for ch in ABCD:
                cv = _apply(mats[ch], v)
                new.append([x - y for x, y in zip(cv, v)])
        nxt = hnf_rows(new, n)
        if nxt == lattice:
            return lattice, rnd, True
        lattice = nxt
    return lattice, max_rounds, False


def qn_build(n: int, family: str = "hopf") -> QnGroup:
    """Build Q_n from the normal generators of the level-n relator family."""
    if n < 3:
        raise ValueError("Q_n needs n >= 3")
    basis = hall_basis()
    rels = relator_family(family, n).words
    gens = [FreeWord((letter_id(ch),), ABCD) for ch in ABCD]
    low = [basis.word(i) for i in range(len(basis)) if basis.weight(i) <= 3]
    rows = []
    for r in rels:
        r = r.with_alphabet(ABCD)
        for x in gens + low:
            rows.append(derived_coords(commutator(r, x)))
    lattice, rounds, fixed = closure_under_conjugation(rows)
    group = FiniteAbelian.from_relations(lattice, len(basis))
    return QnGroup(n, family, lattice, group, rounds, fixed)


def qn_image(w: FreeWord, Q: QnGroup) -> tuple[int, ...]:
    return Q.group.coords(derived_coords(w))


def qn_order(w: FreeWord, Q: QnGroup) -> int | None:
    return Q.group.element_order(derived_coords(w))


def qn_rank(words: Sequence[FreeWord], Q: QnGroup) -> int:
    """dim over F2 of H / 2H, H the subgroup spanned by the images."""
    return Q.group.f2_rank_of([derived_coords(w) for w in words])


def qn_equal(u: FreeWord, v: FreeWord, Q: QnGroup) -> bool:
    cu = derived_coords(u)
    cv = derived_coords(v)
    return Q.group.is_zero([x - y for x, y in zip(cu, cv)])
