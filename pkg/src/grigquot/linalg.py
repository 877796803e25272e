"""Exact integer Smith normal form and linear algebra over F2.

Integer matrices are lists of rows of Python ints (arbitrary precision).
F2 vectors are Python ints used as bit sets, bit ``j`` = column ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]


def _copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in A]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def det(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    M = _copy(A)
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class SNFResult:
    """``U * A * V == D`` with ``U``, ``V`` unimodular."""

    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def snf(A: Sequence[Sequence[int]]) -> SNFResult:
    D = _copy(A)
    m = len(D)
    n = len(D[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        D[dst] = [x + k * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if not dirty:
                # divisibility: pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # move the smallest remainder into pivot position
            best = None
            for i in range(t, m):
                if D[i][t] and (best is None or abs(D[i][t]) < abs(D[best[0]][best[1]])):
                    best = (i, t)
            for j in range(t, n):
                if D[t][j] and (best is None or abs(D[t][j]) < abs(D[best[0]][best[1]])):
                    best = (t, j)
            if best[0] != t:
                swap_rows(t, best[0])
            elif best[1] != t:
                swap_cols(t, best[1])
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SNFResult(D, U, V)


def invariant_factors(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Diagonal of the Smith form padded with zeros to the column count.

    The cokernel of the row space is the direct sum of Z/d over the result
    (d = 1 trivial, d = 0 infinite cyclic)."""
    ncols = len(A[0]) if A else (ncols or 0)
    if not A:
        return [0] * ncols
    diag = snf(A).diagonal
    return diag + [0] * (ncols - len(diag))


def cokernel_invariants(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Nontrivial invariants of Z^ncols / rowspace(A): units dropped, 0 = Z."""
    return [d for d in invariant_factors(A, ncols) if d != 1]


def gcd_of_minors_invariants(A: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d_k = D_k / D_(k-1), D_k = gcd of k x k minors.

    Brute force; meant only as an independent check on tiny matrices."""
    from itertools import combinations
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            out.extend([0] * (min(m, n) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def hnf_rows(rows: Iterable[Sequence[int]], ncols: int) -> Matrix:
    """Row Hermite normal form basis of the lattice spanned by ``rows``."""
    basis: Matrix = []  # echelon rows, pivot positive
    pivots: list[int] = []
    for r in rows:
        v = list(map(int, r))
        _hnf_insert(basis, pivots, v, ncols)
    # full reduction above pivots
    for i in range(len(basis)):
        for k in range(i):
            p = pivots[i]
            q = basis[k][p] // basis[i][p]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[i])]
    return basis


def _hnf_insert(basis: Matrix, pivots: list[int], v: list[int], ncols: int):
    i = 0
    while True:
        lead = next((j for j in range(ncols) if v[j]), None)
        if lead is None:
            return
        # find basis row with this pivot
        while i < len(pivots) and pivots[i] < lead:
            i += 1
        if i == len(pivots) or pivots[i] != lead:
            if v[lead] < 0:
                v = [-x for x in v]
            basis.insert(i, v)
            pivots.insert(i, lead)
            return
        b = basis[i]
        # gcd step between b and v on column lead
        x, y = b[lead], v[lead]
        g, s, t = _xgcd(x, y)
        # new pivot row = s*b + t*v, other = (y/g)*b - (x/g)*v (kills lead)
        nb = [s * p + t * q for p, q in zip(b, v)]
        nv = [(y // g) * p - (x // g) * q for p, q in zip(b, v)]
        if nb[lead] < 0:
            nb = [-z for z in nb]
        basis[i] = nb
        v = nv
        i += 1


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def reduce_mod_hnf(v: Sequence[int], basis: Matrix) -> list[int]:
    """Canonical representative of v modulo the HNF lattice ``basis``."""
    v = list(map(int, v))
    for row in basis:
        p = next(j for j, x in enumerate(row) if x)
        q = v[p] // row[p]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return v


def in_lattice(v: Sequence[int], basis: Matrix) -> bool:
    return not any(reduce_mod_hnf(v, basis))


# --------------------------------------------------------------------------
# finite abelian groups Z^n / L


@dataclass
class FiniteAbelian:
    """The abelian group ``Z^n / L`` in Smith coordinates.

    ``coords(v)`` maps v to the tuple ``(v V)_i mod d_i``."""

    ngens: int
    relations: Matrix
    factors: list[int]
    V: Matrix

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]], n: int) -> "FiniteAbelian":
        rel = [list(map(int, r)) for r in relations] or [[0] * n]
        res = snf(rel)
        diag = res.diagonal + [0] * (n - len(res.diagonal))
        return cls(n, rel, diag, res.V)

    @property
    def invariants(self) -> list[int]:
        return [d for d in self.factors if d != 1]

    @property
    def order(self) -> int | None:
        out = 1
        for d in self.factors:
            if d == 0:
                return None
            out *= d
        return out

    def coords(self, v: Sequence[int]) -> tuple[int, ...]:
        n = self.ngens
        w = [sum(v[k] * self.V[k][j] for k in range(n)) for j in range(n)]
        return tuple(x % d if d else x for x, d in zip(w, self.factors))

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.coords(v))

    def element_order(self, v: Sequence[int]) -> int | None:
        out = 1
        for x, d in zip(self.coords(v), self.factors):
            if d == 0:
                if x:
                    return None
                continue
            out = out * (d // gcd(d, x)) // gcd(out, d // gcd(d, x))
        return out

    def subgroup_order(self, vectors: Sequence[Sequence[int]]) -> int:
        """Order of the subgroup generated by ``vectors``."""
        rows = [list(self.coords(v)) for v in vectors]
        n = len(self.factors)
        finite = [i for i, d in enumerate(self.factors) if d != 1]
        if any(self.factors[i] == 0 for i in finite):
            raise ValueError("subgroup orders need a finite group")
        rel = [[(self.factors[i] if j == i else 0) for j in finite] for i in finite]
        gens = [[r[i] for i in finite] for r in rows]
        whole = 1
        for i in finite:
            whole *= self.factors[i]
        if not finite:
            return 1
        quotient = FiniteAbelian.from_relations(rel + gens, len(finite)).order
        return whole // quotient

    def f2_rank_of(self, vectors: Sequence[Sequence[int]]) -> int:
        """dim_F2 of H/2H for the subgroup H generated by ``vectors``."""
        h = self.subgroup_order(vectors)
        h2 = self.subgroup_order([[2 * x for x in v] for v in vectors])
        q = h // h2
        return q.bit_length() - 1


# --------------------------------------------------------------------------
# F2


def to_bits(row: Sequence[int]) -> int:
    out = 0
    for j, x in enumerate(row):
        if int(x) & 1:
            out |= 1 << j
    return out


def from_bits(v: int, n: int) -> list[int]:
    return [(v >> j) & 1 for j in range(n)]


class F2Echelon:
    """Incremental row echelon basis over F2 (rows are int bit sets)."""

    def __init__(self):
        self.rows: dict[int, int] = {}  # pivot bit -> row

    def reduce(self, v: int) -> int:
        while v:
            p = v.bit_length() - 1
            r = self.rows.get(p)
            if r is None:
                return v
            v ^= r
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = v
        return True

    def __len__(self) -> int:
        return len(self.rows)

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0


def f2_rank(A) -> int:
    """Rank over F2 of a 0/1 (or integer) matrix, or a list of bit-set rows."""
    ech = F2Echelon()
    for row in A:
        ech.add(row if isinstance(row, int) else to_bits(row))
    return len(ech)


def f2_nullspace_basis(rows: Sequence[int], nvars: int) -> list[int]:
    """Basis of {x : <row, x> = 0 for all rows} over F2 (bit sets)."""
    # reduced row echelon form
    piv_rows: list[tuple[int, int]] = []
    for r in rows:
        for p, pr in piv_rows:
            if (r >> p) & 1:
                r ^= pr
        if r:
            p = r.bit_length() - 1
            piv_rows = [(q, (qr ^ r) if (qr >> p) & 1 else qr) for q, qr in piv_rows]
            piv_rows.append((p, r))
    pivots = {p for p, _ in piv_rows}
    basis = []
    for f in range(nvars):
        if f in pivots:
            continue
        x = 1 << f
        for p, pr in piv_rows:
            if (pr >> f) & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def abelianization(presentation) -> list[int]:
    """Invariant factors of the relator exponent-sum matrix cokernel.

    One entry per generator; 1 = trivial factor, 0 = infinite cyclic."""
    gens = presentation.generators
    rows = [w.exponent_sums(gens) for w in presentation.relators]
    return invariant_factors(rows, len(gens))
