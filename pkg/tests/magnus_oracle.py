"""Noncommutative Magnus expansion in Z<<x_1..x_4>> truncated at degree 4.

Independent of the metabelian (commutative) embedding used by ``nilq4``: a
word lies in gamma_5(F) F'' exactly when its expansion has no terms of
degree 1..3 and its degree-4 part is a combination of the Lie elements
[[x_i, x_j], [x_k, x_l]]."""

from fractions import Fraction
from functools import lru_cache
from itertools import product

from grigquot.nilq4 import collect, hall_basis
from grigquot.words import FreeWord

DEG = 4
KEYS = list(product(range(4), repeat=DEG))


def mul(p, q):
    out = {}
    for k1, v1 in p.items():
        for k2, v2 in q.items():
            if len(k1) + len(k2) <= DEG:
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def letter(x):
    j = abs(x) - 1
    if x > 0:
        return {(): 1, (j,): 1}
    return {tuple([j] * k): (-1) ** k for k in range(DEG + 1)}


def expand(w: FreeWord):
    p = {(): 1}
    for x in w.letters:
        p = mul(p, letter(x))
    return p


def lie(a, b):
    out = dict(mul(a, b))
    for k, v in mul(b, a).items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def _echelon(vecs):
    basis = []
    for v in vecs:
        row = [Fraction(v.get(k, 0)) for k in KEYS]
        for b, p in basis:
            if row[p]:
                f = row[p] / b[p]
                row = [x - f * y for x, y in zip(row, b)]
        p = next((i for i, x in enumerate(row) if x), None)
        if p is not None:
            basis.append((row, p))
    return basis


@lru_cache(maxsize=1)
def _metabelian_span():
    X = [{(i,): 1} for i in range(4)]
    return _echelon(lie(lie(X[i], X[j]), lie(X[k], X[l]))
                    for i, j, k, l in product(range(4), repeat=4))


def in_gamma5_metabelian(w: FreeWord) -> bool:
    m = expand(w)
    if any(0 < len(k) < DEG for k in m):
        return False
    return _in_span({k: v for k, v in m.items() if len(k) == DEG})


def _power(w: FreeWord, k: int):
    """Expansion of w^k by repeated squaring."""
    base = expand(w if k > 0 else w.inverse())
    k = abs(k)
    out = {(): 1}
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def normal_form_expansion(w: FreeWord):
    """Expansion of ``a^x1 b^x2 c^x3 d^x4`` times the Hall basis powers of
    ``collect(w)``."""
    e = collect(w)
    out = {(): 1}
    for j, k in enumerate(e.alpha):
        if k:
            out = mul(out, _power(FreeWord((j + 1,), "abcd"), k))
    B = hall_basis()
    for i, k in enumerate(e.coords):
        if k:
            out = mul(out, _power(B.word(i), k))
    return out


def collection_is_correct(w: FreeWord) -> bool:
    """The expansion of w agrees with that of its normal form modulo degree
    five and the metabelian span, i.e. w N^-1 lies in gamma_5 F''."""
    lhs = expand(w)
    rhs = normal_form_expansion(w)
    diff = dict(lhs)
    for k, v in rhs.items():
        diff[k] = diff.get(k, 0) - v
    diff = {k: v for k, v in diff.items() if v}
    # if lhs = rhs + (terms of degree >= m) then w N^-1 = 1 + (same terms) + ...
    # at the lowest degree; only degree-4 differences can be metabelian
    if any(len(k) < DEG for k in diff):
        return False
    return _in_span({k: v for k, v in diff.items() if len(k) == DEG})


def _in_span(top) -> bool:
    row = [Fraction(top.get(k, 0)) for k in KEYS]
    for b, p in _metabelian_span():
        if row[p]:
            f = row[p] / b[p]
            row = [x - f * y for x, y in zip(row, b)]
    return not any(row)
