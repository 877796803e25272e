"""Finite presentations and Todd-Coxeter enumeration over the trivial subgroup.

Two strategies are provided, ``"hlt"`` (relator-based, Haselgrove-Leech-
Trotter) and ``"felsch"`` (deduction-based).  Both are deterministic.  A
generator whose square is a relator is treated as an involution: its
inverse shares its table column.

Presentation text format::

    # comment
    gens: a b c d
    aa
    (ad)^4
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Sequence

from .perms import Perm
from .words import FreeWord, free_reduce, letter_id, word

DEFAULT_MAX_COSETS = 10 ** 6
DEEP_MAX_COSETS = 2 * 10 ** 7


class CosetOverflow(RuntimeError):
    """Coset limit reached; a resource bound, not a mathematical verdict."""


@dataclass(frozen=True)
class PresentationFP:
    generators: str
    relators: tuple[FreeWord, ...]
    name: str = ""

    def __post_init__(self):
        for r in self.relators:
            if not set(r.alphabet) <= set(self.generators):
                raise ValueError(
                    f"relator {r} uses letters outside {self.generators!r}")

    @classmethod
    def from_words(cls, generators: str, relators: Sequence[FreeWord | str],
                   name: str = "") -> "PresentationFP":
        rels = tuple(r.with_alphabet(generators) if isinstance(r, FreeWord)
                     else word(r, generators) for r in relators)
        return cls(generators, rels, name)

    @classmethod
    def from_family(cls, family) -> "PresentationFP":
        return cls.from_words(family.alphabet, family.words,
                              f"{family.kind}({family.level})")

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "PresentationFP":
        gens = None
        rels: list[str] = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("gens:"):
                gens = "".join(line[5:].split())
                continue
            if gens is None:
                raise ValueError("presentation text must start with a 'gens:' line")
            rels.append(line)
        if gens is None:
            raise ValueError("missing 'gens:' line")
        return cls.from_words(gens, rels, name)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        lines += [str(r) if len(r) else "1" for r in self.relators]
        return "\n".join(lines) + "\n"

    @property
    def involutions(self) -> frozenset[str]:
        out = set()
        for r in self.relators:
            red = free_reduce(r).letters
            if len(red) == 2 and red[0] == red[1]:
                out.add(chr(ord("a") + abs(red[0]) - 1))
        return frozenset(out)

    def with_relators(self, relators: Sequence[FreeWord]) -> "PresentationFP":
        return PresentationFP(self.generators, tuple(relators), self.name)


@dataclass
class CosetTable:
    """Completed (or overflowed) coset table over the trivial subgroup.

    ``rows[i][j]`` is the image of coset ``i`` under column ``j``; row 0 is the
    subgroup coset.  ``columns`` maps each generator letter to its column."""

    rows: list[list[int]]
    columns: dict[str, int]
    inverse_columns: dict[str, int]
    status: str

    def __len__(self) -> int:
        return len(self.rows)

    def generator_perm(self, g: str) -> Perm:
        """Action of generator g on cosets (right action as an image array)."""
        col = self.columns[g]
        return Perm([row[col] for row in self.rows])


@dataclass
class EnumerationResult:
    status: str  # "complete" | "overflow"
    order: int | None
    max_live: int
    total_defined: int
    table: CosetTable | None = field(default=None, repr=False)

    @property
    def complete(self) -> bool:
        return self.status == "complete"


class _Enumerator:
    def __init__(self, p: PresentationFP, max_cosets: int, use_involutions: bool):
        invol = p.involutions if use_involutions else frozenset()
        self.gens = p.generators
        cols: dict[int, int] = {}
        inv: list[int] = []
        names: dict[str, int] = {}
        inv_names: dict[str, int] = {}
        for ch in p.generators:
            g = letter_id(ch)
            c = len(inv)
            if ch in invol:
                cols[g] = cols[-g] = c
                inv.append(c)
            else:
                cols[g], cols[-g] = c, c + 1
                inv.extend([c + 1, c])
            names[ch] = cols[g]
            inv_names[ch] = cols[-g]
        self.cols = cols
        self.inv = inv
        self.ncols = len(inv)
        self.names = names
        self.inv_names = inv_names
        rels = []
        for r in p.relators:
            cw = [cols[x] for x in free_reduce(r).letters]
            cw = _cyclic_reduce(cw, inv)
            if cw:
                rels.append(cw)
        self.rels = rels
        self.max_cosets = max_cosets
        # flat row-major table: entry x of coset a lives at a * ncols + x
        self.blank = array("i", [-1]) * self.ncols
        self.tab = array("i", self.blank)
        self.p = array("i", [0])
        self.size = 1
        self.live = 1
        self.max_live = 1
        self.deductions: list[tuple[int, int]] | None = None

    # ----------------------------------------------------------- primitives

    def define(self, a: int, x: int):
        if self.live >= self.max_cosets:
            raise CosetOverflow(f"more than {self.max_cosets} cosets")
        b = self.size
        self.size += 1
        self.tab.extend(self.blank)
        self.p.append(b)
        self.live += 1
        self.max_live = max(self.max_live, self.live)
        n = self.ncols
        self.tab[a * n + x] = b
        self.tab[b * n + self.inv[x]] = a
        if self.deductions is not None:
            self.deductions.append((a, x))

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def merge(self, k: int, l: int, q: list[int]):
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.p[hi] = lo
            q.append(hi)
            self.live -= 1

    def coincidence(self, a: int, b: int):
        q: list[int] = []
        self.merge(a, b, q)
        tab, inv, n = self.tab, self.inv, self.ncols
        i = 0
        while i < len(q):
            g = q[i]
            i += 1
            for x in range(n):
                d = tab[g * n + x]
                if d < 0:
                    continue
                xi = inv[x]
                tab[d * n + xi] = -1
                mu, nu = self.rep(g), self.rep(d)
                if tab[mu * n + x] >= 0:
                    self.merge(nu, tab[mu * n + x], q)
                elif tab[nu * n + xi] >= 0:
                    self.merge(mu, tab[nu * n + xi], q)
                else:
                    tab[mu * n + x] = nu
                    tab[nu * n + xi] = mu
                    if self.deductions is not None:
                        self.deductions.append((mu, x))

    def scan(self, a: int, w: list[int], fill: bool):
        tab, inv, n = self.tab, self.inv, self.ncols
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j:
                nxt = tab[f * n + w[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = tab[b * n + inv[w[j]]]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                tab[f * n + w[i]] = b
                tab[b * n + inv[w[i]]] = f
                if self.deductions is not None:
                    self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def entry(self, a: int, x: int) -> int:
        return self.tab[a * self.ncols + x]

    # ----------------------------------------------------------- strategies

    def run_hlt(self):
        a = 0
        while a < self.size:
            if self.p[a] == a:
                for w in self.rels:
                    self.scan(a, w, fill=True)
                    if self.p[a] != a:
                        break
                if self.p[a] == a:
                    for x in range(self.ncols):
                        if self.entry(a, x) < 0:
                            self.define(a, x)
            a += 1

    def run_felsch(self):
        self.deductions = []
        conj: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for w in self.rels:
            for cand in (w, [self.inv[x] for x in reversed(w)]):
                for s in range(len(cand)):
                    rot = tuple(cand[s:] + cand[:s])
                    if rot not in seen:
                        seen.add(rot)
                        conj[rot[0]].append(list(rot))
        self.conj = conj
        # scan all relators once at the subgroup coset
        for w in self.rels:
            self.scan(0, w, fill=False)
        self.process_deductions()
        a = 0
        while a < self.size:
            for x in range(self.ncols):
                if self.p[a] == a and self.entry(a, x) < 0:
                    self.define(a, x)
                    self.process_deductions()
            a += 1

    def process_deductions(self):
        stack = self.deductions
        while stack:
            a, x = stack.pop()
            if self.p[a] != a:
                continue
            for w in self.conj[x]:
                self.scan(a, w, fill=False)
                if self.p[a] != a:
                    break
            b = self.entry(a, x) if self.p[a] == a else -1
            if b >= 0 and self.p[b] == b:
                for w in self.conj[self.inv[x]]:
                    self.scan(b, w, fill=False)
                    if self.p[b] != b:
                        break

    def result(self, keep_table: bool) -> EnumerationResult:
        live = [i for i in range(self.size) if self.p[i] == i]
        table = None
        if keep_table:
            index = {c: k for k, c in enumerate(live)}
            rows = [[index[self.rep(self.entry(c, x))] for x in range(self.ncols)]
                    for c in live]
            table = CosetTable(rows, dict(self.names), dict(self.inv_names),
                               "complete")
        return EnumerationResult("complete", len(live), self.max_live,
                                 self.size, table)


def _cyclic_reduce(cw: list[int], inv: list[int]) -> list[int]:
    stack: list[int] = []
    for x in cw:
        if stack and stack[-1] == inv[x]:
            stack.pop()
        else:
            stack.append(x)
    while len(stack) >= 2 and stack[0] == inv[stack[-1]]:
        stack = stack[1:-1]
    return stack


def enumerate_cosets(p: PresentationFP, max_cosets: int = DEFAULT_MAX_COSETS,
                     strategy: str = "hlt", use_involutions: bool = True,
                     keep_table: bool = False) -> EnumerationResult:
    """Order of the presented group by coset enumeration over 1.

    Returns a result with status ``"overflow"`` when ``max_cosets`` live
    cosets would be exceeded."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    if strategy not in ("hlt", "felsch"):
        raise ValueError(f"unknown strategy {strategy!r}")
    e = _Enumerator(p, max_cosets, use_involutions)
    try:
        if strategy == "hlt":
            e.run_hlt()
        else:
            e.run_felsch()
    except CosetOverflow:
        return EnumerationResult("overflow", None, e.max_live, len(e.tab))
    res = e.result(keep_table)
    if keep_table:
        _check_table(e, res.table, p)
    return res


def _check_table(e: _Enumerator, table: CosetTable, p: PresentationFP):
    for row in table.rows:
        if any(x < 0 for x in row):
            raise AssertionError("coset table is incomplete")
    for r in p.relators:
        cw = [e.cols[x] for x in r.letters]
        for c in range(len(table.rows)):
            d = c
            for x in cw:
                d = table.rows[d][x]
            if d != c:
                raise AssertionError(f"relator {r} fails on coset {c}")


# ``enumerate`` is the name used in the command line and reports; keep the
# builtin reachable under its usual name inside this module.
enumerate_ = enumerate_cosets


def drop_one_diagnostic(p: PresentationFP, index: int,
                        max_cosets: int = DEFAULT_MAX_COSETS,
                        strategy: str = "hlt") -> EnumerationResult:
    """Enumerate with relator ``index`` removed.

    Diagnostic only: the reduced presentation may define an infinite group,
    in which case this overflows."""
    rels = [r for k, r in enumerate(p.relators) if k != index]
    return enumerate_cosets(p.with_relators(rels), max_cosets, strategy)
