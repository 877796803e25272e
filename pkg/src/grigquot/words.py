"""Free-group words, substitutions and the named relator families.

Letters are signed small integers: generator ``x`` (a lowercase ASCII letter)
has id ``ord(x) - ord('a') + 1`` and its inverse is the negated id.  A word
carries an alphabet tag (a string of allowed lowercase letters) so that words
over ``abc`` are never silently mixed with words over ``abcd``.

Text format: lowercase letter = generator, uppercase = inverse, no separators.
A parenthesised group (or a single letter) may carry a ``^k`` suffix, ``k`` a
possibly negative integer.  ``"(ad)^4"`` is the word ``adadadad``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

ABCD = "abcd"
ABC = "abc"
AD = "ad"


def letter_id(ch: str) -> int:
    """Signed id of a single character in the word text format."""
    if "a" <= ch <= "z":
        return ord(ch) - ord("a") + 1
    if "A" <= ch <= "Z":
        return -(ord(ch) - ord("A") + 1)
    raise ValueError(f"not a generator letter: {ch!r}")


def letter_char(x: int) -> str:
    if x > 0:
        return chr(ord("a") + x - 1)
    return chr(ord("A") - x - 1)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[int, ...]
    alphabet: str = ABCD

    def __post_init__(self):
        allowed = {letter_id(ch) for ch in self.alphabet}
        for x in self.letters:
            if x == 0 or abs(x) not in allowed:
                raise ValueError(
                    f"letter {x} outside alphabet {self.alphabet!r}")

    @classmethod
    def parse(cls, text: str, alphabet: str = ABCD) -> "FreeWord":
        return cls(tuple(_parse(text)), alphabet)

    @classmethod
    def empty(cls, alphabet: str = ABCD) -> "FreeWord":
        return cls((), alphabet)

    def __str__(self) -> str:
        return "".join(letter_char(x) for x in self.letters)

    def __repr__(self) -> str:
        return f"FreeWord({str(self) or '1'!r}, {self.alphabet!r})"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters,
                        _join_alphabets(self.alphabet, other.alphabet))

    def __pow__(self, k: int) -> "FreeWord":
        if k < 0:
            return self.inverse() ** (-k)
        return FreeWord(self.letters * k, self.alphabet)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple(-x for x in reversed(self.letters)),
                        self.alphabet)

    def reduced(self) -> "FreeWord":
        return free_reduce(self)

    def with_alphabet(self, alphabet: str) -> "FreeWord":
        return FreeWord(self.letters, alphabet)

    def exponent_sums(self, gens: str | None = None) -> list[int]:
        gens = self.alphabet if gens is None else gens
        index = {letter_id(ch): i for i, ch in enumerate(gens)}
        sums = [0] * len(gens)
        for x in self.letters:
            sums[index[abs(x)]] += 1 if x > 0 else -1
        return sums

    def count(self, ch: str) -> int:
        """Number of occurrences of generator ``ch`` (either sign)."""
        g = letter_id(ch)
        return sum(1 for x in self.letters if abs(x) == g)

    def equals_freely(self, other: "FreeWord") -> bool:
        return free_reduce(self).letters == free_reduce(other).letters


def _join_alphabets(a: str, b: str) -> str:
    if a == b:
        return a
    merged = sorted(set(a) | set(b))
    return "".join(merged)


def _parse(text: str) -> list[int]:
    text = text.replace(" ", "")
    if text in ("1", "ε"):
        return []
    out, pos = _parse_seq(text, 0)
    if pos != len(text):
        raise ValueError(f"unbalanced bracket in {text!r}")
    return out


def _parse_seq(s: str, i: int) -> tuple[list[int], int]:
    out: list[int] = []
    while i < len(s) and s[i] not in ")],":
        if s[i] == "(":
            block, i = _parse_seq(s, i + 1)
            if i >= len(s) or s[i] != ")":
                raise ValueError(f"missing ')' in {s!r}")
            i += 1
        elif s[i] == "[":
            block, i = _parse_seq(s, i + 1)
            while i < len(s) and s[i] == ",":
                y, i = _parse_seq(s, i + 1)
                block = _inv(block) + _inv(y) + block + y
            if i >= len(s) or s[i] != "]":
                raise ValueError(f"missing ']' in {s!r}")
            i += 1
        else:
            block = [letter_id(s[i])]
            i += 1
        k, i = _parse_power(s, i)
        if k < 0:
            block = _inv(block)
            k = -k
        out.extend(block * k)
    return out, i


def _inv(xs: list[int]) -> list[int]:
    return [-x for x in reversed(xs)]


def _parse_power(s: str, i: int) -> tuple[int, int]:
    if i >= len(s) or s[i] != "^":
        return 1, i
    j = i + 1
    if j < len(s) and s[j] in "+-":
        j += 1
    start = j
    while j < len(s) and s[j].isdigit():
        j += 1
    if j == start:
        raise ValueError(f"missing exponent in {s!r}")
    return int(s[i + 1:j]), j


def word(text: str, alphabet: str = ABCD) -> FreeWord:
    return FreeWord.parse(text, alphabet)


def free_reduce(w: FreeWord) -> FreeWord:
    stack: list[int] = []
    for x in w.letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return FreeWord(tuple(stack), w.alphabet)


# Klein four-group {1, b, c, d}: product of two non-a generators.
_B, _C, _D = letter_id("b"), letter_id("c"), letter_id("d")
_A = letter_id("a")
_K4 = {
    (_B, _B): 0, (_C, _C): 0, (_D, _D): 0,
    (_B, _C): _D, (_C, _B): _D,
    (_B, _D): _C, (_D, _B): _C,
    (_C, _D): _B, (_D, _C): _B,
}


def reduce_involutive(w: FreeWord) -> FreeWord:
    """Canonical alternating form using only a^2 = 1 and the Klein-four
    relations among b, c, d.  Signs are dropped (every generator is an
    involution in the group)."""
    if not set(w.alphabet) <= set(ABCD):
        raise ValueError("reduce_involutive needs a word over abcd")
    stack: list[int] = []
    for x in w.letters:
        x = abs(x)
        if not stack:
            stack.append(x)
        elif x == _A:
            if stack[-1] == _A:
                stack.pop()
            else:
                stack.append(x)
        elif stack[-1] == _A:
            stack.append(x)
        else:
            y = _K4[(stack.pop(), x)]
            if y:
                stack.append(y)
    return FreeWord(tuple(stack), ABCD)


@dataclass(frozen=True)
class Substitution:
    """A free-group endomorphism given by the images of the generators."""

    images: Mapping[int, FreeWord]
    alphabet: str
    name: str = ""

    @classmethod
    def from_strings(cls, table: Mapping[str, str], alphabet: str,
                     name: str = "") -> "Substitution":
        images = {letter_id(k): word(v, alphabet) for k, v in table.items()}
        if set(images) != {letter_id(ch) for ch in alphabet}:
            raise ValueError("substitution must define every generator")
        return cls(images, alphabet, name)

    def apply_once(self, w: FreeWord) -> FreeWord:
        if not set(w.alphabet) <= set(self.alphabet):
            raise ValueError(
                f"alphabet mismatch: word over {w.alphabet!r}, "
                f"substitution over {self.alphabet!r}")
        out: list[int] = []
        for x in w.letters:
            img = self.images[abs(x)].letters
            if x > 0:
                out.extend(img)
            else:
                out.extend(-y for y in reversed(img))
        return free_reduce(FreeWord(tuple(out), self.alphabet))


def substitute(s: Substitution, w: FreeWord, k: int = 1) -> FreeWord:
    if k < 0:
        raise ValueError("substitution count must be non-negative")
    if not set(w.alphabet) <= set(s.alphabet):
        raise ValueError(
            f"alphabet mismatch: word over {w.alphabet!r}, "
            f"substitution over {s.alphabet!r}")
    w = free_reduce(w.with_alphabet(s.alphabet))
    for _ in range(k):
        w = s.apply_once(w)
    return w


SIGMA_L = Substitution.from_strings(
    {"a": "aca", "b": "d", "c": "b", "d": "c"}, ABCD, "sigma_L")
SIGMA_MIN = Substitution.from_strings(
    {"a": "aca", "b": "bc", "c": "b"}, ABC, "sigma_min")


def commutator(x: FreeWord, y: FreeWord) -> FreeWord:
    """[x, y] = x^-1 y^-1 x y."""
    return x.inverse() * y.inverse() * x * y


def left_normed(*parts: FreeWord) -> FreeWord:
    """[x1, x2, ..., xk] = [[x1, x2], ..., xk]."""
    acc = parts[0]
    for p in parts[1:]:
        acc = commutator(acc, p)
    return acc


# --------------------------------------------------------------------------
# relator families

FAMILY_KINDS = ("gamma", "thm1", "thm4", "lysenok", "hopf", "omega",
                "upsilon")


@dataclass(frozen=True)
class RelatorFamily:
    kind: str
    level: int
    entries: tuple[tuple[str, FreeWord], ...] = field(default=())

    @property
    def words(self) -> list[FreeWord]:
        return [w for _, w in self.entries]

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.entries]

    @property
    def alphabet(self) -> str:
        return ABC if self.kind == "thm4" else ABCD

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, label: str) -> FreeWord:
        for lab, w in self.entries:
            if lab == label:
                return w
        raise KeyError(label)

    def __contains__(self, item) -> bool:
        if isinstance(item, str):
            return item in self.labels
        return any(free_reduce(item).letters == free_reduce(w).letters
                   for w in self.words)


def _sig(seed: str, i: int) -> FreeWord:
    return substitute(SIGMA_L, word(seed), i)


def _sig_min(seed: str, i: int) -> FreeWord:
    return substitute(SIGMA_MIN, word(seed, ABC), i)


_INVOLUTIONS = [("a^2", "aa"), ("b^2", "bb"), ("c^2", "cc"), ("d^2", "dd"),
                ("bcd", "bcd")]

# seeds of the capital-letter relators, all in the derived subgroup
U_SEED = "(ad)^4(a)^-4(d)^-4"
V_SEED = "(adacac)^4(a)^-12(c)^-8(d)^-4"
W_SEED = "(ac)^4(a)^-4(c)^-4"
T_SEED = "(abac)^4(a)^-8(b)^-4(c)^-4"
L_WORD = "bbccdd(bcd)^-2"


def relator_family(kind: str, n: int) -> RelatorFamily:
    """Labelled relator list of the requested family at level (or cutoff) n."""
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown relator family {kind!r}")
    if kind in ("thm1", "thm4", "hopf", "upsilon") and n < 3:
        raise ValueError(f"{kind} needs level n >= 3, got {n}")
    if kind in ("lysenok", "gamma") and n < 0:
        raise ValueError("cutoff must be >= 0")
    if kind == "omega" and n < 1:
        raise ValueError("omega needs n >= 1")

    e: list[tuple[str, FreeWord]] = []
    if kind == "gamma":
        e = [(lab, word(s)) for lab, s in _INVOLUTIONS]
        e.append(("(ad)^4", word("(ad)^4")))
    elif kind == "thm1":
        e = [(lab, word(s)) for lab, s in _INVOLUTIONS]
        e += [(f"u_{i}", _sig("(ad)^4", i)) for i in range(n - 2)]
        e += [(f"v_{i}", _sig("(adacac)^4", i)) for i in range(n - 3)]
        e.append((f"w_{n}", _sig("(ac)^4", n - 3)))
        e.append((f"t_{n}", _sig("(abac)^4", n - 3)))
    elif kind == "thm4":
        e = [(lab, word(s, ABC)) for lab, s in
             [("a^2", "aa"), ("b^2", "bb"), ("c^2", "cc"), ("(bc)^2", "bcbc")]]
        e += [(f"u_{i}", _sig_min("(abc)^4", i)) for i in range(n - 2)]
        e += [(f"v_{i}", _sig_min("(abcacac)^4", i)) for i in range(n - 3)]
        e.append((f"w_{n}", _sig_min("(ac)^4", n - 3)))
        e.append((f"t_{n}", _sig_min("(abac)^4", n - 3)))
    elif kind == "lysenok":
        e = [(lab, word(s)) for lab, s in _INVOLUTIONS]
        e += [(f"u_{i}", _sig("(ad)^4", i)) for i in range(n + 1)]
        e += [(f"v_{i}", _sig("(adacac)^4", i)) for i in range(n + 1)]
    elif kind == "hopf":
        e = [("B_1", word("aa")), ("B_2", word("bb")), ("B_3", word("cc")),
             ("B_4", word("bcd")), ("L", word(L_WORD).reduced())]
        e += [(f"U_{i}", _sig(U_SEED, i)) for i in range(n - 2)]
        e += [(f"V_{i}", _sig(V_SEED, i)) for i in range(n - 3)]
        e.append((f"W_{n}", _sig(W_SEED, n - 3)))
        e.append((f"T_{n}", _sig(T_SEED, n - 3)))
    elif kind == "omega":
        e = [(f"u_{i}", _sig("(ad)^4", i)) for i in range(1, n + 1)]
        e += [(f"v_{i}", _sig("(adacac)^4", i)) for i in range(n)]
    elif kind == "upsilon":
        e = [(f"u_{i}", _sig("(ad)^4", i)) for i in range(1, n - 2)]
        e += [(f"v_{i}", _sig("(adacac)^4", i)) for i in range(n - 3)]
        e.append((f"w_{n}", _sig("(ac)^4", n - 3)))
        e.append((f"t_{n}", _sig("(abac)^4", n - 3)))
    return RelatorFamily(kind, n, tuple(e))


def capital(label: str) -> FreeWord:
    """A single capital relator by label, e.g. ``"U_3"``, ``"W_5"``, ``"L"``."""
    if label == "L":
        return word(L_WORD).reduced()
    head, _, idx = label.partition("_")
    i = int(idx)
    if head == "U":
        return _sig(U_SEED, i)
    if head == "V":
        return _sig(V_SEED, i)
    if head in ("W", "T"):
        if i < 3:
            raise ValueError(f"{label}: level must be >= 3")
        return _sig(W_SEED if head == "W" else T_SEED, i - 3)
    if head == "B":
        return {1: word("aa"), 2: word("bb"), 3: word("cc"),
                4: word("bcd")}[i]
    raise KeyError(label)


def lower(label: str) -> FreeWord:
    """A single lowercase relator by label, e.g. ``"u_2"``, ``"t_4"``."""
    head, _, idx = label.partition("_")
    i = int(idx)
    if head == "u":
        return _sig("(ad)^4", i)
    if head == "v":
        return _sig("(adacac)^4", i)
    if head in ("w", "t"):
        if i < 3:
            raise ValueError(f"{label}: level must be >= 3")
        return _sig("(ac)^4" if head == "w" else "(abac)^4", i - 3)
    raise KeyError(label)


def as_abcd(w: FreeWord) -> FreeWord:
    """View a word over a sub-alphabet of abcd as a word over abcd."""
    if not set(w.alphabet) <= set(ABCD):
        raise ValueError(f"alphabet {w.alphabet!r} is not inside abcd")
    return w.with_alphabet(ABCD)


def words_from_strings(texts: Iterable[str],
                       alphabet: str = ABCD) -> list[FreeWord]:
    return [word(t, alphabet) for t in texts]


def concat(ws: Sequence[FreeWord]) -> FreeWord:
    if not ws:
        return FreeWord.empty()
    acc = ws[0]
    for w in ws[1:]:
        acc = acc * w
    return acc
