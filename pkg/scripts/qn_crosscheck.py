"""Cross-check Q_n commutator orders against an independent 2-quotient.

E is the 2-group with generators a, b, c, d and relators [r, x] for r in the
hopf(n) family and x a generator, x^8, every left-normed commutator of weight
five and every [[x_i, x_j], [x_k, x_l]].  The commutators below are computed in
E by collection and compared with the Magnus-embedding values from nilq4.

    python scripts/qn_crosscheck.py 3 4
"""

import argparse
import itertools
import time

from grigquot.cosets import PresentationFP
from grigquot.nilq4 import qn_build, qn_order
from grigquot.pquotient import p_cover, pquotient
from grigquot.words import commutator, left_normed, relator_family, word

GENS = [word(ch) for ch in "abcd"]
A, B, C, D = GENS
PROBES = {
    "[a,b]": commutator(A, B), "[a,c]": commutator(A, C),
    "[a,d]": commutator(A, D), "[b,c]": commutator(B, C),
    "[a,b,c]": left_normed(A, B, C), "[a,b,d]": left_normed(A, B, D),
    "[a,c,b]": left_normed(A, C, B), "[a,c,d]": left_normed(A, C, D),
}


def e_presentation(n: int, exponent: int = 8) -> PresentationFP:
    rels = [commutator(r, x) for r in relator_family("hopf", n).words for x in GENS]
    rels += [x ** exponent for x in GENS]
    for t in itertools.product(range(4), repeat=5):
        if t[0] != t[1]:
            rels.append(left_normed(*(GENS[i] for i in t)))
    for i, j, k, l in itertools.product(range(4), repeat=4):
        if i > j and k > l:
            rels.append(commutator(commutator(GENS[i], GENS[j]),
                                   commutator(GENS[k], GENS[l])))
    return PresentationFP.from_words("abcd", rels)


def e_orders(n: int) -> tuple[int, dict[str, int]]:
    p = e_presentation(n)
    q = pquotient(p)
    col = q.pc.collector()
    cover = p_cover(q.pc, p)
    out = {}
    for name, w in PROBES.items():
        x = (cover.evaluate(w)[0], 0)
        y, k = x, 1
        while y[0]:
            y, k = col.mul(y, x), k + 1
        out[name] = k
    return q.pc.k, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("levels", type=int, nargs="*", default=[3, 4])
    args = ap.parse_args(argv)
    mismatches = 0
    for n in args.levels:
        t = time.perf_counter()
        log2_e, orders = e_orders(n)
        Q = qn_build(n)
        print(f"n={n}: log2|E| = {log2_e} ({time.perf_counter() - t:.1f}s)")
        for name, w in PROBES.items():
            nil = qn_order(w, Q)
            mismatches += nil != orders[name]
            print(f"  {name:8s} E: {orders[name]:2d}  nilq4: {nil}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
