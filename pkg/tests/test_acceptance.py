"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact.  Time budgets are pinned per criterion.  Set
GRIGQUOT_PROFILE=deep to add the level-5 coset enumeration.
"""

import os
import time

import numpy as np
import pytest

from grigquot.checks import contraction_bound, word_sample
from grigquot.cosets import DEEP_MAX_COSETS, DEFAULT_MAX_COSETS, enumerate_cosets
from grigquot.limits import (LimitSystem, SequenceExhausted, h2_formula,
                             invariant_hom_dim, limit_bound, limit_bound_scan,
                             st3_frattini_dim)
from grigquot.linalg import abelianization, gcd_of_minors_invariants, invariant_factors
from grigquot.nilq4 import qn_build, qn_equal, qn_order, qn_rank
from grigquot.oracles import SMALL_GROUPS, cayley_table, cocycle_h2_dim, small_group
from grigquot.pquotient import multiplier_report, p_cover, pquotient
from grigquot.quotients import (branch_subgroup_checks, kernel_data,
                                presentation_certificate, presentation_for,
                                quotient_group, relators_trivial)
from grigquot.stab import pair_identity_detail
from grigquot.tree import is_identity_at, is_trivial_g, nucleus_depth
from grigquot.words import capital, commutator, left_normed, relator_family, word

pytestmark = pytest.mark.acceptance

DEEP = os.environ.get("GRIGQUOT_PROFILE", "default") == "deep"
SEED = int(os.environ.get("GRIGQUOT_SEED", "0"))

K_INDEX_GOLDEN = 16


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line straight to the terminal, then assert."""
    def emit(criterion: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[criterion {criterion:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


def test_c01_orders(verdict):
    t = time.perf_counter()
    expected = {1: 1, 2: 3} | {n: 5 * 2 ** (n - 3) + 2 for n in range(3, 9)}
    computed = {}
    for n in range(1, 9):
        order = quotient_group(n).order()
        computed[n] = order.bit_length() - 1 if order & (order - 1) == 0 else None
    dt = time.perf_counter() - t
    ok = computed == expected and dt < 10
    verdict(1, ok, f"log2|G_n| n=1..8 {list(computed.values())} "
                   f"expected {list(expected.values())}; {dt:.2f}s (< 10s)")


def test_c02_relators(verdict):
    t = time.perf_counter()
    bad = []
    # a level-n presentation holds in G_m for every m <= n
    for kind in ("thm1", "thm4"):
        for n in range(3, 9):
            fam = relator_family(kind, n)
            for m in range(1, n + 1):
                bad += [f"{kind}({n}).{lab}@{m}"
                        for lab, ok in zip(fam.labels, relators_trivial(fam.words, m))
                        if not ok]
    lys = relator_family("lysenok", 10)
    for m in range(1, 9):
        bad += [f"lysenok.{lab}@{m}"
                for lab, ok in zip(lys.labels, relators_trivial(lys.words, m)) if not ok]
    dt = time.perf_counter() - t
    ok = not bad and dt < 10
    verdict(2, ok, f"nontrivial relators: {bad or 'none'}; {dt:.2f}s (< 10s)")


def test_c03_presentation_certificates(verdict):
    levels = (3, 4, 5) if DEEP else (3, 4)
    cap = DEEP_MAX_COSETS if DEEP else DEFAULT_MAX_COSETS
    results = []
    ok = True
    for kind in ("thm1", "thm4"):
        for n in levels:
            t = time.perf_counter()
            cert = presentation_certificate(kind, n, max_cosets=cap)
            dt = time.perf_counter() - t
            good = cert["status"] == "pass" and (n != 4 or dt < 60)
            ok &= good
            results.append(f"{kind}({n})={cert['order']} [{cert['status']}, {dt:.1f}s]")
    wreath = presentation_certificate("lemma1_wreath", 3)
    ok &= wreath["status"] == "pass" and wreath["order"] == 128
    results.append(f"wreath(3)={wreath['order']}")
    verdict(3, ok, "; ".join(results))


def test_c04_abelianization(verdict):
    computed = {}
    for kind in ("thm1", "thm4"):
        for n in range(3, 7):
            inv = [d for d in abelianization(presentation_for(kind, n)) if d != 1]
            computed[f"{kind}({n})"] = inv
    ok = all(v == [2, 2, 2] for v in computed.values())
    verdict(4, ok, f"nontrivial invariant factors {set(map(tuple, computed.values()))} "
                   f"over {len(computed)} presentations, expected {{(2, 2, 2)}}")


def test_c05_multiplier(verdict):
    rows = []
    ok = True
    for n in (3, 4, 5):
        t = time.perf_counter()
        r = multiplier_report(n)
        dt = time.perf_counter() - t
        good = r.h2_dim == 2 * n + 1 and r.schur_mod2_rank == 2 * n - 2
        good &= n != 5 or dt < 300
        ok &= good
        rows.append(f"n={n}: m*={r.h2_dim} (exp {2 * n + 1}), "
                    f"rank={r.schur_mod2_rank} (exp {2 * n - 2}), {dt:.1f}s")
    verdict(5, ok, "; ".join(rows))


def test_c06_independence(verdict):
    rows = []
    ok = True
    for n in (3, 4, 5):
        r = multiplier_report(n)
        ok &= r.relator_rank == 2 * n + 1 == r.relators
        rows.append(f"n={n}: rank {r.relator_rank}/{r.relators} (exp {2 * n + 1})")
    verdict(6, ok, "; ".join(rows))


def test_c07_qn(verdict):
    a, b, c, d = (word(ch) for ch in "abcd")
    listed = {
        3: [("L", commutator(b, c)), ("U_0", commutator(a, d) ** 2),
            ("W_3", commutator(a, c) ** 2), ("T_3", left_normed(a, b, c) ** -2)],
        4: [("L", commutator(b, c)), ("U_0", commutator(a, d) ** 2),
            ("U_1", commutator(a, c) ** 4),
            ("V_0", commutator(a, d) ** 2 * left_normed(a, c, d) ** 2)],
    }
    listed[5] = listed[4]
    parts = []
    ok = True
    for n in (3, 4, 5):
        Q = qn_build(n)
        images = all(qn_equal(capital(lab), w, Q) for lab, w in listed[n])
        rank = qn_rank([capital(lab) for lab, _ in listed[n]], Q)
        ok &= images and rank == 4
        parts.append(f"n={n}: images {'match' if images else 'differ'}, rank {rank} (exp 4)")
    Q3 = qn_build(3)
    orders = tuple(qn_order(commutator(x, y), Q3) for x, y in [(a, b), (a, c), (a, d), (b, c)])
    ok &= orders == (8, 4, 4, 2)
    parts.append(f"Q_3 orders of [a,b],[a,c],[a,d],[b,c] = {orders} (exp (8, 4, 4, 2))")
    verdict(7, ok, "; ".join(parts))


def test_c08_pair_identities(verdict):
    jobs = [(f, i) for f in "uvUV" for i in range(1, 11)]
    jobs += [(f, n) for f in "wtWT" for n in range(4, 11)]
    failures = [f"{f}_{i}" for f, i in jobs if not pair_identity_detail(f, i).word_level]
    ok = not failures
    verdict(8, ok, f"{len(jobs) - len(failures)}/{len(jobs)} identities hold at word "
                   f"level; failures: {failures or 'none'}")


def test_c09_kernels(verdict):
    rows = []
    ok = True
    for n in range(4, 8):
        kd = kernel_data(n)
        good = kd.log2_order == 5 * 2 ** (n - 4) and kd.elementary_abelian
        ok &= good
        rows.append(f"n={n}: 2^{kd.log2_order} (exp 2^{5 * 2 ** (n - 4)}), "
                    f"elementary {kd.elementary_abelian}")
    verdict(9, ok, "; ".join(rows))


def test_c10_branch_subgroup(verdict):
    data = {n: branch_subgroup_checks(n) for n in range(4, 9)}
    inside = all(b.st3_in_K for b in data.values())
    indices = {b.K_index for b in data.values()}
    ok = inside and indices == {K_INDEX_GOLDEN}
    verdict(10, ok, f"St(3) <= K for n=4..8: {inside}; K index values {sorted(indices)} "
                    f"(golden {K_INDEX_GOLDEN})")


def test_c11_word_problem(verdict):
    words = word_sample(SEED, 1000, 64)
    agree = contract = trivial = 0
    for w in words:
        cert = is_trivial_g(w)
        trivial += cert.verdict
        agree += cert.verdict == is_identity_at(w, 12)
        contract += nucleus_depth(w) <= contraction_bound(len(w))
    ok = agree == 1000 and contract == 1000 and 0 < trivial < 1000
    verdict(11, ok, f"seed {SEED}: agreement {agree}/1000, contraction bound "
                    f"{contract}/1000, trivial words in sample {trivial}")


def test_c12_oracle_equivalences(verdict):
    parts = []
    ok = True
    for kind in ("thm1", "thm4"):
        for n in (3, 4):
            p = presentation_for(kind, n)
            tc = enumerate_cosets(p).order
            bsgs = quotient_group(n).order()
            pq = pquotient(p)
            same = pq.complete and tc == bsgs == 2 ** pq.pc.k
            ok &= same
            parts.append(f"{kind}({n}) {'agree' if same else 'DISAGREE'}")
    rng = np.random.default_rng(SEED)
    snf_agree = 0
    for _ in range(200):
        r, c = (int(x) for x in rng.integers(1, 6, size=2))
        A = rng.integers(-4, 5, size=(r, c)).tolist()
        snf_agree += invariant_factors(A)[:min(r, c)] == gcd_of_minors_invariants(A)
    ok &= snf_agree == 200
    parts.append(f"SNF/minors {snf_agree}/200")
    cover_agree = 0
    for name in SMALL_GROUPS:
        p = small_group(name)
        cover_agree += p_cover(pquotient(p).pc).m_star == cocycle_h2_dim(cayley_table(p))
    ok &= cover_agree == len(SMALL_GROUPS)
    parts.append(f"p_cover/cocycles {cover_agree}/{len(SMALL_GROUPS)} groups of order <= 8")
    verdict(12, ok, "; ".join(parts))


def test_c13_five_term(verdict):
    grid = [(3, 1), (3, 2), (4, 1), (4, 2)]
    h2 = {n: multiplier_report(n).h2_dim for n in range(3, 7)}
    bound = st3_frattini_dim(6)
    parts = []
    ok = True
    for n, k in grid:
        ihd = invariant_hom_dim(n, k)
        good = h2[n + k] >= h2[n] - ihd and ihd <= bound
        ok &= good
        parts.append(f"({n},{k}): ihd={ihd}, {h2[n + k]} >= {h2[n]}-{ihd}")
    verdict(13, ok, "; ".join(parts) + f"; St(3) bound {bound}")


def test_c14_limit_calculator(verdict):
    N = st3_frattini_dim(6)
    rng = np.random.default_rng(SEED)
    agree = 0
    for _ in range(100):
        start = int(rng.integers(3, 20))
        length = int(rng.integers(1, 200))
        M = int(rng.integers(0, 30))
        sys_ = LimitSystem.from_formula(h2_formula, start, start + length, N)
        try:
            fast = limit_bound(sys_, M)
        except SequenceExhausted:
            fast = None
        try:
            slow = limit_bound_scan(sys_, M)
        except SequenceExhausted:
            slow = None
        agree += fast == slow
    worked = limit_bound(LimitSystem.from_formula(h2_formula, 3, 100, 5), 10)
    ok = agree == 100 and worked == 25
    verdict(14, ok, f"N={N}: bisection = scan on {agree}/100 systems; "
                    f"N=5, M=10 gives index {worked} (exp 25)")
