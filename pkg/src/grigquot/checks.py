"""One check group per acceptance criterion, shared by the CLI and report."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .config import DEFAULT, Profile
from .cosets import PresentationFP, enumerate_cosets
from .limits import (LimitSystem, SequenceExhausted, h2_formula,
                     invariant_hom_dim, invariant_hom_dim_swap_oracle,
                     limit_bound, limit_bound_scan, st3_frattini_dim)
from .linalg import abelianization, gcd_of_minors_invariants, invariant_factors
from .nilq4 import qn_build, qn_equal, qn_order, qn_rank
from .oracles import SMALL_GROUPS, cayley_table, cocycle_h2_dim, small_group
from .pquotient import ClassLimitReached, multiplier_report, p_cover, pquotient
from .quotients import (branch_subgroup_checks, expected_kernel_log2,
                        expected_log2_order, kernel_data, presentation_certificate,
                        presentation_for, quotient_group, relators_trivial)
from .report import GOLDEN, Check, anchor_for
from .stab import pair_identity_detail
from .tree import is_identity_at, is_trivial_g, nucleus_depth
from .words import (ABCD, FreeWord, capital, commutator, free_reduce,
                    left_normed, relator_family, word)


def _pow2(k: int) -> str:
    return f"2^{k}"


def _log2_exact(x: int) -> str:
    return _pow2(x.bit_length() - 1) if x > 0 and x & (x - 1) == 0 else str(x)


# --------------------------------------------------------------------------
# 1. orders


def check_orders(levels=DEFAULT.order_levels) -> list[Check]:
    a = anchor_for("orders")
    return [Check(f"orders/n={n}", a, _pow2(expected_log2_order(n)),
                  _log2_exact(quotient_group(n).order()))
            for n in levels]


# --------------------------------------------------------------------------
# 2. relators


def check_relators(max_level: int = 8, cutoff: int = 10,
                   families=("thm1", "thm4", "lysenok")) -> list[Check]:
    """thm1/thm4 at level n hold in G_m for m <= n; Lysenok words everywhere."""
    a = anchor_for("relators")
    out = []
    for kind in families:
        if kind == "lysenok":
            fam = relator_family("lysenok", cutoff)
            bad = [f"{lab}@{m}" for m in range(1, max_level + 1)
                   for lab, ok in zip(fam.labels, relators_trivial(fam.words, m))
                   if not ok]
            out.append(Check(f"relators/lysenok/cutoff={cutoff}", a, [], bad))
            continue
        for n in range(3, max_level + 1):
            fam = relator_family(kind, n)
            bad = [f"{lab}@{m}" for m in range(1, n + 1)
                   for lab, ok in zip(fam.labels, relators_trivial(fam.words, m))
                   if not ok]
            out.append(Check(f"relators/{kind}/n={n}", a, [], bad))
    return out


# --------------------------------------------------------------------------
# 3. presentation certificates


def check_certificates(levels=DEFAULT.certificate_levels,
                       max_cosets: int = DEFAULT.max_cosets,
                       kinds=("thm1", "thm4"), wreath: bool = True) -> list[Check]:
    a = anchor_for("certificates")
    jobs = [(k, n) for k in kinds for n in levels]
    if wreath and 3 in levels:
        jobs.append(("lemma1_wreath", 3))
    out = []
    for kind, n in jobs:
        name = f"certificates/{kind}/n={n}"
        expected = {"order": _pow2(expected_log2_order(n)), "relators_vanish": True}
        cert = presentation_certificate(kind, n, max_cosets=max_cosets)
        if cert["status"] == "overflow":
            out.append(Check.resource(name, a, expected,
                                      f"more than {max_cosets} cosets"))
            continue
        out.append(Check(name, a, expected,
                         {"order": _log2_exact(cert["order"]),
                          "relators_vanish": cert["relators_vanish"]}))
    return out


# --------------------------------------------------------------------------
# 4. abelianization


def ab_invariants(p: PresentationFP) -> list[int]:
    """Invariant factors with the trivial ones dropped (0 = infinite cyclic)."""
    return [d for d in abelianization(p) if d != 1]


def check_abelianization(levels=DEFAULT.abelianization_levels,
                         kinds=("thm1", "thm4")) -> list[Check]:
    a = anchor_for("abelianization")
    return [Check(f"abelianization/{k}/n={n}", a, [2, 2, 2],
                  ab_invariants(presentation_for(k, n)))
            for k in kinds for n in levels]


# --------------------------------------------------------------------------
# 5, 6. multiplier and independence


def check_multiplier(levels=DEFAULT.multiplier_levels) -> list[Check]:
    am, ai = anchor_for("multiplier"), anchor_for("independence")
    out = []
    for n in levels:
        try:
            r = multiplier_report(n)
        except ClassLimitReached as exc:
            out.append(Check.resource(f"multiplier/n={n}", am, None, str(exc)))
            continue
        out.append(Check(f"multiplier/n={n}", am,
                         {"h2_dim": 2 * n + 1, "schur_mod2_rank": 2 * n - 2,
                          "def_lower": 2 * n - 2, "def_upper": 2 * n - 2,
                          "order": _pow2(expected_log2_order(n))},
                         {"h2_dim": r.h2_dim, "schur_mod2_rank": r.schur_mod2_rank,
                          "def_lower": r.def_lower, "def_upper": r.def_upper,
                          "order": _pow2(r.order_log2)}))
        out.append(Check(f"independence/n={n}", ai,
                         {"relator_rank": 2 * n + 1, "independent": True},
                         {"relator_rank": r.relator_rank,
                          "independent": r.relators_independent}))
    return out


# --------------------------------------------------------------------------
# 7. Q_n

_A, _B, _C, _D = (word(ch) for ch in ABCD)

# images of the relators as listed, and the listed commutator orders
QN_LISTED_IMAGES = {
    3: [("L", commutator(_B, _C)), ("U_0", commutator(_A, _D) ** 2),
        ("W_3", commutator(_A, _C) ** 2), ("T_3", left_normed(_A, _B, _C) ** -2)],
    "n>=4": [("L", commutator(_B, _C)), ("U_0", commutator(_A, _D) ** 2),
             ("U_1", commutator(_A, _C) ** 4),
             ("V_0", commutator(_A, _D) ** 2 * left_normed(_A, _C, _D) ** 2)],
}
QN_LISTED_ORDERS = {
    3: {"[a,b]": 8, "[a,c]": 4, "[a,d]": 4, "[b,c]": 2},
    "n>=4": {"[a,b]": 16, "[a,c]": 8},
}
_COMMS = {"[a,b]": (_A, _B), "[a,c]": (_A, _C), "[a,d]": (_A, _D), "[b,c]": (_B, _C)}


def check_qn(levels=DEFAULT.qn_levels) -> list[Check]:
    a = anchor_for("qn")
    out = []
    for n in levels:
        Q = qn_build(n)
        key = 3 if n == 3 else "n>=4"
        pairs = QN_LISTED_IMAGES[key]
        out.append(Check(f"qn/n={n}/fixed-point", a, True, Q.fixed_point))
        for lab, target in pairs:
            out.append(Check(f"qn/n={n}/image/{lab}", a, True,
                             qn_equal(capital(lab), target, Q)))
        out.append(Check(f"qn/n={n}/rank", a, 4,
                         qn_rank([capital(lab) for lab, _ in pairs], Q)))
        listed = QN_LISTED_ORDERS[key]
        computed = {c: qn_order(commutator(*_COMMS[c]), Q) for c in listed}
        out.append(Check(f"qn/n={n}/orders", a, listed, computed))
    return out


def qn_summary(n: int) -> dict:
    """Structure of Q_n and commutator orders, for reports and the CLI."""
    Q = qn_build(n)
    orders = {c: qn_order(commutator(*_COMMS[c]), Q) for c in _COMMS}
    triples = {f"[{x},{y},{z}]": qn_order(left_normed(word(x), word(y), word(z)), Q)
               for x, y, z in ("abc", "abd", "acb", "acd", "adb", "adc")}
    return {"invariants": Q.invariants, "log2_order": Q.log2_order(),
            "closure_rounds": Q.rounds, "fixed_point": Q.fixed_point,
            "commutator_orders": orders, "triple_orders": triples}


# --------------------------------------------------------------------------
# 8. pair identities


def pair_identity_jobs(lower_range=DEFAULT.pair_range,
                       capital_range=DEFAULT.capital_range) -> list[tuple[str, int]]:
    lo, hi = lower_range
    clo, chi = capital_range
    jobs = [(f, i) for f in ("u", "v", "U", "V") for i in range(lo, hi + 1)]
    jobs += [(f, i) for f in ("w", "t", "W", "T") for i in range(clo, chi + 1)]
    return jobs


def pair_identity_check(family: str, index: int) -> Check:
    r = pair_identity_detail(family, index)
    # the exact word-level identity is the claim; a group-level fallback is
    # reported but still counts as a failure of the exact form
    computed = "word-level" if r.word_level else (
        "group-level only" if r.group_level else "fails")
    return Check(f"pair-identities/{family}_{index:02d}", anchor_for("pair-identities"),
                 "word-level", computed)


def check_pair_identities(lower_range=DEFAULT.pair_range,
                          capital_range=DEFAULT.capital_range) -> list[Check]:
    return [pair_identity_check(f, i)
            for f, i in pair_identity_jobs(lower_range, capital_range)]


# --------------------------------------------------------------------------
# 9, 10. kernels and the branch subgroup


def check_kernels(levels=DEFAULT.kernel_levels) -> list[Check]:
    a = anchor_for("kernels")
    out = []
    for n in levels:
        kd = kernel_data(n)
        ratio = quotient_group(n).log2_order() - quotient_group(n - 1).log2_order()
        out.append(Check(f"kernels/n={n}", a,
                         {"order": _pow2(expected_kernel_log2(n)),
                          "elementary_abelian": True, "order_ratio": _pow2(expected_kernel_log2(n))},
                         {"order": _pow2(kd.log2_order),
                          "elementary_abelian": kd.elementary_abelian,
                          "order_ratio": _pow2(ratio)}))
    return out


def check_branch_subgroup(levels=DEFAULT.branch_levels) -> list[Check]:
    a = anchor_for("branch-subgroup")
    out = []
    for n in levels:
        b = branch_subgroup_checks(n)
        out.append(Check(f"branch-subgroup/n={n}", a,
                         {"st3_in_K": True, "K_index": GOLDEN["K_index"]},
                         {"st3_in_K": b.st3_in_K, "K_index": b.K_index}))
    return out


# --------------------------------------------------------------------------
# 11. word problem


def random_word(rng: np.random.Generator, max_length: int) -> FreeWord:
    n = int(rng.integers(0, max_length + 1))
    letters = rng.integers(1, 5, size=n) * rng.choice((-1, 1), size=n)
    return FreeWord(tuple(int(x) for x in letters), ABCD)


_TRIVIAL_POOL = relator_family("lysenok", 2).words + relator_family("gamma", 0).words


def random_trivial_word(rng: np.random.Generator, max_length: int) -> FreeWord:
    """Free product of conjugates of relators, freely reduced, length capped."""
    acc = FreeWord((), ABCD)
    for _ in range(8):
        r = _TRIVIAL_POOL[int(rng.integers(len(_TRIVIAL_POOL)))]
        if rng.integers(2):
            r = r.inverse()
        x = random_word(rng, 4)
        cand = free_reduce(acc * x.inverse() * r * x)
        if len(cand) > max_length:
            break
        acc = cand
    return acc


def word_sample(seed: int, count: int, max_length: int) -> list[FreeWord]:
    """Half uniform random words, half products of conjugated relators."""
    rng = np.random.default_rng(seed)
    return [random_trivial_word(rng, max_length) if i % 2 else
            random_word(rng, max_length) for i in range(count)]


def contraction_bound(length: int) -> int:
    return math.ceil(math.log2(length)) + 3 if length > 1 else 3


def check_word_problem(seed: int = DEFAULT.seed, count: int = DEFAULT.wp_words,
                       max_length: int = DEFAULT.wp_max_length,
                       level: int = DEFAULT.wp_level) -> list[Check]:
    a = anchor_for("word-problem")
    words = word_sample(seed, count, max_length)
    agree = trivial = contract = 0
    for w in words:
        cert = is_trivial_g(w)
        trivial += cert.verdict
        agree += cert.verdict == is_identity_at(w, level)
        contract += nucleus_depth(w) <= contraction_bound(len(w))
    return [Check("word-problem/agreement", a, count, agree),
            Check("word-problem/contraction", a, count, contract),
            # sanity: the sample must exercise both verdicts
            Check("word-problem/both-verdicts", a, True, 0 < trivial < count)]


# --------------------------------------------------------------------------
# 12. oracle equivalences


def check_oracles(seed: int = DEFAULT.seed, levels=(3, 4),
                  max_cosets: int = DEFAULT.max_cosets,
                  snf_samples: int = 200) -> list[Check]:
    a = anchor_for("oracles")
    out = []
    for kind in ("thm1", "thm4"):
        for n in levels:
            p = presentation_for(kind, n)
            tc = {s: enumerate_cosets(p, max_cosets=max_cosets, strategy=s)
                  for s in ("hlt", "felsch")}
            q = pquotient(p)
            bsgs = quotient_group(n).log2_order()
            orders = {"bsgs": _pow2(bsgs),
                      "pquotient": _pow2(q.pc.k) if q.complete else "incomplete"}
            for s, res in tc.items():
                orders[f"todd_coxeter_{s}"] = _log2_exact(res.order) if res.complete else "overflow"
            out.append(Check(f"oracles/orders/{kind}/n={n}", a,
                             {k: _pow2(expected_log2_order(n)) for k in orders}, orders))
    rng = np.random.default_rng(seed)
    agree = 0
    for _ in range(snf_samples):
        r, c = (int(x) for x in rng.integers(1, 6, size=2))
        A = rng.integers(-4, 5, size=(r, c)).tolist()
        agree += invariant_factors(A)[:min(r, c)] == gcd_of_minors_invariants(A)
    out.append(Check("oracles/snf-vs-minors", a, snf_samples, agree))
    for name in SMALL_GROUPS:
        p = small_group(name)
        q = pquotient(p)
        out.append(Check(f"oracles/cocycle/{name}", a,
                         cocycle_h2_dim(cayley_table(p)), p_cover(q.pc).m_star))
    return out


# --------------------------------------------------------------------------
# 13. five-term bookkeeping


def h2_dims(levels) -> dict[int, int]:
    return {n: multiplier_report(n).h2_dim for n in levels}


def check_five_term(grid=DEFAULT.grid) -> list[Check]:
    a = anchor_for("five-term")
    levels = sorted({n for n, _ in grid} | {n + k for n, k in grid})
    h2 = h2_dims(levels)
    bound = st3_frattini_dim(6)
    out = [Check("five-term/st3-bound", a, GOLDEN["st3_frattini_dim_level6"], bound)]
    for n, k in grid:
        ihd = invariant_hom_dim(n, k)
        out.append(Check(f"five-term/n={n},k={k}", a,
                         {"exact_sequence_inequality": True, "within_st3_bound": True,
                          "invariant_hom_dim": GOLDEN["invariant_hom_dim"][f"{n},{k}"]},
                         {"exact_sequence_inequality": h2[n + k] >= h2[n] - ihd,
                          "within_st3_bound": ihd <= bound, "invariant_hom_dim": ihd}))
        if k == 1:
            out.append(Check(f"five-term/n={n},k=1/swap-oracle", a, ihd,
                             invariant_hom_dim_swap_oracle(n)))
    growth = [h2[n] for n in levels]
    out.append(Check("five-term/h2-growth", a, [h2_formula(n) for n in levels], growth))
    return out


# --------------------------------------------------------------------------
# 14. limit calculator


def random_limit_system(rng: np.random.Generator) -> tuple[LimitSystem, int]:
    length = int(rng.integers(1, 60))
    steps = rng.integers(0, 5, size=length)
    dims = tuple(int(x) for x in np.cumsum(steps) + int(rng.integers(0, 5)))
    return LimitSystem(dims, int(rng.integers(0, 8))), int(rng.integers(0, 20))


def _bound_or_none(f: Callable, system: LimitSystem, M: int):
    try:
        return f(system, M)
    except SequenceExhausted:
        return None


def check_limit(seed: int = DEFAULT.seed, systems: int = DEFAULT.limit_systems,
                kernel_bound: int | None = None) -> list[Check]:
    a = anchor_for("limit")
    N = st3_frattini_dim(6) if kernel_bound is None else kernel_bound
    formula = LimitSystem.from_formula(h2_formula, 3, 400, N)
    rng = np.random.default_rng(seed)
    out = [Check("limit/worked-example", a, 25,
                 limit_bound(LimitSystem.from_formula(h2_formula, 3, 100, 5), 10))]
    agree = 0
    for i in range(systems):
        if i % 2:
            sys_, M = random_limit_system(rng)
        else:
            sys_, M = formula, int(rng.integers(0, 40))
        agree += _bound_or_none(limit_bound, sys_, M) == _bound_or_none(limit_bound_scan, sys_, M)
    out.append(Check("limit/bisect-vs-scan", a, systems, agree))
    # least n >= 3 with 2n + 1 > N * M
    expected = max(3, (N * 10 - 1) // 2 + 1)
    out.append(Check("limit/h2-formula", a, {"N": N, "M": 10, "index": expected},
                     {"N": N, "M": 10, "index": limit_bound(formula, 10)}))
    return out


# --------------------------------------------------------------------------
# registry used by report-all


def criteria(profile: Profile) -> dict[str, Callable[[], list[Check]]]:
    p = profile
    return {
        "01-orders": lambda: check_orders(p.order_levels),
        "02-relators": lambda: check_relators(p.relator_level, p.lysenok_cutoff),
        "03-certificates": lambda: check_certificates(p.certificate_levels, p.max_cosets),
        "04-abelianization": lambda: check_abelianization(p.abelianization_levels),
        "05-06-multiplier": lambda: check_multiplier(p.multiplier_levels),
        "07-qn": lambda: check_qn(p.qn_levels),
        "08-pair-identities": lambda: check_pair_identities(p.pair_range, p.capital_range),
        "09-kernels": lambda: check_kernels(p.kernel_levels),
        "10-branch-subgroup": lambda: check_branch_subgroup(p.branch_levels),
        "11-word-problem": lambda: check_word_problem(p.seed, p.wp_words,
                                                      p.wp_max_length, p.wp_level),
        "12-oracles": lambda: check_oracles(p.seed, max_cosets=p.max_cosets),
        "13-five-term": lambda: check_five_term(p.grid),
        "14-limit": lambda: check_limit(p.seed, p.limit_systems),
    }
