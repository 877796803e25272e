"""Command-line front end.

Exit codes: 0 all checks pass, 1 a verification failure, 2 a resource limit
was hit (and nothing failed), 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

from . import checks as C
from .config import get_profile
from .cosets import PresentationFP, enumerate_cosets
from .limits import (LimitSystem, SequenceExhausted, h2_formula, invariant_hom_dim,
                     limit_bound, st3_frattini_dim)
from .nilq4 import qn_build, qn_image
from .report import EXIT_USAGE, Check, Report, anchor_for, validate
from .stab import pair_identity_detail
from .tree import is_identity_at, is_trivial_g
from .words import word


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--profile", default="default", choices=["default", "deep"])
    common.add_argument("--json", metavar="PATH", help="write the JSON report here")
    common.add_argument("--seed", type=int, default=None)

    p = _Parser(prog="grigquot", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    s = add("order", "order of G_n by stabiliser chain")
    s.add_argument("--level", type=int)
    s = add("check-relators", "relators act trivially on the tree")
    s.add_argument("--family", choices=["thm1", "thm4", "lysenok"])
    s.add_argument("--level", type=int, help="deepest level checked (default 8)")
    s = add("enumerate", "Todd-Coxeter order of a presentation")
    s.add_argument("--family", default="thm1",
                   choices=["thm1", "thm4", "hopf", "lemma1_wreath"])
    s.add_argument("--level", type=int)
    s.add_argument("--file", help="presentation text file ('gens:' line, one relator per line)")
    s.add_argument("--max-cosets", type=int)
    s.add_argument("--strategy", default="hlt", choices=["hlt", "felsch"])
    s = add("abelianization", "invariant factors of the abelianization")
    s.add_argument("--family", choices=["thm1", "thm4"])
    s.add_argument("--level", type=int)
    s = add("multiplier", "dim H^2, multiplier rank and relator independence")
    s.add_argument("--level", type=int)
    s = add("qn", "the abelian groups Q_n")
    s.add_argument("--level", type=int)
    s.add_argument("--word", help="also print the Q_n coordinates of this word")
    s = add("pair-identities", "pair images of the relator families")
    s.add_argument("--family", choices=list("uvwtUVWT"))
    s.add_argument("--n", type=int, help="largest index checked (default 10)")
    s = add("kernels", "kernels of G_n -> G_(n-1) and the branch subgroup")
    s.add_argument("--level", type=int)
    s = add("branch-wp", "branch word-problem algorithm")
    s.add_argument("--word", help="decide this word and print the certificate")
    s.add_argument("--level", type=int, default=12,
                   help="level of the permutation cross-check")
    s = add("invariant-homs", "invariant homomorphisms of kernels")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s = add("limit-bound", "direct-limit index calculator")
    s.add_argument("--dims", type=_int_list,
                   help="dimensions, comma separated (default 2n+1 from n=3)")
    s.add_argument("--kernel-bound", type=int, help="N (default: computed St(3) bound)")
    s.add_argument("--target", type=int, default=10, help="M")
    s.add_argument("--start", type=int, default=3, help="index of the first dimension")
    s = add("report-all", "every acceptance check")
    s.add_argument("--jobs", type=int, default=1)
    return p


# --------------------------------------------------------------------------
# commands; each returns (checks, extra output lines[, timings])


def _levels(arg, default):
    return (arg,) if arg is not None else tuple(default)


def cmd_order(a, prof):
    return C.check_orders(_levels(a.level, prof.order_levels)), []


def cmd_check_relators(a, prof):
    fams = (a.family,) if a.family else ("thm1", "thm4", "lysenok")
    return C.check_relators(a.level or prof.relator_level, prof.lysenok_cutoff, fams), []


def cmd_enumerate(a, prof):
    max_cosets = a.max_cosets or prof.max_cosets
    if a.max_cosets is not None and a.max_cosets < 1:
        raise UsageError("--max-cosets must be positive")
    if a.file:
        p = PresentationFP.from_text(Path(a.file).read_text(), Path(a.file).stem)
        res = enumerate_cosets(p, max_cosets=max_cosets, strategy=a.strategy)
        name = f"enumerate/{p.name}"
        if not res.complete:
            return [Check.resource(name, "coset enumeration", None,
                                   f"more than {max_cosets} cosets")], []
        # no expected value for an arbitrary file: report the order only
        return [Check(name, "coset enumeration", res.order, res.order)], [
            f"order {res.order} (max live {res.max_live}, defined {res.total_defined})"]
    if a.family == "hopf":
        levels = _levels(a.level, prof.certificate_levels)
        return C.check_certificates(levels, max_cosets, ("hopf",), wreath=False), []
    if a.family == "lemma1_wreath":
        return C.check_certificates((3,), max_cosets, ()), []
    return C.check_certificates(_levels(a.level, prof.certificate_levels), max_cosets,
                                (a.family,), wreath=False), []


def cmd_abelianization(a, prof):
    kinds = (a.family,) if a.family else ("thm1", "thm4")
    return C.check_abelianization(_levels(a.level, prof.abelianization_levels), kinds), []


def cmd_multiplier(a, prof):
    return C.check_multiplier(_levels(a.level, prof.multiplier_levels)), []


def cmd_qn(a, prof):
    levels = _levels(a.level, prof.qn_levels)
    lines = []
    for n in levels:
        s = C.qn_summary(n)
        lines.append(f"Q_{n}: invariants {s['invariants']} (order 2^{s['log2_order']}), "
                     f"commutator orders {s['commutator_orders']}")
        if a.word:
            lines.append(f"  {a.word} -> {list(qn_image(word(a.word), qn_build(n)))}")
    return C.check_qn(levels), lines


def cmd_pair_identities(a, prof):
    hi = a.n or prof.pair_range[1]
    if a.family:
        lo = 1 if a.family in "uvUV" else 4
        out = [C.pair_identity_check(a.family, i) for i in range(lo, hi + 1)]
        lines = [f"{a.family}_{i}: pair {pair_identity_detail(a.family, i).pair}"
                 for i in range(lo, hi + 1)]
        return out, lines
    return C.check_pair_identities((1, hi), (4, max(4, hi))), []


def cmd_kernels(a, prof):
    if a.level is not None:
        return C.check_kernels((a.level,)) + C.check_branch_subgroup((a.level,)), []
    return C.check_kernels(prof.kernel_levels) + C.check_branch_subgroup(prof.branch_levels), []


def cmd_branch_wp(a, prof):
    if a.word is None:
        seed = prof.seed if a.seed is None else a.seed
        return C.check_word_problem(seed, prof.wp_words, prof.wp_max_length, a.level), []
    w = word(a.word)
    cert = is_trivial_g(w)
    perm_trivial = is_identity_at(w, a.level)
    lines = [f"{a.word}: {'trivial' if cert.verdict else 'nontrivial'}",
             json.dumps(cert.trace.to_dict(), indent=1)]
    if cert.witness_level is not None:
        lines.insert(1, f"acts nontrivially from level {cert.witness_level}")
    return [Check(f"branch-wp/{a.word}", anchor_for("word-problem"),
                  perm_trivial, cert.verdict)], lines


def cmd_invariant_homs(a, prof):
    if (a.n is None) != (a.k is None):
        raise UsageError("give both --n and --k, or neither")
    if a.n is not None:
        try:
            value = invariant_hom_dim(a.n, a.k)
        except ValueError as exc:
            raise UsageError(str(exc))
        return [], [f"invariant_hom_dim({a.n},{a.k}) = {value}"]
    return C.check_five_term(prof.grid), []


def cmd_limit_bound(a, prof):
    N = a.kernel_bound if a.kernel_bound is not None else st3_frattini_dim(6)
    if a.dims:
        try:
            system = LimitSystem(tuple(a.dims), N, a.start)
        except ValueError as exc:
            raise UsageError(str(exc))
    else:
        system = LimitSystem.from_formula(h2_formula, a.start, a.start + 10 ** 5, N)
    try:
        i = limit_bound(system, a.target)
    except SequenceExhausted as exc:
        return [Check.resource("limit-bound", anchor_for("limit"), None, str(exc))], []
    return [], [f"N={N} M={a.target}: least index {i} (dim {system.dims[i - a.start]})"]


def _run_criterion(args):
    profile_name, seed, key = args
    prof = replace(get_profile(profile_name), seed=seed)
    t = time.perf_counter()
    return key, C.criteria(prof)[key](), time.perf_counter() - t


def cmd_report_all(a, prof):
    if a.jobs < 1:
        raise UsageError("--jobs must be positive")
    seed = prof.seed if a.seed is None else a.seed
    jobs = [(prof.name, seed, k) for k in C.criteria(prof)]
    if a.jobs > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as ex:
            results = list(ex.map(_run_criterion, jobs))
    else:
        results = [_run_criterion(j) for j in jobs]
    out = []
    timings = {}
    for k, checks, dt in sorted(results, key=lambda r: r[0]):
        out.extend(checks)
        timings[k] = dt
    return out, [], timings


COMMANDS = {
    "order": cmd_order,
    "check-relators": cmd_check_relators,
    "enumerate": cmd_enumerate,
    "abelianization": cmd_abelianization,
    "multiplier": cmd_multiplier,
    "qn": cmd_qn,
    "pair-identities": cmd_pair_identities,
    "kernels": cmd_kernels,
    "branch-wp": cmd_branch_wp,
    "invariant-homs": cmd_invariant_homs,
    "limit-bound": cmd_limit_bound,
    "report-all": cmd_report_all,
}


def execute(args: argparse.Namespace) -> Report:
    prof = get_profile(args.profile)
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("command", "json") and v is not None}
    t = time.perf_counter()
    res = COMMANDS[args.command](args, prof)
    report = Report(args.command, params, list(res[0]), output=list(res[1]))
    if len(res) > 2:
        report.timings.update(res[2])
    report.timings["total"] = time.perf_counter() - t
    return report


def run(argv=None) -> Report:
    """Parse ``argv`` and execute one command; raises UsageError on bad input."""
    return execute(build_parser().parse_args(argv))


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report = execute(args)
    except (UsageError, ValueError) as exc:
        # ValueError: a parameter outside a routine's documented range
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for line in report.output + report.lines():
        print(line)
    if args.json:
        validate(report.to_dict())
        Path(args.json).write_text(report.to_json())
    if report.failures:
        print(f"{len(report.failures)} check(s) failed", file=sys.stderr)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
