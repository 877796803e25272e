"""Check entries, the expected-value manifest and JSON reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Any

from . import __version__

PASS, FAIL, RESOURCE = "pass", "fail", "resource"

EXIT_PASS, EXIT_FAIL, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 64


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    expected: Any
    computed: Any
    verdict: str = ""

    def __post_init__(self):
        if not self.verdict:
            object.__setattr__(self, "verdict",
                               PASS if self.expected == self.computed else FAIL)

    @classmethod
    def resource(cls, name: str, anchor: str, expected: Any, reason: str) -> "Check":
        return cls(name, anchor, expected, {"resource_limit": reason}, RESOURCE)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


@dataclass(frozen=True)
class ManifestEntry:
    criterion: int
    name: str
    anchor: str
    command: str


# one entry per acceptance criterion; anchors state the claim being checked
MANIFEST: tuple[ManifestEntry, ...] = (
    ManifestEntry(1, "orders", "|G_n| = 2^(5*2^(n-3)+2), |G_1| = 2, |G_2| = 8", "order"),
    ManifestEntry(2, "relators", "defining relators act trivially on the tree", "check-relators"),
    ManifestEntry(3, "certificates", "coset enumeration order equals |G_n|", "enumerate"),
    ManifestEntry(4, "abelianization", "G_n^ab = C2^3", "abelianization"),
    ManifestEntry(5, "multiplier", "dim H^2(G_n, F2) = 2n+1, M(G_n) mod-2 rank 2n-2 (rank-only certificate)", "multiplier"),
    ManifestEntry(6, "independence", "relator images span a (2n+1)-space", "multiplier"),
    ManifestEntry(7, "qn", "listed images, orders and rank in Q_n", "qn"),
    ManifestEntry(8, "pair-identities", "pair map sends each relator to (1, predecessor)", "pair-identities"),
    ManifestEntry(9, "kernels", "|Ker q_n| = 2^(5*2^(n-4)), elementary abelian", "kernels"),
    ManifestEntry(10, "branch-subgroup", "St(3) <= K, index of K constant", "kernels"),
    ManifestEntry(11, "word-problem", "branch algorithm agrees with level-12 action", "branch-wp"),
    ManifestEntry(12, "oracles", "independent computations agree", "report-all"),
    ManifestEntry(13, "five-term", "dim H^2(G_(n+k)) >= dim H^2(G_n) - invariant-hom dim", "invariant-homs"),
    ManifestEntry(14, "limit", "least i with dim > N*M, bisection equals scan", "limit-bound"),
)

# frozen values with no closed formula, recorded from the first verified run
GOLDEN = {
    "K_index": 16,
    "st3_frattini_dim_level6": 9,
    "invariant_hom_dim": {"3,1": 1, "3,2": 2, "4,1": 1, "4,2": 2},
}


def anchor_for(name: str) -> str:
    for e in MANIFEST:
        if e.name == name:
            return e.anchor
    raise KeyError(name)


@dataclass
class Report:
    command: str
    parameters: dict
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    version: str = __version__
    output: list[str] = field(default_factory=list)  # human-readable extras

    def extend(self, checks: list[Check]):
        self.checks.extend(checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == FAIL]

    @property
    def resource_limited(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == RESOURCE]

    def exit_code(self) -> int:
        if self.failures:
            return EXIT_FAIL
        if self.resource_limited:
            return EXIT_RESOURCE
        return EXIT_PASS

    def to_dict(self, with_timings: bool = True) -> dict:
        checks = sorted(self.checks, key=lambda c: c.name)
        out = {
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "summary": {"total": len(checks),
                        "pass": sum(c.verdict == PASS for c in checks),
                        "fail": sum(c.verdict == FAIL for c in checks),
                        "resource": sum(c.verdict == RESOURCE for c in checks)},
            "checks": [asdict(c) for c in checks],
        }
        if with_timings:
            out["timings"] = {k: round(v, 3) for k, v in sorted(self.timings.items())}
        return out

    def to_json(self, with_timings: bool = True) -> str:
        return json.dumps(self.to_dict(with_timings), indent=2, sort_keys=True,
                          default=_jsonable) + "\n"

    def lines(self) -> list[str]:
        out = []
        for c in sorted(self.checks, key=lambda c: c.name):
            out.append(f"{c.verdict.upper():8s} {c.name}: expected {_short(c.expected)}, "
                       f"computed {_short(c.computed)}")
        s = self.to_dict(False)["summary"]
        out.append(f"{s['pass']} passed, {s['fail']} failed, "
                   f"{s['resource']} resource-limited")
        return out


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"not JSON serialisable: {type(x).__name__}")


def _short(x, limit: int = 80) -> str:
    s = json.dumps(x, default=_jsonable, sort_keys=True)
    return s if len(s) <= limit else s[:limit - 3] + "..."


def load_schema() -> dict:
    text = resources.files("grigquot").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def validate(report_dict: dict):
    """Raise ``jsonschema.ValidationError`` if the report is malformed."""
    import jsonschema
    jsonschema.validate(report_dict, load_schema())
