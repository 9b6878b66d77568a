"""Verification reports: deterministic, machine-readable check records.

A report is a list of check records plus the field configuration that
produced them.  Records carry a `claim` string stating the
mathematical assertion being checked (or "plumbing" for harness
checks).  JSON output is canonical: keys sorted, checks sorted by id,
and timings omitted unless explicitly requested, so identical inputs
produce byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

SCHEMA_VERSION = "v1"
TOOL_VERSION = "0.1.0"

PASS = "pass"
FAIL = "fail"
EVIDENCE = "evidence"
SKIPPED = "skipped"


@dataclass
class CheckRecord:
    id: str
    claim: str
    status: str
    expected: object = None
    observed: object = None
    runtime_ms: float | None = None
    witness: object = None  # failing point/subspace/datum for offline replay

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "id": self.id,
            "claim": self.claim,
            "status": self.status,
            "expected": self.expected,
            "observed": self.observed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if include_timings:
            out["runtime_ms"] = self.runtime_ms
        return out


@dataclass
class VerificationReport:
    command: str
    n: int
    k: int
    prime: int | None
    seed: int
    checks: list[CheckRecord] = dc_field(default_factory=list)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.checks.append(record)
        return record

    def check(self, id: str, claim: str, expected, observed,
              runtime_ms: float | None = None, witness=None,
              status: str | None = None) -> CheckRecord:
        """Convenience: status from expected == observed unless forced."""
        if status is None:
            status = PASS if expected == observed else FAIL
        return self.add(CheckRecord(id=id, claim=claim, status=status,
                                    expected=expected, observed=observed,
                                    runtime_ms=runtime_ms, witness=witness))

    @property
    def verdict(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == PASS else 1

    def to_dict(self, include_timings: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "tool": "instmonad",
            "version": TOOL_VERSION,
            "command": self.command,
            "field": {"modality": "prime-field" if self.prime else "rationals",
                      "prime": self.prime, "seed": self.seed},
            "instance": {"n": self.n, "k": self.k},
            "checks": [c.to_dict(include_timings)
                       for c in sorted(self.checks, key=lambda c: c.id)],
            "verdict": self.verdict,
        }

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        lines = [
            f"# {self.command} (n={self.n}, k={self.k})",
            "",
            f"- field: prime {self.prime}, seed {self.seed}",
            f"- verdict: **{self.verdict}**",
            "",
            "| id | status | expected | observed | ms | claim |",
            "|----|--------|----------|----------|----|-------|",
        ]
        for c in sorted(self.checks, key=lambda c: c.id):
            ms = f"{c.runtime_ms:.0f}" if c.runtime_ms is not None else ""
            lines.append(f"| {c.id} | {c.status} | {c.expected} | {c.observed} "
                         f"| {ms} | {c.claim} |")
        return "\n".join(lines) + "\n"
