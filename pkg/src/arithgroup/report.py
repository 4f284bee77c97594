"""Named pass/fail checks with string witnesses, serializable to JSON."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import __version__


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)
    # each failure: {"identity": str, "roots": [labels]}
    failures: list = field(default_factory=list)

    def to_json(self):
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "witness": {k: str(v) for k, v in self.witness.items()},
            "failures": self.failures,
        }


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, check: Check):
        self.checks.append(check)
        return check

    def check(self, name):
        return next(c for c in self.checks if c.name == name)

    def to_json(self):
        checks = sorted(self.checks, key=lambda c: c.name)
        return {
            "tool": "arithgroup",
            "version": self.version,
            "command": self.command,
            "checks": [c.to_json() for c in checks],
            "verdict": "pass" if self.passed else "fail",
        }

    def lines(self):
        for c in self.checks:
            w = ", ".join(f"{k}={v}" for k, v in c.witness.items())
            yield f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{w}]" if w else "")
            for f in c.failures[:10]:
                yield f"      {f['identity']}"
            if len(c.failures) > 10:
                yield f"      ... {len(c.failures) - 10} more"
        yield f"verdict: {'pass' if self.passed else 'fail'}"
