"""Verification reports: counted checks, failure records, informational notes."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass


@dataclass
class Record:
    suite: str
    axiom: str
    instance: str
    lhs: str
    rhs: str
    residual: str
    passed: bool

    def as_dict(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


class Report:
    def __init__(self, suite: str):
        self.suite = suite
        self.checked: Counter = Counter()
        self.failures: list[Record] = []
        self.notes: list[dict] = []

    def check(self, axiom: str, instance, lhs, rhs, residual=None) -> bool:
        """Record ``lhs == rhs``; ``residual`` defaults to ``lhs - rhs``."""
        if residual is None:
            residual = lhs - rhs
        ok = _is_zero(residual)
        self.checked[axiom] += 1
        if not ok:
            self.failures.append(Record(self.suite, axiom, str(instance), _show(lhs), _show(rhs),
                                        _show(residual), False))
        return ok

    def require(self, axiom: str, instance, ok: bool, lhs="", rhs="", residual="") -> bool:
        self.checked[axiom] += 1
        if not ok:
            self.failures.append(Record(self.suite, axiom, str(instance), _show(lhs), _show(rhs),
                                        _show(residual), False))
        return ok

    def note(self, topic: str, message: str, **values):
        self.notes.append({"topic": topic, "message": message,
                           **{k: _show(v) for k, v in values.items()}})

    def merge(self, other: "Report"):
        self.checked.update(other.checked)
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        return self

    @property
    def passed(self) -> bool:
        return not self.failures

    def total(self) -> int:
        return sum(self.checked.values())

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "checked": dict(sorted(self.checked.items())),
            "records": [r.as_dict() for r in self.failures],
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = ["== %s: %s (%d checks)" % (self.suite, "PASS" if self.passed else "FAIL", self.total())]
        width = max((len(a) for a in self.checked), default=0)
        for axiom, n in sorted(self.checked.items()):
            bad = sum(1 for r in self.failures if r.axiom == axiom)
            lines.append("  %-*s  %5d checked  %s" % (width, axiom, n, "ok" if not bad else "%d FAILED" % bad))
        for r in self.failures[:50]:
            lines.append("  FAIL %s [%s]: lhs = %s ; rhs = %s ; residual = %s" % (
                r.axiom, r.instance, r.lhs, r.rhs, r.residual))
        if len(self.failures) > 50:
            lines.append("  ... %d more failures" % (len(self.failures) - 50))
        for n in self.notes:
            extra = "; ".join("%s = %s" % (k, v) for k, v in n.items() if k not in ("topic", "message"))
            lines.append("  note [%s] %s%s" % (n["topic"], n["message"], (" :: " + extra) if extra else ""))
        return "\n".join(lines)

    def __repr__(self):
        return "<Report %s %s>" % (self.suite, "pass" if self.passed else "%d failures" % len(self.failures))


def _is_zero(v) -> bool:
    if isinstance(v, (list, tuple)):
        return all(_is_zero(x) for x in v)
    return not v


def _show(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_show(x) for x in v) + "]"
    return str(v)
