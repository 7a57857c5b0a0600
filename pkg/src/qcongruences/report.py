"""Verification outcome records and their text/json/csv serializations."""

from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "skipped")
_TAGS = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}


@dataclass
class VerificationReport:
    check_id: str
    paper_label: str = ""
    params: dict[str, Any] = field(default_factory=dict)
    status: str = "pass"
    first_failure: dict[str, Any] | None = None
    elapsed_ms: float = 0.0
    message: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and not self.first_failure:
            raise ValueError("a failing report must say where it failed")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, message: str, **where) -> "VerificationReport":
        self.status = "fail"
        self.message = message
        self.first_failure = where
        return self

    def skip(self, message: str) -> "VerificationReport":
        self.status = "skipped"
        self.message = message
        return self

    def as_dict(self, timing: bool = True) -> dict[str, Any]:
        d: dict[str, Any] = {
            "id": self.check_id,
            "paper_label": self.paper_label,
            "params": self.params,
            "status": self.status,
        }
        if self.first_failure is not None:
            d["first_failure"] = self.first_failure
        if self.message:
            d["message"] = self.message
        if timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


@contextmanager
def timed(report: VerificationReport):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = (time.perf_counter() - t0) * 1000.0


@dataclass
class SuiteResult:
    suite: str
    reports: list[VerificationReport] = field(default_factory=list)
    elapsed_ms: float = 0.0
    config: dict[str, Any] = field(default_factory=dict)

    @property
    def summary(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for r in self.reports:
            counts["skip" if r.status == "skipped" else r.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def failures(self) -> list[VerificationReport]:
        return [r for r in self.reports if r.status == "fail"]

    def as_dict(self, timing: bool = True) -> dict[str, Any]:
        run = {"suite": self.suite, "config": self.config}
        if timing:
            run["elapsed_ms"] = round(self.elapsed_ms, 3)
        return {
            "run": run,
            "checks": [r.as_dict(timing) for r in self.reports],
            "summary": self.summary,
        }


def _params_text(params: dict[str, Any]) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


def emit_report(result: SuiteResult, fmt: str = "text", timing: bool = True) -> bytes:
    if fmt == "json":
        return (json.dumps(result.as_dict(timing), indent=2, sort_keys=True) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["id", "paper_label", "status", "params", "first_failure", "message"]
        if timing:
            header.append("elapsed_ms")
        writer.writerow(header)
        for r in result.reports:
            row = [r.check_id, r.paper_label, r.status, json.dumps(r.params, sort_keys=True),
                   json.dumps(r.first_failure, sort_keys=True) if r.first_failure else "", r.message]
            if timing:
                row.append(f"{r.elapsed_ms:.3f}")
            writer.writerow(row)
        return buf.getvalue().encode()
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = []
    width = max([len(r.check_id) for r in result.reports] + [10])
    for r in result.reports:
        line = f"{_TAGS[r.status]}  {r.check_id:<{width}}  {_params_text(r.params)}"
        if r.first_failure:
            line += f"  first failure: {_params_text(r.first_failure)}"
        if r.message and r.status != "pass":
            line += f"  ({r.message})"
        lines.append(line.rstrip())
    s = result.summary
    tail = f"{result.suite}: {s['pass']} passed, {s['fail']} failed, {s['skip']} skipped"
    if timing:
        tail += f" in {result.elapsed_ms / 1000:.1f}s"
    lines.append(tail)
    return ("\n".join(lines) + "\n").encode()
