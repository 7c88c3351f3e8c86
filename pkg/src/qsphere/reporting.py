"""Check records, reports, and exit-code semantics."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict

EXIT_OK = 0
EXIT_NUMERIC_FAILURE = 1
EXIT_SYMBOLIC_FAILURE = 2
EXIT_CONFIG_ERROR = 3


@dataclass
class CheckRecord:
    check_id: str
    paper_ref: str
    status: str                 # pass | fail | skip
    residual: float
    runtime_ms: float = 0.0
    details: str = ""
    kind: str = "numeric"       # numeric | symbolic

    def to_jsonable(self) -> dict:
        d = asdict(self)
        d["residual"] = float(d["residual"])
        return d


@dataclass
class Report:
    records: list[CheckRecord] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def extend(self, records: list[CheckRecord]) -> None:
        self.records.extend(records)

    @property
    def n_fail(self) -> int:
        return sum(r.status == "fail" for r in self.records)

    @property
    def ok(self) -> bool:
        return self.records != [] and self.n_fail == 0

    def exit_code(self) -> int:
        if any(r.status == "fail" and r.kind == "symbolic" for r in self.records):
            return EXIT_SYMBOLIC_FAILURE
        if self.n_fail:
            return EXIT_NUMERIC_FAILURE
        return EXIT_OK

    def max_residual(self) -> float:
        return max((r.residual for r in self.records), default=0.0)

    def to_jsonable(self) -> dict:
        return {
            "config": self.config,
            "records": [r.to_jsonable() for r in self.records],
            "summary": {
                "n_checks": len(self.records),
                "n_fail": self.n_fail,
                "max_residual": self.max_residual(),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), indent=2, sort_keys=True)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000.0


def checked(check_id: str, paper_ref: str, residual: float, tol: float,
            runtime_ms: float = 0.0, kind: str = "numeric",
            details: str = "") -> CheckRecord:
    return CheckRecord(
        check_id=check_id,
        paper_ref=paper_ref,
        status="pass" if residual <= tol else "fail",
        residual=float(residual),
        runtime_ms=runtime_ms,
        details=details,
        kind=kind,
    )


def skipped(check_id: str, paper_ref: str, details: str = "") -> CheckRecord:
    return CheckRecord(check_id=check_id, paper_ref=paper_ref, status="skip",
                       residual=0.0, details=details)
