# src/audit/check_report.py
import json
import logging
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List

from src.utils.canonical import canonical_bytes, canonical_digest

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
BUDGET_EXCEEDED = "budget_exceeded"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, BUDGET_EXCEEDED, SKIPPED)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    instance: str
    expected: Any
    computed: Any
    status: str

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @classmethod
    def compare(cls, check_id: str, instance: str, expected: Any, computed: Any) -> "CheckRecord":
        status = PASS if expected == computed else FAIL
        return cls(check_id, instance, _plain(expected), _plain(computed), status)

    def to_dict(self) -> dict:
        return asdict(self)


def _plain(value: Any) -> Any:
    """Strings for objects without a canonical JSON form (LieElement, EulerSeries, Root)."""
    try:
        canonical_bytes(value)
        return value
    except TypeError:
        return str(value)


@dataclass
class CheckReport:
    suite: str
    records: List[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        if record.status == FAIL:
            logger.warning("%s [%s]: expected %s, computed %s", record.check_id, record.instance, record.expected, record.computed)
        elif record.status == BUDGET_EXCEEDED:
            logger.warning("%s [%s]: enumeration budget exceeded", record.check_id, record.instance)
        else:
            logger.debug("%s [%s]: %s", record.check_id, record.instance, record.status)
        return record

    def check(self, check_id: str, instance: str, expected: Any, computed: Any) -> CheckRecord:
        return self.add(CheckRecord.compare(check_id, instance, expected, computed))

    def extend(self, records: Iterable[CheckRecord]) -> None:
        for r in records:
            self.add(r)

    def merge(self, other: "CheckReport") -> None:
        self.records.extend(other.records)

    def counts(self) -> Dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.status in (PASS, SKIPPED) for r in self.records)

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if r.status == FAIL]

    def exit_status(self) -> int:
        counts = self.counts()
        if counts[FAIL]:
            return EXIT_FAIL
        if counts[BUDGET_EXCEEDED]:
            return EXIT_BUDGET
        return EXIT_OK

    def to_list(self) -> List[dict]:
        return [r.to_dict() for r in self.records]

    def to_bytes(self) -> bytes:
        return canonical_bytes(self.to_list())

    def digest(self) -> str:
        return canonical_digest(self.to_list())


class ReportLogger:
    """
    Append-only JSONL log of check records. Each line is the canonical JSON of
    one record plus the suite name.
    """

    def __init__(self, log_path: str):
        self.log_path = log_path
        parent = os.path.dirname(self.log_path)
        if parent:
            os.makedirs(parent, exist_ok=True)

    def append(self, report: CheckReport) -> int:
        with open(self.log_path, "ab") as fh:
            for r in report.records:
                fh.write(canonical_bytes({"suite": report.suite, **r.to_dict()}) + b"\n")
            fh.flush()
            try:
                os.fsync(fh.fileno())
            except OSError:
                pass
        return len(report.records)

    def read_all(self) -> list:
        if not os.path.exists(self.log_path):
            return []
        out = []
        with open(self.log_path, "rb") as fh:
            for ln in fh:
                try:
                    out.append(json.loads(ln.decode("utf-8")))
                except ValueError:
                    logger.warning("skipping malformed line in %s", self.log_path)
        return out
