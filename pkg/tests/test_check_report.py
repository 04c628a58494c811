import json
from fractions import Fraction

import pytest

from src.audit.check_report import (
    BUDGET_EXCEEDED,
    EXIT_BUDGET,
    EXIT_FAIL,
    EXIT_OK,
    FAIL,
    PASS,
    SKIPPED,
    CheckRecord,
    CheckReport,
    ReportLogger,
)
from src.lie.liecore import LieElement


def test_compare_sets_status():
    assert CheckRecord.compare("dim", "n=2", 7, 7).status == PASS
    rec = CheckRecord.compare("dim", "n=2", 7, 6)
    assert rec.status == FAIL
    assert rec.to_dict() == {"check_id": "dim", "instance": "n=2", "expected": 7, "computed": 6, "status": FAIL}


def test_unserializable_values_become_strings():
    rec = CheckRecord.compare("bracket", "[a,b]", LieElement({"x": 1}), LieElement({"x": 1}))
    assert rec.expected == "x"
    assert rec.status == PASS


def test_unknown_status():
    with pytest.raises(ValueError):
        CheckRecord("x", "y", 1, 1, "maybe")


def test_exit_status_precedence():
    report = CheckReport(suite="demo")
    report.check("a", "1", 1, 1)
    report.add(CheckRecord("b", "2", None, "skipped", SKIPPED))
    assert report.ok and report.exit_status() == EXIT_OK
    report.add(CheckRecord("c", "3", 1, "budget", BUDGET_EXCEEDED))
    assert not report.ok and report.exit_status() == EXIT_BUDGET
    report.check("d", "4", 1, 2)
    assert report.exit_status() == EXIT_FAIL
    assert report.counts() == {PASS: 1, FAIL: 1, BUDGET_EXCEEDED: 1, SKIPPED: 1}
    assert [r.check_id for r in report.failures()] == ["d"]


def test_bytes_and_digest_are_deterministic():
    def build():
        r = CheckReport(suite="demo")
        r.check("half", "x", Fraction(1, 2), Fraction(1, 2))
        r.check("rows", "y", [1, 2], [1, 2])
        return r

    a, b = build(), build()
    assert a.to_bytes() == b.to_bytes()
    assert a.digest() == b.digest()
    assert b'{"den":2,"num":1}' in a.to_bytes()


def test_merge():
    a = CheckReport(suite="a")
    a.check("x", "1", 1, 1)
    b = CheckReport(suite="b")
    b.check("y", "1", 1, 2)
    a.merge(b)
    assert len(a.records) == 2
    assert not a.ok


def test_report_logger_appends_jsonl(tmp_path):
    path = tmp_path / "logs" / "checks.jsonl"
    logger = ReportLogger(str(path))
    report = CheckReport(suite="demo")
    report.check("a", "1", 1, 1)
    report.check("b", "2", 1, 2)
    assert logger.append(report) == 2
    logger.append(report)
    rows = logger.read_all()
    assert len(rows) == 4
    assert rows[0]["suite"] == "demo"
    assert rows[1]["status"] == FAIL
    with open(path, "a") as fh:
        fh.write("not json\n")
    assert len(logger.read_all()) == 4
    assert json.loads(path.read_text().splitlines()[0])["check_id"] == "a"


def test_missing_log_reads_empty(tmp_path):
    assert ReportLogger(str(tmp_path / "none.jsonl")).read_all() == []
