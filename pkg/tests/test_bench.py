from bench.suite_timing import run_one
from src.audit.check_report import EXIT_OK


def test_run_one_times_a_suite():
    suite, n, ms, status = run_one(("gabriel", 1))
    assert (suite, n, status) == ("gabriel", 1, EXIT_OK)
    assert ms >= 0
