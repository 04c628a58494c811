# bench/suite_timing.py

# ensure repo root is on sys.path so `import src.*` works from any directory
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

"""
Wall-clock per verification suite and rank.

Usage:
python bench/suite_timing.py --max-n 3 --workers 4
"""
import argparse
import concurrent.futures
import time

from src.cli.commands import SUITE_RUNNERS
from src.cli.config import RunConfig


def run_one(job):
    suite, n = job
    cfg = RunConfig(n=n, suite=suite).validate()
    start = time.perf_counter()
    report = SUITE_RUNNERS[suite](cfg)
    return suite, n, (time.perf_counter() - start) * 1000, report.exit_status()


def main():
    p = argparse.ArgumentParser(description="Wall-clock per verification suite")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--workers", type=int, default=4)
    args = p.parse_args()

    jobs = [(s, n) for n in range(1, args.max_n + 1) for s in SUITE_RUNNERS]
    with concurrent.futures.ProcessPoolExecutor(max_workers=args.workers) as ex:
        results = list(ex.map(run_one, jobs))
    for suite, n, ms, status in sorted(results):
        print(f"{suite:<13} n={n} {ms:10.1f}ms exit={status}")
    total = sum(r[2] for r in results)
    print(f"total={total:.1f}ms")


if __name__ == "__main__":
    main()
