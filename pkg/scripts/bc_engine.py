#!/usr/bin/env python3
# scripts/bc_engine.py

# ensure repo root is on sys.path so `import src.*` works in CI/script-runner
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

"""
Command-line surface of the Lambda(n-1,1,1) engine.

Usage:
python scripts/bc_engine.py indecomposables --n 3
python scripts/bc_engine.py tables --n 3 --table 2 --format latex
python scripts/bc_engine.py verify --n 3 --suite oracle --primes 2,3,5 --budget 500000
"""
import argparse
import logging

from src.audit.check_report import EXIT_BUDGET, EXIT_USAGE, ReportLogger
from src.cli.commands import run_command
from src.cli.config import COMMANDS, FORMATS, SUITES, ConfigError, load_run_config, parse_primes
from src.quiver.hall_oracle import BudgetExceededError
from src.roots.rootsys import InvalidRankError

logger = logging.getLogger("bc_engine")


def parse_args(argv=None):
    p = argparse.ArgumentParser(description="Lambda(n-1,1,1) engine")
    p.add_argument("command", choices=COMMANDS, help="What to run")
    p.add_argument("--n", type=int, default=None, help="Rank n >= 1 (default from config)")
    p.add_argument("--format", choices=FORMATS, default=None, help="Output format")
    p.add_argument("--suite", choices=SUITES, default=None, help="Verification suite (verify only)")
    p.add_argument("--table", type=int, choices=(1, 2), default=None, help="1: <M,N>_t, 2: <M,N>_1")
    p.add_argument(
        "--max-depth",
        type=int,
        default=None,
        help="Resolution depth before giving up on a period (default 2n+4)",
    )
    p.add_argument(
        "--budget",
        type=int,
        default=None,
        help="Cap on enumerated subspace tuples per oracle triple",
    )
    p.add_argument("--primes", default=None, help="Oracle primes, comma separated (e.g. 2,3,5)")
    p.add_argument(
        "--force-oracle",
        action="store_true",
        default=None,
        help="Run the oracle suite even for n > 3",
    )
    p.add_argument("--config", default=None, help="Defaults JSON (else $BC_ENGINE_CONFIG or config/engine_defaults.json)")
    p.add_argument("--report-log", default=None, help="Append verification records to this JSONL file")
    p.add_argument("--log-level", default="WARNING", help="Logging level for stderr")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = load_run_config(
            args.config,
            {
                "command": args.command,
                "n": args.n,
                "format": args.format,
                "suite": args.suite,
                "table": args.table,
                "max_depth": args.max_depth,
                "budget": args.budget,
                "oracle_primes": parse_primes(args.primes) if args.primes else None,
                "force_oracle": args.force_oracle,
            },
        )
        result = run_command(cfg)
    except (ConfigError, InvalidRankError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_BUDGET)

    sys.stdout.write(result.output)
    sys.stdout.flush()
    if args.report_log and result.report is not None:
        written = ReportLogger(args.report_log).append(result.report)
        logger.info("appended %d records to %s", written, args.report_log)
    raise SystemExit(result.exit_code)


if __name__ == "__main__":
    main()
