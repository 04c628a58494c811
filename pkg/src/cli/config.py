# src/cli/config.py
"""
RunConfig: the defaults file plus command-line overrides.

The defaults file is config/engine_defaults.json unless BC_ENGINE_CONFIG
points somewhere else.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any, Mapping, Optional, Tuple

logger = logging.getLogger(__name__)

ENV_CONFIG = "BC_ENGINE_CONFIG"
DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "engine_defaults.json"

COMMANDS = ("indecomposables", "tables", "verify")
FORMATS = ("json", "csv", "latex")
SUITES = ("all", "jacobi", "gabriel", "presentation", "oracle", "cartan", "euler", "quotients")


class ConfigError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class RunConfig:
    n: int = 3
    command: str = "verify"
    format: str = "json"
    suite: str = "all"
    oracle_primes: Tuple[int, ...] = (2, 3, 5)
    max_depth: Optional[int] = None
    budget: int = 200_000
    force_oracle: bool = False
    table: int = 1

    def validate(self) -> "RunConfig":
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n!r}")
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; expected one of {COMMANDS}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}; expected one of {FORMATS}")
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; expected one of {SUITES}")
        if not self.oracle_primes:
            raise ConfigError("oracle_primes must not be empty")
        if len(set(self.oracle_primes)) != len(self.oracle_primes):
            raise ConfigError(f"oracle_primes must be distinct, got {list(self.oracle_primes)}")
        bad = [p for p in self.oracle_primes if not _is_prime(p)]
        if bad:
            raise ConfigError(f"oracle_primes contains non-primes {bad}")
        if self.budget <= 0:
            raise ConfigError(f"budget must be positive, got {self.budget}")
        if self.max_depth is not None and self.max_depth < 1:
            raise ConfigError(f"max_depth must be positive, got {self.max_depth}")
        if self.table not in (1, 2):
            raise ConfigError(f"table must be 1 or 2, got {self.table}")
        return self

    def to_dict(self) -> dict:
        out = asdict(self)
        out["oracle_primes"] = list(self.oracle_primes)
        return out


def parse_primes(text: str) -> Tuple[int, ...]:
    """'2,3,5' -> (2, 3, 5)."""
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ConfigError(f"cannot parse primes {text!r}")


def read_defaults(path: Optional[str] = None) -> dict:
    path = path or os.getenv(ENV_CONFIG) or str(DEFAULT_CONFIG_PATH)
    if not os.path.exists(path):
        logger.warning("config file %s not found, using built-in defaults", path)
        return {}
    with open(path, "r") as fh:
        try:
            data = json.load(fh)
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    return data


def load_run_config(path: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    known = set(RunConfig.__dataclass_fields__)
    values = {}
    for key, value in read_defaults(path).items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        values[key] = value
    for key, value in (overrides or {}).items():
        if key not in known:
            raise ConfigError(f"unknown override {key!r}")
        if value is not None:
            values[key] = value
    if "oracle_primes" in values:
        primes = values["oracle_primes"]
        values["oracle_primes"] = parse_primes(primes) if isinstance(primes, str) else tuple(primes)
    cfg = replace(RunConfig(), **values)
    logger.debug("run config: %s", cfg.to_dict())
    return cfg.validate()
