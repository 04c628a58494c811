# src/cli/commands.py
"""
Command functions behind scripts/bc_engine.py.

Every command takes a validated RunConfig and returns a CommandResult; the
script only prints. Output is a pure function of the RunConfig.
"""

import io
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import pandas as pd

from src.audit.check_report import (
    EXIT_FAIL,
    EXIT_OK,
    FAIL,
    SKIPPED,
    CheckRecord,
    CheckReport,
)
from src.cli.config import ConfigError, RunConfig
from src.homology.euler_series import (
    additivity_check,
    cartan_inverse_check,
    ext_dim,
    pole_free_check,
    restriction_check,
    symmetrization_check,
)
from src.homology.resolution import (
    FINITE,
    PERIODIC,
    ResolutionUndeterminedError,
    check_d_squared,
    check_minimal,
    ext_dim_via_complex,
    min_proj_resolution,
)
from src.homology.tables import EulerTable, generate_table
from src.lie.borel import ModelRelationError, build_borel, root_space_basis
from src.lie.riedtmann import (
    borel_subalgebra_check,
    cartan_decomposition_check,
    generation_check,
    ideal_generation_check,
    ideal_quotient_check,
    integrality_check,
    bc_sum_check,
    structure_check,
    verify_bracket_oracle,
    verify_presentation,
)
from src.quiver.quiverrep import (
    all_indecomposables,
    bilinear_form_A,
    check_rank,
    dim_vector,
    gabriel_root,
    indec_fingerprint,
    indec_hom_dim,
)
from src.roots.rootsys import build_root_system, inner
from src.utils.canonical import canonical_bytes

logger = logging.getLogger(__name__)

ORACLE_AUTO_MAX_N = 3
HOM_FIELD_CHECK_MAX_N = 4
HOM_FIELD_ORDERS = (0, 2, 3)
EXT_CROSS_CHECK_DEGREES = 3


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    output: str
    report: Optional[CheckReport] = None


def _json(obj) -> str:
    return canonical_bytes(obj).decode("utf-8") + "\n"


def _cell(value) -> str:
    return canonical_bytes(value).decode("utf-8")


def _csv(df: pd.DataFrame) -> str:
    buf = io.StringIO()
    df.to_csv(buf, index=False, lineterminator="\n")
    return buf.getvalue()


# -- indecomposables ---------------------------------------------------


def cmd_indecomposables(cfg: RunConfig) -> CommandResult:
    n = cfg.n
    check_rank(n)
    entries = [
        {
            "label": t.label,
            "dim_vector": list(dim_vector(t, n)),
            "gabriel_root": str(gabriel_root(t, n)),
        }
        for t in all_indecomposables(n)
    ]
    if cfg.format == "json":
        return CommandResult(EXIT_OK, _json({"n": n, "count": len(entries), "indecomposables": entries}))
    if cfg.format == "csv":
        df = pd.DataFrame(entries, columns=["label", "dim_vector", "gabriel_root"])
        df["dim_vector"] = df["dim_vector"].map(lambda d: " ".join(str(x) for x in d))
        return CommandResult(EXIT_OK, _csv(df))
    lines = ["\\begin{tabular}{lll}", "$M$ & $\\underline{\\dim} M$ & root \\\\", "\\hline"]
    for e in entries:
        dims = ",".join(str(x) for x in e["dim_vector"])
        lines.append(f"${e['label']}$ & $({dims})$ & ${e['gabriel_root']}$ \\\\")
    lines.append("\\end{tabular}")
    lines.append(f"% {len(entries)} indecomposables")
    return CommandResult(EXIT_OK, "\n".join(lines) + "\n")


# -- tables -------------------------------------------------------------


def _findings(table: EulerTable) -> List[dict]:
    return [
        {
            "col_type": c.col.label,
            "row_type": c.row.label,
            "computed": str(c.series) if table.which == 1 else str(c.value_at_1),
            "printed": c.printed,
            "case": c.case,
            "status": c.status,
        }
        for c in table.findings
    ]


def cmd_tables(cfg: RunConfig) -> CommandResult:
    table = generate_table(cfg.table, cfg.n, cfg.max_depth)
    findings = _findings(table)
    code = EXIT_FAIL if table.undetermined else EXIT_OK
    if cfg.format == "json":
        body = {
            "table": table.which,
            "n": table.n,
            "rows": table.to_json_rows(),
            "counts": table.counts(),
            "findings": findings,
            "symmetrization_failures": [list(p) for p in table.symmetrization_failures],
            "undetermined": [list(p) for p in table.undetermined],
        }
        return CommandResult(code, _json(body))
    if cfg.format == "csv":
        return CommandResult(code, table.to_csv())
    lines = [table.to_latex().rstrip("\n")]
    for f in findings:
        lines.append(
            f"% {f['status']}: column {f['col_type']}, row {f['row_type']}: "
            f"computed {f['computed']}, printed {f['printed']}"
        )
    for col, row in table.undetermined:
        lines.append(f"% undetermined: column {col}, row {row}")
    return CommandResult(code, "\n".join(lines) + "\n")


# -- verify -------------------------------------------------------------


def gabriel_suite(n: int) -> CheckReport:
    """Counts, dim-vector fibers, form compatibility, and the Hom invariants of the indecomposables."""
    report = CheckReport(suite="gabriel")
    mods = all_indecomposables(n)
    plus = build_root_system(n).phi_plus_BC
    report.check("indecomposable_count", f"n={n}", (3 * n * n + n) // 2, len(mods))
    report.check("positive_root_count", f"n={n}", n * n + n, len(plus))
    fibers = Counter(gabriel_root(t, n) for t in mods)
    report.check("dim_vector_image", f"n={n}", sorted(str(r) for r in plus), sorted(str(r) for r in fibers))
    for r in sorted(plus):
        expected = 2 if sorted(r.coeffs)[-2:] == [1, 1] else 1
        report.check("fiber_size", str(r), expected, fibers.get(r, 0))
    bad = []
    for a in mods:
        for b in mods:
            lhs = bilinear_form_A(dim_vector(a, n), dim_vector(b, n))
            if lhs != inner(gabriel_root(a, n), gabriel_root(b, n)):
                bad.append([a.label, b.label])
    report.check("form_compatibility", f"n={n}", [], bad)
    fingerprints = {indec_fingerprint(t, n) for t in mods}
    report.check("fingerprint_distinct", f"n={n}", len(mods), len(fingerprints))
    if n <= HOM_FIELD_CHECK_MAX_N:
        disagree = [
            [a.label, b.label]
            for a in mods
            for b in mods
            if len({indec_hom_dim(a, b, n, f) for f in HOM_FIELD_ORDERS}) != 1
        ]
        report.check("hom_field_agreement", f"n={n}", [], disagree)
    else:
        report.add(
            CheckRecord("hom_field_agreement", f"n={n}", None, f"needs n <= {HOM_FIELD_CHECK_MAX_N}", SKIPPED)
        )
    logger.info("gabriel n=%d: %s", n, report.counts())
    return report


def oracle_suite(cfg: RunConfig) -> CheckReport:
    if cfg.n > ORACLE_AUTO_MAX_N and not cfg.force_oracle:
        logger.warning("oracle suite skipped for n=%d; pass --force-oracle to run it", cfg.n)
        report = CheckReport(suite="oracle")
        report.add(CheckRecord("hall_bracket", f"n={cfg.n}", None, f"skipped for n > {ORACLE_AUTO_MAX_N}", SKIPPED))
        return report
    return verify_bracket_oracle(cfg.n, cfg.oracle_primes, cfg.budget)


def euler_suite(n: int, max_depth: Optional[int] = None) -> CheckReport:
    report = CheckReport(suite="euler")
    mods = all_indecomposables(n)
    determined = []
    for m in mods:
        res = min_proj_resolution(m, n, max_depth)
        report.check("resolution_determined", m.label, True, res.status in (FINITE, PERIODIC))
        report.check("d_squared", m.label, True, check_d_squared(res))
        report.check("minimal", m.label, True, check_minimal(res))
        if res.status in (FINITE, PERIODIC):
            determined.append(m)
        mismatched = []
        for p in range(min(EXT_CROSS_CHECK_DEGREES, len(res.terms))):
            for nt in mods:
                try:
                    via_complex = ext_dim_via_complex(res, nt, p)
                except ResolutionUndeterminedError:
                    continue
                if via_complex != ext_dim(m, nt, p, n, max_depth):
                    mismatched.append([p, nt.label])
        report.check("ext_cross_check", m.label, [], mismatched)
    if len(determined) != len(mods):
        report.add(CheckRecord("euler_identities", f"n={n}", None, "undetermined resolutions", FAIL))
        return report
    report.check("pole_free", f"n={n}", [], [list(p) for p in pole_free_check(n)])
    cartan = cartan_inverse_check(n)
    report.check("cartan_inverse", f"n={n}", True, cartan.ok if cartan.ok else [list(r) for r in cartan.product])
    additivity, symmetric = [], []
    for a in mods:
        for b in mods:
            add = additivity_check(a, b, n)
            if not add.ok:
                additivity.append([a.label, b.label, str(add.lhs), str(add.rhs)])
            sym = symmetrization_check(a, b, n)
            if not sym.ok:
                symmetric.append([a.label, b.label, str(sym.lhs), str(sym.rhs)])
    report.check("additivity", f"n={n}", [], additivity)
    report.check("symmetrization", f"n={n}", [], symmetric)
    restricted = restriction_check(n)
    report.check("restriction", f"n={n}", [], [[a, b, str(s)] for (a, b), s in sorted(restricted.items())])
    for which in (1, 2):
        table = generate_table(which, n, max_depth)
        report.check(f"table_{which}_printed_cases", f"n={n}", [], _findings(table))
    logger.info("euler n=%d: %s", n, report.counts())
    return report


def _borel_model_check(kind: str, n: int) -> CheckReport:
    report = CheckReport(suite=f"model_{kind}")
    try:
        model = build_borel(kind, n)
    except ModelRelationError as exc:
        report.add(CheckRecord("borel_model", f"{kind} n={n}", "consistent", str(exc), FAIL))
        return report
    report.check("borel_model_dim", f"{kind} n={n}", n * n + n, model.dim)
    plus = build_root_system(n).system(f"{kind}+")
    report.check(
        "borel_root_spaces", f"{kind} n={n}", sorted(str(r) for r in plus), sorted(str(r) for r in root_space_basis(model))
    )
    return report


def quotients_suite(n: int) -> CheckReport:
    report = CheckReport(suite="quotients")
    for kind in ("B", "C"):
        report.merge(_borel_model_check(kind, n))
        report.merge(borel_subalgebra_check(kind, n))
    report.merge(bc_sum_check(n))
    if n >= 2:
        report.merge(ideal_quotient_check(n))
        report.merge(ideal_generation_check(n))
    else:
        report.add(CheckRecord("ideal_quotient", f"n={n}", None, "needs n >= 2", SKIPPED))
    logger.info("quotients n=%d: %s", n, report.counts())
    return report


def presentation_suite(n: int) -> CheckReport:
    report = CheckReport(suite="presentation")
    for part in (verify_presentation(n), generation_check(n), integrality_check(n)):
        report.merge(part)
    return report


SUITE_RUNNERS: Dict[str, Callable[[RunConfig], CheckReport]] = {
    "jacobi": lambda cfg: structure_check(cfg.n),
    "gabriel": lambda cfg: gabriel_suite(cfg.n),
    "presentation": lambda cfg: presentation_suite(cfg.n),
    "oracle": oracle_suite,
    "cartan": lambda cfg: cartan_decomposition_check(cfg.n),
    "euler": lambda cfg: euler_suite(cfg.n, cfg.max_depth),
    "quotients": lambda cfg: quotients_suite(cfg.n),
}


def run_suite(cfg: RunConfig) -> CheckReport:
    check_rank(cfg.n)
    names = list(SUITE_RUNNERS) if cfg.suite == "all" else [cfg.suite]
    report = CheckReport(suite=cfg.suite)
    for name in names:
        logger.info("running suite %s for n=%d", name, cfg.n)
        part = SUITE_RUNNERS[name](cfg)
        report.extend(
            CheckRecord(f"{name}.{r.check_id}", r.instance, r.expected, r.computed, r.status)
            for r in part.records
        )
    return report


def cmd_verify(cfg: RunConfig) -> CommandResult:
    if cfg.format == "latex":
        raise ConfigError("verify supports json and csv output only")
    report = run_suite(cfg)
    code = report.exit_status()
    if cfg.format == "csv":
        rows = [
            {**r, "expected": _cell(r["expected"]), "computed": _cell(r["computed"])}
            for r in report.to_list()
        ]
        df = pd.DataFrame(rows, columns=["check_id", "instance", "expected", "computed", "status"])
        return CommandResult(code, _csv(df), report)
    body = {
        "n": cfg.n,
        "suite": cfg.suite,
        "counts": report.counts(),
        "exit_status": code,
        "digest": report.digest(),
        "records": report.to_list(),
    }
    return CommandResult(code, _json(body), report)


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "indecomposables": cmd_indecomposables,
    "tables": cmd_tables,
    "verify": cmd_verify,
}


def run_command(cfg: RunConfig) -> CommandResult:
    return COMMANDS[cfg.command](cfg)
