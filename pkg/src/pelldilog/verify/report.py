"""Identity jobs, verification reports and their JSON/CSV serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from ..numerics import PrecisionContext, Real

IDENTITY_IDS = (
    "theorem1",
    "lewin",
    "pell_positive",
    "pell_negative",
    "pell_rational",
    "fibonacci",
    "chebyshev",
    "ngon",
    "hexagon_ramanujan",
    "bbp64",
    "classical_suite",
)

PASS, FAIL, EXHAUSTED, INVALID = "pass", "fail", "exhausted", "invalid"


@dataclass(frozen=True)
class IdentityJob:
    identity_id: str
    params: Mapping[str, str] = field(default_factory=dict)
    precision_bits: int = 256
    tolerance: str = "1e-30"
    max_terms: int = 100_000

    def __post_init__(self) -> None:
        if self.identity_id not in IDENTITY_IDS:
            raise ValueError(f"unknown identity_id {self.identity_id!r}")
        object.__setattr__(self, "params", {str(k): str(v) for k, v in dict(self.params).items()})
        object.__setattr__(self, "tolerance", str(self.tolerance))
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not float(self.tolerance) > 0:
            raise ValueError("tolerance must be positive")

    @property
    def context(self) -> PrecisionContext:
        return PrecisionContext(self.precision_bits)

    def tolerance_value(self, ctx: PrecisionContext) -> Real:
        return ctx.mp.mpf(self.tolerance)

    def param(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.params.get(key, default)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check.

    ``residual`` is |lhs - partial_sum| rounded outward and ``certified_gap``
    is tail_bound + rounding_budget; a check passes when
    residual <= tolerance + certified_gap.  Composite jobs carry their checks
    in ``sub_reports`` and leave the numeric fields empty.
    """

    job: IdentityJob
    label: str
    status: str
    lhs_value: Optional[Real] = None
    partial_sum: Optional[Real] = None
    terms_used: int = 0
    tail_bound: Optional[Real] = None
    rounding_budget: Optional[Real] = None
    residual: Optional[Real] = None
    error: Optional[str] = None
    notes: tuple = ()
    sub_reports: tuple = ()
    elapsed: float = field(default=0.0, compare=False)

    @property
    def certified_gap(self) -> Optional[Real]:
        if self.tail_bound is None or self.rounding_budget is None:
            return None
        return self.tail_bound + self.rounding_budget

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def leaves(self) -> list["VerificationReport"]:
        if not self.sub_reports:
            return [self]
        out = []
        for sub in self.sub_reports:
            out.extend(sub.leaves())
        return out


def combined_status(statuses: Iterable[str]) -> str:
    statuses = list(statuses)
    for s in (FAIL, INVALID, EXHAUSTED):
        if s in statuses:
            return s
    return PASS


RECORD_FIELDS = (
    "identity_id",
    "label",
    "params",
    "prec_bits",
    "tol",
    "lhs",
    "partial_sum",
    "residual",
    "tail_bound",
    "rounding_budget",
    "certified_gap",
    "terms_used",
    "pass",
    "status",
    "error",
    "notes",
)


def report_records(reports: Iterable[VerificationReport], timings: bool = False) -> list[dict]:
    """One flat record per leaf check; Real values become full-precision decimal strings."""
    rows = []
    for report in reports:
        job = report.job
        ctx = job.context
        for leaf in report.leaves():
            def dec(x):
                return None if x is None else ctx.to_decimal(x)

            row = {
                "identity_id": job.identity_id,
                "label": leaf.label,
                "params": dict(sorted(job.params.items())),
                "prec_bits": job.precision_bits,
                "tol": job.tolerance,
                "lhs": dec(leaf.lhs_value),
                "partial_sum": dec(leaf.partial_sum),
                "residual": dec(leaf.residual),
                "tail_bound": dec(leaf.tail_bound),
                "rounding_budget": dec(leaf.rounding_budget),
                "certified_gap": dec(leaf.certified_gap),
                "terms_used": leaf.terms_used,
                "pass": leaf.passed,
                "status": leaf.status,
                "error": leaf.error,
                "notes": list(leaf.notes),
            }
            if timings:
                row["elapsed_ms"] = round(leaf.elapsed * 1000, 3)
            rows.append(row)
    return rows


def reports_to_json(reports: Iterable[VerificationReport], timings: bool = False) -> str:
    return json.dumps(report_records(reports, timings), indent=2) + "\n"


def reports_to_csv(reports: Iterable[VerificationReport], timings: bool = False) -> str:
    rows = report_records(reports, timings)
    fields = list(RECORD_FIELDS) + (["elapsed_ms"] if timings else [])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        flat = dict(row)
        flat["params"] = ";".join(f"{k}={v}" for k, v in row["params"].items())
        flat["notes"] = " | ".join(row["notes"])
        flat["pass"] = "true" if row["pass"] else "false"
        flat = {k: "" if v is None else v for k, v in flat.items()}
        writer.writerow(flat)
    return buf.getvalue()
