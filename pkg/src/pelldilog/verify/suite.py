"""Job dispatch, suite execution and suite configuration files."""

from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from ..errors import ConvergenceError, CrossCheckError, DomainError, ExhaustionError
from ..numerics import parse_surd
from ..pell import PellSolution, classify, fundamental_solution
from . import identities as ids
from .report import EXHAUSTED, FAIL, INVALID, IdentityJob, VerificationReport

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(ValueError):
    """A suite configuration that cannot be turned into jobs."""


def _pell_source(job: IdentityJob, default_n: str):
    if "a" in job.params or "b" in job.params:
        a, b, n = Fraction(job.param("a", "")), Fraction(job.param("b", "")), int(job.param("n", ""))
        sign = classify(a, b, n)
        if sign is None:
            raise DomainError(f"({a}, {b}) does not solve a^2 - {n} b^2 = +-1")
        return PellSolution(a, b, n, sign)
    return int(job.param("n", default_n))


def _theorem1_length(job: IdentityJob):
    ctx = job.context
    if "unit" in job.params:
        u = parse_surd(job.params["unit"]).value(ctx)
        if u <= 1:
            raise DomainError("unit must exceed 1")
        return 2 * ctx.mp.log(u)
    return ctx.mp.mpf(job.param("L", "1"))


def _chebyshev_point(job: IdentityJob):
    text = job.param("x", "3/2")
    try:
        return Fraction(text)
    except ValueError:
        return job.context.mp.mpf(text)


def _dispatch(job: IdentityJob) -> VerificationReport:
    i = job.identity_id
    if i == "theorem1":
        return ids.verify_theorem1(_theorem1_length(job), job)
    if i == "lewin":
        return ids.verify_lewin(job)
    if i == "pell_positive":
        return ids.verify_pell_positive(_pell_source(job, "2"), job)
    if i == "pell_negative":
        return ids.verify_pell_negative(_pell_source(job, "2"), job)
    if i == "pell_rational":
        src = _pell_source(job, "2")
        if isinstance(src, int):
            src = fundamental_solution(src, allow_negative=False)
        return ids.verify_pell_rational(src, job)
    if i == "fibonacci":
        return ids.verify_fibonacci(job)
    if i == "chebyshev":
        return ids.verify_chebyshev(_chebyshev_point(job), job)
    if i == "ngon":
        return ids.verify_ngon(int(job.param("n", job.param("sides", "6"))), job)
    if i == "hexagon_ramanujan":
        return ids.verify_hexagon_ramanujan(job)
    if i == "bbp64":
        return ids.verify_bbp64(job)
    return ids.verify_classical(job)


def run_job(job: IdentityJob) -> VerificationReport:
    """Run one job; errors become the report's status instead of propagating."""
    start = time.perf_counter()
    try:
        report = _dispatch(job)
    except ExhaustionError as exc:
        report = VerificationReport(job, job.identity_id, EXHAUSTED, error=str(exc))
    except ConvergenceError as exc:
        report = VerificationReport(job, job.identity_id, EXHAUSTED, error=str(exc))
    except CrossCheckError as exc:
        report = VerificationReport(job, job.identity_id, FAIL, error=f"cross-check failed: {exc}")
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        report = VerificationReport(job, job.identity_id, INVALID, error=str(exc))
    except Exception as exc:  # noqa: BLE001 - a suite must never abort on one job
        report = VerificationReport(job, job.identity_id, FAIL, error=f"{type(exc).__name__}: {exc}")
    return replace(report, elapsed=time.perf_counter() - start)


def run_suite(jobs: Iterable[IdentityJob], max_workers: Optional[int] = None) -> list[VerificationReport]:
    """Run jobs independently; the result order is the job order."""
    jobs = list(jobs)
    if not max_workers or max_workers <= 1 or len(jobs) <= 1:
        return [run_job(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(run_job, jobs))


# ---------------------------------------------------------------- configuration

_JOB_KEYS = {"identity_id", "params", "prec_bits", "tol", "max_terms"}


def job_from_mapping(entry: dict, defaults: Optional[dict] = None) -> IdentityJob:
    """Build a job from a config entry with keys identity_id, params, prec_bits, tol, max_terms."""
    if not isinstance(entry, dict):
        raise ConfigError(f"job entry must be an object, got {type(entry).__name__}")
    unknown = set(entry) - _JOB_KEYS
    if unknown:
        raise ConfigError(f"unknown job keys: {', '.join(sorted(unknown))}")
    if "identity_id" not in entry:
        raise ConfigError("job entry lacks identity_id")
    merged = {**(defaults or {}), **entry}
    params = merged.get("params", {}) or {}
    if not isinstance(params, dict):
        raise ConfigError("params must be a table/object")
    try:
        return IdentityJob(
            identity_id=str(merged["identity_id"]),
            params={str(k): str(v) for k, v in params.items()},
            precision_bits=int(merged.get("prec_bits", 256)),
            tolerance=str(merged.get("tol", "1e-30")),
            max_terms=int(merged.get("max_terms", 100_000)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def jobs_from_data(data) -> list[IdentityJob]:
    """Accept a JSON/TOML array of jobs or an object holding one under "jobs"."""
    defaults = {}
    if isinstance(data, dict):
        if "jobs" not in data:
            raise ConfigError('config object must contain a "jobs" array')
        defaults = {k: data[k] for k in ("prec_bits", "tol", "max_terms") if k in data}
        data = data["jobs"]
    if not isinstance(data, list):
        raise ConfigError("config must be a list of jobs")
    return [job_from_mapping(e, defaults) for e in data]


def load_suite(path: str | Path) -> list[IdentityJob]:
    """Read a suite file; ``.toml`` uses [[jobs]] tables, anything else is parsed as JSON."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        if path.suffix.lower() == ".toml":
            data = tomllib.loads(raw.decode("utf-8"))
        else:
            data = json.loads(raw)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    return jobs_from_data(data)


def default_suite() -> list[IdentityJob]:
    """The shipped suite: every identity family with default parameters."""
    text = resources.files("pelldilog.data").joinpath("default_suite.json").read_text("utf-8")
    return jobs_from_data(json.loads(text))


def default_suite_path() -> Path:
    return Path(str(resources.files("pelldilog.data").joinpath("default_suite.json")))
