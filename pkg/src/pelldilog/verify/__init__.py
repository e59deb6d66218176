"""Certified verification of the dilogarithm identities."""

from .identities import (
    FUNCTIONAL_EQUATIONS,
    bbp_identities,
    chebyshev_sequence,
    fibonacci_sequence,
    functional_equation_residuals,
    lewin_accelerated_sum,
    lewin_sequence,
    negative_index_families,
    pell_negative_sequence,
    pell_positive_sequence,
    pell_rational_sequence,
    ramanujan_identities,
    theorem1_sequence,
    verify_bbp64,
    verify_chebyshev,
    verify_classical,
    verify_fibonacci,
    verify_hexagon_ramanujan,
    verify_lewin,
    verify_ngon,
    verify_pell_negative,
    verify_pell_positive,
    verify_pell_rational,
    verify_theorem1,
)
from .report import (
    EXHAUSTED,
    FAIL,
    IDENTITY_IDS,
    INVALID,
    PASS,
    IdentityJob,
    VerificationReport,
    report_records,
    reports_to_csv,
    reports_to_json,
)
from .series import SeriesSum, Term, TermSequence, certified_sum, lewin_integral_tail, tail_bound
from .suite import ConfigError, default_suite, jobs_from_data, load_suite, run_job, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
