"""Brute-force extension of certified partial sums, for tail-bound audits."""

from itertools import islice

from pelldilog.dilog import rogers
from pelldilog.verify.series import certified_sum


def extension_audit(seq, ctx, tolerance, factor=10, max_terms=100_000):
    """(partial sum, reported tail, |sum over the next (factor-1)*N terms|) for one sequence."""
    res = certified_sum(seq, ctx, tolerance, max_terms)
    n = res.terms_used
    extra = islice(seq.generate(), n, factor * max(n, 1))
    moved = ctx.mp.zero
    for t in extra:
        moved += rogers(t.argument, ctx, t.arg_error).value
    return res, res.tail_bound, abs(moved)
