"""Adaptive-precision real and interval helpers.

Every exact quantity in this package is an integer or a rational; logarithms
of integers are the only transcendental values that ever enter a comparison.
A ratio like (n*C)/log(p) with rational C > 0 and prime p is never an integer
(it would force log of an integer >= 2 to be rational), so floors and strict
inequalities involving such quantities are always decidable: compute an
enclosure, and if it straddles the decision boundary, double the precision
and try again.

mpmath's contexts are process-global, so the helpers here save and restore
the interval precision around each evaluation.  That makes them reentrant
but not thread safe; run concurrent work in separate processes.
"""

import math
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache

from mpmath import iv, mp
from mpmath.libmp import mpf_floor, to_int

DEFAULT_PRECISION_BITS = 128

# Hard ceiling for decision escalation.  Reaching it means a quantity sat on
# an integer / on the comparison boundary, which the irrationality argument
# rules out; treat it as a bug, not as bad luck.
MAX_DECISION_BITS = 1 << 14

_GUARD_BITS = 12


class PrecisionError(ArithmeticError):
    """An interval decision failed to resolve below MAX_DECISION_BITS."""


@contextmanager
def interval_precision(bits):
    """Temporarily set the shared interval context to `bits` of precision."""
    saved = iv.prec
    iv.prec = bits
    try:
        yield iv
    finally:
        iv.prec = saved


def rational_interval(q):
    """Enclosure of an int or Fraction at the current interval precision."""
    if isinstance(q, Fraction):
        return iv.mpf(q.numerator) / iv.mpf(q.denominator)
    return iv.mpf(q)


_log_iv_cache = {}


def log_interval(n, bits):
    """Cached enclosure of log(n) for an integer n >= 1."""
    key = (n, bits)
    got = _log_iv_cache.get(key)
    if got is None:
        with interval_precision(bits):
            got = iv.log(iv.mpf(n))
        _log_iv_cache[key] = got
    return got


def interval_floor(x):
    """Exact floor of an enclosure, or None if it straddles an integer."""
    lo, hi = x._mpi_
    fl = int(to_int(mpf_floor(lo, 0)))
    fh = int(to_int(mpf_floor(hi, 0)))
    return fl if fl == fh else None


def adaptive_floor(build, start_bits=DEFAULT_PRECISION_BITS, max_bits=MAX_DECISION_BITS):
    """Floor of the value enclosed by build(bits), escalating until unambiguous.

    `build` must return enclosures of the same mathematical value at any
    requested precision.
    """
    bits = start_bits
    while True:
        f = interval_floor(build(bits))
        if f is not None:
            return f
        if bits >= max_bits:
            raise PrecisionError("floor still undecided at %d bits" % bits)
        bits *= 2


def adaptive_decide(predicate, start_bits=DEFAULT_PRECISION_BITS, max_bits=MAX_DECISION_BITS):
    """Escalate until predicate(bits) returns True or False instead of None."""
    bits = start_bits
    while True:
        verdict = predicate(bits)
        if verdict is not None:
            return verdict
        if bits >= max_bits:
            raise PrecisionError("comparison still undecided at %d bits" % bits)
        bits *= 2


def digits_for_bits(bits):
    """Decimal digits carried by a binary precision (used for printing)."""
    return max(1, int(bits * 0.3010299956639812))


@lru_cache(maxsize=None)
def _log_int(n, bits):
    with mp.workprec(bits + _GUARD_BITS):
        return mp.log(n)


def log_real(n, precision_bits=DEFAULT_PRECISION_BITS):
    """log(n) of an exact integer n >= 1 as an mpf (cached per precision)."""
    if n < 1:
        raise ValueError("log_real needs a positive integer")
    return _log_int(int(n), precision_bits)
