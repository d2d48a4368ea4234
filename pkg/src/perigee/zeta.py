"""Truncated dynamical zeta functions with exact rational coefficients.

The zeta function of a map with period counts F_n is the formal power series
exp(sum over n >= 1 of F_n * z^n / n).  Its coefficients satisfy the exact
recurrence m*c_m = sum over k = 1..m of F_k * c_{m-k}, which is how they are
computed here, entirely in rational arithmetic.  For realizable sequences the
same series is the truncated Euler product over orbits,
prod over n of (1 - z^n)^(-L_n/n), with nonnegative integer coefficients.

A minimal-linear-recurrence search over the coefficients probes whether the
truncation is consistent with a rational function; with finitely many terms
the verdict is only ever "consistent with", never a proof.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .orbits import (
    KIND_FIXED,
    CountSequence,
    RealizabilityError,
    least_from_fixed,
)

VERDICT_RATIONAL = "consistent-with-rational"
VERDICT_NO_RECURRENCE = "no-low-order-recurrence"


@dataclass(frozen=True)
class ZetaSeries:
    """Exact rational coefficients c_0..c_M of a truncated zeta function."""

    coefficients: tuple[Fraction, ...]
    source: CountSequence | None = None

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("series must start with c_0 = 1")

    @property
    def M(self):
        return len(self.coefficients) - 1


def zeta_truncate(F, order):
    """Coefficients through z**order via the exact exponential recurrence."""
    if F.kind != KIND_FIXED:
        raise ValueError("zeta series needs a fixed-count sequence")
    if order > F.N:
        raise ValueError("truncation order %d beyond horizon %d" % (order, F.N))
    coeffs = [Fraction(1)]
    for m in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, m + 1):
            acc += F.values[k - 1] * coeffs[m - k]
        coeffs.append(acc / m)
    return ZetaSeries(coefficients=tuple(coeffs), source=F)


def sequence_from_series(S):
    """Invert the recurrence: recover F_1..F_M exactly from the coefficients."""
    c = S.coefficients
    values = []
    for m in range(1, S.M + 1):
        acc = m * c[m]
        for k in range(1, m):
            acc -= values[k - 1] * c[m - k]
        if acc.denominator != 1:
            raise ValueError("series does not come from an integer sequence")
        values.append(int(acc))
    return CountSequence(KIND_FIXED, tuple(values))


def _mul_trunc(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if i > order or x == 0:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            if y:
                out[i + j] += x * y
    return out


def orbit_product_form(F, order):
    """Truncated Euler product over orbits: prod of (1 - z^n)^(-L_n/n).

    Requires F to be realizable up to the truncation order; the orbit counts
    L_n/n are then nonnegative integers and so are all series coefficients.
    Must agree with zeta_truncate coefficient by coefficient.
    """
    if F.kind != KIND_FIXED:
        raise ValueError("orbit product needs a fixed-count sequence")
    if order > F.N:
        raise ValueError("truncation order %d beyond horizon %d" % (order, F.N))
    L = least_from_fixed(F)
    series = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        ln = L.values[n - 1]
        if ln < 0:
            raise RealizabilityError(n, "least count L_%d = %d is negative" % (n, ln))
        if ln % n != 0:
            raise RealizabilityError(n, "%d does not divide L_%d = %d" % (n, n, ln))
        orbits = ln // n
        if orbits == 0:
            continue
        # (1 - z^n)^(-orbits): coefficient binom(orbits - 1 + j, j) at z^(n*j)
        factor = [Fraction(0)] * (order + 1)
        j = 0
        while n * j <= order:
            factor[n * j] = Fraction(math.comb(orbits - 1 + j, j))
            j += 1
        series = _mul_trunc(series, factor, order)
    return ZetaSeries(coefficients=tuple(series), source=F)


# --- rationality probe ----------------------------------------------------------


def berlekamp_massey(sequence):
    """Minimal LFSR over the rationals.

    Returns (L, C) where C = (1, c_1, ..) is the connection polynomial:
    sum over j of C_j * s_{i-j} = 0 for every i in [L, len(sequence)).
    """
    seq = [Fraction(s) for s in sequence]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L = 0
    m = 1
    b = Fraction(1)
    for i, s_i in enumerate(seq):
        d = s_i
        for j in range(1, len(C)):
            if j > i:
                break
            d += C[j] * seq[i - j]
        if d == 0:
            m += 1
            continue
        coef = d / b
        shifted = [Fraction(0)] * m + [coef * x for x in B]
        if 2 * L <= i:
            old_c = C[:]
            if len(shifted) > len(C):
                C = C + [Fraction(0)] * (len(shifted) - len(C))
            for j, x in enumerate(shifted):
                C[j] -= x
            B = old_c
            L = i + 1 - L
            b = d
            m = 1
        else:
            if len(shifted) > len(C):
                C = C + [Fraction(0)] * (len(shifted) - len(C))
            for j, x in enumerate(shifted):
                C[j] -= x
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return L, tuple(C)


@dataclass(frozen=True)
class ProbeVerdict:
    verdict: str
    numerator: tuple[int, ...] | None
    denominator: tuple[int, ...] | None
    recurrence_length: int

    @property
    def degree_numerator(self):
        return None if self.numerator is None else len(self.numerator) - 1

    @property
    def degree_denominator(self):
        return None if self.denominator is None else len(self.denominator) - 1

    def to_json(self):
        obj = {"verdict": self.verdict}
        if self.verdict == VERDICT_RATIONAL:
            obj["num_coeffs"] = [str(c) for c in self.numerator]
            obj["den_coeffs"] = [str(c) for c in self.denominator]
        return obj


def _normalize_pair(num, den):
    """Scale numerator and denominator together to primitive integers, den(0) > 0."""
    scale = 1
    for c in list(num) + list(den):
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    n_int = [int(c * scale) for c in num]
    d_int = [int(c * scale) for c in den]
    g = 0
    for c in n_int + d_int:
        g = math.gcd(g, abs(c))
    if g > 1:
        n_int = [c // g for c in n_int]
        d_int = [c // g for c in d_int]
    if d_int[0] < 0:
        n_int = [-c for c in n_int]
        d_int = [-c for c in d_int]
    return tuple(n_int), tuple(d_int)


def rationality_probe(S):
    """Search for a low-order linear recurrence among the coefficients.

    A recurrence of length q <= M//2 - 1 that fits every available term
    leaves at least q + 1 verification terms beyond the fitting window; in
    that case the candidate rational function is denominator = connection
    polynomial, numerator = (denominator * series) truncated, which must have
    no terms past the recurrence window.  The verdict is inherently about the
    finite truncation: it never asserts that the full series is rational.
    """
    if S.M < 8:
        raise ValueError("probe needs at least 8 coefficients beyond c_0")
    seq = list(S.coefficients)
    L, C = berlekamp_massey(seq)
    cap = S.M // 2 - 1
    if L > cap:
        return ProbeVerdict(VERDICT_NO_RECURRENCE, None, None, L)
    product = _mul_trunc(list(C), seq, S.M)
    if any(product[m] != 0 for m in range(L, S.M + 1)):
        return ProbeVerdict(VERDICT_NO_RECURRENCE, None, None, L)
    numerator = product[:L] if L > 0 else product[:1]
    while len(numerator) > 1 and numerator[-1] == 0:
        numerator.pop()
    num, den = _normalize_pair(numerator, list(C))
    return ProbeVerdict(VERDICT_RATIONAL, num, den, L)


def write_series_csv(S, fh):
    """Shared series format: m,numerator,denominator with exact integers."""
    import csv

    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["m", "numerator", "denominator"])
    for m, c in enumerate(S.coefficients):
        writer.writerow([m, c.numerator, c.denominator])
