"""Sequence algebra relating points of period n to points of least period n.

For a map T, the count F_n of points with T^n(x) = x and the count L_n of
points of least period n determine each other:

    F_n = sum of L_d over d | n,      L_n = sum of mu(n/d) * F_d over d | n.

This module converts both ways exactly, reports whether a fixed-count
sequence could come from an actual map (inversion nonnegative and divisible
by n), computes logarithmic growth diagnostics, and checks the two sandwich
inequalities that pin the least-period growth rate to the period growth rate
at finite horizon.
"""

import csv
from dataclasses import dataclass

from mpmath import mp

from .numtheory import divisors, mobius
from .precision import DEFAULT_PRECISION_BITS, digits_for_bits
from .targets import FINITE, INFINITE, GrowthTarget

KIND_FIXED = "fixed"
KIND_LEAST = "least"


class RealizabilityError(ValueError):
    """A sequence cannot be the orbit counts of any map."""

    def __init__(self, n, message):
        super().__init__(message)
        self.n = n


@dataclass(frozen=True)
class CountSequence:
    """A finite prefix of an integer sequence indexed from n = 1.

    kind is "fixed" (period counts) or "least" (least-period counts).
    Values are exact integers; Moebius inversion of a non-realizable fixed
    sequence may legitimately produce negative entries, so no sign constraint
    is enforced here.
    """

    kind: str
    values: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (KIND_FIXED, KIND_LEAST):
            raise ValueError("kind must be 'fixed' or 'least'")
        if not all(isinstance(v, int) for v in self.values):
            raise ValueError("values must be exact integers")

    @classmethod
    def fixed(cls, values):
        return cls(KIND_FIXED, tuple(int(v) for v in values))

    @classmethod
    def least(cls, values):
        return cls(KIND_LEAST, tuple(int(v) for v in values))

    @property
    def N(self):
        return len(self.values)

    def value(self, n):
        """1-based accessor."""
        if not 1 <= n <= self.N:
            raise IndexError("index %d outside 1..%d" % (n, self.N))
        return self.values[n - 1]


def fixed_from_least(L):
    """F_n = sum of L_d over d | n."""
    if L.kind != KIND_LEAST:
        raise ValueError("expected a least-period sequence")
    vals = L.values
    out = [sum(vals[d - 1] for d in divisors(n)) for n in range(1, L.N + 1)]
    return CountSequence(KIND_FIXED, tuple(out))


def least_from_fixed(F):
    """L_n = sum of mu(n/d) * F_d over d | n; negatives are preserved."""
    if F.kind != KIND_FIXED:
        raise ValueError("expected a fixed-count sequence")
    vals = F.values
    out = [
        sum(mobius(n // d) * vals[d - 1] for d in divisors(n))
        for n in range(1, F.N + 1)
    ]
    return CountSequence(KIND_LEAST, tuple(out))


@dataclass(frozen=True)
class RealizabilityRow:
    n: int
    least: int
    nonnegative: bool
    divisible: bool

    @property
    def ok(self):
        return self.nonnegative and self.divisible


@dataclass(frozen=True)
class RealizabilityReport:
    rows: tuple[RealizabilityRow, ...]
    ok: bool

    def failures(self):
        return tuple(r for r in self.rows if not r.ok)


def realizability_check(F):
    """Is F the period-count sequence of some map?

    Necessary and sufficient at finite horizon: every inverted least count
    must be nonnegative and divisible by n (points of least period n come in
    orbits of size n).
    """
    L = least_from_fixed(F)
    rows = tuple(
        RealizabilityRow(n, ln, ln >= 0, ln % n == 0)
        for n, ln in enumerate(L.values, start=1)
    )
    return RealizabilityReport(rows=rows, ok=all(r.ok for r in rows))


@dataclass(frozen=True)
class GrowthDiagnostics:
    """Per-n logarithmic rates of a count sequence, with a trailing window.

    entries holds (n, log value, log value / n) for every n with a positive
    count; indices with value <= 0 are listed in skipped (log undefined).
    window_inf and window_sup bound the rate over the last window_len
    computed entries; target_gap is the distance from that window to a finite
    target, None for an infinite target.
    """

    entries: tuple[tuple[int, object, object], ...]
    skipped: tuple[int, ...]
    window_len: int
    window_inf: object
    window_sup: object
    target: GrowthTarget | None
    target_gap: object
    precision_bits: int

    def rate(self, n):
        for m, _, r in self.entries:
            if m == n:
                return r
        raise KeyError("no rate computed at n = %d" % n)


def growth_diagnostics(S, target=None, window_len=10, precision_bits=DEFAULT_PRECISION_BITS):
    """Rates (1/n) log S_n with a trailing inf/sup window.

    Logs are taken of exact integers, so precision_bits is purely an output
    resolution.  Entries with S_n <= 0 are skipped and flagged; an all-zero
    sequence has no growth rate and raises ValueError.
    """
    if window_len < 1:
        raise ValueError("window length must be positive")
    entries = []
    skipped = []
    with mp.workprec(precision_bits + 12):
        for n, v in enumerate(S.values, start=1):
            if v <= 0:
                skipped.append(n)
                continue
            lg = mp.log(v)
            entries.append((n, lg, lg / n))
        if not entries:
            raise ValueError("sequence has no positive entries; growth rate undefined")
        window = [r for (_, _, r) in entries[-window_len:]]
        window_inf = min(window)
        window_sup = max(window)
        gap = None
        if target is not None and target.kind != INFINITE:
            c = mp.mpf(0)
            if target.kind == FINITE:
                c = mp.mpf(target.value.numerator) / target.value.denominator
            gap = max(abs(window_inf - c), abs(window_sup - c))
    return GrowthDiagnostics(
        entries=tuple(entries),
        skipped=tuple(skipped),
        window_len=window_len,
        window_inf=window_inf,
        window_sup=window_sup,
        target=target,
        target_gap=gap,
        precision_bits=precision_bits,
    )


@dataclass(frozen=True)
class SandwichViolation:
    r: int
    inequality: str  # "upper" (L_r <= F_r) or "lower" (L_r >= F_r - sum of proper F_d)
    least: int
    bound: int


@dataclass(frozen=True)
class SandwichReport:
    checked_n: int
    violations: tuple[SandwichViolation, ...]

    @property
    def ok(self):
        return not self.violations


def lemma_sandwich_check(F, L):
    """Check L_r <= F_r and L_r >= F_r - sum of F_d over proper divisors d.

    Both inequalities are exact consequences of the divisor-sum relation when
    L is the inversion of F; a violation means the pair is inconsistent.
    """
    if F.kind != KIND_FIXED or L.kind != KIND_LEAST:
        raise ValueError("expected a (fixed, least) pair")
    if F.N != L.N:
        raise ValueError("horizon mismatch")
    violations = []
    for r in range(1, F.N + 1):
        f_r = F.values[r - 1]
        l_r = L.values[r - 1]
        if l_r > f_r:
            violations.append(SandwichViolation(r, "upper", l_r, f_r))
        proper = sum(F.values[d - 1] for d in divisors(r) if d != r)
        if l_r < f_r - proper:
            violations.append(SandwichViolation(r, "lower", l_r, f_r - proper))
    return SandwichReport(checked_n=F.N, violations=tuple(violations))


# --- shared sequence file format --------------------------------------------


def write_sequence_csv(S, fh):
    """Write the shared sequence format: header n,value then one row per n."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["n", "value"])
    for n, v in enumerate(S.values, start=1):
        writer.writerow([n, v])


def read_sequence_csv(fh, kind=KIND_FIXED):
    """Read the shared sequence format; rows must start at 1 with no gaps."""
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["n", "value"]:
        raise ValueError("expected header 'n,value'")
    values = []
    for expected, row in enumerate(reader, start=1):
        if not row:
            continue
        if len(row) != 2:
            raise ValueError("malformed row %r" % (row,))
        n = int(row[0])
        if n != expected:
            raise ValueError("rows must be sorted from n = 1 with no gaps (saw %d)" % n)
        values.append(int(row[1]))
    if not values:
        raise ValueError("empty sequence file")
    return CountSequence(kind, tuple(values))


def format_rate(x, precision_bits=DEFAULT_PRECISION_BITS):
    """Decimal rendering of a high-precision real at the precision-implied digits."""
    return mp.nstr(x, digits_for_bits(precision_bits))
