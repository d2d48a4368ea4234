"""Product-group automorphism plans with prescribed periodic-point growth.

A plan assembles, for each index n up to a horizon, a finite component: the
least prime p_n ≡ 1 (mod n) (optionally above a search floor), a primitive
root g_n, an exponent K_n, and the multiplier g_n**((p_n-1)/n), which acts on
(Z/p_n)^{K_n} by coordinate-wise multiplication and has multiplicative order
exactly n.  The product of the components over all n is a compact group
automorphism whose period counts are exactly

    F_n = product over d | n of p_d**K_d,

carried here in factored form.  Exponent strategies:

  paper          K_n = floor(n*C / log p_n), each index independently
  compensated    K_n = max(0, floor((n*C - sum over proper divisors d of n
                   of K_d*log p_d) / log p_n)), ascending in n, so the
                   accumulated log F_n never overshoots the budget n*C
  subexponential K_n = floor(n**gamma) for a rational gamma in (0,1)
  infinite       K_n = 1 with p_n forced above n**n
  trivial        K_n = 0 (zero growth target)

Floors of (rational)/log(prime) are decided with adaptive-precision interval
arithmetic; they are never integers, so every decision terminates.

The companion closed forms (exact least-period counts via Moebius inversion,
the per-component lower bound p_n**K_n - 1) and a brute-force enumeration
oracle over truncated products let every claim be cross-checked exactly.
"""

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .numtheory import (
    BudgetError,
    DEFAULT_SCAN_CEILING,
    FactoredNatural,
    divisors,
    element_of_order,
    factorize,
    is_prime,
    least_prime_congruent_one,
    mobius,
    primitive_root,
)
from .orbits import KIND_FIXED, KIND_LEAST, CountSequence
from .precision import (
    DEFAULT_PRECISION_BITS,
    adaptive_decide,
    adaptive_floor,
    interval_precision,
    log_interval,
    log_real,
    rational_interval,
)
from .targets import FINITE, INFINITE, ZERO, GrowthTarget

STRATEGY_PAPER = "paper"
STRATEGY_COMPENSATED = "compensated"
STRATEGY_SUBEXPONENTIAL = "subexponential"
STRATEGY_INFINITE = "infinite"
STRATEGY_TRIVIAL = "trivial"

_FINITE_STRATEGIES = (STRATEGY_PAPER, STRATEGY_COMPENSATED, STRATEGY_SUBEXPONENTIAL)

DEFAULT_ENUMERATION_BUDGET = 10**7


@dataclass(frozen=True)
class ComponentSpec:
    """One finite component: the map x -> multiplier * x on (Z/p)^K."""

    n: int
    p: int
    g: int
    K: int
    multiplier: int

    def group_order(self):
        return self.p**self.K


@dataclass(frozen=True)
class ConstructionPlan:
    target: GrowthTarget
    strategy: str
    components: tuple[ComponentSpec, ...]
    gamma: Fraction | None = None

    @property
    def N(self):
        return len(self.components)

    def component(self, n):
        if not 1 <= n <= self.N:
            raise IndexError("component index %d outside 1..%d" % (n, self.N))
        return self.components[n - 1]

    def validate(self):
        """Deep invariant check (prime p, n | p-1, multiplier of order n)."""
        for comp in self.components:
            if comp.K < 0:
                raise ValueError("negative exponent at n = %d" % comp.n)
            if not is_prime(comp.p):
                raise ValueError("p = %d at n = %d is not prime" % (comp.p, comp.n))
            if (comp.p - 1) % comp.n != 0:
                raise ValueError("%d does not divide p - 1 at n = %d" % (comp.n, comp.n))
            if pow(comp.multiplier, comp.n, comp.p) != 1:
                raise ValueError("multiplier order does not divide n at n = %d" % comp.n)
            for q, _ in factorize(comp.n):
                if pow(comp.multiplier, comp.n // q, comp.p) == 1:
                    raise ValueError("multiplier order below n at n = %d" % comp.n)


def _floor_root(x, k):
    """Largest r >= 0 with r**k <= x, exactly."""
    if x < 0 or k < 1:
        raise ValueError("need x >= 0 and k >= 1")
    if x in (0, 1) or k == 1:
        return x
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        nxt = ((k - 1) * r + x // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def _paper_exponent(n, C, p, precision_bits):
    def build(bits):
        with interval_precision(bits):
            return rational_interval(n * C) / log_interval(p, bits)

    return adaptive_floor(build, start_bits=precision_bits)


def _compensated_exponent(n, C, p, spent, precision_bits):
    """spent: list of (K_d, p_d) over proper divisors d of n with K_d > 0."""

    def build(bits):
        with interval_precision(bits):
            budget = rational_interval(n * C)
            for k_d, p_d in spent:
                budget -= k_d * log_interval(p_d, bits)
            return budget / log_interval(p, bits)

    return max(0, adaptive_floor(build, start_bits=precision_bits))


def build_plan(
    target,
    strategy=None,
    n_max=1,
    gamma=None,
    precision_bits=DEFAULT_PRECISION_BITS,
    scan_ceiling=DEFAULT_SCAN_CEILING,
):
    """Build components n = 1..n_max for the given target and strategy.

    Components with K_n = 0 are still recorded (as trivial groups) so that
    indices stay aligned with the product over all n.
    """
    if n_max < 1:
        raise ValueError("horizon must be at least 1")
    if target.kind == ZERO:
        if strategy not in (None, STRATEGY_TRIVIAL):
            raise ValueError("zero target forces the trivial plan")
        strategy = STRATEGY_TRIVIAL
    elif target.kind == INFINITE:
        if strategy not in (None, STRATEGY_INFINITE):
            raise ValueError("infinite target requires the 'infinite' strategy")
        strategy = STRATEGY_INFINITE
    else:
        if strategy not in _FINITE_STRATEGIES:
            raise ValueError(
                "finite target requires one of %s" % (", ".join(_FINITE_STRATEGIES))
            )
    if strategy == STRATEGY_SUBEXPONENTIAL:
        gamma = Fraction(gamma) if gamma is not None else None
        if gamma is None or not 0 < gamma < 1:
            raise ValueError("subexponential strategy needs gamma in (0, 1)")
    elif gamma is not None:
        raise ValueError("gamma only applies to the subexponential strategy")

    C = target.value
    components = []
    for n in range(1, n_max + 1):
        floor = n**n if strategy == STRATEGY_INFINITE else 0
        found = least_prime_congruent_one(n, search_floor=floor, max_candidates=scan_ceiling)
        p = found.p
        g = primitive_root(p).g
        if strategy == STRATEGY_TRIVIAL:
            K = 0
        elif strategy == STRATEGY_INFINITE:
            K = 1
        elif strategy == STRATEGY_SUBEXPONENTIAL:
            K = _floor_root(n**gamma.numerator, gamma.denominator)
        elif strategy == STRATEGY_PAPER:
            K = _paper_exponent(n, C, p, precision_bits)
        else:
            spent = [
                (components[d - 1].K, components[d - 1].p)
                for d in divisors(n)
                if d != n and components[d - 1].K > 0
            ]
            K = _compensated_exponent(n, C, p, spent, precision_bits)
        multiplier = element_of_order(p, g, n)
        components.append(ComponentSpec(n=n, p=p, g=g, K=K, multiplier=multiplier))
    return ConstructionPlan(
        target=target, strategy=strategy, components=tuple(components), gamma=gamma
    )


# --- exact counts ------------------------------------------------------------


def _check_index(plan, n, component_limit):
    if n < 1:
        raise ValueError("n must be positive")
    if component_limit is None:
        if n > plan.N:
            raise ValueError("n = %d beyond plan horizon %d" % (n, plan.N))
        return plan.N
    if not 1 <= component_limit <= plan.N:
        raise ValueError("component limit outside 1..%d" % plan.N)
    return component_limit


def fixed_count(plan, n, component_limit=None):
    """F_n as a FactoredNatural: product of p_d**K_d over divisors d of n.

    With component_limit = M the product is restricted to d <= M, which is
    the exact period count of the truncated product group; n may then exceed
    the plan horizon.
    """
    limit = _check_index(plan, n, component_limit)
    pairs = []
    for d in divisors(n):
        if d > limit:
            continue
        comp = plan.components[d - 1]
        if comp.K:
            pairs.append((comp.p, comp.K))
    return FactoredNatural.from_pairs(pairs)


def fixed_count_log(plan, n, precision_bits=DEFAULT_PRECISION_BITS, component_limit=None):
    """log F_n as an mpf, summed from the factored form (no giant integers)."""
    limit = _check_index(plan, n, component_limit)
    total = 0
    for d in divisors(n):
        if d > limit:
            continue
        comp = plan.components[d - 1]
        if comp.K:
            total += comp.K * log_real(comp.p, precision_bits)
    return total


def least_count_exact(plan, n, component_limit=None):
    """Exact L_n by Moebius inversion of the plan's period counts."""
    _check_index(plan, n, component_limit)
    return sum(
        mobius(n // d) * fixed_count(plan, d, component_limit).value()
        for d in divisors(n)
    )


def least_count_claimed(plan, n):
    """The per-component closed form p_n**K_n - 1.

    This counts only the points whose coordinates vanish outside block n, so
    it is a lower bound for the exact least-period count, with equality (for
    n >= 2) exactly when every proper divisor d of n has K_d = 0.
    """
    comp = plan.component(n)
    return comp.p**comp.K - 1


def fixed_sequence(plan, n_max=None, component_limit=None):
    """The plan's period counts as a CountSequence (exact integers)."""
    top = n_max if n_max is not None else plan.N
    return CountSequence(
        KIND_FIXED,
        tuple(fixed_count(plan, n, component_limit).value() for n in range(1, top + 1)),
    )


def sigma_rate_target(plan, n):
    """C * sigma(n) / n: the nominal rate of the independent-floor strategy.

    Each divisor d of n contributes K_d*log p_d close to d*C, so the rate
    (1/n) log F_n tracks C * sigma(n)/n rather than C at composite n.
    """
    if plan.target.kind != FINITE:
        raise ValueError("sigma rate target needs a finite growth target")
    return plan.target.value * sum(divisors(n)) / n


# --- enumeration oracle -------------------------------------------------------


@dataclass(frozen=True)
class OracleCounts:
    fixed: CountSequence
    least: CountSequence
    points: int


def _multiplier_order(multiplier, p):
    """Multiplicative order by direct power iteration (independent of any
    divisor bookkeeping; terminates within p - 1 steps for a unit mod p)."""
    value = multiplier % p
    if value == 0:
        raise ValueError("multiplier must be a unit mod p")
    order = 1
    while value != 1:
        value = value * multiplier % p
        order += 1
        if order >= p:
            raise ValueError("multiplier is not a unit mod p")
    return order


def enumerate_oracle(plan, component_limit, n_max, max_points=DEFAULT_ENUMERATION_BUDGET):
    """Brute-force count of periods over the truncated product group.

    Materializes every coordinate vector of the product of the first
    component_limit component groups and applies the coordinate-wise rule: a
    point is fixed by the j-th iterate exactly when every block with a
    nonzero coordinate has multiplier_i**j = 1, so its least period is the
    lcm of the multiplier orders over its nonzero blocks (the zero point gets
    least period 1).  Each block's order is measured by power iteration from
    the multiplier itself, not assumed, so a plan whose multiplier does not
    have order n is caught as a mismatch against the closed forms.
    """
    limit = _check_index(plan, 1, component_limit)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    active = [c for c in plan.components[:limit] if c.K > 0]
    total = 1
    for c in active:
        total *= c.group_order()
        if total > max_points:
            raise BudgetError(
                "truncated group has more than %d points" % max_points
            )

    ranges = []
    slices = []
    offset = 0
    for c in active:
        ranges.extend([range(c.p)] * c.K)
        slices.append((_multiplier_order(c.multiplier, c.p), slice(offset, offset + c.K)))
        offset += c.K

    tally = {}
    for vector in itertools.product(*ranges):
        period = 1
        for order, sl in slices:
            if any(vector[sl]):
                period = math.lcm(period, order)
        tally[period] = tally.get(period, 0) + 1

    least = [tally.get(n, 0) for n in range(1, n_max + 1)]
    fixed = [
        sum(tally.get(d, 0) for d in divisors(n)) for n in range(1, n_max + 1)
    ]
    return OracleCounts(
        fixed=CountSequence(KIND_FIXED, tuple(fixed)),
        least=CountSequence(KIND_LEAST, tuple(least)),
        points=total,
    )


# --- claimed-versus-exact report ----------------------------------------------


@dataclass(frozen=True)
class ClaimedVsExactRow:
    n: int
    claimed: int
    exact: int
    proper_blocks_trivial: bool

    @property
    def difference(self):
        return self.exact - self.claimed


@dataclass(frozen=True)
class ClaimedVsExactReport:
    rows: tuple[ClaimedVsExactRow, ...]
    lower_bound_ok: bool
    equality_matches_predicate: bool
    discrepancy_count: int

    def discrepancies(self):
        return tuple(r for r in self.rows if r.difference != 0)


def claimed_vs_exact_report(plan, n_max):
    """Tabulate p_n**K_n - 1 against the exact inversion count.

    Checks that the closed form never exceeds the exact count and that, for
    n >= 2, equality holds exactly when all proper-divisor blocks are trivial
    (the predicate product over d | n, d < n of p_d**K_d equals 1).  At n = 1
    the exact count always exceeds the closed form by 1: the zero point has
    least period 1 but the closed form excludes it.
    """
    if not 1 <= n_max <= plan.N:
        raise ValueError("n_max outside 1..%d" % plan.N)
    rows = []
    for n in range(1, n_max + 1):
        claimed = least_count_claimed(plan, n)
        exact = least_count_exact(plan, n)
        trivial = all(
            plan.components[d - 1].K == 0 for d in divisors(n) if d != n
        )
        rows.append(ClaimedVsExactRow(n, claimed, exact, trivial))
    lower_ok = all(r.exact >= max(r.claimed, 0) for r in rows)
    predicate_ok = all(
        (r.difference == 0) == r.proper_blocks_trivial for r in rows if r.n >= 2
    )
    return ClaimedVsExactReport(
        rows=tuple(rows),
        lower_bound_ok=lower_ok,
        equality_matches_predicate=predicate_ok,
        discrepancy_count=sum(1 for r in rows if r.difference != 0),
    )


# --- compensated-strategy deficit certification --------------------------------


@dataclass(frozen=True)
class DeficitRow:
    n: int
    budget_nonnegative: bool
    verified: bool


@dataclass(frozen=True)
class DeficitReport:
    rows: tuple[DeficitRow, ...]
    negative_budget: tuple[int, ...]
    unverified: tuple[int, ...]

    @property
    def ok(self):
        return not self.unverified


def deficit_report(plan, n_max=None, precision_bits=DEFAULT_PRECISION_BITS):
    """Certify 0 <= n*C - log F_n < log p_n wherever the running budget allows.

    For the compensated strategy the deficit n*C - log F_n is the floor
    remainder of the final budget division, so whenever the running budget
    n*C - sum over proper divisors of K_d*log p_d is nonnegative the deficit
    must land in [0, log p_n).  Both inequalities are certified with interval
    arithmetic at escalating precision (they are strict in exact arithmetic:
    n*C never equals the log of an integer).  Rows with a negative running
    budget are reported, not checked.
    """
    if plan.strategy != STRATEGY_COMPENSATED:
        raise ValueError("deficit certification applies to the compensated strategy")
    top = n_max if n_max is not None else plan.N
    if not 1 <= top <= plan.N:
        raise ValueError("n_max outside 1..%d" % plan.N)
    C = plan.target.value
    rows = []
    for n in range(1, top + 1):
        comp = plan.components[n - 1]
        spent = [
            (plan.components[d - 1].K, plan.components[d - 1].p)
            for d in divisors(n)
            if d != n and plan.components[d - 1].K > 0
        ]

        def budget_iv(bits):
            with interval_precision(bits):
                b = rational_interval(n * C)
                for k_d, p_d in spent:
                    b -= k_d * log_interval(p_d, bits)
                return b

        nonneg = adaptive_decide(
            lambda bits: budget_iv(bits) > 0, start_bits=precision_bits
        )
        if not nonneg:
            rows.append(DeficitRow(n, False, False))
            continue

        def in_window(bits):
            with interval_precision(bits):
                deficit = budget_iv(bits) - comp.K * log_interval(comp.p, bits)
                above = deficit > 0
                below = deficit < log_interval(comp.p, bits)
            if above is False or below is False:
                return False
            if above and below:
                return True
            return None

        rows.append(DeficitRow(n, True, adaptive_decide(in_window, start_bits=precision_bits)))
    return DeficitReport(
        rows=tuple(rows),
        negative_budget=tuple(r.n for r in rows if not r.budget_nonnegative),
        unverified=tuple(r.n for r in rows if r.budget_nonnegative and not r.verified),
    )


# --- plan files ----------------------------------------------------------------


def plan_to_json(plan):
    """Plan as a JSON-ready dict; every integer is a decimal string."""
    obj = {
        "target": plan.target.to_json(),
        "strategy": plan.strategy,
        "N": str(plan.N),
        "components": [
            {
                "n": str(c.n),
                "p": str(c.p),
                "g": str(c.g),
                "K": str(c.K),
                "multiplier": str(c.multiplier),
            }
            for c in plan.components
        ],
    }
    if plan.gamma is not None:
        obj["gamma"] = str(plan.gamma)
    return obj


def plan_from_json(obj):
    target = GrowthTarget.from_json(obj["target"])
    strategy = obj["strategy"]
    gamma = Fraction(obj["gamma"]) if "gamma" in obj else None
    components = []
    for raw in obj["components"]:
        components.append(
            ComponentSpec(
                n=int(raw["n"]),
                p=int(raw["p"]),
                g=int(raw["g"]),
                K=int(raw["K"]),
                multiplier=int(raw["multiplier"]),
            )
        )
    if [c.n for c in components] != list(range(1, len(components) + 1)):
        raise ValueError("components must cover n = 1..N in order")
    if int(obj["N"]) != len(components):
        raise ValueError("N disagrees with the component list")
    return ConstructionPlan(
        target=target, strategy=strategy, components=tuple(components), gamma=gamma
    )


def save_plan(plan, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(plan_to_json(plan), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_plan(path):
    with open(path, "r", encoding="utf-8") as fh:
        return plan_from_json(json.load(fh))
