"""Exact integer number theory.

Primality testing, least primes in the progression 1 mod n, primitive roots,
elements of prescribed multiplicative order, divisors and the Moebius
function.  All routines are deterministic; searches and factorisations take
explicit budgets so pathological inputs raise BudgetError instead of hanging.
"""

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .precision import DEFAULT_PRECISION_BITS, log_real

# Least prime p ≡ 1 (mod n) satisfies p <= B * n**5.5 for an effective but
# unpublished constant B (Heath-Brown's sharpening of Linnik's theorem).
# Empirically B = 1 already suffices at desk scale; the test suite sweeps
# 2 <= n <= 10**4 and reports the observed maximum of p / n**5.5.
PRIME_BOUND_EXPONENT = 5.5
PRIME_BOUND_CONSTANT = 1

# Below this limit the strong-pseudoprime base set in _STRONG_BASES is known
# to be complete, so is_prime is fully deterministic.
DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981

# Above the deterministic limit: Baillie-PSW plus this many random strong
# rounds; the random-round error probability alone is below 4**-64.
RANDOM_ROUNDS = 64

DEFAULT_SCAN_CEILING = 2**40
DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_ITERATIONS = 1 << 22


class BudgetError(RuntimeError):
    """A configurable search or factorisation budget was exhausted."""


@dataclass(frozen=True)
class PrimeInProgression:
    """The least prime p > search_floor with p ≡ 1 (mod modulus_n)."""

    modulus_n: int
    p: int
    search_floor: int = 0


@dataclass(frozen=True)
class PrimitiveRootCert:
    """A primitive root g mod p, certified by the factorisation of p - 1."""

    p: int
    g: int
    factorization: tuple[tuple[int, int], ...]

    def verify(self):
        n = 1
        for q, e in self.factorization:
            n *= q**e
        if n != self.p - 1:
            return False
        if pow(self.g, self.p - 1, self.p) != 1 and self.p > 2:
            return False
        return all(pow(self.g, (self.p - 1) // q, self.p) != 1 for q, _ in self.factorization)


@dataclass(frozen=True)
class FactoredNatural:
    """A positive integer carried as a sorted tuple of (prime, exponent)."""

    factors: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs):
        merged = {}
        for p, e in pairs:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                merged[p] = merged.get(p, 0) + e
        return cls(tuple(sorted(merged.items())))

    def value(self):
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def __int__(self):
        return self.value()

    def log(self, precision_bits=DEFAULT_PRECISION_BITS):
        total = 0
        for p, e in self.factors:
            total += e * log_real(p, precision_bits)
        return total

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join("%d^%d" % (p, e) for p, e in self.factors)


# --- primality -------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)

# (limit, bases): the bases are a complete strong-pseudoprime witness set for
# every n below the limit.
_STRONG_BASES = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (4_759_123_141, (2, 7, 61)),
    (1_122_004_669_633, (2, 13, 23, 1662803)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (DETERMINISTIC_LIMIT, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)


def _product_of_primes_below(bound):
    out = 1
    for m in range(2, bound):
        if all(m % q for q in range(2, math.isqrt(m) + 1)):
            out *= m
    return out


_SMALL_PRIME_PRODUCT = _product_of_primes_below(1000)


def _strong_probable_prime(n, base, d, r):
    # n - 1 = d * 2**r with d odd
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _decompose(n):
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    return d, r


def _strong_lucas_probable_prime(n):
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with Jacobi(D|n) = -1.
    def jacobi(a, m):
        a %= m
        result = 1
        while a:
            while a % 2 == 0:
                a //= 2
                if m % 8 in (3, 5):
                    result = -result
            a, m = m, a
            if a % 4 == 3 and m % 4 == 3:
                result = -result
            a %= m
        return result if m == 1 else 0

    if n % 2 == 0 or n < 3:
        return n == 2
    s = math.isqrt(n)
    if s * s == n:
        return False
    D = 5
    while True:
        j = jacobi(D % n, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -(D + 2) if D > 0 else -(D - 2)
    P = 1
    Q = (1 - D) // 4

    # Strong test on n + 1 = d * 2**s with d odd.
    d = n + 1
    s2 = 0
    while d % 2 == 0:
        d //= 2
        s2 += 1

    # Lucas sequences by binary ladder: U_1 = 1, V_1 = P.
    U, V = 1, P
    Qk = Q % n
    inv2 = pow(2, -1, n)
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s2 - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


def is_prime(n):
    """Primality test, deterministic below DETERMINISTIC_LIMIT.

    Above the limit: Baillie-PSW plus RANDOM_ROUNDS random strong rounds
    (seeded from n, so the result is reproducible); a composite escaping this
    is less likely than 4**-64 per random round alone.
    """
    if n < 2:
        return False
    if n in _SMALL_PRIMES:
        return True
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return False
    if n > 10**6 and math.gcd(n, _SMALL_PRIME_PRODUCT) > 1:
        return False
    d, r = _decompose(n)
    if n < DETERMINISTIC_LIMIT:
        for limit, bases in _STRONG_BASES:
            if n < limit:
                return all(_strong_probable_prime(n, b, d, r) for b in bases)
    if not _strong_probable_prime(n, 2, d, r):
        return False
    if not _strong_lucas_probable_prime(n):
        return False
    rng = random.Random(n)
    for _ in range(RANDOM_ROUNDS):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1), d, r):
            return False
    return True


# --- prime search ----------------------------------------------------------


def least_prime_congruent_one(n, search_floor=0, max_candidates=DEFAULT_SCAN_CEILING):
    """Least prime p > search_floor with p ≡ 1 (mod n), by linear scan.

    Scans p = k*n + 1 in increasing order (for n = 1 that is every integer
    above the floor).  Dirichlet guarantees termination; the candidate budget
    turns an absurd input into a BudgetError instead of a hang.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    if search_floor < 0:
        raise ValueError("search floor must be nonnegative")
    k = max(1, (search_floor - 1) // n + 1)
    for _ in range(max_candidates):
        candidate = k * n + 1
        if candidate > search_floor and candidate >= 2 and is_prime(candidate):
            return PrimeInProgression(modulus_n=n, p=candidate, search_floor=search_floor)
        k += 1
    raise BudgetError(
        "no prime ≡ 1 (mod %d) above %d within %d candidates" % (n, search_floor, max_candidates)
    )


# --- factorisation ---------------------------------------------------------


def _brent_rho(n, max_iterations):
    """Brent's cycle-finding rho, deterministic seed schedule.  n odd composite."""
    for c in range(1, 64):
        y, r, q = 2, 1, 1
        g = 1
        count = 0
        x = ys = y
        while g == 1 and count <= max_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                batch = min(128, r - k)
                for _ in range(batch):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                count += batch
                g = math.gcd(q, n)
                k += batch
                if count > max_iterations:
                    break
            r *= 2
        if g == n:
            # gcd collapsed all at once; replay one step at a time from ys.
            g = 1
            for _ in range(max_iterations):
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                if g > 1:
                    break
        if 1 < g < n:
            return g
    raise BudgetError("rho failed to split %d within budget" % n)


def factorize(n, trial_bound=DEFAULT_TRIAL_BOUND, rho_iterations=DEFAULT_RHO_ITERATIONS):
    """Full factorisation as a sorted tuple of (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    factors = {}
    for q in (2, 3, 5):
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
    f = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)  # wheel mod 30
    i = 0
    while f * f <= n and f <= trial_bound:
        while n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        f += increments[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _brent_rho(m, rho_iterations)
        stack.append(d)
        stack.append(m // d)
    return tuple(sorted(factors.items()))


# --- primitive roots and prescribed orders ----------------------------------


def primitive_root(p, trial_bound=DEFAULT_TRIAL_BOUND, rho_iterations=DEFAULT_RHO_ITERATIONS):
    """Smallest primitive root mod p, with the certifying factorisation of p - 1."""
    if not is_prime(p):
        raise ValueError("%d is not prime" % p)
    if p == 2:
        return PrimitiveRootCert(p=2, g=1, factorization=())
    fact = factorize(p - 1, trial_bound, rho_iterations)
    exponents = [(p - 1) // q for q, _ in fact]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in exponents):
            return PrimitiveRootCert(p=p, g=g, factorization=fact)
    raise ArithmeticError("no primitive root found mod %d" % p)  # unreachable for prime p


def element_of_order(p, g, n):
    """g**((p-1)/n) mod p: an element of multiplicative order exactly n."""
    if n < 1:
        raise ValueError("order must be positive")
    if (p - 1) % n != 0:
        raise ValueError("%d does not divide p - 1 = %d" % (n, p - 1))
    return pow(g, (p - 1) // n, p)


# --- divisors and Moebius ----------------------------------------------------


@lru_cache(maxsize=None)
def divisors(n):
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError("divisors needs a positive integer")
    divs = [1]
    for q, e in factorize(n):
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


@lru_cache(maxsize=None)
def mobius(n):
    """Moebius function: 0 on non-squarefree n, else (-1)**(number of primes)."""
    if n < 1:
        raise ValueError("mobius needs a positive integer")
    fact = factorize(n)
    if any(e > 1 for _, e in fact):
        return 0
    return -1 if len(fact) % 2 else 1


def euler_phi(n):
    """Euler's totient."""
    if n < 1:
        raise ValueError("euler_phi needs a positive integer")
    out = n
    for q, _ in factorize(n):
        out -= out // q
    return out
