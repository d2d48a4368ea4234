import math
import random

import pytest

from perigee.numtheory import (
    BudgetError,
    FactoredNatural,
    PRIME_BOUND_EXPONENT,
    divisors,
    element_of_order,
    euler_phi,
    factorize,
    is_prime,
    least_prime_congruent_one,
    mobius,
    primitive_root,
)


def sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return flags


def test_is_prime_small_exhaustive():
    limit = 100_000
    flags = sieve(limit)
    for n in range(limit + 1):
        assert is_prime(n) == bool(flags[n]), n


def test_is_prime_examples():
    assert is_prime(7)
    assert not is_prime(561)  # 3 * 11 * 17, a Carmichael number
    assert is_prime(10**9 + 7)


def test_is_prime_strong_pseudoprime_traps():
    # smallest strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime(3_215_031_751)
    assert not is_prime(3_474_749_660_383)
    # some large primes and a semiprime
    assert is_prime(2**89 - 1)
    assert is_prime(2**127 - 1)
    assert not is_prime((2**89 - 1) * (2**127 - 1))


def test_is_prime_beyond_deterministic_range():
    # both primes sit above the deterministic base-set limit of ~3.3e24
    p = 10**25 + 13
    q = 10**25 + 223
    assert is_prime(p)
    assert is_prime(q)
    assert not is_prime(p * q)
    assert not is_prime(p + 2)


def test_least_prime_examples():
    assert least_prime_congruent_one(1).p == 2
    assert least_prime_congruent_one(6).p == 7
    assert least_prime_congruent_one(24).p == 73
    assert least_prime_congruent_one(3, search_floor=27).p == 31


def test_least_prime_minimality_and_congruence():
    for n in range(1, 300):
        found = least_prime_congruent_one(n)
        assert found.p % n == 1 % n
        assert is_prime(found.p)
        # minimality: no smaller candidate in the progression is prime
        q = n + 1
        while q < found.p:
            assert not (q >= 2 and is_prime(q)) or q % n != 1 % n or q == found.p
            q += n


def test_least_prime_with_floor():
    found = least_prime_congruent_one(12, search_floor=12**3)
    assert found.p > 12**3 and found.p % 12 == 1 and is_prime(found.p)


def test_least_prime_budget_error():
    # 25 and 49 are composite, so two candidates are not enough for n = 24
    with pytest.raises(BudgetError):
        least_prime_congruent_one(24, max_candidates=2)


def test_prime_bound_small_sweep():
    # full 10**4 sweep lives in the acceptance suite
    for n in range(2, 500):
        found = least_prime_congruent_one(n)
        assert found.p <= n**PRIME_BOUND_EXPONENT


def test_primitive_root_examples():
    assert primitive_root(2).g == 1
    assert primitive_root(7).g == 3
    assert primitive_root(11).g == 2


def test_primitive_root_certificates():
    for p in (2, 3, 5, 7, 11, 101, 257, 65537, 10**9 + 7):
        cert = primitive_root(p)
        assert cert.verify()
        prod = 1
        for q, e in cert.factorization:
            assert is_prime(q)
            prod *= q**e
        assert prod == p - 1
        # smallest: no smaller g passes the same certificate
        exps = [(p - 1) // q for q, _ in cert.factorization]
        for g in range(1, cert.g):
            assert any(pow(g, e, p) == 1 for e in exps)


def test_element_of_order_examples():
    assert element_of_order(7, 3, 3) == 2
    assert element_of_order(5, 2, 4) == 2
    assert element_of_order(7, 3, 1) == 1


def test_element_of_order_exact_order():
    for p, n in ((7, 3), (11, 5), (13, 4), (31, 6), (101, 20)):
        g = primitive_root(p).g
        m = element_of_order(p, g, n)
        for j in range(1, 4 * n + 1):
            assert (pow(m, j, p) == 1) == (j % n == 0)


def test_element_of_order_rejects_bad_order():
    with pytest.raises(ValueError):
        element_of_order(7, 3, 4)  # 4 does not divide 6


def test_divisors_and_mobius_examples():
    assert divisors(12) == (1, 2, 3, 4, 6, 12)
    assert mobius(1) == 1
    assert mobius(12) == 0
    assert mobius(30) == -1


def test_mobius_divisor_sums():
    for n in range(2, 500):
        assert sum(mobius(d) for d in divisors(n)) == 0
    assert sum(mobius(d) for d in divisors(1)) == 1


def test_factorize_reassembles():
    rng = random.Random(20260808)
    for _ in range(200):
        n = rng.randrange(1, 10**12)
        fact = factorize(n)
        prod = 1
        for q, e in fact:
            assert is_prime(q)
            prod *= q**e
        assert prod == n


def test_factorize_large_semiprime():
    p, q = 1_000_003, 1_000_033
    assert factorize(p * q) == ((p, 1), (q, 1))


def test_euler_phi():
    for n in range(1, 200):
        assert euler_phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_factored_natural():
    f = FactoredNatural.from_pairs([(7, 2), (2, 1), (3, 1), (7, 1)])
    assert f.factors == ((2, 1), (3, 1), (7, 3))
    assert f.value() == 2058
    assert str(f) == "2^1*3^1*7^3"
    assert str(FactoredNatural.from_pairs([])) == "1"
    assert int(FactoredNatural.from_pairs([(5, 0)])) == 1
