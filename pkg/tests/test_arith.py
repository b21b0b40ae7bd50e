import math

import pytest
from hypothesis import given, settings, strategies as st

from cgk.arith import (
    FactoredInt,
    crt,
    discrete_log,
    factorize,
    is_prime,
    mul_order,
    pohlig_hellman,
    smallest_primitive_root,
)
from cgk.errors import CGroupError, FactorizationTimeout, ModuliNotCoprime, NotCoprime, NotGenerator, OutOfRange


def trial_division(n):
    out, p = [], 2
    while p * p <= n:
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        if a:
            out.append((p, a))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def brute_order(t, mod):
    k, x = 1, t % mod
    while x != 1:
        x = x * t % mod
        k += 1
    return k


@pytest.mark.parametrize("n, expected", [
    (780, [(2, 2), (3, 1), (5, 1), (13, 1)]),
    (1, []),
    (561, trial_division(561)),
])
def test_factorize_examples(n, expected):
    assert list(factorize(n).factors) == expected


def test_factorize_large_semiprime_uses_rho():
    p, q = 1000003, 1000033
    f = factorize(p * q * 1847359 * 930409)
    assert f.factors == ((930409, 1), (1000003, 1), (1000033, 1), (1847359, 1))


def test_factorize_range_and_budget():
    with pytest.raises(OutOfRange):
        factorize(1 << 127)
    with pytest.raises(OutOfRange):
        factorize(0)
    # two 15-digit primes cannot be split with a tiny budget
    with pytest.raises(FactorizationTimeout):
        factorize(100000000000031 * 100000000000067, rho_budget=1000)


def test_factorize_exhaustive_small_range():
    for n in range(2, 100001):
        f = factorize(n)
        assert f.value == n
        assert math.prod(p**a for p, a in f.factors) == n


@pytest.mark.parametrize("n, expected", [(2, True), (1, False), (561, False), (0, False),
                                         (2**61 - 1, True), (2**89 - 1, True), (2**127 - 1, True),
                                         ((2**61 - 1) * (2**31 - 1), False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_sieve():
    limit = 20000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert [is_prime(n) for n in range(limit)] == sieve


@pytest.mark.parametrize("t, q, m, expected", [(8, 13, 1, 4), (1, 13, 1, 1), (2, 3, 2, 6)])
def test_mul_order_examples(t, q, m, expected):
    assert mul_order(t, q, m) == expected == brute_order(t, q**m)


def test_mul_order_not_coprime():
    with pytest.raises(NotCoprime):
        mul_order(26, 13, 1)


@pytest.mark.parametrize("q, m, expected", [(3, 1, 2), (7, 1, 3), (3, 2, 2)])
def test_smallest_primitive_root_examples(q, m, expected):
    assert smallest_primitive_root(q, m) == expected


@pytest.mark.parametrize("g, t, q, m, expected", [(2, 8, 13, 1, 3), (2, 1, 13, 1, 0), (2, 2, 13, 1, 1)])
def test_discrete_log_examples(g, t, q, m, expected):
    assert discrete_log(g, t, q, m) == expected


def test_discrete_log_errors():
    with pytest.raises(NotCoprime):
        discrete_log(2, 13, 13, 1)
    with pytest.raises(NotGenerator):
        discrete_log(3, 9, 13, 1)


ODD_PRIME_POWERS = [(q, m) for q in range(3, 10000) if is_prime(q)
                    for m in range(1, 14) if q**m <= 10**4]


def test_discrete_log_all_units_small_prime_powers():
    for q, m in ODD_PRIME_POWERS:
        mod = q**m
        g = smallest_primitive_root(q, m)
        phi = q ** (m - 1) * (q - 1)
        assert brute_order(g, mod) == phi
        step = max(1, mod // 97)
        for t in range(1, mod, step):
            if t % q:
                x = discrete_log(g, t, q, m)
                assert 0 <= x < phi and pow(g, x, mod) == t
                assert phi % mul_order(t, q, m) == 0


def test_pohlig_hellman_generic_group():
    # cyclic group of order 12 realised additively mod 12 via a multiplicative wrapper
    mod = 13
    assert pohlig_hellman(2, 11, 12, [(2, 2), (3, 1)], lambda x, y: x * y % mod, 1) == 7


@pytest.mark.parametrize("residues, expected", [([(2, 3), (3, 5)], 8), ([(5, 7)], 5), ([(0, 3), (0, 5)], 0)])
def test_crt_examples(residues, expected):
    assert crt(residues) == expected


def test_crt_not_coprime():
    with pytest.raises(ModuliNotCoprime):
        crt([(1, 4), (1, 6)])


@given(st.lists(st.sampled_from([3, 4, 5, 7, 11, 13, 17, 19, 23, 25, 27, 29]), min_size=1, max_size=5, unique=True),
       st.data())
@settings(max_examples=200, deadline=None)
def test_crt_reduces_correctly(moduli, data):
    moduli = [m for i, m in enumerate(moduli) if all(math.gcd(m, k) == 1 for k in moduli[:i])]
    residues = [(data.draw(st.integers(-1000, 1000)), m) for m in moduli]
    x = crt(residues)
    assert 0 <= x < math.prod(moduli)
    assert all((x - r) % m == 0 for r, m in residues)


def test_factored_int_text_format():
    f = FactoredInt.parse("2^2*3*5*13")
    assert f.value == 780 and str(f) == "2^2*3*5*13"
    assert FactoredInt.parse("1").factors == ()
    big = FactoredInt.parse("5^5*7^5*11^5*13^5*197^7*251^4*677^8*727^4")
    assert big.value > 2**127 and big.exponent(677) == 8
    with pytest.raises(CGroupError):
        FactoredInt.parse("4*3")
    with pytest.raises(CGroupError):
        FactoredInt.parse("2^x")


def test_factored_int_invariants():
    with pytest.raises(CGroupError):
        FactoredInt(12, ((3, 1), (2, 2)))
    with pytest.raises(CGroupError):
        FactoredInt(13, ((2, 2), (3, 1)))
    assert FactoredInt.parse("2^2*3*5*13").divide(12) == factorize(65)
