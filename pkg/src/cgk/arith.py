"""Exact integer and modular arithmetic.

Factorization, primality, multiplicative orders, primitive roots modulo odd
prime powers, discrete logarithms and the Chinese remainder theorem.  Python
integers are unbounded, so modular products never truncate.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Iterable, TypeVar

from .errors import (
    CGroupError,
    FactorizationTimeout,
    ModuliNotCoprime,
    NotCoprime,
    NotGenerator,
    OutOfRange,
)

MAX_FACTOR_INPUT = 1 << 127
TRIAL_DIVISION_BOUND = 10**6
DEFAULT_RHO_BUDGET = 1 << 22

T = TypeVar("T", bound=Hashable)


# ---------------------------------------------------------------------------
# factored integers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its prime factorization.

    ``factors`` is a tuple of ``(prime, exponent)`` pairs with strictly
    increasing primes.  Values built with :meth:`from_factors` may exceed the
    range of :func:`factorize`; nothing here limits their size.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise CGroupError(f"expected a positive integer, got {self.value}")
        prod = 1
        last = 1
        for p, a in self.factors:
            if p <= last or a < 1:
                raise CGroupError(f"malformed factorization {self.factors!r}")
            prod *= p**a
            last = p
        if prod != self.value:
            raise CGroupError(f"factorization {self.factors!r} does not multiply to {self.value}")

    @classmethod
    def from_factors(cls, factors: Iterable[tuple[int, int]], check: bool = True) -> FactoredInt:
        """Build from (prime, exponent) pairs in any order; equal primes merge."""
        merged: dict[int, int] = {}
        for p, a in factors:
            if a == 0:
                continue
            if check and not is_prime(p):
                raise CGroupError(f"{p} is not prime")
            merged[p] = merged.get(p, 0) + a
        ordered = tuple(sorted(merged.items()))
        return cls(math.prod(p**a for p, a in ordered), ordered)

    @classmethod
    def parse(cls, text: str) -> FactoredInt:
        """Parse ``"2^2*3*5*13"`` (also accepts ``.`` or ``·`` as separators)."""
        text = text.strip()
        if text == "1":
            return cls(1, ())
        parts = [s for s in re.split(r"\s*[*.·]\s*", text) if s]
        if not parts:
            raise CGroupError(f"cannot parse factored integer {text!r}")
        factors = []
        for part in parts:
            m = re.fullmatch(r"(\d+)(?:\s*(?:\^|\*\*)\s*(\d+))?", part)
            if m is None:
                raise CGroupError(f"cannot parse factor {part!r} in {text!r}")
            factors.append((int(m.group(1)), int(m.group(2) or 1)))
        return cls.from_factors(factors)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for q, a in self.factors:
            if q == p:
                return a
        return 0

    def part(self, p: int) -> int:
        """The largest power of ``p`` dividing the value."""
        return p ** self.exponent(p)

    def divide(self, d: int) -> FactoredInt:
        """Exact quotient ``value / d`` for a divisor ``d`` of the value."""
        if self.value % d:
            raise CGroupError(f"{d} does not divide {self.value}")
        rest = []
        for p, a in self.factors:
            while d % p == 0:
                d //= p
                a -= 1
            if a:
                rest.append((p, a))
        return FactoredInt(math.prod(p**a for p, a in rest), tuple(rest))

    def is_squarefree(self) -> bool:
        return all(a == 1 for _, a in self.factors)


def as_factored(n: int | str | FactoredInt) -> FactoredInt:
    """Coerce an integer, factored text or :class:`FactoredInt`."""
    if isinstance(n, FactoredInt):
        return n
    if isinstance(n, str):
        s = n.strip()
        if s.isdigit():
            return factorize(int(s))
        return FactoredInt.parse(s)
    return factorize(int(n))


# ---------------------------------------------------------------------------
# primality and factorization
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# the twelve bases above are a deterministic witness set below this bound
_MR_DETERMINISTIC_BOUND = 318665857834031151167461
_MR_EXTRA_ROUNDS = 64


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Deterministic for ``n < 3.18e23`` (which covers all ``n < 2**64``).  Larger
    inputs additionally get 64 rounds with bases drawn from a generator seeded
    by ``n``, so the answer is reproducible and the error probability for a
    composite is below ``4**-64 = 2**-128``.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(n, a, d, s) for a in _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC_BOUND:
        return True
    rng = random.Random(n)
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1), d, s)
               for _ in range(_MR_EXTRA_ROUNDS))


@lru_cache(maxsize=1)
def _small_primes() -> list[int]:
    limit = TRIAL_DIVISION_BOUND
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _brent_rho(n: int, budget: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite ``n`` (Brent's variant)."""
    spent = 0
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            spent += r
            if spent > budget:
                raise FactorizationTimeout(f"Pollard rho budget of {budget} iterations exhausted for {n}")
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, rho_budget: int = DEFAULT_RHO_BUDGET) -> FactoredInt:
    """Factor ``1 <= n < 2**127``.

    Trial division by primes up to ``10**6``, then Brent's Pollard rho on the
    cofactor.  Raises :class:`FactorizationTimeout` when ``rho_budget``
    iterations do not suffice; callers may then supply a factored literal.
    """
    n = int(n)
    if n < 1 or n >= MAX_FACTOR_INPUT:
        raise OutOfRange(f"factorize supports 1 <= n < 2**127, got {n}")
    return _factorize_cached(n, rho_budget)


@lru_cache(maxsize=1 << 16)
def _factorize_cached(n: int, rho_budget: int) -> FactoredInt:
    found: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            found[p] = a
    if m > 1:
        rng = random.Random(m)
        stack = [m]
        while stack:
            x = stack.pop()
            if x == 1:
                continue
            if x < TRIAL_DIVISION_BOUND**2 or is_prime(x):
                # any composite below 10**12 would have a factor below 10**6
                found[x] = found.get(x, 0) + 1
                continue
            # perfect powers defeat rho's gcd step only rarely; handle squares cheaply
            r = math.isqrt(x)
            if r * r == x:
                stack.extend((r, r))
                continue
            f = _brent_rho(x, rho_budget, rng)
            stack.extend((f, x // f))
    return FactoredInt(n, tuple(sorted(found.items())))


# ---------------------------------------------------------------------------
# modular arithmetic
# ---------------------------------------------------------------------------

def totient_prime_power(q: int, m: int) -> int:
    return q ** (m - 1) * (q - 1)


@lru_cache(maxsize=4096)
def _unit_group_order_factors(q: int, m: int) -> tuple[tuple[int, int], ...]:
    """Factorization of q^(m-1)(q-1)."""
    f = dict(factorize(q - 1).factors)
    if m > 1:
        f[q] = f.get(q, 0) + m - 1
    return tuple(sorted(f.items()))


def _order_in(t: int, mod: int, group_order: int, factors: Iterable[tuple[int, int]]) -> int:
    k = group_order
    for p, _ in factors:
        while k % p == 0 and pow(t, k // p, mod) == 1:
            k //= p
    return k


def mul_order(t: int, q: int, m: int) -> int:
    """Multiplicative order of ``t`` modulo the odd prime power ``q**m``."""
    if t % q == 0:
        raise NotCoprime(f"{q} divides {t}")
    mod = q**m
    return _order_in(t % mod, mod, totient_prime_power(q, m), _unit_group_order_factors(q, m))


@lru_cache(maxsize=4096)
def smallest_primitive_root(q: int, m: int) -> int:
    """Least ``r >= 2`` generating the units modulo ``q**m`` (q an odd prime)."""
    mod = q**m
    phi = totient_prime_power(q, m)
    factors = _unit_group_order_factors(q, m)
    if mod == 3:
        return 2
    for r in range(2, mod):
        if r % q and all(pow(r, phi // p, mod) != 1 for p, _ in factors):
            return r
    raise AssertionError(f"no primitive root modulo {q}^{m}")


def _generic_power(x: T, k: int, mul: Callable[[T, T], T], one: T) -> T:
    result = one
    while k:
        if k & 1:
            result = mul(result, x)
        x = mul(x, x)
        k >>= 1
    return result


def _baby_giant(g: T, h: T, order: int, mul: Callable[[T, T], T], one: T) -> int:
    """Solve ``g**x == h`` for ``x`` in ``[0, order)``; ``g`` has the given order."""
    step = math.isqrt(order - 1) + 1 if order > 1 else 1
    table: dict[T, int] = {}
    cur = one
    for j in range(step):
        table.setdefault(cur, j)
        cur = mul(cur, g)
    giant = _generic_power(g, (order - step % order) % order, mul, one)
    cur = h
    for i in range(step + 1):
        j = table.get(cur)
        if j is not None:
            return (i * step + j) % order
        cur = mul(cur, giant)
    raise NotGenerator("target is not a power of the base")


def pohlig_hellman(g: T, h: T, order: int, order_factors: Iterable[tuple[int, int]],
                   mul: Callable[[T, T], T], one: T) -> int:
    """Discrete logarithm of ``h`` to base ``g`` in a cyclic group of known order.

    Works for any hashable group elements given a multiplication; ``order`` must
    be the exact order of ``g``.  Each prime-power chunk is solved digit by
    digit with baby-step/giant-step on the order-``p`` subgroup.
    """
    residues = []
    for p, e in order_factors:
        pe = p**e
        cof = order // pe
        gp = _generic_power(g, cof, mul, one)
        hp = _generic_power(h, cof, mul, one)
        gamma = _generic_power(gp, pe // p, mul, one)
        x = 0
        for k in range(e):
            gp_inv_x = _generic_power(gp, (pe - x) % pe, mul, one)
            hk = _generic_power(mul(gp_inv_x, hp), p ** (e - 1 - k), mul, one)
            x += _baby_giant(gamma, hk, p, mul, one) * p**k
        residues.append((x, pe))
    return crt(residues) if residues else 0


def discrete_log(g: int, t: int, q: int, m: int) -> int:
    """Unique ``x`` in ``[0, q**(m-1)(q-1))`` with ``g**x == t (mod q**m)``."""
    if t % q == 0 or g % q == 0:
        raise NotCoprime(f"{q} divides {t if t % q == 0 else g}")
    mod = q**m
    phi = totient_prime_power(q, m)
    factors = _unit_group_order_factors(q, m)
    if _order_in(g % mod, mod, phi, factors) != phi:
        raise NotGenerator(f"{g} is not a primitive root modulo {q}^{m}")
    return pohlig_hellman(g % mod, t % mod, phi, factors, lambda x, y: x * y % mod, 1 % mod)


def crt(residues: Iterable[tuple[int, int]]) -> int:
    """Chinese remainder theorem for pairwise coprime moduli."""
    x, mod = 0, 1
    for r, m in residues:
        if math.gcd(mod, m) != 1:
            raise ModuliNotCoprime(f"modulus {m} is not coprime to {mod}")
        # x + mod * s == r (mod m)
        s = (r - x) * pow(mod, -1, m) % m if m > 1 else 0
        x += mod * s
        mod *= m
    return x % mod


def valuation(p: int, n: int) -> int:
    """Exponent of the prime ``p`` in ``n`` (``n != 0``)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
