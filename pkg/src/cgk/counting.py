"""Counting C-groups of a given order.

``count_all`` evaluates the Murty-Murty sum over all coprime splittings
``n = d * e`` directly; ``count_by_divisor`` and ``count_by_divisor_and_order``
refine it by acting divisor and acting group order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import TYPE_CHECKING

from .arith import FactoredInt, as_factored, valuation
from .errors import InvalidActingOrder, InvalidDivisor

if TYPE_CHECKING:
    from .clusters import Cluster


@dataclass(frozen=True)
class CountBreakdown:
    n: FactoredInt
    by_divisor: tuple[tuple[int, int], ...]
    total: int


def nu(p: int, j: int, e: FactoredInt | int) -> int:
    """Exponent of ``p`` in the product of ``gcd(p**j, q - 1)`` over primes ``q | e``."""
    e = as_factored(e)
    if j == 0:
        return 0
    return sum(min(j, valuation(p, q - 1)) for q in e.primes if q != 2)


def _exact_order_term(p: int, j: int, e: FactoredInt) -> int:
    """Number of cyclic subgroups of order p^j in the p-part of Aut of the e-part."""
    num = p ** nu(p, j, e) - p ** nu(p, j - 1, e)
    den = p ** (j - 1) * (p - 1)
    q, rem = divmod(num, den)
    assert rem == 0, (p, j, e)
    return q


def _prime_sum(p: int, alpha: int, e: FactoredInt) -> int:
    return sum(_exact_order_term(p, j, e) for j in range(1, alpha + 1))


def count_all(n: int | str | FactoredInt) -> int:
    """Number of isomorphism types of C-groups of order ``n``."""
    n = as_factored(n)
    total = 0
    factors = n.factors
    for size in range(len(factors) + 1):
        for chosen in combinations(range(len(factors)), size):
            d = math.prod(factors[i][0] ** factors[i][1] for i in chosen)
            e = n.divide(d)
            term = 1
            for i in chosen:
                p, alpha = factors[i]
                term *= _prime_sum(p, alpha, e)
                if not term:
                    break
            total += term
    return total


def acting_divisors(n: int | str | FactoredInt) -> list[int]:
    """Candidate acting divisors: full prime-power parts over subsets of all but the largest prime."""
    n = as_factored(n)
    parts = [p**a for p, a in n.factors[:-1]]
    divisors = [1]
    for part in parts:
        divisors += [d * part for d in divisors]
    return sorted(divisors)


def _check_divisor(n: FactoredInt, d: int) -> None:
    if d == 1:
        return
    if n.value % d or d not in acting_divisors(n):
        raise InvalidDivisor(f"{d} is not an acting divisor candidate for {n}")


def count_by_divisor(n: int | str | FactoredInt, d: int) -> int:
    """Number of C-groups of order ``n`` with acting divisor ``d``."""
    n = as_factored(n)
    _check_divisor(n, d)
    e = n.divide(d)
    result = 1
    for p, alpha in as_factored_divisor(n, d).factors:
        result *= _prime_sum(p, alpha, e)
    return result


def as_factored_divisor(n: FactoredInt, d: int) -> FactoredInt:
    """Factorization of a divisor ``d`` of ``n`` read off from ``n``'s primes."""
    factors = []
    for p, _ in n.factors:
        a = valuation(p, d) if d % p == 0 else 0
        if a:
            factors.append((p, a))
    return FactoredInt(d, tuple(factors))


def _check_acting_order(n: FactoredInt, d: int, m: int) -> FactoredInt:
    dd = as_factored_divisor(n, d)
    if d % m or any(m % p for p in dd.primes):
        raise InvalidActingOrder(f"{m} is not a valid acting group order for d={d}")
    return dd


def count_by_divisor_and_order(n: int | str | FactoredInt, d: int, m: int) -> int:
    """Number of C-groups of order ``n`` with acting divisor ``d`` and acting group order ``m``."""
    n = as_factored(n)
    _check_divisor(n, d)
    dd = _check_acting_order(n, d, m)
    e = n.divide(d)
    result = 1
    for p in dd.primes:
        result *= _exact_order_term(p, valuation(p, m), e)
    return result


def acting_group_orders(n: int | str | FactoredInt, d: int) -> list[int]:
    """Candidate acting group orders ``m`` with ``rad(d) | m | gcd(d, prod(q - 1))``."""
    n = as_factored(n)
    if d == 1:
        raise InvalidDivisor("acting group orders are only defined for d > 1")
    _check_divisor(n, d)
    dd = as_factored_divisor(n, d)
    e = n.divide(d)
    bound = math.gcd(d, math.prod(q - 1 for q in e.primes))
    radical = math.prod(dd.primes)
    if bound % radical:
        return []
    bf = as_factored_divisor(n, bound)
    orders = [radical]
    for p, b in bf.factors:
        orders = [m * p**k for m in orders for k in range(b)]
    return sorted(orders)


def count_by_cluster(n: int | str | FactoredInt, cluster: Cluster) -> int:
    """Number of C-groups of order ``n`` whose cluster is ``cluster``."""
    from .clusters import is_permissible
    from .structure import action_choice_count
    from .errors import NotPermissible

    n = as_factored(n)
    if cluster.order != n or not is_permissible(cluster):
        raise NotPermissible(f"{cluster} is not permissible for {n}")
    result = 1
    running: dict[int, int] = {}
    for p, q, e in cluster.triples:
        c = running.get(p, 0)
        result *= action_choice_count(p, e, c)
        running[p] = max(c, e)
    return result


def breakdown(n: int | str | FactoredInt) -> CountBreakdown:
    n = as_factored(n)
    rows = tuple((d, count_by_divisor(n, d)) for d in acting_divisors(n))
    return CountBreakdown(n, rows, sum(c for _, c in rows))
