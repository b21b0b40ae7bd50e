"""Permissible sets (clusters) and their canonical order.

A cluster for order ``n`` with acting divisor ``d`` and acting group order
``m`` splits into independent choices, one per acting prime ``p``: the set of
primes ``p`` acts on and the exponents.  Per prime the options are ordered by

1. ``q_max``, the smallest prime acted on with the maximal exponent ``j``
   (``p**j || m``), ascending;
2. the exponent vector over the remaining candidate primes, read along
   ``[primes < q_max descending] + [primes > q_max ascending]``, ascending.

Whole clusters compare lexicographically over acting primes ascending.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .arith import FactoredInt, as_factored, is_prime, valuation
from .counting import acting_divisors, acting_group_orders, as_factored_divisor
from .errors import ContextMismatch, InvalidActingOrder, InvalidDivisor


class ActionTriple(NamedTuple):
    p: int
    q: int
    e: int


@dataclass(frozen=True)
class Cluster:
    """Triples ``(p, q, e)``: the Sylow ``p`` acts on the Sylow ``q`` with order ``p**e``."""

    triples: tuple[ActionTriple, ...]
    order: FactoredInt

    @classmethod
    def make(cls, triples, order) -> Cluster:
        ts = tuple(sorted(ActionTriple(*map(int, t)) for t in triples))
        return cls(ts, as_factored(order))

    @property
    def acting_primes(self) -> list[int]:
        return sorted({t.p for t in self.triples})

    @property
    def acted_on_primes(self) -> list[int]:
        return sorted({t.q for t in self.triples})

    @property
    def acting_divisor(self) -> int:
        d = 1
        for p in self.acting_primes:
            d *= self.order.part(p)
        return d

    @property
    def acting_group_order(self) -> int:
        m = 1
        for p in self.acting_primes:
            m *= p ** max(t.e for t in self.triples if t.p == p)
        return m

    def to_json(self) -> dict:
        return {"n": str(self.order), "triples": [list(t) for t in self.triples]}

    @classmethod
    def from_json(cls, data: dict) -> Cluster:
        return cls.make(data["triples"], as_factored(str(data["n"])))

    def __str__(self) -> str:
        return "{" + ", ".join(f"({p},{q},{e})" for p, q, e in self.triples) + "}"


def is_permissible(cluster: Cluster) -> bool:
    n = cluster.order
    seen_pairs = set()
    acting = set()
    acted = set()
    for p, q, e in cluster.triples:
        if e < 1 or not (q > p) or n.value % p or n.value % q:
            return False
        if not (is_prime(p) and is_prime(q)) or (q - 1) % p**e:
            return False
        if (p, q) in seen_pairs:
            return False
        seen_pairs.add((p, q))
        acting.add(p)
        acted.add(q)
    if acting & acted:
        return False
    return list(cluster.triples) == sorted(cluster.triples)


# ---------------------------------------------------------------------------
# per acting prime options
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _PrimeOption:
    p: int
    qmax: int
    digits: tuple[int, ...]          # exponents along the significance sequence
    triples: tuple[ActionTriple, ...]


def _significance(candidates: list[int], qmax: int) -> list[int]:
    lower = sorted((q for q in candidates if q < qmax), reverse=True)
    upper = sorted(q for q in candidates if q > qmax)
    return lower + upper


def _caps(p: int, j: int, rest: FactoredInt) -> dict[int, int]:
    caps = {}
    for q in rest.primes:
        v = min(j, valuation(p, q - 1)) if q > p else 0
        if v:
            caps[q] = v
    return caps


def _prime_options(p: int, j: int, rest: FactoredInt) -> Iterator[_PrimeOption]:
    caps = _caps(p, j, rest)
    candidates = sorted(caps)
    for qmax in (q for q in candidates if caps[q] == j):
        seq = _significance(candidates, qmax)
        ranges = [range(min(caps[q], j - 1) + 1) if q < qmax else range(caps[q] + 1) for q in seq]
        for digits in itertools.product(*ranges):
            ts = [ActionTriple(p, qmax, j)]
            ts += [ActionTriple(p, q, x) for q, x in zip(seq, digits) if x]
            yield _PrimeOption(p, qmax, tuple(digits), tuple(sorted(ts)))


def _check_context(n: FactoredInt, d: int, m: int) -> None:
    if d not in acting_divisors(n):
        raise InvalidDivisor(f"{d} is not an acting divisor candidate for {n}")
    if d == 1:
        if m != 1:
            raise InvalidActingOrder("the abelian case has acting group order 1")
        return
    if m not in acting_group_orders(n, d):
        raise InvalidActingOrder(f"{m} is not an acting group order candidate for n={n}, d={d}")


def prime_option_lists(n: FactoredInt, d: int, m: int) -> list[list[_PrimeOption]]:
    rest = n.divide(d)
    return [list(_prime_options(p, valuation(p, m), rest))
            for p in as_factored_divisor(n, d).primes]


def clusters_for(n, d: int, m: int) -> Iterator[Cluster]:
    """Yield the clusters for ``(n, d, m)`` in canonical order (lazily)."""
    n = as_factored(n)
    _check_context(n, d, m)
    if d == 1:
        yield Cluster((), n)
        return
    for combo in itertools.product(*prime_option_lists(n, d, m)):
        yield Cluster(tuple(t for opt in combo for t in opt.triples), n)


def cluster_key(cluster: Cluster) -> tuple:
    """Sort key realising the canonical order within one ``(n, d, m)`` context."""
    n = cluster.order
    d = cluster.acting_divisor
    rest = n.divide(d)
    key = []
    for p in cluster.acting_primes:
        mine = {t.q: t.e for t in cluster.triples if t.p == p}
        j = max(mine.values())
        caps = _caps(p, j, rest)
        qmax = min(q for q, e in mine.items() if e == j)
        seq = _significance(sorted(caps), qmax)
        key.append((p, qmax, tuple(mine.get(q, 0) for q in seq)))
    return tuple(key)


def compare_clusters(a: Cluster, b: Cluster) -> int:
    """-1, 0 or 1 as ``a`` sorts before, equal to, or after ``b``."""
    if (a.order != b.order or a.acting_divisor != b.acting_divisor
            or a.acting_group_order != b.acting_group_order):
        raise ContextMismatch("clusters differ in order, acting divisor or acting group order")
    ka, kb = cluster_key(a), cluster_key(b)
    return (ka > kb) - (ka < kb)
