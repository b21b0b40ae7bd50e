"""Construction of the ``i``-th C-group of order ``n`` and full enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .arith import FactoredInt, as_factored
from .clusters import Cluster, clusters_for
from .counting import (
    acting_divisors,
    acting_group_orders,
    count_all,
    count_by_cluster,
    count_by_divisor,
    count_by_divisor_and_order,
)
from .errors import IdOutOfRange
from .structure import CGroupDescriptor, action_choice_count, canonical_action_reps


@dataclass(frozen=True, order=True)
class GroupId:
    n: int
    i: int

    def __str__(self) -> str:
        return f"({self.n}, {self.i})"


def action_radices(cluster: Cluster) -> list[int]:
    """Number of action choices per triple, in triple order."""
    radices = []
    running: dict[int, int] = {}
    for p, _, e in cluster.triples:
        c = running.get(p, 0)
        radices.append(action_choice_count(p, e, c))
        running[p] = max(c, e)
    return radices


def _digits_to_ks(cluster: Cluster, digits: list[int]) -> tuple[int, ...]:
    ks = []
    running: dict[int, int] = {}
    for (p, _, e), digit in zip(cluster.triples, digits):
        c = running.get(p, 0)
        ks.append(canonical_action_reps(p, e, c)[digit])
        running[p] = max(c, e)
    return tuple(ks)


def decode_actions(cluster: Cluster, s: int) -> tuple[int, ...]:
    """Canonical action indices for the ``s``-th (0-based) group with this cluster.

    Mixed radix over the triples with the last triple varying fastest.
    """
    radices = action_radices(cluster)
    digits = [0] * len(radices)
    for pos in range(len(radices) - 1, -1, -1):
        s, digits[pos] = divmod(s, radices[pos])
    return _digits_to_ks(cluster, digits)


def _contexts(n: FactoredInt) -> Iterator[tuple[int, int]]:
    """All (d, m) pairs in ID order."""
    for d in acting_divisors(n):
        if d == 1:
            yield 1, 1
        else:
            for m in acting_group_orders(n, d):
                yield d, m


def group_by_id(n: int | str | FactoredInt, i: int) -> CGroupDescriptor:
    """Descriptor of the C-group with ID ``(n, i)`` (1-based)."""
    n = as_factored(n)
    total = count_all(n)
    if not 1 <= i <= total:
        raise IdOutOfRange(f"there are {total} C-groups of order {n}; got index {i}")
    rest = i - 1
    for d in acting_divisors(n):
        cd = count_by_divisor(n, d)
        if rest >= cd:
            rest -= cd
            continue
        orders = [1] if d == 1 else acting_group_orders(n, d)
        for m in orders:
            cdm = count_by_divisor_and_order(n, d, m)
            if rest >= cdm:
                rest -= cdm
                continue
            for cluster in clusters_for(n, d, m):
                cp = count_by_cluster(n, cluster)
                if rest >= cp:
                    rest -= cp
                    continue
                return CGroupDescriptor(n, cluster, decode_actions(cluster, rest))
    raise AssertionError(f"prefix sums for {n} do not reach {i}")


def iter_groups(n: int | str | FactoredInt) -> Iterator[CGroupDescriptor]:
    """Stream all C-groups of order ``n`` in ID order."""
    n = as_factored(n)
    for d, m in _contexts(n):
        for cluster in clusters_for(n, d, m):
            radices = action_radices(cluster)
            digits = [0] * len(radices)
            while True:
                yield CGroupDescriptor(n, cluster, _digits_to_ks(cluster, digits))
                pos = len(digits) - 1
                while pos >= 0:
                    digits[pos] += 1
                    if digits[pos] < radices[pos]:
                        break
                    digits[pos] = 0
                    pos -= 1
                if pos < 0:
                    break


def all_groups(n: int | str | FactoredInt) -> list[CGroupDescriptor]:
    return list(iter_groups(n))
