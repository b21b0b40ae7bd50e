"""Identification of C-groups and the isomorphism test for metacyclic forms."""
from __future__ import annotations

import math

from .clusters import cluster_key, clusters_for
from .counting import (
    acting_divisors,
    acting_group_orders,
    count_by_cluster,
    count_by_divisor,
    count_by_divisor_and_order,
)
from .enumeration import GroupId, action_radices
from .errors import InvalidParams
from .structure import (
    CGroupDescriptor,
    MetacyclicParams,
    metacyclic_to_descriptor,
    normalize_actions,
    validate_descriptor,
    validate_metacyclic,
)


def id_of_descriptor(desc: CGroupDescriptor) -> GroupId:
    """ID of the group described by ``desc``; action indices may be any units."""
    validate_descriptor(desc)
    n = desc.order
    d = desc.acting_divisor
    m = desc.acting_group_order
    offset = 0
    for d2 in acting_divisors(n):
        if d2 == d:
            break
        offset += count_by_divisor(n, d2)
    if d > 1:
        for m2 in acting_group_orders(n, d):
            if m2 == m:
                break
            offset += count_by_divisor_and_order(n, d, m2)
    target = cluster_key(desc.cluster)
    for cluster in clusters_for(n, d, m):
        if cluster.triples == desc.cluster.triples:
            break
        if cluster_key(cluster) > target:
            raise AssertionError(f"cluster {desc.cluster} missing from the enumeration")
        offset += count_by_cluster(n, cluster)
    digits, _ = normalize_actions(desc.cluster.triples, desc.ks)
    s = 0
    for digit, radix in zip(digits, action_radices(desc.cluster)):
        s = s * radix + digit
    return GroupId(n.value, offset + s + 1)


def id_of_metacyclic(params: MetacyclicParams, order=None) -> GroupId:
    return id_of_descriptor(metacyclic_to_descriptor(params, order))


def is_isomorphic(x: MetacyclicParams, y: MetacyclicParams) -> bool:
    """Whether ``G_{a,b,r}`` and ``G_{a',b',r'}`` are isomorphic.

    Direct test: ``a == a'``, ``b == b'`` and ``r' = r**alpha (mod b)`` for
    some ``alpha`` coprime to ``a``.  Only ``alpha`` modulo the order of ``r``
    matters, and every unit modulo that order lifts to a unit modulo ``a``.
    """
    for params in (x, y):
        if not validate_metacyclic(params.a, params.b, params.r):
            raise InvalidParams(f"invalid metacyclic parameters {params}")
    if (x.a, x.b) != (y.a, y.b):
        return False
    if x.b == 1:
        return True
    order = 1
    cur = x.r % x.b
    while cur != 1:
        cur = cur * x.r % x.b
        order += 1
    return any(pow(x.r, alpha, x.b) == y.r
               for alpha in range(1, order + 1) if math.gcd(alpha, order) == 1)
