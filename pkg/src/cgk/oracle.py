"""Brute-force reference: every valid ``(a, b, r)`` reduced up to isomorphism.

Deliberately naive and independent of the cluster machinery; used by the
test-suite and the ``verify`` command.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BoundExceeded
from .structure import MetacyclicParams

DEFAULT_BOUND = 10**5


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def brute_force_reps(n: int, bound: int = DEFAULT_BOUND) -> list[MetacyclicParams]:
    """One ``(a, b, r)`` per isomorphism type, the least ``r`` of each class, sorted by ``(b, r)``."""
    if n < 1 or n > bound:
        raise BoundExceeded(f"oracle bound is {bound}, got n={n}")
    reps = []
    for b in _divisors(n):
        a = n // b
        if b % 2 == 0 or math.gcd(a, b) != 1:
            continue
        if b == 1:
            reps.append(MetacyclicParams(a, 1, 0))
            continue
        valid = [r for r in range(b)
                 if pow(r, a, b) == 1 and math.gcd(a * (r - 1), b) == 1]
        units = [alpha for alpha in range(1, a + 1) if math.gcd(alpha, a) == 1]
        seen: set[int] = set()
        for r in valid:
            if r in seen:
                continue
            seen.update(pow(r, alpha, b) for alpha in units)
            reps.append(MetacyclicParams(a, b, r))
    return sorted(reps, key=lambda x: (x.b, x.r))


@dataclass
class CrossCheckReport:
    n: int
    count: int
    status: str
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"n": self.n, "count": self.count, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def cross_check(n: int, bound: int = DEFAULT_BOUND) -> CrossCheckReport:
    """Compare counting, identification and construction-by-ID against brute force."""
    from .counting import count_all
    from .enumeration import GroupId, group_by_id
    from .identify import id_of_descriptor
    from .structure import metacyclic_to_descriptor

    reps = brute_force_reps(n, bound)
    total = count_all(n)
    if len(reps) != total:
        return CrossCheckReport(n, total, "fail", f"oracle finds {len(reps)} groups, formula gives {total}")
    seen: dict[GroupId, MetacyclicParams] = {}
    for params in reps:
        gid = id_of_descriptor(metacyclic_to_descriptor(params))
        if gid.n != n or not 1 <= gid.i <= total:
            return CrossCheckReport(n, total, "fail", f"{params} identified as out-of-range {gid}")
        if gid in seen:
            return CrossCheckReport(n, total, "fail", f"{params} and {seen[gid]} share ID {gid}")
        seen[gid] = params
    for i in range(1, total + 1):
        got = id_of_descriptor(group_by_id(n, i))
        if got != GroupId(n, i):
            return CrossCheckReport(n, total, "fail", f"group_by_id({n}, {i}) identifies as {got}")
    return CrossCheckReport(n, total, "pass")
