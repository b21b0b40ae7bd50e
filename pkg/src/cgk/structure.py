"""Structural data for a single C-group and conversions between its forms.

A :class:`CGroupDescriptor` fixes the order, the cluster and, for every
triple ``(p, q, e)``, an action index ``k``: the Sylow ``p`` generator acts on
the Sylow ``q`` generator by ``y -> y**t_k`` with
``t_k = r**(k * phi(q**b) / p**e) mod q**b`` and ``r`` the least primitive
root modulo ``q**b``.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Iterable

from .arith import (
    FactoredInt,
    as_factored,
    crt,
    discrete_log,
    factorize,
    mul_order,
    smallest_primitive_root,
    totient_prime_power,
    valuation,
)
from .clusters import ActionTriple, Cluster, is_permissible
from .errors import ExponentTooLarge, InvalidDescriptor, InvalidParams


# ---------------------------------------------------------------------------
# action choices
# ---------------------------------------------------------------------------

def action_choice_count(p: int, e: int, c: int) -> int:
    """Number of inequivalent ``p``-actions with exponent ``e`` given the running maximum ``c``."""
    if c == 0:
        return 1
    if e <= c:
        return p ** (e - 1) * (p - 1)
    return p ** (c - 1) * (p - 1)


def canonical_action_reps(p: int, e: int, c: int) -> list[int]:
    if c == 0:
        return [1]
    w = min(e, c)
    return [k for k in range(1, p**w) if k % p]


def _unit_rank(k: int, p: int) -> int:
    """0-based position of the unit ``k`` among the units of ``[1, k]``."""
    return (k - 1) - (k - 1) // p


def action_exponent(q: int, mexp: int, p: int, e: int, k: int) -> int:
    """The exponent ``t_k`` of the ``k``-th automorphism of order ``p**e`` of ``C_{q**mexp}``."""
    if (q - 1) % p**e:
        raise ExponentTooLarge(f"{p}^{e} does not divide {q} - 1")
    if k % p == 0:
        raise InvalidDescriptor(f"action index {k} is divisible by {p}")
    r = smallest_primitive_root(q, mexp)
    phi = totient_prime_power(q, mexp)
    return pow(r, (k % p**e) * (phi // p**e), q**mexp)


def normalize_actions(triples: Iterable[ActionTriple], ks: Iterable[int]) -> tuple[list[int], list[int]]:
    """Canonical action indices and mixed-radix digits for raw indices ``ks``.

    Triples must be in canonical ``(p, q)`` order.  Per acting prime a unit
    ``v`` (the accumulated relabelling of the Sylow ``p`` generator) is kept
    modulo ``p**E``, ``E`` the largest exponent seen so far.
    """
    digits, canon = [], []
    state: dict[int, tuple[int, int]] = {}
    for (p, q, e), k in zip(triples, ks):
        pe = p**e
        k %= pe
        if k % p == 0:
            raise InvalidDescriptor(f"action index for ({p},{q},{e}) is not a unit")
        if p not in state:
            state[p] = (pow(k, -1, pe), e)
            digits.append(0)
            canon.append(1)
            continue
        v, big_e = state[p]
        w = min(e, big_e)
        kappa = k * v % p**w
        digits.append(_unit_rank(kappa, p))
        canon.append(kappa)
        if e > big_e:
            state[p] = (kappa * pow(k, -1, pe) % pe, e)
    return digits, canon


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CGroupDescriptor:
    order: FactoredInt
    cluster: Cluster
    ks: tuple[int, ...]          # aligned with cluster.triples

    @property
    def action_index(self) -> dict[tuple[int, int], int]:
        return {(t.p, t.q): k for t, k in zip(self.cluster.triples, self.ks)}

    @property
    def acting_divisor(self) -> int:
        return self.cluster.acting_divisor

    @property
    def acting_group_order(self) -> int:
        return self.cluster.acting_group_order

    def to_json(self) -> dict:
        return {
            "n": str(self.order),
            "cluster": [list(t) for t in self.cluster.triples],
            "k": [[t.p, t.q, k] for t, k in zip(self.cluster.triples, self.ks)],
        }

    @classmethod
    def from_json(cls, data: dict) -> CGroupDescriptor:
        n = as_factored(str(data["n"]))
        cluster = Cluster.make(data.get("cluster", []), n)
        index = {(int(p), int(q)): int(k) for p, q, k in data.get("k", [])}
        try:
            ks = tuple(index[(t.p, t.q)] for t in cluster.triples)
        except KeyError as exc:
            raise InvalidDescriptor(f"missing action index for {exc.args[0]}") from None
        if len(index) != len(ks):
            raise InvalidDescriptor("action indices given for pairs outside the cluster")
        return cls(n, cluster, ks)


def make_descriptor(order, triples, ks=None) -> CGroupDescriptor:
    """Convenience constructor; ``ks`` follows the sorted triple order and defaults to all 1."""
    cluster = Cluster.make(triples, order)
    if ks is None:
        ks = [1] * len(cluster.triples)
    elif isinstance(ks, dict):
        ks = [ks[(t.p, t.q)] for t in cluster.triples]
    return CGroupDescriptor(cluster.order, cluster, tuple(ks))


def validate_descriptor(desc: CGroupDescriptor, canonical: bool = False) -> None:
    if desc.cluster.order != desc.order or not is_permissible(desc.cluster):
        raise InvalidDescriptor(f"cluster {desc.cluster} is not permissible for {desc.order}")
    if len(desc.ks) != len(desc.cluster.triples):
        raise InvalidDescriptor("one action index per triple is required")
    for (p, q, e), k in zip(desc.cluster.triples, desc.ks):
        if k < 1 or k % p == 0:
            raise InvalidDescriptor(f"action index {k} for ({p},{q},{e}) must be a positive unit mod {p}")
        if canonical and k >= p**e:
            raise InvalidDescriptor(f"action index {k} for ({p},{q},{e}) is not reduced")
    if canonical:
        _, canon = normalize_actions(desc.cluster.triples, desc.ks)
        if list(desc.ks) != canon:
            raise InvalidDescriptor("action indices are not canonical orbit representatives")


def canonicalize(desc: CGroupDescriptor) -> CGroupDescriptor:
    validate_descriptor(desc)
    _, canon = normalize_actions(desc.cluster.triples, desc.ks)
    return CGroupDescriptor(desc.order, desc.cluster, tuple(canon))


# ---------------------------------------------------------------------------
# metacyclic parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetacyclicParams:
    """Parameters of ``<x, y | x^a, y^b, y^x = y^r>``."""

    a: int
    b: int
    r: int

    def __str__(self) -> str:
        return f"a={self.a} b={self.b} r={self.r}"

    @classmethod
    def parse(cls, text: str) -> MetacyclicParams:
        """Accept ``"4,3,2"`` or ``"a=4 b=3 r=2"``."""
        named = dict(re.findall(r"([abr])\s*=\s*(\d+)", text))
        if len(named) == 3:
            return cls(int(named["a"]), int(named["b"]), int(named["r"]))
        nums = re.findall(r"\d+", text)
        if len(nums) != 3:
            raise InvalidParams(f"cannot parse metacyclic parameters from {text!r}")
        return cls(*map(int, nums))


def validate_metacyclic(a: int, b: int, r: int) -> bool:
    if a < 1 or b < 1:
        return False
    if b == 1:
        return r == 0
    if not 0 <= r < b:
        return False
    return (pow(r, a, b) == 1 and math.gcd(a * (r - 1), b) == 1
            and math.gcd(a, b) == 1)


def descriptor_to_metacyclic(desc: CGroupDescriptor) -> MetacyclicParams:
    n = desc.order
    if not desc.cluster.triples:
        return MetacyclicParams(n.value, 1, 0)
    acted = desc.cluster.acted_on_primes
    b = math.prod(n.part(q) for q in acted)
    residues = []
    for q in acted:
        beta = n.exponent(q)
        mod = q**beta
        t = 1
        for (p, qq, e), k in zip(desc.cluster.triples, desc.ks):
            if qq == q:
                t = t * action_exponent(q, beta, p, e, k) % mod
        residues.append((t, mod))
    return MetacyclicParams(n.value // b, b, crt(residues))


def _idempotent(a_fact: FactoredInt, p: int) -> int:
    """``x`` with ``x = 1 mod a_p`` and ``x = 0 mod a / a_p``."""
    ap = a_fact.part(p)
    return crt([(1, ap), (0, a_fact.value // ap)])


def _index_of(t: int, q: int, beta: int, p: int, e: int) -> int:
    phi = totient_prime_power(q, beta)
    log = discrete_log(smallest_primitive_root(q, beta), t, q, beta)
    step = phi // p**e
    if log % step:
        raise InvalidParams(f"{t} is not an automorphism of order {p}^{e} mod {q}^{beta}")
    return log // step


def metacyclic_to_descriptor(params: MetacyclicParams, order: FactoredInt | None = None) -> CGroupDescriptor:
    """Descriptor (with canonical action indices) of ``G_{a,b,r}``.

    ``order`` may supply the factorization of ``a * b`` when it is too large
    to factor.
    """
    a, b, r = params.a, params.b, params.r
    if not validate_metacyclic(a, b, r):
        raise InvalidParams(f"invalid metacyclic parameters {params}")
    n = as_factored(order) if order is not None else factorize(a * b)
    if n.value != a * b:
        raise InvalidParams(f"order {n} does not match a*b = {a * b}")
    a_fact = FactoredInt(a, tuple((p, k) for p, k in n.factors if a % p == 0))
    triples, ks = [], []
    for q, beta in n.factors:
        if b % q:
            continue
        mod = q**beta
        for p, _ in a_fact.factors:
            t = pow(r, _idempotent(a_fact, p), mod)
            if t == 1:
                continue
            o = mul_order(t, q, beta)
            e = valuation(p, o)
            if p**e != o:
                raise InvalidParams(f"action of the Sylow {p} on {q} has order {o}")
            triples.append(ActionTriple(p, q, e))
            ks.append(_index_of(t, q, beta, p, e))
    cluster = Cluster.make(triples, n)
    order_ks = dict(zip(((t.p, t.q) for t in triples), ks))
    raw = [order_ks[(t.p, t.q)] for t in cluster.triples]
    _, canon = normalize_actions(cluster.triples, raw)
    desc = CGroupDescriptor(n, cluster, tuple(canon))
    validate_descriptor(desc, canonical=True)
    return desc


# ---------------------------------------------------------------------------
# polycyclic presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PcPresentation:
    """Generators ``g_1..g_k`` (1-based) with prime-power relative orders.

    A relation ``(i, j, t)`` means ``g_j ** g_i == g_j ** t``; all other pairs commute.
    """

    generators: tuple[tuple[int, int], ...]
    relations: tuple[tuple[int, int, int], ...]

    @property
    def order(self) -> int:
        return math.prod(o for _, o in self.generators)

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators],
                "relations": [list(rel) for rel in self.relations]}

    @classmethod
    def from_json(cls, data: dict) -> PcPresentation:
        return cls(tuple((int(p), int(o)) for p, o in data["generators"]),
                   tuple((int(i), int(j), int(t)) for i, j, t in data.get("relations", [])))

    def __str__(self) -> str:
        gens = ", ".join(f"g{i}^{o}" for i, (_, o) in enumerate(self.generators, 1))
        rels = ", ".join(f"g{j}^g{i} = g{j}^{t}" for i, j, t in self.relations)
        return f"<{gens} | {rels}>" if rels else f"<{gens}>"

    @classmethod
    def parse(cls, text: str) -> PcPresentation:
        """Parse either the JSON form or the text form produced by ``str``."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(json.loads(text))
        m = re.fullmatch(r"<(.*?)(?:\|(.*))?>", text, re.S)
        if m is None:
            raise InvalidDescriptor(f"cannot parse presentation {text!r}")
        gens = []
        for idx, (i, o) in enumerate(re.findall(r"g(\d+)\s*\^\s*(\d+)", m.group(1)), 1):
            if int(i) != idx:
                raise InvalidDescriptor("generators must be listed as g1, g2, ...")
            o = int(o)
            fact = factorize(o)
            if len(fact.factors) != 1:
                raise InvalidDescriptor(f"relative order {o} is not a prime power")
            gens.append((fact.factors[0][0], o))
        rels = [(int(i), int(j), int(t)) for j, i, j2, t in
                re.findall(r"g(\d+)\s*\^\s*g(\d+)\s*=\s*g(\d+)\s*\^\s*(\d+)", m.group(2) or "")
                if j == j2]
        return cls(tuple(gens), tuple(rels))


def descriptor_to_presentation(desc: CGroupDescriptor) -> PcPresentation:
    n = desc.order
    position = {p: i for i, p in enumerate(n.primes, 1)}
    gens = tuple((p, p**a) for p, a in n.factors)
    rels = tuple(
        (position[p], position[q], action_exponent(q, n.exponent(q), p, e, k))
        for (p, q, e), k in zip(desc.cluster.triples, desc.ks)
    )
    return PcPresentation(gens, rels)


def presentation_to_descriptor(pres: PcPresentation) -> CGroupDescriptor:
    """Read the cluster and canonical action indices off a presentation of our shape."""
    primes = [p for p, _ in pres.generators]
    if primes != sorted(set(primes)):
        raise InvalidDescriptor("need one generator per prime, in increasing order")
    exps = []
    for p, o in pres.generators:
        e = valuation(p, o)
        if p**e != o or e < 1:
            raise InvalidDescriptor(f"relative order {o} is not a power of {p}")
        exps.append(e)
    n = FactoredInt.from_factors(zip(primes, exps))
    found: dict[tuple[int, int], tuple[int, int]] = {}
    for i, j, t in pres.relations:
        if not 1 <= i < j <= len(primes):
            raise InvalidDescriptor(f"relation ({i},{j},{t}) must act from a smaller to a larger generator")
        p, q, beta = primes[i - 1], primes[j - 1], exps[j - 1]
        mod = q**beta
        t %= mod
        if t % q == 0:
            raise InvalidDescriptor(f"exponent {t} is not a unit mod {q}^{beta}")
        if t == 1:
            continue
        o = mul_order(t, q, beta)
        e = valuation(p, o)
        if p**e != o or e > exps[i - 1]:
            raise InvalidDescriptor(f"g{j}^g{i} = g{j}^{t} is not an automorphism of order dividing {p}^{exps[i - 1]}")
        if (p, q) in found:
            raise InvalidDescriptor(f"duplicate relation for g{j}^g{i}")
        found[(p, q)] = (e, _index_of(t, q, beta, p, e))
    cluster = Cluster.make([(p, q, e) for (p, q), (e, _) in found.items()], n)
    raw = [found[(t.p, t.q)][1] for t in cluster.triples]
    if not is_permissible(cluster):
        raise InvalidDescriptor(f"presentation yields non-permissible cluster {cluster}")
    _, canon = normalize_actions(cluster.triples, raw)
    return CGroupDescriptor(n, cluster, tuple(canon))
