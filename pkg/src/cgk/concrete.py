"""Permutation-group backend.

Permutations are tuples of images on ``0..degree-1`` and act on the right:
``mul(g, h)`` applies ``g`` first.  The JSON/text formats use 1-based points.
"""
from __future__ import annotations

import json
import math
import os
import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .arith import factorize, pohlig_hellman
from .errors import CGroupError, DegreeTooLarge, NotCGroup, SamplingBudgetExhausted
from .structure import (
    CGroupDescriptor,
    MetacyclicParams,
    descriptor_to_presentation,
    metacyclic_to_descriptor,
    validate_metacyclic,
)

DEFAULT_DEGREE_BOUND = 5000

Perm = tuple[int, ...]


def degree_bound() -> int:
    return int(os.environ.get("CGK_DEGREE_BOUND", DEFAULT_DEGREE_BOUND))


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(g: Perm, h: Perm) -> Perm:
    return tuple([h[x] for x in g])


def inv(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def power(g: Perm, k: int) -> Perm:
    result = identity(len(g))
    if k < 0:
        g, k = inv(g), -k
    while k:
        if k & 1:
            result = mul(result, g)
        g = mul(g, g)
        k >>= 1
    return result


def perm_order(g: Perm) -> int:
    seen = [False] * len(g)
    order = 1
    for i in range(len(g)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            order = math.lcm(order, length)
    return order


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    generators: tuple[Perm, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise CGroupError("degree must be positive")
        for g in self.generators:
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise CGroupError(f"not a permutation of degree {self.degree}: {g}")

    @classmethod
    def make(cls, degree: int, generators: Sequence[Sequence[int]]) -> PermutationGroup:
        gens = tuple(tuple(g) for g in generators) or (identity(degree),)
        return cls(degree, gens)

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [[x + 1 for x in g] for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> PermutationGroup:
        degree = int(data["degree"])
        return cls.make(degree, [[int(x) - 1 for x in g] for g in data["generators"]])

    @classmethod
    def from_cycles(cls, texts: Sequence[str], degree: int | None = None) -> PermutationGroup:
        """Generators in cycle notation such as ``"(1,2,3)(4,5)"``."""
        cycles_per_gen = []
        top = 0
        for text in texts:
            if re.fullmatch(r"(\s*\((\s*\d+\s*(,\s*\d+\s*)*)?\))*\s*", text) is None:
                raise CGroupError(f"cannot parse cycles {text!r}")
            cycles = [[int(x) for x in c.split(",")] for c in re.findall(r"\(([^()]*)\)", text) if c.strip()]
            cycles_per_gen.append(cycles)
            top = max([top] + [max(c) for c in cycles])
        degree = max(degree or 0, top, 1)
        gens = []
        for cycles in cycles_per_gen:
            img = list(range(degree))
            for c in cycles:
                for x, y in zip(c, c[1:] + c[:1]):
                    img[x - 1] = y - 1
            gens.append(img)
        return cls.make(degree, gens)

    @classmethod
    def parse(cls, text: str) -> PermutationGroup:
        """JSON object, or one generator in cycle notation per line."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(json.loads(text))
        return cls.from_cycles([line for line in text.splitlines() if line.strip()])


def _check_degree(G: PermutationGroup, bound: int | None) -> None:
    bound = degree_bound() if bound is None else bound
    if G.degree > bound:
        raise DegreeTooLarge(f"degree {G.degree} exceeds the bound {bound}")


# ---------------------------------------------------------------------------
# stabilizer chains
# ---------------------------------------------------------------------------

class StabChain:
    """Deterministic Schreier-Sims stabilizer chain.

    Each node stores a base point, the generators of its group and a
    transversal mapping orbit points to coset representatives.  Adding a
    generator processes only the new (point, generator) pairs and sifts the
    resulting Schreier generators into the next node.
    """

    def __init__(self, degree: int, gens: Sequence[Perm] = ()):
        self.degree = degree
        self.base: int | None = None
        self.gens: list[Perm] = []
        self.trans: dict[int, Perm] = {}
        self.stab: StabChain | None = None
        for g in gens:
            self.insert(g)

    def sift(self, g: Perm) -> Perm:
        node = self
        while node.base is not None:
            u = node.trans.get(g[node.base])
            if u is None:
                return g
            g = mul(g, inv(u))
            node = node.stab
        return g

    def contains(self, g: Perm) -> bool:
        return self.sift(g) == identity(self.degree)

    def insert(self, g: Perm) -> bool:
        """Add ``g`` to the group; returns False if it was already a member."""
        h = self.sift(g)
        if h == identity(self.degree):
            return False
        self._add_gen(h)
        return True

    def _add_gen(self, h: Perm) -> None:
        ident = identity(self.degree)
        if self.base is None:
            self.base = next(i for i, x in enumerate(h) if x != i)
            self.trans = {self.base: ident}
            self.stab = StabChain(self.degree)
        self.gens.append(h)
        pairs = [(beta, h) for beta in list(self.trans)]
        while pairs:
            beta, s = pairs.pop()
            gamma = s[beta]
            u = mul(self.trans[beta], s)
            if gamma not in self.trans:
                self.trans[gamma] = u
                pairs.extend((gamma, g) for g in self.gens)
                continue
            schreier = mul(u, inv(self.trans[gamma]))
            if schreier != ident:
                self.stab.insert(schreier)

    def order(self) -> int:
        node, total = self, 1
        while node is not None and node.base is not None:
            total *= len(node.trans)
            node = node.stab
        return total

    def random_element(self, rng: random.Random) -> Perm:
        g = identity(self.degree)
        node = self
        reps = []
        while node is not None and node.base is not None:
            reps.append(rng.choice(list(node.trans.values())))
            node = node.stab
        for u in reversed(reps):
            g = mul(g, u)
        return g

    def elements(self) -> Iterator[Perm]:
        levels = []
        node = self
        while node is not None and node.base is not None:
            levels.append(list(node.trans.values()))
            node = node.stab

        def rec(depth: int, acc: Perm) -> Iterator[Perm]:
            if depth < 0:
                yield acc
                return
            for u in levels[depth]:
                yield from rec(depth - 1, mul(acc, u))

        yield from rec(len(levels) - 1, identity(self.degree))


def _chain(G: PermutationGroup) -> StabChain:
    return StabChain(G.degree, G.generators)


def group_order(G: PermutationGroup, bound: int | None = None) -> int:
    _check_degree(G, bound)
    return _chain(G).order()


def _derived_chain(G: PermutationGroup) -> tuple[StabChain, list[Perm]]:
    comms = []
    for i, g in enumerate(G.generators):
        for h in G.generators[i + 1:]:
            comms.append(mul(mul(inv(g), inv(h)), mul(g, h)))
    N = StabChain(G.degree)
    gens: list[Perm] = []
    queue = comms
    while queue:
        x = queue.pop()
        if N.insert(x):
            gens.append(x)
            queue.extend(mul(mul(inv(g), x), g) for g in G.generators)
    return N, gens


def derived_subgroup(G: PermutationGroup, bound: int | None = None) -> PermutationGroup:
    """Commutator subgroup, generated by the normal closure of generator commutators."""
    _check_degree(G, bound)
    _, gens = _derived_chain(G)
    return PermutationGroup.make(G.degree, gens)


# ---------------------------------------------------------------------------
# regular representation and parameter extraction
# ---------------------------------------------------------------------------

def regular_representation(desc: CGroupDescriptor, bound: int | None = None) -> PermutationGroup:
    """Right regular representation built from the polycyclic presentation.

    Elements are exponent vectors ``g_1^{e_1} ... g_k^{e_k}`` indexed in mixed
    radix (last generator fastest).
    """
    n = desc.order.value
    bound = degree_bound() if bound is None else bound
    if n > bound:
        raise DegreeTooLarge(f"order {n} exceeds the degree bound {bound}")
    pres = descriptor_to_presentation(desc)
    orders = [o for _, o in pres.generators]
    k = len(orders)
    conj = [[1] * k for _ in range(k)]
    for i, j, t in pres.relations:
        conj[i - 1][j - 1] = t
    if k == 0:
        return PermutationGroup.make(1, [identity(1)])

    strides = [1] * k
    for pos in range(k - 2, -1, -1):
        strides[pos] = strides[pos + 1] * orders[pos + 1]

    def decode(idx: int) -> list[int]:
        return [(idx // strides[pos]) % orders[pos] for pos in range(k)]

    vectors = [decode(idx) for idx in range(n)]
    gens = []
    for i in range(k):
        img = []
        for vec in vectors:
            new = list(vec)
            new[i] = (vec[i] + 1) % orders[i]
            for j in range(i + 1, k):
                new[j] = vec[j] * conj[i][j] % orders[j]
            img.append(sum(x * s for x, s in zip(new, strides)))
        gens.append(tuple(img))
    return PermutationGroup.make(n, gens)


def _search(chain: StabChain, accept, rng: random.Random, budget: int, exhaustive: bool) -> Perm | None:
    """Random search with an exhaustive fallback over the (desk-scale) group."""
    for _ in range(budget):
        g = chain.random_element(rng)
        if accept(g):
            return g
    if not exhaustive:
        raise SamplingBudgetExhausted(f"no suitable element after {budget} random draws")
    return next((g for g in chain.elements() if accept(g)), None)


def extract_metacyclic(G: PermutationGroup, seed: int = 0, bound: int | None = None,
                       exhaustive: bool = True) -> MetacyclicParams:
    """Parameters ``(a, b, r)`` with ``G`` isomorphic to ``G_{a,b,r}``.

    Raises :class:`NotCGroup` when ``G`` has a non-cyclic Sylow subgroup.
    """
    _check_degree(G, bound)
    rng = random.Random(seed)
    whole = _chain(G)
    n = whole.order()
    D, _ = _derived_chain(G)
    b = D.order()
    a = n // b
    if math.gcd(a, b) != 1:
        raise NotCGroup(f"derived subgroup order {b} is not coprime to its index {a}")

    y = _search(D, lambda h: perm_order(h) == b, rng, 64 * max(1, b.bit_length()), exhaustive)
    if y is None:
        raise NotCGroup(f"derived subgroup of order {b} is not cyclic")

    a_primes = factorize(a).primes

    def generates_quotient(g: Perm) -> bool:
        return all(not D.contains(power(g, a // p)) for p in a_primes)

    g = _search(whole, generates_quotient, rng, 64 * max(1, a.bit_length()), exhaustive)
    if g is None:
        raise NotCGroup(f"abelianization of order {a} is not cyclic")
    g = power(g, perm_order(g) // a)

    if b == 1:
        return MetacyclicParams(a, 1, 0)
    target = mul(mul(inv(g), y), g)
    b_fact = factorize(b)
    r = pohlig_hellman(y, target, b, b_fact.factors, mul, identity(G.degree))
    if not validate_metacyclic(a, b, r):
        raise NotCGroup(f"extracted parameters ({a}, {b}, {r}) are invalid")
    return MetacyclicParams(a, b, r)


def id_of_permutation_group(G: PermutationGroup, seed: int = 0, bound: int | None = None):
    """ID of a concrete permutation group (via its metacyclic parameters)."""
    from .identify import id_of_descriptor

    return id_of_descriptor(metacyclic_to_descriptor(extract_metacyclic(G, seed, bound)))

