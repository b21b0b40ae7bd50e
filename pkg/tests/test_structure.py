import json

import pytest
from hypothesis import given, settings, strategies as st

from cgk.arith import factorize, mul_order
from cgk.counting import count_by_cluster
from cgk.enumeration import iter_groups
from cgk.errors import ExponentTooLarge, InvalidDescriptor, InvalidParams
from cgk.structure import (
    CGroupDescriptor,
    MetacyclicParams,
    PcPresentation,
    action_choice_count,
    action_exponent,
    canonical_action_reps,
    descriptor_to_metacyclic,
    descriptor_to_presentation,
    make_descriptor,
    metacyclic_to_descriptor,
    normalize_actions,
    presentation_to_descriptor,
    validate_descriptor,
    validate_metacyclic,
)


@pytest.mark.parametrize("p, e, c, expected", [(2, 2, 0, 1), (2, 2, 2, 2), (2, 2, 1, 1),
                                               (3, 2, 1, 2), (3, 1, 2, 2), (5, 3, 2, 20)])
def test_action_choice_count(p, e, c, expected):
    assert action_choice_count(p, e, c) == expected
    assert len(canonical_action_reps(p, e, c)) == expected


@pytest.mark.parametrize("p, e, c, expected", [(2, 2, 0, [1]), (2, 2, 2, [1, 3]), (3, 2, 1, [1, 2])])
def test_canonical_action_reps(p, e, c, expected):
    assert canonical_action_reps(p, e, c) == expected


def _orbit_count(p, e, c):
    """Orbits of k -> k*s (mod p^e) on units, s ranging over units = 1 mod p^c."""
    units = [k for k in range(1, p**e) if k % p]
    group = [s for s in range(1, p**max(e, c)) if s % p and (s - 1) % p**c == 0]
    seen, orbits = set(), 0
    for k in units:
        if k not in seen:
            orbits += 1
            seen.update(k * s % p**e for s in group)
    return orbits


def test_action_choice_count_matches_orbit_enumeration():
    for p in (2, 3, 5):
        for e in range(1, 4):
            for c in range(1, 4):
                assert action_choice_count(p, e, c) == _orbit_count(p, e, c)


@pytest.mark.parametrize("q, mexp, p, e, k, expected", [(13, 1, 2, 2, 1, 8), (3, 1, 2, 1, 1, 2), (5, 1, 2, 2, 1, 2)])
def test_action_exponent(q, mexp, p, e, k, expected):
    t = action_exponent(q, mexp, p, e, k)
    assert t == expected
    assert mul_order(t, q, mexp) == p**e


def test_action_exponent_orders_and_errors():
    for q, mexp in [(7, 2), (13, 1), (31, 2), (3, 3)]:
        phi = q ** (mexp - 1) * (q - 1)
        for p in factorize(q - 1).primes:
            for e in range(1, factorize(q - 1).exponent(p) + 1):
                ts = {action_exponent(q, mexp, p, e, k) for k in range(1, p**e) if k % p}
                assert len(ts) == p ** (e - 1) * (p - 1)
                assert all(mul_order(t, q, mexp) == p**e for t in ts)
                assert phi % p**e == 0
    with pytest.raises(ExponentTooLarge):
        action_exponent(13, 1, 2, 3, 1)


@pytest.mark.parametrize("a, b, r, expected", [(4, 3, 2, True), (12, 1, 0, True), (2, 4, 3, False),
                                               (4, 5, 4, True), (2, 9, 8, True), (3, 7, 2, True),
                                               (3, 7, 1, False), (12, 1, 1, False), (6, 3, 2, False)])
def test_validate_metacyclic(a, b, r, expected):
    assert validate_metacyclic(a, b, r) is expected


def test_descriptor_to_metacyclic_examples():
    dic3 = make_descriptor(12, [(2, 3, 1)])
    assert descriptor_to_metacyclic(dic3) == MetacyclicParams(4, 3, 2)
    assert descriptor_to_metacyclic(make_descriptor(60, [])) == MetacyclicParams(60, 1, 0)
    assert descriptor_to_metacyclic(make_descriptor(20, [(2, 5, 2)])) == MetacyclicParams(4, 5, 2)


def test_metacyclic_to_descriptor_examples():
    assert metacyclic_to_descriptor(MetacyclicParams(4, 3, 2)) == make_descriptor(12, [(2, 3, 1)])
    assert metacyclic_to_descriptor(MetacyclicParams(30, 1, 0)).cluster.triples == ()
    assert metacyclic_to_descriptor(MetacyclicParams(4, 5, 3)) == metacyclic_to_descriptor(MetacyclicParams(4, 5, 2))
    with pytest.raises(InvalidParams):
        metacyclic_to_descriptor(MetacyclicParams(2, 4, 3))


def test_descriptor_to_presentation_examples():
    pres = descriptor_to_presentation(make_descriptor(12, [(2, 3, 1)]))
    assert pres.generators == ((2, 4), (3, 3)) and pres.relations == ((1, 2, 2),)
    assert descriptor_to_presentation(make_descriptor(105, [])).relations == ()
    pres = descriptor_to_presentation(make_descriptor(780, [(2, 5, 2), (2, 13, 2)], [1, 1]))
    assert pres.relations == ((1, 3, 2), (1, 4, 8))


def test_round_trips_up_to_3000():
    for n in range(1, 3001):
        per_cluster = {}
        for desc in iter_groups(n):
            validate_descriptor(desc, canonical=True)
            params = descriptor_to_metacyclic(desc)
            assert params.b % 2 == 1 and validate_metacyclic(params.a, params.b, params.r)
            assert metacyclic_to_descriptor(params) == desc
            pres = descriptor_to_presentation(desc)
            for (i, j, t), (p, q, e) in zip(pres.relations, desc.cluster.triples):
                assert mul_order(t, q, desc.order.exponent(q)) == p**e
            assert presentation_to_descriptor(pres) == desc
            per_cluster[desc.cluster] = per_cluster.get(desc.cluster, 0) + 1
        for cluster, k in per_cluster.items():
            assert count_by_cluster(n, cluster) == k


def _orbit_normal_form(triples, ks):
    """Least tuple in the orbit of ks under simultaneous multiplication by units, per acting prime."""
    out = []
    for p in sorted({t[0] for t in triples}):
        idx = [i for i, t in enumerate(triples) if t[0] == p]
        top = max(triples[i][2] for i in idx)
        out.append(min(tuple(ks[i] * s % p ** triples[i][2] for i in idx)
                       for s in range(1, p**top) if s % p))
    return out


@given(st.lists(st.integers(1, 200), min_size=3, max_size=3), st.integers(1, 200))
@settings(max_examples=300, deadline=None)
def test_normalize_actions_is_orbit_invariant(raw, s):
    triples = [(2, 3, 1), (2, 5, 2), (2, 17, 3)]
    raw = [k | 1 for k in raw]
    s = s | 1
    moved = [k * s for k in raw]
    assert normalize_actions(triples, raw) == normalize_actions(triples, moved)


@given(st.lists(st.integers(1, 400), min_size=3, max_size=3), st.lists(st.integers(1, 400), min_size=3, max_size=3))
@settings(max_examples=300, deadline=None)
def test_normalize_actions_separates_orbits(x, y):
    triples = [(3, 7, 1), (3, 19, 2), (3, 37, 2)]
    x = [k if k % 3 else k + 1 for k in x]
    y = [k if k % 3 else k + 1 for k in y]
    same = _orbit_normal_form(triples, x) == _orbit_normal_form(triples, y)
    assert same == (normalize_actions(triples, x)[1] == normalize_actions(triples, y)[1])


def test_descriptor_json_round_trip():
    desc = make_descriptor(780, [(2, 5, 2), (2, 13, 2)], [1, 3])
    data = json.loads(json.dumps(desc.to_json()))
    assert data == {"n": "2^2*3*5*13", "cluster": [[2, 5, 2], [2, 13, 2]], "k": [[2, 5, 1], [2, 13, 3]]}
    assert CGroupDescriptor.from_json(data) == desc
    with pytest.raises(InvalidDescriptor):
        CGroupDescriptor.from_json({"n": "12", "cluster": [[2, 3, 1]], "k": []})


def test_presentation_formats_round_trip():
    pres = descriptor_to_presentation(make_descriptor(780, [(2, 5, 2), (2, 13, 2)], [1, 3]))
    assert PcPresentation.parse(str(pres)) == pres
    assert PcPresentation.parse(json.dumps(pres.to_json())) == pres
    assert str(pres) == "<g1^4, g2^3, g3^5, g4^13 | g3^g1 = g3^2, g4^g1 = g4^5>"


def test_presentation_rejects_bad_relations():
    with pytest.raises(InvalidDescriptor):
        presentation_to_descriptor(PcPresentation(((2, 4), (3, 3)), ((2, 1, 2),)))
    with pytest.raises(InvalidDescriptor):
        presentation_to_descriptor(PcPresentation(((2, 2), (5, 5)), ((1, 2, 2),)))
    with pytest.raises(InvalidDescriptor):
        presentation_to_descriptor(PcPresentation(((2, 2), (3, 3), (7, 7)), ((1, 2, 2), (2, 3, 2))))


def test_validate_descriptor_rejects_non_canonical():
    desc = make_descriptor(780, [(2, 5, 2), (2, 13, 2)], [3, 1])
    validate_descriptor(desc)
    with pytest.raises(InvalidDescriptor):
        validate_descriptor(desc, canonical=True)
    with pytest.raises(InvalidDescriptor):
        validate_descriptor(make_descriptor(12, [(2, 3, 1)], [2]))
