from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from fixlab import catalog
from fixlab.complements import (conjugacy_class_key, conjugacy_via_local_abelian,
                                conjugacy_via_local_supersoluble, conjugacy_witness,
                                containment_witness, enumerate_complements,
                                enumerate_supplements, find_complement, is_complement,
                                is_supplement, local_class_key, locally_conjugate,
                                splits_gaschutz, subgroups_of, supplement_contains_conjugate)
from fixlab.corpus import Instance
from fixlab.errors import HypothesesUnmet, NotNormal, PreconditionError
from fixlab.perm import PermutationGroup, subgroup_conjugate
from fixlab.structure import center, normal_closure

from oracles import brute_complements, conj_set, is_closed
from support import corpus, inversion, trivial


def q8_over_center():
    Q = catalog.group("Q8")
    return Q, center(Q)


# -- supplements and complements


def test_supplement_examples():
    inst = inversion(3)
    G, N, J = inst.G, inst.N_sub, inst.J_sub
    assert is_supplement(G, N, G) and not is_complement(G, N, G)
    triv = PermutationGroup.trivial(G.degree)
    assert is_complement(G, triv, G)
    assert is_complement(G, N, J)
    with pytest.raises(NotNormal):
        is_supplement(G, J, G)  # J is not normal in S3


@pytest.mark.parametrize("make,count", [
    (lambda: (inversion(3).G, inversion(3).N_sub), 3),
    (lambda: (trivial("C2", "C2").G, trivial("C2", "C2").N_sub), 2),
    (q8_over_center, 0),
])
def test_complement_counts(make, count):
    G, N = make()
    comps = enumerate_complements(G, N)
    assert len(comps) == count == len(brute_complements(G, N))
    assert {C.elements for C in comps} == set(brute_complements(G, N))
    first = find_complement(G, N)
    assert (first is None) == (count == 0)
    if first is not None:
        assert is_complement(G, N, first)


# -- Gaschuetz


def test_gaschutz_examples():
    inst = inversion(3)
    assert splits_gaschutz(inst.G, PermutationGroup.trivial(inst.G.degree))
    Q, Z = q8_over_center()
    ev = splits_gaschutz(Q, Z)
    assert not ev and ev.per_prime == {2: None}
    ev = splits_gaschutz(inst.G, inst.N_sub)
    assert ev and all(C is not None for C in ev.per_prime.values())


@given(st.sampled_from(corpus(32, "nilpotent")), st.data())
def test_gaschutz_agrees_with_search(inst, data):
    G = inst.G
    x = data.draw(st.sampled_from(G.sorted_elements))
    A = normal_closure(G, [x])
    if not A.is_abelian:
        A = inst.N_sub if inst.N.is_abelian else None
    if A is None:
        return
    assert bool(splits_gaschutz(G, A)) == (find_complement(G, A) is not None)


# -- conjugacy


def test_local_conjugacy_examples():
    inst = inversion(3)
    G, J = inst.G, inst.J_sub
    lc = locally_conjugate(J, J, G)
    assert lc and all(w == G.identity for w in lc.witnesses.values())
    v4 = trivial("C2", "C2")
    a, b = enumerate_complements(v4.G, v4.N_sub)
    assert not locally_conjugate(a, b, v4.G)
    assert conjugacy_witness(a, b, v4.G) is None
    comps = enumerate_complements(G, inst.N_sub)
    for C in comps:
        assert locally_conjugate(J, C, G)


def test_conjugacy_witness_examples():
    inst = inversion(3)
    G, N, J = inst.G, inst.N_sub, inst.J_sub
    assert conjugacy_witness(J, J, G) == G.identity
    for C in enumerate_complements(G, N):
        g = conjugacy_witness(J, C, G)
        assert subgroup_conjugate(J, g) == C
        # the scan restricted to N = A3 lands on a 3-cycle
        n = conjugacy_via_local_abelian(J, C, G, N)
        assert n in N.elements and subgroup_conjugate(J, n) == C
        if C != J:
            assert n.order() == 3
    assert conjugacy_via_local_abelian(J, J, G, N) == G.identity


def test_local_abelian_rejects_non_local_pairs():
    v4 = trivial("C2", "C2")
    a, b = enumerate_complements(v4.G, v4.N_sub)
    with pytest.raises(HypothesesUnmet):
        conjugacy_via_local_abelian(a, b, v4.G, v4.N_sub)


def test_local_supersoluble_requires_supersoluble():
    # A4 = (C2 x C2) x| C3 is soluble but not supersoluble
    N, J = catalog.group("C2xC2"), catalog.cyclic(3)
    acts = [a for a in _actions(J, N) if not a.is_trivial()]
    inst = Instance.build("C2xC2", "C3", acts[0])
    assert not inst.labels["g_supersoluble"]
    with pytest.raises(PreconditionError):
        conjugacy_via_local_supersoluble(inst.J_sub, inst.J_sub, inst.G, inst.N_sub)


def _actions(J, N):
    from fixlab.construct import enumerate_actions

    return list(enumerate_actions(J, N))


@given(st.sampled_from(corpus(32, "nilpotent")))
def test_class_keys_match_oracle(inst):
    G, N = inst.G, inst.N_sub
    comps = enumerate_complements(G, N)[:12]
    for A, B in combinations(comps, 2):
        conj = any(conj_set(A.elements, g) == B.elements for g in G.sorted_elements)
        assert (conjugacy_class_key(A, G) == conjugacy_class_key(B, G)) == conj
        local = all(any(conj_set(sa.elements, g) == sb.elements for g in G.sorted_elements)
                    for (p, sa), (q, sb) in zip(_sylows(A), _sylows(B)))
        assert bool(locally_conjugate(A, B, G)) == local
        assert (local_class_key(A, G) == local_class_key(B, G)) == local


def _sylows(H):
    from fixlab.structure import prime_divisors, sylow_subgroup

    return [(p, sylow_subgroup(H, p)) for p in prime_divisors(H)]


@given(st.sampled_from([i for i in corpus(32, "nilpotent") if i.labels["g_supersoluble"]]))
def test_local_supersoluble_finds_conjugators(inst):
    G, N = inst.G, inst.N_sub
    comps = enumerate_complements(G, N)
    J = inst.J_sub
    for C in comps[:16]:
        if locally_conjugate(J, C, G):
            g = conjugacy_via_local_supersoluble(J, C, G, N)
            assert g in N.elements and subgroup_conjugate(J, g) == C
        else:
            assert conjugacy_witness(J, C, G) is None


# -- subgroups and supplements


def _brute_subgroup_count(G) -> int:
    rest = [g for g in G.sorted_elements if g != G.identity]
    return sum(1 for k in range(len(rest) + 1) for sub in combinations(rest, k)
               if G.order % (k + 1) == 0 and is_closed(set(sub) | {G.identity}))


@pytest.mark.parametrize("name,count", [("C2xC2", 5), ("D4", 10), ("Q8", 6), ("S3", 6)])
def test_subgroup_counts(name, count):
    G = catalog.group(name)
    assert len(subgroups_of(G)) == count == _brute_subgroup_count(G)


def test_supplements_of_s3():
    inst = inversion(3)
    sups = enumerate_supplements(inst.G, inst.N_sub)
    # the whole group and the three reflection subgroups
    assert sorted(H.order for H in sups) == [2, 2, 2, 6]


# -- supplement recursion


def test_supplement_recursion_base_cases():
    inst = inversion(6)
    G, N, J = inst.G, inst.N_sub, inst.J_sub
    g = supplement_contains_conjugate(G, G, N, J)
    assert subgroup_conjugate(J, g).elements <= G.elements
    assert supplement_contains_conjugate(J, G, N, J) == G.identity


@given(st.sampled_from([i for i in corpus(32, "nilpotent") if i.labels["g_supersoluble"]]),
       st.data())
def test_supplement_recursion_matches_oracle(inst, data):
    G, N, J = inst.G, inst.N_sub, inst.J_sub
    sups = enumerate_supplements(G, N)
    H = data.draw(st.sampled_from(sups))
    oracle = containment_witness(J, H, G)
    trace: list[str] = []
    try:
        g = supplement_contains_conjugate(H, G, N, J, trace=trace)
    except HypothesesUnmet:
        # unmet per-prime hypothesis implies no conjugate of J fits either
        assert oracle is None
        return
    assert subgroup_conjugate(J, g).elements <= H.elements
    assert oracle is not None
    assert trace
