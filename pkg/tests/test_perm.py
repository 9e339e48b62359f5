from __future__ import annotations

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup as SymGroup

from fixlab.errors import DegreeMismatch, NotNormal, OrderCapExceeded
from fixlab.perm import (Permutation, PermutationGroup, conjugate_element, generate,
                         is_normal, is_subgroup, quotient_representation, subgroup_conjugate,
                         transversal)


def P(text: str, n: int) -> Permutation:
    return Permutation.from_cycles(text, n)


def S(n: int) -> PermutationGroup:
    return generate(n, [P(f"({i} {i + 1})", n) for i in range(n - 1)])


perms = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.permutations(range(n)), min_size=1, max_size=3))


# -- conjugate_element


def test_conjugate_identity():
    e = Permutation.identity(4)
    assert conjugate_element(e, P("(0 1 2 3)", 4)) == e


def test_conjugate_three_cycle_by_transposition():
    # oracle: sympy gives [2, 0, 1] for (0 1)^-1 (0 1 2) (0 1)
    assert conjugate_element(P("(0 1 2)", 3), P("(0 1)", 3)) == P("(0 2 1)", 3)


def test_conjugate_by_own_power():
    g = P("(0 1 2 3 4)", 5)
    assert all(g.conjugate(g ** k) == g for k in range(5))


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        P("(0 1)", 2) * P("(0 1)", 3)


def test_cycle_parsing_rejects_repeats_and_range():
    with pytest.raises(ValueError):
        P("(0 1)(1 2)", 3)
    with pytest.raises(ValueError):
        P("(0 5)", 3)
    assert P("()", 3).is_identity()
    assert str(P("(2 0 1)", 3)) == "(0 1 2)"


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(*[st.permutations(range(n))] * 3)))
def test_group_axioms(triple):
    a, b, c = (Permutation(x) for x in triple)
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    # composition: a first, then b
    assert all((a * b)[i] == b[a[i]] for i in range(len(a)))
    # conjugation is a right action
    assert a.conjugate(b).conjugate(c) == a.conjugate(b * c)
    assert (a ** a.order()).is_identity()
    assert a ** -1 == a.inverse()


# -- generate


def test_generate_examples():
    assert generate(3, [P("(0 1 2)", 3)]).order == 3
    assert generate(4, [P("(0 1 2 3)", 4), P("(0 2)", 4)]).order == 8
    assert S(4).order == 24


def test_generate_cap():
    with pytest.raises(OrderCapExceeded):
        generate(5, S(5).generators, cap=100)


@given(perms)
def test_generate_matches_sympy(gens):
    n = len(gens[0])
    G = generate(n, [Permutation(g) for g in gens])
    oracle = SymGroup([SymPerm(list(g)) for g in gens])
    assert G.order == oracle.order()
    assert G.is_abelian == oracle.is_abelian
    assert G.identity == Permutation.identity(n)
    assert G.sorted_elements[0] == G.identity


# -- subgroups and normality


def test_normality_examples():
    S3 = S(3)
    assert is_normal(PermutationGroup.trivial(3), S3)
    assert is_normal(generate(3, [P("(0 1 2)", 3)]), S3)
    H = generate(3, [P("(0 1)", 3)])
    assert is_subgroup(H, S3) and not is_normal(H, S3)


def test_subgroup_conjugate_examples():
    S3 = S(3)
    H = generate(3, [P("(0 1)", 3)])
    assert subgroup_conjugate(H, P("(1 2)", 3)) == generate(3, [P("(0 2)", 3)])
    assert subgroup_conjugate(H, P("(0 1)", 3)) == H
    A3 = generate(3, [P("(0 1 2)", 3)])
    assert all(subgroup_conjugate(A3, g) == A3 for g in S3)


@given(perms, st.data())
def test_normality_matches_sympy(gens, data):
    n = len(gens[0])
    G = generate(n, [Permutation(g) for g in gens])
    h = data.draw(st.sampled_from(G.sorted_elements))
    H = generate(n, [h])
    sym_G = SymGroup([SymPerm(list(g)) for g in gens])
    sym_H = SymGroup([SymPerm(list(h))])
    assert is_subgroup(H, G)
    assert is_normal(H, G) == sym_H.is_normal(sym_G)


# -- transversal and quotients


def test_transversal_examples():
    S3 = S(3)
    A3 = generate(3, [P("(0 1 2)", 3)])
    assert transversal(S3, S3) == [S3.identity]
    assert len(transversal(S3, A3)) == 2
    S4 = S(4)
    H = generate(4, [P("(0 1)", 4)])
    reps = transversal(S4, H)
    assert len(reps) == 12
    cosets = {frozenset(h * t for h in H) for t in reps}
    assert len(cosets) == 12


@given(perms, st.data())
def test_transversal_partitions(gens, data):
    n = len(gens[0])
    G = generate(n, [Permutation(g) for g in gens])
    H = generate(n, [data.draw(st.sampled_from(G.sorted_elements))])
    reps = transversal(G, H)
    assert len(reps) * H.order == G.order
    cover = set()
    for t in reps:
        coset = {h * t for h in H}
        assert not cover & coset
        cover |= coset
    assert cover == G.elements


def test_quotient_examples():
    S3 = S(3)
    Q, pi = quotient_representation(S3, generate(3, [P("(0 1 2)", 3)]))
    assert Q.order == 2
    Q, pi = quotient_representation(S3, PermutationGroup.trivial(3))
    assert Q.order == 6 and pi.kernel().order == 1
    D4 = generate(4, [P("(0 1 2 3)", 4), P("(0 2)", 4)])
    Z = generate(4, [P("(0 2)(1 3)", 4)])
    Q, pi = quotient_representation(D4, Z)
    assert Q.order == 4 and all((x * x).is_identity() for x in Q)
    with pytest.raises(NotNormal):
        quotient_representation(S3, generate(3, [P("(0 1)", 3)]))


@given(perms)
def test_quotient_by_derived_is_homomorphic(gens):
    from fixlab.structure import derived_subgroup

    n = len(gens[0])
    G = generate(n, [Permutation(g) for g in gens])
    A = derived_subgroup(G)
    Q, pi = quotient_representation(G, A)
    assert Q.order * A.order == G.order
    assert pi.kernel() == A
    assert pi.is_valid()


def test_from_indices_requires_closure():
    from fixlab.errors import NotSubgroup

    S3 = S(3)
    idx = S3.table.indices(generate(3, [P("(0 1)", 3)]).elements)
    assert PermutationGroup.from_indices(S3, idx).order == 2
    with pytest.raises(NotSubgroup):
        PermutationGroup.from_indices(S3, [0, 1, 2])
