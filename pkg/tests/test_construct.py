from __future__ import annotations

from itertools import product
from math import gcd

import pytest
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup as SymGroup

from fixlab import catalog
from fixlab.construct import ActionHom, automorphisms, enumerate_actions, semidirect
from fixlab.corpus import CorpusConfig, corpus_generate
from fixlab.errors import OrderCapExceeded, PreconditionError
from fixlab.perm import is_normal

from oracles import automorphism_count
from support import corpus, inversion


# -- catalog sanity (independent orders from sympy)


@pytest.mark.parametrize("name", ["D4", "Q8", "SD16", "M16", "Heis3", "SL23", "F20", "C9:C3",
                                  "C4:C4", "C3:C8", "Dic3", "A4", "S4"])
def test_catalog_orders_match_sympy(name):
    G = catalog.group(name)
    oracle = SymGroup([SymPerm(list(g)) for g in G.generators])
    assert G.order == oracle.order()
    assert G.is_abelian == oracle.is_abelian


def test_catalog_nilpotent_list_is_nilpotent():
    from fixlab.structure import is_nilpotent

    assert all(is_nilpotent(catalog.group(n)) for n in catalog.NILPOTENT_N)


# -- automorphisms


def test_aut_examples():
    assert automorphisms(catalog.cyclic(2)).order == 1
    assert automorphisms(catalog.group("C2xC2")).order == 6
    assert automorphisms(catalog.cyclic(5)).order == 4


@pytest.mark.parametrize("name", ["C4", "C6", "C2xC2", "D4", "Q8", "C2xC4", "C7", "C8"])
def test_aut_matches_bijection_scan(name):
    N = catalog.group(name)
    assert automorphisms(N).order == automorphism_count(N)


def test_aut_cap():
    with pytest.raises(OrderCapExceeded):
        automorphisms(catalog.cyclic(16), source_cap=8)


# -- semidirect products


def test_trivial_action_is_direct_product():
    N, J = catalog.cyclic(3), catalog.cyclic(2)
    sd = semidirect(N, J)
    for (n, j), (n2, j2) in product(product(N, J), repeat=2):
        assert sd.pair(n, j) * sd.pair(n2, j2) == sd.pair(n * n2, j * j2)
    assert sd.whole.is_abelian


def test_inversion_gives_s3_and_d4():
    s3 = inversion(3).G
    assert s3.order == 6 and not s3.is_abelian
    assert s3.order_statistics == catalog.symmetric(3).order_statistics
    d4 = inversion(4).G
    assert d4.order == 8
    assert dict(d4.order_statistics)[4] == 2
    assert d4.order_statistics == catalog.group("D4").order_statistics


def test_bad_action_rejected():
    N, J = catalog.cyclic(3), catalog.cyclic(2)
    g = N.generators[0]
    with pytest.raises(PreconditionError):
        ActionHom(J, N, [[g * g * g]])  # identity image is not an automorphism
    with pytest.raises(PreconditionError):
        ActionHom(catalog.cyclic(4), catalog.cyclic(3), [[g.inverse()], [g]])


def test_semidirect_invariants_on_corpus():
    for inst in corpus(24, "nilpotent"):
        sd = inst.semidirect
        G, N, J = sd.whole, sd.N_sub, sd.J_sub
        assert G.order == inst.N.order * inst.J.order
        assert is_normal(N, G)
        assert len(N.elements & J.elements) == 1
        for n, j in product(inst.N.generators, inst.J.generators):
            g = sd.pair(n, j)
            assert sd.factorize(g) == (n, j)
            # conjugating the embedded n by the embedded j realises the action
            en, ej = sd.embed_N(n), sd.embed_J(j)
            assert ej.inverse() * en * ej == sd.embed_N(inst.action.right(j, n))
            assert inst.action.left(j, inst.action.right(j, n)) == n


def _hom_count(J, N) -> int:
    """|Hom(J, Aut N)| by checking every map on the full element set of J."""
    aut = automorphisms(N)
    A = aut.sorted_elements
    Jel = J.sorted_elements
    count = 0
    for gen_images in product(A, repeat=len(J.generators)):
        # extend along BFS words and check consistency
        img = {J.identity: aut.identity}
        frontier = [J.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for s, a in zip(J.generators, gen_images):
                    y = x * s
                    v = img[x] * a
                    if y in img:
                        if img[y] != v:
                            ok = False
                            break
                    else:
                        img[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and all(img[a * b] == img[a] * img[b] for a in Jel for b in Jel):
            count += 1
    return count


@pytest.mark.parametrize("n_name,j_name", [("C3", "C2"), ("C2xC2", "C3"), ("C2xC2", "S3"),
                                           ("C4", "C2xC2"), ("Q8", "C2"), ("C5", "C4")])
def test_enumerate_actions_matches_hom_count(n_name, j_name):
    N, J = catalog.group(n_name), catalog.group(j_name)
    acts = list(enumerate_actions(J, N))
    assert len(acts) == _hom_count(J, N)
    assert len({a.to_list().__repr__() for a in acts}) == len(acts)


# -- corpus generation


def test_corpus_examples():
    small = corpus_generate(CorpusConfig(max_order=6, family="abelian")).instances
    c3c2 = [i for i in small if i.n_name == "C3" and i.j_name == "C2"]
    assert sorted(i.action.is_trivial() for i in c3c2) == [False, True]
    nc = corpus_generate(CorpusConfig(max_order=8, family="abelian", coprime=False)).instances
    pairs = {(i.n_name, i.j_name) for i in nc}
    assert {("C2", "C2"), ("C4", "C2"), ("C2xC2", "C2"), ("C2", "C4")} <= pairs
    assert any(i.n_name == "C4" and not i.action.is_trivial() for i in nc)
    cp = corpus_generate(CorpusConfig(max_order=48, family="abelian", coprime=True)).instances
    assert cp and all(gcd(i.N.order, i.J.order) == 1 for i in cp)


def test_corpus_is_deterministic():
    a = corpus_generate(CorpusConfig(max_order=20, family="nilpotent", dedup=True))
    corpus_generate.cache_clear()
    b = corpus_generate(CorpusConfig(max_order=20, family="nilpotent", dedup=True))
    assert [i.id for i in a] == [i.id for i in b]


def test_corpus_labels_consistent():
    from fixlab.structure import is_soluble, is_supersoluble_by_quotients

    for inst in corpus(24, "nilpotent"):
        lab = inst.labels
        assert lab["g_supersoluble"] == is_supersoluble_by_quotients(inst.G)
        assert lab["g_soluble"] == is_soluble(inst.G)
        assert lab["n_abelian"] == inst.N.is_abelian
