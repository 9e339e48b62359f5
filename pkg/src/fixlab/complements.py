"""Complements and supplements of normal subgroups, and conjugacy decisions.

Searches run on the Cayley table of the ambient group, so subgroups are
handled as frozensets of element indices internally and converted back to
:class:`PermutationGroup` at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .errors import (HypothesesUnmet, InvariantViolation, NotNormal, PreconditionError,
                     TheoremViolation)
from .perm import (Permutation, PermutationGroup, is_normal, is_subgroup, join,
                   product_set_size, quotient_representation, subgroup_conjugate)
from .structure import (is_nilpotent, is_supersoluble, minimal_normal_of_prime_order,
                        prime_divisors, sylow_subgroup)


def _closure_idx(mul, gens, limit: int, forbidden=frozenset()) -> frozenset[int] | None:
    """Subgroup generated by ``gens``; None once it passes ``limit`` or hits ``forbidden``."""
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = mul[x]
            for s in gens:
                y = row[s]
                if y not in seen:
                    if y in forbidden:
                        return None
                    seen.add(y)
                    if len(seen) > limit:
                        return None
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _to_group(G: PermutationGroup, idx: frozenset[int]) -> PermutationGroup:
    return PermutationGroup.from_indices(G, idx)


def _lifted_generators(G: PermutationGroup, N: PermutationGroup) -> list[Permutation]:
    """Generators of G whose cosets generate G/N, chosen greedily."""
    chosen: list[Permutation] = []
    current = N
    for g in G.generators:
        if g not in current:
            chosen.append(g)
            current = join(current, PermutationGroup(G.degree, [g], cap=G.cap))
            if current.order == G.order:
                break
    return chosen


def is_supplement(G: PermutationGroup, N: PermutationGroup, H: PermutationGroup) -> bool:
    if not is_normal(N, G):
        raise NotNormal("N is not normal in G")
    if not is_subgroup(H, G):
        raise PreconditionError("H is not a subgroup of G")
    return product_set_size(N, H) == G.order


def is_complement(G: PermutationGroup, N: PermutationGroup, H: PermutationGroup) -> bool:
    return is_supplement(G, N, H) and len(N.elements & H.elements) == 1


def _complement_search(G: PermutationGroup, N: PermutationGroup) -> Iterator[frozenset[int]]:
    """Generator-lift search, yielding complements as index sets in assignment order.

    A complement meets each coset of N once, so it contains exactly one
    element ``t_i n_i`` over each lifted generator ``t_i``, and those generate it.
    """
    if not is_normal(N, G):
        raise NotNormal("N is not normal in G")
    T = G.table
    mul = T.mul
    index = G.order // N.order
    nidx = [T.index[n] for n in N.sorted_elements]
    forbidden = frozenset(nidx[1:])
    lifts = [T.index[t] for t in _lifted_generators(G, N)]
    seen: set[frozenset[int]] = set()

    def rec(i: int, chosen: list[int]) -> Iterator[frozenset[int]]:
        H = _closure_idx(mul, chosen, index, forbidden)
        if H is None:
            return
        if i == len(lifts):
            if len(H) == index and H not in seen:
                seen.add(H)
                yield H
            return
        t = lifts[i]
        for n in nidx:
            yield from rec(i + 1, chosen + [mul[t][n]])

    yield from rec(0, [])


def enumerate_complements(G: PermutationGroup, N: PermutationGroup, *,
                          context=None) -> list[PermutationGroup]:
    """All complements of N in G, sorted by element set.

    With a :class:`~fixlab.cohomology.CocycleContext` whose K complements N
    in G, complements come from Z^1 via F; otherwise by generator-lift search.
    """
    if context is not None:
        from .cohomology import complement_from_cocycle, compute_h1

        if context.N != N or product_set_size(N, context.K) != G.order:
            raise PreconditionError("context does not describe G = N K")
        out = [complement_from_cocycle(phi) for phi in compute_h1(context).cocycles]
    else:
        out = [_to_group(G, H) for H in _complement_search(G, N)]
    return sorted(out, key=lambda H: H.sorted_elements)


def find_complement(G: PermutationGroup, N: PermutationGroup) -> PermutationGroup | None:
    for H in _complement_search(G, N):
        return _to_group(G, H)
    return None


@dataclass
class SplitEvidence:
    splits: bool
    per_prime: dict[int, PermutationGroup | None] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.splits


def splits_gaschutz(G: PermutationGroup, N: PermutationGroup) -> SplitEvidence:
    """Split over abelian normal N iff each Sylow S splits over N n S."""
    if not N.is_abelian:
        raise PreconditionError("N is not abelian")
    if not is_normal(N, G):
        raise NotNormal("N is not normal in G")
    ev = SplitEvidence(True)
    for p in prime_divisors(G):
        S = sylow_subgroup(G, p)
        NS = PermutationGroup.from_elements(G.degree, N.elements & S.elements, cap=G.cap)
        C = find_complement(S, NS)
        ev.per_prime[p] = C
        if C is None:
            ev.splits = False
    return ev


# ---------------------------------------------------------------------------
# conjugacy


def _conjugators(G: PermutationGroup, H: PermutationGroup, target: frozenset[Permutation],
                 pool=None) -> Iterator[Permutation]:
    """Elements g of ``pool`` (default G) with ``H^g == target`` (or ``<=`` when larger)."""
    T = G.table
    mul, inv = T.mul, T.inv
    gens = [T.index[h] for h in H.generators]
    tset = T.indices(target)
    exact = len(target) == H.order
    for g in (pool if pool is not None else G).sorted_elements:
        gi = T.index[g]
        row = mul[inv[gi]]
        if all(mul[row[h]][gi] in tset for h in gens):
            if not exact or len(tset) == H.order:
                yield g


def conjugacy_witness(H: PermutationGroup, H2: PermutationGroup, G: PermutationGroup
                      ) -> Permutation | None:
    """First g in G (canonical order) with ``H^g == H2``."""
    if H.order != H2.order:
        return None
    return next(_conjugators(G, H, H2.elements), None)


def containment_witness(H: PermutationGroup, target: PermutationGroup, G: PermutationGroup,
                        pool: PermutationGroup | None = None) -> Permutation | None:
    """First g with ``H^g <= target``."""
    if target.order % H.order:
        return None
    return next(_conjugators(G, H, target.elements, pool), None)


@dataclass
class LocalConjugacy:
    conjugate: bool
    witnesses: dict[int, Permutation | None] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.conjugate


def locally_conjugate(H: PermutationGroup, H2: PermutationGroup, G: PermutationGroup
                      ) -> LocalConjugacy:
    """For each p, is a Sylow p-subgroup of H conjugate to one of H2?

    Fixing one Sylow subgroup on each side suffices: the others are
    conjugate to it inside H (resp. H2).
    """
    if H.order != H2.order:
        return LocalConjugacy(False)
    out = LocalConjugacy(True)
    for p in prime_divisors(H):
        g = conjugacy_witness(sylow_subgroup(H, p), sylow_subgroup(H2, p), G)
        out.witnesses[p] = g
        if g is None:
            out.conjugate = False
    return out


def conjugacy_class_key(H: PermutationGroup, G: PermutationGroup) -> tuple[int, ...]:
    """Canonical label of the G-class of H: least sorted index tuple over conjugates."""
    T = G.table
    idx = T.indices(H.elements)
    return min(tuple(sorted(T.conjugate_set(idx, g))) for g in range(len(T)))


def local_class_key(H: PermutationGroup, G: PermutationGroup) -> tuple:
    """Per-prime class keys of Sylow subgroups; equal keys <=> locally conjugate."""
    return tuple((p, conjugacy_class_key(sylow_subgroup(H, p), G)) for p in prime_divisors(H))


def _require_complements(G, N, J, J2) -> None:
    if not is_normal(N, G):
        raise PreconditionError("N is not normal in G")
    for H in (J, J2):
        if not is_complement(G, N, H):
            raise PreconditionError("not a complement of N in G")


def _scan_normal(J, J2, G, N, claim: str) -> Permutation:
    lc = locally_conjugate(J, J2, G)
    if not lc:
        raise HypothesesUnmet("complements are not locally conjugate")
    g = next(_conjugators(G, J, J2.elements, pool=N), None)
    if g is None:
        raise TheoremViolation(f"{claim}: locally conjugate complements with no conjugator in N",
                               {"J": J.to_dict(), "J2": J2.to_dict(), "G": G.to_dict(),
                                "N": N.to_dict()})
    return g


def conjugacy_via_local_abelian(J: PermutationGroup, J2: PermutationGroup,
                                G: PermutationGroup, N: PermutationGroup) -> Permutation:
    """Conjugator for locally conjugate complements of an abelian normal subgroup.

    Complements are N-conjugate exactly when their cocycles are cohomologous,
    so the search runs over N only.
    """
    if not N.is_abelian:
        raise PreconditionError("N is not abelian")
    _require_complements(G, N, J, J2)
    return _scan_normal(J, J2, G, N, "lem-ab")


def conjugacy_via_local_supersoluble(J: PermutationGroup, J2: PermutationGroup,
                                     G: PermutationGroup, N: PermutationGroup) -> Permutation:
    if not is_supersoluble(G):
        raise PreconditionError("G is not supersoluble")
    if not is_nilpotent(N):
        raise PreconditionError("N is not nilpotent")
    _require_complements(G, N, J, J2)
    return _scan_normal(J, J2, G, N, "lem-nil")


# ---------------------------------------------------------------------------
# supplements


def subgroups_of(N: PermutationGroup) -> list[PermutationGroup]:
    """Every subgroup of a small group, by joining cyclic subgroups until stable."""
    T = N.table
    mul = T.mul
    cyclic = set()
    for g in range(len(T)):
        cyclic.add(_closure_idx(mul, [g], len(T)))
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for A in frontier:
            for C in cyclic:
                if C <= A:
                    continue
                B = _closure_idx(mul, sorted(A | C), len(T))
                if B not in subs:
                    subs.add(B)
                    nxt.add(B)
        frontier = nxt
    return sorted((_to_group(N, S) for S in subs), key=lambda H: (H.order, H.sorted_elements))


def enumerate_supplements(G: PermutationGroup, N: PermutationGroup) -> list[PermutationGroup]:
    """All subgroups H with NH = G, grouped by the intersection M = N n H."""
    if not is_normal(N, G):
        raise NotNormal("N is not normal in G")
    T = G.table
    mul = T.mul
    lifts = [T.index[t] for t in _lifted_generators(G, N)]
    index = G.order // N.order
    found: set[frozenset[int]] = set()
    for M in subgroups_of(N):
        midx = T.indices(M.elements)
        nidx = T.indices(N.elements)
        # N-elements modulo M: one representative per coset nM
        reps, covered = [], set()
        for n in N.sorted_elements:
            i = T.index[n]
            if i in covered:
                continue
            reps.append(i)
            covered.update(mul[i][m] for m in midx)
        forbidden = nidx - midx
        limit = M.order * index
        mgens = [T.index[m] for m in M.generators]
        for combo in product(reps, repeat=len(lifts)):
            gens = mgens + [mul[t][n] for t, n in zip(lifts, combo)]
            H = _closure_idx(mul, gens, limit, forbidden)
            if H is not None and len(H) == limit:
                found.add(H)
    return sorted((_to_group(G, H) for H in found), key=lambda H: (H.order, H.sorted_elements))


def conjugacy_class_representatives(subgroups: list[PermutationGroup], G: PermutationGroup
                                    ) -> list[PermutationGroup]:
    seen = set()
    out = []
    for H in subgroups:
        key = conjugacy_class_key(H, G)
        if key not in seen:
            seen.add(key)
            out.append(H)
    return out


# ---------------------------------------------------------------------------
# the recursive supplement algorithm


def sylow_conjugators(H: PermutationGroup, J: PermutationGroup, G: PermutationGroup,
                      pool: PermutationGroup | None = None) -> dict[int, Permutation | None]:
    """For each p | |J|: some g (from ``pool``, default G) with ``(J_p)^g <= H``."""
    return {p: containment_witness(sylow_subgroup(J, p), H, G, pool)
            for p in prime_divisors(J)}


class RecursionGap(InvariantViolation):
    """A step of the recursion could not re-establish its own hypotheses."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass
class _Trace:
    steps: list[str] = field(default_factory=list)

    def add(self, depth: int, msg: str) -> None:
        self.steps.append("  " * depth + msg)


def supplement_contains_conjugate(H: PermutationGroup, G: PermutationGroup,
                                  N: PermutationGroup, J: PermutationGroup, *,
                                  trace: list[str] | None = None) -> Permutation:
    """Find g with ``J^g <= H`` for supersoluble ``G = N x| J`` with N nilpotent.

    Hypothesis: for each prime p, H contains a conjugate of a Sylow
    p-subgroup of J.  Follows the inductive argument step by step (quotient
    by a Sylow of N or by a normal subgroup of prime order, then finish with
    the local-conjugacy criterion) and re-verifies the answer at the end.
    """
    if not is_normal(N, G) or not is_nilpotent(N):
        raise PreconditionError("N must be a nilpotent normal subgroup of G")
    if not is_complement(G, N, J):
        raise PreconditionError("J is not a complement of N")
    if not is_subgroup(H, G):
        raise PreconditionError("H is not a subgroup of G")
    if not is_supersoluble(G):
        raise PreconditionError("G is not supersoluble")
    hyp = sylow_conjugators(H, J, G)
    missing = [p for p, g in hyp.items() if g is None]
    if missing:
        raise HypothesesUnmet(f"H contains no conjugate of a Sylow subgroup of J for p in {missing}")
    tr = _Trace()
    try:
        g = _prop3(H, G, N, J, hyp, tr, 0)
    finally:
        if trace is not None:
            trace.extend(tr.steps)
    if not subgroup_conjugate(J, g).elements <= H.elements:
        raise InvariantViolation("recursion returned g with J^g not inside H")
    return g


def _prop3(H, G, N, J, hyp, tr: _Trace, depth: int) -> Permutation:
    one = G.identity
    if N.order == 1:
        tr.add(depth, "N trivial")
        return one
    if H.order == G.order:
        tr.add(depth, "H = G")
        return one
    jprimes = prime_divisors(J)
    if len(jprimes) <= 1:
        tr.add(depth, "J is a p-group")
        return hyp[jprimes[0]] if jprimes else one
    nprimes = prime_divisors(N)

    if len(nprimes) > 1:
        for p in nprimes:
            Np = sylow_subgroup(N, p)
            if product_set_size(H, Np) < G.order:
                break
        else:
            raise InvariantViolation("HN_p = G for every prime p")
        tr.add(depth, f"split off N_{p} (|N_p|={Np.order})")
        Q, pi = quotient_representation(G, Np)
        Hb, Nb, Jb = pi.image(H), pi.image(N), pi.image(J)
        gb = _prop3(Hb, Q, Nb, Jb, _sub_hyp(Hb, Jb, Q, depth, tr), tr, depth + 1)
        g0 = pi.lift(gb)
        HNp = join(H, Np)
        J0 = subgroup_conjugate(J, g0)
        if not J0.elements <= HNp.elements:
            raise InvariantViolation("lifted conjugate of J escapes H N_p")
        N0 = PermutationGroup.from_elements(G.degree, N.elements & HNp.elements, cap=G.cap)
        g1 = _prop3(H, HNp, N0, J0, _sub_hyp(H, J0, HNp, depth, tr), tr, depth + 1)
        return g0 * g1

    q = nprimes[0]
    A = minimal_normal_of_prime_order(G, within=N)
    if A is None:
        raise InvariantViolation("supersoluble group with no normal subgroup of prime order in N")
    Q, pi = quotient_representation(G, A)
    if A.elements <= H.elements:
        tr.add(depth, f"A of order {A.order} inside H: pass to G/A")
        Hb, Nb, Jb = pi.image(H), pi.image(N), pi.image(J)
        gb = _prop3(Hb, Q, Nb, Jb, _sub_hyp(Hb, Jb, Q, depth, tr), tr, depth + 1)
        return pi.lift(gb)

    tr.add(depth, f"A of order {A.order} meets H trivially")
    x = hyp.get(q, one) if q in jprimes else one
    xi = x.inverse()
    H1 = subgroup_conjugate(H, xi)                # contains J_q
    Jq = sylow_subgroup(J, q)
    Hb, Nb, Jb = pi.image(H1), pi.image(N), pi.image(J)
    gb = _prop3(Hb, Q, Nb, Jb, _sub_hyp(Hb, Jb, Q, depth, tr), tr, depth + 1)
    Kb = subgroup_conjugate(Jb, gb)
    Jqb = pi.image(Jq)
    y = containment_witness(Jqb, Kb, Q, pool=Hb)
    if y is None:
        raise RecursionGap("no conjugate of the quotient complement inside HA/A contains J_q A/A")
    # J_q A/A <= Kb^(y^-1), and Kb^(y^-1) still lies in HA/A
    Kb = subgroup_conjugate(Kb, y.inverse())
    K = PermutationGroup.from_indices(
        G, G.table.indices(h for h in H1.elements if pi(h) in Kb.elements))
    if K.order != J.order or not is_complement(G, N, K):
        raise InvariantViolation("preimage of the quotient complement is not a complement")
    c = conjugacy_via_local_supersoluble(J, K, G, N)
    return c * x


def _sub_hyp(H, J, G, depth, tr):
    hyp = sylow_conjugators(H, J, G)
    missing = [p for p, g in hyp.items() if g is None]
    if missing:
        raise RecursionGap(f"inductive hypothesis fails in a group of order {G.order} "
                           f"for p in {missing}")
    return hyp
