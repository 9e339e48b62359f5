"""Automorphism groups, actions via automorphisms, and semidirect products.

Action convention (owned here, imported everywhere else):

* an :class:`ActionHom` stores the right action ``n -> n^j``; inside the
  semidirect product this is conjugation ``j^-1 n j``;
* the left action used in the cocycle identity is
  ``alpha_j(n) = n^(j^-1) = j n j^-1`` (see :func:`left_action`).

So a crossed homomorphism satisfies ``phi(j j') = phi(j) * alpha_j(phi(j'))``.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

from .errors import OrderCapExceeded, PreconditionError
from .perm import (DEFAULT_ELEMENT_CAP, GroupHom, Permutation, PermutationGroup,
                   extend_generator_map, _perm)

AUTOMORPHISM_SOURCE_CAP = 64


def left_action(j: Permutation, n: Permutation) -> Permutation:
    """``alpha_j(n) = j n j^-1``, computed inside a common ambient group."""
    return j * n * j.inverse()


def right_action(j: Permutation, n: Permutation) -> Permutation:
    """``n^j = j^-1 n j``."""
    return j.inverse() * n * j


def automorphisms(N: PermutationGroup, *, source_cap: int = AUTOMORPHISM_SOURCE_CAP,
                  cap: int = DEFAULT_ELEMENT_CAP) -> PermutationGroup:
    """Aut(N) as a permutation group on the indices of ``N.sorted_elements``.

    Brute force over generator images, pruned level by level: the partial map
    on ``<g_1..g_i>`` must already be a well-defined injective homomorphism.
    """
    if N.order > source_cap:
        raise OrderCapExceeded(f"|N| = {N.order} exceeds automorphism cap {source_cap}")
    elems = N.sorted_elements
    index = {g: i for i, g in enumerate(elems)}
    gens = N.generators
    one = N.identity
    by_order: dict[int, list[Permutation]] = {}
    for g in elems:
        by_order.setdefault(g.order(), []).append(g)
    candidates = [by_order[g.order()] for g in gens]
    found: list[Permutation] = []

    def extend(i: int, images: list[Permutation]) -> None:
        if i == len(gens):
            m = extend_generator_map(gens, images, one, one)
            found.append(_perm(index[m[g]] for g in elems))
            if len(found) > cap:
                raise OrderCapExceeded(f"|Aut(N)| exceeds cap {cap}")
            return
        for c in candidates[i]:
            trial = images + [c]
            m = extend_generator_map(gens[:i + 1], trial, one, one)
            if m is None or len(set(m.values())) != len(m):
                continue
            extend(i + 1, trial)

    extend(0, [])
    return PermutationGroup.from_elements(len(elems), found, cap=cap)


class ActionHom:
    """A homomorphism J -> Aut(N), stored as the right action ``n -> n^j``.

    ``images[i]`` lists the images of ``N.generators`` under the automorphism
    attached to ``J.generators[i]``.
    """

    def __init__(self, actor: PermutationGroup, target: PermutationGroup,
                 images: Sequence[Sequence[Permutation]]):
        self.actor = actor
        self.target = target
        self.images = tuple(tuple(row) for row in images)
        if len(self.images) != len(actor.generators):
            raise PreconditionError("one automorphism per generator of J required")
        for row in self.images:
            if len(row) != len(target.generators):
                raise PreconditionError("automorphism must give one image per generator of N")
        self._validate()

    @classmethod
    def trivial(cls, actor: PermutationGroup, target: PermutationGroup) -> ActionHom:
        return cls(actor, target, [list(target.generators) for _ in actor.generators])

    def _validate(self) -> None:
        N = self.target
        for row in self.images:
            hom = GroupHom(N, N, row)
            if not hom.is_valid():
                raise PreconditionError("generator image does not define an endomorphism of N")
            if len(set(hom.mapping.values())) != N.order:
                raise PreconditionError("generator image is not bijective on N")
        if not self._as_hom.is_valid():
            raise PreconditionError("J -> Aut(N) is not a homomorphism")

    @cached_property
    def _index(self) -> dict[Permutation, int]:
        return {g: i for i, g in enumerate(self.target.sorted_elements)}

    @cached_property
    def _as_hom(self) -> GroupHom:
        N, idx = self.target, self._index
        perms = []
        for row in self.images:
            m = GroupHom(N, N, row).mapping
            perms.append(_perm(idx[m[g]] for g in N.sorted_elements))
        aut = PermutationGroup(N.order, perms, cap=DEFAULT_ELEMENT_CAP)
        return GroupHom(self.actor, aut, perms)

    @cached_property
    def table(self) -> dict[Permutation, dict[Permutation, Permutation]]:
        """``table[j][n] == n^j`` for every j in J and n in N."""
        elems = self.target.sorted_elements
        out = {}
        for j, sigma in self._as_hom.mapping.items():
            out[j] = {elems[a]: elems[sigma[a]] for a in range(len(elems))}
        return out

    def right(self, j: Permutation, n: Permutation) -> Permutation:
        return self.table[j][n]

    def left(self, j: Permutation, n: Permutation) -> Permutation:
        return self.table[j.inverse()][n]

    def kernel_order(self) -> int:
        return sum(1 for j, m in self.table.items() if all(k == v for k, v in m.items()))

    def is_trivial(self) -> bool:
        return all(row == self.target.generators for row in self.images)

    def to_list(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.images]


def enumerate_actions(J: PermutationGroup, N: PermutationGroup,
                      aut: PermutationGroup | None = None, *,
                      max_candidates: int | None = None) -> Iterator[ActionHom]:
    """Every homomorphism J -> Aut(N), by generator-image assignment.

    Candidate images for a generator of order k are the automorphisms whose
    order divides k.  Raises OrderCapExceeded if the candidate product is
    larger than ``max_candidates``.
    """
    if aut is None:
        aut = automorphisms(N)
    pools = []
    for s in J.generators:
        k = s.order()
        pools.append([a for a in aut.sorted_elements if k % a.order() == 0])
    total = 1
    for pool in pools:
        total *= len(pool)
    if max_candidates is not None and total > max_candidates:
        raise OrderCapExceeded(f"{total} candidate actions exceeds cap {max_candidates}")
    elems = N.sorted_elements
    index = {g: i for i, g in enumerate(elems)}
    gen_idx = [index[g] for g in N.generators]
    one_j, one_a = J.identity, aut.identity
    for combo in product(*pools):
        if extend_generator_map(J.generators, combo, one_j, one_a) is None:
            continue
        images = [[elems[sigma[a]] for a in gen_idx] for sigma in combo]
        yield ActionHom(J, N, images)


class SemidirectProduct:
    """``G = N x| J`` realised regularly on the pair set N x J.

    Point ``a * |J| + b`` stands for the pair (N[a], J[b]) (sorted element
    order); each group element acts by right multiplication
    ``(n', j') . (n, j) = (n' alpha_j'(n), j' j)``.
    """

    def __init__(self, N: PermutationGroup, J: PermutationGroup, action: ActionHom,
                 *, cap: int = DEFAULT_ELEMENT_CAP):
        if action.actor != J or action.target != N:
            raise PreconditionError("action does not match N and J")
        self.N, self.J, self.action = N, J, action
        self.cap = cap
        n_el, j_el = N.sorted_elements, J.sorted_elements
        nn, nj = len(n_el), len(j_el)
        if nn * nj > cap:
            raise OrderCapExceeded(f"|N||J| = {nn * nj} exceeds cap {cap}")
        nt, jt = N.table, J.table
        # left[b][a] = index of alpha_{J[b]}(N[a])
        left = []
        for j in j_el:
            m = action.table[j.inverse()]
            left.append([nt.index[m[n]] for n in n_el])
        self._left = left
        self._nn, self._nj = nn, nj

    @cached_property
    def pair_table(self):
        """Multiplication table on pair indices ``a * |J| + b`` (index-only).

        This is also the sorted element order of :attr:`whole`, since the
        image of point 0 under the element (N[a], J[b]) is ``a * |J| + b``.
        """
        from .perm import CayleyTable

        nmul, jmul = self.N.table.mul, self.J.table.mul
        ninv, jinv = self.N.table.inv, self.J.table.inv
        left, nn, nj = self._left, self._nn, self._nj
        mul = [[nmul[a][left[b][a2]] * nj + jmul[b][b2] for a2 in range(nn) for b2 in range(nj)]
               for a in range(nn) for b in range(nj)]
        # (a, b)^-1 = (alpha_{b^-1}(a^-1), b^-1)
        inv = [left[jinv[b]][ninv[a]] * nj + jinv[b] for a in range(nn) for b in range(nj)]
        return CayleyTable.from_arrays(mul, inv)

    @cached_property
    def whole(self) -> PermutationGroup:
        from .perm import CayleyTable

        nn, nj = self._nn, self._nj
        T = self.pair_table
        # g acts by right multiplication x -> x g: its image list is column g
        elems = [_perm(col) for col in zip(*T.mul)]
        gens = [elems[self.N.table.index[n] * nj] for n in self.N.generators]
        gens += [elems[self.J.table.index[j]] for j in self.J.generators]
        G = PermutationGroup(nn * nj, gens, cap=self.cap, _elements=frozenset(elems))
        G.__dict__["sorted_elements"] = tuple(elems)
        G.__dict__["table"] = CayleyTable.from_arrays(T.mul, T.inv, elems)
        return G

    @cached_property
    def embed_N(self) -> GroupHom:
        G, nj = self.whole, self._nj
        el = G.sorted_elements
        return GroupHom(self.N, G, [el[self.N.table.index[n] * nj] for n in self.N.generators])

    @cached_property
    def embed_J(self) -> GroupHom:
        el = self.whole.sorted_elements
        return GroupHom(self.J, self.whole, [el[self.J.table.index[j]] for j in self.J.generators])

    def pair(self, n: Permutation, j: Permutation) -> Permutation:
        """The element of G written ``(n, j)``, i.e. ``embed_N(n) * embed_J(j)``."""
        return self.whole.sorted_elements[self.N.table.index[n] * self._nj
                                          + self.J.table.index[j]]

    def factorize(self, g: Permutation) -> tuple[Permutation, Permutation]:
        """Unique ``(n, j)`` with ``g = embed_N(n) * embed_J(j)``."""
        a, b = divmod(g[0], self._nj)
        return self.N.sorted_elements[a], self.J.sorted_elements[b]

    @cached_property
    def N_sub(self) -> PermutationGroup:
        return self.embed_N.image()

    @cached_property
    def J_sub(self) -> PermutationGroup:
        return self.embed_J.image()


def semidirect(N: PermutationGroup, J: PermutationGroup, action: ActionHom | None = None,
               *, cap: int = DEFAULT_ELEMENT_CAP) -> SemidirectProduct:
    if action is None:
        action = ActionHom.trivial(J, N)
    return SemidirectProduct(N, J, action, cap=cap)
