"""Permutations and finite permutation groups.

Composition convention: ``g * h`` applies ``g`` first, then ``h``.  With this
choice points are acted on from the right (``i -> h[g[i]]``) and conjugation
``g.conjugate(gamma) == gamma^-1 * g * gamma`` is a right action:
``(g^gamma)^delta == g^(gamma * delta)``.

Groups are stored by full element enumeration.  Everything in this package is
desk scale, so a BFS closure beats stabiliser chains on simplicity and is
exactly checkable.
"""

from __future__ import annotations

import re
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import DegreeMismatch, NotNormal, NotSubgroup, OrderCapExceeded, PreconditionError

DEFAULT_ELEMENT_CAP = 20000

_new_tuple = tuple.__new__


class Permutation(tuple):
    """A bijection of ``{0..n-1}`` stored as its image sequence."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {images}")
        return _new_tuple(cls, images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return _perm(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s*,?\s*\d+)*)?\s*\))+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        images = list(range(degree))
        seen = set()
        for body in re.findall(r"\(([^)]*)\)", text):
            points = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            for p in points:
                if p >= degree:
                    raise ValueError(f"point {p} out of range for degree {degree}")
                if p in seen:
                    raise ValueError(f"point {p} repeated in {text!r}")
                seen.add(p)
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
        return _perm(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: Permutation) -> Permutation:
        if len(self) != len(other):
            raise DegreeMismatch(f"degrees {len(self)} and {len(other)}")
        return _new_tuple(Permutation, map(other.__getitem__, self))

    def __rmul__(self, other):
        return NotImplemented

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return _new_tuple(Permutation, inv)

    __invert__ = inverse

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, gamma: Permutation) -> Permutation:
        return conjugate_element(self, gamma)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start] or self[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            x = self[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({str(self)!r}, {len(self)})"


def _perm(images: Iterable[int]) -> Permutation:
    # unchecked constructor for internal use
    return _new_tuple(Permutation, images)


def conjugate_element(g: Permutation, gamma: Permutation) -> Permutation:
    """``g^gamma = gamma^-1 g gamma``."""
    if len(g) != len(gamma):
        raise DegreeMismatch(f"degrees {len(g)} and {len(gamma)}")
    return gamma.inverse() * g * gamma


def _closure(generators: Sequence[Permutation], degree: int, cap: int,
             start: Iterable[Permutation] = ()) -> frozenset[Permutation]:
    identity = Permutation.identity(degree)
    seen = set(start)
    seen.add(identity)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise OrderCapExceeded(f"group order exceeds cap {cap}")
        frontier = nxt
    return frozenset(seen)


class CayleyTable:
    """Integer-indexed multiplication table of a group.

    Index 0 is always the identity because elements are sorted and the
    identity image sequence is lexicographically smallest.
    """

    def __init__(self, elements: Sequence[Permutation]):
        self.elements = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        idx = self.index
        self.mul = [[idx[a * b] for b in self.elements] for a in self.elements]
        self.inv = [idx[a.inverse()] for a in self.elements]

    @classmethod
    def from_arrays(cls, mul: list[list[int]], inv: list[int],
                    elements: Sequence[Permutation] | None = None) -> CayleyTable:
        """Wrap a precomputed table; ``elements`` may be omitted for index-only use."""
        self = cls.__new__(cls)
        self.mul, self.inv = mul, inv
        self.elements = tuple(elements) if elements is not None else None
        self.index = ({g: i for i, g in enumerate(self.elements)}
                      if elements is not None else None)
        return self

    def __len__(self) -> int:
        return len(self.mul)

    def indices(self, elements: Iterable[Permutation]) -> frozenset[int]:
        return frozenset(self.index[g] for g in elements)

    def conjugate_set(self, subset: Iterable[int], g: int) -> frozenset[int]:
        mul, gi = self.mul, self.inv[g]
        return frozenset(mul[mul[gi][h]][g] for h in subset)


class PermutationGroup:
    """A finite group of permutations of ``{0..degree-1}``.

    The element set is materialised lazily and hashed, so membership is O(1).
    Two groups compare equal when they have the same degree and element set.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (), *,
                 cap: int = DEFAULT_ELEMENT_CAP, _elements: frozenset | None = None):
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in group of degree {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.cap = cap
        if _elements is not None:
            self.__dict__["elements"] = _elements

    @classmethod
    def trivial(cls, degree: int) -> PermutationGroup:
        return cls(degree, (), _elements=frozenset([Permutation.identity(degree)]))

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[Permutation], *,
                      cap: int = DEFAULT_ELEMENT_CAP) -> PermutationGroup:
        """Wrap a set already known to be a subgroup; generators are picked greedily."""
        elements = frozenset(elements)
        gens: list[Permutation] = []
        current = frozenset([Permutation.identity(degree)])
        for g in sorted(elements):
            if g not in current:
                gens.append(g)
                current = _closure(gens, degree, cap, start=current)
        if current != elements:
            raise NotSubgroup("element set is not closed under multiplication")
        return cls(degree, gens, cap=cap, _elements=elements)

    @classmethod
    def from_indices(cls, ambient: PermutationGroup, idx: Iterable[int]) -> PermutationGroup:
        """Subgroup of ``ambient`` given by indices into its Cayley table.

        The index set must already be closed; generators are chosen greedily
        (in index order) using the table, so no permutation products are formed.
        """
        T = ambient.table
        mul = T.mul
        idx = sorted(idx)
        gens: list[int] = []
        span = {0}
        for x in idx:
            if x in span:
                continue
            gens.append(x)
            frontier = list(span)
            while frontier:
                nxt = []
                for a in frontier:
                    row = mul[a]
                    for s in gens:
                        b = row[s]
                        if b not in span:
                            span.add(b)
                            nxt.append(b)
                frontier = nxt
        if len(span) != len(idx):
            raise NotSubgroup("index set is not closed under multiplication")
        el = T.elements
        H = cls(ambient.degree, [el[g] for g in gens], cap=ambient.cap,
                _elements=frozenset(el[i] for i in idx))
        H.__dict__["sorted_elements"] = tuple(el[i] for i in idx)
        return H

    @cached_property
    def elements(self) -> frozenset[Permutation]:
        return _closure(self.generators, self.degree, self.cap)

    @cached_property
    def sorted_elements(self) -> tuple[Permutation, ...]:
        return tuple(sorted(self.elements))

    @cached_property
    def table(self) -> CayleyTable:
        return CayleyTable(self.sorted_elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.sorted_elements)

    def __contains__(self, g) -> bool:
        return g in self.elements

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    @cached_property
    def _hash(self) -> int:
        return hash((self.degree, self.elements))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"<PermutationGroup degree={self.degree} order={self.order} gens=[{gens}]>"

    def is_trivial(self) -> bool:
        return not self.generators

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    @cached_property
    def order_statistics(self) -> tuple[tuple[int, int], ...]:
        """Sorted ``(element order, count)`` pairs: a cheap isomorphism invariant."""
        counts: dict[int, int] = {}
        for g in self.elements:
            o = g.order()
            counts[o] = counts.get(o, 0) + 1
        return tuple(sorted(counts.items()))

    def to_dict(self) -> dict:
        return {"degree": self.degree, "generators": [str(g) for g in self.generators]}

    @classmethod
    def from_dict(cls, data: dict, *, cap: int = DEFAULT_ELEMENT_CAP) -> PermutationGroup:
        degree = int(data["degree"])
        gens = [Permutation.from_cycles(s, degree) for s in data["generators"]]
        return cls(degree, gens, cap=cap)


def generate(degree: int, generators: Iterable[Permutation], *,
             cap: int = DEFAULT_ELEMENT_CAP) -> PermutationGroup:
    G = PermutationGroup(degree, generators, cap=cap)
    G.elements  # force closure so cap overruns surface here
    return G


def _check_degree(*groups) -> None:
    degrees = {g.degree for g in groups}
    if len(degrees) > 1:
        raise DegreeMismatch(f"degree mismatch: {sorted(degrees)}")


def is_subgroup(H: PermutationGroup, G: PermutationGroup) -> bool:
    _check_degree(H, G)
    return H.elements <= G.elements


def is_normal(H: PermutationGroup, G: PermutationGroup) -> bool:
    if not is_subgroup(H, G):
        return False
    elems = H.elements
    for g in G.generators:
        gi = g.inverse()
        for h in H.generators:
            if gi * h * g not in elems:
                return False
    return True


def subgroup_conjugate(H: PermutationGroup, g: Permutation) -> PermutationGroup:
    """``H^g = {g^-1 h g}``."""
    if len(g) != H.degree:
        raise DegreeMismatch(f"degrees {H.degree} and {len(g)}")
    gi = g.inverse()
    elems = frozenset(gi * h * g for h in H.elements)
    return PermutationGroup(H.degree, [gi * h * g for h in H.generators],
                            cap=H.cap, _elements=elems)


def intersection(A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    _check_degree(A, B)
    return PermutationGroup.from_elements(A.degree, A.elements & B.elements, cap=A.cap)


def join(A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    """The subgroup generated by ``A`` and ``B``."""
    _check_degree(A, B)
    return generate(A.degree, A.generators + B.generators, cap=A.cap)


def product_set_size(A: PermutationGroup, B: PermutationGroup) -> int:
    """``|AB| = |A||B| / |A n B|``; valid for any pair of subgroups."""
    return A.order * B.order // len(A.elements & B.elements)


def transversal(G: PermutationGroup, H: PermutationGroup) -> list[Permutation]:
    """One representative per right coset ``Hg``; the identity comes first."""
    if not is_subgroup(H, G):
        raise NotSubgroup("H is not a subgroup of G")
    covered: set[Permutation] = set()
    reps = []
    helems = H.sorted_elements
    for g in G.sorted_elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(h * g for h in helems)
    return reps


def extend_generator_map(gens: Sequence[Permutation], images: Sequence[Permutation],
                         source_identity: Permutation, target_identity: Permutation
                         ) -> dict[Permutation, Permutation] | None:
    """Extend ``gens[i] -> images[i]`` multiplicatively over ``<gens>``.

    Returns None when two words for the same element get different images,
    i.e. when no homomorphism has these generator images.
    """
    pairs = list(zip(gens, images))
    image = {source_identity: target_identity}
    frontier = [source_identity]
    while frontier:
        nxt = []
        for x in frontier:
            fx = image[x]
            for s, fs in pairs:
                y = x * s
                fy = fx * fs
                seen = image.get(y)
                if seen is None:
                    image[y] = fy
                    nxt.append(y)
                elif seen != fy:
                    return None
        frontier = nxt
    return image


class GroupHom:
    """A homomorphism given by images of the source generators.

    The full element map is built on first use by a BFS along generator edges;
    any inconsistency means the images do not define a homomorphism.
    """

    def __init__(self, source: PermutationGroup, target: PermutationGroup,
                 generator_images: Sequence[Permutation]):
        if len(generator_images) != len(source.generators):
            raise PreconditionError("one image per source generator required")
        self.source = source
        self.target = target
        self.generator_images = tuple(generator_images)
        for img in self.generator_images:
            if img not in target:
                raise PreconditionError(f"image {img} not in target group")

    @cached_property
    def mapping(self) -> dict[Permutation, Permutation]:
        image = extend_generator_map(self.source.generators, self.generator_images,
                                     self.source.identity, self.target.identity)
        if image is None:
            raise PreconditionError("generator images do not extend to a homomorphism")
        return image

    def is_valid(self) -> bool:
        try:
            self.mapping
        except PreconditionError:
            return False
        return True

    def __call__(self, g: Permutation) -> Permutation:
        return self.mapping[g]

    def kernel(self) -> PermutationGroup:
        one = self.target.identity
        return PermutationGroup.from_elements(
            self.source.degree, (g for g, h in self.mapping.items() if h == one),
            cap=self.source.cap)

    def image(self, H: PermutationGroup | None = None) -> PermutationGroup:
        H = self.source if H is None else H
        m = self.mapping
        return PermutationGroup(self.target.degree, [m[g] for g in H.generators],
                                cap=self.target.cap,
                                _elements=frozenset(m[g] for g in H.elements))

    def preimage(self, K: PermutationGroup) -> PermutationGroup:
        kel = K.elements
        return PermutationGroup.from_elements(
            self.source.degree, (g for g, h in self.mapping.items() if h in kel),
            cap=self.source.cap)

    def lift(self, h: Permutation) -> Permutation:
        """Smallest preimage of ``h`` in canonical order."""
        for g in self.source.sorted_elements:
            if self.mapping[g] == h:
                return g
        raise PreconditionError(f"{h} is not in the image")


def quotient_representation(G: PermutationGroup, A: PermutationGroup
                            ) -> tuple[PermutationGroup, GroupHom]:
    """G/A acting on the right cosets of A, plus the projection G -> G/A."""
    if not is_normal(A, G):
        raise NotNormal("A is not normal in G")
    reps = transversal(G, A)
    coset_of: dict[Permutation, int] = {}
    for i, r in enumerate(reps):
        for a in A.elements:
            coset_of[a * r] = i

    def image(g: Permutation) -> Permutation:
        return _perm(coset_of[r * g] for r in reps)

    gen_images = [image(g) for g in G.generators]
    Q = PermutationGroup(len(reps), gen_images, cap=G.cap)
    elems = frozenset(image(r) for r in reps)
    Q.__dict__["elements"] = elems
    return Q, GroupHom(G, Q, gen_images)
