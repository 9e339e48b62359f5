"""Named small groups as concrete permutation groups."""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

from .construct import ActionHom, semidirect
from .perm import Permutation, PermutationGroup, _perm


def cyclic(n: int) -> PermutationGroup:
    if n == 1:
        return PermutationGroup.trivial(1)
    return PermutationGroup(n, [_perm(list(range(1, n)) + [0])])


def direct_product(*groups: PermutationGroup) -> PermutationGroup:
    degree = sum(G.degree for G in groups)
    gens = []
    shift = 0
    for G in groups:
        for g in G.generators:
            img = list(range(degree))
            for i, x in enumerate(g):
                img[shift + i] = shift + x
            gens.append(_perm(img))
        shift += G.degree
    return PermutationGroup(degree, gens)


def dihedral(n: int) -> PermutationGroup:
    """Symmetries of the n-gon, order 2n (n >= 3)."""
    r = _perm([(i + 1) % n for i in range(n)])
    s = _perm([(-i) % n for i in range(n)])
    return PermutationGroup(n, [r, s])


def symmetric(n: int) -> PermutationGroup:
    gens = [_perm(list(range(1, n)) + [0]), _perm([1, 0] + list(range(2, n)))]
    return PermutationGroup(n, gens)


def alternating(n: int) -> PermutationGroup:
    gens = []
    for k in range(2, n):
        img = list(range(n))
        img[0], img[1], img[k] = 1, k, 0
        gens.append(_perm(img))
    return PermutationGroup(n, gens)


def from_multiplication(elements: Sequence, mul: Callable, generators: Sequence
                        ) -> PermutationGroup:
    """Right regular representation of an abstractly given group."""
    index = {e: i for i, e in enumerate(elements)}

    def rho(x):
        return _perm(index[mul(y, x)] for y in elements)

    return PermutationGroup(len(elements), [rho(x) for x in generators])


def dicyclic(n: int) -> PermutationGroup:
    """<a, b | a^2n = 1, b^2 = a^n, b^-1 a b = a^-1>, order 4n (n = 2 gives Q8)."""
    m = 2 * n
    elements = [(i, j) for j in range(2) for i in range(m)]

    def mul(x, y):
        (i, j), (k, l) = x, y
        if j == 0:
            return ((i + k) % m, l)
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + n) % m, 0)

    return from_multiplication(elements, mul, [(1, 0), (0, 1)])


def heisenberg(p: int) -> PermutationGroup:
    """Upper unitriangular 3x3 matrices over F_p, order p^3."""
    elements = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return from_multiplication(elements, mul, [(1, 0, 0), (0, 1, 0)])


def metacyclic(m: int, n: int, r: int) -> PermutationGroup:
    """C_m x| C_n with the generator of C_n acting as a -> a^r."""
    if pow(r, n, m) != 1 % m:
        raise ValueError("r^n must be 1 mod m")
    A, B = cyclic(m), cyclic(n)
    a = A.generators[0]
    return semidirect(A, B, ActionHom(B, A, [[a ** r]])).whole


def sl23() -> PermutationGroup:
    """SL(2,3) as Q8 extended by an automorphism of order 3."""
    Q = dicyclic(2)
    i, j = Q.generators
    C3 = cyclic(3)
    # i -> j -> ij permutes the three quaternion subgroups cyclically
    return semidirect(Q, C3, ActionHom(C3, Q, [[j, i * j]])).whole


_BUILDERS: dict[str, Callable[[], PermutationGroup]] = {}


def _reg(name: str, fn: Callable[[], PermutationGroup]) -> None:
    _BUILDERS[name] = fn


for _n in range(2, 17):
    _reg(f"C{_n}", lambda n=_n: cyclic(n))
for _name, _parts in {
    "C2xC2": (2, 2), "C2xC4": (2, 4), "C2xC2xC2": (2, 2, 2), "C3xC3": (3, 3),
    "C2xC6": (2, 6), "C4xC4": (4, 4), "C2xC8": (2, 8), "C2xC2xC4": (2, 2, 4),
    "C3xC6": (3, 6), "C2xC10": (2, 10), "C2xC12": (2, 12), "C2xC2xC6": (2, 2, 6),
    "C5xC5": (5, 5), "C3xC9": (3, 9), "C3xC3xC3": (3, 3, 3), "C4xC8": (4, 8),
}.items():
    _reg(_name, lambda parts=_parts: direct_product(*(cyclic(k) for k in parts)))
for _n in range(3, 11):
    _reg(f"D{_n}", lambda n=_n: dihedral(n))
_reg("Q8", lambda: dicyclic(2))
_reg("Dic3", lambda: dicyclic(3))
_reg("Q16", lambda: dicyclic(4))
_reg("Dic5", lambda: dicyclic(5))
_reg("Dic6", lambda: dicyclic(6))
_reg("S3", lambda: symmetric(3))
_reg("S4", lambda: symmetric(4))
_reg("A4", lambda: alternating(4))
_reg("A5", lambda: alternating(5))
_reg("SL23", sl23)
_reg("Heis3", lambda: heisenberg(3))
_reg("M16", lambda: metacyclic(8, 2, 5))
_reg("SD16", lambda: metacyclic(8, 2, 3))
_reg("C4:C4", lambda: metacyclic(4, 4, 3))
_reg("C9:C3", lambda: metacyclic(9, 3, 4))
_reg("C7:C3", lambda: metacyclic(7, 3, 2))
_reg("F20", lambda: metacyclic(5, 4, 2))
_reg("C3:C8", lambda: metacyclic(3, 8, 2))
_reg("C2xD4", lambda: direct_product(cyclic(2), dihedral(4)))
_reg("C2xQ8", lambda: direct_product(cyclic(2), dicyclic(2)))
_reg("C3xD4", lambda: direct_product(cyclic(3), dihedral(4)))
_reg("C3xQ8", lambda: direct_product(cyclic(3), dicyclic(2)))
_reg("C3xS3", lambda: direct_product(cyclic(3), symmetric(3)))
_reg("C2xA4", lambda: direct_product(cyclic(2), alternating(4)))
_reg("C2xS4", lambda: direct_product(cyclic(2), symmetric(4)))
_reg("S3xS3", lambda: direct_product(symmetric(3), symmetric(3)))
_reg("C2xC2xS3", lambda: direct_product(cyclic(2), cyclic(2), symmetric(3)))
_reg("C4xS3", lambda: direct_product(cyclic(4), symmetric(3)))


def names() -> list[str]:
    return sorted(_BUILDERS)


@lru_cache(maxsize=None)
def group(name: str) -> PermutationGroup:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog group {name!r}") from None


# Orderings used by the corpus generator: normal-subgroup candidates N
# (nilpotent) and acting groups J.
NILPOTENT_N = [
    "C2", "C3", "C4", "C2xC2", "C5", "C6", "C7", "C8", "C2xC4", "C2xC2xC2", "D4", "Q8",
    "C9", "C3xC3", "C10", "C11", "C12", "C2xC6", "C13", "C14", "C15", "C16", "C4xC4",
    "C2xC8", "C2xC2xC4", "D8", "Q16", "C2xD4", "C2xQ8", "C4:C4", "M16", "SD16", "C3xC6",
    "C2xC10", "C2xC12", "C2xC2xC6", "C3xD4", "C3xQ8", "C5xC5", "Heis3", "C9:C3", "C3xC9",
    "C3xC3xC3",
]
ACTING_J = [
    "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4", "C2xC2xC2", "D4", "Q8",
    "C9", "C3xC3", "C10", "D5", "C11", "C12", "C2xC6", "A4", "D6", "Dic3", "C13", "C14",
    "D7", "C15", "C16", "C4xC4", "C2xC8", "C2xD4", "C2xQ8", "D8", "Q16", "C4:C4", "M16",
    "SD16", "C2xC2xC4", "C3xS3", "C3xC6", "D9", "F20", "D10", "Dic5", "C7:C3", "S4",
    "SL23", "C2xA4", "C3:C8", "C3xD4", "C3xQ8", "C4xS3", "C2xC2xS3", "Dic6", "C2xC12",
    "C2xC2xC6", "C3xC9", "Heis3", "C9:C3", "C3xC3xC3", "S3xS3",
]
