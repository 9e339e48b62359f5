"""Sylow and Hall subgroups, nilpotency, (super)solubility and friends.

Every search scans elements in canonical (sorted image-sequence) order so that
repeated runs choose identical witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvariantViolation, PreconditionError
from .perm import (Permutation, PermutationGroup, is_normal, quotient_representation)

PrimeSet = tuple  # sorted tuple of distinct primes


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (orders here are tiny)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n > 1 and factorize(n) == {n: 1}


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def prime_divisors(G: PermutationGroup | int) -> PrimeSet:
    n = G if isinstance(G, int) else G.order
    return tuple(sorted(factorize(n)))


def is_p_group(G: PermutationGroup, p: int | None = None) -> bool:
    primes = prime_divisors(G)
    if p is None:
        return len(primes) <= 1
    return all(q == p for q in primes)


def normalizer(G: PermutationGroup, H: PermutationGroup) -> PermutationGroup:
    T = G.table
    mul, inv = T.mul, T.inv
    hset = T.indices(H.elements)
    gens = [T.index[h] for h in H.generators]
    keep = [g for g in range(len(T))
            if all(mul[mul[inv[g]][h]][g] in hset for h in gens)]
    return PermutationGroup.from_indices(G, keep)


def center(G: PermutationGroup) -> PermutationGroup:
    T = G.table
    mul = T.mul
    gens = [T.index[g] for g in G.generators]
    keep = [z for z in range(len(T)) if all(mul[z][g] == mul[g][z] for g in gens)]
    return PermutationGroup.from_indices(G, keep)


def cyclic_subgroup(g: Permutation, *, cap: int | None = None) -> PermutationGroup:
    elems = []
    x = Permutation.identity(len(g))
    while True:
        elems.append(x)
        x = x * g
        if x == elems[0]:
            break
    kw = {} if cap is None else {"cap": cap}
    return PermutationGroup(len(g), [g], _elements=frozenset(elems), **kw)


@lru_cache(maxsize=8192)
def sylow_subgroup(G: PermutationGroup, p: int) -> PermutationGroup:
    """A Sylow p-subgroup, grown one normalising p-element at a time."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    target = p_part(G.order, p)
    P = PermutationGroup.trivial(G.degree)
    if target == 1:
        return P
    p_elements = [g for g in G.sorted_elements if not g.is_identity()
                  and p_part(g.order(), p) == g.order()]
    while P.order < target:
        pel = P.elements
        for x in p_elements:
            if x in pel:
                continue
            xi = x.inverse()
            if all(xi * h * x in pel for h in P.generators):
                P = PermutationGroup(G.degree, P.generators + (x,), cap=G.cap)
                break
        else:
            raise InvariantViolation(f"no p-element normalises a non-Sylow {p}-subgroup")
    if P.order != target:
        raise InvariantViolation("Sylow growth overshot the p-part")
    return P


@dataclass
class SylowSystem:
    """One chosen Sylow subgroup per prime divisor of ``group``."""

    group: PermutationGroup
    per_prime: dict[int, PermutationGroup] = field(default_factory=dict)

    @property
    def primes(self) -> PrimeSet:
        return tuple(sorted(self.per_prime))

    def components(self, n: Permutation) -> dict[int, Permutation]:
        """Split ``n`` into commuting p-parts ``n**e_p`` (CRT on the exponents).

        Only meaningful when ``group`` is nilpotent; the components multiply
        back to ``n`` in any order.
        """
        m = n.order()
        out = {}
        for p in self.primes:
            a = p_part(m, p)
            rest = m // a
            # e = 0 mod rest, e = 1 mod a
            e = 0 if a == 1 else rest * pow(rest, -1, a) % m
            out[p] = n ** e
        return out


def sylow_system(G: PermutationGroup) -> SylowSystem:
    return SylowSystem(G, {p: sylow_subgroup(G, p) for p in prime_divisors(G)})


@lru_cache(maxsize=4096)
def is_nilpotent(G: PermutationGroup) -> bool:
    return all(is_normal(sylow_subgroup(G, p), G) for p in prime_divisors(G))


def sylow_decomposition_nilpotent(N: PermutationGroup) -> SylowSystem:
    if not is_nilpotent(N):
        raise PreconditionError("group is not nilpotent")
    return sylow_system(N)


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def normal_closure(G: PermutationGroup, gens: list[Permutation]) -> PermutationGroup:
    K = PermutationGroup(G.degree, gens, cap=G.cap)
    while True:
        extra = []
        kel = K.elements
        for k in K.generators:
            for g in G.generators:
                c = g.inverse() * k * g
                if c not in kel and c not in extra:
                    extra.append(c)
        if not extra:
            return K
        K = PermutationGroup(G.degree, K.generators + tuple(extra), cap=G.cap)


def derived_subgroup(G: PermutationGroup) -> PermutationGroup:
    gens = G.generators
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(G, comms)


def is_soluble(G: PermutationGroup) -> bool:
    while not G.is_trivial():
        D = derived_subgroup(G)
        if D.order == G.order:
            return False
        G = D
    return True


def minimal_normal_of_prime_order(G: PermutationGroup,
                                  within: PermutationGroup | None = None
                                  ) -> PermutationGroup | None:
    """First normal subgroup of prime order (optionally inside ``within``)."""
    pool = G if within is None else within
    gens = G.generators
    for x in pool.sorted_elements:
        if x.is_identity() or not is_prime(x.order()):
            continue
        A = cyclic_subgroup(x, cap=G.cap)
        if all(g.inverse() * x * g in A.elements for g in gens):
            return A
    return None


@lru_cache(maxsize=4096)
def is_supersoluble(G: PermutationGroup) -> bool:
    return table_is_supersoluble(G.table)


def is_supersoluble_by_quotients(G: PermutationGroup) -> bool:
    """True iff G has a normal subgroup of prime order with supersoluble quotient.

    Any normal subgroup of prime order works: supersolubility passes to
    quotients, and a cyclic normal subgroup under a supersoluble quotient
    gives a supersoluble group.  Slow reference version of
    :func:`is_supersoluble`.
    """
    if G.order == 1 or is_prime(G.order):
        return True
    A = minimal_normal_of_prime_order(G)
    if A is None:
        return False
    Q, _ = quotient_representation(G, A)
    return is_supersoluble_by_quotients(Q)


# ---------------------------------------------------------------------------
# predicates on bare multiplication tables (index 0 = identity)


def _generators_of_table(T) -> list[int]:
    mul = T.mul
    gens: list[int] = []
    span = {0}
    for x in range(len(T)):
        if x in span:
            continue
        gens.append(x)
        span = _table_closure(mul, gens)
    return gens


def _table_closure(mul, gens, start=(0,)) -> set[int]:
    seen = set(start)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            row = mul[x]
            for s in gens:
                y = row[s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def table_order_statistics(T) -> tuple[tuple[int, int], ...]:
    mul = T.mul
    counts: dict[int, int] = {}
    for x in range(len(T)):
        k, y = 1, x
        while y != 0:
            y = mul[y][x]
            k += 1
        counts[k] = counts.get(k, 0) + 1
    return tuple(sorted(counts.items()))


def table_is_supersoluble(T) -> bool:
    """Grow a chain of normal subgroups with prime-order steps.

    At each step any x outside the current normal A with A<x> normal and
    [A<x> : A] prime may be taken, for the same reason as in
    :func:`is_supersoluble_by_quotients`.
    """
    mul, inv = T.mul, T.inv
    n = len(T)
    gens = _generators_of_table(T)
    A = {0}
    while len(A) < n:
        for x in range(n):
            if x in A:
                continue
            k, y = 1, x
            while y not in A:
                y = mul[y][x]
                k += 1
            if not is_prime(k):
                continue
            B = set(A)
            power = x
            for _ in range(k - 1):
                B.update(mul[a][power] for a in A)
                power = mul[power][x]
            if all(mul[mul[inv[g]][x]][g] in B for g in gens):
                A = B
                break
        else:
            return False
    return True


def table_is_soluble(T) -> bool:
    mul, inv = T.mul, T.inv
    D = set(range(len(T)))
    while len(D) > 1:
        comms = {mul[mul[inv[a]][inv[b]]][mul[a][b]] for a in D for b in D}
        nxt = _table_closure(mul, sorted(comms))
        if len(nxt) == len(D):
            return False
        D = nxt
    return True


def hall_complement_of_normal_sylow(J: PermutationGroup, Q: PermutationGroup) -> PermutationGroup:
    """A complement M of the normal Sylow subgroup Q (Schur-Zassenhaus)."""
    from .complements import find_complement

    if not is_normal(Q, J):
        raise PreconditionError("Q is not normal in J")
    primes = prime_divisors(Q)
    if len(primes) > 1 or (primes and p_part(J.order, primes[0]) != Q.order):
        raise PreconditionError("Q is not a Sylow subgroup of J")
    M = find_complement(J, Q)
    if M is None:
        raise InvariantViolation("normal Sylow subgroup without complement")
    return M


def largest_prime_normal_sylow(J: PermutationGroup) -> tuple[int, PermutationGroup]:
    """Sylow subgroup for the largest prime divisor; normal when J is supersoluble."""
    q = prime_divisors(J)[-1]
    return q, sylow_subgroup(J, q)
