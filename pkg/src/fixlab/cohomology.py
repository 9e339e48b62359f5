"""Crossed homomorphisms and the pointed set H^1(J, N).

A :class:`CocycleContext` is a pair (N, K) of subgroups of one ambient
permutation group, with K normalising N and meeting it trivially.  K acts on N
by ``alpha_k(n) = k n k^-1`` (:func:`fixlab.construct.left_action`), so the
ambient group itself never needs to be passed around: restriction to a
subgroup of K, conjugating K, or shrinking N all just build a new context.

Cocycle tables are stored as tuples of N-indices aligned with
``K.sorted_elements``; index 0 is the identity in both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Mapping

from .construct import left_action
from .errors import InvariantViolation, PreconditionError
from .perm import (Permutation, PermutationGroup, intersection, is_normal, is_subgroup,
                   subgroup_conjugate, transversal)
from .structure import (SylowSystem, is_nilpotent, prime_divisors, sylow_subgroup)


@dataclass(frozen=True, eq=True)
class CocycleContext:
    N: PermutationGroup
    K: PermutationGroup

    def __post_init__(self):
        if self.N.degree != self.K.degree:
            raise PreconditionError("N and K live in different degrees")
        nel = self.N.elements
        for k in self.K.generators:
            ki = k.inverse()
            if any(ki * n * k not in nel for n in self.N.generators):
                raise PreconditionError("K does not normalise N")
        if len(nel & self.K.elements) != 1:
            raise PreconditionError("K meets N nontrivially")

    @classmethod
    def from_semidirect(cls, sd) -> CocycleContext:
        return cls(sd.N_sub, sd.J_sub)

    @cached_property
    def alpha(self) -> list[list[int]]:
        """``alpha[k][n]``: index of ``k n k^-1`` (k, n as sorted indices)."""
        nidx = self.N.table.index
        nel = self.N.sorted_elements
        return [[nidx[left_action(k, n)] for n in nel] for k in self.K.sorted_elements]

    @cached_property
    def factor(self) -> dict[Permutation, tuple[int, int]]:
        """Element ``n k`` of NK -> (n index, k index)."""
        out = {}
        for a, n in enumerate(self.N.sorted_elements):
            for b, k in enumerate(self.K.sorted_elements):
                out[n * k] = (a, b)
        return out

    def restricted(self, L: PermutationGroup) -> CocycleContext:
        if not is_subgroup(L, self.K):
            raise PreconditionError("restriction target is not a subgroup of K")
        return CocycleContext(self.N, L)

    def n_index(self, n: Permutation) -> int:
        return self.N.table.index[n]


class CrossedHom:
    """A 1-cocycle ``K -> N``: ``phi(k k') = phi(k) alpha_k(phi(k'))``."""

    __slots__ = ("context", "values")

    def __init__(self, context: CocycleContext, values):
        self.context = context
        self.values = tuple(values)
        if len(self.values) != context.K.order:
            raise PreconditionError("cocycle table must be total on K")

    @classmethod
    def from_table(cls, context: CocycleContext, table: Mapping[Permutation, Permutation]
                   ) -> CrossedHom:
        nidx = context.N.table.index
        return cls(context, [nidx[table[k]] for k in context.K.sorted_elements])

    @classmethod
    def trivial(cls, context: CocycleContext) -> CrossedHom:
        return cls(context, [0] * context.K.order)

    @property
    def table(self) -> dict[Permutation, Permutation]:
        nel = self.context.N.sorted_elements
        return {k: nel[v] for k, v in zip(self.context.K.sorted_elements, self.values)}

    def __call__(self, k: Permutation) -> Permutation:
        ctx = self.context
        return ctx.N.sorted_elements[self.values[ctx.K.table.index[k]]]

    def __eq__(self, other) -> bool:
        return (isinstance(other, CrossedHom) and self.context == other.context
                and self.values == other.values)

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"<CrossedHom |K|={self.context.K.order} values={self.values}>"

    def is_trivial(self) -> bool:
        return not any(self.values)

    def to_dict(self) -> dict[str, str]:
        return {str(k): str(v) for k, v in self.table.items()}


def _is_cocycle_values(ctx: CocycleContext, values) -> bool:
    kmul = ctx.K.table.mul
    nmul = ctx.N.table.mul
    alpha = ctx.alpha
    m = len(values)
    for a in range(m):
        va, al = values[a], alpha[a]
        row = kmul[a]
        for b in range(m):
            if values[row[b]] != nmul[va][al[values[b]]]:
                return False
    return True


def is_cocycle(context: CocycleContext, table) -> bool:
    """Check the cocycle identity on all |K|^2 pairs."""
    if isinstance(table, CrossedHom):
        values = table.values
    elif isinstance(table, Mapping):
        try:
            values = CrossedHom.from_table(context, table).values
        except KeyError:
            return False
    else:
        values = tuple(table)
    return len(values) == context.K.order and _is_cocycle_values(context, values)


def twist(phi: CrossedHom, n: int) -> CrossedHom:
    """The cohomologous cocycle ``k -> n^-1 phi(k) alpha_k(n)`` (n as an index)."""
    return CrossedHom(phi.context, _twist_values(phi.context, phi.values, n))


def _twist_values(ctx: CocycleContext, values, n: int) -> tuple[int, ...]:
    nmul = ctx.N.table.mul
    ninv = ctx.N.table.inv[n]
    alpha = ctx.alpha
    row = nmul[ninv]
    return tuple(nmul[row[v]][alpha[k][n]] for k, v in enumerate(values))


def coboundary_witness(phi: CrossedHom, psi: CrossedHom) -> Permutation | None:
    """First n (canonical order) with ``psi(k) = n^-1 phi(k) alpha_k(n)`` for all k."""
    if phi.context != psi.context:
        raise PreconditionError("cocycles live in different contexts")
    ctx = phi.context
    for n in range(ctx.N.order):
        if _twist_values(ctx, phi.values, n) == psi.values:
            return ctx.N.sorted_elements[n]
    return None


def cohomologous(phi: CrossedHom, psi: CrossedHom) -> bool:
    return coboundary_witness(phi, psi) is not None


def complement_from_cocycle(phi: CrossedHom) -> PermutationGroup:
    """``F(phi) = {phi(k) k}``."""
    ctx = phi.context
    nel = ctx.N.sorted_elements
    kel = ctx.K.sorted_elements
    elems = [nel[v] * k for k, v in zip(kel, phi.values)]
    gens = [nel[phi.values[ctx.K.table.index[s]]] * s for s in ctx.K.generators]
    return PermutationGroup(ctx.K.degree, gens, cap=ctx.K.cap, _elements=frozenset(elems))


def cocycle_from_complement(context: CocycleContext, H: PermutationGroup) -> CrossedHom:
    """Factor each element of a complement H of N in NK as ``n k``; ``phi(k) = n``."""
    values = [None] * context.K.order
    if H.order != context.K.order:
        raise PreconditionError("H is not a complement of N in NK")
    for h in H.elements:
        nk = context.factor.get(h)
        if nk is None:
            raise PreconditionError("H is not contained in NK")
        a, b = nk
        if values[b] is not None:
            raise PreconditionError("H meets N nontrivially")
        values[b] = a
    return CrossedHom(context, values)


def _extend_on_generators(ctx: CocycleContext, gens: list[int], vals: list[int]
                          ) -> dict[int, int] | None:
    """BFS along ``phi(x s) = phi(x) alpha_x(phi(s))``; None on a clash."""
    kmul = ctx.K.table.mul
    nmul = ctx.N.table.mul
    alpha = ctx.alpha
    phi = {0: 0}
    frontier = [0]
    pairs = list(zip(gens, vals))
    while frontier:
        nxt = []
        for x in frontier:
            fx, ax = phi[x], alpha[x]
            for s, fs in pairs:
                y = kmul[x][s]
                fy = nmul[fx][ax[fs]]
                seen = phi.get(y)
                if seen is None:
                    phi[y] = fy
                    nxt.append(y)
                elif seen != fy:
                    return None
        frontier = nxt
    return phi


def enumerate_cocycles(context: CocycleContext) -> list[CrossedHom]:
    """All of Z^1(K, N), sorted by table.

    Values are assigned generator by generator; each partial assignment is
    extended over the subgroup generated so far and pruned on any clash.
    """
    K = context.K
    kidx = K.table.index
    gens = [kidx[s] for s in K.generators]
    if not gens:
        return [CrossedHom.trivial(context)]
    nN = context.N.order
    out = []

    def rec(i: int, vals: list[int]) -> None:
        if i == len(gens):
            phi = _extend_on_generators(context, gens, vals)
            out.append(CrossedHom(context, [phi[k] for k in range(K.order)]))
            return
        for v in range(nN):
            trial = vals + [v]
            if _extend_on_generators(context, gens[:i + 1], trial) is not None:
                rec(i + 1, trial)

    rec(0, [])
    out.sort(key=lambda c: c.values)
    return out


def enumerate_cocycles_bruteforce(context: CocycleContext) -> list[CrossedHom]:
    """Oracle: scan all |N|^|K| tables.  Only for tiny contexts."""
    out = []
    for vals in product(range(context.N.order), repeat=context.K.order):
        if vals[0] == 0 and _is_cocycle_values(context, vals):
            out.append(CrossedHom(context, vals))
    return out


@dataclass
class PointedH1:
    """H^1(K, N): class representatives with the distinguished class first."""

    context: CocycleContext
    cocycles: list[CrossedHom]
    class_of: dict[tuple, int]
    classes: list[CrossedHom] = field(default_factory=list)
    distinguished_index: int = 0

    def __len__(self) -> int:
        return len(self.classes)

    def classify(self, phi: CrossedHom) -> int:
        if phi.context != self.context:
            raise PreconditionError("cocycle from another context")
        try:
            return self.class_of[phi.values]
        except KeyError:
            raise PreconditionError("table is not a cocycle") from None

    def class_members(self, index: int) -> list[CrossedHom]:
        return [c for c in self.cocycles if self.class_of[c.values] == index]


@lru_cache(maxsize=512)
def compute_h1(context: CocycleContext) -> PointedH1:
    cocycles = enumerate_cocycles(context)
    class_of: dict[tuple, int] = {}
    reps = []
    nN = context.N.order
    for phi in cocycles:
        if phi.values in class_of:
            continue
        idx = len(reps)
        reps.append(phi)
        for n in range(nN):
            class_of[_twist_values(context, phi.values, n)] = idx
    if len(class_of) != len(cocycles):
        raise InvariantViolation("coboundary orbit left Z^1")
    if reps[0].values != (0,) * context.K.order:
        raise InvariantViolation("distinguished class is not first")
    return PointedH1(context, cocycles, class_of, reps, 0)


def restrict(phi: CrossedHom, L: PermutationGroup) -> CrossedHom:
    ctx = phi.context
    sub = ctx.restricted(L)
    kidx = ctx.K.table.index
    return CrossedHom(sub, [phi.values[kidx[x]] for x in L.sorted_elements])


def act_on_cocycle(phi: CrossedHom, j: Permutation) -> CrossedHom:
    """``phi^j(x) = phi(x^(j^-1))^j`` on ``K^j``; j must normalise N."""
    ctx = phi.context
    Kj = subgroup_conjugate(ctx.K, j)
    new = CocycleContext(ctx.N, Kj)
    ji = j.inverse()
    table = {}
    for x in Kj.sorted_elements:
        y = j * x * ji
        table[x] = ji * phi(y) * j
    return CrossedHom.from_table(new, table)


def is_J_invariant(phi: CrossedHom, J: PermutationGroup, *, exhaustive: bool = False) -> bool:
    """``res(phi) ~ res(phi^j)`` on ``K n K^j`` for every j.

    By default j runs over a right transversal of K in J; the condition only
    depends on the coset Kj.  ``exhaustive=True`` checks every j in J.
    """
    K = phi.context.K
    if not is_subgroup(K, J):
        raise PreconditionError("K is not a subgroup of J")
    js = J.sorted_elements if exhaustive else transversal(J, K)
    for j in js:
        phij = act_on_cocycle(phi, j)
        L = intersection(K, phij.context.K)
        if coboundary_witness(restrict(phi, L), restrict(phij, L)) is None:
            return False
    return True


def invariant_h1(context: CocycleContext, J: PermutationGroup) -> list[int]:
    """Indices of the J-invariant classes of H^1(K, N)."""
    h1 = compute_h1(context)
    return [i for i, rep in enumerate(h1.classes) if is_J_invariant(rep, J)]


def product_cocycle(phi: CrossedHom, psi: CrossedHom) -> CrossedHom:
    """Pointwise product; a cocycle whenever N is abelian."""
    if phi.context != psi.context:
        raise PreconditionError("cocycles live in different contexts")
    nmul = phi.context.N.table.mul
    return CrossedHom(phi.context, [nmul[a][b] for a, b in zip(phi.values, psi.values)])


# ---------------------------------------------------------------------------
# decomposition checks


@dataclass
class DecompositionReport:
    ok: bool
    source_size: int
    factor_sizes: dict[int, int]
    failures: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def fail(self, stage: str, **data) -> None:
        self.ok = False
        self.failures.append({"stage": stage, **data})

    def to_dict(self) -> dict:
        return {"ok": self.ok, "source_size": self.source_size,
                "factor_sizes": {str(p): s for p, s in sorted(self.factor_sizes.items())},
                "failures": self.failures, "notes": self.notes}


def restriction_product_check(context: CocycleContext, sylows: SylowSystem, *,
                              homomorphism: bool = False) -> DecompositionReport:
    """Check ``phi -> (phi|J_p)_p`` is a bijection H^1(J,N) -> prod_p inv_J H^1(J_p,N).

    ``sylows`` must be a Sylow system of ``context.K``.  With
    ``homomorphism=True`` (N abelian) also check the map respects the
    pointwise product on classes.
    """
    J = context.K
    h1 = compute_h1(context)
    primes = [p for p in sylows.primes if sylows.per_prime[p].order > 1]
    targets = {}
    inv_sets = {}
    for p in primes:
        sub = context.restricted(sylows.per_prime[p])
        targets[p] = compute_h1(sub)
        inv_sets[p] = set(invariant_h1(sub, J))
    report = DecompositionReport(True, len(h1), {p: len(inv_sets[p]) for p in primes})
    report.notes["h1_sylow_sizes"] = {str(p): len(targets[p]) for p in primes}

    def image(phi: CrossedHom) -> tuple[int, ...]:
        return tuple(targets[p].classify(restrict(phi, sylows.per_prime[p])) for p in primes)

    class_image = {}
    for phi in h1.cocycles:
        c = h1.classify(phi)
        img = image(phi)
        if class_image.setdefault(c, img) != img:
            report.fail("well-defined", cls=c)
    for c, img in sorted(class_image.items()):
        for p, t in zip(primes, img):
            if t not in inv_sets[p]:
                report.fail("image-not-invariant", cls=c, prime=p, target=t)
    images = set(class_image.values())
    if len(images) != len(h1):
        report.fail("injective", source=len(h1), image=len(images))
    expected = 1
    for p in primes:
        expected *= len(inv_sets[p])
    if len(images) != expected:
        report.fail("surjective", image=len(images), target=expected)
    if homomorphism:
        if not context.N.is_abelian:
            raise PreconditionError("group structure on H^1 needs N abelian")
        for a, pa in enumerate(h1.classes):
            for b, pb in enumerate(h1.classes):
                ab = h1.classify(product_cocycle(pa, pb))
                want = tuple(
                    targets[p].classify(product_cocycle(restrict(pa, sylows.per_prime[p]),
                                                        restrict(pb, sylows.per_prime[p])))
                    for p in primes)
                if class_image[ab] != want:
                    report.fail("homomorphism", a=a, b=b)
    return report


def check_primary_decomposition(context: CocycleContext, sylows: SylowSystem | None = None
                                ) -> DecompositionReport:
    """H^1(J,N) ~ (+)_p inv_J H^1(J_p, N) for abelian N, as groups."""
    if not context.N.is_abelian:
        raise PreconditionError("N is not abelian")
    if sylows is None:
        sylows = SylowSystem(context.K, {p: sylow_subgroup(context.K, p)
                                         for p in prime_divisors(context.K)})
    return restriction_product_check(context, sylows, homomorphism=True)


def nilpotent_component_split(context: CocycleContext) -> DecompositionReport:
    """H^1(J,N) ~ prod_p H^1(J,N_p) via the projections N -> N_p."""
    N, J = context.N, context.K
    if not is_nilpotent(N):
        raise PreconditionError("N is not nilpotent")
    system = SylowSystem(N, {p: sylow_subgroup(N, p) for p in prime_divisors(N)})
    primes = system.primes
    subs = {p: CocycleContext(system.per_prime[p], J) for p in primes}
    targets = {p: compute_h1(subs[p]) for p in primes}
    # proj[p][a] = index in N_p of the p-component of N[a]
    proj = {p: [] for p in primes}
    for n in N.sorted_elements:
        comps = system.components(n)
        for p in primes:
            proj[p].append(subs[p].N.table.index[comps[p]])
    h1 = compute_h1(context)
    report = DecompositionReport(True, len(h1), {p: len(targets[p]) for p in primes})

    class_image = {}
    for phi in h1.cocycles:
        img = []
        for p in primes:
            vals = tuple(proj[p][v] for v in phi.values)
            comp = CrossedHom(subs[p], vals)
            if vals not in targets[p].class_of:
                report.fail("projection-not-cocycle", prime=p)
                img.append(-1)
            else:
                img.append(targets[p].classify(comp))
        img = tuple(img)
        c = h1.classify(phi)
        if class_image.setdefault(c, img) != img:
            report.fail("well-defined", cls=c)
    images = set(class_image.values())
    if len(images) != len(h1):
        report.fail("injective", source=len(h1), image=len(images))
    expected = 1
    for p in primes:
        expected *= len(targets[p])
    if len(images) != expected:
        report.fail("surjective", image=len(images), target=expected)
    if class_image.get(0) != (0,) * len(primes):
        report.fail("pointed", image=class_image.get(0))
    return report


def restriction_iso_check(context: CocycleContext, p: int | None = None) -> DecompositionReport:
    """``res: H^1(J,N) -> inv_J H^1(J_p,N)`` is a bijection (N a p-group)."""
    primes = prime_divisors(context.N)
    if len(primes) > 1:
        raise PreconditionError("N is not a p-group")
    if p is None:
        if not primes:
            raise PreconditionError("N is trivial")
        p = primes[0]
    J = context.K
    Jp = sylow_subgroup(J, p)
    sub = context.restricted(Jp)
    h1 = compute_h1(context)
    target = compute_h1(sub)
    inv = set(invariant_h1(sub, J))
    report = DecompositionReport(True, len(h1), {p: len(inv)})
    class_image = {}
    for phi in h1.cocycles:
        c = h1.classify(phi)
        t = target.classify(restrict(phi, Jp))
        if class_image.setdefault(c, t) != t:
            report.fail("well-defined", cls=c)
    for c, t in sorted(class_image.items()):
        if t not in inv:
            report.fail("image-not-invariant", cls=c, target=t)
    images = set(class_image.values())
    if len(images) != len(h1):
        report.fail("injective", source=len(h1), image=len(images))
    if images != inv:
        report.fail("surjective", image=len(images), target=len(inv))
    return report


# ---------------------------------------------------------------------------
# the two extension constructions


def _factor_pairs(J: PermutationGroup, A: PermutationGroup, B: PermutationGroup
                  ) -> dict[Permutation, tuple[Permutation, Permutation]]:
    """``j -> (a, b)`` with ``j = a b``; requires J = AB with A n B = 1."""
    out = {}
    for a in A.elements:
        for b in B.elements:
            out[a * b] = (a, b)
    if len(out) != J.order or set(out) != J.elements:
        raise PreconditionError("J is not the product of the two factors")
    return out


def extend_cocycle_central_q(phi: CrossedHom, Q: PermutationGroup, J: PermutationGroup
                             ) -> CrossedHom:
    """``phi~(q m) = phi(m)`` for a cocycle on M, with J = Q x| M.

    Needs Q to centralise N, which is what makes phi~ a cocycle.
    """
    ctx = phi.context
    M, N = ctx.K, ctx.N
    if not (is_normal(Q, J) and is_subgroup(M, J)):
        raise PreconditionError("need Q normal in J and M <= J")
    if any(q * n != n * q for q in Q.generators for n in N.generators):
        raise PreconditionError("Q does not act trivially on N")
    factors = _factor_pairs(J, Q, M)
    table = {j: phi(m) for j, (q, m) in factors.items()}
    return CrossedHom.from_table(CocycleContext(N, J), table)


def pointwise_invariant_representative(phi: CrossedHom, M: PermutationGroup
                                       ) -> CrossedHom | None:
    """A cohomologous table with ``phi(m h m^-1) = alpha_m(phi(h))`` exactly, if any."""
    ctx = phi.context
    H = ctx.K
    hidx = H.table.index
    nidx = ctx.N.table.index
    checks = []
    for m in M.generators:
        mi = m.inverse()
        conj = [hidx[m * h * mi] for h in H.sorted_elements]
        am = [nidx[left_action(m, n)] for n in ctx.N.sorted_elements]
        checks.append((conj, am))
    for n in range(ctx.N.order):
        vals = _twist_values(ctx, phi.values, n)
        if all(vals[conj[h]] == am[vals[h]] for conj, am in checks for h in range(len(vals))):
            return CrossedHom(ctx, vals)
    return None


def extend_invariant_cocycle_p(phi: CrossedHom, M: PermutationGroup, J: PermutationGroup
                               ) -> CrossedHom:
    """``phi~(h m) = phi(h)`` for an M-invariant cocycle on J_p, with J = J_p x| M.

    The representative is first replaced by a cohomologous one that is
    M-invariant pointwise; PreconditionError if none exists.
    """
    Jp = phi.context.K
    if not (is_normal(Jp, J) and is_subgroup(M, J)):
        raise PreconditionError("need J_p normal in J and M <= J")
    rep = pointwise_invariant_representative(phi, M)
    if rep is None:
        raise PreconditionError("class has no pointwise M-invariant representative")
    factors = _factor_pairs(J, Jp, M)
    table = {j: rep(h) for j, (h, m) in factors.items()}
    return CrossedHom.from_table(CocycleContext(phi.context.N, J), table)
