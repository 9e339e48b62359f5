"""Finite G-sets and the two fixed-point finders.

Actions are left actions: ``(g h) . w == g . (h . w)`` where ``g h`` is the
group product ``g * h``.  The natural action of a permutation group is
``g . w = g^-1(w)`` under that convention (so its orbits and stabilisers are
the usual ones).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .complements import (RecursionGap, _complement_search, _to_group, conjugacy_via_local_abelian,
                          containment_witness, locally_conjugate, supplement_contains_conjugate)
from .errors import HypothesesUnmet, InvariantViolation, PreconditionError, TheoremViolation
from .perm import (Permutation, PermutationGroup, intersection, is_normal, is_subgroup,
                   product_set_size, transversal)
from .structure import is_nilpotent, is_supersoluble, p_part, prime_divisors, sylow_subgroup


class GAction:
    """G acting on ``range(points)``, given by one image row per generator of G."""

    def __init__(self, group: PermutationGroup, points: int,
                 generator_rows: Sequence[Sequence[int]]):
        self.group = group
        self.points = points
        self.generator_rows = tuple(tuple(r) for r in generator_rows)
        if points < 1:
            raise PreconditionError("an action needs at least one point")
        if len(self.generator_rows) != len(group.generators):
            raise PreconditionError("one row per generator of G required")
        for row in self.generator_rows:
            if sorted(row) != list(range(points)):
                raise PreconditionError("generator row is not a permutation of the points")
        self._check_homomorphism()

    @classmethod
    def natural(cls, G: PermutationGroup) -> GAction:
        rows = [tuple(g.inverse()) for g in G.generators]
        return cls(G, G.degree, rows)

    @cached_property
    def rows(self) -> list[tuple[int, ...]]:
        """``rows[i][w] == g_i . w`` where ``g_i`` is element ``i`` of ``G.table``."""
        T = self.group.table
        mul = T.mul
        pts = range(self.points)
        out: list[tuple[int, ...] | None] = [None] * len(T)
        out[0] = tuple(pts)
        gens = [(T.index[s], srow) for s, srow in zip(self.group.generators, self.generator_rows)]
        frontier = [0]
        while frontier:
            nxt = []
            for g in frontier:
                row, mrow = out[g], mul[g]
                for s, srow in gens:
                    h = mrow[s]
                    if out[h] is None:
                        out[h] = tuple([row[srow[w]] for w in pts])
                        nxt.append(h)
            frontier = nxt
        return out

    @cached_property
    def table(self) -> dict[Permutation, tuple[int, ...]]:
        """``table[g][w] == g . w`` for every g in G."""
        return dict(zip(self.group.table.elements, self.rows))

    def _check_homomorphism(self) -> None:
        # well defined iff each relation g*s computed along different words agrees
        T = self.group.table
        mul = T.mul
        rows = self.rows
        if any(r is None for r in rows):
            raise InvariantViolation("word extension did not reach every element")
        pts = range(self.points)
        gens = [(T.index[s], srow) for s, srow in zip(self.group.generators, self.generator_rows)]
        for g, row in enumerate(rows):
            mrow = mul[g]
            for s, srow in gens:
                if rows[mrow[s]] != tuple([row[srow[w]] for w in pts]):
                    raise PreconditionError("generator rows do not define an action of G")

    def act(self, g: Permutation, w: int) -> int:
        return self.table[g][w]

    def to_dict(self) -> dict:
        return {"points": self.points, "generator_rows": [list(r) for r in self.generator_rows]}

    @classmethod
    def from_dict(cls, group: PermutationGroup, data: dict) -> GAction:
        return cls(group, data["points"], data["generator_rows"])


def coset_action(G: PermutationGroup, H: PermutationGroup) -> GAction:
    """G on the left cosets xH; point 0 is H itself."""
    if not is_subgroup(H, G):
        raise PreconditionError("H is not a subgroup of G")
    reps = [t.inverse() for t in transversal(G, H)]
    where = {}
    for i, x in enumerate(reps):
        for h in H.elements:
            where[x * h] = i
    rows = [tuple(where[s * x] for x in reps) for s in G.generators]
    return GAction(G, len(reps), rows)


def orbits(action: GAction, H: PermutationGroup | None = None) -> list[list[int]]:
    H = action.group if H is None else H
    rows = [action.table[h] for h in H.generators]
    seen = [False] * action.points
    out = []
    for start in range(action.points):
        if seen[start]:
            continue
        seen[start] = True
        orb, frontier = [start], [start]
        while frontier:
            nxt = []
            for w in frontier:
                for row in rows:
                    v = row[w]
                    if not seen[v]:
                        seen[v] = True
                        orb.append(v)
                        nxt.append(v)
            frontier = nxt
        out.append(sorted(orb))
    return out


def is_transitive_on_restriction(action: GAction, N: PermutationGroup) -> bool:
    if not is_subgroup(N, action.group):
        raise PreconditionError("N is not a subgroup of the acting group")
    return len(orbits(action, N)) == 1


def stabilizer(action: GAction, alpha: int) -> PermutationGroup:
    G = action.group
    return PermutationGroup.from_indices(
        G, [i for i, row in enumerate(action.rows) if row[alpha] == alpha])


def fixed_points(action: GAction, H: PermutationGroup) -> list[int]:
    rows = [action.table[h] for h in H.generators]
    return [w for w in range(action.points) if all(row[w] == w for row in rows)]


# ---------------------------------------------------------------------------
# fixed-point finders


FIXED = "fixed"
UNMET = "hypotheses-unmet"
VIOLATION = "violation"


@dataclass
class FixedPointResult:
    status: str
    point: int | None = None
    conjugator: Permutation | None = None
    stage: str | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"status": self.status, "point": self.point,
               "conjugator": None if self.conjugator is None else str(self.conjugator),
               "stage": self.stage}
        if self.detail:
            out["detail"] = self.detail
        return out


def _setup(G, N, J, action) -> None:
    if action.group != G:
        raise PreconditionError("action is not an action of G")
    if not is_normal(N, G):
        raise PreconditionError("N is not normal in G")
    if product_set_size(N, J) != G.order or len(N.elements & J.elements) != 1:
        raise PreconditionError("J is not a complement of N in G")
    if not is_transitive_on_restriction(action, N):
        raise PreconditionError("N is not transitive")


def sylow_hypothesis(G, N, J, action, alpha: int = 0) -> dict[int, Permutation | None]:
    """Per prime p: n in N with ``(J_p)^n <= G_alpha`` for a fixed Sylow J_p of J.

    By transitivity of N this is equivalent to J_p fixing some point.
    """
    Ga = stabilizer(action, alpha)
    return {p: containment_witness(sylow_subgroup(J, p), Ga, G, pool=N)
            for p in prime_divisors(J)}


def _hypothesis_or_unmet(G, N, J, action, alpha):
    hyp = sylow_hypothesis(G, N, J, action, alpha)
    missing = [p for p, n in hyp.items() if n is None]
    for p in missing:
        # the N-conjugate search must agree with a direct fixed-point scan
        if fixed_points(action, sylow_subgroup(J, p)):
            raise InvariantViolation("Sylow subgroup fixes a point but no N-conjugate lies in G_alpha")
    return hyp, missing


def _finish(action, J, g, alpha, stage) -> FixedPointResult:
    w = action.act(g, alpha)
    if w not in fixed_points(action, J):
        raise InvariantViolation(f"{stage}: constructed point is not fixed by J")
    return FixedPointResult(FIXED, w, g, stage)


def find_fixed_point_abelian(G: PermutationGroup, N: PermutationGroup, J: PermutationGroup,
                             action: GAction, alpha: int = 0) -> FixedPointResult:
    """J-fixed point for abelian N via a splitting of the stabiliser.

    The complement J' of N n G_alpha is taken as the first one (canonical
    order) that is locally conjugate to J; ``detail['first_choice']`` records
    whether that was the very first complement found.
    """
    if not N.is_abelian:
        raise PreconditionError("N is not abelian")
    _setup(G, N, J, action)
    hyp, missing = _hypothesis_or_unmet(G, N, J, action, alpha)
    if missing:
        return FixedPointResult(UNMET, detail={"primes_without_fixed_point": missing})
    Ga = stabilizer(action, alpha)
    if product_set_size(N, Ga) != G.order:
        raise InvariantViolation("stabiliser does not supplement a transitive N")
    L = intersection(N, Ga)
    # per-prime splitting evidence: L_p (J_p)^n is a Sylow subgroup of G_alpha
    for p, n in hyp.items():
        P = sylow_subgroup(J, p)
        Pn = PermutationGroup(G.degree, [n.inverse() * x * n for x in P.generators], cap=G.cap)
        Lp = sylow_subgroup(L, p)
        if product_set_size(Lp, Pn) != p_part(Ga.order, p):
            raise InvariantViolation("L_p P^n is not a Sylow subgroup of the stabiliser")
    chosen = None
    first = True
    for idx in _complement_search(Ga, L):
        cand = _to_group(Ga, idx)
        if locally_conjugate(J, cand, G):
            chosen = cand
            break
        first = False
    if chosen is None:
        stage = "gaschutz" if first else "local-conjugacy"
        return FixedPointResult(VIOLATION, stage=stage,
                                detail={"stabilizer": Ga.to_dict(), "L": L.to_dict()})
    try:
        g = conjugacy_via_local_abelian(J, chosen, G, N)
    except TheoremViolation as exc:
        return FixedPointResult(VIOLATION, stage="lem-ab", detail=exc.witness)
    res = _finish(action, J, g, alpha, "thm-ab")
    res.detail["first_choice"] = first
    return res


def find_fixed_point_nilpotent(G: PermutationGroup, N: PermutationGroup, J: PermutationGroup,
                               action: GAction, alpha: int = 0) -> FixedPointResult:
    """J-fixed point for nilpotent N in a supersoluble G via the supplement recursion."""
    if not is_nilpotent(N):
        raise PreconditionError("N is not nilpotent")
    if not is_supersoluble(G):
        raise PreconditionError("G is not supersoluble")
    _setup(G, N, J, action)
    _, missing = _hypothesis_or_unmet(G, N, J, action, alpha)
    if missing:
        return FixedPointResult(UNMET, detail={"primes_without_fixed_point": missing})
    Ga = stabilizer(action, alpha)
    try:
        g = supplement_contains_conjugate(Ga, G, N, J)
    except HypothesesUnmet:
        raise InvariantViolation("Sylow hypothesis held for N-conjugates but not for G-conjugates")
    except RecursionGap as exc:
        return FixedPointResult(VIOLATION, stage="prop-nil-split-recursion",
                                detail={"message": str(exc), **exc.witness})
    except TheoremViolation as exc:
        return FixedPointResult(VIOLATION, stage="lem-nil", detail=exc.witness)
    return _finish(action, J, g, alpha, "thm-nil")
