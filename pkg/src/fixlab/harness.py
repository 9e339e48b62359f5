"""Claim-by-claim verification campaigns over the corpus.

Each claim has a per-instance check returning an :class:`Outcome`; campaigns
run the check over every corpus instance (optionally in a process pool),
merge outcomes in corpus order, and produce a :class:`ClaimReport` whose
JSON form is byte-stable for a fixed configuration.
"""

from __future__ import annotations

import json
import random
import time
from math import gcd
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .actions import (FIXED, UNMET, VIOLATION, coset_action, find_fixed_point_abelian,
                      find_fixed_point_nilpotent, fixed_points)
from .cohomology import (CocycleContext, check_primary_decomposition, coboundary_witness,
                         compute_h1, extend_cocycle_central_q, extend_invariant_cocycle_p,
                         invariant_h1, is_cocycle, nilpotent_component_split, restrict,
                         restriction_iso_check, restriction_product_check)
from .complements import (RecursionGap, conjugacy_class_key, conjugacy_class_representatives,
                          conjugacy_via_local_abelian, conjugacy_via_local_supersoluble,
                          conjugacy_witness, containment_witness, enumerate_complements,
                          enumerate_supplements, find_complement, local_class_key,
                          splits_gaschutz, supplement_contains_conjugate, sylow_conjugators)
from .corpus import CorpusConfig, Instance, corpus_generate
from .errors import FixlabError, OrderCapExceeded, PreconditionError, TheoremViolation
from .perm import PermutationGroup, intersection, is_normal, subgroup_conjugate
from .structure import (SylowSystem, is_supersoluble, normal_closure, prime_divisors,
                        sylow_subgroup, sylow_system)


@dataclass
class Outcome:
    """Result of one claim check on one instance."""

    skip: str | None = None
    failures: list[dict] = field(default_factory=list)
    stats: Counter = field(default_factory=Counter)
    finds: list[dict] = field(default_factory=list)

    def fail(self, stage: str, **witness) -> None:
        self.failures.append({"stage": stage, "witness": witness})


@dataclass
class ClaimReport:
    claim: str
    config: dict
    tested: int = 0
    skipped: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    finds: list[dict] = field(default_factory=list)
    wall_time: float | None = None

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    def to_dict(self) -> dict:
        out = {
            "claim": self.claim,
            "status": self.status,
            "config": self.config,
            "tested": self.tested,
            "skipped_count": len(self.skipped),
            "failure_count": len(self.failures),
            "stats": dict(sorted(self.stats.items())),
            "failures": self.failures,
            "skipped": self.skipped,
        }
        if self.finds or self.claim == "ls-search":
            out["finds"] = self.finds
        if self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def summary(self) -> str:
        return (f"{self.claim}: {self.status.upper()} tested={self.tested} "
                f"skipped={len(self.skipped)} failures={len(self.failures)}")


def save_report(report: ClaimReport, path: str | Path) -> None:
    Path(path).write_text(report.dumps())


def _gens(H: PermutationGroup) -> list[str]:
    return [str(g) for g in H.generators]


def _parts(inst: Instance):
    sd = inst.semidirect
    return sd.whole, sd.N_sub, sd.J_sub


# ---------------------------------------------------------------------------
# complement conjugacy (lem-ab, lem-nil)


def _local_vs_global(inst: Instance, out: Outcome, finder: Callable) -> None:
    G, N, J = _parts(inst)
    comps = enumerate_complements(G, N)
    z1 = compute_h1(CocycleContext(N, J)).cocycles
    if len(comps) != len(z1):
        out.fail("complement-count", search=len(comps), cocycles=len(z1))
    local = [local_class_key(C, G) for C in comps]
    glob = [conjugacy_class_key(C, G) for C in comps]
    reps: dict = {}
    for C, lk, gk in zip(comps, local, glob):
        rep, rep_key = reps.setdefault(lk, (C, gk))
        if C is rep:
            continue
        out.stats["locally_conjugate_pairs"] += 1
        try:
            g = finder(rep, C, G, N)
        except TheoremViolation as exc:
            out.fail("no-conjugator-in-N", **exc.witness)
            continue
        if subgroup_conjugate(rep, g) != C or g not in N.elements:
            out.fail("bad-conjugator", conjugator=str(g))
        if conjugacy_witness(rep, C, G) is None or gk != rep_key:
            out.fail("oracle-disagrees", J1=_gens(rep), J2=_gens(C))
    # the converse: different local classes never share a global class
    by_global: dict = {}
    for lk, gk in zip(local, glob):
        if by_global.setdefault(gk, lk) != lk:
            out.fail("conjugate-but-not-locally-conjugate")
    out.stats["complements"] += len(comps)
    out.stats["local_classes"] += len(reps)
    if len(set(glob)) >= 2:
        out.stats["instances_with_2plus_classes"] += 1


def check_lem_ab(inst: Instance, cfg) -> Outcome:
    out = Outcome()
    _local_vs_global(inst, out, conjugacy_via_local_abelian)
    return out


def check_lem_nil(inst: Instance, cfg) -> Outcome:
    if not inst.labels["g_supersoluble"]:
        return Outcome(skip="G not supersoluble")
    out = Outcome()
    _local_vs_global(inst, out, conjugacy_via_local_supersoluble)
    if not inst.labels["n_abelian"]:
        out.stats["nonabelian_N"] += 1
    return out


# ---------------------------------------------------------------------------
# cohomology decompositions (eq-1, eq-2, prop-nilp, prop-nil)


def _decomposition(out: Outcome, report, stage: str) -> None:
    for f in report.failures:
        out.fail(stage, **f)
    if not report.ok and not report.failures:
        out.fail(stage, message="report not ok")


def _conjugated_system(J: PermutationGroup, rng: random.Random) -> SylowSystem:
    per = {}
    for p in prime_divisors(J):
        x = J.sorted_elements[rng.randrange(J.order)]
        per[p] = subgroup_conjugate(sylow_subgroup(J, p), x)
    return SylowSystem(J, per)


def check_eq1(inst: Instance, cfg) -> Outcome:
    out = Outcome()
    G, N, J = _parts(inst)
    ctx = CocycleContext(N, J)
    rep = check_primary_decomposition(ctx, sylow_system(J))
    _decomposition(out, rep, "primary-decomposition")
    expected = 1
    for s in rep.factor_sizes.values():
        expected *= s
    if rep.source_size != expected:
        out.fail("cardinality", h1=rep.source_size, product=expected)
    if len(prime_divisors(J)) >= 2:
        out.stats["mixed_order_J"] += 1
    if rep.source_size > 1:
        out.stats["nontrivial_h1"] += 1
    # another Sylow system, chosen by seeded random conjugation
    rng = random.Random(f"{cfg.get('seed', 0)}:{inst.id}")
    if rng.random() < 0.25:
        alt = check_primary_decomposition(ctx, _conjugated_system(J, rng))
        _decomposition(out, alt, "primary-decomposition-alt-sylows")
        if alt.source_size != rep.source_size or alt.factor_sizes != rep.factor_sizes:
            out.fail("sylow-choice-dependence")
        out.stats["alt_sylow_checks"] += 1
    return out


def check_eq2(inst: Instance, cfg) -> Outcome:
    out = Outcome()
    G, N, J = _parts(inst)
    rep = nilpotent_component_split(CocycleContext(N, J))
    _decomposition(out, rep, "component-split")
    if len(prime_divisors(N)) >= 2:
        out.stats["multi_prime_N"] += 1
    if not inst.labels["n_abelian"]:
        out.stats["nonabelian_N"] += 1
    return out


def check_prop_nilp(inst: Instance, cfg) -> Outcome:
    if not inst.labels["g_supersoluble"]:
        return Outcome(skip="G not supersoluble")
    G, N, J = _parts(inst)
    primes = prime_divisors(N)
    if len(primes) != 1:
        return Outcome(skip="N not a p-group")
    p = primes[0]
    out = Outcome()
    ctx = CocycleContext(N, J)
    _decomposition(out, restriction_iso_check(ctx, p), "restriction-iso")
    jprimes = prime_divisors(J)
    if len(jprimes) < 2:
        out.stats["J_prime_power"] += 1
        return out
    q = jprimes[-1]
    Q = sylow_subgroup(J, q)
    if not is_normal(Q, J):
        out.fail("largest-prime-sylow-not-normal", q=q)
        return out
    M = find_complement(J, Q)
    if M is None:
        out.fail("no-hall-complement", q=q)
        return out
    if q != p:
        centralises = all(a * n == n * a for a in Q.generators for n in N.generators)
        if not centralises:
            out.stats["central_q_precondition_unmet"] += 1
            out.stats[f"central_q_unmet_{'p_gt_q' if p > q else 'p_lt_q'}"] += 1
            return out
        mctx = ctx.restricted(M)
        for phi in compute_h1(mctx).cocycles:
            ext = extend_cocycle_central_q(phi, Q, J)
            if not is_cocycle(ext.context, ext.table) or restrict(ext, M) != phi:
                out.fail("central-q-extension", phi=phi.to_dict())
            out.stats["central_q_extensions"] += 1
    else:
        qctx = ctx.restricted(Q)
        h1q = compute_h1(qctx)
        for idx in invariant_h1(qctx, J):
            phi = h1q.classes[idx]
            try:
                ext = extend_invariant_cocycle_p(phi, M, J)
            except PreconditionError:
                out.stats["no_pointwise_invariant_representative"] += 1
                continue
            if not is_cocycle(ext.context, ext.table):
                out.fail("invariant-p-extension-not-cocycle", phi=phi.to_dict())
            elif coboundary_witness(restrict(ext, Q), phi) is None:
                out.fail("invariant-p-extension-restriction", phi=phi.to_dict())
            out.stats["invariant_p_extensions"] += 1
    return out


def check_prop_nil(inst: Instance, cfg) -> Outcome:
    if not inst.labels["g_supersoluble"]:
        return Outcome(skip="G not supersoluble")
    out = Outcome()
    G, N, J = _parts(inst)
    rep = restriction_product_check(CocycleContext(N, J), sylow_system(J))
    _decomposition(out, rep, "restriction-product")
    if len(prime_divisors(J)) >= 2:
        out.stats["mixed_order_J"] += 1
    if not inst.labels["n_abelian"]:
        out.stats["nonabelian_N"] += 1
    return out


# ---------------------------------------------------------------------------
# splitting (gaschutz)


def _abelian_normal_subgroups(G: PermutationGroup, limit: int = 8) -> list[PermutationGroup]:
    """Distinct nontrivial abelian normal closures of single elements, smallest first."""
    found = {}
    for g in G.sorted_elements[1:]:
        A = normal_closure(G, [g])
        if A.is_abelian and A.elements not in found:
            found[A.elements] = A
    subs = sorted(found.values(), key=lambda A: (A.order, A.sorted_elements))
    return subs[:limit]


def check_gaschutz(inst: Instance, cfg) -> Outcome:
    out = Outcome()
    G, N, J = _parts(inst)
    pairs = [N] + [A for A in _abelian_normal_subgroups(G) if A != N]
    for A in pairs:
        ev = splits_gaschutz(G, A)
        direct = find_complement(G, A) is not None
        if ev.splits != direct:
            out.fail("gaschutz-disagrees", A=_gens(A), gaschutz=ev.splits, search=direct)
        if direct:
            out.stats["split_pairs"] += 1
            if gcd(A.order, G.order // A.order) > 1:
                out.stats["split_noncoprime_pairs"] += 1
        else:
            out.stats["nonsplit_pairs"] += 1
    out.stats["pairs"] += len(pairs)
    return out


# ---------------------------------------------------------------------------
# fixed points (thm-ab, thm-nil, coprime-sanity) and corollaries


def _supplement_actions(G, N):
    reps = conjugacy_class_representatives(enumerate_supplements(G, N), G)
    return [(H, coset_action(G, H)) for H in reps]


def _fixed_point_campaign(inst, out, finder, cross=None) -> None:
    G, N, J = _parts(inst)
    for H, action in _supplement_actions(G, N):
        res = finder(G, N, J, action)
        oracle = fixed_points(action, J)
        out.stats["actions"] += 1
        out.stats[f"result_{res.status}"] += 1
        if res.status == VIOLATION:
            out.fail(res.stage or "violation", H=_gens(H), **res.detail)
        elif res.status == FIXED:
            if res.point not in oracle:
                out.fail("unverified-point", H=_gens(H), point=res.point)
            if not inst.labels["coprime"]:
                out.stats["noncoprime_fixed"] += 1
            if res.detail.get("first_choice") is False:
                out.stats["complement_choice_not_first"] += 1
        elif oracle:
            out.fail("unmet-but-fixed", H=_gens(H))
        if cross is not None:
            other = cross(G, N, J, action)
            if other.status != res.status:
                out.fail("finders-disagree", H=_gens(H), nilpotent=res.status,
                         abelian=other.status)
            out.stats["cross_checked"] += 1


def check_thm_ab(inst: Instance, cfg) -> Outcome:
    out = Outcome()
    _fixed_point_campaign(inst, out, find_fixed_point_abelian)
    return out


def check_thm_nil(inst: Instance, cfg) -> Outcome:
    if not inst.labels["g_supersoluble"]:
        return Outcome(skip="G not supersoluble")
    out = Outcome()
    cross = find_fixed_point_abelian if inst.labels["n_abelian"] else None
    _fixed_point_campaign(inst, out, find_fixed_point_nilpotent, cross)
    if not inst.labels["n_abelian"]:
        out.stats["nonabelian_N"] += 1
    return out


def check_coprime(inst: Instance, cfg) -> Outcome:
    if not inst.labels["coprime"]:
        return Outcome(skip="orders not coprime")
    out = Outcome()
    G, N, J = _parts(inst)
    for H, action in _supplement_actions(G, N):
        out.stats["actions"] += 1
        if not fixed_points(action, J):
            out.fail("no-fixed-point", H=_gens(H))
            continue
        finders = []
        if inst.labels["n_abelian"]:
            finders.append(find_fixed_point_abelian)
        if inst.labels["g_supersoluble"]:
            finders.append(find_fixed_point_nilpotent)
        for finder in finders:
            res = finder(G, N, J, action)
            if res.status != FIXED:
                out.fail(f"finder-{res.status}", H=_gens(H), stage=res.stage)
            out.stats["finder_runs"] += 1
    return out


def _sylow_complements_conjugate(G, N) -> bool:
    for p in prime_divisors(G):
        S = sylow_subgroup(G, p)
        L = intersection(N, S)
        keys = {conjugacy_class_key(C, G) for C in enumerate_complements(S, L)}
        if len(keys) > 1:
            return False
    return True


def _corollary(inst, out, finder) -> None:
    G, N, J = _parts(inst)
    comps = enumerate_complements(G, N)
    classes = len({conjugacy_class_key(C, G) for C in comps})
    if not _sylow_complements_conjugate(G, N):
        out.stats["hypothesis_unmet"] += 1
        if classes == 1:
            out.stats["hypothesis_unmet_but_conjugate"] += 1
        return
    out.stats["hypothesis_met"] += 1
    if len(comps) > 1:
        out.stats["hypothesis_met_multiple_complements"] += 1
    for C in comps:
        res = finder(G, N, J, coset_action(G, C))
        if res.status != FIXED:
            out.fail(f"corollary-{res.status}", J2=_gens(C), stage=res.stage)
            continue
        if subgroup_conjugate(J, res.conjugator) != C:
            out.fail("corollary-bad-conjugator", J2=_gens(C))
        if conjugacy_witness(J, C, G) is None:
            out.fail("corollary-oracle", J2=_gens(C))
    if classes != 1:
        out.fail("corollary-classes", classes=classes)


def check_cor_ab(inst: Instance, cfg) -> Outcome:
    out = Outcome()
    _corollary(inst, out, find_fixed_point_abelian)
    return out


def check_cor_nil(inst: Instance, cfg) -> Outcome:
    if not inst.labels["g_supersoluble"]:
        return Outcome(skip="G not supersoluble")
    out = Outcome()
    _corollary(inst, out, find_fixed_point_nilpotent)
    return out


# ---------------------------------------------------------------------------
# supplement recursion (prop-nil-split)


def check_prop_nil_split(inst: Instance, cfg) -> Outcome:
    if not inst.labels["g_supersoluble"]:
        return Outcome(skip="G not supersoluble")
    out = Outcome()
    G, N, J = _parts(inst)
    for H in conjugacy_class_representatives(enumerate_supplements(G, N), G):
        hyp = sylow_conjugators(H, J, G)
        oracle = containment_witness(J, H, G)
        out.stats["supplements"] += 1
        if any(g is None for g in hyp.values()):
            out.stats["hypothesis_unmet"] += 1
            if oracle is not None:
                out.fail("oracle-contains-but-hypothesis-unmet", H=_gens(H))
            continue
        try:
            g = supplement_contains_conjugate(H, G, N, J)
        except RecursionGap as exc:
            out.fail("recursion-gap", H=_gens(H), message=str(exc))
            continue
        except TheoremViolation as exc:
            out.fail("lem-nil", H=_gens(H), **exc.witness)
            continue
        if not subgroup_conjugate(J, g).elements <= H.elements:
            out.fail("bad-conjugator", H=_gens(H))
        if oracle is None:
            out.fail("oracle-infeasible", H=_gens(H))
        out.stats["recursion_successes"] += 1
        if H.order > J.order:
            out.stats["proper_supplement_successes"] += 1
    return out


# ---------------------------------------------------------------------------
# counterexample search (ls-search)


def check_ls_search(inst: Instance, cfg) -> Outcome:
    if inst.labels["g_supersoluble"]:
        return Outcome(skip="G supersoluble: local conjugacy implies conjugacy")
    if not inst.labels["g_soluble"]:
        return Outcome(skip="G not soluble")
    G, N, J = _parts(inst)
    if not is_supersoluble(J):
        return Outcome(skip="J not supersoluble")
    out = Outcome()
    comps = enumerate_complements(G, N)
    seen: dict = {}
    for C in comps:
        lk = local_class_key(C, G)
        gk = conjugacy_class_key(C, G)
        first = seen.setdefault(lk, (C, gk))
        if gk != first[1]:
            A, B = first[0], C
            # re-verify both halves of a find independently
            from .complements import locally_conjugate

            if locally_conjugate(A, B, G) and conjugacy_witness(A, B, G) is None:
                out.finds.append({"instance": inst.to_dict(), "J1": _gens(A), "J2": _gens(B)})
            else:
                out.fail("inconsistent-find", J1=_gens(A), J2=_gens(B))
            break
    out.stats["candidates"] += 1
    out.stats["complements"] += len(comps)
    return out


# ---------------------------------------------------------------------------
# registry and driver


@dataclass(frozen=True)
class ClaimSpec:
    family: str
    default_max_order: int
    check: Callable[[Instance, dict], Outcome]
    coverage: tuple[str, ...] = ()


CLAIMS: dict[str, ClaimSpec] = {
    "lem-ab": ClaimSpec("abelian", 48, check_lem_ab,
                        ("instances_with_2plus_classes", "locally_conjugate_pairs")),
    "eq-1": ClaimSpec("abelian", 48, check_eq1, ("mixed_order_J", "nontrivial_h1")),
    "gaschutz": ClaimSpec("abelian", 96, check_gaschutz,
                          ("nonsplit_pairs", "split_noncoprime_pairs")),
    "thm-ab": ClaimSpec("abelian", 48, check_thm_ab, ("noncoprime_fixed", "result_hypotheses-unmet")),
    "cor-ab": ClaimSpec("abelian", 48, check_cor_ab, ("hypothesis_met_multiple_complements",)),
    "eq-2": ClaimSpec("nilpotent", 96, check_eq2, ("multi_prime_N", "nonabelian_N")),
    "prop-nilp": ClaimSpec("nilpotent", 96, check_prop_nilp,
                           ("central_q_extensions", "invariant_p_extensions")),
    "prop-nil": ClaimSpec("nilpotent", 96, check_prop_nil, ("mixed_order_J", "nonabelian_N")),
    "lem-nil": ClaimSpec("nilpotent", 96, check_lem_nil,
                         ("instances_with_2plus_classes", "nonabelian_N")),
    "prop-nil-split": ClaimSpec("nilpotent", 96, check_prop_nil_split,
                                ("proper_supplement_successes",)),
    "thm-nil": ClaimSpec("nilpotent", 96, check_thm_nil, ("noncoprime_fixed", "nonabelian_N")),
    "cor-nil": ClaimSpec("nilpotent", 96, check_cor_nil, ("hypothesis_met_multiple_complements",)),
    "ls-search": ClaimSpec("nilpotent", 96, check_ls_search, ()),
    "coprime-sanity": ClaimSpec("nilpotent", 96, check_coprime, ("actions",)),
}


def _run_one(claim: str, config: CorpusConfig, index: int) -> tuple[str, dict]:
    inst = corpus_generate(config).instances[index]
    spec = CLAIMS[claim]
    cfg = {"seed": config.seed}
    try:
        out = spec.check(inst, cfg)
    except OrderCapExceeded as exc:
        out = Outcome(skip=f"cap exceeded: {exc}")
    except FixlabError as exc:
        out = Outcome()
        out.fail("error", type=type(exc).__name__, message=str(exc))
    return inst.id, {"skip": out.skip, "failures": out.failures,
                     "stats": dict(out.stats), "finds": out.finds}


def run_claim(claim: str, *, max_order: int | None = None, seed: int = 0, jobs: int = 1,
              timing: bool = False) -> ClaimReport:
    if claim not in CLAIMS:
        raise KeyError(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")
    spec = CLAIMS[claim]
    config = CorpusConfig(max_order=max_order or spec.default_max_order, family=spec.family,
                          seed=seed)
    start = time.perf_counter()
    corpus = corpus_generate(config)
    indices = range(len(corpus.instances))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, [claim] * len(indices), [config] * len(indices),
                                    indices, chunksize=8))
    else:
        results = [_run_one(claim, config, i) for i in indices]
    report = ClaimReport(claim, {"max_order": config.max_order, "family": config.family,
                                 "seed": seed, "corpus_size": len(corpus.instances)})
    stats: Counter = Counter()
    for sk in corpus.skipped:
        report.skipped.append({"instance": f"{sk['N']} x| {sk['J']}", "reason": sk["reason"]})
    for inst_id, res in sorted(results, key=lambda r: r[0]):
        if res["skip"] is not None:
            report.skipped.append({"instance": inst_id, "reason": res["skip"]})
            continue
        report.tested += 1
        stats.update(res["stats"])
        for f in res["failures"]:
            report.failures.append({"instance": inst_id, **f})
        report.finds.extend(res["finds"])
    if report.tested == 0:
        report.failures.append({"instance": None, "stage": "vacuous",
                                "witness": {"message": "no instance satisfied the hypotheses"}})
    for key in spec.coverage:
        if stats[key] == 0:
            report.failures.append({"instance": None, "stage": "coverage",
                                    "witness": {"missing": key}})
    report.stats = dict(stats)
    if timing:
        report.wall_time = time.perf_counter() - start
    return report


def run_suite(*, seed: int = 0, jobs: int = 1, out_dir: str | Path | None = None
              ) -> dict[str, ClaimReport]:
    """Every claim at its default bound; reports are written as ``<claim>.json``."""
    reports = {claim: run_claim(claim, seed=seed, jobs=jobs) for claim in CLAIMS}
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for claim, report in reports.items():
            save_report(report, out / f"{claim}.json")
    return reports
