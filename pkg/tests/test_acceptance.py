"""Acceptance criteria 1-9, each at its stated bound.

The full claim suite runs once per module (about ten minutes on one core);
criterion 9 runs it a second time in a fresh interpreter and compares the
report files byte for byte.
"""

from __future__ import annotations

import subprocess
import sys
import time

import pytest

from fixlab.cohomology import CocycleContext, compute_h1
from fixlab.complements import enumerate_complements
from fixlab.harness import CLAIMS, run_claim, run_suite

from oracles import brute_complements, count_classes
from support import ACCEPTANCE_LINES, inversion, trivial


@pytest.fixture(scope="module")
def suite(tmp_path_factory):
    out = tmp_path_factory.mktemp("suite-a")
    reports = run_suite(out_dir=out)
    return out, reports


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def clean(report, max_order: int) -> bool:
    return (report.status == "pass" and not report.failures
            and report.config["max_order"] >= max_order)


def test_criterion_1_local_conjugacy_abelian(suite):
    r = suite[1]["lem-ab"]
    start = time.perf_counter()
    again = run_claim("lem-ab")
    elapsed = time.perf_counter() - start
    ok = (clean(r, 48) and r.tested >= 100 and r.stats.get("locally_conjugate_pairs", 0) > 0
          and again.dumps() == r.dumps() and elapsed < 300)
    record(1, ok, f"lem-ab |G|<=48: {r.tested} instances, "
                  f"{r.stats.get('locally_conjugate_pairs', 0)} locally conjugate pairs, "
                  f"{len(r.failures)} failures, {elapsed:.1f}s")


def test_criterion_2_restriction_bijection(suite):
    r = suite[1]["eq-1"]
    ok = (clean(r, 48) and r.stats.get("mixed_order_J", 0) > 0
          and r.stats.get("nontrivial_h1", 0) > 0)
    record(2, ok, f"eq-1 |G|<=48: {r.tested} instances, {r.stats.get('mixed_order_J', 0)} "
                  f"with mixed-order J, {len(r.failures)} failures")


def test_criterion_3_gaschutz(suite):
    r = suite[1]["gaschutz"]
    ok = (clean(r, 96) and r.stats.get("nonsplit_pairs", 0) > 0
          and r.stats.get("split_noncoprime_pairs", 0) > 0)
    record(3, ok, f"gaschutz |G|<=96: {r.stats.get('pairs', 0)} pairs, "
                  f"{r.stats.get('nonsplit_pairs', 0)} nonsplit, "
                  f"{r.stats.get('split_noncoprime_pairs', 0)} split noncoprime, "
                  f"{len(r.failures)} failures")


def test_criterion_4_fixed_points_abelian(suite):
    thm, cor = suite[1]["thm-ab"], suite[1]["cor-ab"]
    ok = clean(thm, 48) and clean(cor, 48) and thm.stats.get("result_violation", 0) == 0
    record(4, ok, f"thm-ab {thm.stats.get('result_fixed', 0)} fixed / "
                  f"{thm.stats.get('result_hypotheses-unmet', 0)} unmet, cor-ab "
                  f"{cor.stats.get('hypothesis_met', 0)} met, "
                  f"{len(thm.failures) + len(cor.failures)} failures")


def test_criterion_5_decompositions_and_extensions(suite):
    eq2, nilp, nil = (suite[1][c] for c in ("eq-2", "prop-nilp", "prop-nil"))
    ok = (all(clean(r, 96) for r in (eq2, nilp, nil))
          and nilp.stats.get("central_q_extensions", 0) > 0
          and nilp.stats.get("invariant_p_extensions", 0) > 0)
    record(5, ok, f"eq-2 {eq2.tested}, prop-nilp {nilp.tested} "
                  f"({nilp.stats.get('central_q_extensions', 0)} central-q, "
                  f"{nilp.stats.get('invariant_p_extensions', 0)} invariant-p extensions), "
                  f"prop-nil {nil.tested} instances, "
                  f"{len(eq2.failures) + len(nilp.failures) + len(nil.failures)} failures")


def test_criterion_6_nilpotent_normal_subgroup(suite):
    names = ("lem-nil", "prop-nil-split", "thm-nil", "cor-nil")
    reports = [suite[1][c] for c in names]
    split = suite[1]["prop-nil-split"]
    ok = (all(clean(r, 96) for r in reports)
          and suite[1]["thm-nil"].stats.get("result_violation", 0) == 0
          and split.stats.get("recursion_successes", 0) > 0)
    record(6, ok, ", ".join(f"{c} {r.tested}" for c, r in zip(names, reports))
           + f" instances, {sum(len(r.failures) for r in reports)} failures")


def test_criterion_7_coprime_sanity(suite):
    r = suite[1]["coprime-sanity"]
    ok = clean(r, 96) and r.stats.get("actions", 0) > 0
    record(7, ok, f"coprime-sanity {r.tested} instances, {r.stats.get('actions', 0)} actions, "
                  f"{len(r.failures)} failures")


def test_criterion_8_known_values():
    cases = [("S3", inversion(3), 3, 1), ("C2xC2", trivial("C2", "C2"), 2, 2),
             ("C4x|C2", inversion(4), 4, 2)]
    parts, ok = [], True
    for name, inst, z1, h1 in cases:
        h = compute_h1(CocycleContext(inst.N_sub, inst.J_sub))
        by_cocycles = (len(h.cocycles), len(h))
        comps = brute_complements(inst.G, inst.N_sub)
        by_search = (len(comps), count_classes(comps, inst.N_sub.sorted_elements))
        ok &= by_cocycles == by_search == (z1, h1)
        ok &= len(enumerate_complements(inst.G, inst.N_sub)) == z1
        parts.append(f"{name} Z1={by_cocycles[0]}/{by_search[0]} "
                     f"H1={by_cocycles[1]}/{by_search[1]}")
    record(8, ok, "; ".join(parts))


def test_criterion_9_determinism(suite, tmp_path):
    first_dir, _ = suite
    second_dir = tmp_path / "suite-b"
    proc = subprocess.run([sys.executable, "-m", "fixlab", "verify", "all",
                           "--report", str(second_dir)], capture_output=True, text=True)
    names = [f"{c}.json" for c in CLAIMS]
    same = [n for n in names
            if (second_dir / n).exists()
            and (first_dir / n).read_bytes() == (second_dir / n).read_bytes()]
    ok = proc.returncode == 0 and len(same) == len(names)
    record(9, ok, f"{len(same)}/{len(names)} reports byte-identical across two runs "
                  f"(second run exit {proc.returncode})")
