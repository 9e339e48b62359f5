"""Command-line entry point: ``fixlab <command> ...``.

Exit codes: 0 pass, 1 failures present, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import FixlabError, ParseError

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(data, path: str | None = None) -> None:
    text = json.dumps(data, indent=2) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    from .harness import CLAIMS, run_claim, run_suite

    if args.claim == "all":
        if args.max_order is not None or args.timing:
            print("verify all runs each claim at its default bound without timing",
                  file=sys.stderr)
            return EXIT_USAGE
        reports = run_suite(seed=args.seed, jobs=args.jobs, out_dir=args.report)
        for report in reports.values():
            print(report.summary())
        ok = all(r.status == "pass" for r in reports.values())
        return EXIT_PASS if ok else EXIT_FAIL
    if args.claim not in CLAIMS:
        print(f"unknown claim {args.claim!r}; known: {', '.join(CLAIMS)}", file=sys.stderr)
        return EXIT_USAGE
    report = run_claim(args.claim, max_order=args.max_order, seed=args.seed, jobs=args.jobs,
                       timing=args.timing)
    if args.report:
        Path(args.report).write_text(report.dumps())
    print(report.summary())
    for f in report.failures[:10]:
        print(f"  failure: {f['instance']} {f['stage']}")
    return EXIT_PASS if report.status == "pass" else EXIT_FAIL


def cmd_search(args) -> int:
    from .harness import run_claim

    report = run_claim("ls-search", max_order=args.max_order, seed=args.seed, jobs=args.jobs)
    if args.report:
        Path(args.report).write_text(report.dumps())
    found = len(report.finds)
    print(f"ls-search: {found} locally conjugate non-conjugate pair(s) among "
          f"{report.tested} candidate instance(s) with |G| <= {report.config['max_order']}"
          + ("" if found else " (none found within bounds)"))
    return EXIT_PASS if report.status == "pass" else EXIT_FAIL


def _load(path):
    from .corpus import load_instance

    return load_instance(path)


def cmd_h1(args) -> int:
    from .cohomology import CocycleContext, compute_h1

    inst = _load(args.instance)
    h1 = compute_h1(CocycleContext(inst.N_sub, inst.J_sub))
    _emit({
        "instance": inst.id,
        "z1_size": len(h1.cocycles),
        "h1_size": len(h1),
        "classes": [{"size": len(h1.class_members(i)), "representative": rep.to_dict()}
                    for i, rep in enumerate(h1.classes)],
    }, args.out)
    return EXIT_PASS


def cmd_complements(args) -> int:
    from .complements import conjugacy_class_key, enumerate_complements, local_class_key

    inst = _load(args.instance)
    G, N = inst.G, inst.N_sub
    comps = enumerate_complements(G, N)
    gkeys, lkeys = {}, {}
    rows = []
    for C in comps:
        g = gkeys.setdefault(conjugacy_class_key(C, G), len(gkeys))
        loc = lkeys.setdefault(local_class_key(C, G), len(lkeys))
        rows.append({"generators": [str(x) for x in C.generators], "conjugacy_class": g,
                     "local_class": loc})
    _emit({"instance": inst.id, "count": len(comps), "conjugacy_classes": len(gkeys),
           "local_classes": len(lkeys), "complements": rows}, args.out)
    return EXIT_PASS


def cmd_fixpoint(args) -> int:
    from .actions import VIOLATION, GAction, find_fixed_point_abelian, find_fixed_point_nilpotent

    inst = _load(args.instance)
    if inst.gaction is None:
        raise ParseError("instance: missing field 'gaction' (needed for fixpoint)")
    action = GAction.from_dict(inst.G, inst.gaction)
    nilpotent = args.nilpotent or (not args.abelian and not inst.labels["n_abelian"])
    finder = find_fixed_point_nilpotent if nilpotent else find_fixed_point_abelian
    res = finder(inst.G, inst.N_sub, inst.J_sub, action)
    _emit({"instance": inst.id, "finder": "nilpotent" if nilpotent else "abelian",
           **res.to_dict()}, args.out)
    return EXIT_FAIL if res.status == VIOLATION else EXIT_PASS


def cmd_corpus(args) -> int:
    from .corpus import CorpusConfig, corpus_generate

    corpus = corpus_generate(CorpusConfig(max_order=args.max_order, family=args.family,
                                          seed=args.seed))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    index = []
    for inst in corpus:
        (out / f"{inst.id}.json").write_text(inst.dumps())
        index.append({"id": inst.id, "N": inst.n_name, "J": inst.j_name, "order": inst.order})
    _emit({"max_order": args.max_order, "family": args.family, "count": len(index),
           "skipped": corpus.skipped, "instances": index}, str(out / "index.json"))
    print(f"wrote {len(index)} instances to {out}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fixlab", description="Fixed-point and complement-conjugacy verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run one claim suite over the corpus")
    v.add_argument("claim", help="claim id, or 'all' (then --report names a directory)")
    v.add_argument("--max-order", type=int, default=None)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--report")
    v.add_argument("--timing", action="store_true", help="record wall time in the report")
    v.set_defaults(func=cmd_verify)

    for name, func, help_ in (("h1", cmd_h1, "enumerate H^1(J, N) for an instance"),
                              ("complements", cmd_complements, "list complements of N")):
        c = sub.add_parser(name, help=help_)
        c.add_argument("--instance", required=True)
        c.add_argument("--out")
        c.set_defaults(func=func)

    f = sub.add_parser("fixpoint", help="find a J-fixed point for an instance's action")
    f.add_argument("--instance", required=True)
    f.add_argument("--out")
    g = f.add_mutually_exclusive_group()
    g.add_argument("--abelian", action="store_true")
    g.add_argument("--nilpotent", action="store_true")
    f.set_defaults(func=cmd_fixpoint)

    s = sub.add_parser("search", help="counterexample searches")
    s.add_argument("kind", choices=["ls"])
    s.add_argument("--max-order", type=int, default=None)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report")
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("corpus", help="write the instance corpus as JSON files")
    c.add_argument("--max-order", type=int, required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--family", choices=["abelian", "nilpotent"], default="nilpotent")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"fixlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FixlabError as exc:
        print(f"fixlab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
