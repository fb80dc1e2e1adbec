"""Command line front end: gen, count, random, prove, transform, fuzz,
verify-counts and bench, all speaking the one-formula-per-line format.

Exit codes: 0 success, 1 when fuzz/verify found discrepancies, 2 usage.
"""

import argparse
import sys

from . import enumerate as en
from . import harness
from .formulas import (
    ParseError,
    parse_formula,
    parse_horn,
    print_formula,
    print_horn,
)
from .lambda_terms import lambda_size, print_term
from .provers import PROVERS, StepBudgetExceeded
from .randomgen import (
    make_rng,
    random_impl_formula,
    random_set_partition,
    random_sk_tautology,
    random_typed_nf,
    remy_tree,
)
from .transforms import (
    from_disj_bicond,
    from_horn,
    mints,
    to_disj_bicond,
    to_horn,
    to_nested_horn_list,
)

GEN_FAMILIES = sorted(en.FAMILIES)


def _labels_text(labels):
    if max(labels) <= 9:
        return "".join(str(v) for v in labels)
    return ",".join(str(v) for v in labels)


def _input_lines(path):
    stream = sys.stdin if path in (None, "-") else open(path)
    try:
        for line in stream:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line
    finally:
        if stream is not sys.stdin:
            stream.close()


def _out(args):
    return sys.stdout if args.output in (None, "-") else open(args.output, "w")


def cmd_gen(args):
    out = _out(args)
    streams = {
        "impl-skeletons": lambda n: en.gen_impl_skeletons(n),
        "impl-all": lambda n: en.gen_impl_formulas(n),
        "impl-taut": lambda n: en.gen_impl_tautologies(n),
        "full-all": lambda n: en.gen_full_formulas(n),
        "full-canonical": lambda n: en.gen_full_formulas(n, canonical=True),
        "impl-provable": lambda n: (
            f for f in en.gen_impl_formulas(n)
            if PROVERS["oracle"](f).proved),
        "horn": lambda n: (from_horn(h) for h in en.gen_horn_skeletons(n)),
        "sorted-horn": lambda n: (from_horn(h) for h in en.gen_sorted_horn(n)),
        "horn3": lambda n: (from_horn(h) for h in en.gen_horn_skeletons(n)
                            if en.horn3_depth(h) <= 3),
        "sorted-horn3": lambda n: (from_horn(h) for h in en.gen_sorted_horn(n)
                                   if en.horn3_depth(h) <= 3),
        "uninhab-tree": lambda n: (from_horn(h)
                                   for h in en.gen_uninhabitable_trees(n)),
        "typed-nf": lambda n: ("%s\t%s" % (print_term(t), print_formula(ty))
                               for t, ty in en.gen_typed_nf(n)),
        "partitions": lambda n: (_labels_text(p)
                                 for p in en.gen_set_partitions(n)),
        "uninhab-vars": lambda n: (_labels_text(p)
                                   for p in en.gen_uninhabitable_labelings(n)),
    }
    if args.family not in streams:
        print("unknown family %r" % args.family, file=sys.stderr)
        return 2
    for item in streams[args.family](args.size):
        print(item if isinstance(item, str) else print_formula(item), file=out)
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_count(args):
    out = _out(args)
    seq = en.count_family(args.family, args.max, budget=args.budget)
    for n, v in seq.pairs():
        print("%d\t%d" % (n, v), file=out)
    if seq.truncated:
        print("# truncated: enumeration budget exceeded", file=out)
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_random(args):
    out = _out(args)
    rng = make_rng(args.seed)
    for _ in range(args.count):
        if args.what == "tree":
            print(print_formula(remy_tree(args.size, rng)), file=out)
        elif args.what == "partition":
            print(_labels_text(random_set_partition(args.size, rng)), file=out)
        elif args.what == "impl":
            print(print_formula(random_impl_formula(args.size, rng)), file=out)
        elif args.what == "sk":
            f = random_sk_tautology(args.size, args.min_type_size, rng,
                                    retries=args.retries)
            print(print_formula(f), file=out)
        else:
            term, ty = random_typed_nf(args.size, rng, retries=args.retries)
            print("%s\t%s" % (print_term(term), print_formula(ty)), file=out)
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_prove(args):
    out = _out(args)
    prover = harness.get_prover(args.prover, args.seed)
    code = 0
    for line in _input_lines(args.input):
        try:
            f = parse_formula(line)
        except ParseError as exc:
            print("ERROR %s" % exc, file=out)
            code = 2
            continue
        try:
            v = prover(f, args.budget) if args.budget else prover(f)
        except StepBudgetExceeded:
            print("UNKNOWN", file=out)
            continue
        if v.proved and args.proof_term and v.proof_term is not None:
            print("PROVED %s" % print_term(v.proof_term), file=out)
        else:
            print("PROVED" if v.proved else "NOT_PROVED", file=out)
    if out is not sys.stdout:
        out.close()
    return code


def cmd_transform(args):
    out = _out(args)
    for line in _input_lines(args.input):
        if args.kind == "unhorn":
            print(print_formula(from_horn(parse_horn(line))), file=out)
            continue
        f = parse_formula(line)
        if args.kind == "horn":
            print(print_horn(to_horn(f)), file=out)
        elif args.kind == "nested-horn":
            clauses = to_nested_horn_list(f)
            print("[%s]" % ", ".join(
                print_horn(c) if c.horn_size == 0 else "(%s)" % print_horn(c)
                for c in clauses), file=out)
        elif args.kind == "mints":
            print(print_formula(mints(f)), file=out)
        elif args.kind == "disjbicond":
            print(print_formula(to_disj_bicond(f)), file=out)
        else:
            print(print_formula(from_disj_bicond(f)), file=out)
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_fuzz(args):
    out = _out(args)
    if args.external:
        suspect = harness.ExternalProver(args.external.split(), timeout=args.timeout)
        suspect_id = "external:" + args.external
    else:
        suspect = harness.get_prover(args.suspect, args.seed)
        suspect_id = args.suspect
    found = 0
    unknowns = []
    if args.mode in ("gold", "all"):
        gold = harness.get_prover(args.gold)
        for n in range(1, args.max_size + 1):
            stream = harness.gold_test(
                en.gen_impl_formulas(n), gold, suspect,
                gold_id=args.gold, suspect_id=suspect_id,
                unknown_sink=unknowns)
            for d in stream:
                print(d.to_json(seed=args.seed), file=out)
                found += 1
                if args.max_findings and found >= args.max_findings:
                    break
            if args.max_findings and found >= args.max_findings:
                break
    if args.mode in ("mints", "all") and not (args.max_findings and found >= args.max_findings):
        for d in harness.mints_harden_fuzz(suspect, args.max_size,
                                           suspect_id=suspect_id,
                                           mode="both", unknown_sink=unknowns):
            print(d.to_json(seed=args.seed), file=out)
            found += 1
            if args.max_findings and found >= args.max_findings:
                break
    if unknowns:
        print("# %d UNKNOWN outcomes" % len(unknowns), file=sys.stderr)
    if out is not sys.stdout:
        out.close()
    return 1 if found else 0


def cmd_verify_counts(args):
    out = _out(args)
    sizes = None
    if args.family:
        sizes = {fam: harness.DEFAULT_VERIFY_SIZES.get(fam, args.max or 6)
                 for fam in args.family}
        if args.max:
            sizes = {fam: args.max for fam in args.family}
    rows = harness.verify_counts(sizes)
    for line in harness.verify_report_lines(rows):
        print(line, file=out)
    if args.plot:
        from .plots import save_counts_plot

        save_counts_plot(rows, args.plot)
        print("# figure written to %s" % args.plot, file=sys.stderr)
    if out is not sys.stdout:
        out.close()
    return 1 if any(r["match"] is False for r in rows) else 0


def cmd_bench(args):
    out = _out(args)
    provers = args.provers.split(",")
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = harness.bench(provers, sizes, budget=args.budget, seed=args.seed)
    for line in harness.bench_report_lines(rows):
        print(line, file=out)
    if args.plot:
        from .plots import save_bench_plot

        save_bench_plot(rows, args.plot)
        print("# figure written to %s" % args.plot, file=sys.stderr)
    if out is not sys.stdout:
        out.close()
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="ipckit",
        description="generators, transformers and provers for propositional "
                    "intuitionistic logic")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="enumerate a family exhaustively")
    g.add_argument("--family", required=True)
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--output", "-o")
    g.set_defaults(fn=cmd_gen)

    c = sub.add_parser("count", help="count a family up to a size (TSV)")
    c.add_argument("--family", required=True, choices=GEN_FAMILIES)
    c.add_argument("--max", type=int, required=True)
    c.add_argument("--budget", type=int, default=None,
                   help="cap on enumerated objects before truncation")
    c.add_argument("--output", "-o")
    c.set_defaults(fn=cmd_count)

    r = sub.add_parser("random", help="draw random objects")
    r.add_argument("--what", required=True,
                   choices=["tree", "partition", "impl", "sk", "typednf"])
    r.add_argument("--size", type=int, required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--count", type=int, default=1)
    r.add_argument("--min-type-size", type=int, default=0)
    r.add_argument("--retries", type=int, default=10 ** 6)
    r.add_argument("--output", "-o")
    r.set_defaults(fn=cmd_random)

    pr = sub.add_parser("prove", help="prove formulas from a file or stdin")
    pr.add_argument("--prover", required=True,
                    choices=sorted(PROVERS) + sorted(harness.BAD_PROVERS))
    pr.add_argument("--proof-term", action="store_true")
    pr.add_argument("--budget", type=int, default=None)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--input", "-i")
    pr.add_argument("--output", "-o")
    pr.set_defaults(fn=cmd_prove)

    t = sub.add_parser("transform", help="rewrite formulas line by line")
    t.add_argument("--kind", required=True,
                   choices=["horn", "unhorn", "nested-horn", "mints",
                            "disjbicond", "undisjbicond"])
    t.add_argument("--input", "-i")
    t.add_argument("--output", "-o")
    t.set_defaults(fn=cmd_transform)

    f = sub.add_parser("fuzz", help="differential testing, JSONL reports")
    f.add_argument("--suspect", default="ljt",
                   choices=sorted(PROVERS) + sorted(harness.BAD_PROVERS))
    f.add_argument("--external", help="external prover command line")
    f.add_argument("--gold", default="oracle", choices=sorted(PROVERS))
    f.add_argument("--mode", default="gold", choices=["gold", "mints", "all"])
    f.add_argument("--max-size", type=int, default=5)
    f.add_argument("--max-findings", type=int, default=0,
                   help="stop after this many (0 = no limit)")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--timeout", type=float, default=60.0)
    f.add_argument("--output", "-o")
    f.set_defaults(fn=cmd_fuzz)

    v = sub.add_parser("verify-counts", help="check counts against the "
                                             "recorded sequences")
    v.add_argument("--family", action="append",
                   help="restrict to a family (repeatable)")
    v.add_argument("--max", type=int, default=None)
    v.add_argument("--plot", help="write a PNG figure next to the TSV")
    v.add_argument("--output", "-o")
    v.set_defaults(fn=cmd_verify_counts)

    b = sub.add_parser("bench", help="timing table over exhaustive suites")
    b.add_argument("--provers", required=True,
                   help="comma-separated prover ids")
    b.add_argument("--sizes", required=True, help="comma-separated sizes")
    b.add_argument("--budget", type=int, default=None)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--plot", help="write a PNG figure next to the TSV")
    b.add_argument("--output", "-o")
    b.set_defaults(fn=cmd_bench)
    return p


def main(argv=None):
    import sys as _sys

    _sys.setrecursionlimit(100_000)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BrokenPipeError:
        return 0
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
