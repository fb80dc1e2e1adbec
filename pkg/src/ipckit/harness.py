"""Differential testing of provers: gold-standard comparison, deliberately
buggy provers, Mints-hardening fuzzing, count verification and benchmarks.
"""

import json
import subprocess
import time
import zlib
from dataclasses import dataclass
from typing import Optional

from .enumerate import (
    FAMILIES,
    count_family,
    gen_full_formulas,
    gen_impl_formulas,
    gen_impl_tautologies,
)
from .formulas import Formula, Imp, parse_formula, print_formula
from .provers import PROVERS, Verdict, oracle_provable
from .transforms import mints

WRONG_SUCCESS = "wrong_success"
WRONG_FAILURE = "wrong_failure"


@dataclass
class Discrepancy:
    formula: Formula
    kind: str
    suspect: str
    gold: str
    source_formula: Optional[Formula] = None

    def to_json(self, seed=None):
        rec = {
            "formula": print_formula(self.formula),
            "kind": self.kind,
            "suspect": self.suspect,
            "gold": self.gold,
        }
        if self.source_formula is not None:
            rec["source_formula"] = print_formula(self.source_formula)
        if seed is not None:
            rec["seed"] = seed
        return json.dumps(rec, sort_keys=True)


# ---------------------------------------------------------------------------
# deliberately buggy provers

def bad_prover_random(f, seed=0):
    """Flips a formula-keyed seeded coin, so verdicts are reproducible
    and independent of evaluation order."""
    h = zlib.crc32(print_formula(f).encode()) ^ (seed & 0xFFFFFFFF)
    return Verdict(bool(h & 1))


def _bad_solve(goal, ctx):
    if type(goal) is not Imp:
        return goal in ctx
    if _bad_solve(goal.rhs, [goal.lhs] + ctx):
        return True
    return _bad_reduce(ctx)


def _bad_reduce(ctx):
    if not ctx:
        return True
    for i, v in enumerate(ctx):
        rest = ctx[:i] + ctx[i + 1:]
        if _bad_solve(v, rest) and _bad_reduce(rest):
            return True
    return False


def bad_prover_fp(f, budget=None):
    """Naive all-premises reduction: complete but unsound (accepts when
    the environment can be consumed, which overshoots)."""
    return Verdict(_bad_solve(f, []))


BAD_PROVERS = {
    "bad-random": bad_prover_random,
    "bad-fp": bad_prover_fp,
}


def get_prover(name, seed=0):
    """Resolve a prover id (real or deliberately buggy) to a callable."""
    if name == "bad-random":
        return lambda f: bad_prover_random(f, seed)
    if name in BAD_PROVERS:
        return BAD_PROVERS[name]
    if name in PROVERS:
        return PROVERS[name]
    raise ValueError("unknown prover %r" % name)


# ---------------------------------------------------------------------------
# gold-standard differential testing

def classify(gold_verdict, suspect_verdict):
    """Definitional discrepancy kind, or None on agreement/unknown.
    Accepts Verdicts or plain booleans."""
    if suspect_verdict is None:
        return None
    gold = gold_verdict.proved if isinstance(gold_verdict, Verdict) else bool(gold_verdict)
    susp = suspect_verdict.proved if isinstance(suspect_verdict, Verdict) else bool(suspect_verdict)
    if susp and not gold:
        return WRONG_SUCCESS
    if gold and not susp:
        return WRONG_FAILURE
    return None


def gold_test(formulas, gold, suspect, gold_id="gold", suspect_id="suspect",
              unknown_sink=None):
    """Stream the formulas where the two provers disagree.

    `gold` and `suspect` are callables returning Verdict (or the string
    'UNKNOWN' for external provers); unknowns are recorded separately
    and never reported as discrepancies."""
    for f in formulas:
        sv = suspect(f)
        if sv == "UNKNOWN":
            if unknown_sink is not None:
                unknown_sink.append(f)
            continue
        s_proved = sv.proved if isinstance(sv, Verdict) else sv == "PROVED"
        if s_proved:
            if not gold(f).proved:
                yield Discrepancy(f, WRONG_SUCCESS, suspect_id, gold_id)
        elif gold(f).proved:
            yield Discrepancy(f, WRONG_FAILURE, suspect_id, gold_id)


def gold_test_family(size, suspect_name, gold_name="oracle", family="impl-all",
                     seed=0, unknown_sink=None):
    """The paper's gold_test specialized to an enumeration family."""
    gen = {
        "impl-all": gen_impl_formulas,
        "impl-taut": gen_impl_tautologies,
        "full-canonical": lambda n: gen_full_formulas(n, canonical=True),
    }[family]
    return gold_test(gen(size), get_prover(gold_name), get_prover(suspect_name, seed),
                     gold_id=gold_name, suspect_id=suspect_name,
                     unknown_sink=unknown_sink)


def find_minimal_discrepancy(suspect, gold, max_size, suspect_id="suspect",
                             gold_id="gold"):
    """Scan the exhaustive stream upward from size 1 and report the first
    disagreement, giving a minimal failing instance."""
    for n in range(1, max_size + 1):
        for d in gold_test(gen_impl_formulas(n), gold, suspect,
                           gold_id=gold_id, suspect_id=suspect_id):
            return d
    return None


# ---------------------------------------------------------------------------
# Mints-hardening fuzz

def mints_harden_fuzz(suspect, max_size, suspect_id="suspect", mode="both",
                      unknown_sink=None):
    """Two modes: (a) 'taut' feeds Mints-transformed known tautologies to
    the suspect and reports any rejection as wrong_failure; (b) 'self'
    uses the suspect's verdict on a small formula as the oracle for its
    verdict on the Mints-transformed formula."""

    def verdict(f):
        v = suspect(f)
        if v == "UNKNOWN" or v is None:
            return None
        return v.proved if isinstance(v, Verdict) else v == "PROVED"

    if mode in ("taut", "both"):
        for n in range(1, max_size + 1):
            for f in gen_impl_tautologies(n):
                m = mints(f)
                got = verdict(m)
                if got is None:
                    if unknown_sink is not None:
                        unknown_sink.append(m)
                elif not got:
                    yield Discrepancy(m, WRONG_FAILURE, suspect_id,
                                      "curry-howard", source_formula=f)
    if mode in ("self", "both"):
        for n in range(1, max_size + 1):
            for f in gen_full_formulas(n, canonical=True):
                small = verdict(f)
                if small is None:
                    continue
                m = mints(f)
                hard = verdict(m)
                if hard is None:
                    if unknown_sink is not None:
                        unknown_sink.append(m)
                elif hard != small:
                    kind = WRONG_SUCCESS if hard else WRONG_FAILURE
                    yield Discrepancy(m, kind, suspect_id, suspect_id + "-on-source",
                                      source_formula=f)


# ---------------------------------------------------------------------------
# count verification against the sequences reported for the generators

PAPER_SEQUENCES = {
    # family: (first size, expected values)
    "impl-skeletons": (0, [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]),
    "partitions": (1, [1, 2, 5, 15, 52, 203, 877, 4140]),
    "impl-all": (0, [1, 2, 10, 75, 728, 8526, 115764, 1776060, 30240210]),
    "impl-provable": (0, [0, 1, 3, 24, 201, 2201, 27406, 391379, 6215192]),
    "impl-taut": (1, [1, 2, 3, 7, 17, 43, 129, 389, 1245, 4274, 14991, 55289,
                      210743, 826136, 3354509]),
    "horn": (0, [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]),
    "sorted-horn": (0, [1, 1, 2, 4, 9, 22, 57, 154, 429, 1223, 3550, 10455,
                        31160, 93802, 284789]),
    "horn3": (0, [1, 1, 2, 5, 13, 37, 109, 331, 1027, 3241, 10367, 33531,
                  109463]),
    "sorted-horn3": (0, [1, 1, 2, 4, 8, 20, 47, 122, 316, 845, 2284, 6264,
                         17337, 48424, 136196, 385548]),
    "uninhab-tree": (0, [1, 0, 1, 1, 4, 7, 23, 53, 163, 432, 1306]),
    "uninhab-vars": (0, [0, 1, 1, 4, 9, 30, 122, 528, 2517, 12951, 71455]),
}

DEFAULT_VERIFY_SIZES = {
    "impl-skeletons": 9,
    "partitions": 6,
    "impl-all": 6,
    "impl-provable": 6,
    "impl-taut": 12,
    "horn": 9,
    "sorted-horn": 7,
    "horn3": 7,
    "sorted-horn3": 7,
    "uninhab-tree": 8,
    "uninhab-vars": 7,
}


def verify_counts(max_sizes=None):
    """Compare count_family output against the recorded sequences; one
    row per (family, size) with expected, actual and a match flag.

    `max_sizes` maps family to its maximum size and also restricts the
    run to exactly those families; None runs the default set."""
    sizes = dict(DEFAULT_VERIFY_SIZES) if max_sizes is None else dict(max_sizes)
    rows = []
    for family, max_n in sizes.items():
        if family not in FAMILIES:
            raise ValueError("unknown family %r" % family)
        seq = count_family(family, max_n)
        first, expected = PAPER_SEQUENCES.get(family, (seq.start, []))
        exp_at = {first + i: v for i, v in enumerate(expected)}
        for n, actual in seq.pairs():
            exp = exp_at.get(n)
            rows.append({
                "family": family,
                "n": n,
                "expected": exp,
                "actual": actual,
                "match": (exp == actual) if exp is not None else None,
            })
    return rows


def verify_report_lines(rows):
    yield "family\tn\texpected\tactual\tmatch"
    for r in rows:
        exp = "-" if r["expected"] is None else str(r["expected"])
        mark = "-" if r["match"] is None else ("ok" if r["match"] else "MISMATCH")
        yield "%s\t%d\t%s\t%d\t%s" % (r["family"], r["n"], exp, r["actual"], mark)


# ---------------------------------------------------------------------------
# benchmark: Positive = tautologies of size s, Mix = all formulas of s//2

def bench(prover_names, sizes, budget=None, seed=0):
    """Total proving time per (prover, size), split into a known-provable
    column and a mixed column; absolute numbers are informational."""
    rows = []
    for size in sizes:
        positive = [print_formula(f) for f in gen_impl_tautologies(size)]
        mix = [print_formula(f) for f in gen_impl_formulas(size // 2)]
        for name in prover_names:
            prover = get_prover(name, seed)
            row = {"prover": name, "size": size, "timeouts": 0}
            for column, batch in (("positive", positive), ("mix", mix)):
                total = 0.0
                for text in batch:
                    f = parse_formula(text)
                    t0 = time.perf_counter()
                    try:
                        if budget is None:
                            prover(f)
                        else:
                            prover(f, budget)
                    except Exception:
                        row["timeouts"] += 1
                    total += time.perf_counter() - t0
                row[column] = total
            row["total"] = row["positive"] + row["mix"]
            rows.append(row)
    return rows


def bench_report_lines(rows):
    yield "prover\tsize\tpositive\tmix\ttotal\ttimeouts"
    for r in rows:
        yield "%s\t%d\t%.3f\t%.3f\t%.3f\t%d" % (
            r["prover"], r["size"], r["positive"], r["mix"], r["total"],
            r["timeouts"])


# ---------------------------------------------------------------------------
# external prover adapter

@dataclass
class ExternalProver:
    """Line-protocol adapter: the formula goes to the command's stdin as
    one line; the first output line must be PROVED, NOT_PROVED or
    UNKNOWN.  Timeouts and malformed output map to UNKNOWN."""

    command: list
    timeout: float = 60.0

    def prove_text(self, text):
        try:
            proc = subprocess.run(
                self.command, input=text + "\n", capture_output=True,
                text=True, timeout=self.timeout)
        except (subprocess.TimeoutExpired, OSError):
            return "UNKNOWN"
        out = proc.stdout.strip().splitlines()
        head = out[0].split()[0] if out and out[0].split() else ""
        if head in ("PROVED", "NOT_PROVED", "UNKNOWN"):
            return head
        return "UNKNOWN"

    def __call__(self, f):
        return self.prove_text(print_formula(f))
