"""Batch front-end: expand parameter grids, fan tasks out, stream records.

Output contract: one machine-readable record per task on stdout, in a
deterministic order that does not depend on the worker count; a summary line
and diagnostics on stderr; exit 0 iff every judged record passes, 1 if any
fails, 2 on usage errors.  Big integers are serialized as decimal strings.
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import report
from . import search as searchlib
from .errors import GausscongError
from .lemmas import (
    ALL_LEMMA_IDS,
    BLOCK_LEMMA_IDS,
    verify_binom_shift,
    verify_block_lemma,
    verify_granville,
)
from .sequences import DEFAULT_INDEX_CAP, parse_spec, spec_label, term_by_formula, term_by_recurrence
from .theorem import (
    DEFAULT_MS,
    DEFAULT_NS,
    DEFAULT_PRIMES,
    DEFAULT_RST_ROWS,
    CongruenceTask,
    Mode,
    consistency_sweep,
    verify_gauss3,
    verify_theorem1,
)


def parse_int_list(text: str) -> list[int]:
    """Comma lists with inclusive a..b ranges: '5,7' or '1..3,10'."""
    values = []
    for chunk in text.split(","):
        if ".." in chunk:
            lo, hi = chunk.split("..")
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(chunk))
    return values


def parse_rst(items: list[str]) -> list[tuple[int, int, int]]:
    triples = []
    for item in items:
        parts = [int(x) for x in item.split(",")]
        if len(parts) != 3:
            raise ValueError(f"--rst expects comma triples, got {item!r}")
        triples.append(tuple(parts))
    return triples


def parse_box(text: str) -> dict[str, tuple[int, int]]:
    """'A=0..20,B=-100..100,lam=0..10' -> {'A': (0, 20), ...}."""
    ranges = {}
    for chunk in text.split(","):
        name, _, span = chunk.partition("=")
        lo, _, hi = span.partition("..")
        ranges[name] = (int(lo), int(hi if hi else lo))
    return ranges


def _fmt_exp(v) -> object:
    return "inf" if v == math.inf else int(v)


def _fmt_fraction(x: Fraction) -> str:
    return str(x)  # "p/q" or plain integer string


# ---------------------------------------------------------------------------
# task execution (module-level so worker processes can unpickle them)
# ---------------------------------------------------------------------------


def _congruence_record(rep, command: str) -> dict:
    task = rep.task
    rec = {
        "command": command,
        "p": task.p,
        "n": task.n,
        "m": task.m,
        "r": task.r,
        "s": task.s,
        "t": task.t,
        "a_high": str(rep.a_high),
        "a_low": str(rep.a_low),
        "modulus": f"{task.p}^{rep.required_exponent}",
        "required_exponent": rep.required_exponent,
        "achieved_exponent": _fmt_exp(rep.achieved_exponent),
        "pass": rep.passed,
    }
    if command == "verify-theorem1":
        rec["correction"] = _fmt_fraction(rep.correction)
        rec["bernoulli_mod_p"] = rep.bernoulli_residue.value
        rec["bernoulli_provenance"] = rep.bernoulli_provenance
    return rec


def _lemma_record(rep) -> dict:
    rec = {
        "command": "verify-lemma",
        "id": rep.lemma_id,
        "lhs": str(getattr(rep.lhs, "value", rep.lhs)),
        "rhs": str(getattr(rep.rhs, "value", rep.rhs)),
        "required_exponent": rep.required_exponent,
        "achieved_exponent": _fmt_exp(rep.achieved_exponent),
        "pass": rep.passed,
    }
    rec.update(rep.params)
    p = rep.params["p"]
    rec["modulus"] = f"{p}^{rep.required_exponent}"
    return rec


def _run_task(task: tuple) -> list[dict]:
    kind, payload = task
    if kind == "gauss":
        p, n, m, r, s, t, cap = payload
        rep = verify_gauss3(CongruenceTask(p, n, m, r, s, t, Mode.GAUSS3), cap)
        return [_congruence_record(rep, "verify-gauss")]
    if kind == "theorem1":
        p, n, m, r, s, t, cap = payload
        rep = verify_theorem1(CongruenceTask(p, n, m, r, s, t, Mode.THEOREM1), cap)
        return [_congruence_record(rep, "verify-theorem1")]
    if kind == "lemma-b1":
        n, k, p = payload
        return [_lemma_record(verify_granville(n, k, p))]
    if kind == "lemma-b2":
        return [_lemma_record(verify_binom_shift(*payload))]
    if kind == "lemma-block":
        which, p, m_or_l, n = payload
        return [_lemma_record(verify_block_lemma(which, p, m_or_l, n))]
    if kind == "consistency":
        n, r, s, t, primes, ms, cap = payload
        rep = consistency_sweep(n, r, s, t, primes, ms, cap)
        records = []
        for entry in rep.entries:
            records.append(
                {
                    "command": "consistency",
                    "n": n, "r": r, "s": s, "t": t,
                    "p": entry.p, "m": entry.m,
                    "correction": _fmt_fraction(rep.correction),
                    "extracted": "" if entry.extracted is None else entry.extracted,
                    "expected": "" if entry.expected is None else entry.expected,
                    "skipped": entry.skipped,
                    "pass": entry.agree,
                }
            )
        return records
    if kind == "seq":
        label, n = payload
        spec = parse_spec(label)
        try:
            value = term_by_recurrence(spec, n)
            value_str = str(value.numerator) if value.denominator == 1 else _fmt_fraction(value)
        except GausscongError:
            value_str = str(term_by_formula(spec, n))
        return [{"command": "seq", "spec": label, "n": n, "value": value_str}]
    if kind == "search-chunk":
        family, ranges, horizon = payload
        box = searchlib.SearchBox(family, ranges, horizon)
        records = []
        for hit in searchlib.run_search(box):
            records.append(
                {
                    "command": "search",
                    "family": family,
                    "params": ",".join(str(x) for x in hit.params),
                    "first_terms": ",".join(str(u) for u in hit.first_terms),
                    "classification": hit.classification,
                    "evidence_only": True,
                    "pass": True,
                }
            )
        return records
    raise ValueError(f"unknown task kind {kind!r}")


def _execute(tasks: list[tuple], workers: int) -> list[dict]:
    if workers <= 1 or len(tasks) <= 1:
        batches = map(_run_task, tasks)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_task, tasks))
    return [rec for batch in batches for rec in batch]


# ---------------------------------------------------------------------------
# grid expansion per command
# ---------------------------------------------------------------------------


def _build_congruence_tasks(args, kind: str) -> list[tuple]:
    primes = args.p if args.p else list(DEFAULT_PRIMES)
    ns = args.n if args.n else list(DEFAULT_NS)
    ms = args.m if args.m else list(DEFAULT_MS)
    rows = parse_rst(args.rst) if args.rst else list(DEFAULT_RST_ROWS)
    return [
        (kind, (p, n, m, r, s, t, args.max_index))
        for p in primes
        for n in ns
        for m in ms
        for (r, s, t) in rows
    ]


def _build_lemma_tasks(args) -> list[tuple]:
    ids = args.id.split(",") if args.id else list(ALL_LEMMA_IDS)
    primes = args.p if args.p else [5, 7, 11, 13]
    tasks = []
    for which in ids:
        if which == "b1":
            primes_b1 = args.p if args.p else [5, 7, 11]
            pairs = (
                [(n, k) for n in args.n for k in (args.k or range(1, n))]
                if args.n
                else [(n, k) for n in range(2, 7) for k in range(1, n)]
            )
            tasks.extend(("lemma-b1", (n, k, p)) for p in primes_b1 for (n, k) in pairs)
        elif which == "b2":
            ms = args.m if args.m else [1, 2]
            ns = args.n if args.n else [1, 2]
            for p in primes:
                for m in ms:
                    rng = random.Random(f"{args.seed}-{p}-{m}")
                    for _ in range(args.samples):
                        a = rng.randrange(0, 3 * p ** m)
                        b = rng.randrange(0, 3 * p ** m)
                        c = rng.randrange(0, 3 * p ** m)
                        n = rng.choice(ns)
                        r, s, t = (rng.randrange(0, 5) for _ in range(3))
                        tasks.append(("lemma-b2", (a, b, c, n, m, p, r, s, t)))
        elif which in BLOCK_LEMMA_IDS:
            nested = which in ("b14", "b15", "b16", "b17")
            uses_n = nested or which in ("b7", "b8")
            ms = args.m if args.m else ([0, 1, 2] if nested else [1, 2])
            ns = args.n if args.n else ([0, 1, 2] if uses_n else [0])
            for p in primes:
                for m in ms:
                    for n in ns:
                        tasks.append(("lemma-block", (which, p, m, n)))
        else:
            raise ValueError(f"unknown lemma id {which!r}")
    return tasks


def _build_search_tasks(args, workers: int) -> list[tuple]:
    family = args.family
    if args.box:
        ranges = parse_box(args.box)
    else:
        ranges = dict(
            searchlib.DEFAULT_ZAGIER_BOX if family == "zagier" else searchlib.DEFAULT_COOPER_BOX
        )
    horizon = args.horizon if args.horizon else (50 if family == "zagier" else 30)
    # chunk along the first axis so workers share the box; merge order is the
    # lexicographic parameter order either way
    first = next(iter(ranges))
    lo, hi = ranges[first]
    chunks = max(1, min(workers * 4, hi - lo + 1))
    edges = [lo + (hi - lo + 1) * i // chunks for i in range(chunks + 1)]
    tasks = []
    for i in range(chunks):
        if edges[i] >= edges[i + 1]:
            continue
        sub = dict(ranges)
        sub[first] = (edges[i], edges[i + 1] - 1)
        tasks.append(("search-chunk", (family, sub, horizon)))
    return tasks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcl",
        description="Exact batch verification of Gauss-type supercongruences "
        "for Apery-like binomial sums.",
    )
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: GCL_WORKERS or 1)")
    parser.add_argument("--out-dir", default=None,
                        help="also write report.<fmt> and report.png here")
    parser.add_argument("--max-index", type=int, default=None,
                        help="cap on sequence indices (default: GCL_MAX_INDEX or 5000)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser("seq", help="print sequence terms")
    p_seq.add_argument("--spec", required=True,
                       help="named:D | oss:2,2,0 | zagier:7,-8,2 | az:17,5,1 | cooper:12,4,16,0")
    p_seq.add_argument("--count", type=int, default=10)

    p_lem = sub.add_parser("verify-lemma", help="verify auxiliary congruences")
    p_lem.add_argument("--id", default=None, help="comma list from " + ",".join(ALL_LEMMA_IDS))
    p_lem.add_argument("--p", type=parse_int_list, default=None)
    p_lem.add_argument("--m", type=parse_int_list, default=None, help="m (or l for b14-b17)")
    p_lem.add_argument("--n", type=parse_int_list, default=None)
    p_lem.add_argument("--k", type=parse_int_list, default=None, help="k grid for b1")
    p_lem.add_argument("--samples", type=int, default=50, help="random instances of b2 per (p,m)")
    p_lem.add_argument("--seed", type=int, default=0)

    for name in ("verify-gauss", "verify-theorem1"):
        sp = sub.add_parser(name, help=f"run {name} over a grid")
        sp.add_argument("--p", type=parse_int_list, default=None)
        sp.add_argument("--n", type=parse_int_list, default=None)
        sp.add_argument("--m", type=parse_int_list, default=None)
        sp.add_argument("--rst", action="append", default=None, help="comma triple, repeatable")

    p_con = sub.add_parser("consistency", help="check the correction term across (p, m)")
    p_con.add_argument("--p", type=parse_int_list, default=None)
    p_con.add_argument("--n", type=parse_int_list, default=None)
    p_con.add_argument("--m", type=parse_int_list, default=None)
    p_con.add_argument("--rst", action="append", default=None)

    p_sea = sub.add_parser("search", help="integrality search over a parameter box")
    p_sea.add_argument("--family", choices=("zagier", "cooper"), required=True)
    p_sea.add_argument("--box", default=None, help="e.g. A=0..20,B=-100..100,lam=0..10")
    p_sea.add_argument("--horizon", type=int, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get("GCL_WORKERS", "1"))
    if args.max_index is None:
        args.max_index = int(os.environ.get("GCL_MAX_INDEX", str(DEFAULT_INDEX_CAP)))

    try:
        if args.command == "seq":
            spec = parse_spec(args.spec)  # validate before fan-out
            tasks = [("seq", (spec_label(spec), n)) for n in range(args.count)]
        elif args.command == "verify-gauss":
            tasks = _build_congruence_tasks(args, "gauss")
        elif args.command == "verify-theorem1":
            tasks = _build_congruence_tasks(args, "theorem1")
        elif args.command == "verify-lemma":
            tasks = _build_lemma_tasks(args)
        elif args.command == "consistency":
            primes = tuple(args.p) if args.p else DEFAULT_PRIMES
            ms = tuple(args.m) if args.m else DEFAULT_MS
            ns = args.n if args.n else list(DEFAULT_NS)
            rows = parse_rst(args.rst) if args.rst else list(DEFAULT_RST_ROWS)
            tasks = [
                ("consistency", (n, r, s, t, primes, ms, args.max_index))
                for n in ns
                for (r, s, t) in rows
            ]
        else:
            tasks = _build_search_tasks(args, workers)
    except (ValueError, GausscongError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if not tasks:
        print("error: empty task grid", file=sys.stderr)
        return 2

    try:
        records = _execute(tasks, workers)
    except GausscongError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render_records(records, args.format))
    line, code = report.summary_line(records)
    print(line, file=sys.stderr)

    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        ext = {"json": "ndjson", "csv": "csv", "text": "txt"}[args.format]
        with open(os.path.join(args.out_dir, f"report.{ext}"), "w", encoding="utf-8") as fh:
            fh.write(report.render_records(records, args.format))
        report.render_figure(args.command, records, os.path.join(args.out_dir, "report.png"))
    return code


if __name__ == "__main__":
    sys.exit(main())
