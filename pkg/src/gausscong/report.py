"""Serialization of report records (NDJSON / CSV / text) and figure rendering.

Records are flat dicts of strings, ints and bools.  Big integers are always
decimal strings by the time they reach this module; nothing here touches
floating point except the figures.
"""

from __future__ import annotations

import csv
import io
import json

#: Fixed CSV column order per command (missing fields serialize as "").
CSV_COLUMNS = {
    "seq": ["command", "spec", "n", "value"],
    "verify-lemma": [
        "command", "id", "p", "m", "l", "n", "k",
        "a", "b", "c", "r", "s", "t",
        "lhs", "rhs", "modulus", "required_exponent", "achieved_exponent", "pass",
    ],
    "verify-gauss": [
        "command", "p", "n", "m", "r", "s", "t",
        "a_high", "a_low", "modulus",
        "required_exponent", "achieved_exponent", "pass",
    ],
    "verify-theorem1": [
        "command", "p", "n", "m", "r", "s", "t",
        "a_high", "a_low", "correction",
        "bernoulli_mod_p", "bernoulli_provenance", "modulus",
        "required_exponent", "achieved_exponent", "pass",
    ],
    "consistency": [
        "command", "n", "r", "s", "t", "p", "m",
        "correction", "extracted", "expected", "skipped", "pass",
    ],
    "search": [
        "command", "family", "params", "first_terms",
        "classification", "evidence_only", "pass",
    ],
}


def render_records(records: list[dict], fmt: str) -> str:
    """Serialize records to one of the delimited formats."""
    if fmt == "json":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if fmt == "csv":
        if not records:
            return ""
        columns = CSV_COLUMNS[records[0]["command"]]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({c: r.get(c, "") for c in columns})
        return buf.getvalue()
    if fmt == "text":
        lines = []
        for r in records:
            parts = [f"{k}={v}" for k, v in r.items() if k != "command"]
            lines.append(f"{r['command']}  " + "  ".join(parts))
        return "".join(line + "\n" for line in lines)
    raise ValueError(f"unknown format {fmt!r}")


def summary_line(records: list[dict]) -> tuple[str, int]:
    """(summary string, exit code): 0 iff every record with a pass field passes."""
    total = len(records)
    skipped = sum(1 for r in records if r.get("skipped"))
    judged = [r for r in records if "pass" in r and not r.get("skipped")]
    passed = sum(1 for r in judged if r["pass"])
    failed = len(judged) - passed
    line = f"total={total} pass={passed} fail={failed} skipped={skipped}"
    return line, (1 if failed else 0)


def render_figure(command: str, records: list[dict], path: str) -> None:
    """Render a summary figure for a report batch to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(9, max(3, 0.25 * len(records) + 1)))
    if command in ("verify-gauss", "verify-theorem1", "verify-lemma"):
        labels, achieved, required = [], [], []
        for r in records:
            if command == "verify-lemma":
                labels.append(f"{r['id']} {_short_params(r)}")
            else:
                labels.append(f"p={r['p']} n={r['n']} m={r['m']} rst={r['r']},{r['s']},{r['t']}")
            req = int(r["required_exponent"])
            ach = r["achieved_exponent"]
            ach = req + 1 if ach == "inf" else min(int(ach), req + 1)
            achieved.append(ach)
            required.append(req)
        y = range(len(labels))
        ax.barh(y, achieved, color=["tab:green" if r["pass"] else "tab:red" for r in records])
        ax.plot(required, y, "k|", markersize=10, label="required exponent")
        ax.set_yticks(y, labels, fontsize=7)
        ax.invert_yaxis()
        ax.set_xlabel("p-adic valuation of residual (capped at required+1)")
        ax.legend(loc="lower right")
    elif command == "seq":
        ns = [int(r["n"]) for r in records]
        digits = [len(str(r["value"]).lstrip("-")) for r in records]
        ax.plot(ns, digits, "o-")
        ax.set_xlabel("n")
        ax.set_ylabel("decimal digits of term")
        ax.set_title(records[0]["spec"] if records else "")
    elif command == "consistency":
        agree = sum(1 for r in records if r["pass"] and not r.get("skipped"))
        skipped = sum(1 for r in records if r.get("skipped"))
        bad = len(records) - agree - skipped
        ax.bar(["agree", "disagree", "skipped"], [agree, bad, skipped],
               color=["tab:green", "tab:red", "tab:gray"])
        ax.set_ylabel("grid points")
    elif command == "search":
        counts: dict[str, int] = {}
        for r in records:
            key = r["classification"].split(":")[0]
            counts[key] = counts.get(key, 0) + 1
        ax.bar(list(counts), list(counts.values()))
        ax.set_ylabel("integral hits")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _short_params(r: dict) -> str:
    keys = ("p", "m", "l", "n", "k", "a", "b", "c")
    return " ".join(f"{k}={r[k]}" for k in keys if r.get(k, "") != "")
