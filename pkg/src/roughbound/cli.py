"""Command-line front end: ``roughbound {optimal,expect,sweep,certify,identities}``.

Exit status is 0 when every requested verification passes, 1 when one fails
and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import certificates as cert
from ._rational import format_decimal, format_rational, pretty_rational
from .partitions import (
    DEFAULT_PARTITION_BUDGET,
    BudgetExceededError,
    UnsupportedCaseError,
    brute_force_optima,
    closed_form_optimal,
    objective,
    theorem4_filter,
)
from .rough_core import (
    DEFAULT_SUBSET_CAP,
    SetPartition,
    SubsetMask,
    az_analogon_sum,
    az_identity_sum,
    expected_boundary_exhaustive,
)
from .weights import (
    WeightSpec,
    f_via_lemma1,
    g_profile,
    harmonic_tail,
    lemma_lower_sum,
    lemma_upper_sum,
    shape_analysis,
    thu_closed,
    thu_sum,
    total_weight,
)

THREADS_ENV = "ROUGHBOUND_THREADS"
LEMMA1_CROSSCHECK_MAX_N = 12


class UsageError(Exception):
    pass


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def parse_range(text: str) -> range:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None


@dataclass
class Output:
    fmt: str
    stream: object | None = None

    def emit(self, payload: dict, text: Callable[[], str], rows: Callable[[], list[list]] | None = None) -> None:
        if self.fmt == "json":
            out = json.dumps(payload, indent=2)
        elif self.fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerows(rows() if rows else [[k, json.dumps(v)] for k, v in payload.items()])
            out = buf.getvalue().rstrip("\n")
        else:
            out = text()
        print(out, file=self.stream or sys.stdout)


def _flip(sense: str) -> str:
    return "max" if sense == "min" else "min"


def cmd_optimal(args: argparse.Namespace, out: Output) -> int:
    n, m, j = args.n, args.m, args.j
    if not n > m >= 2:
        raise UsageError(f"need n > m >= 2, got n={n}, m={m}")
    spec = WeightSpec(j, n)
    int_sense = args.sense if args.level == "integer" else _flip(args.sense)

    closed = None
    closed_note = None
    try:
        closed = closed_form_optimal(n, m, spec, int_sense)
    except UnsupportedCaseError as exc:
        closed_note = str(exc)
    brute = None
    brute_note = None
    try:
        brute = brute_force_optima(n, m, spec, int_sense, args.cap_partitions)
    except BudgetExceededError as exc:
        brute_note = str(exc)
    if closed is None and brute is None:
        print(f"error: {closed_note}; brute force unavailable: {brute_note}", file=sys.stderr)
        return 1

    int_value = brute.value if brute else objective(closed, spec)
    argopt = list(brute.argopt) if brute else [closed]
    agreement = None
    if closed is not None and brute is not None:
        agreement = closed in brute.argopt and objective(closed, spec) == brute.value
    set_value = n * total_weight(spec) - int_value
    value = int_value if args.level == "integer" else set_value

    payload = {
        "value": format_rational(value),
        "argopt": [p.to_dict() for p in argopt],
        "n": n,
        "m": m,
        "j": j,
        "sense": args.sense,
        "level": args.level,
        "integer_sense": int_sense,
        "integer_value": format_rational(int_value),
        "set_sense": _flip(int_sense),
        "set_value": format_rational(set_value),
        "closed_form": closed.to_dict() if closed else None,
        "brute_force_complete": brute is not None,
        "agreement": agreement,
    }

    def text() -> str:
        lines = [f"n={n} m={m} j={j} sense={args.sense} level={args.level}"]
        lines.append(f"closed form : {closed}" if closed else f"closed form : unavailable ({closed_note})")
        if brute:
            forms = ", ".join(str(p) for p in brute.argopt)
            lines.append(f"brute force : {pretty_rational(brute.value)} attained by {forms}")
        else:
            lines.append(f"brute force : skipped ({brute_note})")
        if agreement is not None:
            lines.append(f"agreement   : {'yes' if agreement else 'NO'}")
        lines.append(
            f"integer level ({int_sense} of sum a_i F(a_i)): {pretty_rational(int_value)} "
            f"[{format_decimal(int_value)}]"
        )
        lines.append(
            f"set level ({_flip(int_sense)} boundary sum f_{j}): {pretty_rational(set_value)} "
            f"[{format_decimal(set_value)}]"
        )
        return "\n".join(lines)

    def rows() -> list[list]:
        return [["value", "parts", "multiplicity_form"]] + [
            [format_rational(value), " ".join(map(str, p.parts)), p.multiplicity_form()] for p in argopt
        ]

    out.emit(payload, text, rows)
    return 1 if agreement is False else 0


def cmd_expect(args: argparse.Namespace, out: Output) -> int:
    if args.partition is None:
        raise UsageError("expect needs --partition '{\"n\": ..., \"blocks\": [...]}'")
    try:
        p = SetPartition.from_json(args.partition)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"invalid partition: {exc}") from None
    if args.n is not None and args.n != p.n:
        raise UsageError(f"--n {args.n} disagrees with partition n={p.n}")
    js = [args.j] if args.j else [1, 2, 3]
    reports = []
    ok = True
    for j in js:
        rep = expected_boundary_exhaustive(p, j, args.cap_subsets)
        entry = rep.to_dict()
        entry["mu_decimal"] = format_decimal(rep.mu)
        if p.n <= LEMMA1_CROSSCHECK_MAX_N:
            lemma = f_via_lemma1(p.block_sizes(), WeightSpec(j, p.n))
            entry["lemma1_f_value"] = format_rational(lemma)
            entry["lemma1_agrees"] = lemma == rep.f_value
            ok = ok and lemma == rep.f_value
        reports.append((rep, entry))
    payload = {"partition": json.loads(p.to_json()), "reports": [e for _, e in reports]}

    def text() -> str:
        lines = [f"partition {p.to_json()}"]
        for rep, e in reports:
            check = ""
            if "lemma1_agrees" in e:
                check = "  closed form agrees" if e["lemma1_agrees"] else "  CLOSED FORM DISAGREES"
            lines.append(
                f"j={rep.j}: f={pretty_rational(rep.f_value)}  N={pretty_rational(rep.normalizer)}  "
                f"mu={pretty_rational(rep.mu)} [{format_decimal(rep.mu)}]{check}"
            )
        return "\n".join(lines)

    def rows() -> list[list]:
        head = ["j", "f_value", "normalizer", "mu", "mu_decimal"]
        return [head] + [[e[k] for k in head] for _, e in reports]

    out.emit(payload, text, rows)
    return 0 if ok else 1


def _sweep_row(n: int, m: int, j: int, sense: str, budget: int) -> dict:
    row = {"n": n, "m": m, "j": j, "sense": sense}
    spec = WeightSpec(j, n)
    try:
        closed = closed_form_optimal(n, m, spec, sense)
    except UnsupportedCaseError as exc:
        return {**row, "status": "skipped", "reason": str(exc)}
    try:
        brute = brute_force_optima(n, m, spec, sense, budget)
    except BudgetExceededError as exc:
        return {**row, "status": "skipped", "reason": str(exc)}
    member = closed in brute.argopt and objective(closed, spec) == brute.value
    profile = g_profile(spec)
    shape = shape_analysis(profile)
    structural = None
    if shape.valid:
        structural = all(theorem4_filter(p, profile, shape, sense) for p in brute.argopt)
    row.update(
        status="pass" if member and structural is not False else "fail",
        closed_form=closed.multiplicity_form(),
        value=format_rational(brute.value),
        argopt=[p.multiplicity_form() for p in brute.argopt],
        closed_form_member=member,
        structural_ok=structural,
    )
    return row


def _sweep_chunk(tasks: Sequence[tuple[int, int, int, str, int]]) -> list[dict]:
    return [_sweep_row(*t) for t in tasks]


def run_sweep(n_range: range, m_range: range | None, js: Sequence[int], budget: int) -> list[dict]:
    tasks = []
    for n in n_range:
        for m in (m_range if m_range is not None else range(2, n)):
            if not 2 <= m < n:
                raise UsageError(f"row n={n}, m={m} violates 2 <= m < n")
            for j in js:
                for sense in ("min", "max"):
                    tasks.append((n, m, j, sense, budget))
    workers = worker_count()
    if workers == 1 or len(tasks) < 2:
        return _sweep_chunk(tasks)
    chunks = [tasks[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_sweep_chunk, chunks))
    # undo the round-robin split so row order never depends on scheduling
    merged: list[dict] = [None] * len(tasks)  # type: ignore[list-item]
    for i, chunk in enumerate(results):
        merged[i::workers] = chunk
    return merged


def cmd_sweep(args: argparse.Namespace, out: Output) -> int:
    if args.n_range is None:
        raise UsageError("sweep needs --n-range a..b")
    js = args.j_list or [1, 2, 3]
    rows = run_sweep(args.n_range, args.m_range, js, args.cap_partitions)
    counts = {s: sum(r["status"] == s for r in rows) for s in ("pass", "fail", "skipped")}
    failures = [r for r in rows if r["status"] == "fail"]

    def text() -> str:
        lines = []
        for j in js:
            for sense in ("min", "max"):
                lines.append(f"j={j} sense={sense}")
                for n in args.n_range:
                    cells = [r for r in rows if r["n"] == n and r["j"] == j and r["sense"] == sense]
                    marks = "".join({"pass": ".", "fail": "X", "skipped": "-"}[r["status"]] for r in cells)
                    lines.append(f"  n={n:3d}  {marks}")
        lines.append(f"pass={counts['pass']} fail={counts['fail']} skipped={counts['skipped']}")
        for r in failures:
            lines.append(f"COUNTEREXAMPLE {json.dumps(r)}")
        return "\n".join(lines)

    def csv_rows() -> list[list]:
        head = ["n", "m", "j", "sense", "status", "closed_form", "value", "argopt", "structural_ok"]
        body = [
            [r["n"], r["m"], r["j"], r["sense"], r["status"], r.get("closed_form", ""), r.get("value", ""),
             "; ".join(r.get("argopt", [])), r.get("structural_ok", "")]
            for r in rows
        ]
        return [head] + body

    out.emit({"rows": rows, "summary": counts}, text, csv_rows)
    return 1 if failures else 0


def run_certify(n: int) -> dict:
    table = cert.inequality_table()
    mismatches = cert.reference_mismatches(table)
    second = []
    for a in range(2, n):
        sign, verdict = cert.verify_second_difference(a, n)
        expected = -1 if a in (2, 3) else 1
        second.append({"a": a, "sign": sign, "expected": expected, "min_n": verdict.certificate.min_n})
    profile3 = g_profile(WeightSpec(3, n))
    third = [
        {"a": a, "value": format_rational(profile3.second_difference(a)), "ok": profile3.second_difference(a) == Fraction(-1, a)}
        for a in range(2, n)
    ]
    shape1 = shape_analysis(g_profile(WeightSpec(1, n)))
    extension = [{"claim": c, "ok": ok} for c, ok in cert.extension_lemma_checks(n)] if n >= 8 else []
    monotone = cert.verify_monotonicity(n) if n >= 6 else None
    ok = (
        not mismatches
        and all(s["sign"] == s["expected"] for s in second)
        and all(t["ok"] for t in third)
        and (shape1.c, shape1.lin_equality) == (3, True)
        and all(e["ok"] for e in extension)
        and monotone is not False
    )
    return {
        "n": n,
        "table": [row.to_dict() for row in table],
        "reference_mismatches": mismatches,
        "second_differences_j2": second,
        "second_differences_j3": third,
        "shape_j1": {"c": shape1.c, "lin_equality": shape1.lin_equality},
        "monotonicity_j2": monotone,
        "extension_lemmas": extension,
        "ok": ok,
    }


def cmd_certify(args: argparse.Namespace, out: Output) -> int:
    n = args.n if args.n is not None else 13
    if n < 6:
        raise UsageError("certify needs n >= 6")
    report = run_certify(n)

    def text() -> str:
        lines = ["inequality table:"]
        for row in report["table"]:
            extra = "" if row["l"] is None else f"  l={row['l']} integral={row['integral']} n>={row['min_n']}"
            lines.append(f"  {row['label']:<22} {row['kind']:<19} r=[{', '.join(pretty_rational(Fraction(c)) for c in row['r_coeffs'])}]{extra}")
        for msg in report["reference_mismatches"]:
            lines.append(f"  MISMATCH {msg}")
        conc = [s["a"] for s in report["second_differences_j2"] if s["sign"] < 0]
        conv = [s["a"] for s in report["second_differences_j2"] if s["sign"] > 0]
        lines.append(f"j=2 second differences at n={n}: concave at {conc}, convex at {conv}")
        bad3 = [t["a"] for t in report["second_differences_j3"] if not t["ok"]]
        lines.append(f"j=3 second differences equal -1/a: {'yes' if not bad3 else f'NO at {bad3}'}")
        s1 = report["shape_j1"]
        lines.append(f"j=1 shape: c={s1['c']} lin_equality={s1['lin_equality']}")
        lines.append(f"j=2 monotonicity: {report['monotonicity_j2']}")
        bad_ext = [e["claim"] for e in report["extension_lemmas"] if not e["ok"]]
        lines.append(f"j=2 exchange inequalities: {len(report['extension_lemmas']) - len(bad_ext)} hold" + (f", FAIL {bad_ext}" if bad_ext else ""))
        lines.append("ALL OK" if report["ok"] else "VERIFICATION FAILED")
        return "\n".join(lines)

    def rows() -> list[list]:
        head = ["label", "a", "alpha", "kind", "r_coeffs", "l", "integral", "min_n"]
        return [head] + [
            [r["label"], " ".join(map(str, r["a"])), " ".join(map(str, r["alpha"])), r["kind"],
             " ".join(r["r_coeffs"]), r["l"], r["integral"], r["min_n"]]
            for r in report["table"]
        ]

    out.emit(report, text, rows)
    return 0 if report["ok"] else 1


def random_set_partition(rng: random.Random, n: int) -> SetPartition:
    labels = [rng.randrange(n) for _ in range(n)]
    return SetPartition(n, tuple(tuple(i + 1 for i in range(n) if labels[i] == b) for b in set(labels)))


def random_family(rng: random.Random, n: int) -> list[SubsetMask]:
    size = rng.randint(1, 2 * n)
    return [SubsetMask(n, rng.randrange(1, 1 << n)) for _ in range(size)]


def run_identities(max_c: int, max_n: int, samples: int, az_max_n: int, seed: int) -> dict:
    rng = random.Random(seed)
    thu_dev = max(
        (abs(thu_sum(a, b, c) - thu_closed(a, b, c)) for c in range(1, max_c + 1) for b in range(1, c + 1) for a in range(0, c - b + 1)),
        default=Fraction(0),
    )
    lower_dev = max(
        (abs(lemma_lower_sum(n, a) - Fraction(1, a)) for n in range(1, max_n + 1) for a in range(1, n + 1)), default=Fraction(0)
    )
    upper_dev = max(
        (abs(lemma_upper_sum(n, a) - harmonic_tail(n, a)) for n in range(1, max_n + 1) for a in range(1, n + 1)),
        default=Fraction(0),
    )
    analogon_dev = Fraction(0)
    for _ in range(samples):
        p = random_set_partition(rng, rng.randint(1, az_max_n))
        analogon_dev = max(analogon_dev, abs(az_analogon_sum(p) - p.m))
    az_dev = Fraction(0)
    for _ in range(samples):
        az_dev = max(az_dev, abs(az_identity_sum(random_family(rng, rng.randint(1, az_max_n))) - 1))
    devs = {"thu": thu_dev, "lemma_lower": lower_dev, "lemma_upper": upper_dev, "az_analogon": analogon_dev, "az_identity": az_dev}
    return {name: format_rational(v) for name, v in devs.items()} | {"ok": all(v == 0 for v in devs.values())}


def cmd_identities(args: argparse.Namespace, out: Output) -> int:
    report = run_identities(args.max_c, args.max_n, args.samples, args.az_max_n, args.seed)
    names = ["thu", "lemma_lower", "lemma_upper", "az_analogon", "az_identity"]

    def text() -> str:
        lines = [f"{name:<12} max deviation {report[name]}" for name in names]
        lines.append("ALL OK" if report["ok"] else "IDENTITY FAILURE")
        return "\n".join(lines)

    out.emit(report, text, lambda: [["identity", "max_deviation"]] + [[k, report[k]] for k in names])
    return 0 if report["ok"] else 1


COMMANDS = {
    "optimal": cmd_optimal,
    "expect": cmd_expect,
    "sweep": cmd_sweep,
    "certify": cmd_certify,
    "identities": cmd_identities,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roughbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--cap-subsets", type=int, default=DEFAULT_SUBSET_CAP, help="largest n for 2^n subset enumeration")
    common.add_argument("--cap-partitions", type=int, default=DEFAULT_PARTITION_BUDGET, help="largest |P(n,m)| scanned by brute force")

    p = sub.add_parser("optimal", parents=[common], help="optimal block sizes for n, m, j")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--j", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--sense", choices=["min", "max"], default="min")
    p.add_argument("--level", choices=["set", "integer"], default="integer")

    p = sub.add_parser("expect", parents=[common], help="expected boundary size of one partition")
    p.add_argument("--partition", help='JSON such as {"n": 4, "blocks": [[1], [2, 3, 4]]}')
    p.add_argument("--n", type=int)
    p.add_argument("--j", type=int, choices=[1, 2, 3])

    p = sub.add_parser("sweep", parents=[common], help="closed forms against brute force over ranges")
    p.add_argument("--n-range", type=parse_range)
    p.add_argument("--m-range", type=parse_range)
    p.add_argument("--j", dest="j_list", type=int, choices=[1, 2, 3], action="append")

    p = sub.add_parser("certify", parents=[common], help="sign certificates for the j=2 profile")
    p.add_argument("--n", type=int)

    p = sub.add_parser("identities", parents=[common], help="exact identity sweeps")
    p.add_argument("--max-c", type=int, default=20)
    p.add_argument("--max-n", type=int, default=25)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--az-max-n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
