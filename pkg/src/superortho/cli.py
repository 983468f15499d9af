"""Command-line front end.

Exit codes: 0 when everything verified, 1 when a check failed (the
counterexample is in the emitted document), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from . import chains, constants, frequencies, identity, stirling
from .errors import BudgetExceeded, DomainError
from .partitions import (
    PartitionType,
    SetPartition,
    enumerate_set_partitions,
    enumerate_types,
    partition_type,
)

FORMATS = ("text", "json", "csv")


@dataclass
class Outcome:
    """What a subcommand produced, before formatting."""

    doc: dict
    text: str
    header: list[str]
    rows: list[list]
    failures: list = field(default_factory=list)
    verifies: bool = True  # pure lookups print no pass/fail banner


def _stringify(obj):
    # big integers always leave as decimal strings
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return str(obj)


def emit(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_stringify(outcome.doc), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(outcome.header)
        w.writerows(outcome.rows)
        return buf.getvalue()
    if fmt == "text":
        text = outcome.text.rstrip("\n") + "\n"
        if outcome.verifies and not outcome.failures:
            text += "ALL CHECKS PASSED\n"
        return text
    raise DomainError(f"unsupported format {fmt!r}")


def _partition(text: str) -> SetPartition:
    try:
        return SetPartition.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ptype(text: str) -> PartitionType:
    try:
        return PartitionType.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_coeff(args) -> Outcome:
    if args.type is not None:
        if args.p1 is not None or args.p2 is not None:
            raise DomainError("--type cannot be combined with --p1/--p2")
        val = chains.d_closed_form(args.type)
        doc = {"type": str(args.type), "value": val.value, "source": val.source}
        return Outcome(doc, str(val.value), ["type", "value", "source"], [[str(args.type), val.value, val.source]],
                       verifies=False)
    if args.p2 is None:
        raise DomainError("give --type, or --p2 (with optional --p1)")
    p2 = args.p2
    p1 = args.p1 if args.p1 is not None else SetPartition.bottom(p2.n)
    val = chains.d_general(p1, p2)
    doc = {"p1": str(p1), "p2": str(p2), "value": val.value, "source": val.source}
    failures = []
    if p1.n <= chains.MAX_CHAIN_N:
        brute = chains.count_chains(p1, p2).d
        doc["brute_force"] = brute
        if brute != val.value:
            failures.append({"p1": str(p1), "p2": str(p2), "block_product": val.value, "brute_force": brute})
    doc["failures"] = failures
    return Outcome(doc, str(val.value), ["p1", "p2", "value", "source"],
                   [[str(p1), str(p2), val.value, val.source]], failures)


def cmd_chains(args) -> Outcome:
    if args.p2 is None:
        if args.n is None:
            raise DomainError("give --p2 (with optional --p1) or --n")
        p1, p2 = SetPartition.bottom(args.n), SetPartition.top(args.n)
    else:
        p2 = args.p2
        p1 = args.p1 if args.p1 is not None else SetPartition.bottom(p2.n)
    st = chains.count_chains(p1, p2)
    text = f"odd={st.odd} even={st.even} d={st.d}"
    return Outcome(st.to_dict(), text, ["odd", "even", "d"], [[st.odd, st.even, st.d]], verifies=False)


def cmd_identity(args) -> Outcome:
    p1 = args.p1 if args.p1 is not None else SetPartition.bottom(args.n)
    if args.n > 8 or args.L > 6:
        raise DomainError("identity check limited to n <= 8 and L <= 6")
    rep = identity.verify_identity(args.n, args.L, p1, args.trials, args.seed)
    lines = [f"n={rep.n} L={rep.L} p1={rep.p1} trials={rep.trials} failures={len(rep.failures)}"]
    lines += [f"FAIL seed={f['seed']} lhs={f['lhs']} rhs={f['rhs']}" for f in rep.failures]
    row = [rep.n, rep.L, str(rep.p1), rep.trials, len(rep.failures)]
    return Outcome(rep.to_dict(), "\n".join(lines), ["n", "L", "p1", "trials", "failures"], [row], rep.failures)


def cmd_stirling(args) -> Outcome:
    table = stirling.StirlingTable.build(args.n)
    alternating = {n: stirling.verify_alternating_identity(n) for n in range(1, args.n + 1)}
    factorial_ok = {n: stirling.verify_factorial_identity(n, range(-1, n)) for n in range(1, args.n + 1)}
    failures = [f"alternating sum at n={n} is {v}" for n, v in alternating.items() if n >= 2 and v != 0]
    failures += [f"factorial identity fails at n={n}" for n, ok in factorial_ok.items() if not ok]
    doc = {
        "max_n": args.n,
        "rows": [list(row) for row in table.entries],
        "row_sums": table.row_sums(),
        "alternating_sums": {str(n): v for n, v in alternating.items()},
        "factorial_identity": {str(n): ok for n, ok in factorial_ok.items()},
        "failures": failures,
    }
    lines = [" ".join(map(str, row)) for row in table.entries]
    lines.append(f"alternating sums: n=1 -> {alternating[1]}, n>=2 all zero: {not any(alternating[n] for n in alternating if n >= 2)}")
    lines += failures
    rows = [[n, k, v] for n, row in enumerate(table.entries, 1) for k, v in enumerate(row, 1)]
    return Outcome(doc, "\n".join(lines), ["n", "k", "S(n,k)"], rows, failures)


def cmd_constants(args) -> Outcome:
    rep = constants.constant_report(args.r)
    doc = rep.to_dict()
    text = "\n".join([
        f"r={rep.r} n={2 * rep.r}",
        "C_alpha: " + ", ".join(map(str, rep.c_alphas.c)),
        f"exact root in [{rep.exact_root[0]!r}, {rep.exact_root[1]!r}]",
        f"closed-form bound K*phi*2r = {rep.paper_bound!r} (K = {rep.k_const!r})",
        f"prior bound sqrt(2((2r)!-1)) = {rep.prior_bound!r}",
        f"sharp lower order 2r-1 = {rep.lower_bound}",
    ] + rep.failures)
    return Outcome(doc, text, list(constants.ConstantReport.CSV_HEADER), [rep.csv_row()], rep.failures)


def cmd_sumcheck(args) -> Outcome:
    rep = constants.reciprocal_sum_check(args.max)
    rows = [[m, f"{v.numerator}/{v.denominator}", "OK" if ok else "FAIL"] for m, v, ok in rep.rows]
    lines = [f"m={m} sum={s} {status}" for m, s, status in rows]
    lines.append(f"first m <= 200 with sum >= 1: {rep.first_reaching_one}")
    return Outcome(rep.to_dict(), "\n".join(lines), ["m", "reciprocal_sum", "status"], rows, rep.failures)


def cmd_example(args) -> Outcome:
    fam = frequencies.build_example_family(args.r, args.s0, args.N)
    results = [frequencies.check_s_type_iv(fam, args.r, s, args.budget) for s in range(args.r)]
    props = frequencies.verify_example_properties(args.r, args.s0, args.N, max(args.budget, frequencies.SEARCH_BUDGET))
    failures = list(props.failures)
    for res in results:
        if res.passed != (res.s == args.s0):
            want = "pass" if res.s == args.s0 else "fail"
            failures.append(f"s={res.s}: expected {want}, got {'pass' if res.passed else 'fail'} "
                            f"after {res.checked} tuples")
    doc = {
        "family": json.loads(fam.to_json()),
        "s_type_iv": [r.to_dict() for r in results],
        "structures": props.structures,
        "failures": failures,
    }
    lines = [f"family of {fam.L} frequencies in Z^{fam.N}"]
    for res in results:
        status = "pass" if res.passed else f"fail, witness {list(res.witness)}"
        lines.append(f"s={res.s}: {status}")
    for st in props.structures:
        lines.append(f"({st['t']},{st['t']})-structure: {st['member_witness'] or 'none'}")
    lines += failures
    rows = [[r.s, r.passed, " ".join(map(str, r.witness)) if r.witness else ""] for r in results]
    return Outcome(doc, "\n".join(lines), ["s", "passed", "witness"], rows, failures)


def cmd_report(args) -> Outcome:
    """A fast sweep over every engine at reduced sizes."""
    checks: list[tuple[str, bool]] = []

    ok = all(chains.count_chains(SetPartition.bottom(n), p).d == chains.d_closed_form(partition_type(p)).value
             for n in range(1, 7) for p in enumerate_set_partitions(n))
    checks.append(("chain counts match closed form, n <= 6", ok))
    ok = all(chains.d_recursion(t).value == chains.d_closed_form(t).value
             for n in range(1, 11) for t in enumerate_types(n))
    checks.append(("recursion matches closed form, n <= 10", ok))
    ok = all(identity.verify_identity(n, L, p, 5, args.seed).passed
             for n in range(1, 5) for L in (2, 3) for p in enumerate_set_partitions(n))
    checks.append((f"identity, n <= 4, 5 trials, seed {args.seed}", ok))
    ok = all(stirling.verify_alternating_identity(n) == 0 for n in range(2, 41))
    checks.append(("alternating Stirling sum vanishes, 2 <= n <= 40", ok))
    checks.append(("reciprocal type sums < 1, m <= 59", not constants.reciprocal_sum_check(59).failures))
    ok = all(not constants.constant_report(r).failures for r in range(1, 6))
    checks.append(("exact root below closed-form bound, r <= 5", ok))
    checks.append(("k-th coordinate identity, k <= 20", all(frequencies.verify_kth_coord(k) for k in range(2, 21))))
    fam = frequencies.build_example_family(2, 1, 2)
    ok = frequencies.check_s_type_iv(fam, 2, 1).passed and not frequencies.check_s_type_iv(fam, 2, 0).passed
    checks.append(("example family r=2 s0=1", ok))

    failures = [name for name, good in checks if not good]
    doc = {"seed": args.seed, "checks": [{"name": n, "passed": g} for n, g in checks], "failures": failures}
    text = "\n".join(f"{'PASS' if g else 'FAIL'}  {n}" for n, g in checks)
    return Outcome(doc, text, ["check", "status"], [[n, "PASS" if g else "FAIL"] for n, g in checks], failures)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superortho", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", parents=[common], help="chain-parity coefficient D")
    p.add_argument("--type", type=_ptype)
    p.add_argument("--p1", type=_partition)
    p.add_argument("--p2", type=_partition)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("chains", parents=[common], help="odd/even chain counts by brute force")
    p.add_argument("--p1", type=_partition)
    p.add_argument("--p2", type=_partition)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("identity", parents=[common], help="exact check of the distinct-sum identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--p1", type=_partition)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("stirling", parents=[common], help="Stirling triangle and its identities")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("constants", parents=[common], help="formal-constant report for one r")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("sumcheck", parents=[common], help="reciprocal type sums below 1")
    p.add_argument("--max", type=int, default=59)
    p.set_defaults(func=cmd_sumcheck)

    p = sub.add_parser("example", parents=[common], help="build and test the s0-Type IV example family")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s0", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--budget", type=int, default=frequencies.TUPLE_BUDGET)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("report", parents=[common], help="quick sweep over all engines")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad usage
    try:
        outcome = args.func(args)
    except (DomainError, BudgetExceeded) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(outcome, args.format))
    return 1 if outcome.failures else 0


if __name__ == "__main__":
    sys.exit(main())
