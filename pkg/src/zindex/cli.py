"""Batch command line frontend with machine-readable reports.

Every verifier and search in the library is exposed as one subcommand.  The
canonical output is a JSON report

    {command, inputs, result, witnesses[], timing_ms, version}

written to stdout or --output.  Reports are deterministic for a given
configuration (fixed tie-breaks and enumeration orders; the --parallelism
knob never changes report contents).  --no-timing pins timing_ms to 0 so
reports can be compared byte for byte.

Exit status: 0 the computation ran (whatever the mathematical verdict),
1 usage or input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import __version__
from .core import SequenceParseError, ZnSequence
from .engine import (best_interval_reach, find_index_n_subsequence, index_of,
                     interval_reach, lemke_kleitman_check, sum_index_set)
from .extremal import forcing_length, forcing_length_distinct
from .family import build_counterexample, t_lower_bound, verify_family
from .farey import (PartitionGapError, audit_case_inequalities, check_adjacency,
                    farey_set, partition_sequence, reach_class, residue_subset_hit)
from .halfsets import half_set, check_half_set_sizes, scan_half_set_minimum, verify_foursum

_CSV_COMMANDS = {"half-set-scan", "foursum"}


def jsonable(obj):
    """Recursively convert report values to JSON-friendly data.

    Fractions become "num/den" strings, sequences become their literal form,
    sets are sorted, and dict keys are stringified and sorted so that equal
    reports serialize identically.
    """
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, ZnSequence):
        return obj.to_literal()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (set, frozenset)):
        return [jsonable(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def _witness_entry(witness) -> dict:
    return {
        "sequence": witness.subsequence.to_literal(),
        "multiplier": witness.multiplier,
        "sum": witness.target_sum,
    }


# -- subcommand runners -----------------------------------------------------
# each returns (result, witnesses)


def _run_index(args):
    report = index_of(ZnSequence.from_literal(args.sequence))
    return {"value": report.value, "witness_m": report.witness_m}, []


def _run_sum_index(args):
    sums = sum_index_set(ZnSequence.from_literal(args.sequence))
    return {"sums": sorted(sums)}, []


def _run_interval_reach(args):
    return {"value": interval_reach(ZnSequence.from_literal(args.sequence))}, []


def _run_best_reach(args):
    return {"value": best_interval_reach(ZnSequence.from_literal(args.sequence))}, []


def _run_find_subseq(args):
    witness = find_index_n_subsequence(ZnSequence.from_literal(args.sequence), args.len_cap)
    result = {"found": witness.found}
    return result, ([_witness_entry(witness)] if witness.found else [])


def _run_lk_check(args):
    witness = lemke_kleitman_check(ZnSequence.from_literal(args.sequence), args.divisor)
    return {"found": witness.found}, ([_witness_entry(witness)] if witness.found else [])


def _run_verify_family(args):
    record = verify_family(args.n, force=args.force)
    spec = build_counterexample(args.n, force=args.force)
    result = {
        "no_index_subseq": record.no_index_subseq,
        "multipliers_checked": record.multipliers_checked,
        "divisor_check_found": record.divisor_check_found,
        "sequence": record.sequence.to_literal(),
        "length": len(record.sequence),
        "repetition": record.sequence.repetition,
        "expected_length": spec.expected_length,
        "expected_repetition": spec.expected_repetition,
        "forced": record.forced,
    }
    return result, []


def _run_family_bound(args):
    return {"value": t_lower_bound(args.n)}, []


def _run_farey(args):
    fs = farey_set(args.k)
    return {"fractions": [str(fr) for fr in fs.fractions], "count": fs.f}, []


def _run_adjacency(args):
    checks = check_adjacency(farey_set(args.k))
    return {"checks": [jsonable(c) for c in checks],
            "all_hold": all(c.holds for c in checks)}, []


def _run_partition(args):
    seq = ZnSequence.from_literal(args.sequence)
    try:
        result = partition_sequence(seq, args.reach)
    except PartitionGapError as err:
        return {"covered": False, "gap_value": err.value, "message": str(err)}, []
    parts = [{"index": part.index,
              "lo": jsonable(part.lo),
              "hi": jsonable(part.hi),
              "members": part.members.to_literal()}
             for part in result.parts]
    return {"covered": True, "k": result.k, "parts": parts}, []


def _run_r_set(args):
    seq = ZnSequence.from_literal(args.sequence)
    members = reach_class(seq, args.scale, args.reach)
    return {"members": members.to_literal(), "size": len(members)}, []


def _run_subset_hit(args):
    indices = residue_subset_hit(args.values, args.n, args.target)
    picked = sum(args.values[i - 1] for i in indices)
    return {"indices": list(indices), "sum": picked, "residue": picked % args.n}, []


def _run_audit_cases(args):
    evaluations = audit_case_inequalities(args.p, threshold=args.threshold)
    return {
        "cases": [jsonable(e) for e in evaluations],
        "all_hold": all(e.holds for e in evaluations),
        "below_threshold": args.p <= args.threshold,
    }, []


def _run_half_set(args):
    hs = half_set(args.p, args.multiplier)
    return {"members": sorted(hs.members), "size": len(hs.members)}, []


def _run_half_set_sizes(args):
    return {"holds": check_half_set_sizes(args.p)}, []


def _run_half_set_scan(args):
    scan = scan_half_set_minimum(args.p)
    return {
        "min_size": scan.min_size,
        "violators": list(scan.violators),
        "equality_js": list(scan.equality_js),
        "allowed_equality_js": list(scan.allowed_equality_js),
        "holds": scan.holds,
        "sizes": [list(pair) for pair in scan.sizes],
    }, []


def _run_foursum(args):
    report = verify_foursum(args.p, parallelism=args.parallelism)
    return {
        "count": report.count,
        "all_index_p": report.all_index_p,
        "failures": [{"sequence": ZnSequence(args.p, vals).to_literal(), "index": idx}
                     for vals, idx in report.failures],
    }, []


def _extremal_result(report):
    result = {
        "kind": report.kind,
        "value": report.value,
        "exact": report.exact,
        "lower_bound": report.lower_bound,
        "candidates_checked": report.candidates_checked,
        "cap": report.cap,
    }
    witnesses = []
    if report.witness is not None:
        result["witness"] = report.witness.to_literal()
        witnesses.append({"sequence": report.witness.to_literal(),
                          "multiplier": None, "sum": None})
    return result, witnesses


def _run_forcing_length(args):
    report = forcing_length(args.n, cap=args.cap, symmetry=not args.no_symmetry,
                            parallelism=args.parallelism, budget=args.budget)
    return _extremal_result(report)


def _run_forcing_length_distinct(args):
    report = forcing_length_distinct(args.n, cap=args.cap, parallelism=args.parallelism)
    return _extremal_result(report)


# -- output formatting -------------------------------------------------------


def _flatten_csv(command: str, report: dict) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    result = report["result"]
    if command == "half-set-scan":
        equality = set(result["equality_js"])
        violators = set(result["violators"])
        writer.writerow(["j", "size", "equality", "violation"])
        for j, size in result["sizes"]:
            writer.writerow([j, size, int(j in equality), int(j in violators)])
    elif command == "foursum":
        writer.writerow(["p", "count", "all_index_p", "failure_sequence", "failure_index"])
        if result["failures"]:
            for failure in result["failures"]:
                writer.writerow([report["inputs"]["p"], result["count"],
                                 int(result["all_index_p"]),
                                 failure["sequence"], failure["index"]])
        else:
            writer.writerow([report["inputs"]["p"], result["count"],
                             int(result["all_index_p"]), "", ""])
    return out.getvalue()


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for key, value in report["inputs"].items():
        lines.append(f"input {key}: {value}")
    for key, value in report["result"].items():
        lines.append(f"{key}: {json.dumps(jsonable(value))}")
    for witness in report["witnesses"]:
        lines.append(f"witness: {witness['sequence']}"
                     + (f" (m={witness['multiplier']}, sum={witness['sum']})"
                        if witness.get("multiplier") is not None else ""))
    lines.append(f"timing_ms: {report['timing_ms']}")
    return "\n".join(lines) + "\n"


_RUNNERS = {
    "index": _run_index,
    "sum-index": _run_sum_index,
    "interval-reach": _run_interval_reach,
    "best-reach": _run_best_reach,
    "find-subseq": _run_find_subseq,
    "lk-check": _run_lk_check,
    "verify-family": _run_verify_family,
    "family-bound": _run_family_bound,
    "farey": _run_farey,
    "adjacency": _run_adjacency,
    "partition": _run_partition,
    "r-set": _run_r_set,
    "subset-hit": _run_subset_hit,
    "audit-cases": _run_audit_cases,
    "half-set": _run_half_set,
    "half-set-sizes": _run_half_set_sizes,
    "half-set-scan": _run_half_set_scan,
    "foursum": _run_foursum,
    "forcing-length": _run_forcing_length,
    "forcing-length-distinct": _run_forcing_length_distinct,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", help="write the report to this path instead of stdout")
    common.add_argument("--parallelism", type=int, default=None,
                        help="worker count (default: ZINDEX_PARALLELISM or 1)")
    common.add_argument("--no-timing", action="store_true",
                        help="report timing_ms as 0 for byte-reproducible output")

    parser = argparse.ArgumentParser(prog="zindex",
                                     description="index computations over Z_n")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, configure):
        p = sub.add_parser(name, parents=[common], help=help_text)
        configure(p)
        return p

    seq_arg = lambda p: p.add_argument("sequence",
                                       help="sequence literal, e.g. '1^8 11 12^10 13^3 mod 22'")

    add("index", "index of a sequence and the minimizing multiplier", seq_arg)
    add("sum-index", "achievable normalized subsequence sums in [1, n]", seq_arg)
    add("interval-reach", "largest t with some subsequence realizing exactly [1, t]", seq_arg)
    add("best-reach", "interval reach maximized over unit rescalings (prime n)", seq_arg)

    def conf_find(p):
        seq_arg(p)
        p.add_argument("--len-cap", type=int, default=None)
    add("find-subseq", "search for a subsequence of index n", conf_find)

    def conf_lk(p):
        seq_arg(p)
        p.add_argument("--divisor", type=int, required=True)
    add("lk-check", "search for m, T with divisor | sum(|mT|_n) | n", conf_lk)

    def conf_family(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--force", action="store_true",
                       help="also allow n in {10, 14, 18} (no claim attached)")
    add("verify-family", "verify the counterexample family member for n", conf_family)

    add("family-bound", "family lower bound on the forcing length",
        lambda p: p.add_argument("--n", type=int, required=True))

    k_arg = lambda p: p.add_argument("--k", type=int, required=True)
    add("farey", "irreducible fractions in [1/k, (k-1)/k], denominators <= k", k_arg)
    add("adjacency", "denominator and determinant checks for adjacent fractions", k_arg)

    def conf_partition(p):
        seq_arg(p)
        p.add_argument("--reach", type=int, required=True)
    add("partition", "partition terms into the Farey-derived intervals", conf_partition)

    def conf_rset(p):
        seq_arg(p)
        p.add_argument("--scale", type=int, required=True)
        p.add_argument("--reach", type=int, required=True)
    add("r-set", "terms whose scaled representative is small and coprime to the scale",
        conf_rset)

    def conf_subset(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--target", type=int, required=True)
        p.add_argument("values", type=int, nargs="+")
    add("subset-hit", "nonempty index subset hitting a target residue", conf_subset)

    def conf_audit(p):
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--threshold", type=int, default=24318)
    add("audit-cases", "exact-rational audit of the eight reach-range cases", conf_audit)

    def conf_halfset(p):
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--multiplier", type=int, required=True)
    add("half-set", "members i in [1, p/2] with |i*j|_p below p/2", conf_halfset)

    p_arg = lambda p: p.add_argument("--p", type=int, required=True)
    add("half-set-sizes", "paired half-set sizes add to (p-1)/2", p_arg)
    add("half-set-scan", "minimum half-set size over j in [2, p-2]", p_arg)
    add("foursum", "index of every minimal zero-sum 4-element sequence", p_arg)

    def conf_forcing(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--budget", type=int, default=20000)
        p.add_argument("--no-symmetry", action="store_true",
                       help="disable unit-scaling symmetry reduction (oracle mode)")
    add("forcing-length", "least length forcing an index-n subsequence (multisets)",
        conf_forcing)

    def conf_forcing_distinct(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--cap", type=int, default=None)
    add("forcing-length-distinct",
        "least size forcing an index-n subset (distinct elements)", conf_forcing_distinct)

    return parser


_INPUT_KEYS = ("sequence", "n", "p", "k", "divisor", "len_cap", "reach", "scale",
               "target", "values", "multiplier", "threshold", "cap", "budget",
               "force", "no_symmetry")


def _collect_inputs(args) -> dict:
    return {key: getattr(args, key) for key in _INPUT_KEYS
            if getattr(args, key, None) is not None}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.parallelism is None:
        args.parallelism = int(os.environ.get("ZINDEX_PARALLELISM", "1"))
    if args.parallelism < 1:
        parser.error("--parallelism must be at least 1")
    if args.format == "csv" and args.command not in _CSV_COMMANDS:
        print(f"csv output is only available for: {', '.join(sorted(_CSV_COMMANDS))}",
              file=sys.stderr)
        return 1

    started = time.perf_counter()
    try:
        result, witnesses = _RUNNERS[args.command](args)
    except SequenceParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except AssertionError as err:
        print(f"internal invariant violation: {err}", file=sys.stderr)
        return 2
    timing_ms = 0 if args.no_timing else int((time.perf_counter() - started) * 1000)

    report = {
        "command": args.command,
        "inputs": jsonable(_collect_inputs(args)),
        "result": jsonable(result),
        "witnesses": jsonable(witnesses),
        "timing_ms": timing_ms,
        "version": __version__,
    }
    if args.format == "json":
        payload = json.dumps(report, indent=2) + "\n"
    elif args.format == "csv":
        payload = _flatten_csv(args.command, report)
    else:
        payload = _render_text(report)

    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
