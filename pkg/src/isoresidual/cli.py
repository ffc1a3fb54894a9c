"""Command-line front end.

Subcommands: count, verify, batch, multipliers, oracle.  All numbers in
JSON output are decimal strings so arbitrary-precision values survive any
JSON consumer.  Exit codes: 0 success, 1 verification or batch-line
failure, 2 validation error, 3 internal cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verification
from .counting import count_closed_form, degenerate_simple_poles
from .errors import IsoresidualError
from .exactarith import parse_gaussian_rational
from .levelgraph import count_recursive
from .oracle import multipliers_to_residues, oracle_count
from .partitions import enumerate_partitions
from .profiles import (
    OrderProfile,
    ResidueTuple,
    indices_from_mask,
    mask_from_indices,
    realize_residues,
    structure_from_generators,
    vanishing_subsets,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3


class _Invalid(Exception):
    pass


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise _Invalid(f"bad {what}: {exc}") from None


def _profile_from_args(mu: str | None, b: str | None) -> OrderProfile:
    if (mu is None) == (b is None):
        raise _Invalid("exactly one of --mu or --b is required")
    try:
        if mu is not None:
            values = _parse_int_list(mu, "--mu")
            if len(values) < 3:
                raise _Invalid("--mu needs the zero order and at least two pole orders")
            return OrderProfile(values[0], tuple(values[1:]))
        return OrderProfile.from_pole_orders(_parse_int_list(b, "--b"))
    except ValueError as exc:
        raise _Invalid(str(exc)) from None


def _residues_from_text(parts: list[str]) -> ResidueTuple:
    try:
        return ResidueTuple(tuple(parse_gaussian_rational(p) for p in parts))
    except (IsoresidualError, ValueError, ZeroDivisionError) as exc:
        raise _Invalid(f"bad residues: {exc}") from None


def _parse_vanishings(text: str, n: int) -> list[int]:
    masks = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            masks.append(mask_from_indices(_parse_int_list(chunk, "--vanishings"), n))
        except ValueError as exc:
            raise _Invalid(f"bad --vanishings: {exc}") from None
    return masks


def _closure_lists(structure) -> list[list[int]]:
    return [list(indices_from_mask(m)) for m in structure.sorted_closure()]


def _build_report(profile, structure, residues, seed, *, recursive=False,
                  oracle=False, trace=False):
    """Shared report builder for count, batch and multipliers paths."""
    breakdown = count_closed_form(profile, structure)
    report = {
        "input": {"mu": [profile.a, *profile.b]},
        "n": profile.n,
        "a": str(profile.a),
        "b": [str(x) for x in profile.b],
    }
    if residues is not None:
        report["input"]["rho"] = [str(v) for v in residues.values]
    else:
        report["input"]["vanishings"] = ";".join(
            ",".join(str(i) for i in indices_from_mask(g))
            for g in structure.generators
        )
    report["input"]["seed"] = seed
    report["closure"] = _closure_lists(structure)
    report["rank"] = structure.rank
    report["max_parts"] = breakdown.max_parts
    partitions = enumerate_partitions(structure)
    report["terms"] = [
        {
            "s": s,
            "count": size,
            "value": str(value),
            "partitions": [
                [list(indices_from_mask(part)) for part in partition]
                for partition in partitions[s]
            ],
        }
        for s, value, size in breakdown.per_s
    ]
    report["total"] = str(breakdown.total)
    warnings_list = [
        f"pole {i} is simple but forced to zero residue; no differential "
        f"realizes this configuration"
        for i in degenerate_simple_poles(profile, structure)
    ]
    if warnings_list:
        report["warnings"] = warnings_list

    mismatch = False
    if recursive:
        trace_list: list | None = [] if trace else None
        recursive_total = count_recursive(profile, structure, trace=trace_list)
        entry = {
            "total": str(recursive_total),
            "match": recursive_total == breakdown.total,
        }
        if trace_list is not None:
            entry["trace"] = trace_list
        report["recursive"] = entry
        mismatch = mismatch or not entry["match"]
    if oracle:
        if profile.n > 3:
            raise _Invalid("--oracle needs at most three poles")
        rho = residues if residues is not None else realize_residues(structure, seed)
        oracle_total = oracle_count(profile, rho)
        entry = {
            "count": str(oracle_total),
            "rho": [str(v) for v in rho.values],
            "match": oracle_total == breakdown.total,
        }
        report["oracle"] = entry
        mismatch = mismatch or not entry["match"]
    return report, mismatch


def _emit(report: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        print(json.dumps(report), file=out)
        return
    print(f"profile: a = {report['a']}, b = ({', '.join(report['b'])})", file=out)
    if "lambdas" in report["input"]:
        print(f"multipliers: {', '.join(report['input']['lambdas'])}", file=out)
    if "rho" in report["input"]:
        print(f"residues: {', '.join(report['input']['rho'])}", file=out)
    closure = " ".join(
        "{" + ",".join(str(i) for i in subset) + "}" for subset in report["closure"]
    )
    print(f"vanishing structure: rank {report['rank']}, closure {closure or '(none)'}", file=out)
    for term in report["terms"]:
        print(
            f"  s = {term['s']}: {term['count']} partition(s), term = {term['value']}",
            file=out,
        )
    print(f"total N = {report['total']}", file=out)
    for message in report.get("warnings", ()):
        print(f"warning: {message}", file=out)
    if "recursive" in report:
        entry = report["recursive"]
        status = "matches" if entry["match"] else "MISMATCH"
        print(f"recursion cross-check: {entry['total']} ({status})", file=out)
    if "oracle" in report:
        entry = report["oracle"]
        status = "matches" if entry["match"] else "MISMATCH"
        print(f"elimination oracle: {entry['count']} ({status})", file=out)


def _structure_for_request(profile, rho_text, vanishings_text):
    if (rho_text is None) == (vanishings_text is None):
        raise _Invalid("exactly one of --rho or --vanishings is required")
    if rho_text is not None:
        parts = rho_text if isinstance(rho_text, list) else rho_text.split(",")
        residues = _residues_from_text(parts)
        if residues.n != profile.n:
            raise _Invalid(
                f"{residues.n} residues given for {profile.n} poles"
            )
        return vanishing_subsets(residues), residues
    masks = _parse_vanishings(vanishings_text, profile.n)
    try:
        return structure_from_generators(profile.n, masks), None
    except ValueError as exc:
        raise _Invalid(str(exc)) from None


def _cmd_count(args) -> int:
    profile = _profile_from_args(args.mu, args.b)
    structure, residues = _structure_for_request(profile, args.rho, args.vanishings)
    report, mismatch = _build_report(
        profile, structure, residues, args.seed,
        recursive=args.recursive, oracle=args.oracle, trace=args.trace,
    )
    _emit(report, args.json)
    return EXIT_MISMATCH if mismatch else EXIT_OK


def _cmd_batch(args) -> int:
    any_failed = False
    any_mismatch = False
    try:
        stream = open(args.path, encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    with stream:
        for line_no, line in enumerate(stream, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                request = json.loads(line)
                if not isinstance(request, dict):
                    raise _Invalid("each line must be a JSON object")
                if "mu" in request:
                    values = request["mu"]
                    profile = OrderProfile(values[0], tuple(values[1:]))
                elif "b" in request:
                    profile = OrderProfile.from_pole_orders(tuple(request["b"]))
                else:
                    raise _Invalid("request needs 'mu' or 'b'")
                structure, residues = _structure_for_request(
                    profile, request.get("rho"), request.get("vanishings")
                )
                report, mismatch = _build_report(
                    profile, structure, residues, request.get("seed", 0),
                    recursive=request.get("recursive", False),
                    oracle=request.get("oracle", False),
                )
                report["line"] = line_no
                any_mismatch = any_mismatch or mismatch
                print(json.dumps(report))
            except (
                _Invalid, IsoresidualError, ValueError, KeyError,
                IndexError, TypeError, ZeroDivisionError, json.JSONDecodeError,
            ) as exc:
                any_failed = True
                print(json.dumps({"line": line_no, "error": str(exc)}))
    if any_failed:
        return EXIT_FAILED
    return EXIT_MISMATCH if any_mismatch else EXIT_OK


def _cmd_multipliers(args) -> int:
    try:
        lams = tuple(
            parse_gaussian_rational(part) for part in args.lambdas.split(",")
        )
    except (IsoresidualError, ValueError, ZeroDivisionError) as exc:
        raise _Invalid(f"bad multipliers: {exc}") from None
    residues = multipliers_to_residues(lams)
    profile = OrderProfile.from_pole_orders((1,) * residues.n)
    structure = vanishing_subsets(residues)
    report, mismatch = _build_report(
        profile, structure, residues, args.seed,
        recursive=args.recursive, oracle=args.oracle,
    )
    report["input"]["lambdas"] = [str(v) for v in lams]
    _emit(report, args.json)
    return EXIT_MISMATCH if mismatch else EXIT_OK


def _cmd_oracle(args) -> int:
    profile = _profile_from_args(args.mu, args.b)
    if profile.n > 3:
        raise _Invalid("the elimination oracle handles at most three poles")
    structure, residues = _structure_for_request(profile, args.rho, args.vanishings)
    if residues is None:
        residues = realize_residues(structure, args.seed)
    oracle_total = oracle_count(profile, residues)
    closed = count_closed_form(profile, structure).total
    report = {
        "input": {
            "mu": [profile.a, *profile.b],
            "rho": [str(v) for v in residues.values],
            "seed": args.seed,
        },
        "oracle_count": str(oracle_total),
        "closed_form": str(closed),
        "match": oracle_total == closed,
    }
    if args.json:
        print(json.dumps(report))
    else:
        status = "matches" if report["match"] else "MISMATCH"
        print(f"oracle count = {oracle_total}, closed form = {closed} ({status})")
    return EXIT_OK if report["match"] else EXIT_MISMATCH


_SUITES = {
    "identities": ("zero identity and two-nonzero identity", lambda args: [
        verification.check_zero_identity(args.n_max or 7, args.b_max or 5),
        verification.check_two_nonzero_identity(args.n_max or 7, args.b_max or 4),
    ]),
    "special-cases": ("general and one-vanishing laws", lambda args: [
        verification.check_general_residue_law(args.n_max or 8, args.b_max or 5),
        verification.check_one_vanishing_law(args.n_max or 7, args.b_max or 4),
    ]),
    "recursion": ("boundary recursion equivalence", lambda args: [
        verification.check_recursion_equivalence(args.n_max or 6, args.b_max or 4),
    ]),
    "oracle": ("elimination oracle and multiplier bridge", lambda args: [
        verification.check_oracle_equivalence(args.sum_b_max or 10, args.seeds or 20),
        verification.check_multiplier_bridge(),
    ]),
    "monotonic": ("monotone decrease and vanishing criterion", lambda args: [
        verification.check_monotonic_vanishing(args.n_max or 6, args.b_max or 4),
    ]),
    "degree": ("polynomial degree fits", lambda args: [
        verification.check_degree_interpolation(args.n_max or 5),
    ]),
}


def _cmd_verify(args) -> int:
    _, runner = _SUITES[args.suite]
    results = runner(args)
    all_passed = all(r.passed for r in results)
    if args.json:
        print(json.dumps([
            {
                "name": r.name,
                "checked": r.checked,
                "failures": r.failure_count,
                "examples": r.failures,
                "seconds": round(r.seconds, 2),
            }
            for r in results
        ]))
    else:
        for r in results:
            print(r.summary())
    return EXIT_OK if all_passed else EXIT_FAILED


def _add_profile_flags(parser):
    parser.add_argument("--mu", help="zero order and pole orders: a,b1,...,bn")
    parser.add_argument("--b", help="pole orders b1,...,bn (zero order inferred)")


def _add_structure_flags(parser):
    parser.add_argument("--rho", help="comma-separated exact residues, e.g. 2,-1,-1")
    parser.add_argument(
        "--vanishings",
        help="generator subsets as 1-based indices, e.g. \"1,2;3,4\" (empty for none)",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for realized residues")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoresidual",
        description="Exact counts of single-zero differentials with fixed residues",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="count one configuration")
    _add_profile_flags(count)
    _add_structure_flags(count)
    count.add_argument("--recursive", action="store_true",
                       help="cross-check with the boundary recursion")
    count.add_argument("--oracle", action="store_true",
                       help="cross-check with symbolic elimination (n <= 3)")
    count.add_argument("--trace", action="store_true",
                       help="include the per-level recursion term table")
    count.set_defaults(func=_cmd_count)

    verify = sub.add_parser("verify", help="run a verification sweep")
    verify.add_argument("suite", choices=sorted(_SUITES))
    verify.add_argument("--n-max", type=int, default=None)
    verify.add_argument("--b-max", type=int, default=None)
    verify.add_argument("--sum-b-max", type=int, default=None)
    verify.add_argument("--seeds", type=int, default=None)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(func=_cmd_verify)

    batch = sub.add_parser("batch", help="process a JSON-lines request file")
    batch.add_argument("path")
    batch.set_defaults(func=_cmd_batch)

    multipliers = sub.add_parser(
        "multipliers", help="count polynomial maps with given fixed-point multipliers"
    )
    multipliers.add_argument("--lambdas", required=True,
                             help="comma-separated multipliers, e.g. 0,1/2,4/3")
    multipliers.add_argument("--seed", type=int, default=0)
    multipliers.add_argument("--json", action="store_true")
    multipliers.add_argument("--recursive", action="store_true")
    multipliers.add_argument("--oracle", action="store_true")
    multipliers.set_defaults(func=_cmd_multipliers)

    oracle = sub.add_parser("oracle", help="run the elimination oracle (n <= 3)")
    _add_profile_flags(oracle)
    _add_structure_flags(oracle)
    oracle.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_Invalid, IsoresidualError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
