"""Command line front end.

Every subcommand prints either plain text or a JSON envelope with the
fixed shape {"command", "result", "pass", "details"}.  Exit status is 0
on success, 1 when a verification-style command finds a failure, and 2
for usage or data errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .classify import check_conditions, classify, ConditionsFailed
from .knot import braid_to_pd, jones, parse_braid, parse_pd
from .knotdb import (
    default_db_path,
    evaluate_expression,
    KnotExpression,
    load_db,
    parse_knot_expression,
    validate_db,
)
from .laurent import LaurentPoly, parse_poly, reduce_mod_p
from .modp import (
    admissible_bound,
    canonical_residue,
    enumerate_admissible,
    is_admissible,
    reference_set,
    refined_reference_set,
)
from .verify import verify_reference_realization, verify_shift, verify_table1

ENV_DB = "JONESMOD_DB"


@dataclass
class CliConfig:
    """Parsed invocation: which command runs, how it prints, which table."""

    command: str
    output: str = "text"
    db_path: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)


def _db_path_from_env() -> Optional[str]:
    return os.environ.get(ENV_DB) or None


def _emit(config: CliConfig, result: Any, passed: bool,
          details: List[Any], text: List[str]) -> None:
    if config.output == "json":
        envelope = {
            "command": config.command,
            "result": result,
            "pass": passed,
            "details": details,
        }
        print(json.dumps(envelope, indent=2))
    else:
        for line in text:
            print(line)


def _parse_exact_int(raw: str) -> int:
    """Reject floats and other near-integers; flags carry exact integers."""
    try:
        return int(raw, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {raw!r}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--output", choices=("text", "json"), default="text",
        help="print plain text (default) or a JSON envelope",
    )
    parser = argparse.ArgumentParser(
        prog="jonesmod",
        description="Jones polynomials exactly and modulo primes.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser(
        "compute", parents=[common],
        help="Jones polynomial of a diagram, braid, or named knot")
    src = p_compute.add_mutually_exclusive_group(required=True)
    src.add_argument("--pd", help="planar diagram code, PD[X[a,b,c,d],...]")
    src.add_argument("--braid", help="braid word, e.g. [1,1,1]")
    src.add_argument("--knot", help="knot expression, e.g. 3_1*#4_1")
    p_compute.add_argument("--mod", type=_parse_exact_int, default=None,
                           help="reduce the result modulo this prime")

    p_cond = sub.add_parser(
        "conditions", parents=[common], help="check the five realizability conditions")
    p_cond.add_argument("--poly", required=True,
                        help="Laurent polynomial in t")

    p_classify = sub.add_parser(
        "classify", parents=[common], help="family and parameter of a polynomial")
    p_classify.add_argument("--poly", required=True,
                            help="Laurent polynomial in t")

    p_refs = sub.add_parser(
        "refs", parents=[common], help="reference polynomials modulo a prime")
    p_refs.add_argument("--mod", type=_parse_exact_int, required=True)
    p_refs.add_argument("--refined", action="store_true",
                        help="restrict parameters to powers of three")

    p_enum = sub.add_parser(
        "enumerate", parents=[common], help="admissible residues supported in a window")
    p_enum.add_argument("--mod", type=_parse_exact_int, required=True)
    p_enum.add_argument("--range", nargs=2, type=_parse_exact_int,
                        required=True, metavar=("A", "B"))
    p_enum.add_argument("--count-only", action="store_true",
                        help="print the count, not the members")

    p_density = sub.add_parser(
        "density", parents=[common], help="admissible count bound and density for a window")
    p_density.add_argument("--mod", type=_parse_exact_int, required=True)
    p_density.add_argument("--range", nargs=2, type=_parse_exact_int,
                           required=True, metavar=("A", "B"))

    p_residue = sub.add_parser(
        "residue", parents=[common], help="canonical residue of a polynomial mod a prime")
    p_residue.add_argument("--poly", required=True)
    p_residue.add_argument("--mod", type=_parse_exact_int, required=True)

    p_verify = sub.add_parser(
        "verify", parents=[common], help="re-check a classification artifact")
    p_verify.add_argument("check", choices=("reference", "table1", "shift"))
    p_verify.add_argument("--k", type=_parse_exact_int, default=None,
                          help="window shift count (shift check only)")

    p_db = sub.add_parser("db", help="knot table operations")
    db_sub = p_db.add_subparsers(dest="db_command", required=True)
    db_sub.add_parser("validate", parents=[common], help="recompute and check every record")

    return parser


_VALUE_FLAGS = ("--poly", "--pd", "--braid", "--knot")


def _join_value_flags(args: Sequence[str]) -> List[str]:
    """Glue e.g. --poly and -t^4+t^3+t together so the leading minus of a
    polynomial (or a negative braid letter) is never mistaken for a flag."""
    out: List[str] = []
    it = iter(args)
    for token in it:
        if token in _VALUE_FLAGS:
            value = next(it, None)
            if value is None:
                out.append(token)
            else:
                out.append(f"{token}={value}")
        else:
            out.append(token)
    return out


def _config_from_args(args: Sequence[str]) -> CliConfig:
    parser = _build_parser()
    ns = parser.parse_args(_join_value_flags(args))
    command = ns.command
    if command == "verify":
        if ns.check == "shift":
            if ns.k is None:
                parser.error("verify shift requires --k")
        elif ns.k is not None:
            parser.error("--k only applies to the shift check")
        command = f"verify {ns.check}"
    elif command == "db":
        command = f"db {ns.db_command}"
    options = {k: v for k, v in vars(ns).items()
               if k not in ("command", "output", "db_command")}
    return CliConfig(command=command, output=ns.output,
                     db_path=_db_path_from_env(), options=options)


def _poly_str(v: LaurentPoly) -> str:
    return str(v)


def _expression_leaves(expr: KnotExpression) -> List[str]:
    if expr.kind == "name":
        return [expr.name]
    if expr.kind == "mirror":
        return _expression_leaves(expr.left)
    return _expression_leaves(expr.left) + _expression_leaves(expr.right)


def _cmd_compute(config: CliConfig) -> Tuple[Any, bool, List[Any], List[str]]:
    opts = config.options
    details: List[Any] = []
    text: List[str] = []
    if opts.get("pd") is not None:
        v = jones(parse_pd(opts["pd"]))
    elif opts.get("braid") is not None:
        v = jones(braid_to_pd(parse_braid(opts["braid"])))
    else:
        db = load_db(config.db_path, require_manifest=False)
        expr = parse_knot_expression(opts["knot"])
        v = evaluate_expression(db, expr)
        for name in sorted(set(_expression_leaves(expr))):
            record = db[name]
            details.append({"name": name,
                            "chirality_flipped": record.chirality_flipped})
            if record.chirality_flipped:
                text.append(f"note: {name} is stored with chirality flipped "
                            "relative to its source diagram")
    if opts.get("mod") is not None:
        v = reduce_mod_p(v, opts["mod"])
    text.insert(0, _poly_str(v))
    return _poly_str(v), True, details, text


def _cmd_conditions(config: CliConfig) -> Tuple[Any, bool, List[Any], List[str]]:
    v = parse_poly(config.options["poly"])
    report = check_conditions(v)
    labels = (
        ("1", "value 1 at t=1", report.c1),
        ("2", "value in {1,-1} at t=i", report.c2),
        ("3", "value 1 at t=zeta3", report.c3),
        ("4", "sign *and* Arf compatibility at t=i", report.c4),
        ("5", "power of sqrt(-3) at t=zeta6", report.c5),
    )
    details = [{"condition": num, "description": desc, "pass": ok}
               for num, desc, ok in labels]
    result = {
        "all_pass": report.all_pass,
        "arf_sign": report.arf_sign,
        "m": report.m,
        "zeta6_sign": report.zeta6_sign,
    }
    text = [f"({num}) {desc}: {'pass' if ok else 'FAIL'}"
            for num, desc, ok in labels]
    text.append("conditions " + ("pass" if report.all_pass else "FAIL"))
    return result, report.all_pass, details, text


def _cmd_classify(config: CliConfig) -> Tuple[Any, bool, List[Any], List[str]]:
    v = parse_poly(config.options["poly"])
    c = classify(v)
    result = {
        "family": c.family,
        "n": c.n,
        "base": _poly_str(c.base),
        "realizable_n": c.realizable_n,
    }
    text = [f"family {c.family}, n = {c.n}, base {c.base}"]
    if not c.realizable_n:
        text.append("parameter n admits no knot: 2n = +-1 +-3^l unsolvable")
    return result, c.realizable_n, [], text


def _cmd_refs(config: CliConfig) -> Tuple[Any, bool, List[Any], List[str]]:
    p = config.options["mod"]
    refs = (refined_reference_set(p) if config.options.get("refined")
            else reference_set(p))
    details = [{"family": e.family, "n": e.n, "poly": _poly_str(e.poly)}
               for e in refs.entries]
    result = {
        "p": refs.p,
        "entries": len(refs.entries),
        "distinct": refs.distinct_count,
    }
    text = [f"({e.family}, {e.n})  {e.poly}" for e in refs.entries]
    text.append(f"{len(refs.entries)} entries, {refs.distinct_count} distinct")
    return result, True, details, text


def _cmd_enumerate(config: CliConfig) -> Tuple[Any, bool, List[Any], List[str]]:
    p = config.options["mod"]
    a, b = config.options["range"]
    window = enumerate_admissible(p, a, b)
    count_only = bool(config.options.get("count_only"))
    result = {
        "p": p,
        "window": [a, b],
        "count": window.count,
        "bound": window.bound,
    }
    text = [f"window [{a}, {b}] mod {p}: {window.count} admissible "
            f"(bound {window.bound})"]
    details: List[Any] = []
    if not count_only and window.members is not None:
        members = sorted(_poly_str(g) for g in window.iter_members())
        details = members
        text.extend(members)
    return result, True, details, text


def _cmd_density(config: CliConfig) -> Tuple[Any, bool, List[Any], List[str]]:
    p = config.options["mod"]
    a, b = config.options["range"]
    count_bound, density = admissible_bound(p, a, b)
    result = {
        "p": p,
        "window": [a, b],
        "count_bound": count_bound,
        "density": str(density),
    }
    text = [f"window [{a}, {b}] mod {p}: at most {count_bound} residues, "
            f"density {density} = 4/{p}^7"]
    return result, True, [], text


def _cmd_residue(config: CliConfig) -> Tuple[Any, bool, List[Any], List[str]]:
    p = config.options["mod"]
    v = parse_poly(config.options["poly"])
    g = canonical_residue(reduce_mod_p(v, p))
    index = is_admissible(g)
    refs = reference_set(p)
    result: Dict[str, Any] = {
        "residue": _poly_str(g),
        "admissible": index is not None,
    }
    text = [f"residue mod {p}: {g}"]
    if index is not None:
        entry = refs.entries[index]
        result["family"] = entry.family
        result["n"] = entry.n
        text.append(f"admissible: matches ({entry.family}, {entry.n})")
    else:
        text.append("not admissible")
    return result, index is not None, [], text


def _cmd_verify(config: CliConfig) -> Tuple[Any, bool, List[Any], List[str]]:
    db = load_db(config.db_path, require_manifest=False)
    check = config.options["check"]
    if check == "reference":
        report = verify_reference_realization(db)
        result = report.to_json_dict()
        return result, report.ok, result["matches"], [report.to_text()]
    if check == "table1":
        reports = verify_table1(db)
        ok = all(r.ok for r in reports)
        details = [r.to_json_dict() for r in reports]
        result = {"rows": len(reports), "all_pass": ok}
        text = [r.to_text() for r in reports]
        text.append("table " + ("pass" if ok else "FAIL"))
        return result, ok, details, text
    report = verify_shift(db, config.options["k"])
    result = report.to_json_dict()
    return result, report.ok, [], [report.to_text()]


def _cmd_db_validate(config: CliConfig) -> Tuple[Any, bool, List[Any], List[str]]:
    db = load_db(config.db_path, require_manifest=False)
    report = validate_db(db)
    d = report.to_json_dict()
    result = {
        "records": len(d["records"]),
        "missing_required": d["missing_required"],
        "ok": report.ok,
    }
    return result, report.ok, d["records"], [report.to_text()]


_HANDLERS = {
    "compute": _cmd_compute,
    "conditions": _cmd_conditions,
    "classify": _cmd_classify,
    "refs": _cmd_refs,
    "enumerate": _cmd_enumerate,
    "density": _cmd_density,
    "residue": _cmd_residue,
    "verify reference": _cmd_verify,
    "verify table1": _cmd_verify,
    "verify shift": _cmd_verify,
    "db validate": _cmd_db_validate,
}


def run(args: Sequence[str]) -> int:
    try:
        config = _config_from_args(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = _HANDLERS[config.command]
    try:
        result, passed, details, text = handler(config)
    except ConditionsFailed as exc:
        # classify on a non-realizable polynomial: a verification failure,
        # not a usage error
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(config, result, passed, details, text)
    return 0 if passed else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
