"""Command-line front end: validate job files, compute characters and
conductors, run the verification battery, and drive the lattice oracles.

Exit codes: 0 success, 1 binding verification failure, 2 input/format error,
3 computation error (e.g. an irrational pairing under --strict-rational).

Job files are JSON:

    {
      "version": 1,
      "ramification": {
        "group": {"cyclic": 6},              // or {"abelian": [...]},
                                             // {"perm": [[[1,2]],...]}, {"table": [[...]]}
        "filtration": [[0,1,2,3,4,5],[0,3]], // members of Gamma_0, Gamma_1, ...
        "p": 2,
        "tame": {"generator": 1, "exponent": 1}   // optional when n = 1
      },
      "reps": {"chi": {"values": ["1", "-1", ...]}},   // one value per class
      "oracle": {"p": 2, "f": [-2,0,1], "galois": [[0,1],[0,-1]],
                 "module": [[[1]], [[-1]]]},
      "options": {"p_average": false, "strict_rational": false}
    }

Rational values are strings like "3/2"; cyclotomic values are
{"n": N, "terms": [[k, "a/b"], ...]} meaning sum (a/b) * zeta_N^k.  All
output is exact and deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cyclotomic import Cyclotomic, NotRationalError, parse_value
from .grouptheory import (
    ClassFunction,
    GroupValidationError,
    build_group,
    subgroup,
)
from .ramification import (
    RamificationData,
    RamificationError,
    artin_character,
    build_ramification,
    herbrand_phi,
    herbrand_psi,
    discriminant_valuation,
    p_average,
    refined_artin,
)
from .conductor import (
    StabilityError,
    artin_conductor,
    conductor,
    verify_suite,
)
from .oracle import (
    MonogenicOrder,
    OracleError,
    build_monogenic_order,
    filtration_from_monogenic,
    oracle_monogenic_clin,
    oracle_tame_clin,
    regular_action,
)

EXIT_OK = 0
EXIT_BINDING_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_COMPUTE_ERROR = 3

FORMAT_VERSION = 1


class InputError(Exception):
    """Anything wrong with the job file itself."""


# ---------------------------------------------------------------------------
# job file parsing


def load_job(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            job = json.load(fh)
    except OSError as ex:
        raise InputError(f"cannot read {path}: {ex}") from ex
    except json.JSONDecodeError as ex:
        raise InputError(f"{path}:{ex.lineno}:{ex.colno}: invalid JSON: {ex.msg}") from ex
    if not isinstance(job, dict):
        raise InputError("job file must be a JSON object")
    version = job.get("version")
    if version != FORMAT_VERSION:
        raise InputError(f"unknown format version {version!r} (expected {FORMAT_VERSION})")
    return job


def ramification_from_job(job: dict) -> RamificationData:
    sec = job.get("ramification")
    if not isinstance(sec, dict):
        raise InputError("job file has no 'ramification' section")
    try:
        gamma = build_group(sec["group"])
        filtration = sec.get("filtration", [])
        tame = None
        if "tame" in sec and sec["tame"] is not None:
            tame = (int(sec["tame"]["generator"]), int(sec["tame"]["exponent"]))
        return build_ramification(gamma, filtration, int(sec["p"]), tame)
    except KeyError as ex:
        raise InputError(f"ramification section is missing {ex}") from ex


def rep_from_job(job: dict, name: str, data: RamificationData) -> ClassFunction:
    reps = job.get("reps", {})
    if name not in reps:
        raise InputError(f"no representation named {name!r} in the job file")
    values = reps[name].get("values")
    if not isinstance(values, list):
        raise InputError(f"representation {name!r} has no 'values' array")
    vals = tuple(parse_value(v) for v in values)
    if len(vals) != len(data.gamma.classes):
        raise InputError(
            f"representation {name!r} has {len(vals)} values, "
            f"expected one per conjugacy class ({len(data.gamma.classes)})"
        )
    return ClassFunction(data.gamma, vals)


def oracle_from_job(obj: dict) -> tuple[MonogenicOrder, list | None]:
    sec = obj.get("oracle", obj)
    if not isinstance(sec, dict) or "f" not in sec:
        raise InputError("no oracle section (fields p, f, galois) found")
    try:
        order = build_monogenic_order(sec["p"], sec["f"], sec["galois"])
    except KeyError as ex:
        raise InputError(f"oracle section is missing {ex}") from ex
    return order, sec.get("module")


# ---------------------------------------------------------------------------
# output helpers


def _emit_value(v, fmt: str) -> str:
    if isinstance(v, Cyclotomic):
        return json.dumps(v.encode(), sort_keys=True, separators=(",", ":"))
    return str(v)


def _emit_class_function(chi: ClassFunction, fmt: str, out) -> None:
    if fmt == "json":
        print(
            json.dumps(
                {"values": [v.encode() for v in chi.values]},
                sort_keys=True,
                separators=(",", ":"),
            ),
            file=out,
        )
    else:
        for i, v in enumerate(chi.values):
            print(f"class {i}: {_emit_value(v, fmt)}", file=out)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    try:
        job = load_job(args.path)
        ramification_from_job(job)
    except InputError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (RamificationError, GroupValidationError, ValueError) as ex:
        print(f"invalid: {ex}", file=sys.stderr)
        return EXIT_BINDING_FAILURE
    print("ok")
    return EXIT_OK


def cmd_compute(args) -> int:
    try:
        job = load_job(args.path)
        data = ramification_from_job(job)
    except InputError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (RamificationError, GroupValidationError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    options = job.get("options", {})
    averaged = args.p_average or bool(options.get("p_average"))
    strict = args.strict_rational or bool(options.get("strict_rational"))
    on_unstable = "error" if strict else "warn"
    what, rest = args.what, args.args
    try:
        if what == "artin":
            _emit_class_function(artin_character(data), args.format, sys.stdout)
        elif what == "bar":
            chi = refined_artin(data)
            if averaged:
                chi = p_average(chi, data.p, data.n)
            _emit_class_function(chi, args.format, sys.stdout)
        elif what == "bar-avg":
            chi = p_average(refined_artin(data), data.p, data.n)
            _emit_class_function(chi, args.format, sys.stdout)
        elif what == "conductor":
            chi = rep_from_job(job, _one_arg(rest, "conductor REP"), data)
            print(conductor(data, chi, averaged=averaged, on_unstable=on_unstable))
        elif what == "artin-conductor":
            chi = rep_from_job(job, _one_arg(rest, "artin-conductor REP"), data)
            print(artin_conductor(data, chi))
        elif what == "herbrand":
            if len(rest) != 2 or rest[0] not in ("phi", "psi"):
                raise InputError("usage: compute PATH herbrand {phi|psi} RATIONAL")
            fn = herbrand_phi if rest[0] == "phi" else herbrand_psi
            print(fn(data, Fraction(rest[1])))
        elif what == "disc":
            members = [int(x) for x in _one_arg(rest, "disc MEMBERS").split(",")]
            print(discriminant_valuation(data, subgroup(data.gamma, members)))
        else:
            raise InputError(f"unknown computation {what!r}")
    except InputError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (NotRationalError, StabilityError) as ex:
        print(f"computation error: {ex}", file=sys.stderr)
        return EXIT_COMPUTE_ERROR
    except (RamificationError, GroupValidationError, ValueError, ZeroDivisionError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return EXIT_OK


def _one_arg(rest: list[str], usage: str) -> str:
    if len(rest) != 1:
        raise InputError(f"usage: compute PATH {usage}")
    return rest[0]


def cmd_verify(args) -> int:
    try:
        job = load_job(args.path)
    except InputError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        data = ramification_from_job(job)
    except InputError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (RamificationError, GroupValidationError, ValueError) as ex:
        # admissibility is the zeroth binding check
        record = {
            "name": "admissibility",
            "inputs": args.path,
            "expected": "valid ramification data",
            "computed": f"error: {ex}",
            "passed": False,
            "binding": True,
        }
        print(json.dumps(record, sort_keys=True))
        print("1 checks: 0 passed, 1 binding failures, 0 advisory failures", file=sys.stderr)
        return EXIT_BINDING_FAILURE
    report = verify_suite(data, advisory=args.advisory)
    for rec in report.records:
        print(rec.to_json())
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.binding_ok else EXIT_BINDING_FAILURE


def cmd_oracle(args) -> int:
    sub = args.oracle_what
    try:
        if sub == "tame":
            if len(args.args) < 2:
                raise InputError("usage: oracle tame N I [I ...]")
            n = int(args.args[0])
            exps = [int(x) for x in args.args[1:]]
            print(oracle_tame_clin(n, exps))
        elif sub == "monogenic":
            if len(args.args) != 1:
                raise InputError("usage: oracle monogenic ORDER.json [--module NAME]")
            with open(args.args[0], "r", encoding="utf-8") as fh:
                obj = json.load(fh)
            order, module = oracle_from_job(obj)
            if args.module == "regular" or (args.module is None and module is None):
                action = regular_action(order.group)
            elif args.module is None:
                action = module
            else:
                raise InputError(f"unknown module {args.module!r} (only 'regular' is named)")
            print(oracle_monogenic_clin(order, action))
        elif sub == "derive-fixture":
            if len(args.args) != 1:
                raise InputError("usage: oracle derive-fixture ORDER.json [-o OUT]")
            with open(args.args[0], "r", encoding="utf-8") as fh:
                obj = json.load(fh)
            order, _ = oracle_from_job(obj)
            data = filtration_from_monogenic(order, args.prime_choice)
            out = _job_from_data(data)
            text = json.dumps(out, indent=2, sort_keys=True)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text + "\n")
            else:
                print(text)
        else:
            raise InputError(f"unknown oracle subcommand {sub!r}")
    except InputError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (OSError, json.JSONDecodeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (OracleError, ValueError) as ex:
        print(f"computation error: {ex}", file=sys.stderr)
        return EXIT_COMPUTE_ERROR
    return EXIT_OK


def _job_from_data(data: RamificationData) -> dict:
    sec = {
        "group": {"table": [list(row) for row in data.gamma.table]},
        "filtration": [sorted(m) for m in data.filtration],
        "p": data.p,
    }
    if data.n > 1:
        sec["tame"] = {"generator": data.tame_generator, "exponent": data.tame_exponent}
    return {"version": FORMAT_VERSION, "ramification": sec}


# ---------------------------------------------------------------------------
# driver


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="refartin",
        description="Exact refined Artin characters and base-change conductors.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="validate a job file")
    p_val.add_argument("path")
    p_val.set_defaults(func=cmd_validate)

    p_cmp = sub.add_parser("compute", help="run one computation from a job file")
    p_cmp.add_argument("path")
    p_cmp.add_argument(
        "what",
        choices=["artin", "bar", "bar-avg", "conductor", "artin-conductor", "herbrand", "disc"],
    )
    p_cmp.add_argument("args", nargs="*")
    p_cmp.add_argument("--p-average", action="store_true")
    p_cmp.add_argument("--strict-rational", action="store_true")
    p_cmp.add_argument("--format", choices=["json", "text"], default="text")
    p_cmp.set_defaults(func=cmd_compute)

    p_ver = sub.add_parser("verify", help="replay the identity battery")
    p_ver.add_argument("path")
    p_ver.add_argument(
        "--advisory",
        action="store_true",
        help="mark extension-dependent identities advisory (for abstract data)",
    )
    p_ver.set_defaults(func=cmd_verify)

    p_orc = sub.add_parser("oracle", help="lattice-determinant oracles")
    p_orc.add_argument("oracle_what", choices=["tame", "monogenic", "derive-fixture"])
    p_orc.add_argument("args", nargs="*")
    p_orc.add_argument("--module", default=None, help="'regular' to override the file module")
    p_orc.add_argument("--prime-choice", type=int, default=0)
    p_orc.add_argument("-o", "--output", default=None)
    p_orc.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
