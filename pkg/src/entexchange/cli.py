"""Command-line interface.

Usage::

    entexchange check problem.json --m 8 --n 9
    entexchange rate problem.json --m-max 100
    entexchange catalyst problem.json --m 7 --n 8
    entexchange pmax problem.json --k 3
    entexchange renyi problem.json --tau 2

A problem file is JSON::

    {"source": ["0.4", "0.4", "0.2"], "target": ["1/2", "1/4", "1/4"],
     "catalyst": {"spectrum": ["0.6", "0.4"], "copies": 4},
     "budgets": {"m_max": 64, "n_cap": 20, "q_grid": 100, "copies_max": 16}}

Exit status: 0 feasible / success, 1 infeasible, 2 input error, 3 oracle
disagreement.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import oracle
from .entropy import RenyiOrder, renyi, _real
from .errors import ProductState, SizeGuardExceeded, SpectrumError
from .majorization import majorizes
from .rates import (DEFAULT_COPIES_MAX, DEFAULT_M_MAX, DEFAULT_Q_GRID, CatalystReport,
                    catalyst_search_2level, catalyst_verify, max_conversion_probability,
                    rate_report)
from .spectrum import GroupedSpectrum, grouped, tensor_power, tensor_product

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2
EXIT_ORACLE = 3

log = logging.getLogger("entexchange")


class InputError(Exception):
    pass


class OracleMismatch(Exception):
    pass


BUDGET_KEYS = ("m_max", "n_cap", "q_grid", "copies_max")


@dataclass
class ProblemFile:
    source: GroupedSpectrum
    target: GroupedSpectrum
    catalyst: Optional[tuple[GroupedSpectrum, int]] = None
    budgets: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data) -> "ProblemFile":
        if not isinstance(data, dict):
            raise InputError("problem file must be a JSON object")
        for key in ("source", "target"):
            if not isinstance(data.get(key), list):
                raise InputError(f"'{key}' must be a list of rational strings")
        source = grouped(data["source"])
        target = grouped(data["target"])
        catalyst = None
        if data.get("catalyst") is not None:
            cat = data["catalyst"]
            if not isinstance(cat, dict) or not isinstance(cat.get("spectrum"), list):
                raise InputError("'catalyst' must be {\"spectrum\": [...], \"copies\": int}")
            copies = cat.get("copies", 1)
            if not isinstance(copies, int) or copies < 1:
                raise InputError("catalyst copies must be a positive integer")
            catalyst = (grouped(cat["spectrum"]), copies)
        budgets = data.get("budgets") or {}
        if not isinstance(budgets, dict):
            raise InputError("'budgets' must be an object")
        for key, value in budgets.items():
            if key not in BUDGET_KEYS:
                raise InputError(f"unknown budget {key!r}")
            _check_budget(key, value)
        return cls(source, target, catalyst, dict(budgets))

    @classmethod
    def load(cls, path: str) -> "ProblemFile":
        try:
            if path == "-":
                data = json.load(sys.stdin)
            else:
                with open(path, encoding="utf-8") as fh:
                    data = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None
        return cls.from_dict(data)


def _check_budget(key: str, value) -> None:
    # search budgets may be 0 (skip the search); the others must be positive
    low = 0 if key in ("q_grid", "copies_max") else 1
    if value is None and key == "n_cap":
        return
    if not isinstance(value, int) or isinstance(value, bool) or value < low:
        raise InputError(f"budget {key} must be an integer >= {low}, got {value!r}")


def _budget(args, problem: ProblemFile, key: str, default):
    value = getattr(args, key, None)
    if value is None:
        value = problem.budgets.get(key, default)
    _check_budget(key, value)
    return value


def _positive(name: str):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if value < 1:
            raise argparse.ArgumentTypeError(f"{name} must be >= 1")
        return value
    return parse


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


# -- oracle cross-checks -----------------------------------------------------

def _oracle_check(label: str, fast, slow) -> None:
    if fast != slow:
        raise OracleMismatch(f"oracle disagreement in {label}: grouped={fast} naive={slow}")
    log.info("oracle agrees on %s", label)


def _oracle_majorizes(a: GroupedSpectrum, b: GroupedSpectrum, fast: bool, label: str) -> None:
    try:
        slow = oracle.naive_majorizes(oracle.dense(a), oracle.dense(b))
    except SizeGuardExceeded:
        print(f"oracle skipped for {label}: too large to expand", file=sys.stderr)
        return
    _oracle_check(label, fast, slow)


def _too_big(*spectra: GroupedSpectrum) -> bool:
    return any(s.dim > oracle.SIZE_GUARD for s in spectra)


# -- commands ----------------------------------------------------------------

def cmd_check(args, problem: ProblemFile):
    src = tensor_power(problem.source, args.m)
    tgt = tensor_power(problem.target, args.n)
    verdict = majorizes(src, tgt)
    if args.oracle:
        if _too_big(src, tgt):
            print("oracle skipped for check: too large to expand", file=sys.stderr)
        else:
            _oracle_majorizes(src, tgt, verdict.holds, "check")
    out = {"m": args.m, "n": args.n, **verdict.to_dict()}
    return out, EXIT_OK if verdict.holds else EXIT_INFEASIBLE


def cmd_rate(args, problem: ProblemFile):
    m_max = _budget(args, problem, "m_max", DEFAULT_M_MAX)
    n_cap = _budget(args, problem, "n_cap", None)
    try:
        report = rate_report(problem.source, problem.target, m_max, n_cap)
    except ProductState as exc:
        raise InputError(str(exc)) from None
    if args.oracle and not report.budget_too_small:
        m, f = report.lower_witness
        src, tgt = tensor_power(problem.source, m), tensor_power(problem.target, f)
        if _too_big(src, tgt):
            print("oracle skipped for rate witness: too large to expand", file=sys.stderr)
        else:
            _oracle_majorizes(src, tgt, True, f"rate witness m={m} n={f}")
    return report.to_dict(), EXIT_OK


def cmd_catalyst(args, problem: ProblemFile):
    src = tensor_power(problem.source, args.m)
    tgt = tensor_power(problem.target, args.n)
    plain = majorizes(src, tgt).holds
    if problem.catalyst is not None:
        phi, copies = problem.catalyst
        ok = plain or catalyst_verify(src, tgt, phi, copies)
        report = CatalystReport(plain, ok, (phi, copies), None)
        if args.oracle:
            c = tensor_power(phi, copies)
            left, right = tensor_product(src, c), tensor_product(tgt, c)
            if _too_big(left, right):
                print("oracle skipped for catalyst: too large to expand", file=sys.stderr)
            else:
                _oracle_majorizes(left, right, catalyst_verify(src, tgt, phi, copies), "catalyst")
    else:
        q_grid = _budget(args, problem, "q_grid", DEFAULT_Q_GRID)
        copies_max = _budget(args, problem, "copies_max", DEFAULT_COPIES_MAX)
        report = catalyst_search_2level(src, tgt, q_grid, copies_max)
    out = {"m": args.m, "n": args.n, **report.to_dict()}
    return out, EXIT_OK if report.catalyst_feasible else EXIT_INFEASIBLE


def cmd_pmax(args, problem: ProblemFile):
    src = tensor_power(problem.source, args.k)
    tgt = tensor_power(problem.target, args.k)
    p = max_conversion_probability(src, tgt)
    if args.oracle:
        if _too_big(src, tgt):
            print("oracle skipped for pmax: too large to expand", file=sys.stderr)
        else:
            slow = oracle.naive_max_conversion_probability(oracle.dense(src), oracle.dense(tgt))
            _oracle_check("pmax", p, slow)
    return {"k": args.k, "probability": str(p)}, EXIT_OK


def cmd_renyi(args, problem: ProblemFile):
    try:
        order = RenyiOrder.parse(args.tau)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    s_src = renyi(problem.source, order)
    s_tgt = renyi(problem.target, order)
    ratio = s_src / s_tgt if s_tgt > 0 else None
    return {
        "order": str(order),
        "source": _real(s_src),
        "target": _real(s_tgt),
        "ratio": None if ratio is None else _real(ratio),
    }, EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "rate": cmd_rate,
    "catalyst": cmd_catalyst,
    "pmax": cmd_pmax,
    "renyi": cmd_renyi,
}


# -- output --------------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for key, value in obj.items():
            yield from _flatten(value, f"{prefix}{key}." if isinstance(value, dict) else f"{prefix}{key}")
            if isinstance(value, dict) and not value:
                yield f"{prefix}{key}", "{}"
    elif isinstance(obj, list):
        yield prefix, "[" + ", ".join(str(x) for x in obj) + "]"
    else:
        yield prefix, "-" if obj is None else str(obj)


def render_table(result: dict) -> str:
    rows = list(_flatten(result))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.rstrip('.'):<{width}}  {v}" for k, v in rows)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem JSON file, or - for stdin")
    common.add_argument("--format", choices=("json", "table"), default=None,
                        help="output format (default: table on a terminal, json otherwise)")
    common.add_argument("--oracle", action="store_true",
                        help="re-check small instances with the brute-force oracle")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="entexchange",
        description="Deterministic LOCC conversion and exchange-rate bounds for pure states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="is source^m -> target^n feasible?")
    p.add_argument("--m", type=_positive("m"), default=1)
    p.add_argument("--n", type=_positive("n"), default=1)

    p = sub.add_parser("rate", parents=[common], help="bounds on the exchange rate")
    p.add_argument("--m-max", dest="m_max", type=_positive("m-max"))
    p.add_argument("--n-cap", dest="n_cap", type=_positive("n-cap"))

    p = sub.add_parser("catalyst", parents=[common],
                       help="verify the file's catalyst, or search two-level catalysts")
    p.add_argument("--m", type=_positive("m"), default=1)
    p.add_argument("--n", type=_positive("n"), default=1)
    p.add_argument("--q-grid", dest="q_grid", type=_nonnegative)
    p.add_argument("--copies-max", dest="copies_max", type=_nonnegative)

    p = sub.add_parser("pmax", parents=[common], help="maximal conversion probability for k copies")
    p.add_argument("--k", type=_positive("k"), default=1)

    p = sub.add_parser("renyi", parents=[common], help="Rényi entropies and their ratio")
    p.add_argument("--tau", default="1", help='order: "0", "1", "inf" or a positive number')
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    fmt = args.format or ("table" if sys.stdout.isatty() else "json")
    try:
        problem = ProblemFile.load(args.problem)
        result, code = COMMANDS[args.command](args, problem)
    except (InputError, SpectrumError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OracleMismatch as exc:
        print(f"ORACLE FAILURE: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    if fmt == "json":
        print(json.dumps(result, indent=2))
    else:
        print(render_table(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
