"""Command-line front end.

    gpaley classify -p 3 -R 4 -k 4
    gpaley verify -p 3 -R 4 -k 4 --emit-generators
    gpaley scheme -p 3 -R 2 -k 4 --full-check
    gpaley scan --max-q 100 --verify-up-to 30 --output csv
    gpaley graph6 -p 5 -R 1 -k 2

Exit codes: 0 success, 2 invalid parameters, 3 check failure or
falsification, 4 timeout, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Iterator, Optional

from . import _config
from .errors import (
    BoundExceeded,
    CheckFailed,
    GPaleyError,
    InvalidParams,
    NotAScheme,
    NotPrime,
    SearchTimeout,
)
from .finite_field import prime_power
from .paley import SCHEMA, GPaleyParams, ParamPair, build, classify

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3
EXIT_TIMEOUT = 4
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _invalid(err: Exception) -> int:
    cond = getattr(err, "condition", None)
    if cond is None and isinstance(err, NotPrime):
        cond = "prime"
    label = f" ({cond})" if cond else ""
    print(f"invalid parameters{label}: {err}", file=sys.stderr)
    return EXIT_INVALID


def cmd_classify(args, out=sys.stdout) -> int:
    try:
        pair = ParamPair(args.p, args.R, args.k)
    except (InvalidParams, NotPrime, ValueError) as err:
        return _invalid(err)
    _dump(classify(pair).to_json(pair), out)
    return EXIT_OK


def _params(args) -> GPaleyParams:
    ParamPair(args.p, args.R, args.k)
    return GPaleyParams.create(args.p, args.R, args.k)


def cmd_verify(args, out=sys.stdout) -> int:
    from .autgroup import verify_theorem

    try:
        params = _params(args)
        report = verify_theorem(
            params, timeout=args.timeout, seed=args.seed, relabel_check=not args.no_relabel
        )
    except CheckFailed as err:
        # full witness dump, generators included
        if err.report is not None:
            _dump(err.report.to_json(emit_generators=True), out)
        print(f"check failed: {err.name}", file=sys.stderr)
        return EXIT_FAILED
    except SearchTimeout as err:
        print(f"timeout: {err}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (InvalidParams, NotPrime, BoundExceeded, ValueError) as err:
        return _invalid(err)
    _dump(report.to_json(emit_generators=args.emit_generators), out)
    return EXIT_OK


def cmd_scheme(args, out=sys.stdout) -> int:
    from .cyclotomic import build_scheme, intersection_numbers

    try:
        params = _params(args)
        scheme = build_scheme(params.field, params.k)
        table = intersection_numbers(scheme, verify=args.full_check)
    except NotAScheme as err:
        print(f"not a scheme: {err}", file=sys.stderr)
        return EXIT_FAILED
    except (InvalidParams, NotPrime, BoundExceeded, ValueError) as err:
        return _invalid(err)
    _dump(table.to_json(scheme), out)
    return EXIT_OK


def cmd_graph6(args, out=sys.stdout) -> int:
    from .graph6 import to_graph6

    try:
        params = _params(args)
    except (InvalidParams, NotPrime, BoundExceeded, ValueError) as err:
        return _invalid(err)
    out.write(to_graph6(build(params), header=args.header) + "\n")
    return EXIT_OK


# ---- scan ----


@dataclass
class ScanRow:
    p: int
    R: int
    q: int
    k: int
    valency: int
    variant: Optional[str] = None
    a: Optional[int] = None
    b: Optional[int] = None
    k_prime: Optional[int] = None
    component_count: Optional[int] = None
    one_dim_affine_case: Optional[bool] = None
    aut_order: Optional[str] = None
    predicted_order: Optional[str] = None
    checks_passed: Optional[bool] = None
    error: Optional[str] = None

    def to_json(self) -> dict:
        row = {"schema": SCHEMA, **asdict(self)}
        for key in ("aut_order", "predicted_order", "checks_passed", "error"):
            if row[key] is None:
                del row[key]
        return row


SCAN_COLUMNS = ["schema"] + [f.name for f in fields(ScanRow)]
_INT_COLUMNS = {"p", "R", "q", "k", "valency", "a", "b", "k_prime", "component_count"}
_BOOL_COLUMNS = {"one_dim_affine_case", "checks_passed"}


def scan_pairs(max_q: int, resume_after: tuple[int, int] | None = None) -> Iterator[tuple[int, int, int]]:
    """Valid (p, R, k) in increasing (q, k) order."""
    for q in range(3, max_q + 1):
        pp = prime_power(q)
        if pp is None:
            continue
        p, R = pp
        for k in range(2, q):
            if (q - 1) % k or (q % 2 and ((q - 1) // k) % 2):
                continue
            if resume_after is not None and (q, k) <= resume_after:
                continue
            yield p, R, k


def scan_row(p: int, R: int, k: int, verify: bool, timeout: float | None, seed: int) -> dict:
    """One scan row; any error is recorded in the row rather than raised."""
    q = p**R
    row = ScanRow(p, R, q, k, (q - 1) // k)
    try:
        pair = ParamPair(p, R, k)
        c = classify(pair)
        row.variant = c.variant
        row.a, row.b, row.k_prime = c.a, c.b, c.k_prime
        row.component_count = c.component_count
        row.one_dim_affine_case = c.one_dim_affine_case
        if verify:
            from .autgroup import verify_theorem

            report = verify_theorem(
                GPaleyParams.create(p, R, k), timeout=timeout, seed=seed, raise_on_failure=False
            )
            row.aut_order = str(report.computed_aut_order)
            if report.predicted_aut_order is not None:
                row.predicted_order = str(report.predicted_aut_order)
            row.checks_passed = report.passed
    except CheckFailed as err:
        row.checks_passed = False
        row.error = f"CheckFailed: {err.name}"
    except Exception as err:  # recorded, never fatal
        row.error = f"{type(err).__name__}: {err}"
    return row.to_json()


def _sequenced(tasks: Iterable[tuple], jobs: int) -> Iterator[dict]:
    """Run ``scan_row`` over tasks, yielding results in task order.

    A bounded window of futures keeps memory flat on long scans.
    """
    if jobs <= 1:
        for t in tasks:
            yield scan_row(*t)
        return
    window: deque = deque()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for t in tasks:
            window.append(pool.submit(scan_row, *t))
            if len(window) >= 4 * jobs:
                yield window.popleft().result()
        while window:
            yield window.popleft().result()


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def read_scan(text: str, fmt: str = "jsonl") -> list[dict]:
    """Parse scan output back into row dicts (optional fields omitted when empty)."""
    if fmt == "jsonl":
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        row = {}
        for key in SCAN_COLUMNS:
            raw = rec.get(key, "")
            if raw == "":
                if key in ("aut_order", "predicted_order", "checks_passed", "error"):
                    continue
                row[key] = None
            elif key in _INT_COLUMNS:
                row[key] = int(raw)
            elif key in _BOOL_COLUMNS:
                row[key] = raw == "true"
            else:
                row[key] = raw
        rows.append(row)
    return rows


def _parse_resume(text: str) -> tuple[int, int]:
    try:
        q, k = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected q,k, got {text!r}")
    return q, k


def cmd_scan(args, out=sys.stdout) -> int:
    bound = _config.max_q()
    if args.max_q > bound:
        print(f"--max-q {args.max_q} exceeds bound {bound} (set GPALEY_MAX_Q)", file=sys.stderr)
        return EXIT_INVALID
    tasks = (
        (p, R, k, p**R <= args.verify_up_to, args.timeout, args.seed)
        for p, R, k in scan_pairs(args.max_q, args.resume_after)
    )
    writer = None
    if args.output == "csv":
        writer = csv.DictWriter(out, fieldnames=SCAN_COLUMNS, lineterminator="\n")
        if args.resume_after is None:
            writer.writeheader()
    failed = False
    for row in _sequenced(tasks, args.jobs):
        failed |= row.get("checks_passed") is False
        if writer is None:
            out.write(json.dumps(row) + "\n")
        else:
            writer.writerow({key: _csv_value(row.get(key)) for key in SCAN_COLUMNS})
        out.flush()
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpaley", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def triple(sp):
        sp.add_argument("-p", type=int, required=True, help="field characteristic")
        sp.add_argument("-R", type=int, required=True, help="extension degree")
        sp.add_argument("-k", type=int, required=True, help="index of the connection set")

    sp = sub.add_parser("classify", help="classify GPaley(q, (q-1)/k) arithmetically")
    triple(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="compute Aut and check it against the classification")
    triple(sp)
    sp.add_argument("--timeout", type=float, default=300.0)
    sp.add_argument("--emit-generators", action="store_true")
    sp.add_argument("--seed", type=int, default=0, help="seed for the relabelling check")
    sp.add_argument("--no-relabel", action="store_true", help="skip the relabelling check")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("scheme", help="intersection numbers of Cyc(q, k)")
    triple(sp)
    sp.add_argument("--full-check", action="store_true", help="recount every ordered pair")
    sp.set_defaults(func=cmd_scheme)

    sp = sub.add_parser("scan", help="classify (and optionally verify) every valid (q, k)")
    sp.add_argument("--max-q", type=int, required=True)
    sp.add_argument("--verify-up-to", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--output", choices=("jsonl", "csv"), default="jsonl")
    sp.add_argument("--resume-after", type=_parse_resume, default=None, metavar="Q,K")
    sp.add_argument("--timeout", type=float, default=300.0, help="per-row verification budget")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("graph6", help="print the graph in graph6 format")
    triple(sp)
    sp.add_argument("--header", action="store_true")
    sp.set_defaults(func=cmd_graph6)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        build_parser().error("--jobs must be at least 1")
    try:
        return args.func(args, sys.stdout)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except GPaleyError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
