"""Command-line front end.

Exit status: 0 success (injection found, verification passed, axioms hold),
1 negative mathematical outcome (kernel witness, failed verification, axiom
violation), 2 input or usage error. JSON output is one object whose
``"result"`` key says what it is; ``--format text`` prints tables instead.
An input path of ``-`` reads standard input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence, TextIO

from . import __version__
from .errors import InternalContractViolation, NotABase, ThinsumError
from .exactfield import render_value
from .exchange import base_exchange_bijection, dual_base_exchange, exchange_graph
from .formats import dumps, parse_field_flag, parse_map, parse_matrix, parse_matroid, parse_subset, render_matrix
from .linalg import kernel_witness, rank
from .matroid import HARD_AXIOM_CAP, DEFAULT_AXIOM_CAP, check_axioms
from .solver import build_augmented_matroid, generate_instance, solve_variable_equation_matching, verify_injection

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json", help="output format (default json)")
    common.add_argument("--field", help="override the field declared in the file: Q or GF:p")

    parser = _Parser(prog="thinsum", description="Exact matroid and matching toolkit for homogeneous linear systems.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="find phi: cols -> rows along non-zeros, or a kernel witness")
    p.add_argument("matrix")
    p.add_argument("--route", choices=["dual", "direct"], default="dual", help="base-exchange construction")

    p = sub.add_parser("verify", parents=[common], help="check a column -> row map against a matrix")
    p.add_argument("matrix")
    p.add_argument("map")

    for name, help_ in [("rank", "exact rank of a matrix"), ("kernel", "decide whether a x = 0 only has x = 0")]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("matrix")

    helps = {
        "exchange": "base exchange bijection b0 -> b1",
        "dual-exchange": "base exchange bijection b0 -> b1 via contract, delete and dual",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("matroid")
        p.add_argument("--b0", required=True, help="JSON array of element ids")
        p.add_argument("--b1", required=True, help="JSON array of element ids")

    p = sub.add_parser("axioms", parents=[common], help="exhaustively check matroid axioms (I)-(IV)")
    p.add_argument("matroid")
    p.add_argument("--cap", type=int, default=DEFAULT_AXIOM_CAP, help=f"largest ground set to check (max {HARD_AXIOM_CAP})")

    p = sub.add_parser("gen", parents=[common], help="random matrix with trivial kernel")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--density", default="1/2", help="fraction of non-zero cells, e.g. 0.3 or 1/3")
    p.add_argument("--seed", default="0")
    return parser


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells) + "\n"


class _Run:
    def __init__(self, args, stdin: TextIO, out: TextIO):
        self.args = args
        self.stdin = stdin
        self.out = out
        self.stdin_used = False
        self.field = parse_field_flag(args.field) if args.field else None

    def read(self, path: str) -> str:
        if path == "-":
            if self.stdin_used:
                raise UsageError("standard input can only be used for one argument")
            self.stdin_used = True
            return self.stdin.read()
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None

    def emit(self, obj: dict, text: str) -> None:
        self.out.write(dumps(obj) if self.args.format == "json" else text)

    # -- commands --

    def solve(self) -> int:
        m = parse_matrix(self.read(self.args.matrix), self.field)
        outcome = solve_variable_equation_matching(m, route=self.args.route)
        if outcome.witness is not None:
            assignment = {c: render_value(v) for c, v in outcome.witness.assignment.items()}
            self.emit(
                {"result": "kernel_witness", "assignment": assignment},
                f"non-trivial solution (rank {rank(m)} < {len(m.col_ids)} columns)\n"
                + _table(["column", "value"], assignment.items()),
            )
            return EXIT_NEGATIVE
        family = build_augmented_matroid(m)
        trace = (
            f"trivial kernel: rank {len(m.col_ids)} = number of columns\n"
            f"augmented matroid: {len(family.matroid.ground)} elements, rank {family.matroid.rank_total}; "
            f"rows form a base, columns independent\n"
            f"injection via {self.args.route} base exchange, confirmed by Hall matching\n"
        )
        phi = dict(outcome.injection)
        self.emit({"result": "injection", "map": phi}, trace + _table(["column", "row"], phi.items()))
        return EXIT_OK

    def verify(self) -> int:
        m = parse_matrix(self.read(self.args.matrix), self.field)
        phi = parse_map(self.read(self.args.map))
        if verify_injection(m, phi):
            self.emit({"result": "verified"}, "verified: injective, total, every a[phi(j), j] is non-zero\n")
            return EXIT_OK
        reason = _why_not(m, phi)
        self.emit({"result": "verification_failed", "reason": reason}, f"verification failed: {reason}\n")
        return EXIT_NEGATIVE

    def rank(self) -> int:
        m = parse_matrix(self.read(self.args.matrix), self.field)
        r = rank(m)
        n_rows, n_cols = m.shape
        self.emit(
            {"result": "rank", "rank": r, "rows": n_rows, "cols": n_cols},
            _table(["rows", "cols", "rank"], [[n_rows, n_cols, r]]),
        )
        return EXIT_OK

    def kernel(self) -> int:
        m = parse_matrix(self.read(self.args.matrix), self.field)
        w = kernel_witness(m)
        if w is None:
            self.emit({"result": "trivial"}, "only the trivial solution\n")
            return EXIT_OK
        assignment = {c: render_value(v) for c, v in w.assignment.items()}
        self.emit(
            {"result": "kernel_witness", "assignment": assignment},
            "non-trivial solution\n" + _table(["column", "value"], assignment.items()),
        )
        return EXIT_NEGATIVE

    def _exchange(self, construct) -> int:
        b0_text, b1_text = self.args.b0, self.args.b1
        m = parse_matroid(self.read(self.args.matroid), self.field)
        b0 = parse_subset(b0_text, m, "--b0")
        b1 = parse_subset(b1_text, m, "--b1")
        try:
            f = construct(m, b0, b1)
        except NotABase as e:
            raise UsageError(f"--{e.which} is not a base of the matroid") from None
        except InternalContractViolation as e:
            # only reachable when the input set system is not a matroid
            self.emit({"result": "contract_violation", "message": str(e)}, f"contract violation: {e}\n")
            return EXIT_NEGATIVE
        pairs = dict(f)
        graph = exchange_graph(m, b0, b1)
        trace = f"exchange graph: {len(graph.left)} x {len(graph.right)}, {len(graph.edges)} edges\n"
        self.emit({"result": "bijection", "map": pairs}, trace + _table(["b0", "b1"], pairs.items()))
        return EXIT_OK

    def exchange(self) -> int:
        return self._exchange(base_exchange_bijection)

    def dual_exchange(self) -> int:
        return self._exchange(dual_base_exchange)

    def axioms(self) -> int:
        m = parse_matroid(self.read(self.args.matroid), self.field)
        if len(m.ground) > self.args.cap:
            raise UsageError(f"ground set has {len(m.ground)} elements, above --cap {self.args.cap}")
        report = check_axioms(m, self.args.cap)
        if report.ok:
            self.emit({"result": "axioms_hold"}, f"axioms (I)-(IV) hold on {report.ground_size} elements\n")
            return EXIT_OK
        violations = [{"axiom": v.axiom, "witness": {k: list(s) for k, s in v.witness.items()}} for v in report.violations]
        rows = [[v.axiom, "; ".join(f"{k}={{{','.join(s)}}}" for k, s in v.witness.items())] for v in report.violations]
        self.emit({"result": "axiom_violation", "violations": violations}, _table(["axiom", "witness"], rows))
        return EXIT_NEGATIVE

    def gen(self) -> int:
        from fractions import Fraction

        try:
            density = Fraction(self.args.density)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--density: cannot parse {self.args.density!r}") from None
        field = self.field or parse_field_flag("Q")
        m = generate_instance(field, self.args.rows, self.args.cols, density, self.args.seed)
        text = render_matrix(m)
        self.out.write(text if self.args.format == "json" else _table(["", *m.col_ids], [[r, *map(str, row)] for r, row in zip(m.row_ids, m.to_rows())]))
        return EXIT_OK


def _why_not(m, phi) -> str:
    missing = [c for c in m.col_ids if c not in phi]
    if missing:
        return f"no image for columns {missing}"
    extra = [c for c in phi if c not in set(m.col_ids)]
    if extra:
        return f"unknown columns {extra}"
    unknown = [r for r in phi.values() if r not in set(m.row_ids)]
    if unknown:
        return f"unknown rows {unknown}"
    if len(set(phi.values())) != len(phi):
        return "not injective"
    zeros = [c for c in m.col_ids if (phi[c], c) not in m.entries]
    return "zero entries at " + ", ".join(f"({phi[c]}, {c})" for c in zeros)


def run(argv: Optional[Sequence[str]] = None, stdin: TextIO = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    """Execute one command; returns the exit status instead of exiting."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = None
    try:
        args = build_parser().parse_args(argv)
        _validate_flags(args)
        runner = _Run(args, stdin, stdout)
        return getattr(runner, args.command.replace("-", "_"))()
    except (UsageError, ThinsumError) as e:
        stderr.write(f"thinsum: error: {e}\n")
        if args is not None and args.format == "json":
            stdout.write(dumps({"result": "error", "message": str(e)}))
        return EXIT_USAGE


def _validate_flags(args) -> None:
    paths = [getattr(args, k, None) for k in ("matrix", "map", "matroid")]
    if paths.count("-") > 1:
        raise UsageError("standard input can only be used for one argument")
    if getattr(args, "cap", DEFAULT_AXIOM_CAP) > HARD_AXIOM_CAP:
        raise UsageError(f"--cap may not exceed {HARD_AXIOM_CAP}")
    for flag in ("b0", "b1"):
        text = getattr(args, flag, None)
        if text is None:
            continue
        try:
            value = json.loads(text)
        except json.JSONDecodeError:
            value = None
        if not isinstance(value, list):
            raise UsageError(f"--{flag}: expected a JSON array of ids")


def main() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(run())


if __name__ == "__main__":
    main()
