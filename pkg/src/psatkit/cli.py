"""Command line interface: file parsing, canonical rendering, command dispatch.

Instance files are line oriented:

    c free-form comment
    p cnf <n> <m>        classical clauses, expectations implicitly [1, 1]
    p psat <n> <m>       optional "lo hi" expectation bounds after the 0
    p psatk <n> <m> <k>  the same over the k-valued truth scale

Clause literals are 1-based signed integers as in DIMACS, one clause per
line, terminated by 0. Rationals accept p/q and terminating decimal forms;
both parse exactly. Output is deterministic: rationals render reduced, and
repeated runs produce identical bytes.

Exit codes: 0 feasible/true, 1 infeasible/false, 2 usage or parse error,
3 size guard.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import oracle
from .errors import (
    InfeasibleError,
    SOLVE_COLUMN_GUARD,
    SizeGuardError,
    VERIFY_COLUMN_GUARD,
)
from .matrices import (
    RationalMatrix,
    assignment_matrix,
    bias_matrix,
    clause_value_matrix,
    kernel_basis_matrix,
    kernel_column_sums,
    kernel_column_sums_formula,
)
from .model import (
    Clause,
    ConjunctiveForm,
    Distribution,
    Interval,
    ProbabilisticAssignment,
)
from .problems import (
    ClauseProbabilityTarget,
    PsatInstance,
    clause_truth_vector,
    coherence,
    entail,
    psat,
    sat_via_psat,
)
from .rational_lp import lp_optimize_both, LpProblem

ONE = Fraction(1)
ZERO = Fraction(0)

EXIT_FEASIBLE = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

_RATIONAL_TOKEN = re.compile(r"[+-]?\d+(?:/\d+|\.\d+)?")


class ParseError(ValueError):
    """Malformed instance text; carries the offending line number."""

    def __init__(self, line: int, message: str):
        prefix = f"line {line}: " if line else ""
        super().__init__(prefix + message)
        self.line = line


class _UsageError(Exception):
    pass


@dataclass(frozen=True)
class PsatFile:
    """Raw parsed file: header, clause codes, bounds, and comment lines."""

    kind: str
    n: int
    m: int
    k: int
    clauses: tuple[tuple[int, ...], ...]
    bounds: tuple[tuple[Fraction, Fraction], ...]
    comments: tuple[str, ...]


def parse_rational(token: str, line: int = 0) -> Fraction:
    """Exact rational from 'p/q', an integer, or a terminating decimal."""
    if not _RATIONAL_TOKEN.fullmatch(token):
        raise ParseError(line, f"bad rational {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(line, f"zero denominator in {token!r}") from None


def read_psat_file(text: str) -> PsatFile:
    kind = None
    n = m = k = 0
    clauses: list[tuple[int, ...]] = []
    bounds: list[tuple[Fraction, Fraction]] = []
    comments: list[str] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(raw)
            continue
        if line.startswith("p"):
            if kind is not None:
                raise ParseError(line_no, "duplicate header")
            tokens = line.split()
            if len(tokens) >= 2 and tokens[1] in ("cnf", "psat", "psatk"):
                kind = tokens[1]
                want = 5 if kind == "psatk" else 4
                if len(tokens) != want:
                    raise ParseError(line_no, f"malformed 'p {kind}' header")
                try:
                    n = int(tokens[2])
                    m = int(tokens[3])
                    k = int(tokens[4]) if kind == "psatk" else 2
                except ValueError:
                    raise ParseError(line_no, f"malformed 'p {kind}' header") from None
            else:
                raise ParseError(line_no, "unknown header format")
            if n < 1:
                raise ParseError(line_no, f"need at least one variable, got n={n}")
            if m < 1:
                raise ParseError(line_no, f"need at least one clause, got m={m}")
            if k < 2:
                raise ParseError(line_no, f"need k >= 2, got k={k}")
            continue
        if kind is None:
            raise ParseError(line_no, "clause before header")
        tokens = line.split()
        if "0" not in tokens:
            raise ParseError(line_no, "clause lacks the terminating 0")
        zero_at = tokens.index("0")
        codes: list[int] = []
        for tok in tokens[:zero_at]:
            try:
                code = int(tok)
            except ValueError:
                raise ParseError(line_no, f"bad literal {tok!r}") from None
            if code == 0 or abs(code) > n:
                raise ParseError(
                    line_no, f"literal {code} out of range for {n} variables"
                )
            codes.append(code)
        if not codes:
            raise ParseError(line_no, "empty clause")
        tail = tokens[zero_at + 1 :]
        if kind == "cnf":
            if tail:
                raise ParseError(line_no, "unexpected tokens after clause terminator")
            bound = (ONE, ONE)
        elif not tail:
            bound = (ONE, ONE)
        elif len(tail) == 2:
            lo = parse_rational(tail[0], line_no)
            hi = parse_rational(tail[1], line_no)
            if not (ZERO <= lo <= ONE and ZERO <= hi <= ONE):
                raise ParseError(line_no, "bound outside [0, 1]")
            if lo > hi:
                raise ParseError(line_no, f"lower bound {lo} exceeds upper bound {hi}")
            bound = (lo, hi)
        else:
            raise ParseError(line_no, "expected 'lo hi' after the clause terminator")
        clauses.append(tuple(codes))
        bounds.append(bound)
    if kind is None:
        raise ParseError(0, "missing 'p' header")
    if len(clauses) != m:
        raise ParseError(0, f"header declares {m} clauses, found {len(clauses)}")
    return PsatFile(kind, n, m, k, tuple(clauses), tuple(bounds), tuple(comments))


def parse(text: str) -> PsatInstance:
    """Parse instance text into a form with per-clause expectation bounds."""
    raw = read_psat_file(text)
    try:
        form = ConjunctiveForm.from_dimacs(raw.n, raw.clauses)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None
    return PsatInstance(form, raw.k, ClauseProbabilityTarget(raw.bounds))


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _support_json(dist: Distribution) -> dict:
    return {"support": [[j, str(w)] for j, w in dist.support()]}


def _instance_text(instance: PsatInstance) -> str:
    certain = all(lo == ONE and hi == ONE for lo, hi in instance.target.bounds)
    form = instance.form
    lines = []
    if instance.k != 2:
        lines.append(f"p psatk {form.n} {form.m} {instance.k}")
    elif certain:
        lines.append(f"p cnf {form.n} {form.m}")
    else:
        lines.append(f"p psat {form.n} {form.m}")
    plain = instance.k == 2 and certain
    for clause, (lo, hi) in zip(form.clauses, instance.target.bounds):
        codes = " ".join(str(c) for c in clause.to_dimacs())
        lines.append(f"{codes} 0" if plain else f"{codes} 0 {lo} {hi}")
    return "\n".join(lines) + "\n"


def render(result, fmt: str = "text") -> str:
    """Deterministic exact rendering of toolkit values."""
    if fmt not in ("text", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(result, PsatInstance):
        if fmt == "text":
            return _instance_text(result)
        return _dumps(
            {
                "n": result.form.n,
                "m": result.form.m,
                "k": result.k,
                "clauses": [
                    {
                        "literals": list(clause.to_dimacs()),
                        "lo": str(lo),
                        "hi": str(hi),
                    }
                    for clause, (lo, hi) in zip(
                        result.form.clauses, result.target.bounds
                    )
                ],
            }
        )
    if isinstance(result, Interval):
        if fmt == "text":
            return f"[{result.lo}, {result.hi}]"
        return _dumps({"min": str(result.lo), "max": str(result.hi)})
    if isinstance(result, Distribution):
        if fmt == "text":
            return "\n".join(f"{j} {w}" for j, w in result.support())
        return _dumps(_support_json(result))
    if isinstance(result, RationalMatrix):
        if fmt == "text":
            return "\n".join(
                " ".join(str(e) for e in result.row(i)) for i in range(result.rows)
            )
        return _dumps(
            {"rows": [[str(e) for e in result.row(i)] for i in range(result.rows)]}
        )
    if isinstance(result, Fraction):
        return str(result) if fmt == "text" else _dumps(str(result))
    if isinstance(result, (tuple, list)):
        if fmt == "text":
            return " ".join(str(Fraction(v)) for v in result)
        return _dumps([str(Fraction(v)) for v in result])
    raise TypeError(f"cannot render {type(result).__name__}")


def _parse_goal(text: str, n: int) -> Clause:
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise ParseError(0, "empty goal clause")
    codes = []
    for tok in tokens:
        try:
            code = int(tok)
        except ValueError:
            raise ParseError(0, f"bad goal literal {tok!r}") from None
        if code == 0 or abs(code) > n:
            raise ParseError(0, f"goal literal {code} out of range for {n} variables")
        codes.append(code)
    return Clause.from_dimacs(codes)


def _parse_vector(text: str) -> tuple[Fraction, ...]:
    tokens = text.replace(",", " ").split()
    values = [parse_rational(tok) for tok in tokens if not tok.startswith("c")]
    if not values:
        raise ParseError(0, "empty assignment vector")
    return tuple(values)


def _guard(args, err, default: int) -> int:
    limit = getattr(args, "max_columns", None)
    if limit is None:
        return default
    if limit > default:
        print(f"warning: raising column guard to {limit}", file=err)
    return limit


def _load_instance(path: str) -> PsatInstance:
    return parse(Path(path).read_text())


def _print_witness(dist: Distribution, out) -> None:
    for j, w in dist.support():
        print(f"witness {j} {w}", file=out)


def _cmd_solve(args, out, err) -> int:
    limit = _guard(args, err, SOLVE_COLUMN_GUARD)
    instance = _load_instance(args.file)
    decision, witness = psat(instance.form, instance.target, instance.k, limit)
    if args.json:
        payload = {"status": "feasible" if decision else "infeasible"}
        if witness is not None:
            payload["witness"] = _support_json(witness)
        print(_dumps(payload), file=out)
    elif decision:
        print("feasible", file=out)
        _print_witness(witness, out)
    else:
        print("infeasible", file=out)
    return EXIT_FEASIBLE if decision else EXIT_INFEASIBLE


def _cmd_coherence(args, out, err) -> int:
    limit = _guard(args, err, SOLVE_COLUMN_GUARD)
    source = Path(args.source)
    text = source.read_text() if source.exists() else args.source
    values = _parse_vector(text)
    x = ProbabilisticAssignment(len(values), values)
    decision, witness = coherence(x, args.k, limit)
    if args.json:
        payload = {"status": "coherent" if decision else "incoherent"}
        if witness is not None:
            payload["witness"] = _support_json(witness)
        print(_dumps(payload), file=out)
    elif decision:
        print("coherent", file=out)
        _print_witness(witness, out)
    else:
        print("incoherent", file=out)
    return EXIT_FEASIBLE if decision else EXIT_INFEASIBLE


def _cmd_entail(args, out, err) -> int:
    limit = _guard(args, err, SOLVE_COLUMN_GUARD)
    instance = _load_instance(args.file)
    goal = _parse_goal(args.goal, instance.form.n)
    try:
        interval = entail(instance.form, instance.target, goal, instance.k, limit)
    except InfeasibleError:
        if args.json:
            print(_dumps({"status": "infeasible"}), file=out)
        else:
            print("infeasible", file=out)
        return EXIT_INFEASIBLE
    print(render(interval, "json" if args.json else "text"), file=out)
    return EXIT_FEASIBLE


def _cmd_sat(args, out, err) -> int:
    limit = _guard(args, err, SOLVE_COLUMN_GUARD)
    instance = _load_instance(args.file)
    decision = sat_via_psat(instance.form, instance.k, limit)
    if args.json:
        print(_dumps({"status": "satisfiable" if decision else "infeasible"}), file=out)
    else:
        print("satisfiable" if decision else "infeasible", file=out)
    return EXIT_FEASIBLE if decision else EXIT_INFEASIBLE


def _cmd_verify(args, out, err) -> int:
    limit = _guard(args, err, VERIFY_COLUMN_GUARD)
    instance = _load_instance(args.file)
    form, target = instance.form, instance.target
    matrix = clause_value_matrix(form, instance.k, limit)
    lp_decision, _ = psat(form, target, instance.k, limit)
    try:
        oracle.support_enumeration_optimize(
            matrix, target.lower, target.upper, (ZERO,) * matrix.cols, limit
        )
        oracle_decision = True
    except InfeasibleError:
        oracle_decision = False
    checks = [("feasibility", _feas(lp_decision), _feas(oracle_decision))]
    if target.is_exact():
        hull_decision, _ = oracle.hull_membership(matrix, target.lower, limit)
        checks.append(("hull", _feas(lp_decision), _feas(hull_decision)))
    if args.goal is not None:
        goal = _parse_goal(args.goal, form.n)
        z = clause_truth_vector(goal, form.n, instance.k, limit)
        problem = LpProblem(
            num_vars=matrix.cols,
            objective=z,
            rows=tuple(matrix.row(i) for i in range(matrix.rows)),
            row_lower=target.lower,
            row_upper=target.upper,
        )
        try:
            lp_side = render(lp_optimize_both(problem))
        except InfeasibleError:
            lp_side = "infeasible"
        try:
            oracle_side = render(
                oracle.support_enumeration_optimize(
                    matrix, target.lower, target.upper, z, limit
                )
            )
        except InfeasibleError:
            oracle_side = "infeasible"
        checks.append(("entail", lp_side, oracle_side))
    agree = all(lp == orc for _, lp, orc in checks)
    if args.json:
        payload = {
            "status": "agree" if agree else "disagree",
            "checks": [
                {"name": name, "lp": lp, "oracle": orc, "agree": lp == orc}
                for name, lp, orc in checks
            ],
        }
        print(_dumps(payload), file=out)
    else:
        for name, lp, orc in checks:
            print(f"{name} lp={lp} oracle={orc}", file=out)
        print("agree" if agree else "disagree", file=out)
    return EXIT_FEASIBLE if agree else EXIT_INFEASIBLE


def _feas(decision: bool) -> str:
    return "feasible" if decision else "infeasible"


def _cmd_matrix(args, out, err) -> int:
    limit = _guard(args, err, SOLVE_COLUMN_GUARD)
    n, k = args.n, args.k
    which = args.which
    if which == "W":
        result = assignment_matrix(n, k, limit)
    elif which == "K":
        result = kernel_basis_matrix(n, k, limit)
    elif which == "Z":
        if k != 2:
            raise _UsageError("the bias matrix is classical; use --k 2")
        result = bias_matrix(n, limit)
    else:
        result = (
            kernel_column_sums_formula(n, limit)
            if k == 2
            else kernel_column_sums(n, k, limit)
        )
    if args.json:
        if which == "c":
            payload = {"which": which, "n": n, "k": k, "entries": [str(v) for v in result]}
        else:
            payload = {
                "which": which,
                "n": n,
                "k": k,
                "rows": [[str(e) for e in result.row(i)] for i in range(result.rows)],
            }
        print(_dumps(payload), file=out)
    else:
        print(render(result), file=out)
    return EXIT_FEASIBLE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="psat", description="Exact probabilistic satisfiability toolkit")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument(
        "--max-columns", type=int, metavar="N", help="override the column guard"
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("solve", parents=[common], help="expectation-bound decision plus witness")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_solve)
    p = sub.add_parser("coherence", parents=[common], help="realize a per-variable expectation vector")
    p.add_argument("source", help="file with rationals, or an inline list like '1/2,1/2'")
    p.add_argument("--k", type=int, default=2, help="truth-value count (default 2)")
    p.set_defaults(handler=_cmd_coherence)
    p = sub.add_parser("entail", parents=[common], help="expectation range of a goal clause")
    p.add_argument("file")
    p.add_argument("--goal", required=True, help="goal clause literals, e.g. '-1 2'")
    p.set_defaults(handler=_cmd_entail)
    p = sub.add_parser("sat", parents=[common], help="classical satisfiability via certainty bounds")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_sat)
    p = sub.add_parser("verify", parents=[common], help="cross-check solver against brute force")
    p.add_argument("file")
    p.add_argument("--goal", help="also cross-check the goal expectation range")
    p.set_defaults(handler=_cmd_verify)
    p = sub.add_parser("matrix", parents=[common], help="print an exact matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--which", choices=("W", "K", "Z", "c"), default="W")
    p.set_defaults(handler=_cmd_matrix)
    return parser


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    """Execute one command; returns the exit code instead of raising SystemExit."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    if getattr(args, "handler", None) is None:
        print("error: no command given (try --help)", file=err)
        return EXIT_USAGE
    try:
        return args.handler(args, out, err)
    except _UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except SizeGuardError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_GUARD
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))
