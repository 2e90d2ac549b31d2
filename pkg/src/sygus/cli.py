"""Command-line driver: parse, check, fmt, and solve pipelines.

Exit codes: 0 success, 1 synthesis failure (``(fail)``), 2 lex/parse/check
errors, 3 unsupported theory, 4 I/O errors.  Results (AST dumps, formatted
programs, solutions, ``(fail)``) go to stdout; diagnostics and progress
notes go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import Optional, Sequence, TextIO

from .checker import CheckedProblem, CheckError, Diagnostic, check_program
from .lexer import LexError, tokenize
from .parser import ParseError, parse_program
from .printer import print_program, print_fail, print_solution, print_sort, print_term
from .solver import Fail, Solved, SolveError, SolverConfig, solve
from .syntax import (
    App,
    CheckSynth,
    Command,
    Constraint,
    ConstantOf,
    DeclareFun,
    DeclareVar,
    DefineFun,
    DefineSort,
    InputVariableOf,
    Let,
    Lit,
    LocalVariableOf,
    NO_POS,
    Pos,
    Program,
    Ref,
    SetLogic,
    SetOptions,
    SynthFun,
    Term,
    VariableOf,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_STATIC = 2
EXIT_UNSUPPORTED = 3
EXIT_IO = 4

#: set-options keys recognized by the solver; everything else is ignored.
_OPTION_PARSERS = {
    "max-term-size": ("max_term_size", int),
    "grid-radius": ("grid_radius", int),
    "random-samples": ("random_samples", int),
    "uf-model-count": ("uf_model_count", int),
    "seed": ("seed", int),
    "timeout-seconds": ("timeout_seconds", float),
}


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sygus",
        description="Front-end and baseline solver for SyGuS problem files.",
        epilog=(
            "exit codes: 0 success; 1 no solution found ('(fail)'); "
            "2 lex/parse/check error; 3 unsupported theory; 4 I/O error"
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="path to a .sl file, or '-' for stdin")
        p.add_argument(
            "--verbose", action="store_true", help="progress notes on stderr"
        )

    add_input(sub.add_parser("parse", help="print an AST dump"))
    add_input(sub.add_parser("check", help="run static checks only"))
    add_input(sub.add_parser("fmt", help="print the canonical form"))
    solve_p = sub.add_parser("solve", help="synthesize function bodies")
    add_input(solve_p)
    solve_p.add_argument("--max-term-size", type=int, metavar="N")
    solve_p.add_argument("--grid-radius", type=int, metavar="N")
    solve_p.add_argument("--random-samples", type=int, metavar="N")
    solve_p.add_argument("--uf-model-count", type=int, metavar="N")
    solve_p.add_argument("--seed", type=int, metavar="N")
    solve_p.add_argument("--timeout-seconds", type=float, metavar="T")
    solve_p.add_argument(
        "--constant-pool",
        metavar="C1,C2,...",
        help="integer constants for (Constant Int) expansions",
    )
    return parser


def apply_set_options(
    options: Sequence[tuple[str, str]],
    cfg: SolverConfig,
    verbose_out: Optional[TextIO] = None,
) -> SolverConfig:
    """Fold recognized set-options values into the configuration."""
    for name, raw in options:
        spec = _OPTION_PARSERS.get(name)
        if spec is None:
            if verbose_out is not None:
                verbose_out.write(f"note: ignoring unrecognized option '{name}'\n")
            continue
        fieldname, convert = spec
        try:
            value = convert(raw)
        except ValueError:
            raise CheckError(
                Diagnostic(
                    "E-OPT-VALUE",
                    NO_POS,
                    f"option '{name}' needs a {convert.__name__} value, got \"{raw}\"",
                )
            )
        cfg = replace(cfg, **{fieldname: value})
    return cfg


def _dump_term(t: Term) -> str:
    if isinstance(t, Lit):
        return f"(Lit {print_term(t)})"
    if isinstance(t, Ref):
        return f"(Ref {t.name})"
    if isinstance(t, App):
        parts = " ".join(_dump_term(a) for a in t.args)
        return f"(App {t.head} {parts})" if t.args else f"(App {t.head})"
    if isinstance(t, Let):
        bindings = " ".join(
            f"({b.name} {print_sort(b.sort)} {_dump_term(b.value)})"
            for b in t.bindings
        )
        return f"(Let ({bindings}) {_dump_term(t.body)})"
    if isinstance(t, ConstantOf):
        return f"(Constant {print_sort(t.sort)})"
    if isinstance(t, VariableOf):
        return f"(Variable {print_sort(t.sort)})"
    if isinstance(t, InputVariableOf):
        return f"(InputVariable {print_sort(t.sort)})"
    assert isinstance(t, LocalVariableOf)
    return f"(LocalVariable {print_sort(t.sort)})"


def _dump_command(cmd: Command) -> str:
    if isinstance(cmd, SetLogic):
        return f"(SetLogic {cmd.logic})"
    if isinstance(cmd, DefineSort):
        return f"(DefineSort {cmd.name} {print_sort(cmd.body)})"
    if isinstance(cmd, DeclareVar):
        return f"(DeclareVar {cmd.name} {print_sort(cmd.sort)})"
    if isinstance(cmd, DeclareFun):
        sorts = " ".join(print_sort(s) for s in cmd.arg_sorts)
        return f"(DeclareFun {cmd.name} ({sorts}) {print_sort(cmd.ret)})"
    if isinstance(cmd, DefineFun):
        params = " ".join(f"({n} {print_sort(s)})" for n, s in cmd.params)
        return (
            f"(DefineFun {cmd.name} ({params}) {print_sort(cmd.ret)} "
            f"{_dump_term(cmd.body)})"
        )
    if isinstance(cmd, SynthFun):
        params = " ".join(f"({n} {print_sort(s)})" for n, s in cmd.params)
        nts = " ".join(
            f"({nt.name} {print_sort(nt.sort)} "
            f"({' '.join(_dump_term(p) for p in nt.productions)}))"
            for nt in cmd.grammar
        )
        return f"(SynthFun {cmd.name} ({params}) {print_sort(cmd.ret)} ({nts}))"
    if isinstance(cmd, Constraint):
        return f"(Constraint {_dump_term(cmd.body)})"
    if isinstance(cmd, CheckSynth):
        return "(CheckSynth)"
    assert isinstance(cmd, SetOptions)
    opts = " ".join(f'({n} "{v}")' for n, v in cmd.opts)
    return f"(SetOptions ({opts}))"


def dump_program(p: Program) -> str:
    """Structural AST dump, one command per line."""
    return "".join(_dump_command(c) + "\n" for c in p.commands)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii", errors="strict") as f:
        return f.read()


def _diag_line(path: str, pos: Pos, code: str, message: str) -> str:
    shown = "<stdin>" if path == "-" else path
    return f"{shown}:{pos.line}:{pos.col}: {code}: {message}\n"


def _front_end(path: str, text: str, stderr: TextIO) -> Optional[Program]:
    try:
        return parse_program(tokenize(text))
    except LexError as e:
        stderr.write(_diag_line(path, Pos(e.line, e.col), "E-LEX", e.message))
    except ParseError as e:
        stderr.write(
            _diag_line(
                path, e.pos, "E-PARSE", f"expected {e.expected}, found {e.found}"
            )
        )
    return None


def _checked(path: str, program: Program, stderr: TextIO) -> Optional[CheckedProblem]:
    try:
        return check_program(program)
    except CheckError as e:
        d = e.diagnostic
        stderr.write(_diag_line(path, d.pos, d.code, d.message))
        return None


def run(
    argv: Sequence[str],
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Execute one CLI invocation and return its exit code."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    args = build_arg_parser().parse_args(argv)

    try:
        text = _read_input(args.input)
    except OSError as e:
        err.write(f"error: cannot read {args.input}: {e.strerror}\n")
        return EXIT_IO

    program = _front_end(args.input, text, err)
    if program is None:
        return EXIT_STATIC

    if args.subcommand == "parse":
        out.write(dump_program(program))
        return EXIT_OK
    if args.subcommand == "fmt":
        out.write(print_program(program))
        return EXIT_OK

    problem = _checked(args.input, program, err)
    if problem is None:
        return EXIT_STATIC
    if args.subcommand == "check":
        return EXIT_OK

    cfg = SolverConfig()
    try:
        cfg = apply_set_options(
            problem.options, cfg, verbose_out=err if args.verbose else None
        )
    except CheckError as e:
        d = e.diagnostic
        err.write(_diag_line(args.input, d.pos, d.code, d.message))
        return EXIT_STATIC

    # CLI flags win over set-options from the file.
    overrides = {
        "max_term_size": args.max_term_size,
        "grid_radius": args.grid_radius,
        "random_samples": args.random_samples,
        "uf_model_count": args.uf_model_count,
        "seed": args.seed,
        "timeout_seconds": args.timeout_seconds,
    }
    cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    if args.constant_pool is not None:
        try:
            pool = tuple(int(c.strip()) for c in args.constant_pool.split(","))
        except ValueError:
            err.write("error: --constant-pool expects comma-separated integers\n")
            return EXIT_STATIC
        cfg = replace(cfg, constant_pool=pool)

    try:
        result = solve(problem, cfg)
    except SolveError as e:
        err.write(_diag_line(args.input, NO_POS, e.code, e.message))
        return EXIT_UNSUPPORTED if e.code == "E-THEORY-UNSUPPORTED" else EXIT_STATIC

    if isinstance(result, Solved):
        out.write(print_solution(result.candidate.terms, problem.synth_tasks))
        return EXIT_OK
    assert isinstance(result, Fail)
    out.write(print_fail())
    if result.reason == "timeout":
        err.write("note: search stopped by timeout\n")
    else:
        err.write(f"note: search exhausted at max term size {cfg.max_term_size}\n")
    return EXIT_FAIL


def main() -> None:
    sys.exit(run(sys.argv[1:]))
