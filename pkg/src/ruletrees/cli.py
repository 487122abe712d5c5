"""Command-line front end.

Exit codes follow the verdict: 0 for accepted / value / recognized,
1 for rejected / diverged / not recognized, 2 for usage and syntax
errors.  Any argument of the form @FILE is replaced by that file's
contents.
"""

from __future__ import annotations

import argparse
import re
import sys

from .errors import ArityMismatch, ParseError, Rejected, ResourceLimit, format_path
from .trees import LATEX_PREAMBLE, Tree, parse_name_tree, print_name_tree, tree_to_latex
from . import engine
from .engine import even_numbers, render_element, render_set
from . import natded
from . import recfun
from .recfun import DecodeError, IllFormed
from . import automata
from .automata import UnknownLetter, UnknownState


def read_arg(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as handle:
            return handle.read()
    return text


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _latex_name(name: str) -> str:
    match = re.fullmatch(r"(.*?)(\d+)", name)
    base, sub = (match.group(1), match.group(2)) if match else (name, None)
    if base == "eps":
        base = "\\varepsilon"
    return f"{base}_{{{sub}}}" if sub else base


def _print_full_tree_latex(tree: Tree):
    print(LATEX_PREAMBLE)
    body = tree_to_latex(
        tree, lambda label: (render_element(label[0]), _latex_name(label[1]))
    )
    print(f"$${body}$$")


def _load_system(selector: str):
    if selector == "even":
        return even_numbers()
    with open(selector, "r", encoding="utf-8") as handle:
        nfa = automata.parse_nfa(handle.read())
    return automata.compile_nfa(nfa).system


def _load_nfa(path: str) -> automata.Nfa:
    with open(path, "r", encoding="utf-8") as handle:
        return automata.parse_nfa(handle.read())


# ------------------------------------------------------------------- handlers

def cmd_even_iterate(args) -> int:
    elements, fixed_at = engine.iterate(even_numbers(), args.steps)
    print(render_set(elements))
    if fixed_at is not None:
        print(f"fixed point reached at step {fixed_at}")
    return 0


def cmd_even_member(args) -> int:
    witness = engine.member(even_numbers(), args.n, args.depth)
    if witness is None:
        print(f"not found within depth {args.depth}")
        return 1
    if args.latex:
        _print_full_tree_latex(witness)
    else:
        print(print_name_tree(engine.erase_elements(witness)))
    return 0


def cmd_infer(args) -> int:
    system = _load_system(args.system)
    tree = parse_name_tree(read_arg(args.tree))
    full = engine.infer_full_tree(system, tree)
    if args.latex:
        _print_full_tree_latex(full)
    else:
        print(render_element(full.label[0]))
    return 0


def cmd_natded_check(args) -> int:
    text = read_arg(args.term)
    if args.form == "sequent":
        deriv = natded.parse_sequent_deriv(text)
        natded.check_sequent_deriv(deriv)
        root = natded.split_label(deriv.label)[0]
        tree = deriv
    else:
        term = natded.parse_term(text, args.form)
        if args.form == "scheme":
            tree = natded.scheme_sequent_tree(term)
        else:
            tree = natded.var_sequent_tree(term)
        root = tree.label[0]
    if args.latex:
        print(LATEX_PREAMBLE)
        body = tree_to_latex(
            tree,
            lambda label: (
                natded.sequent_to_latex(natded.split_label(label)[0]),
                natded.split_label(label)[1] or "",
            ),
        )
        print(f"$${body}$$")
    else:
        print(natded.print_sequent(root))
    return 0


def cmd_natded_convert(args) -> int:
    text = read_arg(args.term)
    if args.to == "var":
        term = natded.parse_term(text, "scheme")
        print(natded.print_term(natded.scheme_to_var(term)))
    else:
        term = natded.parse_term(text, "var")
        print(natded.print_term(natded.var_to_scheme(term)))
    return 0


def cmd_recfun_eval(args) -> int:
    program = recfun.parse_program(read_arg(args.program))
    try:
        result = recfun.evaluate(program, args.args, args.fuel)
    except IllFormed as err:
        print(f"ill-formed at {format_path(err.path)}")
        return 1
    except ArityMismatch as err:
        print(err.reason, file=sys.stderr)
        return 2
    if result is None:
        print(f"diverged (fuel {args.fuel})")
        return 1
    print(f"value {result}")
    return 0


def cmd_recfun_godel(args) -> int:
    program = recfun.parse_program(read_arg(args.program))
    try:
        print(recfun.godel(program))
    except IllFormed as err:
        print(f"ill-formed at {format_path(err.path)}")
        return 1
    return 0


def cmd_recfun_ungodel(args) -> int:
    try:
        print(recfun.print_program(recfun.ungodel(args.code)))
    except DecodeError as err:
        print(f"decode error: {err}")
        return 1
    return 0


def cmd_recfun_diagonal(args) -> int:
    oracle = recfun.parse_program(read_arg(args.program))
    try:
        program = recfun.diagonal(oracle)
    except (IllFormed, ArityMismatch) as err:
        print(err.reason, file=sys.stderr)
        return 2
    print(recfun.print_program(program))
    if not args.self_apply:
        return 0
    result = recfun.evaluate(program, (recfun.godel(program),), args.fuel)
    if result is None:
        print(f"diverged (fuel {args.fuel})")
        return 1
    print(f"value {result}")
    return 0


def cmd_nfa_run(args) -> int:
    nfa = _load_nfa(args.file)
    if automata.recognizes(nfa, args.state, automata.parse_word(args.word)):
        print("recognized")
        return 0
    print("not recognized")
    return 1


def cmd_nfa_derivations(args) -> int:
    nfa = _load_nfa(args.file)
    derivs = automata.derivations_of(nfa, args.state, automata.parse_word(args.word))
    if args.latex and derivs:
        print(LATEX_PREAMBLE)
        system = automata.compile_nfa(nfa).system
        for deriv in derivs:
            full = engine.infer_full_tree(system, deriv)
            body = tree_to_latex(
                full, lambda label: (render_element(label[0]), _latex_name(label[1]))
            )
            print(f"$${body}$$")
    else:
        for deriv in derivs:
            print(print_name_tree(deriv))
    return 0 if derivs else 1


def cmd_nfa_rules(args) -> int:
    compiled = automata.compile_nfa(_load_nfa(args.file))
    for name, _, premise, conclusion in compiled.edges:
        print(f"{name}: {premise} -> {conclusion}")
    for name, state in compiled.finals:
        print(f"{name}: () -> {state}")
    for name in compiled.erasure:
        letter = compiled.erasure[name]
        print(f"erase {name} = " + (letter if letter else '""'))
    return 0


# --------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ruletrees",
        description="rule systems, derivation trees, and three worked instances",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    even = sub.add_parser("even", help="the two-rule system for the even naturals")
    even_sub = even.add_subparsers(dest="subcommand", required=True)
    even_iterate = even_sub.add_parser("iterate", help="print the i-th closure layer")
    even_iterate.add_argument("--steps", type=_nonneg, required=True)
    even_iterate.set_defaults(func=cmd_even_iterate)
    even_member = even_sub.add_parser("member", help="search for a derivation of N")
    even_member.add_argument("n", type=_nonneg)
    even_member.add_argument("--depth", type=_positive, required=True)
    even_member.add_argument("--latex", action="store_true")
    even_member.set_defaults(func=cmd_even_member)

    infer = sub.add_parser("infer", help="run a name-labeled tree to its conclusion")
    infer.add_argument("--system", required=True, metavar="even|FILE.nfa")
    infer.add_argument("tree")
    infer.add_argument("--latex", action="store_true")
    infer.set_defaults(func=cmd_infer)

    nd = sub.add_parser("natded", help="natural deduction for /\\ and =>")
    nd_sub = nd.add_subparsers(dest="subcommand", required=True)
    nd_check = nd_sub.add_parser("check", help="check a proof and print its sequent")
    nd_check.add_argument("--form", choices=("scheme", "var", "sequent"), required=True)
    nd_check.add_argument("term", metavar="TERM_OR_FILE")
    nd_check.add_argument("--latex", action="store_true")
    nd_check.set_defaults(func=cmd_natded_check)
    nd_convert = nd_sub.add_parser("convert", help="convert between proof-term forms")
    nd_convert.add_argument("--to", choices=("var", "scheme"), required=True)
    nd_convert.add_argument("term", metavar="TERM")
    nd_convert.set_defaults(func=cmd_natded_convert)

    rf = sub.add_parser("recfun", help="recursive functions over the naturals")
    rf_sub = rf.add_subparsers(dest="subcommand", required=True)
    rf_eval = rf_sub.add_parser("eval", help="run a program under a fuel budget")
    rf_eval.add_argument("program", metavar="PROG")
    rf_eval.add_argument("args", metavar="N", type=_nonneg, nargs="*")
    rf_eval.add_argument("--fuel", type=_positive, default=10000)
    rf_eval.set_defaults(func=cmd_recfun_eval)
    rf_godel = rf_sub.add_parser("godel", help="print the code of a program")
    rf_godel.add_argument("program", metavar="PROG")
    rf_godel.set_defaults(func=cmd_recfun_godel)
    rf_ungodel = rf_sub.add_parser("ungodel", help="decode a program from its code")
    rf_ungodel.add_argument("code", metavar="CODE", type=_nonneg)
    rf_ungodel.set_defaults(func=cmd_recfun_ungodel)
    rf_diag = rf_sub.add_parser(
        "diagonal", help="build the program that diagonalizes a binary oracle"
    )
    rf_diag.add_argument("program", metavar="HPROG")
    rf_diag.add_argument("--self-apply", action="store_true")
    rf_diag.add_argument("--fuel", type=_positive, default=10000)
    rf_diag.set_defaults(func=cmd_recfun_diagonal)

    nfa = sub.add_parser("nfa", help="finite automata as rule systems")
    nfa_sub = nfa.add_subparsers(dest="subcommand", required=True)
    nfa_run = nfa_sub.add_parser("run", help="does the automaton accept the word?")
    nfa_run.add_argument("file", metavar="FILE")
    nfa_run.add_argument("--state", required=True)
    nfa_run.add_argument("--word", required=True)
    nfa_run.set_defaults(func=cmd_nfa_run)
    nfa_derivs = nfa_sub.add_parser(
        "derivations", help="all derivations of a state spelling a word"
    )
    nfa_derivs.add_argument("file", metavar="FILE")
    nfa_derivs.add_argument("--state", required=True)
    nfa_derivs.add_argument("--word", required=True)
    nfa_derivs.add_argument("--latex", action="store_true")
    nfa_derivs.set_defaults(func=cmd_nfa_derivations)
    nfa_rules = nfa_sub.add_parser(
        "rules", help="print the compiled rules and the erasure table"
    )
    nfa_rules.add_argument("file", metavar="FILE")
    nfa_rules.set_defaults(func=cmd_nfa_rules)

    return parser


def run(argv=None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, int):
            return exc.code
        return 0 if exc.code is None else 2
    try:
        return args.func(args)
    except ParseError as err:
        print(f"syntax error: {err}", file=sys.stderr)
        return 2
    except DecodeError as err:
        print(f"decode error: {err}")
        return 1
    except Rejected as err:
        print(f"rejected {err}")
        return 1
    except (UnknownState, UnknownLetter) as err:
        print(str(err), file=sys.stderr)
        return 2
    except ResourceLimit as err:
        print(str(err), file=sys.stderr)
        return 1
    except OSError as err:
        print(str(err), file=sys.stderr)
        return 2
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))
