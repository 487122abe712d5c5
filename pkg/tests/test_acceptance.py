"""End-to-end acceptance checks.

Each test covers one acceptance area and prints a single PASS/FAIL
verdict line.  Run `pytest tests/test_acceptance.py -v -s` to see the
lines alongside the test results, or execute this file directly for the
lines alone.
"""

import contextlib
import functools
import io
import itertools
import os
import random
import sys
import tempfile
import traceback

sys.path.insert(0, os.path.dirname(__file__))

import generators
from ruletrees import automata
from ruletrees import natded as nd
from ruletrees import recfun as rf
from ruletrees.cli import run as cli_run
from ruletrees.engine import (
    check_elem_tree,
    check_full_tree,
    erase_elements,
    erase_names,
    even_numbers,
    infer_conclusion,
    infer_full_tree,
    iterate,
    member,
    step,
)
from ruletrees.trees import Tree, parse_name_tree, print_name_tree

SWAP_TEXT = "fun [P /\\ Q] <snd(hyp [P /\\ Q]), fst(hyp [P /\\ Q])>"

PARITY_TEXT = """\
state even
state odd
letter a
trans even a odd
trans odd a even
final even
"""


def _verdict(label):
    def wrap(fn):
        @functools.wraps(fn)
        def inner():
            try:
                fn()
            except BaseException:
                print(f"FAIL: {label}")
                raise
            print(f"PASS: {label}")

        return inner

    return wrap


@_verdict("closure layers of the even-number system match the hand-computed sets")
def test_even_closure_layers():
    even = even_numbers()
    assert step(even, {4, 5, 6}) == {0, 6, 7, 8}
    assert step(even, set()) == {0}
    assert step(even, {0}) == {0, 2}
    assert iterate(even, 1)[0] == {0}
    assert iterate(even, 2)[0] == {0, 2}
    assert iterate(even, 3)[0] == {0, 2, 4}


@_verdict("the derivation of 4 is found, runs to 4, and passes checking")
def test_derivation_of_four():
    even = even_numbers()
    witness = member(even, 4, 3)
    assert witness == Tree((4, "f2"), (Tree((2, "f2"), (Tree((0, "f1")),)),))
    assert print_name_tree(erase_elements(witness)) == "f2(f2(f1))"
    assert infer_conclusion(even, parse_name_tree("f2(f2(f1))")) == 4
    check_full_tree(even, witness)


@_verdict("fixed-point properties hold on 200 random rule systems")
def test_closure_properties_on_random_systems():
    for seed in range(200):
        rng = random.Random(seed)
        system = generators.system(rng)

        larger = {e for e in generators.DOMAIN if rng.random() < 0.5}
        smaller = {e for e in larger if rng.random() < 0.6}
        assert step(system, smaller) <= step(system, larger)

        layers = [iterate(system, i)[0] for i in range(5)]
        for lower, upper in zip(layers, layers[1:]):
            assert lower <= upper

        closure = layers[4]
        for element in closure:
            witness = member(system, element, 4)
            assert witness is not None
            assert witness.label[0] == element
            assert witness.height() <= 4
            check_full_tree(system, witness)
            check_elem_tree(system, erase_names(witness))
            names = erase_elements(witness)
            assert infer_conclusion(system, names) == element
            assert infer_full_tree(system, names) == witness
        for element in generators.DOMAIN:
            if element not in closure:
                assert member(system, element, 4) is None


@_verdict("natural-deduction goldens check; conversions preserve sequents on 400 terms")
def test_natded_proofs_and_conversions():
    P, Q, R = nd.Atom("P"), nd.Atom("Q"), nd.Atom("R")
    swap_seq = nd.parse_sequent("|- P /\\ Q => Q /\\ P")

    swap = nd.parse_term(SWAP_TEXT, "scheme")
    assert nd.check_scheme(swap) == swap_seq

    two_axiom = nd.Pair(
        nd.HypFull(frozenset({Q, R}), P),
        nd.HypFull(frozenset({P, R}), Q),
    )
    assert nd.check_scheme(two_axiom, [P, Q, R]) == nd.parse_sequent(
        "P, Q, R |- P /\\ Q"
    )

    named_swap = nd.parse_term("fun x : P /\\ Q . <snd(x), fst(x)>", "var")
    assert nd.check_var(named_swap) == swap_seq

    for seed in range(200):
        rng = random.Random(seed)
        scheme = generators.scheme_term(rng)
        named = nd.scheme_to_var(scheme)
        assert nd.check_var(named) == nd.check_scheme(scheme)
        assert nd.var_to_scheme(named) == scheme

        other = generators.var_term(rng)
        back = nd.var_to_scheme(other)
        assert nd.check_scheme(back) == nd.check_var(other)


def _loop_eval(program, args):
    """Fuel-free reference interpreter for minimization-free programs."""
    if isinstance(program, rf.Zero):
        return 0
    if isinstance(program, rf.Succ):
        return args[0] + 1
    if isinstance(program, rf.Proj):
        return args[program.index - 1]
    if isinstance(program, rf.Comp):
        return _loop_eval(program.outer, [_loop_eval(g, args) for g in program.inner])
    if isinstance(program, rf.Rec):
        acc = _loop_eval(program.base, args[1:])
        for j in range(args[0]):
            acc = _loop_eval(program.step, [j, acc, *args[1:]])
        return acc
    raise AssertionError("minimization-free programs only")


@_verdict("adding two, program numbering, fuel, and recursion behave as stated")
def test_recfun_semantics_numbering_and_fuel():
    add_two = rf.parse_program("comp(succ; succ)")
    for x in range(21):
        assert rf.evaluate(add_two, (x,), 100) == x + 2

    programs = generators.all_programs(4)
    assert len(programs) >= 250
    codes = [rf.godel(p) for p in programs]
    assert len(set(codes)) == len(codes)
    for program, code in zip(programs, codes):
        assert rf.ungodel(code) == program

    for seed in range(200):
        rng = random.Random(seed)
        program = generators.program(rng, rng.randint(1, 2), rng.randint(1, 3))
        args = tuple(rng.randint(0, 4) for _ in range(rf.arity_of(program)))
        small = rng.randint(1, 60)
        large = small + rng.randint(1, 60)
        first = rf.evaluate(program, args, small)
        if first is not None:
            assert rf.evaluate(program, args, large) == first

    for seed in range(150):
        rng = random.Random(seed)
        arity = rng.randint(1, 2)
        program = generators.program(rng, arity, rng.randint(1, 3), allow_mu=False)
        for args in itertools.product(range(7), repeat=arity):
            assert rf.evaluate(program, args, 10**6) == _loop_eval(program, args)


@_verdict("every total stub oracle is refuted by its own diagonal program")
def test_diagonal_refutes_total_oracles():
    says_halts = rf.Zero(2)
    diag = rf.diagonal(says_halts)
    assert rf.evaluate(diag, (rf.godel(diag),), 10**4) == 0

    says_loops = rf.Comp(rf.Succ(), (rf.Zero(2),))
    contrary = rf.diagonal(says_loops)
    assert rf.evaluate(contrary, (rf.godel(contrary),), 10**4) is None


def _accepting_paths(machine, state, word):
    if not word:
        return 1 if state in machine.finals else 0
    return sum(
        _accepting_paths(machine, target, word[1:])
        for source, letter, target in machine.transitions
        if source == state and letter == word[0]
    )


@_verdict("recognition coincides with derivation existence on 120 sampled machines")
def test_parity_automaton_and_random_machines():
    parity = automata.parse_nfa(PARITY_TEXT)
    assert automata.recognizes(parity, "odd", ("a", "a", "a"))
    assert automata.recognizes(parity, "even", ())
    assert not automata.recognizes(parity, "odd", ("a", "a"))

    derivations = automata.derivations_of(parity, "odd", ("a", "a", "a"))
    assert [print_name_tree(t) for t in derivations] == ["a1(a2(a1(eps1)))"]
    compiled = automata.compile_nfa(parity)
    assert automata.erase(compiled, derivations[0]) == ("a", "a", "a")

    machines = 0
    for seed in range(120):
        rng = random.Random(seed)
        machine = generators.nfa(rng)
        machines += 1
        letters = sorted(machine.alphabet)
        for state in sorted(machine.states):
            for length in range(5):
                for word in itertools.product(letters, repeat=length):
                    runs = _accepting_paths(machine, state, word)
                    found = automata.derivations_of(machine, state, word)
                    assert automata.recognizes(machine, state, word) == (runs > 0)
                    assert bool(found) == (runs > 0)
                    assert len(found) == runs
    assert machines >= 100


def _capture(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli_run(list(argv))
    return code, out.getvalue(), err.getvalue()


@_verdict("CLI invocations print the stated reports, and printed artifacts re-parse")
def test_cli_reports_and_exit_codes():
    assert _capture("even", "iterate", "--steps", "3") == (0, "{0, 2, 4}\n", "")

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "parity.nfa")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(PARITY_TEXT)
        code, out, _ = _capture("nfa", "run", path, "--state", "odd", "--word", "aaa")
        assert (code, out) == (0, "recognized\n")
        code, out, _ = _capture(
            "nfa", "derivations", path, "--state", "odd", "--word", "aaa"
        )
        assert code == 0
        for line in out.splitlines():
            assert print_name_tree(parse_name_tree(line)) == line

    code, out, _ = _capture("recfun", "eval", "comp(succ; succ)", "3", "--fuel", "100")
    assert (code, out) == (0, "value 5\n")

    # printed witnesses re-parse and run back to their element
    code, out, _ = _capture("even", "member", "8", "--depth", "5")
    assert code == 0
    witness_text = out.strip()
    assert print_name_tree(parse_name_tree(witness_text)) == witness_text
    assert _capture("infer", "--system", "even", witness_text) == (0, "8\n", "")

    # printed terms, programs, and sequents re-parse to what was printed
    code, out, _ = _capture("natded", "convert", "--to", "var", SWAP_TEXT)
    assert code == 0
    assert nd.print_term(nd.parse_term(out.strip(), "var")) == out.strip()

    code, out, _ = _capture("recfun", "ungodel", "272")
    assert (code, out) == (0, "comp(succ; succ)\n")
    assert rf.print_program(rf.parse_program(out.strip())) == out.strip()

    code, out, _ = _capture("natded", "check", "--form", "scheme", SWAP_TEXT)
    assert code == 0
    assert nd.print_sequent(nd.parse_sequent(out.strip())) == out.strip()

    # failure verdicts map to exit 1, usage and syntax problems to exit 2
    assert _capture("even", "member", "4", "--depth", "2")[0] == 1
    assert _capture("recfun", "eval", "mu(proj^2_1)", "1", "--fuel", "50")[0] == 1
    assert _capture("infer", "--system", "even", "f2(")[0] == 2
    assert _capture("bogus")[0] == 2


_CHECKS = (
    test_even_closure_layers,
    test_derivation_of_four,
    test_closure_properties_on_random_systems,
    test_natded_proofs_and_conversions,
    test_recfun_semantics_numbering_and_fuel,
    test_diagonal_refutes_total_oracles,
    test_parity_automaton_and_random_machines,
    test_cli_reports_and_exit_codes,
)


if __name__ == "__main__":
    bad = False
    for check in _CHECKS:
        try:
            check()
        except Exception:
            traceback.print_exc()
            bad = True
    sys.exit(1 if bad else 0)
