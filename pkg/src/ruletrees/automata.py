"""Nondeterministic finite automata viewed as rule systems over states.

Each transition `from --letter--> to` compiles to a unary rule whose
premise is `to` and whose conclusion is `from`: a derivation of a state
s is a run that starts at s, consumes one letter per rule, and bottoms
out in a final state.  Erasing the rule names of such a chain, top
down, spells the word the run reads.

Rules for the same letter are told apart by a 1-based index, assigned
after sorting that letter's rules by (premise, conclusion); final
states get nullary rules eps1, eps2, ... in state-name order.

The file format is line oriented:

    state NAME
    final NAME
    letter NAME
    trans FROM LETTER TO

with `#` starting a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, Rejected
from .trees import Tree, print_name_tree
from .engine import Rule, RuleSystem

Word = tuple[str, ...]


class UnknownState(ValueError):
    pass


class UnknownLetter(ValueError):
    pass


class MalformedChain(Rejected):
    """A tree handed to `erase` is not a linear chain ending in a final rule."""


@dataclass(frozen=True)
class Nfa:
    states: frozenset[str]
    alphabet: frozenset[str]
    transitions: frozenset[tuple[str, str, str]]
    finals: frozenset[str]

    def __post_init__(self):
        for state in self.finals:
            if state not in self.states:
                raise ValueError(f"final state {state} is not declared")
        for source, letter, target in self.transitions:
            if source not in self.states:
                raise ValueError(f"transition source {source} is not declared")
            if target not in self.states:
                raise ValueError(f"transition target {target} is not declared")
            if letter not in self.alphabet:
                raise ValueError(f"transition letter {letter} is not declared")


@dataclass(frozen=True)
class CompiledRules:
    """The rule-system view of an automaton.

    `edges` lists the letter rules as (name, letter, premise, conclusion);
    `finals` lists the nullary rules as (name, state); `erasure` maps
    every rule name to the letter it spells, the empty string for final
    rules.
    """

    system: RuleSystem
    edges: tuple[tuple[str, str, str, str], ...]
    finals: tuple[tuple[str, str], ...]
    erasure: dict[str, str]


def compile_nfa(nfa: Nfa) -> CompiledRules:
    edges = []
    for letter in sorted(nfa.alphabet):
        letter_edges = sorted(
            (target, source)
            for source, lt, target in nfa.transitions
            if lt == letter
        )
        for k, (premise, conclusion) in enumerate(letter_edges, start=1):
            edges.append((f"{letter}{k}", letter, premise, conclusion))
    finals = [
        (f"eps{j}", state) for j, state in enumerate(sorted(nfa.finals), start=1)
    ]
    rules = [
        Rule(name, 1, lambda x, p=premise, c=conclusion: c if x == p else None)
        for name, _, premise, conclusion in edges
    ]
    rules += [Rule(name, 0, lambda s=state: s) for name, state in finals]
    erasure = {name: letter for name, letter, _, _ in edges}
    erasure.update({name: "" for name, _ in finals})
    return CompiledRules(
        system=RuleSystem(tuple(rules), domain="state"),
        edges=tuple(edges),
        finals=tuple(finals),
        erasure=erasure,
    )


def erase(compiled: CompiledRules, tree: Tree) -> Word:
    """Spell the word a derivation chain reads, root to leaf."""
    letters = []
    node, path = tree, ()
    while True:
        if node.label not in compiled.erasure:
            raise MalformedChain(path, f"unknown rule {node.label}")
        letter = compiled.erasure[node.label]
        if not node.children:
            if letter != "":
                raise MalformedChain(path, "a chain ends in a final-state rule")
            return tuple(letters)
        if len(node.children) > 1:
            raise MalformedChain(path, "a chain has at most one premise per node")
        if letter == "":
            raise MalformedChain(path, "a final-state rule takes no premise")
        letters.append(letter)
        node, path = node.children[0], path + (0,)


def _check_inputs(nfa: Nfa, state: str, word: Word):
    if state not in nfa.states:
        raise UnknownState(f"unknown state {state}")
    for letter in word:
        if letter not in nfa.alphabet:
            raise UnknownLetter(f"unknown letter {letter}")


def recognizes(nfa: Nfa, state: str, word: Word) -> bool:
    """Standard subset-simulation run from `state` over `word`."""
    _check_inputs(nfa, state, tuple(word))
    current = {state}
    for letter in word:
        current = {
            target
            for source, lt, target in nfa.transitions
            if lt == letter and source in current
        }
    return bool(current & nfa.finals)


def derivations_of(nfa: Nfa, state: str, word: Word) -> list[Tree]:
    """All name-labeled derivation chains concluding `state` and spelling
    `word`, sorted by their linear form."""
    word = tuple(word)
    _check_inputs(nfa, state, word)
    compiled = compile_nfa(nfa)
    by_conclusion: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for name, letter, premise, conclusion in compiled.edges:
        by_conclusion.setdefault((conclusion, letter), []).append((name, premise))
    eps_name = {st: name for name, st in compiled.finals}

    def chains(at: str, rest: Word) -> list[Tree]:
        if not rest:
            if at in eps_name:
                return [Tree(eps_name[at])]
            return []
        found = []
        for name, premise in by_conclusion.get((at, rest[0]), []):
            found.extend(Tree(name, (tail,)) for tail in chains(premise, rest[1:]))
        return found

    return sorted(chains(state, word), key=print_name_tree)


def is_deterministic(nfa: Nfa) -> bool:
    seen = set()
    for source, letter, _ in nfa.transitions:
        if (source, letter) in seen:
            return False
        seen.add((source, letter))
    return True


def parse_nfa(text: str) -> Nfa:
    states, alphabet, finals = set(), set(), set()
    transitions = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        keyword, rest = fields[0], fields[1:]
        if keyword == "state" and len(rest) == 1:
            states.add(rest[0])
        elif keyword == "final" and len(rest) == 1:
            finals.add(rest[0])
        elif keyword == "letter" and len(rest) == 1:
            alphabet.add(rest[0])
        elif keyword == "trans" and len(rest) == 3:
            transitions.add((rest[0], rest[1], rest[2]))
        else:
            raise ParseError(f"line {lineno}: cannot read {line!r}", lineno)
    try:
        return Nfa(
            frozenset(states),
            frozenset(alphabet),
            frozenset(transitions),
            frozenset(finals),
        )
    except ValueError as err:
        raise ParseError(str(err), 0) from None


def parse_word(text: str) -> Word:
    """Split a word argument: on commas when present, else per character."""
    if not text:
        return ()
    if "," in text:
        return tuple(part for part in (p.strip() for p in text.split(",")) if part)
    return tuple(text)


def format_word(word: Word) -> str:
    if not word:
        return '""'
    if all(len(letter) == 1 for letter in word):
        return "".join(word)
    return ",".join(word)
