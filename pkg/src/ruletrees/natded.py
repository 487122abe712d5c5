"""Natural deduction for conjunction and implication.

Sequents over the fragment built from atoms, `/\\` and `=>` are proved
with five rules: axiom, and-intro, and-elim1, and-elim2, imp-intro.
Contexts are sets, so inserting a hypothesis twice is a no-op.

Proofs come in three interchangeable forms:

  * sequent derivations: trees labeled with sequents, optionally tagged
    with the rule used at each node;
  * scheme terms: proof terms whose hypotheses carry the proposition
    they use (`hyp [A]`) or a full context (`axiom {G | A}`);
  * named-variable terms: ordinary lambda terms with annotated binders,
    where a variable refers to the innermost enclosing binder.

Checking a scheme or variable term works in two passes: contexts flow
from the root toward the leaves (each binder extends the context with
its annotation), then conclusions flow back from the leaves to the
root.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import ParseError, Rejected
from .trees import Tree


# ---------------------------------------------------------------- propositions

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class And:
    left: "Prop"
    right: "Prop"


@dataclass(frozen=True)
class Imp:
    left: "Prop"
    right: "Prop"


Prop = Union[Atom, And, Imp]

Context = frozenset


@dataclass(frozen=True)
class Sequent:
    ctx: frozenset
    concl: Prop

    def __str__(self) -> str:
        return print_sequent(self)


# ----------------------------------------------------------------- proof terms

@dataclass(frozen=True)
class Hyp:
    """Use of a hypothesis, identified by the proposition it proves."""

    prop: Prop


@dataclass(frozen=True)
class HypFull:
    """Use of a hypothesis carrying its full context explicitly."""

    ctx: frozenset
    prop: Prop


@dataclass(frozen=True)
class Lam:
    """Implication introduction; the binder is the proposition alone."""

    prop: Prop
    body: "SchemeTerm"


@dataclass(frozen=True)
class Pair:
    left: "SchemeTerm"
    right: "SchemeTerm"


@dataclass(frozen=True)
class Fst:
    body: "SchemeTerm"


@dataclass(frozen=True)
class Snd:
    body: "SchemeTerm"


SchemeTerm = Union[Hyp, HypFull, Lam, Pair, Fst, Snd]


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class LamV:
    name: str
    prop: Prop
    body: "VarTerm"


@dataclass(frozen=True)
class PairV:
    left: "VarTerm"
    right: "VarTerm"


@dataclass(frozen=True)
class FstV:
    body: "VarTerm"


@dataclass(frozen=True)
class SndV:
    body: "VarTerm"


VarTerm = Union[Var, LamV, PairV, FstV, SndV]


# ------------------------------------------------------------------- rule names

AXIOM = "axiom"
AND_INTRO = "and-intro"
AND_ELIM1 = "and-elim1"
AND_ELIM2 = "and-elim2"
IMP_INTRO = "imp-intro"

ND_RULES = (AXIOM, AND_INTRO, AND_ELIM1, AND_ELIM2, IMP_INTRO)


class HypNotInContext(Rejected):
    pass


class ShapeMismatch(Rejected):
    pass


class ContextMismatch(Rejected):
    pass


class UnboundVariable(Rejected):
    pass


class NoMatchingBinder(Rejected):
    pass


# --------------------------------------------------------- sequent derivations

def split_label(label) -> tuple[Sequent, str | None]:
    if isinstance(label, Sequent):
        return label, None
    seq, name = label
    return seq, name


def _rule_matches(name: str, seq: Sequent, premises: tuple[Sequent, ...]) -> str | None:
    """None when the rule justifies the node, otherwise a reason."""
    if name == AXIOM:
        if premises:
            return "axiom takes no premises"
        if seq.concl not in seq.ctx:
            return f"conclusion {print_prop(seq.concl)} is not in the context"
        return None
    if name == AND_INTRO:
        if len(premises) != 2:
            return "and-intro takes two premises"
        if not isinstance(seq.concl, And):
            return "conclusion is not a conjunction"
        left, right = premises
        if left.ctx != seq.ctx or right.ctx != seq.ctx:
            return "premise contexts differ from the conclusion's"
        if left.concl != seq.concl.left or right.concl != seq.concl.right:
            return "premises do not conclude the two conjuncts in order"
        return None
    if name == AND_ELIM1 or name == AND_ELIM2:
        if len(premises) != 1:
            return f"{name} takes one premise"
        (premise,) = premises
        if premise.ctx != seq.ctx:
            return "premise context differs from the conclusion's"
        if not isinstance(premise.concl, And):
            return "premise does not conclude a conjunction"
        kept = premise.concl.left if name == AND_ELIM1 else premise.concl.right
        if kept != seq.concl:
            return "conclusion is not the selected conjunct"
        return None
    if name == IMP_INTRO:
        if len(premises) != 1:
            return "imp-intro takes one premise"
        if not isinstance(seq.concl, Imp):
            return "conclusion is not an implication"
        (premise,) = premises
        if premise.ctx != seq.ctx | {seq.concl.left}:
            return "premise context must extend the conclusion's with the antecedent"
        if premise.concl != seq.concl.right:
            return "premise does not conclude the consequent"
        return None
    return f"unknown rule {name}"


def check_sequent_deriv(tree: Tree) -> None:
    """Check a sequent-labeled derivation.

    A node tagged with a rule name must be justified by that rule; an
    untagged node may be justified by any of the five.  Raises Rejected
    at the first failing node in preorder.
    """
    for path, node in tree.nodes():
        seq, name = split_label(node.label)
        premises = tuple(split_label(c.label)[0] for c in node.children)
        if name is not None:
            reason = _rule_matches(name, seq, premises)
            if reason is not None:
                raise Rejected(path, reason)
        elif all(_rule_matches(r, seq, premises) is not None for r in ND_RULES):
            raise Rejected(path, f"no rule justifies {print_sequent(seq)}")


# ----------------------------------------------------- scheme and var checking

def scheme_sequent_tree(term: SchemeTerm, root_ctx: Iterable[Prop] = ()) -> Tree:
    """Reconstruct the sequent derivation a scheme term denotes.

    Labels are (Sequent, rule name) pairs; the root context defaults to
    empty.  Raises Rejected (HypNotInContext, ContextMismatch, or
    ShapeMismatch) at the offending node.
    """
    return _scheme_node(term, frozenset(root_ctx), ())


def _scheme_node(term: SchemeTerm, ctx: frozenset, path: tuple[int, ...]) -> Tree:
    if isinstance(term, Hyp):
        if term.prop not in ctx:
            raise HypNotInContext(
                path,
                f"hypothesis {print_prop(term.prop)} is not in the context "
                f"{render_context(ctx)}",
            )
        return Tree((Sequent(ctx, term.prop), AXIOM))
    if isinstance(term, HypFull):
        expected = term.ctx | {term.prop}
        if ctx != expected:
            raise ContextMismatch(
                path,
                f"axiom carries context {render_context(expected)} but sits "
                f"under {render_context(ctx)}",
            )
        return Tree((Sequent(ctx, term.prop), AXIOM))
    if isinstance(term, Lam):
        body = _scheme_node(term.body, ctx | {term.prop}, path + (0,))
        concl = Imp(term.prop, body.label[0].concl)
        return Tree((Sequent(ctx, concl), IMP_INTRO), (body,))
    if isinstance(term, Pair):
        left = _scheme_node(term.left, ctx, path + (0,))
        right = _scheme_node(term.right, ctx, path + (1,))
        concl = And(left.label[0].concl, right.label[0].concl)
        return Tree((Sequent(ctx, concl), AND_INTRO), (left, right))
    if isinstance(term, Fst):
        body = _scheme_node(term.body, ctx, path + (0,))
        got = body.label[0].concl
        if not isinstance(got, And):
            raise ShapeMismatch(
                path, f"fst needs a conjunction, got {print_prop(got)}"
            )
        return Tree((Sequent(ctx, got.left), AND_ELIM1), (body,))
    if isinstance(term, Snd):
        body = _scheme_node(term.body, ctx, path + (0,))
        got = body.label[0].concl
        if not isinstance(got, And):
            raise ShapeMismatch(
                path, f"snd needs a conjunction, got {print_prop(got)}"
            )
        return Tree((Sequent(ctx, got.right), AND_ELIM2), (body,))
    raise TypeError(f"not a scheme term: {term!r}")


def check_scheme(term: SchemeTerm, root_ctx: Iterable[Prop] = ()) -> Sequent:
    """Check a scheme term and return the sequent it proves."""
    return scheme_sequent_tree(term, root_ctx).label[0]


def var_sequent_tree(term: VarTerm, root_ctx: Iterable[Prop] = ()) -> Tree:
    """Reconstruct the sequent derivation a named-variable term denotes."""
    return _var_node(term, (), frozenset(root_ctx), ())


def _var_node(
    term: VarTerm,
    binders: tuple[tuple[str, Prop], ...],
    root_ctx: frozenset,
    path: tuple[int, ...],
) -> Tree:
    ctx = root_ctx | {prop for _, prop in binders}
    if isinstance(term, Var):
        for name, prop in reversed(binders):
            if name == term.name:
                return Tree((Sequent(ctx, prop), AXIOM))
        raise UnboundVariable(path, f"variable {term.name} is not bound")
    if isinstance(term, LamV):
        body = _var_node(
            term.body, binders + ((term.name, term.prop),), root_ctx, path + (0,)
        )
        concl = Imp(term.prop, body.label[0].concl)
        return Tree((Sequent(ctx, concl), IMP_INTRO), (body,))
    if isinstance(term, PairV):
        left = _var_node(term.left, binders, root_ctx, path + (0,))
        right = _var_node(term.right, binders, root_ctx, path + (1,))
        concl = And(left.label[0].concl, right.label[0].concl)
        return Tree((Sequent(ctx, concl), AND_INTRO), (left, right))
    if isinstance(term, (FstV, SndV)):
        body = _var_node(term.body, binders, root_ctx, path + (0,))
        got = body.label[0].concl
        if not isinstance(got, And):
            which = "fst" if isinstance(term, FstV) else "snd"
            raise ShapeMismatch(
                path, f"{which} needs a conjunction, got {print_prop(got)}"
            )
        if isinstance(term, FstV):
            return Tree((Sequent(ctx, got.left), AND_ELIM1), (body,))
        return Tree((Sequent(ctx, got.right), AND_ELIM2), (body,))
    raise TypeError(f"not a variable term: {term!r}")


def check_var(term: VarTerm, root_ctx: Iterable[Prop] = ()) -> Sequent:
    """Check a named-variable term and return the sequent it proves."""
    return var_sequent_tree(term, root_ctx).label[0]


# ------------------------------------------------------------------ conversions

def scheme_to_var(term: SchemeTerm) -> VarTerm:
    """Name the binders of a checking, `axiom`-free scheme term.

    Binders are named x1, x2, ... in preorder; each hypothesis becomes
    the variable of the innermost enclosing binder annotated with its
    proposition.  Raises NoMatchingBinder when no such binder exists.
    """
    counter = itertools.count(1)

    def go(t: SchemeTerm, binders: tuple[tuple[str, Prop], ...], path) -> VarTerm:
        if isinstance(t, Hyp):
            for name, prop in reversed(binders):
                if prop == t.prop:
                    return Var(name)
            raise NoMatchingBinder(
                path, f"no enclosing binder proves {print_prop(t.prop)}"
            )
        if isinstance(t, HypFull):
            raise NoMatchingBinder(
                path, "an axiom with an explicit context names no binder"
            )
        if isinstance(t, Lam):
            name = f"x{next(counter)}"
            body = go(t.body, binders + ((name, t.prop),), path + (0,))
            return LamV(name, t.prop, body)
        if isinstance(t, Pair):
            return PairV(go(t.left, binders, path + (0,)), go(t.right, binders, path + (1,)))
        if isinstance(t, Fst):
            return FstV(go(t.body, binders, path + (0,)))
        if isinstance(t, Snd):
            return SndV(go(t.body, binders, path + (0,)))
        raise TypeError(f"not a scheme term: {t!r}")

    return go(term, (), ())


def var_to_scheme(term: VarTerm) -> SchemeTerm:
    """Forget binder names, keeping only the propositions they prove."""

    def go(t: VarTerm, binders: tuple[tuple[str, Prop], ...], path) -> SchemeTerm:
        if isinstance(t, Var):
            for name, prop in reversed(binders):
                if name == t.name:
                    return Hyp(prop)
            raise UnboundVariable(path, f"variable {t.name} is not bound")
        if isinstance(t, LamV):
            return Lam(t.prop, go(t.body, binders + ((t.name, t.prop),), path + (0,)))
        if isinstance(t, PairV):
            return Pair(go(t.left, binders, path + (0,)), go(t.right, binders, path + (1,)))
        if isinstance(t, FstV):
            return Fst(go(t.body, binders, path + (0,)))
        if isinstance(t, SndV):
            return Snd(go(t.body, binders, path + (0,)))
        raise TypeError(f"not a variable term: {t!r}")

    return go(term, (), ())


# -------------------------------------------------------------------- printing

def print_prop(prop: Prop) -> str:
    """Minimal-parentheses rendering; `/\\` binds tighter than `=>`,
    both associate to the right."""
    if isinstance(prop, Atom):
        return prop.name
    if isinstance(prop, And):
        left = print_prop(prop.left)
        if isinstance(prop.left, (And, Imp)):
            left = f"({left})"
        right = print_prop(prop.right)
        if isinstance(prop.right, Imp):
            right = f"({right})"
        return f"{left} /\\ {right}"
    left = print_prop(prop.left)
    if isinstance(prop.left, Imp):
        left = f"({left})"
    return f"{left} => {print_prop(prop.right)}"


def render_context(ctx: Iterable[Prop]) -> str:
    return "{" + ", ".join(sorted(print_prop(p) for p in ctx)) + "}"


def print_sequent(seq: Sequent) -> str:
    concl = print_prop(seq.concl)
    if not seq.ctx:
        return f"|- {concl}"
    ctx = ", ".join(sorted(print_prop(p) for p in seq.ctx))
    return f"{ctx} |- {concl}"


def print_term(term: SchemeTerm | VarTerm) -> str:
    if isinstance(term, Hyp):
        return f"hyp [{print_prop(term.prop)}]"
    if isinstance(term, HypFull):
        ctx = ", ".join(sorted(print_prop(p) for p in term.ctx))
        return f"axiom {{{ctx} | {print_prop(term.prop)}}}"
    if isinstance(term, Lam):
        return f"fun [{print_prop(term.prop)}] {print_term(term.body)}"
    if isinstance(term, Var):
        return term.name
    if isinstance(term, LamV):
        return f"fun {term.name} : {print_prop(term.prop)} . {print_term(term.body)}"
    if isinstance(term, (Pair, PairV)):
        return f"<{print_term(term.left)}, {print_term(term.right)}>"
    if isinstance(term, (Fst, FstV)):
        return f"fst({print_term(term.body)})"
    if isinstance(term, (Snd, SndV)):
        return f"snd({print_term(term.body)})"
    raise TypeError(f"not a term: {term!r}")


# --------------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<and>/\\)
      | (?P<imp>=>)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<punct>[()\[\]{}<>,|:.])
    """,
    re.VERBOSE,
)

_RESERVED = {"fun", "hyp", "axiom", "fst", "snd"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "ws":
            value = match.group()
            tokens.append((kind if kind != "punct" else value, value, pos))
        pos = match.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _TokenCursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        token = self.tokens[self.index]
        if token[0] != "eof":
            self.index += 1
        return token

    def expect(self, kind: str, what: str):
        token = self.peek()
        if token[0] != kind:
            raise ParseError(f"expected {what}", token[2])
        return self.next()

    def at(self, kind: str) -> bool:
        return self.peek()[0] == kind


def _parse_prop(cur: _TokenCursor) -> Prop:
    left = _parse_conj(cur)
    if cur.at("imp"):
        cur.next()
        return Imp(left, _parse_prop(cur))
    return left


def _parse_conj(cur: _TokenCursor) -> Prop:
    left = _parse_prop_atom(cur)
    if cur.at("and"):
        cur.next()
        return And(left, _parse_conj(cur))
    return left


def _parse_prop_atom(cur: _TokenCursor) -> Prop:
    token = cur.peek()
    if token[0] == "ident":
        if token[1] in _RESERVED:
            raise ParseError(f"{token[1]} is reserved", token[2])
        cur.next()
        return Atom(token[1])
    if token[0] == "(":
        cur.next()
        prop = _parse_prop(cur)
        cur.expect(")", "')'")
        return prop
    raise ParseError("expected a proposition", token[2])


def parse_prop(text: str) -> Prop:
    cur = _TokenCursor(_tokenize(text))
    prop = _parse_prop(cur)
    token = cur.peek()
    if token[0] != "eof":
        raise ParseError("unexpected trailing input", token[2])
    return prop


def _parse_term(cur: _TokenCursor, form: str):
    token = cur.peek()
    if token[0] == "ident" and token[1] == "fun":
        cur.next()
        if form == "scheme":
            cur.expect("[", "'['")
            prop = _parse_prop(cur)
            cur.expect("]", "']'")
            return Lam(prop, _parse_term(cur, form))
        name = cur.expect("ident", "a variable name")
        if name[1] in _RESERVED:
            raise ParseError(f"{name[1]} is reserved", name[2])
        cur.expect(":", "':'")
        prop = _parse_prop(cur)
        cur.expect(".", "'.'")
        return LamV(name[1], prop, _parse_term(cur, form))
    if token[0] == "ident" and token[1] == "hyp":
        if form != "scheme":
            raise ParseError("hyp occurs only in scheme terms", token[2])
        cur.next()
        cur.expect("[", "'['")
        prop = _parse_prop(cur)
        cur.expect("]", "']'")
        return Hyp(prop)
    if token[0] == "ident" and token[1] == "axiom":
        if form != "scheme":
            raise ParseError("axiom occurs only in scheme terms", token[2])
        cur.next()
        cur.expect("{", "'{'")
        ctx = []
        if not cur.at("|"):
            ctx.append(_parse_prop(cur))
            while cur.at(","):
                cur.next()
                ctx.append(_parse_prop(cur))
        cur.expect("|", "'|'")
        prop = _parse_prop(cur)
        cur.expect("}", "'}'")
        return HypFull(frozenset(ctx), prop)
    if token[0] == "ident" and token[1] in ("fst", "snd"):
        cur.next()
        cur.expect("(", "'('")
        body = _parse_term(cur, form)
        cur.expect(")", "')'")
        if form == "scheme":
            return Fst(body) if token[1] == "fst" else Snd(body)
        return FstV(body) if token[1] == "fst" else SndV(body)
    if token[0] == "<":
        cur.next()
        left = _parse_term(cur, form)
        cur.expect(",", "','")
        right = _parse_term(cur, form)
        cur.expect(">", "'>'")
        if form == "scheme":
            return Pair(left, right)
        return PairV(left, right)
    if token[0] == "(":
        cur.next()
        term = _parse_term(cur, form)
        cur.expect(")", "')'")
        return term
    if token[0] == "ident":
        if form != "var":
            raise ParseError("bare variables occur only in var terms", token[2])
        cur.next()
        return Var(token[1])
    raise ParseError("expected a term", token[2])


def parse_term(text: str, form: str):
    """Parse a proof term; `form` selects the scheme or var syntax."""
    if form not in ("scheme", "var"):
        raise ValueError(f"unknown term form {form!r}")
    cur = _TokenCursor(_tokenize(text))
    term = _parse_term(cur, form)
    token = cur.peek()
    if token[0] != "eof":
        raise ParseError("unexpected trailing input", token[2])
    return term


# ------------------------------------------------- sequent derivation files

def parse_sequent(text: str) -> Sequent:
    parts = text.split("|-")
    if len(parts) != 2:
        raise ParseError("a sequent needs exactly one |-", 0)
    ctx_text, concl_text = parts
    props = []
    stripped = ctx_text.strip()
    if stripped:
        for chunk in stripped.split(","):
            props.append(parse_prop(chunk))
    return Sequent(frozenset(props), parse_prop(concl_text))


_TAG_RE = re.compile(r"\[([^\[\]]+)\]\s*$")


def parse_sequent_deriv(text: str) -> Tree:
    """Parse an indented sequent derivation.

    One node per line, children indented two more spaces than their
    parent, an optional trailing `[rule]` tag, `#` comments allowed.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip(" "))
        if indent % 2 != 0:
            raise ParseError(f"line {lineno}: indentation must be even", lineno)
        content = line.strip()
        tag = None
        match = _TAG_RE.search(content)
        if match:
            tag = match.group(1).strip()
            content = content[: match.start()].rstrip()
        entries.append((lineno, indent // 2, parse_sequent(content), tag))
    if not entries:
        raise ParseError("empty derivation", 0)
    if entries[0][1] != 0:
        raise ParseError(f"line {entries[0][0]}: the root must not be indented", entries[0][0])

    def build(index: int, level: int):
        lineno, _, seq, tag = entries[index]
        children = []
        next_index = index + 1
        while next_index < len(entries) and entries[next_index][1] > level:
            if entries[next_index][1] != level + 1:
                raise ParseError(
                    f"line {entries[next_index][0]}: indentation jumps a level",
                    entries[next_index][0],
                )
            child, next_index = build(next_index, level + 1)
            children.append(child)
        return Tree((seq, tag), tuple(children)), next_index

    root, stop = build(0, 0)
    if stop != len(entries):
        raise ParseError(
            f"line {entries[stop][0]}: a derivation has a single root", entries[stop][0]
        )
    return root


def print_sequent_deriv(tree: Tree) -> str:
    lines = []

    def emit(node: Tree, level: int):
        seq, tag = split_label(node.label)
        suffix = f"  [{tag}]" if tag is not None else ""
        lines.append("  " * level + print_sequent(seq) + suffix)
        for child in node.children:
            emit(child, level + 1)

    emit(tree, 0)
    return "\n".join(lines)


# ----------------------------------------------------------------------- latex

def prop_to_latex(prop: Prop) -> str:
    if isinstance(prop, Atom):
        return prop.name
    if isinstance(prop, And):
        left = prop_to_latex(prop.left)
        if isinstance(prop.left, (And, Imp)):
            left = f"({left})"
        right = prop_to_latex(prop.right)
        if isinstance(prop.right, Imp):
            right = f"({right})"
        return f"{left} \\wedge {right}"
    left = prop_to_latex(prop.left)
    if isinstance(prop.left, Imp):
        left = f"({left})"
    return f"{left} \\Rightarrow {prop_to_latex(prop.right)}"


def sequent_to_latex(seq: Sequent) -> str:
    ctx = ", ".join(sorted(prop_to_latex(p) for p in seq.ctx))
    return f"{ctx} \\vdash {prop_to_latex(seq.concl)}".lstrip()
