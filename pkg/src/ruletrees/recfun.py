"""A small language of recursive functions over the naturals.

Programs are built from the null functions, successor, projections,
composition, primitive recursion, and minimization:

    p := zero^N | succ | proj^N_I | comp(p; p, ..., p) | rec(p, p) | mu(p)

Recursion runs on the first argument: rec(g, h) maps (0, xs) to g(xs)
and (y+1, xs) to h(y, f(y, xs), xs).  Minimization appends its search
variable after the given arguments: mu(f)(xs) is the least y with
f(xs, y) = 0.  Evaluation is bounded by a fuel budget so that searches
which never succeed are reported as divergence instead of looping.

Every well-formed program has a numeric code (`godel`/`ungodel`) built
from the pairing function (a + b)(a + b + 1)/2 + b.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Union

from .errors import ArityMismatch, ParseError, Rejected, format_path
from .trees import Tree


class IllFormed(Rejected):
    """A program violates the arity discipline at the node given by `path`."""


class DecodeError(ValueError):
    """A number is not the code of a well-formed program."""


@dataclass(frozen=True)
class Zero:
    """The function of `arity` arguments that is constantly 0."""

    arity: int


@dataclass(frozen=True)
class Succ:
    pass


@dataclass(frozen=True)
class Proj:
    """The `index`-th of `arity` arguments, 1-based."""

    arity: int
    index: int


@dataclass(frozen=True)
class Comp:
    """Apply `outer` to the results of the `inner` programs."""

    outer: "Program"
    inner: tuple["Program", ...]


@dataclass(frozen=True)
class Rec:
    """Primitive recursion on the first argument, from `base` via `step`."""

    base: "Program"
    step: "Program"


@dataclass(frozen=True)
class Mu:
    """Search for the least value making `body` return 0."""

    body: "Program"


Program = Union[Zero, Succ, Proj, Comp, Rec, Mu]


def arity_of(program: Program, _path: tuple[int, ...] = ()) -> int:
    """Number of arguments the program takes; raises IllFormed with the
    path of the offending subprogram."""
    if isinstance(program, Zero):
        if program.arity < 0:
            raise IllFormed(_path, "zero takes a nonnegative arity")
        return program.arity
    if isinstance(program, Succ):
        return 1
    if isinstance(program, Proj):
        if not 1 <= program.index <= program.arity:
            raise IllFormed(
                _path,
                f"projection index {program.index} out of range for arity {program.arity}",
            )
        return program.arity
    if isinstance(program, Comp):
        if not program.inner:
            raise IllFormed(_path, "composition needs at least one inner program")
        outer_arity = arity_of(program.outer, _path + (0,))
        inner_arities = [
            arity_of(g, _path + (i + 1,)) for i, g in enumerate(program.inner)
        ]
        if len(set(inner_arities)) != 1:
            raise IllFormed(_path, "inner programs disagree on arity")
        if outer_arity != len(program.inner):
            raise IllFormed(
                _path,
                f"outer program takes {outer_arity} argument(s) "
                f"but {len(program.inner)} inner program(s) are given",
            )
        return inner_arities[0]
    if isinstance(program, Rec):
        base_arity = arity_of(program.base, _path + (0,))
        step_arity = arity_of(program.step, _path + (1,))
        if step_arity != base_arity + 2:
            raise IllFormed(
                _path,
                f"recursion step takes {step_arity} argument(s), "
                f"needs {base_arity + 2}",
            )
        return base_arity + 1
    if isinstance(program, Mu):
        body_arity = arity_of(program.body, _path + (0,))
        if body_arity < 1:
            raise IllFormed(_path, "minimization needs a body of arity at least 1")
        return body_arity - 1
    raise TypeError(f"not a program: {program!r}")


class _Exhausted(Exception):
    pass


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, amount: int):
        self.remaining = amount

    def spend(self):
        if self.remaining <= 0:
            raise _Exhausted
        self.remaining -= 1


def evaluate(
    program: Program,
    args: tuple[int, ...] | list[int],
    fuel: int,
    *,
    mu_convention: str = "last",
) -> int | None:
    """Run a program on natural-number arguments under a fuel budget.

    One unit of fuel is charged for entering a composition, for each
    recursion unfolding, and for each minimization probe; the base
    functions are free.  Returns the value, or None when the budget is
    exhausted first.  `mu_convention` selects where the search variable
    of `mu` goes: appended after the arguments ("last", the default) or
    prepended before them ("first").
    """
    if fuel < 1:
        raise ValueError("fuel must be positive")
    if mu_convention not in ("last", "first"):
        raise ValueError(f"unknown mu convention {mu_convention!r}")
    arity = arity_of(program)
    args = tuple(args)
    if len(args) != arity:
        raise ArityMismatch(
            (), f"program takes {arity} argument(s), got {len(args)}"
        )
    if any(a < 0 for a in args):
        raise ValueError("arguments must be natural numbers")
    budget = _Budget(fuel)
    try:
        return _eval(program, args, budget, mu_convention == "last")
    except _Exhausted:
        return None


def _eval(program: Program, args: tuple[int, ...], budget: _Budget, mu_last: bool) -> int:
    if isinstance(program, Zero):
        return 0
    if isinstance(program, Succ):
        return args[0] + 1
    if isinstance(program, Proj):
        return args[program.index - 1]
    if isinstance(program, Comp):
        budget.spend()
        values = tuple(_eval(g, args, budget, mu_last) for g in program.inner)
        return _eval(program.outer, values, budget, mu_last)
    if isinstance(program, Rec):
        budget.spend()
        count, rest = args[0], args[1:]
        acc = _eval(program.base, rest, budget, mu_last)
        for j in range(count):
            budget.spend()
            acc = _eval(program.step, (j, acc) + rest, budget, mu_last)
        return acc
    if isinstance(program, Mu):
        budget.spend()
        y = 0
        while True:
            budget.spend()
            probe = args + (y,) if mu_last else (y,) + args
            if _eval(program.body, probe, budget, mu_last) == 0:
                return y
            y += 1
    raise TypeError(f"not a program: {program!r}")


def diagonal(oracle: Program) -> Program:
    """The program that, on input x, converges (to 0) exactly when the
    binary `oracle` returns 0 on (x, x)."""
    if arity_of(oracle) != 2:
        raise ArityMismatch((), "the oracle program must be binary")
    return Comp(
        Mu(Proj(2, 1)),
        (Comp(oracle, (Proj(1, 1), Proj(1, 1))),),
    )


# ------------------------------------------------------------------- numbering

def _pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def _unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


_TAG_ZERO, _TAG_SUCC, _TAG_PROJ, _TAG_COMP, _TAG_REC, _TAG_MU = range(6)


def godel(program: Program) -> int:
    """The numeric code of a well-formed program."""
    arity_of(program)
    return _encode(program)


def _encode(program: Program) -> int:
    if isinstance(program, Zero):
        return _pair(_TAG_ZERO, program.arity)
    if isinstance(program, Succ):
        return _pair(_TAG_SUCC, 0)
    if isinstance(program, Proj):
        return _pair(_TAG_PROJ, _pair(program.arity, program.index))
    if isinstance(program, Comp):
        return _pair(_TAG_COMP, _pair(_encode(program.outer), _encode_list(program.inner)))
    if isinstance(program, Rec):
        return _pair(_TAG_REC, _pair(_encode(program.base), _encode(program.step)))
    if isinstance(program, Mu):
        return _pair(_TAG_MU, _encode(program.body))
    raise TypeError(f"not a program: {program!r}")


def _encode_list(programs: tuple[Program, ...]) -> int:
    # length-prefixed, then right-nested pairs with the last code bare
    nested = _encode(programs[-1])
    for p in reversed(programs[:-1]):
        nested = _pair(_encode(p), nested)
    return _pair(len(programs), nested)


def ungodel(code: int) -> Program:
    """Invert `godel`; raises DecodeError on numbers that do not code a
    well-formed program."""
    if code < 0:
        raise DecodeError("codes are nonnegative")
    program = _decode(code)
    try:
        arity_of(program)
    except IllFormed as err:
        raise DecodeError(
            f"decodes to an ill-formed program ({err.reason} at {format_path(err.path)})"
        ) from err
    return program


def _decode(code: int) -> Program:
    tag, payload = _unpair(code)
    if tag == _TAG_ZERO:
        return Zero(payload)
    if tag == _TAG_SUCC:
        if payload != 0:
            raise DecodeError(f"successor carries no payload, got {payload}")
        return Succ()
    if tag == _TAG_PROJ:
        arity, index = _unpair(payload)
        return Proj(arity, index)
    if tag == _TAG_COMP:
        outer_code, list_code = _unpair(payload)
        return Comp(_decode(outer_code), _decode_list(list_code))
    if tag == _TAG_REC:
        base_code, step_code = _unpair(payload)
        return Rec(_decode(base_code), _decode(step_code))
    if tag == _TAG_MU:
        return Mu(_decode(payload))
    raise DecodeError(f"unknown constructor tag {tag}")


def _decode_list(code: int) -> tuple[Program, ...]:
    length, nested = _unpair(code)
    if length < 1:
        raise DecodeError("a composition lists at least one inner program")
    programs = []
    for _ in range(length - 1):
        head, nested = _unpair(nested)
        programs.append(_decode(head))
    programs.append(_decode(nested))
    return tuple(programs)


# --------------------------------------------------------------- text form

def print_program(program: Program) -> str:
    if isinstance(program, Zero):
        return f"zero^{program.arity}"
    if isinstance(program, Succ):
        return "succ"
    if isinstance(program, Proj):
        return f"proj^{program.arity}_{program.index}"
    if isinstance(program, Comp):
        inner = ", ".join(print_program(g) for g in program.inner)
        return f"comp({print_program(program.outer)}; {inner})"
    if isinstance(program, Rec):
        return f"rec({print_program(program.base)}, {print_program(program.step)})"
    if isinstance(program, Mu):
        return f"mu({print_program(program.body)})"
    raise TypeError(f"not a program: {program!r}")


def parse_program(text: str) -> Program:
    """Parse the linear form.  Structure only: arity violations are left
    to `arity_of`."""
    program, pos = _parse_prog(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError("unexpected trailing input", pos)
    return program


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _read_int(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError("expected a number", start)
    return int(text[start:pos]), pos


def _expect_char(text: str, pos: int, ch: str) -> int:
    if pos >= len(text) or text[pos] != ch:
        raise ParseError(f"expected {ch!r}", pos)
    return pos + 1


def _parse_prog(text: str, pos: int) -> tuple[Program, int]:
    start = pos
    while pos < len(text) and text[pos].isalpha():
        pos += 1
    head = text[start:pos]
    if head == "zero":
        pos = _expect_char(text, pos, "^")
        arity, pos = _read_int(text, pos)
        return Zero(arity), pos
    if head == "succ":
        return Succ(), pos
    if head == "proj":
        pos = _expect_char(text, pos, "^")
        arity, pos = _read_int(text, pos)
        pos = _expect_char(text, pos, "_")
        index, pos = _read_int(text, pos)
        return Proj(arity, index), pos
    if head == "comp":
        pos = _skip_ws(text, _expect_char(text, _skip_ws(text, pos), "("))
        outer, pos = _parse_prog(text, pos)
        pos = _skip_ws(text, _expect_char(text, _skip_ws(text, pos), ";"))
        inner = []
        while True:
            g, pos = _parse_prog(text, pos)
            inner.append(g)
            pos = _skip_ws(text, pos)
            if pos < len(text) and text[pos] == ",":
                pos = _skip_ws(text, pos + 1)
                continue
            pos = _expect_char(text, pos, ")")
            return Comp(outer, tuple(inner)), pos
    if head == "rec":
        pos = _skip_ws(text, _expect_char(text, _skip_ws(text, pos), "("))
        base, pos = _parse_prog(text, pos)
        pos = _skip_ws(text, _expect_char(text, _skip_ws(text, pos), ","))
        step, pos = _parse_prog(text, pos)
        pos = _expect_char(text, _skip_ws(text, pos), ")")
        return Rec(base, step), pos
    if head == "mu":
        pos = _skip_ws(text, _expect_char(text, _skip_ws(text, pos), "("))
        body, pos = _parse_prog(text, pos)
        pos = _expect_char(text, _skip_ws(text, pos), ")")
        return Mu(body), pos
    raise ParseError("expected zero, succ, proj, comp, rec, or mu", start)


# ----------------------------------------------- bridge to name-labeled trees

def program_to_name_tree(program: Program) -> Tree:
    """View a program as a name-labeled tree: base functions become
    leaves named like their text form, the combinators become inner
    nodes named comp, rec, mu."""
    if isinstance(program, (Zero, Succ, Proj)):
        return Tree(print_program(program))
    if isinstance(program, Comp):
        children = (program_to_name_tree(program.outer),) + tuple(
            program_to_name_tree(g) for g in program.inner
        )
        return Tree("comp", children)
    if isinstance(program, Rec):
        return Tree(
            "rec", (program_to_name_tree(program.base), program_to_name_tree(program.step))
        )
    if isinstance(program, Mu):
        return Tree("mu", (program_to_name_tree(program.body),))
    raise TypeError(f"not a program: {program!r}")


def name_tree_to_program(tree: Tree, _path: tuple[int, ...] = ()) -> Program:
    """Invert `program_to_name_tree`; raises IllFormed on names or child
    counts that fit no constructor."""
    name = tree.label
    kids = tree.children
    if name == "succ":
        if kids:
            raise IllFormed(_path, "succ takes no children")
        return Succ()
    if name.startswith("zero^"):
        if kids:
            raise IllFormed(_path, "zero takes no children")
        try:
            return Zero(int(name[5:]))
        except ValueError:
            raise IllFormed(_path, f"bad name {name}") from None
    if name.startswith("proj^"):
        if kids:
            raise IllFormed(_path, "proj takes no children")
        try:
            arity_text, index_text = name[5:].split("_", 1)
            return Proj(int(arity_text), int(index_text))
        except ValueError:
            raise IllFormed(_path, f"bad name {name}") from None
    if name == "comp":
        if len(kids) < 2:
            raise IllFormed(_path, "comp takes an outer and at least one inner child")
        return Comp(
            name_tree_to_program(kids[0], _path + (0,)),
            tuple(
                name_tree_to_program(g, _path + (i + 1,)) for i, g in enumerate(kids[1:])
            ),
        )
    if name == "rec":
        if len(kids) != 2:
            raise IllFormed(_path, "rec takes exactly two children")
        return Rec(
            name_tree_to_program(kids[0], _path + (0,)),
            name_tree_to_program(kids[1], _path + (1,)),
        )
    if name == "mu":
        if len(kids) != 1:
            raise IllFormed(_path, "mu takes exactly one child")
        return Mu(name_tree_to_program(kids[0], _path + (0,)))
    raise IllFormed(_path, f"unknown program name {name}")
