"""Finite ordered trees and their linear text form.

The same tree shape is used under three labelings: elements only, rule
names only, or (element, rule name) pairs.  Only name-labeled trees have
a concrete syntax:

    tree := NAME | NAME "(" tree ("," tree)* ")"

where NAME is any nonempty run of characters other than parentheses,
commas, and whitespace.  A nullary node may be written `f1` or `f1()`;
the printer always emits the bare form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator

from .errors import ParseError


@dataclass(frozen=True)
class Tree:
    label: Any
    children: tuple[Tree, ...] = ()

    def height(self) -> int:
        """Number of nodes on the longest root-to-leaf path."""
        if not self.children:
            return 1
        return 1 + max(c.height() for c in self.children)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def map_labels(self, fn: Callable[[Any], Any]) -> Tree:
        return Tree(fn(self.label), tuple(c.map_labels(fn) for c in self.children))

    def nodes(self) -> Iterator[tuple[tuple[int, ...], Tree]]:
        """Preorder traversal yielding (path, subtree)."""
        stack = [((), self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for i in reversed(range(len(node.children))):
                stack.append((path + (i,), node.children[i]))


_NAME_STOP = set("(),")


def _is_name_char(ch: str) -> bool:
    return ch not in _NAME_STOP and not ch.isspace()


def parse_name_tree(text: str) -> Tree:
    """Parse the linear form into a tree with string labels."""
    tree, pos = _parse_node(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError("unexpected trailing input", pos)
    return tree


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_node(text: str, pos: int) -> tuple[Tree, int]:
    start = pos
    while pos < len(text) and _is_name_char(text[pos]):
        pos += 1
    if pos == start:
        raise ParseError("expected a rule name", pos)
    name = text[start:pos]
    pos = _skip_ws(text, pos)
    if pos >= len(text) or text[pos] != "(":
        return Tree(name), pos
    pos = _skip_ws(text, pos + 1)
    if pos < len(text) and text[pos] == ")":
        return Tree(name), pos + 1
    children = []
    while True:
        child, pos = _parse_node(text, pos)
        children.append(child)
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == ",":
            pos = _skip_ws(text, pos + 1)
            continue
        if pos < len(text) and text[pos] == ")":
            return Tree(name, tuple(children)), pos + 1
        raise ParseError("expected ',' or ')'", pos)


def print_name_tree(tree: Tree) -> str:
    if not tree.children:
        return str(tree.label)
    inner = ", ".join(print_name_tree(c) for c in tree.children)
    return f"{tree.label}({inner})"


def tree_to_latex(tree: Tree, label_parts: Callable[[Any], tuple[str, str]]) -> str:
    """Render a tree in stacked inference-rule layout.

    `label_parts` maps a label to (conclusion, rule name); premises of a
    node are laid out above its conclusion.  The output uses an `\\irule`
    macro with the conventional three arguments.
    """
    conclusion, name = label_parts(tree.label)
    premises = " ~~~ ".join(tree_to_latex(c, label_parts) for c in tree.children)
    return "\\irule{%s}{%s}{%s}" % (premises, conclusion, name)


LATEX_PREAMBLE = (
    "% requires amsmath and:\n"
    "% \\newcommand{\\irule}[3]{\\dfrac{#1}{#2}\\;{\\scriptstyle #3}}"
)
