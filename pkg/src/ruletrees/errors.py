"""Error types shared across the package.

Checking failures always point at a node: the path is the sequence of
child indices from the root, so () is the root itself.
"""

from __future__ import annotations


def format_path(path: tuple[int, ...]) -> str:
    if not path:
        return "root"
    return ".".join(str(i) for i in path)


class ParseError(ValueError):
    """A linear form or a file failed to parse.

    `position` is a character offset into the input, except for
    line-oriented files where it is a line number.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Rejected(Exception):
    """A tree, term, or program failed a check at the node given by `path`."""

    def __init__(self, path: tuple[int, ...], reason: str):
        super().__init__(f"at {format_path(tuple(path))}: {reason}")
        self.path = tuple(path)
        self.reason = reason


class ArityMismatch(Rejected):
    """A rule or program was applied to the wrong number of arguments."""


class ResourceLimit(RuntimeError):
    """An iteration grew past the configured cardinality bound."""
