"""Rule systems, derivation trees, and conclusion inference.

Rules are named partial functions; a finite list of them generates a
closure in layers, and everything in the closure is justified by a
derivation tree.  On top of the engine sit three worked instances:
natural deduction for conjunction and implication, a small language of
recursive functions over the naturals, and finite automata whose runs
are derivations.
"""

from .errors import ArityMismatch, ParseError, Rejected, ResourceLimit
from .trees import Tree, parse_name_tree, print_name_tree
from .engine import (
    Rule,
    RuleSystem,
    check_elem_tree,
    check_full_tree,
    erase_elements,
    erase_names,
    even_numbers,
    infer_conclusion,
    infer_full_tree,
    iterate,
    member,
    render_element,
    render_set,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "ParseError",
    "Rejected",
    "ResourceLimit",
    "Tree",
    "parse_name_tree",
    "print_name_tree",
    "Rule",
    "RuleSystem",
    "check_elem_tree",
    "check_full_tree",
    "erase_elements",
    "erase_names",
    "even_numbers",
    "infer_conclusion",
    "infer_full_tree",
    "iterate",
    "member",
    "render_element",
    "render_set",
    "step",
    "__version__",
]
