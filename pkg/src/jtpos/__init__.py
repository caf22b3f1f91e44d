"""Jones-Thompson positivity toolkit: tree pairs, their links, and positive-type audits."""

from .group import GroupElement, identity, invert, make_element, multiply, parse_element, parse_word
from .trees import format_tree, parse_tree

__version__ = "0.1.0"

__all__ = ["GroupElement", "identity", "invert", "make_element", "multiply", "parse_element",
           "parse_word", "format_tree", "parse_tree", "__version__"]
