from .loader import Document, load, parse
from .syntax import (ArityError, DSLError, DSLSyntaxError, DuplicateNameError,
                     UnresolvedReferenceError, parse_definitions, print_definitions)

__all__ = ["Document", "load", "parse", "parse_definitions", "print_definitions",
           "DSLError", "DSLSyntaxError", "DuplicateNameError",
           "UnresolvedReferenceError", "ArityError"]
