"""Finitely presented group toolkit.

Kernel presentations by Reidemeister-Schreier rewriting, deterministic
Tietze elimination, a solved word problem for the pure singular braid group
on three strands, and syntactic derivation certificates.
"""

from __future__ import annotations

from .words import (
    Alphabet,
    GeneratorAssignment,
    MissingImage,
    ParseError,
    Permutation,
    Word,
    apply_morphism,
    free_reduce,
    invert,
    parse_word,
    word_to_perm,
    word_to_text,
)
from .schreier import (
    NotInKernel,
    Presentation,
    RewrittenRelator,
    SchreierGenerator,
    TietzeResult,
    Transversal,
    eliminate_generators,
    relator_table,
    schreier_generators,
    tau_rewrite,
    words_cyclically_equal,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Word",
    "Permutation",
    "GeneratorAssignment",
    "ParseError",
    "MissingImage",
    "parse_word",
    "word_to_text",
    "free_reduce",
    "invert",
    "apply_morphism",
    "word_to_perm",
    "Presentation",
    "Transversal",
    "SchreierGenerator",
    "RewrittenRelator",
    "TietzeResult",
    "NotInKernel",
    "schreier_generators",
    "tau_rewrite",
    "relator_table",
    "eliminate_generators",
    "words_cyclically_equal",
    "__version__",
]
