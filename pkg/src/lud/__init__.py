"""
lud
===

Underspecified discourse representations: building them compositionally
from a small feature grammar, resolving scope by plugging holes with
labels, and interpreting each resolution as a DRS.
"""

from .composition import (
    LexEntry, fun_arg_apply, lex_demonstrative, lex_indefinite, lex_intransitive,
    lex_noun, lex_transitive, lex_universal, lud_merge, with_mood,
)
from .drs import Drs, accommodate, interpret, merge, readings, render_box
from .errors import LudError
from .formats import (
    demo_corpus, demo_grammar, demo_lexicon, parse_grammar_text,
    parse_lexicon_text, parse_lud_text, serialize_lud,
)
from .grammar import GrammarRule, analyze, derive_lud, parse, tokenize, unify_features
from .iso import condition_embedding, isomorphic
from .model import (
    Conj, Context, Disj, Dm, Hole, IdGenerator, Imp, Label, Leq, Lt, LudRepr,
    Marker, Neg, Param, Pred, Presup, free_labels, rename_apart,
    structural_order, subordination_closure, top, well_formed,
)
from .plugging import (
    Plugging, brute_force_pluggings, enumerate_pluggings, filter_mood, is_admissible,
)

__version__ = "0.1.0"

__all__ = [
    "LexEntry",
    "fun_arg_apply",
    "lex_demonstrative",
    "lex_indefinite",
    "lex_intransitive",
    "lex_noun",
    "lex_transitive",
    "lex_universal",
    "lud_merge",
    "with_mood",
    "Drs",
    "accommodate",
    "interpret",
    "merge",
    "readings",
    "render_box",
    "LudError",
    "demo_corpus",
    "demo_grammar",
    "demo_lexicon",
    "parse_grammar_text",
    "parse_lexicon_text",
    "parse_lud_text",
    "serialize_lud",
    "GrammarRule",
    "analyze",
    "derive_lud",
    "parse",
    "tokenize",
    "unify_features",
    "condition_embedding",
    "isomorphic",
    "Conj",
    "Context",
    "Disj",
    "Dm",
    "Hole",
    "IdGenerator",
    "Imp",
    "Label",
    "Leq",
    "Lt",
    "LudRepr",
    "Marker",
    "Neg",
    "Param",
    "Pred",
    "Presup",
    "free_labels",
    "rename_apart",
    "structural_order",
    "subordination_closure",
    "top",
    "well_formed",
    "Plugging",
    "brute_force_pluggings",
    "enumerate_pluggings",
    "filter_mood",
    "is_admissible",
]
