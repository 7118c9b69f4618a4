"""The Sequence Description Language: terms, parser, printer, evaluator, codec."""

from .codec import decode_term, encode_term
from .evaluate import eval_enum, eval_expr, eval_seq, prefix, row
from .parser import parse_enum, parse_family, parse_file_text, parse_seq, parse_term
from .printer import show, show_expr, show_file, sort_of
from .terms import EnumTerm, Expr, SeqTerm

__all__ = [
    "EnumTerm",
    "Expr",
    "SeqTerm",
    "decode_term",
    "encode_term",
    "eval_enum",
    "eval_expr",
    "eval_seq",
    "parse_enum",
    "parse_family",
    "parse_file_text",
    "parse_seq",
    "parse_term",
    "prefix",
    "row",
    "show",
    "show_expr",
    "show_file",
    "sort_of",
]
