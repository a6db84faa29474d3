"""Constructive fillings for Bestvina–Brady groups with certified quartic bounds."""

from .builtins import builtin_complexes, get_builtin
from .complex import FlagComplex, build_tree_data, flag_from_graph, load_complex
from .context import Context, build_context
from .pipeline import FillingCertificate, dump_certificate, fill_bb, verify_certificate
from .words import NullExpression, evaluate_expression, free_reduce, verify_expression

__all__ = [
    "Context", "FillingCertificate", "FlagComplex", "NullExpression", "build_context",
    "build_tree_data", "builtin_complexes", "dump_certificate", "evaluate_expression",
    "fill_bb", "flag_from_graph", "free_reduce", "get_builtin", "load_complex",
    "verify_certificate", "verify_expression",
]
