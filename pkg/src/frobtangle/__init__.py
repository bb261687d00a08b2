"""Frobenius algebras, 2d cobordisms and string diagram rewriting."""

from .cobordism import CobInvariant, cob_eq, invariant, synthesize
from .coherence import AXIOMS, verify_coherence
from .diagram import Diagram, Slice, canonical, structural_eq
from .dsl import parse, show
from .frobenius import FrobAlgebra, builtin, builtins, load_algebra, verify_definition
from .render import render_svg
from .rewrite import Rule, RuleId, apply_rule, search, translate
from .terms import Gen, Id, Par, Seq, Term
from .tqft import eval_eq, evaluate

__all__ = [
    "AXIOMS", "CobInvariant", "Diagram", "FrobAlgebra", "Gen", "Id", "Par", "Rule", "RuleId", "Seq", "Slice",
    "Term", "apply_rule", "builtin", "builtins", "canonical", "cob_eq", "eval_eq", "evaluate", "invariant",
    "load_algebra", "parse", "render_svg", "search", "show", "structural_eq", "synthesize", "translate",
    "verify_coherence", "verify_definition",
]
