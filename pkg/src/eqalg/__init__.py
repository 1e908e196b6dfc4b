"""Finite pseudo equality algebras: axioms, translations, deductive systems,
measures, valuations, internal states and small-model search."""
from .core import (AxiomReport, Check, Classification, FiniteEqAlgebra, arrow, chain, classify,
                   diamond, identity_suite, is_commutative, leq, squig, trivial, vee1, vee2,
                   verify_axioms)
from .errors import (BudgetExceeded, CongruenceError, EqalgError, PreconditionError,
                     StructureError, TheoremViolation)
from .fileformat import parse_algebra, read_algebra, serialize_algebra

__version__ = "0.1.0"

__all__ = [
    "AxiomReport", "Check", "Classification", "FiniteEqAlgebra", "arrow", "chain", "classify",
    "diamond", "identity_suite", "is_commutative", "leq", "squig", "trivial", "vee1", "vee2",
    "verify_axioms", "BudgetExceeded", "CongruenceError", "EqalgError", "PreconditionError",
    "StructureError", "TheoremViolation", "parse_algebra", "read_algebra", "serialize_algebra",
]
