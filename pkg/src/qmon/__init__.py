"""Finite quantale-enriched monoids, their semidirect products and split extensions."""

from .errors import AxiomError, BudgetExceeded, QmonError, StructuralError
from .kernels import BACKEND
from .monoid import FiniteMonoid, MonoidAction, SemidirectMonoid
from .quantale import Quantale, builtin_chain, builtin_two
from .report import Check, Report
from .vcat import VCategory, VRelation
from .vmon import ConeFunction, VMonoid

__all__ = ["AxiomError", "BudgetExceeded", "QmonError", "StructuralError", "BACKEND",
           "FiniteMonoid", "MonoidAction", "SemidirectMonoid", "Quantale", "builtin_chain",
           "builtin_two", "Check", "Report", "VCategory", "VRelation", "ConeFunction",
           "VMonoid"]

__version__ = "0.1.0"
