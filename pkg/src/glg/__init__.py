"""Graded Lie algebras over exact fields and the realizability of their gradings."""

from .exactmath import GF, QQ, Field, Subspace
from .grading import FusionTable, Grading, Relation, coarsen, fusion_table, is_refinement, validate_grading
from .liealg import LieAlgebra, bracket, check_lie_axioms, derived_ideal

__version__ = "0.1.0"
